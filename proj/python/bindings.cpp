#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "monge/matrix.hpp"
#include "monge/partial_index.hpp"
#include "monge/predecessor_duality.hpp"
#include "monge/smawk.hpp"
#include "monge/staircase_index.hpp"
#include "monge/subcolumn_index.hpp"
#include "monge/submatrix_index.hpp"

namespace py = pybind11;
using namespace monge;

namespace {

using Rows = std::vector<std::vector<Value>>;

MatrixOracle to_oracle(const Rows& rows) {
  if (rows.empty() || rows.front().empty()) throw py::value_error("matrix must be non-empty");
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw py::value_error("rows differ in length");
  return DenseMatrix::from_rows(rows).oracle();
}

Rows to_rows(const DenseMatrix& d) {
  Rows out(static_cast<std::size_t>(d.rows()), std::vector<Value>(static_cast<std::size_t>(d.cols())));
  for (Index i = 0; i < d.rows(); ++i)
    for (Index j = 0; j < d.cols(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = d(i, j);
  return out;
}

PartialShape to_shape(const Rows& rows, std::vector<Index> s, std::vector<Index> t) {
  PartialShape shape(static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows.front().size()),
                     std::move(s), std::move(t));
  shape.validate();
  return shape;
}

}  // namespace

PYBIND11_MODULE(_monge, m) {
  m.doc() = "Submatrix maximum queries on Monge matrices and predecessor search through them. 0-based.";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Entry>(m, "Entry")
      .def_readonly("row", &Entry::row)
      .def_readonly("col", &Entry::col)
      .def_readonly("value", &Entry::value)
      .def("__iter__", [](const Entry& e) { return py::iter(py::make_tuple(e.row, e.col, e.value)); })
      .def("__eq__", [](const Entry& a, const Entry& b) { return a == b; })
      .def("__repr__", [](const Entry& e) {
        return "Entry(row=" + std::to_string(e.row) + ", col=" + std::to_string(e.col) +
               ", value=" + std::to_string(e.value) + ")";
      });

  m.def(
      "generate",
      [](std::uint64_t seed, Index rows, Index cols, const std::string& kind) {
        return to_rows(generate_monge(seed, rows, cols, parse_generator_kind(kind)));
      },
      py::arg("seed"), py::arg("rows"), py::arg("cols"), py::arg("kind") = "lines",
      "Deterministic Monge matrix as a list of rows.");
  m.def(
      "is_monge", [](const Rows& rows, bool min) {
        return verify_monge(to_oracle(rows), min ? Convention::Min : Convention::Max).ok;
      },
      py::arg("rows"), py::arg("min") = false);
  m.def(
      "column_maxima", [](const Rows& rows) { return column_maxima(to_oracle(rows)); }, py::arg("rows"),
      "Row of each column maximum, larger row on ties.");
  m.def(
      "random_staircase",
      [](std::uint64_t seed, Index rows, Index cols, const std::string& corner) {
        StaircaseKind k;
        if (corner == "upper-left") k = StaircaseKind::UpperLeft;
        else if (corner == "lower-left") k = StaircaseKind::LowerLeft;
        else if (corner == "upper-right") k = StaircaseKind::UpperRight;
        else if (corner == "lower-right") k = StaircaseKind::LowerRight;
        else throw py::value_error("unknown corner");
        const auto s = random_staircase(seed, rows, cols, k);
        return py::make_tuple(s.firsts(), s.lasts());
      },
      py::arg("seed"), py::arg("rows"), py::arg("cols"), py::arg("corner") = "upper-left",
      "(first, last) column of each row.");
  m.def(
      "random_partial_shape",
      [](std::uint64_t seed, Index rows, Index cols) {
        const auto s = random_partial_shape(seed, rows, cols);
        return py::make_tuple(s.firsts(), s.lasts());
      },
      py::arg("seed"), py::arg("rows"), py::arg("cols"));

  py::class_<SubmatrixIndex>(m, "SubmatrixIndex")
      .def(py::init([](const Rows& rows, bool linear) {
             const auto o = to_oracle(rows);
             return linear ? SubmatrixIndex::build_linear(o) : SubmatrixIndex::build_basic(o);
           }),
           py::arg("rows"), py::arg("linear") = true)
      .def("max", [](const SubmatrixIndex& x, Index i0, Index i1, Index j0, Index j1) { return x.max(i0, i1, j0, j1); },
           py::arg("i0"), py::arg("i1"), py::arg("j0"), py::arg("j1"))
      .def_property_readonly("words", &SubmatrixIndex::words);

  py::class_<SubcolumnIndex>(m, "SubcolumnIndex")
      .def(py::init([](const Rows& rows, bool two_level) {
             const auto o = to_oracle(rows);
             return two_level ? SubcolumnIndex::build_two_level(o) : SubcolumnIndex::build_basic(o);
           }),
           py::arg("rows"), py::arg("two_level") = true)
      .def("max", &SubcolumnIndex::max, py::arg("j"), py::arg("i0"), py::arg("i1"))
      .def_property_readonly("words", &SubcolumnIndex::words);

  py::class_<StaircaseIndex>(m, "StaircaseIndex")
      .def(py::init([](const Rows& rows, std::vector<Index> first, std::vector<Index> last, bool linear) {
             return StaircaseIndex(to_oracle(rows), to_shape(rows, std::move(first), std::move(last)),
                                   linear ? StaircaseIndex::Variant::Linear : StaircaseIndex::Variant::Basic);
           }),
           py::arg("rows"), py::arg("first"), py::arg("last"), py::arg("linear") = true)
      .def("max", &StaircaseIndex::max, py::arg("i0"), py::arg("i1"), py::arg("j0"), py::arg("j1"))
      .def_property_readonly("words", &StaircaseIndex::words);

  py::class_<PartialIndex>(m, "PartialIndex")
      .def(py::init([](const Rows& rows, std::vector<Index> first, std::vector<Index> last) {
             return PartialIndex(to_oracle(rows), to_shape(rows, std::move(first), std::move(last)));
           }),
           py::arg("rows"), py::arg("first"), py::arg("last"))
      .def("max", &PartialIndex::max, py::arg("i0"), py::arg("i1"), py::arg("j0"), py::arg("j1"))
      .def_property_readonly("piece_count", [](const PartialIndex& x) { return x.pieces().size(); })
      .def_property_readonly("words", &PartialIndex::words);

  py::class_<ReductionMatrix>(m, "ReductionMatrix")
      .def(py::init<std::vector<std::uint64_t>, Index>(), py::arg("keys"), py::arg("n"))
      .def_property_readonly("rows", &ReductionMatrix::rows)
      .def_property_readonly("cols", &ReductionMatrix::cols)
      .def("entry", &ReductionMatrix::entry, py::arg("i"), py::arg("j"))
      .def("to_list", [](const ReductionMatrix& r) { return to_rows(DenseMatrix::materialize(r.oracle())); });

  py::class_<MongePredecessor>(m, "MongePredecessor")
      .def(py::init<std::vector<std::uint64_t>, Index>(), py::arg("keys"), py::arg("n"))
      .def("pred", &MongePredecessor::pred, py::arg("x"))
      .def_property_readonly("words", &MongePredecessor::words);

  py::class_<UniverseReduction>(m, "UniverseReduction")
      .def(py::init([](std::vector<std::uint64_t> keys, int c, bool monge) {
             return UniverseReduction(std::move(keys), c,
                                      monge ? UniverseReduction::Engine::Monge : UniverseReduction::Engine::Sorted);
           }),
           py::arg("keys"), py::arg("c") = 4, py::arg("monge") = true)
      .def("pred", &UniverseReduction::pred, py::arg("x"))
      .def_property_readonly("words", &UniverseReduction::words);
}
