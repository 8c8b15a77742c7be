#include "monge/cell_maxima.hpp"

#include <stdexcept>

#include "monge/subcolumn_index.hpp"

namespace monge {

void CellMaxima::Side::build(const MatrixOracle& m, const std::vector<Index>& starts) {
  micro = MicroIndex(m, starts);
  const SubcolumnIndex subrow = SubcolumnIndex::build_two_level(transpose(m));
  std::vector<Value> values;
  first_bp.reserve(starts.size() + 1);
  for (Index k = 0; k < micro.slices(); ++k) {
    first_bp.push_back(static_cast<std::int32_t>(values.size()));
    const std::size_t count = micro.breakpoint_count(k);
    for (std::size_t i = 0; i < count; ++i) {
      if (i == 0) {
        values.push_back(std::numeric_limits<Value>::min());
        span_col.push_back(-1);
        continue;
      }
      const Entry e = subrow.max(micro.breakpoint_row(k, i - 1), micro.breakpoint_col(k, i - 1), micro.breakpoint_col(k, i) - 1);
      values.push_back(e.value);
      span_col.push_back(static_cast<std::int32_t>(e.row));
    }
  }
  first_bp.push_back(static_cast<std::int32_t>(values.size()));
  spans = RangeMaxIndex(std::move(values));
}

void CellMaxima::Side::narrow(Index k, Index c0, Index c1, Index* rows, int& count, std::optional<Entry>& exact) const {
  const std::size_t p = micro.breakpoint_rank(k, c0) - 1, q = micro.breakpoint_rank(k, c1) - 1;
  count = 0;
  rows[count++] = micro.breakpoint_row(k, p);
  if (q > p) rows[count++] = micro.breakpoint_row(k, q);
  if (q >= p + 2) {
    const Index base = first_bp[static_cast<std::size_t>(k)];
    const Index at = spans.argmax(base + static_cast<Index>(p) + 2, base + static_cast<Index>(q));
    const std::size_t i = static_cast<std::size_t>(at - base);
    exact = Entry{micro.breakpoint_row(k, i - 1), span_col[static_cast<std::size_t>(at)], spans.value(at)};
  }
}

CellMaxima::CellMaxima(const MatrixOracle& m, const std::vector<Index>& row_starts, const std::vector<Index>& col_starts)
    : m_(m) {
  if (m.empty()) throw std::invalid_argument("empty matrix");
  rows_.build(m, row_starts);
  cols_.build(transpose(m), col_starts);
}

CellMaxima CellMaxima::grid(const MatrixOracle& m, Index g) {
  if (g < 1 || g > MicroIndex::kMaxSliceRows) throw std::invalid_argument("cell side out of range");
  std::vector<Index> rs, cs;
  for (Index i = 0; i < m.rows(); i += g) rs.push_back(i);
  for (Index j = 0; j < m.cols(); j += g) cs.push_back(j);
  return CellMaxima(m, rs, cs);
}

Entry CellMaxima::cell_max(Index row_slice, Index col_slice) const {
  if (row_slice < 0 || row_slice >= row_slices() || col_slice < 0 || col_slice >= col_slices())
    throw std::out_of_range("cell outside the grid");
  const MicroIndex& rm = rows_.micro;
  const MicroIndex& cm = cols_.micro;
  Index rows[2], cols[2];
  int nr = 0, nc = 0;
  std::optional<Entry> best, exact_c;
  rows_.narrow(row_slice, cm.begin(col_slice), cm.end(col_slice), rows, nr, best);
  cols_.narrow(col_slice, rm.begin(row_slice), rm.end(row_slice), cols, nc, exact_c);
  if (exact_c) keep_max(best, Entry{exact_c->col, exact_c->row, exact_c->value});
  for (int a = 0; a < nr; ++a)
    for (int b = 0; b < nc; ++b) keep_max(best, Entry{rows[a], cols[b], m_(rows[a], cols[b])});
  return *best;
}

}  // namespace monge
