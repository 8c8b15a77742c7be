#include <random>

#include "brute.hpp"
#include "doctest.h"
#include "monge/micro_index.hpp"
#include "monge/row_tree.hpp"
#include "monge/subcolumn_index.hpp"

using namespace monge;

namespace {

MatrixOracle three_rows() { return DenseMatrix::from_rows({{5, 4, 3, 2}, {4, 4, 4, 4}, {1, 2, 3, 4}}).oracle(); }

}  // namespace

TEST_CASE("row tree split lands on the children of the lowest common ancestor") {
  for (Index m = 2; m <= 70; ++m)
    for (Index i0 = 0; i0 < m; ++i0)
      for (Index i1 = i0 + 1; i1 < m; ++i1) {
        auto s = RowTree::split(i0, i1);
        REQUIRE(s.right == s.left + 1);
        REQUIRE(RowTree::first(s.level, s.left) <= i0);
        REQUIRE(RowTree::last(m, s.level, s.left) + 1 == RowTree::first(s.level, s.right));
        REQUIRE(RowTree::last(m, s.level, s.right) >= i1);
        REQUIRE(s.level < RowTree::root_level(m));
      }
}

TEST_CASE("micro index examples") {
  auto m = three_rows();
  MicroIndex slice(m, {0, 2});
  CHECK(slice.column_max(0, 0) == Entry{0, 0, 5});
  CHECK(slice.column_max(0, 3) == Entry{1, 3, 4});
  CHECK(slice.column_max(1, 2) == Entry{2, 2, 3});
  MicroIndex rows(m, {0, 1, 2});
  for (Index i = 0; i < 3; ++i)
    for (Index c = 0; c < 4; ++c) CHECK(rows.column_max(i, c) == Entry{i, c, m(i, c)});
  CHECK_THROWS_AS(MicroIndex(m, {1}), std::invalid_argument);
  CHECK_THROWS_AS(slice.argmax_row(0, 4), std::out_of_range);
}

TEST_CASE("micro index equals brute force on random slicings") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Index rows = 1 + static_cast<Index>(seed * 37 % 200), cols = 1 + static_cast<Index>(seed * 11 % 150);
    auto a = generate_monge(seed, rows, cols, static_cast<GeneratorKind>(seed % 4)).oracle();
    std::mt19937_64 rng(seed);
    std::vector<Index> starts{0};
    while (true) {
      const Index next = starts.back() + 1 + static_cast<Index>(rng() % 64);
      if (next >= rows) break;
      starts.push_back(next);
    }
    MicroIndex micro(a, starts);
    REQUIRE(micro.slices() == static_cast<Index>(starts.size()));
    for (Index k = 0; k < micro.slices(); ++k) {
      auto want = brute::column_maxima(submatrix(a, micro.begin(k), 0, micro.end(k) - micro.begin(k) + 1, cols));
      for (Index c = 0; c < cols; ++c) {
        const Entry e = micro.column_max(k, c);
        REQUIRE(e.row == micro.begin(k) + want[static_cast<std::size_t>(c)]);
        REQUIRE(e.value == a(e.row, c));
      }
    }
  }
}

TEST_CASE("subcolumn worked examples") {
  auto m = three_rows();
  for (auto idx : {SubcolumnIndex::build_basic(m), SubcolumnIndex::build_two_level(m)}) {
    const Entry e = idx.max(0, 1, 2);
    CHECK(e.row == 1);
    CHECK(e.value == 4);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 4; ++j) CHECK(idx.max(j, i, i) == Entry{i, j, m(i, j)});
    CHECK_THROWS_AS(idx.max(4, 0, 0), std::out_of_range);
    CHECK_THROWS_AS(idx.max(0, 2, 1), std::out_of_range);
  }
}

TEST_CASE("subcolumn variants equal brute force on every query") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Index rows = 1 + static_cast<Index>(seed * 53 % 128), cols = 1 + static_cast<Index>(seed * 19 % 40);
    auto a = generate_monge(seed, rows, cols, static_cast<GeneratorKind>(seed % 4)).oracle();
    auto basic = SubcolumnIndex::build_basic(a);
    auto two = SubcolumnIndex::build_two_level(a);
    for (Index j = 0; j < cols; ++j)
      for (Index i0 = 0; i0 < rows; ++i0) {
        Value best = a(i0, j);
        for (Index i1 = i0; i1 < rows; ++i1) {
          best = std::max(best, a(i1, j));
          for (const auto* idx : {&basic, &two}) {
            const Entry e = idx->max(j, i0, i1);
            REQUIRE(e.value == best);
            REQUIRE(e.col == j);
            REQUIRE(i0 <= e.row);
            REQUIRE(e.row <= i1);
            REQUIRE(a(e.row, j) == best);
          }
        }
      }
  }
}

TEST_CASE("random 200x300 sampled subcolumn queries") {
  auto a = generate_monge(9, 200, 300, GeneratorKind::Lines).oracle();
  auto basic = SubcolumnIndex::build_basic(a);
  auto two = SubcolumnIndex::build_two_level(a);
  auto rows_view = SubcolumnIndex::build_two_level(transpose(a));
  std::mt19937_64 rng(4);
  for (int q = 0; q < 10000; ++q) {
    const Index j = static_cast<Index>(rng() % 300);
    Index i0 = static_cast<Index>(rng() % 200), i1 = static_cast<Index>(rng() % 200);
    if (i0 > i1) std::swap(i0, i1);
    const auto want = brute::rect_max(a, i0, i1, j, j)->value;
    REQUIRE(basic.max(j, i0, i1).value == want);
    REQUIRE(two.max(j, i0, i1).value == want);
    // Subrow through the transpose.
    const Index r = static_cast<Index>(rng() % 200);
    Index c0 = static_cast<Index>(rng() % 300), c1 = static_cast<Index>(rng() % 300);
    if (c0 > c1) std::swap(c0, c1);
    REQUIRE(rows_view.max(r, c0, c1).value == brute::rect_max(a, r, r, c0, c1)->value);
  }
}
