#include <random>

#include "brute.hpp"
#include "doctest.h"
#include "monge/submatrix_index.hpp"

using namespace monge;

namespace {

MatrixOracle three_rows() { return DenseMatrix::from_rows({{5, 4, 3, 2}, {4, 4, 4, 4}, {1, 2, 3, 4}}).oracle(); }

// best[i1][j1] = maximum over [i0, i1] x [j0, j1], refreshed for each (i0, j0).
template <class Check>
void all_rectangles(const MatrixOracle& a, Check&& check) {
  const Index m = a.rows(), n = a.cols();
  std::vector<Value> best(static_cast<std::size_t>(m * n));
  for (Index i0 = 0; i0 < m; ++i0)
    for (Index j0 = 0; j0 < n; ++j0)
      for (Index i1 = i0; i1 < m; ++i1)
        for (Index j1 = j0; j1 < n; ++j1) {
          Value v = a(i1, j1);
          if (i1 > i0) v = std::max(v, best[static_cast<std::size_t>((i1 - 1) * n + j1)]);
          if (j1 > j0) v = std::max(v, best[static_cast<std::size_t>(i1 * n + j1 - 1)]);
          best[static_cast<std::size_t>(i1 * n + j1)] = v;
          check(i0, i1, j0, j1, v);
        }
}

}  // namespace

TEST_CASE("prefix rectangle examples") {
  auto m = three_rows();
  ExactRectangleIndex idx(m, false);
  // Root level of three rows is 2; node 0 covers every row.
  RowTreeForest forest;
  forest.add(m, true);
  forest.finish();
  auto part = forest.prefix(0, 2, 0, 2, 0, 3);
  std::optional<Entry> best;
  for (int q = 0; q < part.count; ++q) {
    const auto k = static_cast<std::size_t>(q);
    keep_max(best, *brute::rect_max(m, part.row[k], part.row[k], part.c0[k], part.c1[k]));
  }
  CHECK(best == Entry{0, 0, 5});
  CHECK(idx.max(0, 2, 2, 3).value == 4);
  CHECK(idx.max(0, 2, 0, 3) == Entry{0, 0, 5});
  CHECK(idx.prefix_max(1, 0, 1, 2, 3).value == 4);
  CHECK(idx.prefix_max(1, 0, 1, 1, 1) == Entry{1, 1, 4});
}

TEST_CASE("submatrix worked examples") {
  auto m = three_rows();
  for (auto idx : {SubmatrixIndex::build_basic(m), SubmatrixIndex::build_linear(m)}) {
    CHECK(idx.max(0, 2, 0, 3) == Entry{0, 0, 5});
    const Entry e = idx.max(0, 1, 2, 3);
    CHECK(e.value == 4);
    CHECK(e.row == 1);
    CHECK(m(e.row, e.col) == 4);
    CHECK(idx.max(2, 2, 1, 1) == Entry{2, 1, 2});
    CHECK_THROWS_AS(idx.max(0, 3, 0, 0), std::out_of_range);
    CHECK_THROWS_AS(idx.max(1, 0, 0, 0), std::out_of_range);
  }
}

TEST_CASE("both variants equal brute force on all rectangles") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Index rows = 1 + static_cast<Index>(seed * 37 % 40), cols = 1 + static_cast<Index>(seed * 23 % 40);
    auto a = generate_monge(seed, rows, cols, static_cast<GeneratorKind>(seed % 4)).oracle();
    auto basic = SubmatrixIndex::build_basic(a);
    auto linear = SubmatrixIndex::build_linear(a);
    SubmatrixIndex::Trace trace;
    all_rectangles(a, [&](Index i0, Index i1, Index j0, Index j1, Value want) {
      const Entry b = basic.max(i0, i1, j0, j1);
      REQUIRE(b.value == want);
      REQUIRE(a(b.row, b.col) == want);
      REQUIRE((i0 <= b.row && b.row <= i1 && j0 <= b.col && b.col <= j1));
      const Entry l = linear.max(i0, i1, j0, j1, &trace);
      REQUIRE(l.value == want);
      REQUIRE(a(l.row, l.col) == want);
      REQUIRE((i0 <= l.row && l.row <= i1 && j0 <= l.col && l.col <= j1));
      REQUIRE(static_cast<Index>(trace.rows.size()) <= 4 * (trace.row_sub_slice + 2));
      REQUIRE(static_cast<Index>(trace.cols.size()) <= 4 * (trace.col_sub_slice + 2));
    });
  }
}

TEST_CASE("linear variant on larger matrices with sampled rectangles") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Index rows = 300 + static_cast<Index>(seed * 101 % 400), cols = 200 + static_cast<Index>(seed * 53 % 500);
    auto a = generate_monge(seed, rows, cols, static_cast<GeneratorKind>(seed % 4)).oracle();
    auto linear = SubmatrixIndex::build_linear(a);
    auto basic = SubmatrixIndex::build_basic(a);
    std::mt19937_64 rng(seed);
    SubmatrixIndex::Trace trace;
    for (int q = 0; q < 400; ++q) {
      Index i0 = static_cast<Index>(rng() % rows), i1 = static_cast<Index>(rng() % rows);
      Index j0 = static_cast<Index>(rng() % cols), j1 = static_cast<Index>(rng() % cols);
      if (i0 > i1) std::swap(i0, i1);
      if (j0 > j1) std::swap(j0, j1);
      const Value want = brute::rect_max(a, i0, i1, j0, j1)->value;
      REQUIRE(basic.max(i0, i1, j0, j1).value == want);
      const Entry e = linear.max(i0, i1, j0, j1, &trace);
      REQUIRE(e.value == want);
      REQUIRE(a(e.row, e.col) == want);
      REQUIRE(static_cast<Index>(trace.rows.size()) <= 4 * (trace.row_sub_slice + 2));
      // Candidate rows and columns induce a Monge submatrix.
      MatrixOracle induced(static_cast<Index>(trace.rows.size()), static_cast<Index>(trace.cols.size()),
                           [&](Index r, Index c) { return a(trace.rows[static_cast<std::size_t>(r)], trace.cols[static_cast<std::size_t>(c)]); });
      if (!induced.empty()) REQUIRE(verify_monge(induced).ok);
    }
  }
}
