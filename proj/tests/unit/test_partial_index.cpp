#include <algorithm>
#include <random>

#include "brute.hpp"
#include "doctest.h"
#include "monge/cell_maxima.hpp"
#include "monge/dominance_index.hpp"
#include "monge/partial_index.hpp"
#include "monge/smawk.hpp"
#include "monge/submatrix_index.hpp"

using namespace monge;

namespace {

std::optional<Value> dominance_brute(const std::vector<DominanceIndex::Point>& pts, Index x, Index y) {
  std::optional<Value> best;
  for (const auto& p : pts)
    if (p.x >= x && p.y >= y && (!best || p.weight > *best)) best = p.weight;
  return best;
}

void check_dominance(const std::vector<DominanceIndex::Point>& pts, Index x, Index y, const DominanceIndex& d) {
  const auto want = dominance_brute(pts, x, y);
  const auto got = d.query(x, y);
  REQUIRE(want.has_value() == got.has_value());
  if (!got) return;
  const auto& p = d.point(*got);
  CHECK(p.x >= x);
  CHECK(p.y >= y);
  CHECK(p.weight == *want);
}

}  // namespace

TEST_CASE("dominance worked example") {
  DominanceIndex d({{0, 0, 5}, {1, 2, 7}, {2, 1, 4}});
  auto q = d.query(1, 1);
  REQUIRE(q);
  CHECK(d.point(*q).x == 1);
  CHECK(d.point(*q).y == 2);
  CHECK(d.point(*q).weight == 7);
  CHECK_FALSE(d.query(2, 2).has_value());
  CHECK_FALSE(DominanceIndex(std::vector<DominanceIndex::Point>{}).query(0, 0).has_value());
}

TEST_CASE("dominance on small grids matches a scan") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 300; ++rep) {
    std::vector<DominanceIndex::Point> pts;
    const int count = 1 + static_cast<int>(rng() % 12);
    for (int k = 0; k < count; ++k)
      pts.push_back({static_cast<Index>(rng() % 8), static_cast<Index>(rng() % 8), static_cast<Value>(rng() % 10)});
    DominanceIndex d(pts);
    for (Index x = -1; x <= 8; ++x)
      for (Index y = -1; y <= 8; ++y) check_dominance(pts, x, y, d);
  }
}

TEST_CASE("dominance on a thousand points") {
  std::mt19937_64 rng(5);
  std::vector<DominanceIndex::Point> pts;
  for (int k = 0; k < 1000; ++k)
    pts.push_back({static_cast<Index>(rng() % 500), static_cast<Index>(rng() % 500),
                   static_cast<Value>(rng() % 100000) - 50000});
  DominanceIndex d(pts);
  for (int q = 0; q < 10000; ++q)
    check_dominance(pts, static_cast<Index>(rng() % 510), static_cast<Index>(rng() % 510), d);
  CHECK(d.words() < 1000 * 64);
}

TEST_CASE("cell maxima worked example") {
  MatrixOracle prod(4, 4, [](Index i, Index j) { return (i + 1) * (j + 1); });
  auto cm = CellMaxima::grid(prod, 2);
  CHECK(cm.row_slices() == 2);
  CHECK(cm.cell_max(1, 1).value == 16);
  auto unit = CellMaxima::grid(prod, 1);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) {
      const Entry e = unit.cell_max(i, j);
      CHECK(e.row == i);
      CHECK(e.col == j);
      CHECK(e.value == prod(i, j));
    }
}

TEST_CASE("cell maxima against brute force") {
  std::mt19937_64 rng(9);
  const GeneratorKind kinds[] = {GeneratorKind::Lines, GeneratorKind::Density, GeneratorKind::Product,
                                 GeneratorKind::Distance};
  for (int rep = 0; rep < 80; ++rep) {
    const Index m = 1 + static_cast<Index>(rng() % 70), n = 1 + static_cast<Index>(rng() % 70);
    auto a = generate_monge(rng(), m, n, kinds[rep % 4]);
    auto cuts = [&](Index len) {
      std::vector<Index> s{0};
      while (true) {
        const Index next = s.back() + 1 + static_cast<Index>(rng() % 9);
        if (next >= len) break;
        s.push_back(next);
      }
      return s;
    };
    auto rs = cuts(m), cs = cuts(n);
    CellMaxima cm(a.oracle(), rs, cs);
    for (std::size_t k = 0; k < rs.size(); ++k)
      for (std::size_t l = 0; l < cs.size(); ++l) {
        const Index r1 = k + 1 < rs.size() ? rs[k + 1] - 1 : m - 1;
        const Index c1 = l + 1 < cs.size() ? cs[l + 1] - 1 : n - 1;
        const auto want = brute::rect_max(a.oracle(), rs[k], r1, cs[l], c1);
        const Entry got = cm.cell_max(static_cast<Index>(k), static_cast<Index>(l));
        REQUIRE(got.value == want->value);
        CHECK(a(got.row, got.col) == got.value);
        CHECK(got.row >= rs[k]);
        CHECK(got.row <= r1);
        CHECK(got.col >= cs[l]);
        CHECK(got.col <= c1);
      }
  }
  auto a = generate_monge(17, 64, 64, GeneratorKind::Density);
  auto cm = CellMaxima::grid(a.oracle(), 4);
  for (Index k = 0; k < 16; ++k)
    for (Index l = 0; l < 16; ++l)
      CHECK(cm.cell_max(k, l).value == brute::rect_max(a.oracle(), 4 * k, 4 * k + 3, 4 * l, 4 * l + 3)->value);
}

namespace {

const GeneratorKind kGen[] = {GeneratorKind::Lines, GeneratorKind::Density, GeneratorKind::Product,
                              GeneratorKind::Distance};

void check_partition(const PartialShape& shape, const std::vector<StaircasePiece>& pieces) {
  const Index m = shape.rows(), n = shape.cols();
  std::vector<int> hits(static_cast<std::size_t>(m * n), 0), per_row(static_cast<std::size_t>(m), 0),
      per_col(static_cast<std::size_t>(n), 0);
  for (const auto& p : pieces) {
    const auto local = p.local_shape();
    REQUIRE_NOTHROW(local.validate());
    REQUIRE(classify_staircase(local).has_value());
    std::vector<char> col_seen(static_cast<std::size_t>(n), 0);
    for (Index i = p.r0; i <= p.r1; ++i) {
      ++per_row[static_cast<std::size_t>(i)];
      for (Index j = p.first[static_cast<std::size_t>(i - p.r0)]; j <= p.last[static_cast<std::size_t>(i - p.r0)]; ++j) {
        ++hits[static_cast<std::size_t>(i * n + j)];
        col_seen[static_cast<std::size_t>(j)] = 1;
      }
    }
    for (Index j = 0; j < n; ++j) per_col[static_cast<std::size_t>(j)] += col_seen[static_cast<std::size_t>(j)];
  }
  std::size_t wrong = 0;
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) wrong += hits[static_cast<std::size_t>(i * n + j)] != (shape.defined(i, j) ? 1 : 0);
  CHECK(wrong == 0);
  CHECK(*std::max_element(per_row.begin(), per_row.end()) <= 2);
  CHECK(*std::max_element(per_col.begin(), per_col.end()) <= 4);
}

void check_all(const DenseMatrix& a, const PartialShape& shape, const PartialIndex& idx) {
  std::size_t bad = 0;
  brute::for_each_rect(a.oracle(), &shape, [&](Index i0, Index i1, Index j0, Index j1, std::optional<Value> want) {
    const auto got = idx.max(i0, i1, j0, j1);
    if (got.has_value() != want.has_value()) {
      ++bad;
    } else if (got) {
      bad += !(got->value == *want && shape.defined(got->row, got->col) && got->row >= i0 && got->row <= i1 &&
               got->col >= j0 && got->col <= j1 && a(got->row, got->col) == got->value);
    }
  });
  CHECK(bad == 0);
}

}  // namespace

TEST_CASE("partition of a staircase is the staircase itself") {
  auto shape = random_staircase(3, 10, 12, StaircaseKind::LowerRight);
  auto pieces = partition_staircases(shape);
  REQUIRE(pieces.size() == 1);
  CHECK(pieces[0].first == shape.firsts());
  CHECK(pieces[0].last == shape.lasts());
}

TEST_CASE("partitions cover every defined cell once") {
  check_partition(diamond_shape(8, 8), partition_staircases(diamond_shape(8, 8)));
  std::size_t middle = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const Index m = 1 + static_cast<Index>(seed % 64), n = 1 + static_cast<Index>(seed * 13 % 64);
    auto shape = random_partial_shape(seed, m, n);
    CAPTURE(seed);
    auto pieces = partition_staircases(shape);
    check_partition(shape, pieces);
    for (const auto& p : pieces) middle += p.group != StaircasePiece::Group::Outer;
  }
  CHECK(middle > 400);
  // Both boundaries moving the same way for most rows, in each direction.
  PartialShape right(6, 12, {0, 1, 3, 4, 7, 8}, {2, 4, 5, 8, 9, 11});
  auto pieces = partition_staircases(right);
  check_partition(right, pieces);
  CHECK(std::count_if(pieces.begin(), pieces.end(), [](const auto& p) { return p.group == StaircasePiece::Group::Left; }) >= 2);
  PartialShape left(6, 12, {8, 7, 4, 3, 1, 0}, {11, 9, 8, 5, 4, 2});
  auto flipped = partition_staircases(left);
  check_partition(left, flipped);
  CHECK(std::count_if(flipped.begin(), flipped.end(), [](const auto& p) { return p.group == StaircasePiece::Group::Right; }) >= 2);
  for (auto variant : {StaircaseIndex::Variant::Basic, StaircaseIndex::Variant::Linear}) {
    auto a = generate_monge(31, 6, 12, GeneratorKind::Lines);
    check_all(a, right, PartialIndex(a.oracle(), right, variant));
    check_all(a, left, PartialIndex(a.oracle(), left, variant));
  }
}

TEST_CASE("partial index on the diamond") {
  auto a = generate_monge(8, 8, 8, GeneratorKind::Density);
  auto shape = diamond_shape(8, 8);
  for (auto variant : {StaircaseIndex::Variant::Basic, StaircaseIndex::Variant::Linear})
    check_all(a, shape, PartialIndex(a.oracle(), shape, variant));
}

TEST_CASE("partial index on a full matrix equals the full index") {
  auto a = generate_monge(12, 30, 25, GeneratorKind::Lines);
  PartialIndex idx(a.oracle(), PartialShape::full(30, 25));
  auto full = SubmatrixIndex::build_basic(a.oracle());
  CHECK(idx.pieces().size() == 1);
  for (Index i = 0; i < 30; i += 4)
    for (Index j = 0; j < 25; j += 3) CHECK(idx.max(i, 29, 0, j)->value == full.max(i, 29, 0, j).value);
}

TEST_CASE("partial index matches brute force on every rectangle") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Index m = 1 + static_cast<Index>(seed * 7 % 31), n = 1 + static_cast<Index>(seed * 5 % 29);
    auto a = generate_monge(seed, m, n, kGen[seed % 4]);
    auto shape = random_partial_shape(seed + 5, m, n);
    CAPTURE(seed);
    PartialIndex idx(a.oracle(), shape, seed % 2 ? StaircaseIndex::Variant::Basic : StaircaseIndex::Variant::Linear);
    check_all(a, shape, idx);
    for (std::size_t p = 0; p < idx.pieces().size(); ++p) {
      const auto& piece = idx.pieces()[p];
      auto local = piece.local_shape();
      auto want = brute::rect_max(submatrix(a.oracle(), piece.r0, piece.c0(), local.rows(), local.cols()), 0,
                                  local.rows() - 1, 0, local.cols() - 1, &local);
      CHECK(idx.piece_maxima()[p].value == want->value);
    }
  }
}

TEST_CASE("partial index on 64x64 with sampled rectangles") {
  std::mt19937_64 rng(21);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    auto a = generate_monge(seed + 70, 64, 64, kGen[seed]);
    auto shape = random_partial_shape(seed + 71, 64, 64);
    PartialIndex idx(a.oracle(), shape);
    std::size_t bad = 0;
    for (int q = 0; q < 10000; ++q) {
      Index i0 = static_cast<Index>(rng() % 64), i1 = static_cast<Index>(rng() % 64);
      Index j0 = static_cast<Index>(rng() % 64), j1 = static_cast<Index>(rng() % 64);
      if (i0 > i1) std::swap(i0, i1);
      if (j0 > j1) std::swap(j0, j1);
      auto want = brute::rect_max(a.oracle(), i0, i1, j0, j1, &shape);
      auto got = idx.max(i0, i1, j0, j1);
      bad += got.has_value() != want.has_value() || (got && got->value != want->value);
    }
    CHECK(bad == 0);
    CHECK_THROWS_AS(idx.max(0, 64, 0, 0), std::out_of_range);
  }
}

TEST_CASE("partial column maxima") {
  auto a = generate_monge(2, 20, 17, GeneratorKind::Density);
  CHECK(partial_column_maxima(a.oracle(), PartialShape::full(20, 17)) == column_maxima(a.oracle()));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Index m = 1 + static_cast<Index>(seed % 64), n = 1 + static_cast<Index>(seed * 3 % 64);
    auto b = generate_monge(seed, m, n, kGen[seed % 4]);
    auto shape = seed % 3 == 0 ? random_staircase(seed, m, n, static_cast<StaircaseKind>(seed % 4))
                               : random_partial_shape(seed, m, n);
    auto got = partial_column_maxima(b.oracle(), shape);
    std::size_t bad = 0;
    for (Index j = 0; j < n; ++j) {
      Index want = -1;
      for (Index i = 0; i < m; ++i)
        if (shape.defined(i, j) && (want < 0 || b(i, j) >= b(want, j))) want = i;
      bad += got[static_cast<std::size_t>(j)] != want;
    }
    CAPTURE(seed);
    CHECK(bad == 0);
  }
}
