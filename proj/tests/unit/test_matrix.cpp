#include <random>
#include <sstream>

#include "brute.hpp"
#include "doctest.h"
#include "monge/matrix.hpp"

using namespace monge;

namespace {

DenseMatrix three_rows() { return DenseMatrix::from_rows({{5, 4, 3, 2}, {4, 4, 4, 4}, {1, 2, 3, 4}}); }

const GeneratorKind kAllKinds[] = {GeneratorKind::Lines, GeneratorKind::Density,
                                   GeneratorKind::Product, GeneratorKind::Distance};
const StaircaseKind kCorners[] = {StaircaseKind::UpperLeft, StaircaseKind::LowerLeft,
                                  StaircaseKind::UpperRight, StaircaseKind::LowerRight};

}  // namespace

TEST_CASE("verify_monge on small fixed matrices") {
  CHECK(verify_monge(three_rows().oracle()).ok);

  MatrixOracle product(7, 5, [](Index i, Index j) { return (i + 1) * (j + 1); });
  CHECK(verify_monge(product).ok);

  auto bad = verify_monge(DenseMatrix::from_rows({{0, 1}, {0, 0}}).oracle());
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.violation);
  CHECK(*bad.violation == std::make_pair(Index{0}, Index{0}));

  // The min convention flips the inequality.
  CHECK(verify_monge(DenseMatrix::from_rows({{0, 1}, {0, 0}}).oracle(), Convention::Min).ok);
}

TEST_CASE("lines oracle reproduces the worked example") {
  auto m = lines_oracle({-1, 0, 1}, {6, 4, 0}, 4);
  auto dense = DenseMatrix::materialize(m);
  auto expect = three_rows();
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 4; ++j) CHECK(dense(i, j) == expect(i, j));
}

TEST_CASE("generators are Monge, deterministic and bounded") {
  for (auto kind : kAllKinds) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Index m = 1 + static_cast<Index>(seed * 7 % 64), n = 1 + static_cast<Index>(seed * 13 % 64);
      auto a = generate_monge(seed, m, n, kind);
      CHECK(verify_monge(a.oracle()).ok);
      CHECK(verify_monge(reverse_both(a.oracle())).ok);
      CHECK(verify_monge(transpose(a.oracle())).ok);
      auto b = generate_monge(seed, m, n, kind);
      for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) {
          CHECK(a(i, j) == b(i, j));
          CHECK(std::abs(a(i, j)) <= (Value{1} << 40));
        }
    }
  }
  CHECK(verify_monge(generate_monge(5, 64, 64, GeneratorKind::Density).oracle()).ok);
  CHECK(generate_monge(1, 1, 1, GeneratorKind::Lines).rows() == 1);
  CHECK_THROWS_AS(generate_monge(1, 0, 3, GeneratorKind::Lines), std::invalid_argument);
}

TEST_CASE("reverse-both view preserves the verdict") {
  auto bad = DenseMatrix::from_rows({{0, 1, 0}, {0, 0, 0}, {3, 1, 2}}).oracle();
  CHECK(verify_monge(bad).ok == verify_monge(reverse_both(bad)).ok);
  auto good = generate_monge(3, 9, 11, GeneratorKind::Product).oracle();
  CHECK(verify_monge(reverse_both(good)).ok);
}

TEST_CASE("implicit oracles are pure") {
  auto m = implicit_monge(11, 1 << 12, 1 << 12, GeneratorKind::Distance);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100000; ++k) {
    const Index i = static_cast<Index>(rng() % 4096), j = static_cast<Index>(rng() % 4096);
    REQUIRE(m(i, j) == m(i, j));
  }
  CHECK(verify_monge(submatrix(m, 100, 200, 50, 60)).ok);
  CHECK(verify_monge(implicit_monge(2, 80, 90, GeneratorKind::Lines)).ok);
}

TEST_CASE("random shapes satisfy their invariants") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Index m = 1 + static_cast<Index>(seed % 23), n = 1 + static_cast<Index>(seed * 5 % 29);
    auto shape = random_partial_shape(seed, m, n);
    CHECK_NOTHROW(shape.validate());
    for (auto corner : kCorners) {
      auto st = random_staircase(seed, m, n, corner);
      CHECK_NOTHROW(st.validate());
      auto kind = classify_staircase(st);
      REQUIRE(kind);
      if (!st.fully_defined() && m > 1) CHECK(classify_staircase(st).has_value());
    }
  }
  CHECK_NOTHROW(diamond_shape(8, 8).validate());
  CHECK_FALSE(classify_staircase(diamond_shape(8, 8)).has_value());
}

TEST_CASE("shape validation rejects broken invariants") {
  CHECK_THROWS_AS(PartialShape(2, 3, {1, 0}, {0, 2}).validate(), std::invalid_argument);
  // Hourglass: column 0 defined in rows 0 and 2 only.
  CHECK_THROWS_AS(PartialShape(3, 3, {0, 1, 0}, {2, 1, 2}).validate(), std::invalid_argument);
}

TEST_CASE("fill_staircase worked example") {
  auto m = DenseMatrix::from_rows({{0, 0}, {0, 0}}).oracle();
  PartialShape shape(2, 2, {0, 0}, {1, 0});
  auto f = fill_staircase(m, shape);
  CHECK(f.base == 1);
  CHECK(f.shift == 0);
  CHECK(f.filled(0, 0) == 0);
  CHECK(f.filled(0, 1) == 0);
  CHECK(f.filled(1, 0) == 0);
  CHECK(f.filled(1, 1) == 4);
  CHECK(verify_monge(f.filled).ok);
}

TEST_CASE("fill_staircase of a fully defined matrix is a shift") {
  auto a = generate_monge(4, 6, 7, GeneratorKind::Lines);
  auto f = fill_staircase(a.oracle(), PartialShape::full(6, 7));
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 7; ++j) CHECK(f.filled(i, j) == a(i, j) + f.shift);
}

TEST_CASE("fill_staircase is Monge in every corner and keeps rectangle maxima") {
  int instances = 0;
  for (std::uint64_t seed = 0; seed < 250; ++seed) {
    for (auto corner : kCorners) {
      const Index m = 1 + static_cast<Index>(seed % 17), n = 1 + static_cast<Index>(seed * 3 % 19);
      auto a = generate_monge(seed, m, n, kAllKinds[seed % 4]);
      auto shape = random_staircase(seed + 1000, m, n, corner);
      REQUIRE(verify_monge(a.oracle(), shape).ok);
      auto f = fill_staircase(a.oracle(), shape);
      ++instances;
      REQUIRE(verify_monge(f.filled).ok);
      for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j)
          if (shape.defined(i, j)) REQUIRE(f.filled(i, j) == a(i, j) + f.shift);
    }
  }
  CHECK(instances == 1000);

  // Every fully defined rectangle of a 32x32 instance.
  for (auto corner : kCorners) {
    auto a = generate_monge(77, 32, 32, GeneratorKind::Density);
    auto shape = random_staircase(78, 32, 32, corner);
    auto f = fill_staircase(a.oracle(), shape);
    auto dense = DenseMatrix::materialize(f.filled);
    for (Index i0 = 0; i0 < 32; ++i0)
      for (Index i1 = i0; i1 < 32; ++i1)
        for (Index j0 = 0; j0 < 32; ++j0)
          for (Index j1 = j0; j1 < 32; ++j1) {
            bool all = true;
            for (Index i = i0; i <= i1 && all; ++i)
              all = shape.first(i) <= j0 && j1 <= shape.last(i);
            if (!all) break;
            auto want = brute::rect_max(a.oracle(), i0, i1, j0, j1);
            auto got = brute::rect_max(dense.oracle(), i0, i1, j0, j1);
            REQUIRE(got->value == want->value + f.shift);
            CHECK(a(got->row, got->col) == want->value);
          }
  }
}

TEST_CASE("fill_staircase rejects non-staircases and overflowing ranges") {
  auto a = generate_monge(1, 8, 8, GeneratorKind::Lines);
  CHECK_THROWS_AS(fill_staircase(a.oracle(), diamond_shape(8, 8)), std::invalid_argument);
  PartialShape ll(8, 8, std::vector<Index>(8, 0), {0, 1, 2, 3, 4, 5, 6, 7});
  CHECK_THROWS_AS(fill_staircase(a.oracle(), ll, ValueRange{-(Value{1} << 58), Value{1} << 58}),
                  std::overflow_error);
}

TEST_CASE("text format round trip and errors") {
  std::stringstream ss;
  auto a = three_rows();
  PartialShape shape(3, 4, {0, 0, 1}, {3, 2, 2});
  write_matrix(ss, a, shape);
  CHECK(ss.str() == "3 4\n5 4 3 2\n4 4 4 *\n* 2 3 *\n");
  auto back = read_matrix(ss);
  REQUIRE(back.shape);
  CHECK(back.shape->firsts() == shape.firsts());
  CHECK(back.shape->lasts() == shape.lasts());
  CHECK(back.values(2, 2) == 3);

  std::stringstream full("2 2\n1 2\n3 4\n");
  CHECK_FALSE(read_matrix(full).shape.has_value());

  auto line_of = [](const std::string& text) -> std::size_t {
    std::stringstream in(text);
    try {
      read_matrix(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("2 2\n1 2\n3 x\n") == 3);
  CHECK(line_of("2 2\n1 2 3\n3 4\n") == 2);
  CHECK(line_of("2 2\n1 2\n") == 3);
  CHECK(line_of("2\n") == 1);
  CHECK(line_of("2 3\n1 * 2\n1 2 3\n") == 2);
}
