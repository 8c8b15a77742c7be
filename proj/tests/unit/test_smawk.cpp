#include <memory>

#include "brute.hpp"
#include "doctest.h"
#include "monge/smawk.hpp"

using namespace monge;

namespace {

DenseMatrix three_rows() { return DenseMatrix::from_rows({{5, 4, 3, 2}, {4, 4, 4, 4}, {1, 2, 3, 4}}); }

GeneratorKind kind_of(std::uint64_t seed) { return static_cast<GeneratorKind>(seed % 4); }

}  // namespace

TEST_CASE("column maxima worked examples") {
  CHECK(column_maxima(three_rows().oracle()) == std::vector<Index>{0, 1, 1, 2});
  MatrixOracle product(6, 5, [](Index i, Index j) { return (i + 1) * (j + 1); });
  CHECK(column_maxima(product) == std::vector<Index>(5, 5));
  CHECK(column_maxima(DenseMatrix::from_rows({{3, 1, 2}}).oracle()) == std::vector<Index>(3, 0));
}

TEST_CASE("breakpoints worked examples") {
  auto bp = breakpoints(three_rows().oracle());
  REQUIRE(bp.size() == 3);
  CHECK(bp[0] == Breakpoint{0, 0, std::nullopt, -1});
  CHECK(bp[1] == Breakpoint{1, 1, 5, 0});
  CHECK(bp[2] == Breakpoint{3, 2, 4, 1});

  MatrixOracle product(4, 6, [](Index i, Index j) { return (i + 1) * (j + 1); });
  auto single = breakpoints(product);
  REQUIRE(single.size() == 1);
  CHECK(single[0].row == 3);

  auto column = breakpoints(DenseMatrix::from_rows({{1}, {7}, {3}}).oracle());
  REQUIRE(column.size() == 1);
  CHECK(column[0].row == 1);
}

TEST_CASE("SMAWK matches brute force with bounded probes") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Index m = 1 + static_cast<Index>((seed * 37) % 128), n = 1 + static_cast<Index>((seed * 91) % 128);
    auto a = generate_monge(seed, m, n, kind_of(seed));
    auto counter = std::make_shared<std::uint64_t>(0);
    auto r = column_maxima(counting(a.oracle(), counter));
    REQUIRE(r == brute::column_maxima(a.oracle()));
    REQUIRE(*counter <= static_cast<std::uint64_t>(8 * (m + n)));
    REQUIRE(std::is_sorted(r.begin(), r.end()));

    auto bp = breakpoints(a.oracle(), r);
    REQUIRE(static_cast<Index>(bp.size()) <= m);
    std::size_t k = 0;
    for (Index c = 0; c < n; ++c) {
      while (k + 1 < bp.size() && bp[k + 1].col <= c) ++k;
      REQUIRE(bp[k].row == r[static_cast<std::size_t>(c)]);
    }
    for (std::size_t b = 1; b < bp.size(); ++b) {
      auto best = brute::rect_max(a.oracle(), bp[b - 1].row, bp[b - 1].row, bp[b - 1].col, bp[b].col - 1);
      REQUIRE(bp[b].span_max == best->value);
    }
  }
}
