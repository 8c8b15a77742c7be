#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "monge/predecessor_duality.hpp"

using namespace monge;

namespace {

std::optional<std::uint64_t> brute_pred(const std::vector<std::uint64_t>& keys, std::uint64_t x) {
  std::optional<std::uint64_t> best;
  for (auto k : keys)
    if (k <= x && (!best || k > *best)) best = k;
  return best;
}

std::vector<std::uint64_t> random_keys(std::mt19937_64& rng, std::size_t count, std::uint64_t universe) {
  std::set<std::uint64_t> s;
  std::uniform_int_distribution<std::uint64_t> d(0, universe - 1);
  while (s.size() < count) s.insert(d(rng));
  return {s.begin(), s.end()};
}

const std::vector<std::uint64_t> kExampleKeys = {3, 18, 21, 22, 42, 46, 57, 60};

}  // namespace

TEST_CASE("reduction matrix reproduces the worked example") {
  const Value expected[17][8] = {
      {-48, -33, -18, -3, 12, 27, 42, 57}, {-45, -32, -19, -6, 8, 22, 36, 50}, {-41, -28, -15, -2, 11, 24, 37, 50},
      {-34, -23, -12, -1, 10, 21, 32, 43}, {-32, -23, -14, -4, 6, 17, 28, 39}, {-29, -20, -11, -2, 7, 16, 27, 38},
      {-28, -19, -10, -1, 8, 17, 26, 36},  {-27, -18, -9, 0, 9, 18, 27, 36},    {-20, -13, -6, 1, 8, 15, 22, 29},
      {-13, -8, -3, 2, 7, 12, 17, 22},     {-11, -8, -5, -1, 3, 7, 12, 17},     {-7, -4, -1, 2, 5, 8, 11, 15},
      {-6, -3, 0, 3, 6, 9, 12, 15},        {1, 2, 3, 4, 5, 6, 7, 8},            {2, 1, 1, 1, 2, 3, 4, 5},
      {5, 4, 3, 2, 1, 1, 1, 1},            {8, 7, 6, 5, 4, 3, 2, 1}};
  ReductionMatrix rm(kExampleKeys, 8);
  REQUIRE(rm.rows() == 17);
  REQUIRE(rm.cols() == 8);
  int mismatches = 0;
  for (Index i = 0; i < 17; ++i)
    for (Index j = 0; j < 8; ++j)
      if (rm.entry(i, j) != expected[i][j]) ++mismatches;
  CHECK(mismatches == 0);
  CHECK(verify_monge(rm.oracle(), Convention::Min).ok);
  CHECK(rm.key_count(2) == 3);
  CHECK(rm.key_count(1) == 0);
  CHECK(rm.key_at_row(rm.key_row(2)) == 18);

  MongePredecessor p(kExampleKeys, 8);
  CHECK(p.pred(20) == std::optional<std::uint64_t>(18));
  CHECK(p.pred(3) == std::optional<std::uint64_t>(3));
  CHECK(p.pred(0) == std::nullopt);
  CHECK(p.pred(63) == std::optional<std::uint64_t>(60));
  CHECK(p.pred(41) == std::optional<std::uint64_t>(22));
  CHECK_THROWS_AS(p.pred(64), std::out_of_range);
}

TEST_CASE("reduction matrix rejects bad input") {
  CHECK_THROWS_AS(ReductionMatrix({0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(ReductionMatrix({0, 1, 2}, 2), std::invalid_argument);
  CHECK_THROWS_AS(ReductionMatrix({16}, 4), std::invalid_argument);
  ReductionMatrix empty({}, 4);
  CHECK(empty.rows() == 5);
  CHECK(MongePredecessor({}, 4).pred(7) == std::nullopt);
}

TEST_CASE("monge predecessor answers every query") {
  std::mt19937_64 rng(11);
  for (Index n : {4, 8, 16, 32, 64}) {
    const auto universe = static_cast<std::uint64_t>(n * n);
    for (int rep = 0; rep < 20; ++rep) {
      const auto count = std::uniform_int_distribution<std::size_t>(0, static_cast<std::size_t>(n))(rng);
      const auto keys = random_keys(rng, count, universe);
      MongePredecessor p(keys, n);
      REQUIRE(verify_monge(p.matrix().oracle(), Convention::Min).ok);
      int bad = 0;
      for (std::uint64_t x = 0; x < universe; ++x)
        if (p.pred(x) != brute_pred(keys, x)) ++bad;
      CHECK(bad == 0);
      CHECK(p.words() <= static_cast<std::size_t>(64 * n));
    }
  }
}

TEST_CASE("universe reduction small example") {
  UniverseReduction u({6, 13}, 4);
  CHECK(u.n() == 2);
  CHECK(u.pred(7) == std::optional<std::uint64_t>(6));
  CHECK(u.pred(5) == std::nullopt);
  CHECK(u.pred(15) == std::optional<std::uint64_t>(13));
  CHECK(u.pred(12) == std::optional<std::uint64_t>(6));
  CHECK_THROWS_AS(u.pred(16), std::out_of_range);
  CHECK_THROWS_AS(UniverseReduction({1, 2}, 5), std::invalid_argument);
}

TEST_CASE("universe reduction matches brute force") {
  std::mt19937_64 rng(5);
  for (int c : {3, 4}) {
    for (Index n : {2, 3, 5, 16, 40}) {
      std::uint64_t universe = 1;
      for (int e = 0; e < c; ++e) universe *= static_cast<std::uint64_t>(n);
      const auto keys = random_keys(rng, static_cast<std::size_t>(n), universe);
      for (auto engine : {UniverseReduction::Engine::Monge, UniverseReduction::Engine::Sorted}) {
        UniverseReduction u(keys, c, engine);
        CHECK(u.inner_size() <= static_cast<std::size_t>(n));
        CHECK(u.inner_universe() <= 4 * static_cast<std::uint64_t>(n * n));
        int bad = 0;
        std::uniform_int_distribution<std::uint64_t> d(0, universe - 1);
        for (int q = 0; q < 10000; ++q) {
          std::uint64_t x = d(rng);
          if (q % 3 == 0) x = keys[static_cast<std::size_t>(q) % keys.size()] - (q % 2);
          if (x >= universe) x = 0;
          if (u.pred(x) != brute_pred(keys, x)) ++bad;
        }
        CHECK(bad == 0);
      }
    }
  }
}
