#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "monge/matrix.hpp"
#include "monge/subcolumn_index.hpp"

namespace monge {

/// Min-convention Monge matrix encoding a set S of at most n keys from [0, n^2).
/// The universe is cut into n blocks of n values. Block i contributes one row per key it
/// holds (1 on the columns up to the next key of the block, growing by one away from
/// them) closed by a row n..1; the first block also opens with a row 1..n. Block i is
/// shifted by (n-1-i) * H with H = [-n+1, -n+3, ..., n-1]. Each row is three integers.
class ReductionMatrix {
 public:
  ReductionMatrix() = default;
  /// Throws std::invalid_argument for n < 2, more than n keys, or a key >= n^2.
  ReductionMatrix(std::vector<std::uint64_t> keys, Index n);

  Index n() const noexcept { return n_; }
  Index rows() const noexcept { return static_cast<Index>(block_.size()); }
  Index cols() const noexcept { return n_; }
  const std::vector<std::uint64_t>& keys() const noexcept { return keys_; }

  /// 0-based entry, O(1).
  Value entry(Index i, Index j) const;
  MatrixOracle oracle() const;

  Index block_of_row(Index r) const { return block_[static_cast<std::size_t>(r)]; }
  /// Rows holding the keys of a block: [key_row, key_row + key_count).
  Index key_row(Index block) const { return key_row_[static_cast<std::size_t>(block)]; }
  Index key_count(Index block) const { return key_count_[static_cast<std::size_t>(block)]; }
  /// Key encoded by a key row.
  std::uint64_t key_at_row(Index r) const;
  /// Largest key below the block, if any.
  std::optional<std::uint64_t> before_block(Index block) const;

  std::size_t words() const noexcept;

 private:
  Index n_ = 0;
  std::vector<std::uint64_t> keys_;
  std::vector<std::int32_t> block_, lo_, hi_;
  std::vector<std::int32_t> key_row_, key_count_;  // per block
  std::vector<std::int64_t> before_;               // per block, -1 when none
};

/// Predecessor search answered by subcolumn minima on a ReductionMatrix.
class MongePredecessor {
 public:
  MongePredecessor() = default;
  MongePredecessor(std::vector<std::uint64_t> keys, Index n);

  const ReductionMatrix& matrix() const noexcept { return *rm_; }
  /// Largest key <= x; throws std::out_of_range when x >= n^2.
  std::optional<std::uint64_t> pred(std::uint64_t x) const;
  std::size_t words() const noexcept { return rm_->words() + engine_.words(); }

 private:
  std::shared_ptr<const ReductionMatrix> rm_;
  SubcolumnIndex engine_;  // maxima of the negated matrix
};

/// Largest key <= x via one subcolumn query: row of the column minimum within the key rows
/// of x's block. `min_row(col, r0, r1)` must return a row attaining the minimum of that
/// column over [r0, r1].
template <class MinRow>
std::optional<std::uint64_t> predecessor_via_monge(const ReductionMatrix& rm, std::uint64_t x, MinRow&& min_row) {
  const auto n = static_cast<std::uint64_t>(rm.n());
  if (x >= n * n) throw std::out_of_range("query outside the universe");
  const auto block = static_cast<Index>(x / n);
  const auto col = static_cast<Index>(x % n);
  const Index count = rm.key_count(block);
  if (count == 0 || x < rm.key_at_row(rm.key_row(block))) return rm.before_block(block);
  const Index r = min_row(col, rm.key_row(block), rm.key_row(block) + count - 1);
  return rm.key_at_row(r);
}

/// Predecessor search on n keys from [0, n^c), c in {3, 4}, through O(1) predecessor queries
/// on a set of at most n keys from a quadratic universe. Keys split as y * n^2 + z; y and z
/// values are ranked separately and each key becomes rank(y) * n + rank(z). The y values,
/// z values and composed keys are shifted into one set, of which every third element is
/// kept, each carrying the two that follow it.
class UniverseReduction {
 public:
  enum class Engine { Monge, Sorted };

  UniverseReduction() = default;
  /// Throws std::invalid_argument for c outside {3, 4}, fewer than two keys or keys >= n^c.
  UniverseReduction(std::vector<std::uint64_t> keys, int c, Engine engine = Engine::Monge);

  std::optional<std::uint64_t> pred(std::uint64_t x) const;
  Index n() const noexcept { return n_; }
  /// Size of the quadratic universe handed to the inner engine.
  std::uint64_t inner_universe() const noexcept { return inner_universe_; }
  std::size_t inner_size() const noexcept { return kept_.size(); }
  std::size_t words() const noexcept;

 private:
  // Index into the merged set of the largest element <= v.
  std::optional<std::size_t> merged_pred(std::uint64_t v) const;

  Index n_ = 0;
  int c_ = 4;
  std::uint64_t universe_ = 0, inner_universe_ = 0, square_ = 0;
  std::vector<std::uint64_t> merged_;   // sorted, shifted y values, z values and composed keys
  std::vector<std::uint64_t> payload_;  // rank for y/z entries, original key for composed ones
  std::vector<std::uint64_t> kept_;     // every third merged element
  Engine engine_ = Engine::Monge;
  MongePredecessor monge_;
};

}  // namespace monge
