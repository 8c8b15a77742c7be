#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "monge/matrix.hpp"

namespace monge {

/// Entire-column maxima of many thin row slices of one Monge matrix. Each slice keeps its
/// breakpoint columns in a packed small-set arena and its breakpoint rows as byte offsets,
/// so a query is one packed rank plus one probe.
class MicroIndex {
 public:
  static constexpr Index kMaxSliceRows = 64;

  MicroIndex() = default;
  /// Slices start at the given rows (ascending, first one 0) and run to the next start or
  /// the last row. Slices hold at most kMaxSliceRows rows.
  MicroIndex(const MatrixOracle& m, const std::vector<Index>& starts);

  Index slices() const noexcept { return static_cast<Index>(start_.size()) - 1; }
  Index begin(Index k) const { return start_[static_cast<std::size_t>(k)]; }
  Index end(Index k) const { return start_[static_cast<std::size_t>(k) + 1] - 1; }

  /// Row of the maximum of column c within slice k (largest such row).
  Index argmax_row(Index k, Index c) const;
  Entry column_max(Index k, Index c) const {
    const Index r = argmax_row(k, c);
    return {r, c, m_(r, c)};
  }

  std::size_t breakpoint_count(Index k) const {
    return static_cast<std::size_t>(first_bp_[static_cast<std::size_t>(k) + 1] - first_bp_[static_cast<std::size_t>(k)]);
  }
  Index breakpoint_col(Index k, std::size_t i) const;
  Index breakpoint_row(Index k, std::size_t i) const {
    return begin(k) + row_off_[static_cast<std::size_t>(first_bp_[static_cast<std::size_t>(k)]) + i];
  }
  /// Breakpoints of slice k with column <= c.
  std::size_t breakpoint_rank(Index k, Index c) const;

  std::size_t words() const noexcept;

 private:
  MatrixOracle m_;
  std::vector<std::int32_t> start_;
  std::vector<std::int32_t> first_bp_;
  std::vector<std::int32_t> arena_at_;
  std::vector<std::uint64_t> arena_;
  std::vector<std::uint8_t> row_off_;
};

}  // namespace monge
