#include "monge/micro_index.hpp"

#include <limits>
#include <stdexcept>

#include "monge/breakpoint_tree.hpp"
#include "monge/ordered_index.hpp"

namespace monge {

MicroIndex::MicroIndex(const MatrixOracle& m, const std::vector<Index>& starts) : m_(m) {
  if (m.rows() >= std::numeric_limits<std::int32_t>::max() ||
      static_cast<std::uint64_t>(m.cols()) >= SmallSetPredecessor::kUniverse)
    throw std::length_error("matrix too large for a micro index");
  if (starts.empty() || starts.front() != 0) throw std::invalid_argument("slices must start at row 0");
  start_.reserve(starts.size() + 1);
  first_bp_.reserve(starts.size() + 1);
  arena_at_.reserve(starts.size() + 1);
  first_bp_.push_back(0);
  arena_at_.push_back(0);
  std::vector<std::uint64_t> keys;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const Index a = starts[k], b = k + 1 < starts.size() ? starts[k + 1] - 1 : m.rows() - 1;
    if (b < a || b - a + 1 > kMaxSliceRows) throw std::invalid_argument("bad slice bounds");
    start_.push_back(static_cast<std::int32_t>(a));
    keys.clear();
    for (auto [col, row] : slice_breakpoints(m, a, b)) {
      keys.push_back(static_cast<std::uint64_t>(col));
      row_off_.push_back(static_cast<std::uint8_t>(row - a));
    }
    const std::size_t at = arena_.size();
    arena_.resize(at + SmallSetPredecessor::packed_words(keys.size()));
    SmallSetPredecessor::pack(keys.data(), keys.size(), arena_.data() + at);
    first_bp_.push_back(static_cast<std::int32_t>(row_off_.size()));
    arena_at_.push_back(static_cast<std::int32_t>(arena_.size()));
  }
  start_.push_back(static_cast<std::int32_t>(m.rows()));
}

std::size_t MicroIndex::breakpoint_rank(Index k, Index c) const {
  if (c < 0) return 0;
  const auto s = static_cast<std::size_t>(k);
  return SmallSetPredecessor::rank_packed(arena_.data() + arena_at_[s], breakpoint_count(k),
                                          static_cast<std::uint64_t>(c));
}

Index MicroIndex::breakpoint_col(Index k, std::size_t i) const {
  const auto s = static_cast<std::size_t>(k);
  return static_cast<Index>(SmallSetPredecessor::key_packed(arena_.data() + arena_at_[s], breakpoint_count(k), i));
}

Index MicroIndex::argmax_row(Index k, Index c) const {
  if (k < 0 || k >= slices() || c < 0 || c >= m_.cols()) throw std::out_of_range("micro query out of range");
  return breakpoint_row(k, breakpoint_rank(k, c) - 1);
}

std::size_t MicroIndex::words() const noexcept {
  return (start_.size() + first_bp_.size() + arena_at_.size() + 1) / 2 + arena_.size() + (row_off_.size() + 7) / 8 + 4;
}

}  // namespace monge
