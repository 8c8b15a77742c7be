#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "monge/matrix.hpp"

namespace monge {

/// Rank search over at most 64 keys below 2^31 - 1, packed two per 64-bit word.
/// Every 8th key is sampled into a second packed run, so a query does one SWAR pass over
/// the samples and one over a group of 8 keys.
class SmallSetPredecessor {
 public:
  static constexpr std::size_t kCapacity = 64;
  static constexpr std::uint64_t kUniverse = (std::uint64_t{1} << 31) - 1;

  SmallSetPredecessor() = default;
  /// keys strictly increasing, fewer than kCapacity+1, each below kUniverse.
  explicit SmallSetPredecessor(const std::vector<std::uint64_t>& keys);

  std::size_t size() const noexcept { return size_; }
  std::uint64_t key(std::size_t i) const;
  /// Number of keys <= x.
  std::size_t rank(std::uint64_t x) const { return rank_packed(words_.data(), size_, x); }
  std::optional<std::size_t> pred_index(std::uint64_t x) const;
  std::optional<std::size_t> succ_index(std::uint64_t x) const;
  std::size_t words() const noexcept { return words_.size() + 1; }

  /// Packed layout helpers, shared with structures that keep many small sets in one arena.
  static std::size_t packed_words(std::size_t count);
  static void pack(const std::uint64_t* keys, std::size_t count, std::uint64_t* out);
  static std::size_t rank_packed(const std::uint64_t* words, std::size_t count, std::uint64_t x);
  static std::uint64_t key_packed(const std::uint64_t* words, std::size_t count, std::size_t i);

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

enum class PredecessorEngine { BinarySearch, Bucketed };

/// Static predecessor/successor over strictly increasing unsigned keys. Results are key
/// indices, so callers keep payloads in parallel arrays.
class PredecessorSet {
 public:
  PredecessorSet() = default;
  explicit PredecessorSet(std::vector<std::uint64_t> keys,
                          PredecessorEngine engine = PredecessorEngine::Bucketed);

  std::size_t size() const noexcept { return keys_.size(); }
  bool empty() const noexcept { return keys_.empty(); }
  std::uint64_t key(std::size_t i) const { return keys_[i]; }
  const std::vector<std::uint64_t>& keys() const noexcept { return keys_; }
  PredecessorEngine engine() const noexcept { return engine_; }

  /// Index of the largest key <= x.
  std::optional<std::size_t> pred_index(std::uint64_t x) const;
  /// Index of the smallest key >= x.
  std::optional<std::size_t> succ_index(std::uint64_t x) const;
  std::optional<std::uint64_t> pred(std::uint64_t x) const;
  std::optional<std::uint64_t> succ(std::uint64_t x) const;

  std::size_t words() const noexcept;

 private:
  std::size_t rank(std::uint64_t x) const;  // keys <= x

  std::vector<std::uint64_t> keys_;
  PredecessorEngine engine_ = PredecessorEngine::BinarySearch;
  // Bucketed engine: bucket b holds keys with key >> shift_ == b.
  unsigned shift_ = 0;
  std::vector<std::uint32_t> bucket_start_;  // size buckets+1
  std::vector<std::uint32_t> packed_at_;     // arena offset per bucket
  std::vector<std::uint64_t> arena_;
};

/// Static range maximum with O(1) queries and O(k) words: 64-wide blocks answered from
/// per-position monotone-stack masks, plus a sparse table over block maxima.
class RangeMaxIndex {
 public:
  RangeMaxIndex() = default;
  explicit RangeMaxIndex(std::vector<Value> values);

  Index size() const noexcept { return static_cast<Index>(values_.size()); }
  Value value(Index i) const { return values_[static_cast<std::size_t>(i)]; }
  /// Leftmost position of the maximum on [l, r]; throws std::out_of_range.
  Index argmax(Index l, Index r) const;
  std::pair<Index, Value> query(Index l, Index r) const {
    const Index p = argmax(l, r);
    return {p, value(p)};
  }
  std::size_t words() const noexcept;

 private:
  Index in_block(Index l, Index r) const;
  Index better(Index a, Index b) const { return values_[static_cast<std::size_t>(b)] > values_[static_cast<std::size_t>(a)] ? b : a; }

  std::vector<Value> values_;
  std::vector<std::uint64_t> mask_;
  std::vector<std::vector<std::uint32_t>> table_;  // table_[k][b]: argmax of blocks [b, b+2^k)
};

}  // namespace monge
