#include "monge/ordered_index.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace monge {

namespace {

constexpr std::uint64_t kLaneHigh = 0x8000000080000000ULL;
constexpr std::uint64_t kLaneOnes = 0x0000000100000001ULL;
constexpr std::uint64_t kPad = 0x7fffffffULL;

std::size_t group_count(std::size_t count) { return (count + 7) / 8; }

// Number of lanes in `words` (two 31-bit keys each) that are <= x.
std::size_t count_le(const std::uint64_t* words, std::size_t n_words, std::uint64_t x) {
  const std::uint64_t probe = (x | 0x80000000ULL) * kLaneOnes;
  std::size_t c = 0;
  for (std::size_t w = 0; w < n_words; ++w)
    c += static_cast<std::size_t>(std::popcount((probe - words[w]) & kLaneHigh));
  return c;
}

}  // namespace

std::size_t SmallSetPredecessor::packed_words(std::size_t count) {
  return (group_count(count) + 1) / 2 + (count + 1) / 2;
}

void SmallSetPredecessor::pack(const std::uint64_t* keys, std::size_t count, std::uint64_t* out) {
  if (count > kCapacity) throw std::invalid_argument("small set holds at most 64 keys");
  const std::size_t groups = group_count(count);
  const std::size_t sample_words = (groups + 1) / 2;
  auto put = [&](std::uint64_t* base, std::size_t lane, std::uint64_t v) {
    const unsigned sh = (lane % 2) * 32;
    base[lane / 2] = (base[lane / 2] & ~(0xffffffffULL << sh)) | (v << sh);
  };
  for (std::size_t w = 0; w < packed_words(count); ++w) out[w] = kPad * kLaneOnes;
  for (std::size_t i = 0; i < count; ++i) {
    if (keys[i] >= kUniverse) throw std::invalid_argument("small set key out of range");
    if (i > 0 && keys[i] <= keys[i - 1]) throw std::invalid_argument("keys must be strictly increasing");
    put(out + sample_words, i, keys[i]);
    if (i % 8 == 0) put(out, i / 8, keys[i]);
  }
}

std::size_t SmallSetPredecessor::rank_packed(const std::uint64_t* words, std::size_t count,
                                             std::uint64_t x) {
  if (count == 0) return 0;
  if (x >= kUniverse) return count;
  const std::size_t groups = group_count(count);
  const std::size_t sample_words = (groups + 1) / 2;
  const std::size_t c = std::min(count_le(words, sample_words, x), groups);
  if (c == 0) return 0;
  const std::size_t g = c - 1;
  const std::size_t key_words = (count + 1) / 2;
  const std::size_t in_group = std::min<std::size_t>(8, count - 8 * g);
  const std::size_t span = std::min<std::size_t>(4, key_words - 4 * g);
  const std::size_t hit = count_le(words + sample_words + 4 * g, span, x);
  return 8 * g + std::min(hit, in_group);
}

std::uint64_t SmallSetPredecessor::key_packed(const std::uint64_t* words, std::size_t count,
                                              std::size_t i) {
  const std::size_t sample_words = (group_count(count) + 1) / 2;
  return (words[sample_words + i / 2] >> ((i % 2) * 32)) & 0xffffffffULL;
}

SmallSetPredecessor::SmallSetPredecessor(const std::vector<std::uint64_t>& keys)
    : words_(packed_words(keys.size())), size_(keys.size()) {
  pack(keys.data(), keys.size(), words_.data());
}

std::uint64_t SmallSetPredecessor::key(std::size_t i) const {
  return key_packed(words_.data(), size_, i);
}

std::optional<std::size_t> SmallSetPredecessor::pred_index(std::uint64_t x) const {
  const std::size_t r = rank(x);
  if (r == 0) return std::nullopt;
  return r - 1;
}

std::optional<std::size_t> SmallSetPredecessor::succ_index(std::uint64_t x) const {
  const std::size_t r = x == 0 ? 0 : rank(x - 1);
  if (r >= size_) return std::nullopt;
  return r;
}

// ---------------------------------------------------------------------------

PredecessorSet::PredecessorSet(std::vector<std::uint64_t> keys, PredecessorEngine engine)
    : keys_(std::move(keys)), engine_(engine) {
  for (std::size_t i = 1; i < keys_.size(); ++i)
    if (keys_[i] <= keys_[i - 1]) throw std::invalid_argument("keys must be strictly increasing");
  if (engine_ != PredecessorEngine::Bucketed || keys_.empty()) return;
  if (keys_.size() >= (std::size_t{1} << 32)) throw std::length_error("too many keys");

  const unsigned key_bits = static_cast<unsigned>(std::bit_width(keys_.back()));
  const unsigned count_bits = static_cast<unsigned>(std::bit_width(keys_.size()));
  shift_ = key_bits > count_bits ? key_bits - count_bits : 0;
  const std::size_t buckets = static_cast<std::size_t>(keys_.back() >> shift_) + 1;
  bucket_start_.assign(buckets + 1, 0);
  for (auto k : keys_) ++bucket_start_[static_cast<std::size_t>(k >> shift_) + 1];
  for (std::size_t b = 0; b < buckets; ++b) bucket_start_[b + 1] += bucket_start_[b];

  packed_at_.assign(buckets + 1, 0);
  const bool packable = shift_ < 31;
  std::vector<std::uint64_t> local;
  for (std::size_t b = 0; b < buckets; ++b) {
    packed_at_[b] = static_cast<std::uint32_t>(arena_.size());
    const std::size_t lo = bucket_start_[b], hi = bucket_start_[b + 1];
    if (!packable || hi - lo < 2 || hi - lo > SmallSetPredecessor::kCapacity) continue;
    local.clear();
    for (std::size_t i = lo; i < hi; ++i) local.push_back(keys_[i] - (std::uint64_t{b} << shift_));
    const std::size_t at = arena_.size();
    arena_.resize(at + SmallSetPredecessor::packed_words(local.size()));
    SmallSetPredecessor::pack(local.data(), local.size(), arena_.data() + at);
  }
  packed_at_[buckets] = static_cast<std::uint32_t>(arena_.size());
}

std::size_t PredecessorSet::rank(std::uint64_t x) const {
  if (engine_ == PredecessorEngine::BinarySearch || keys_.empty())
    return static_cast<std::size_t>(std::upper_bound(keys_.begin(), keys_.end(), x) - keys_.begin());
  const std::uint64_t b = x >> shift_;
  const std::size_t buckets = bucket_start_.size() - 1;
  if (b >= buckets) return keys_.size();
  const std::size_t lo = bucket_start_[b], hi = bucket_start_[b + 1];
  if (hi - lo <= 1) return lo + (hi > lo && keys_[lo] <= x);
  if (packed_at_[b] != packed_at_[b + 1])
    return lo + SmallSetPredecessor::rank_packed(arena_.data() + packed_at_[b], hi - lo,
                                                 x - (b << shift_));
  return static_cast<std::size_t>(std::upper_bound(keys_.begin() + static_cast<std::ptrdiff_t>(lo),
                                                   keys_.begin() + static_cast<std::ptrdiff_t>(hi), x) -
                                  keys_.begin());
}

std::optional<std::size_t> PredecessorSet::pred_index(std::uint64_t x) const {
  const std::size_t r = rank(x);
  if (r == 0) return std::nullopt;
  return r - 1;
}

std::optional<std::size_t> PredecessorSet::succ_index(std::uint64_t x) const {
  const std::size_t r = x == 0 ? 0 : rank(x - 1);
  if (r >= keys_.size()) return std::nullopt;
  return r;
}

std::optional<std::uint64_t> PredecessorSet::pred(std::uint64_t x) const {
  if (auto i = pred_index(x)) return keys_[*i];
  return std::nullopt;
}

std::optional<std::uint64_t> PredecessorSet::succ(std::uint64_t x) const {
  if (auto i = succ_index(x)) return keys_[*i];
  return std::nullopt;
}

std::size_t PredecessorSet::words() const noexcept {
  return keys_.size() + (bucket_start_.size() + packed_at_.size() + 1) / 2 + arena_.size() + 2;
}

// ---------------------------------------------------------------------------

RangeMaxIndex::RangeMaxIndex(std::vector<Value> values) : values_(std::move(values)) {
  const std::size_t k = values_.size();
  mask_.resize(k);
  const std::size_t blocks = (k + 63) / 64;
  std::vector<std::uint32_t> level(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::uint64_t stack = 0;
    const std::size_t base = b * 64, end = std::min(k, base + 64);
    for (std::size_t p = base; p < end; ++p) {
      while (stack) {
        const unsigned top = 63 - static_cast<unsigned>(std::countl_zero(stack));
        if (values_[base + top] >= values_[p]) break;
        stack &= ~(std::uint64_t{1} << top);
      }
      stack |= std::uint64_t{1} << (p - base);
      mask_[p] = stack;
    }
    level[b] = static_cast<std::uint32_t>(base + static_cast<std::size_t>(std::countr_zero(mask_[end - 1])));
  }
  table_.push_back(std::move(level));
  for (std::size_t w = 1; 2 * w <= blocks; w *= 2) {
    const auto& prev = table_.back();
    std::vector<std::uint32_t> next(blocks - 2 * w + 1);
    for (std::size_t b = 0; b < next.size(); ++b)
      next[b] = static_cast<std::uint32_t>(better(prev[b], prev[b + w]));
    table_.push_back(std::move(next));
  }
}

Index RangeMaxIndex::in_block(Index l, Index r) const {
  const std::uint64_t m = mask_[static_cast<std::size_t>(r)] & (~std::uint64_t{0} << (l % 64));
  return (l / 64) * 64 + std::countr_zero(m);
}

Index RangeMaxIndex::argmax(Index l, Index r) const {
  if (l < 0 || r >= size() || l > r)
    throw std::out_of_range("range [" + std::to_string(l) + ", " + std::to_string(r) +
                            "] outside 0.." + std::to_string(size() - 1));
  const Index bl = l / 64, br = r / 64;
  if (bl == br) return in_block(l, r);
  Index best = in_block(l, bl * 64 + 63);
  if (br > bl + 1) {
    const Index lo = bl + 1, hi = br - 1;
    const unsigned k = static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(hi - lo + 1))) - 1;
    const auto& row = table_[k];
    best = better(best, better(row[static_cast<std::size_t>(lo)],
                               row[static_cast<std::size_t>(hi - (Index{1} << k) + 1)]));
  }
  return better(best, in_block(br * 64, r));
}

std::size_t RangeMaxIndex::words() const noexcept {
  std::size_t w = values_.size() + mask_.size();
  for (const auto& row : table_) w += (row.size() + 1) / 2;
  return w;
}

}  // namespace monge
