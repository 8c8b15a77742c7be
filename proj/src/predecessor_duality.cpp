#include "monge/predecessor_duality.hpp"

#include <algorithm>
#include <stdexcept>

namespace monge {

ReductionMatrix::ReductionMatrix(std::vector<std::uint64_t> keys, Index n) : n_(n) {
  if (n < 2 || n >= (Index{1} << 31)) throw std::invalid_argument("n must be in [2, 2^31)");
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  const auto un = static_cast<std::uint64_t>(n);
  if (static_cast<Index>(keys.size()) > n) throw std::invalid_argument("more than n keys");
  if (!keys.empty() && keys.back() >= un * un) throw std::invalid_argument("key outside [0, n^2)");
  keys_ = std::move(keys);

  auto push = [&](Index block, Index lo, Index hi) {
    block_.push_back(static_cast<std::int32_t>(block));
    lo_.push_back(static_cast<std::int32_t>(lo));
    hi_.push_back(static_cast<std::int32_t>(hi));
  };
  key_row_.assign(static_cast<std::size_t>(n), 0);
  key_count_.assign(static_cast<std::size_t>(n), 0);
  before_.assign(static_cast<std::size_t>(n), -1);
  push(0, 0, 1);
  std::size_t k = 0;
  for (Index b = 0; b < n; ++b) {
    if (k > 0) before_[static_cast<std::size_t>(b)] = static_cast<std::int64_t>(keys_[k - 1]);
    key_row_[static_cast<std::size_t>(b)] = static_cast<std::int32_t>(block_.size());
    const std::uint64_t end = static_cast<std::uint64_t>(b + 1) * un;
    std::size_t e = k;
    while (e < keys_.size() && keys_[e] < end) ++e;
    for (std::size_t q = k; q < e; ++q) {
      const auto lo = static_cast<Index>(keys_[q] % un);
      const Index hi = q + 1 < e ? static_cast<Index>(keys_[q + 1] % un) : n;
      push(b, lo, hi);
    }
    key_count_[static_cast<std::size_t>(b)] = static_cast<std::int32_t>(e - k);
    push(b, n - 1, n);
    k = e;
  }
}

Value ReductionMatrix::entry(Index i, Index j) const {
  const auto r = static_cast<std::size_t>(i);
  const Value k = j + 1, lo = lo_[r], hi = hi_[r];
  const Value base = k <= lo ? lo - k + 2 : (k <= hi ? 1 : k - hi + 1);
  const Value h = 2 * k - 1 - n_;
  return base + (n_ - 1 - block_[r]) * h;
}

MatrixOracle ReductionMatrix::oracle() const {
  return MatrixOracle(rows(), cols(), [self = *this](Index i, Index j) { return self.entry(i, j); });
}

std::uint64_t ReductionMatrix::key_at_row(Index r) const {
  const auto q = static_cast<std::size_t>(r);
  return static_cast<std::uint64_t>(block_[q]) * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(lo_[q]);
}

std::optional<std::uint64_t> ReductionMatrix::before_block(Index block) const {
  const auto v = before_[static_cast<std::size_t>(block)];
  if (v < 0) return std::nullopt;
  return static_cast<std::uint64_t>(v);
}

std::size_t ReductionMatrix::words() const noexcept {
  return 2 + (3 * block_.size() + key_row_.size() + key_count_.size() + 1) / 2 + before_.size();
}

MongePredecessor::MongePredecessor(std::vector<std::uint64_t> keys, Index n)
    : rm_(std::make_shared<const ReductionMatrix>(std::move(keys), n)),
      engine_(SubcolumnIndex::build_two_level(negate(rm_->oracle()))) {}

std::optional<std::uint64_t> MongePredecessor::pred(std::uint64_t x) const {
  return predecessor_via_monge(*rm_, x, [this](Index col, Index r0, Index r1) { return engine_.max(col, r0, r1).row; });
}

UniverseReduction::UniverseReduction(std::vector<std::uint64_t> keys, int c, Engine engine) : c_(c), engine_(engine) {
  if (c != 3 && c != 4) throw std::invalid_argument("universe exponent must be 3 or 4");
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  n_ = static_cast<Index>(keys.size());
  if (n_ < 2) throw std::invalid_argument("need at least two keys");
  const auto n = static_cast<std::uint64_t>(n_);
  square_ = n * n;
  universe_ = c == 3 ? square_ * n : square_ * square_;
  if (keys.back() >= universe_) throw std::invalid_argument("key outside [0, n^c)");

  std::vector<std::uint64_t> ys, zs;
  for (auto x : keys) {
    ys.push_back(x / square_);
    zs.push_back(x % square_);
  }
  for (auto* v : {&ys, &zs}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  auto rank = [](const std::vector<std::uint64_t>& v, std::uint64_t x) {
    return static_cast<std::uint64_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };
  std::vector<std::pair<std::uint64_t, std::uint64_t>> merged;
  for (std::size_t k = 0; k < ys.size(); ++k) merged.emplace_back(ys[k], k);
  for (std::size_t k = 0; k < zs.size(); ++k) merged.emplace_back(square_ + zs[k], k);
  for (auto x : keys) merged.emplace_back(2 * square_ + rank(ys, x / square_) * n + rank(zs, x % square_), x);
  std::sort(merged.begin(), merged.end());
  for (const auto& [v, p] : merged) {
    merged_.push_back(v);
    payload_.push_back(p);
  }
  for (std::size_t k = 0; k < merged_.size(); k += 3) kept_.push_back(merged_[k]);
  // At most 3n merged values below 3n^2: a quadratic universe over 2n.
  inner_universe_ = 4 * square_;
  if (engine_ == Engine::Monge) monge_ = MongePredecessor(kept_, 2 * n_);
}

std::optional<std::size_t> UniverseReduction::merged_pred(std::uint64_t v) const {
  std::optional<std::size_t> at;
  if (engine_ == Engine::Monge) {
    const auto key = monge_.pred(v);
    if (!key) return std::nullopt;
    at = static_cast<std::size_t>(std::lower_bound(kept_.begin(), kept_.end(), *key) - kept_.begin());
  } else {
    const auto it = std::upper_bound(kept_.begin(), kept_.end(), v);
    if (it == kept_.begin()) return std::nullopt;
    at = static_cast<std::size_t>(it - kept_.begin()) - 1;
  }
  std::size_t k = *at * 3;
  for (std::size_t step = 1; step < 3 && k + 1 < merged_.size() && merged_[k + 1] <= v; ++step) ++k;
  return k;
}

std::optional<std::uint64_t> UniverseReduction::pred(std::uint64_t x) const {
  if (x >= universe_) throw std::out_of_range("query outside the universe");
  const std::uint64_t y = x / square_, z = x % square_, n = static_cast<std::uint64_t>(n_);
  const auto yi = merged_pred(y);
  if (!yi) return std::nullopt;
  const std::uint64_t ry = payload_[*yi];
  std::int64_t key;
  if (merged_[*yi] == y) {
    const auto zi = merged_pred(square_ + z);
    const bool has_z = zi && merged_[*zi] >= square_;
    key = static_cast<std::int64_t>(ry * n) + (has_z ? static_cast<std::int64_t>(payload_[*zi]) : -1);
  } else {
    key = static_cast<std::int64_t>(ry * n + n - 1);
  }
  if (key < 0) return std::nullopt;
  const auto ki = merged_pred(2 * square_ + static_cast<std::uint64_t>(key));
  if (!ki || merged_[*ki] < 2 * square_) return std::nullopt;
  return payload_[*ki];
}

std::size_t UniverseReduction::words() const noexcept {
  return 6 + merged_.size() + payload_.size() + kept_.size() + (engine_ == Engine::Monge ? monge_.words() : 0);
}

}  // namespace monge
