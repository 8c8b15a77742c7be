#include "monge/dominance_index.hpp"

#include <algorithm>
#include <numeric>

namespace monge {

namespace {

std::uint32_t priority(std::uint64_t k) {
  k += 0x9e3779b97f4a7c15ULL;
  k = (k ^ (k >> 30)) * 0xbf58476d1ce4e5b9ULL;
  k = (k ^ (k >> 27)) * 0x94d049bb133111ebULL;
  return static_cast<std::uint32_t>(k ^ (k >> 31));
}

}  // namespace

std::int32_t DominanceIndex::copy(std::int32_t v) {
  nodes_.push_back(nodes_[static_cast<std::size_t>(v)]);
  return static_cast<std::int32_t>(nodes_.size() - 1);
}

std::int32_t DominanceIndex::merge(std::int32_t a, std::int32_t b) {
  if (a < 0) return b;
  if (b < 0) return a;
  if (nodes_[static_cast<std::size_t>(a)].prio >= nodes_[static_cast<std::size_t>(b)].prio) {
    const std::int32_t c = copy(a);
    const std::int32_t r = merge(nodes_[static_cast<std::size_t>(c)].right, b);
    nodes_[static_cast<std::size_t>(c)].right = r;
    return c;
  }
  const std::int32_t c = copy(b);
  const std::int32_t l = merge(a, nodes_[static_cast<std::size_t>(c)].left);
  nodes_[static_cast<std::size_t>(c)].left = l;
  return c;
}

void DominanceIndex::split(std::int32_t v, Index x, std::int32_t& lo, std::int32_t& hi) {
  if (v < 0) {
    lo = hi = -1;
    return;
  }
  const std::int32_t c = copy(v);
  std::int32_t a = -1, b = -1;
  if (key(c) < x) {
    split(nodes_[static_cast<std::size_t>(c)].right, x, a, b);
    nodes_[static_cast<std::size_t>(c)].right = a;
    lo = c;
    hi = b;
  } else {
    split(nodes_[static_cast<std::size_t>(c)].left, x, a, b);
    nodes_[static_cast<std::size_t>(c)].left = b;
    lo = a;
    hi = c;
  }
}

std::int32_t DominanceIndex::successor(std::int32_t v, Index x) const {
  std::int32_t best = -1;
  while (v >= 0) {
    if (key(v) >= x) {
      best = v;
      v = nodes_[static_cast<std::size_t>(v)].left;
    } else {
      v = nodes_[static_cast<std::size_t>(v)].right;
    }
  }
  return best;
}

DominanceIndex::DominanceIndex(std::vector<Point> points) : points_(std::move(points)) {
  std::vector<std::size_t> order(points_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points_[a].y > points_[b].y; });
  std::int32_t root = -1;
  std::vector<std::pair<Index, std::int32_t>> versions;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Point& p = points_[order[k]];
    const std::int32_t s = successor(root, p.x);
    if (s < 0 || weight(s) < p.weight) {
      // Keys in [first key with weight <= p.weight, p.x] are now dominated.
      Index lo_key = p.x;
      for (std::int32_t v = root; v >= 0;) {
        if (weight(v) <= p.weight) {
          lo_key = std::min(lo_key, key(v));
          v = nodes_[static_cast<std::size_t>(v)].left;
        } else {
          v = nodes_[static_cast<std::size_t>(v)].right;
        }
      }
      std::int32_t left = -1, rest = -1, mid = -1, right = -1;
      split(root, lo_key, left, rest);
      split(rest, p.x + 1, mid, right);
      nodes_.push_back(Node{-1, -1, static_cast<std::int32_t>(order[k]), priority(order[k])});
      root = merge(merge(left, static_cast<std::int32_t>(nodes_.size() - 1)), right);
    }
    if (k + 1 == order.size() || points_[order[k + 1]].y != p.y) versions.emplace_back(p.y, root);
  }
  std::reverse(versions.begin(), versions.end());
  for (auto [y, r] : versions) {
    ys_.push_back(y);
    roots_.push_back(r);
  }
}

std::optional<std::size_t> DominanceIndex::query(Index x, Index y) const {
  const auto it = std::lower_bound(ys_.begin(), ys_.end(), y);
  if (it == ys_.end()) return std::nullopt;
  const std::int32_t s = successor(roots_[static_cast<std::size_t>(it - ys_.begin())], x);
  if (s < 0) return std::nullopt;
  return static_cast<std::size_t>(nodes_[static_cast<std::size_t>(s)].id);
}

std::size_t DominanceIndex::words() const noexcept {
  return points_.size() * 3 + nodes_.size() * 2 + ys_.size() + (roots_.size() + 1) / 2 + 4;
}

}  // namespace monge
