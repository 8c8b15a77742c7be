#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "monge/matrix.hpp"

namespace monge {

/// Static dominance maxima: the heaviest point with x' >= x and y' >= y. Built by sweeping
/// y downward over a persistent treap that keeps the Pareto staircase (weights strictly
/// decreasing in x); each distinct y keeps a version root.
class DominanceIndex {
 public:
  struct Point {
    Index x = 0, y = 0;
    Value weight = 0;
  };

  DominanceIndex() = default;
  explicit DominanceIndex(std::vector<Point> points);

  std::size_t size() const noexcept { return points_.size(); }
  const Point& point(std::size_t k) const { return points_[k]; }
  /// Index of a heaviest dominating point, or nothing.
  std::optional<std::size_t> query(Index x, Index y) const;
  std::size_t words() const noexcept;

 private:
  struct Node {
    std::int32_t left = -1, right = -1;
    std::int32_t id = -1;
    std::uint32_t prio = 0;
  };
  Index key(std::int32_t v) const { return points_[static_cast<std::size_t>(nodes_[static_cast<std::size_t>(v)].id)].x; }
  Value weight(std::int32_t v) const {
    return points_[static_cast<std::size_t>(nodes_[static_cast<std::size_t>(v)].id)].weight;
  }
  std::int32_t copy(std::int32_t v);
  std::int32_t merge(std::int32_t a, std::int32_t b);
  // Splits into keys < x and keys >= x.
  void split(std::int32_t v, Index x, std::int32_t& lo, std::int32_t& hi);
  std::int32_t successor(std::int32_t root, Index x) const;

  std::vector<Point> points_;
  std::vector<Node> nodes_;
  std::vector<Index> ys_;             // distinct y, ascending
  std::vector<std::int32_t> roots_;   // version holding every point with y' >= ys_[k]
};

}  // namespace monge
