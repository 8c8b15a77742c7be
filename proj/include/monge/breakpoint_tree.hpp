#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "monge/matrix.hpp"
#include "monge/ordered_index.hpp"

namespace monge {

/// Maximum of one row over the closed column range [c0, c1]: (value, column).
using SpanMax = std::function<std::pair<Value, Index>(Index row, Index c0, Index c1)>;

/// Final breakpoint stack of rows [r0, r1] of m as (column, row) pairs, built by the same
/// pop/binary-search insertion as the tree below: O((r1-r0+1) log n) probes.
std::vector<std::pair<Index, Index>> slice_breakpoints(const MatrixOracle& m, Index r0, Index r1);

/// All breakpoint stacks of the row prefixes of a Monge matrix, stored as one tree.
/// Ancestors of top(i), read root-down and excluding the root, are the breakpoints of
/// rows [0, i]. Several trees can share one instance (a forest); each keeps its own root
/// whose weight is "below every column". Nodes are numbered so that every heavy path is a
/// contiguous run of handles.
class BreakpointTree {
 public:
  using Node = std::int32_t;
  /// Root of the first tree.
  static constexpr Node kRoot = 0;
  static constexpr Value kNoValue = std::numeric_limits<Value>::min();

  class Builder {
   public:
    /// Inserts the rows of m top to bottom and returns the tree id. When `span` is given,
    /// each pushed node other than a first breakpoint gets the maximum of its parent's row
    /// between the two breakpoints.
    std::int32_t add(const MatrixOracle& m, const SpanMax* span = nullptr);
    BreakpointTree finish();

   private:
    friend class BreakpointTree;
    std::vector<std::int32_t> weight_, row_, parent_, head_, value_col_;
    std::vector<Value> value_;
    std::vector<Node> top_;
    std::vector<std::int64_t> top_at_;
    bool valued_ = false;
  };

  BreakpointTree() = default;
  static BreakpointTree build(const MatrixOracle& m, const SpanMax* span = nullptr);

  Index trees() const noexcept { return static_cast<Index>(top_at_.size()) - 1; }
  Index rows(std::int32_t tree = 0) const {
    return static_cast<Index>(top_at_[static_cast<std::size_t>(tree) + 1] - top_at_[static_cast<std::size_t>(tree)]);
  }
  Index node_count() const noexcept { return static_cast<Index>(parent_.size()); }
  Node top(Index i) const { return top(0, i); }
  Node top(std::int32_t tree, Index i) const {
    return top_[static_cast<std::size_t>(top_at_[static_cast<std::size_t>(tree)] + i)];
  }
  bool is_root(Node v) const { return parent(v) < 0; }
  Node parent(Node v) const { return parent_[static_cast<std::size_t>(v)]; }
  /// Breakpoint column; -1 for a root.
  Index weight(Node v) const { return weight_[static_cast<std::size_t>(v)]; }
  /// Row whose column maxima start at this breakpoint; -1 for a root.
  Index row(Node v) const { return row_[static_cast<std::size_t>(v)]; }
  bool has_values() const noexcept { return values_.size() > 0; }
  /// kNoValue for roots and first breakpoints.
  Value value(Node v) const { return values_.value(v); }
  Index value_col(Node v) const { return value_col_[static_cast<std::size_t>(v)]; }

  /// Deepest ancestor of v (v included) with weight <= j, or the root.
  Node weighted_ancestor(Node v, Index j) const { return weighted_ancestor_with_child(v, j).first; }
  /// Same, plus the child of that ancestor on the path to v (-1 when the ancestor is v).
  std::pair<Node, Node> weighted_ancestor_with_child(Node v, Index j) const;

  /// Node holding the largest value strictly below `ancestor` down to `v`.
  /// Throws std::invalid_argument unless `ancestor` is a proper ancestor of v.
  std::pair<Node, Value> path_max(Node ancestor, Node v) const;

  /// Non-root ancestors of v, root-down.
  std::vector<Node> ancestors(Node v) const;

  std::size_t words() const noexcept;

 private:
  Node head(Node v) const { return head_[static_cast<std::size_t>(v)]; }

  std::vector<std::int32_t> weight_;
  std::vector<std::int32_t> row_;
  std::vector<Node> parent_;
  std::vector<Node> head_;
  std::vector<std::int32_t> value_col_;
  std::vector<Node> top_;
  std::vector<std::int64_t> top_at_{0};
  RangeMaxIndex values_;
};

}  // namespace monge
