#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "monge/breakpoint_tree.hpp"
#include "monge/matrix.hpp"

namespace monge {

/// Implicit binary tree over rows 0..m-1. Node k of level l covers rows
/// [k << l, min((k + 1) << l, m) - 1]; level 0 holds single rows and the root sits at
/// level root_level(m).
struct RowTree {
  static int root_level(Index m) { return m <= 1 ? 0 : static_cast<int>(std::bit_width(static_cast<std::uint64_t>(m - 1))); }
  static Index nodes_at(Index m, int level) { return ((m - 1) >> level) + 1; }
  static Index first(int level, Index k) { return k << level; }
  static Index last(Index m, int level, Index k) { return std::min((k + 1) << level, m) - 1; }

  /// Children of the lowest common ancestor of rows i0 < i1: [i0, ...] is a suffix of node
  /// `left` and [..., i1] a prefix of node `right`, both at `level`.
  struct Split {
    int level;
    Index left, right;
  };
  static Split split(Index i0, Index i1) {
    const int level = static_cast<int>(std::bit_width(static_cast<std::uint64_t>(i0 ^ i1))) - 1;
    return {level, i0 >> level, i1 >> level};
  }
};

/// Prefix and suffix breakpoint trees for every RowTree node of one or more matrices,
/// sharing one BreakpointTree forest. Suffix trees are built on the reverse-both view of
/// the node's rows.
class RowTreeForest {
 public:
  /// Answer of one prefix/suffix part over columns [j0, j1]: up to two rows, each the
  /// column-maximum row on its own column range, plus an exact entry covering the columns
  /// between them (valued trees only).
  struct Part {
    std::array<Index, 2> row{};
    std::array<Index, 2> c0{}, c1{};
    int count = 0;
    std::optional<Entry> exact;
  };

  /// Adds trees for levels 1..root-1 (1..root with `with_root`). With `span`, trees carry
  /// the maxima of breakpoint rows between consecutive breakpoints; `span` answers
  /// (row, c0, c1) -> (value, column) on m itself.
  std::int32_t add(const MatrixOracle& m, bool with_root, const SpanMax* span = nullptr);
  void finish();

  Index rows(std::int32_t mat) const { return mats_[static_cast<std::size_t>(mat)].rows; }
  Index cols(std::int32_t mat) const { return mats_[static_cast<std::size_t>(mat)].cols; }

  /// Rows [first(level,k), last] (a prefix of the node) or [first, last(level,k)] (a
  /// suffix). Level 0 and single-row parts answer with that row.
  Part prefix(std::int32_t mat, int level, Index k, Index last, Index j0, Index j1) const;
  Part suffix(std::int32_t mat, int level, Index k, Index first, Index j0, Index j1) const;
  /// Parts covering rows [i0, i1]: one for a single row, else the two sides of the split.
  std::array<Part, 2> cover(std::int32_t mat, Index i0, Index i1, Index j0, Index j1, int& count) const;

  const BreakpointTree& trees() const noexcept { return trees_; }
  std::size_t words() const noexcept { return trees_.words() + (3 * mats_.size() + 1) / 2; }

 private:
  struct Mat {
    std::int32_t rows, cols, first_tree;
  };
  std::int32_t tree_id(const Mat& mat, int level, Index k, bool suffix) const;
  Part single(Index row, Index j0, Index j1) const;
  Part walk(std::int32_t tree, Index local_last, Index a, Index b) const;

  std::vector<Mat> mats_;
  BreakpointTree::Builder builder_;
  BreakpointTree trees_;
};

}  // namespace monge
