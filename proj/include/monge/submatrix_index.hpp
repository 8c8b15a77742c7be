#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "monge/matrix.hpp"
#include "monge/row_tree.hpp"
#include "monge/subcolumn_index.hpp"

namespace monge {

/// Rectangle maxima over a Monge matrix by valued prefix/suffix trees per RowTree node,
/// with subrow queries answered by a SubcolumnIndex on the transpose.
class ExactRectangleIndex {
 public:
  ExactRectangleIndex() = default;
  /// `two_level_subrow` picks the linear-space subrow structure.
  ExactRectangleIndex(const MatrixOracle& m, bool two_level_subrow);

  Index rows() const noexcept { return m_.rows(); }
  Index cols() const noexcept { return m_.cols(); }
  Entry subrow(Index i, Index c0, Index c1) const;
  /// Resolves one part's candidate rows with subrow queries.
  void resolve(const RowTreeForest::Part& part, std::optional<Entry>& best) const;
  /// Maximum over rows [0, last] of RowTree node (level, k) and columns [j0, j1].
  Entry prefix_max(int level, Index k, Index last, Index j0, Index j1) const;
  Entry max(Index i0, Index i1, Index j0, Index j1) const;
  std::size_t words() const noexcept { return forest_.words() + subrow_.words() + 4; }

 private:
  MatrixOracle m_;
  SubcolumnIndex subrow_;
  RowTreeForest forest_;
};

/// Rectangle maximum queries on a Monge matrix.
class SubmatrixIndex {
 public:
  enum class Variant { Basic, Linear };

  /// Candidates gathered by the last linear query, for inspection.
  struct Trace {
    std::vector<Index> rows, cols;
    std::vector<Entry> exact;
    Index row_sub_slice = 1, col_sub_slice = 1;
  };

  SubmatrixIndex() = default;
  /// O(m log m) words.
  static SubmatrixIndex build_basic(const MatrixOracle& m);
  /// Slice decompositions of M and its transpose; O(m + n) words.
  static SubmatrixIndex build_linear(const MatrixOracle& m);

  Variant variant() const noexcept { return variant_; }
  Index rows() const noexcept { return m_.rows(); }
  Index cols() const noexcept { return m_.cols(); }

  /// Maximum over rows [i0, i1] and columns [j0, j1]; throws std::out_of_range.
  Entry max(Index i0, Index i1, Index j0, Index j1, Trace* trace = nullptr) const;

  std::size_t words() const noexcept;

  class Side;

 private:
  MatrixOracle m_;
  Variant variant_ = Variant::Basic;
  std::shared_ptr<const ExactRectangleIndex> exact_;
  std::shared_ptr<const Side> row_side_, col_side_;
};

}  // namespace monge
