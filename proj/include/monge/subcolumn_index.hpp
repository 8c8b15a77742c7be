#pragma once

#include <cstddef>
#include <memory>

#include "monge/matrix.hpp"
#include "monge/micro_index.hpp"
#include "monge/row_tree.hpp"

namespace monge {

/// Maximum of one column over a row interval of a Monge matrix. Subrow queries come from
/// an index on the transpose view.
class SubcolumnIndex {
 public:
  enum class Variant { Basic, TwoLevel };

  SubcolumnIndex() = default;
  /// Prefix and suffix breakpoint trees per RowTree node: O(m log m) words.
  static SubcolumnIndex build_basic(const MatrixOracle& m);
  /// Slices of x = ceil(log2 m) rows and sub-slices of x' = ceil(log2 x) rows with micro
  /// indexes, plus basic indexes on the contracted matrices: O(m) words.
  static SubcolumnIndex build_two_level(const MatrixOracle& m);

  Variant variant() const noexcept { return variant_; }
  Index rows() const noexcept { return m_.rows(); }
  Index cols() const noexcept { return m_.cols(); }
  Index slice_rows() const noexcept { return x_; }
  Index sub_slice_rows() const noexcept { return xs_; }

  /// Maximum of column j over rows [i0, i1]; throws std::out_of_range.
  Entry max(Index j, Index i0, Index i1) const;

  std::size_t words() const noexcept;

 private:
  Entry basic_max(std::int32_t mat, Index j, Index i0, Index i1) const;
  void slice_max(Index s, Index a, Index b, Index j, std::optional<Entry>& best) const;
  Entry contracted_value(std::int32_t mat, Index row, Index j) const;

  MatrixOracle m_;
  Variant variant_ = Variant::Basic;
  Index x_ = 1, xs_ = 1, per_ = 1;
  bool brute_ = false;
  std::shared_ptr<const RowTreeForest> forest_;
  std::shared_ptr<const MicroIndex> slices_, subs_;
};

/// x = max(1, ceil(log2 m)) and x' = max(1, ceil(log2 x)).
Index slice_height(Index m);

}  // namespace monge
