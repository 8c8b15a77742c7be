#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "monge/matrix.hpp"

namespace monge {

/// Fully defined rectangle [r0, r1] x [c0, c1] of a staircase.
struct Fragment {
  Index r0 = 0, r1 = 0, c0 = 0, c1 = 0;
  friend bool operator==(const Fragment&, const Fragment&) = default;
};

/// Recursive halving of an upper-left staircase whose row i is defined on [0, t[i]].
/// t must be non-increasing; -1 marks an empty row. The fragments tile the defined cells.
std::vector<Fragment> decompose_staircase(const std::vector<Index>& t);
/// Throws std::invalid_argument unless the shape is an upper-left staircase.
std::vector<Fragment> decompose_staircase(const PartialShape& shape);
/// Any staircase kind: the upper-left decomposition of the mirrored shape, mapped back.
std::vector<Fragment> staircase_fragments(const PartialShape& shape);

/// Cell sides of the linear staircase index, coarsest first.
std::vector<Index> staircase_cell_sides(Index n);

/// Rectangle maxima over the defined entries of a staircase Monge matrix.
/// Basic keeps per-row arrays of intersected fragments (O(n log n) words); Linear runs the
/// same scheme on a matrix of cell maxima and recurses into the partially defined cells.
class StaircaseIndex {
 public:
  enum class Variant { Basic, Linear };

  StaircaseIndex() = default;
  /// `range` bounds the defined entries; without it they are scanned once.
  StaircaseIndex(const MatrixOracle& m, const PartialShape& shape, Variant variant = Variant::Linear,
                 std::optional<ValueRange> range = std::nullopt);

  Index rows() const noexcept;
  Index cols() const noexcept;
  StaircaseKind kind() const noexcept;
  Variant variant() const noexcept;

  /// Maximum defined entry in rows [i0, i1] x columns [j0, j1]; nothing when none is defined.
  /// Throws std::out_of_range for rectangles outside the matrix.
  std::optional<Entry> max(Index i0, Index i1, Index j0, Index j1) const;

  std::size_t words() const noexcept;

  class Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

}  // namespace monge
