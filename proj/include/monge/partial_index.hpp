#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "monge/matrix.hpp"
#include "monge/staircase_index.hpp"

namespace monge {

/// One staircase of a partial-shape partition: rows [r0, r1], row i defined on
/// [first[i - r0], last[i - r0]] (matrix columns).
struct StaircasePiece {
  enum class Group { Outer, Left, Right };
  Index r0 = 0, r1 = 0;
  std::vector<Index> first, last;
  Group group = Group::Outer;

  Index c0() const;
  Index c1() const;
  /// The piece as a shape over its bounding box.
  PartialShape local_shape() const;
};

/// Splits a partial shape into staircases: the widening top slice and the narrowing bottom
/// slice give two staircases each; the middle slice, where both boundaries move the same
/// way, alternates between a Left collection and a Right collection whose pieces are
/// pairwise row- and column-disjoint. Every row meets at most two pieces, every column at
/// most four. A staircase shape comes back as a single piece.
std::vector<StaircasePiece> partition_staircases(const PartialShape& shape);

/// Rectangle maxima over the defined entries of a partial Monge matrix.
class PartialIndex {
 public:
  PartialIndex() = default;
  PartialIndex(const MatrixOracle& m, const PartialShape& shape,
               StaircaseIndex::Variant variant = StaircaseIndex::Variant::Linear);

  Index rows() const noexcept;
  Index cols() const noexcept;
  const std::vector<StaircasePiece>& pieces() const noexcept;
  /// Maximum of each piece, in piece order.
  const std::vector<Entry>& piece_maxima() const noexcept;

  /// Nothing when the rectangle holds no defined entry; std::out_of_range outside the matrix.
  std::optional<Entry> max(Index i0, Index i1, Index j0, Index j1) const;
  std::size_t words() const noexcept;

  class Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

}  // namespace monge
