#pragma once

#include <cstddef>
#include <vector>

#include "monge/matrix.hpp"
#include "monge/micro_index.hpp"
#include "monge/ordered_index.hpp"

namespace monge {

/// Maxima of the cells of a grid over a full Monge matrix. Horizontal slices keep their
/// breakpoints plus the maximum of each breakpoint row up to the next breakpoint under a
/// range-max index; vertical slices do the same on the transpose. A cell query narrows the
/// maximum to at most two rows and two columns, or finds it outright.
class CellMaxima {
 public:
  CellMaxima() = default;
  /// Slices start at the given rows / columns (ascending, first one 0), each at most
  /// MicroIndex::kMaxSliceRows wide.
  CellMaxima(const MatrixOracle& m, const std::vector<Index>& row_starts, const std::vector<Index>& col_starts);
  /// Square g x g grid anchored at (0, 0).
  static CellMaxima grid(const MatrixOracle& m, Index g);

  Index row_slices() const noexcept { return rows_.micro.slices(); }
  Index col_slices() const noexcept { return cols_.micro.slices(); }
  Entry cell_max(Index row_slice, Index col_slice) const;
  std::size_t words() const noexcept { return rows_.words() + cols_.words() + 2; }

 private:
  struct Side {
    MicroIndex micro;
    std::vector<std::int32_t> first_bp;  // per slice offset into span arrays
    std::vector<std::int32_t> span_col;  // column where the previous breakpoint row peaks
    RangeMaxIndex spans;
    void build(const MatrixOracle& m, const std::vector<Index>& starts);
    // Candidate rows (at most two) and an exact entry for slice k over columns [c0, c1].
    void narrow(Index k, Index c0, Index c1, Index* rows, int& count, std::optional<Entry>& exact) const;
    std::size_t words() const noexcept {
      return micro.words() + (first_bp.size() + span_col.size() + 1) / 2 + spans.words();
    }
  };

  MatrixOracle m_;
  Side rows_, cols_;
};

}  // namespace monge
