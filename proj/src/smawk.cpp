#include "monge/smawk.hpp"

namespace monge {

std::vector<Index> column_maxima(const MatrixOracle& m) {
  return column_maxima_with(m.rows(), m.cols(), [&m](Index i, Index j) { return m(i, j); });
}

std::vector<Breakpoint> breakpoints(const MatrixOracle& m) {
  return breakpoints(m, column_maxima(m));
}

std::vector<Breakpoint> breakpoints(const MatrixOracle& m, const std::vector<Index>& r) {
  std::vector<Breakpoint> out;
  for (Index c = 0; c < static_cast<Index>(r.size()); ++c) {
    const Index row = r[static_cast<std::size_t>(c)];
    if (c > 0 && row == r[static_cast<std::size_t>(c - 1)]) continue;
    Breakpoint bp{c, row, std::nullopt, -1};
    if (!out.empty()) {
      const Breakpoint& prev = out.back();
      Value best = m(prev.row, prev.col);
      Index at = prev.col;
      for (Index j = prev.col + 1; j < c; ++j) {
        const Value v = m(prev.row, j);
        if (v > best) {
          best = v;
          at = j;
        }
      }
      bp.span_max = best;
      bp.span_col = at;
    }
    out.push_back(bp);
  }
  return out;
}

}  // namespace monge
