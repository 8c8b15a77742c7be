#include "monge/row_tree.hpp"

#include <stdexcept>

namespace monge {

std::int32_t RowTreeForest::add(const MatrixOracle& m, bool with_root, const SpanMax* span) {
  const Index rows = m.rows(), cols = m.cols();
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("empty matrix");
  const int top = RowTree::root_level(rows) - (with_root ? 0 : 1);
  Mat mat{static_cast<std::int32_t>(rows), static_cast<std::int32_t>(cols), -1};
  for (int level = 1; level <= top; ++level) {
    for (Index k = 0; k < RowTree::nodes_at(rows, level); ++k) {
      const Index a = RowTree::first(level, k), b = RowTree::last(rows, level, k), len = b - a + 1;
      const MatrixOracle part = submatrix(m, a, 0, len, cols);
      SpanMax pre, suf;
      if (span) {
        pre = [span, a](Index r, Index c0, Index c1) { return (*span)(a + r, c0, c1); };
        suf = [span, b, cols](Index r, Index c0, Index c1) {
          auto [v, c] = (*span)(b - r, cols - 1 - c1, cols - 1 - c0);
          return std::make_pair(v, cols - 1 - c);
        };
      }
      const std::int32_t id = builder_.add(part, span ? &pre : nullptr);
      builder_.add(reverse_both(part), span ? &suf : nullptr);
      if (mat.first_tree < 0) mat.first_tree = id;
    }
  }
  mats_.push_back(mat);
  return static_cast<std::int32_t>(mats_.size() - 1);
}

void RowTreeForest::finish() { trees_ = builder_.finish(); }

std::int32_t RowTreeForest::tree_id(const Mat& mat, int level, Index k, bool suffix) const {
  Index offset = 0;
  for (int l = 1; l < level; ++l) offset += RowTree::nodes_at(mat.rows, l);
  return mat.first_tree + static_cast<std::int32_t>(2 * (offset + k)) + (suffix ? 1 : 0);
}

RowTreeForest::Part RowTreeForest::single(Index row, Index j0, Index j1) const {
  Part p;
  p.count = 1;
  p.row[0] = row;
  p.c0[0] = j0;
  p.c1[0] = j1;
  return p;
}

// Prefix query in tree coordinates: rows [0, local_last], columns [a, b].
RowTreeForest::Part RowTreeForest::walk(std::int32_t tree, Index local_last, Index a, Index b) const {
  using Node = BreakpointTree::Node;
  const BreakpointTree& t = trees_;
  const Node p1 = t.weighted_ancestor(t.top(tree, local_last), b);
  const auto [p0, a1] = t.weighted_ancestor_with_child(p1, a);
  Part out;
  if (p0 == p1) {
    out = single(t.row(p0), a, b);
    return out;
  }
  out.count = 2;
  out.row = {t.row(p0), t.row(p1)};
  out.c0 = {a, t.weight(p1)};
  out.c1 = {t.weight(a1) - 1, b};
  if (a1 != p1 && t.has_values()) {
    const Node u = t.path_max(a1, p1).first;
    out.exact = Entry{t.row(t.parent(u)), t.value_col(u), t.value(u)};
  }
  return out;
}

RowTreeForest::Part RowTreeForest::prefix(std::int32_t mat, int level, Index k, Index last, Index j0, Index j1) const {
  const Mat& mm = mats_[static_cast<std::size_t>(mat)];
  const Index first = RowTree::first(level, k);
  if (level == 0 || first == last) return single(last, j0, j1);
  Part p = walk(tree_id(mm, level, k, false), last - first, j0, j1);
  for (int q = 0; q < p.count; ++q) p.row[static_cast<std::size_t>(q)] += first;
  if (p.exact) p.exact->row += first;
  return p;
}

RowTreeForest::Part RowTreeForest::suffix(std::int32_t mat, int level, Index k, Index first, Index j0, Index j1) const {
  const Mat& mm = mats_[static_cast<std::size_t>(mat)];
  const Index last = RowTree::last(mm.rows, level, k), n = mm.cols;
  if (level == 0 || first == last) return single(first, j0, j1);
  Part r = walk(tree_id(mm, level, k, true), last - first, n - 1 - j1, n - 1 - j0);
  Part p;
  p.count = r.count;
  // Reversed order so that p.row stays ascending in columns.
  for (int q = 0; q < r.count; ++q) {
    const auto from = static_cast<std::size_t>(r.count - 1 - q), to = static_cast<std::size_t>(q);
    p.row[to] = last - r.row[from];
    p.c0[to] = n - 1 - r.c1[from];
    p.c1[to] = n - 1 - r.c0[from];
  }
  if (r.exact) p.exact = Entry{last - r.exact->row, n - 1 - r.exact->col, r.exact->value};
  return p;
}

std::array<RowTreeForest::Part, 2> RowTreeForest::cover(std::int32_t mat, Index i0, Index i1, Index j0, Index j1,
                                                        int& count) const {
  if (i0 == i1) {
    count = 1;
    return {single(i0, j0, j1), Part{}};
  }
  const auto s = RowTree::split(i0, i1);
  count = 2;
  return {suffix(mat, s.level, s.left, i0, j0, j1), prefix(mat, s.level, s.right, i1, j0, j1)};
}

}  // namespace monge
