#include "monge/submatrix_index.hpp"

#include <algorithm>
#include <stdexcept>

#include "monge/micro_index.hpp"
#include "monge/smawk.hpp"

namespace monge {

ExactRectangleIndex::ExactRectangleIndex(const MatrixOracle& m, bool two_level_subrow) : m_(m) {
  subrow_ = two_level_subrow ? SubcolumnIndex::build_two_level(transpose(m)) : SubcolumnIndex::build_basic(transpose(m));
  const SubcolumnIndex* sub = &subrow_;
  const SpanMax span = [sub](Index r, Index c0, Index c1) {
    const Entry e = sub->max(r, c0, c1);
    return std::make_pair(e.value, e.row);
  };
  forest_.add(m, false, &span);
  forest_.finish();
}

Entry ExactRectangleIndex::subrow(Index i, Index c0, Index c1) const {
  const Entry e = subrow_.max(i, c0, c1);
  return {i, e.row, e.value};
}

void ExactRectangleIndex::resolve(const RowTreeForest::Part& part, std::optional<Entry>& best) const {
  for (int q = 0; q < part.count; ++q) {
    const auto k = static_cast<std::size_t>(q);
    keep_max(best, subrow(part.row[k], part.c0[k], part.c1[k]));
  }
  if (part.exact) keep_max(best, *part.exact);
}

Entry ExactRectangleIndex::prefix_max(int level, Index k, Index last, Index j0, Index j1) const {
  std::optional<Entry> best;
  resolve(forest_.prefix(0, level, k, last, j0, j1), best);
  return *best;
}

Entry ExactRectangleIndex::max(Index i0, Index i1, Index j0, Index j1) const {
  int count = 0;
  auto parts = forest_.cover(0, i0, i1, j0, j1, count);
  std::optional<Entry> best;
  for (int q = 0; q < count; ++q) resolve(parts[static_cast<std::size_t>(q)], best);
  return *best;
}

// ---------------------------------------------------------------------------
// One side of the linear pipeline: rows of the oriented matrix a are cut into slices and
// sub-slices; a query yields candidate rows plus exact entries.

class SubmatrixIndex::Side {
 public:
  explicit Side(const MatrixOracle& a);

  void collect(Index i0, Index i1, Index j0, Index j1, std::vector<Index>& rows, std::vector<Entry>& exact) const;
  Index sub_slice_rows() const noexcept { return xs_; }
  std::size_t words() const noexcept {
    return slices_.words() + subs_.words() + (contracted_ ? contracted_->words() : 0) + forest_.words() + 8;
  }

 private:
  Index slice_first(Index s) const { return s * x_; }
  Index slice_last(Index s) const { return std::min((s + 1) * x_, m_.rows()) - 1; }
  Index sub_count(Index s) const { return (slice_last(s) - slice_first(s) + xs_) / xs_; }
  void add_sub_slice(Index s, Index t, std::vector<Index>& rows) const;
  void add_part(Index s, const RowTreeForest::Part& part, std::vector<Index>& rows, std::vector<Entry>& exact) const;
  void add_naive(Index lo, Index hi, std::vector<Index>& rows) const {
    for (Index i = lo; i <= hi; ++i) rows.push_back(i);
  }
  void add_contracted(Index s0, Index s1, Index j0, Index j1, std::vector<Entry>& exact) const;

  MatrixOracle m_;
  Index x_ = 1, xs_ = 1, per_ = 1;
  MicroIndex slices_, subs_;
  std::unique_ptr<ExactRectangleIndex> contracted_;
  RowTreeForest forest_;  // forest matrix s holds the sub-slice contraction of slice s
};

SubmatrixIndex::Side::Side(const MatrixOracle& a) : m_(a) {
  const Index rows = a.rows(), cols = a.cols();
  x_ = slice_height(rows);
  xs_ = slice_height(x_);
  per_ = (x_ + xs_ - 1) / xs_;
  const Index count = (rows + x_ - 1) / x_;
  std::vector<Index> starts, sub_starts;
  for (Index s = 0; s < count; ++s) {
    starts.push_back(slice_first(s));
    for (Index r = slice_first(s); r <= slice_last(s); r += xs_) sub_starts.push_back(r);
  }
  slices_ = MicroIndex(a, starts);
  subs_ = MicroIndex(a, sub_starts);

  const MicroIndex* sm = &slices_;
  contracted_ = std::make_unique<ExactRectangleIndex>(
      MatrixOracle(count, cols, [sm](Index s, Index j) { return sm->column_max(s, j).value; }), true);

  // Subrow maxima of a, needed only while the contracted trees get their values.
  const SubcolumnIndex helper = SubcolumnIndex::build_two_level(transpose(a));
  const MicroIndex* um = &subs_;
  for (Index s = 0; s < count; ++s) {
    const Index base = s * per_;
    const SpanMax span = [um, &helper, base](Index t, Index c0, Index c1) {
      const Index g = base + t;
      const std::size_t n = um->breakpoint_count(g);
      std::pair<Value, Index> best{0, -1};
      for (std::size_t i = um->breakpoint_rank(g, c0) - 1; i < n; ++i) {
        const Index lo = std::max(c0, um->breakpoint_col(g, i));
        if (lo > c1) break;
        const Index hi = i + 1 < n ? std::min(c1, um->breakpoint_col(g, i + 1) - 1) : c1;
        const Entry e = helper.max(um->breakpoint_row(g, i), lo, hi);
        if (best.second < 0 || e.value > best.first) best = {e.value, e.row};
      }
      return best;
    };
    forest_.add(MatrixOracle(sub_count(s), cols, [um, base](Index t, Index j) { return um->column_max(base + t, j).value; }),
                true, &span);
  }
  forest_.finish();
}

void SubmatrixIndex::Side::add_sub_slice(Index s, Index t, std::vector<Index>& rows) const {
  const Index g = s * per_ + t;
  add_naive(subs_.begin(g), subs_.end(g), rows);
}

void SubmatrixIndex::Side::add_part(Index s, const RowTreeForest::Part& part, std::vector<Index>& rows,
                                    std::vector<Entry>& exact) const {
  for (int q = 0; q < part.count; ++q) add_sub_slice(s, part.row[static_cast<std::size_t>(q)], rows);
  if (part.exact) {
    const Entry& e = *part.exact;
    exact.push_back({subs_.argmax_row(s * per_ + e.row, e.col), e.col, e.value});
  }
}

void SubmatrixIndex::Side::add_contracted(Index s0, Index s1, Index j0, Index j1, std::vector<Entry>& exact) const {
  const Entry e = contracted_->max(s0, s1, j0, j1);
  exact.push_back({slices_.argmax_row(e.row, e.col), e.col, e.value});
}

void SubmatrixIndex::Side::collect(Index i0, Index i1, Index j0, Index j1, std::vector<Index>& rows,
                                   std::vector<Entry>& exact) const {
  const Index s0 = i0 / x_, s1 = i1 / x_;
  const auto sub_of = [&](Index s, Index i) { return (i - slice_first(s)) / xs_; };
  const auto sub_first = [&](Index s, Index t) { return slice_first(s) + t * xs_; };
  const auto sub_last = [&](Index s, Index t) { return std::min(slice_first(s) + (t + 1) * xs_, slice_last(s) + 1) - 1; };
  const bool left_full = i0 == slice_first(s0), right_full = i1 == slice_last(s1);

  if (s0 == s1) {
    if (left_full && right_full) {
      add_contracted(s0, s0, j0, j1, exact);
      return;
    }
    Index ta = sub_of(s0, i0), tb = sub_of(s0, i1);
    if (ta == tb) {
      add_naive(i0, i1, rows);
      return;
    }
    if (i0 != sub_first(s0, ta)) add_naive(i0, sub_last(s0, ta++), rows);
    if (i1 != sub_last(s0, tb)) add_naive(sub_first(s0, tb--), i1, rows);
    if (ta <= tb) {
      int count = 0;
      auto parts = forest_.cover(static_cast<std::int32_t>(s0), ta, tb, j0, j1, count);
      for (int q = 0; q < count; ++q) add_part(s0, parts[static_cast<std::size_t>(q)], rows, exact);
    }
    return;
  }

  const Index sa = left_full ? s0 : s0 + 1, sb = right_full ? s1 : s1 - 1;
  if (sa <= sb) add_contracted(sa, sb, j0, j1, exact);
  if (!left_full) {
    Index ta = sub_of(s0, i0);
    if (i0 != sub_first(s0, ta)) add_naive(i0, sub_last(s0, ta++), rows);
    const Index count = sub_count(s0);
    if (ta < count)
      add_part(s0, forest_.suffix(static_cast<std::int32_t>(s0), RowTree::root_level(count), 0, ta, j0, j1), rows, exact);
  }
  if (!right_full) {
    Index tb = sub_of(s1, i1);
    if (i1 != sub_last(s1, tb)) add_naive(sub_first(s1, tb--), i1, rows);
    if (tb >= 0)
      add_part(s1, forest_.prefix(static_cast<std::int32_t>(s1), RowTree::root_level(sub_count(s1)), 0, tb, j0, j1), rows,
               exact);
  }
}

// ---------------------------------------------------------------------------

SubmatrixIndex SubmatrixIndex::build_basic(const MatrixOracle& m) {
  if (m.empty()) throw std::invalid_argument("empty matrix");
  SubmatrixIndex out;
  out.m_ = m;
  out.variant_ = Variant::Basic;
  out.exact_ = std::make_shared<ExactRectangleIndex>(m, false);
  return out;
}

SubmatrixIndex SubmatrixIndex::build_linear(const MatrixOracle& m) {
  if (m.empty()) throw std::invalid_argument("empty matrix");
  SubmatrixIndex out;
  out.m_ = m;
  out.variant_ = Variant::Linear;
  out.row_side_ = std::make_shared<Side>(m);
  out.col_side_ = std::make_shared<Side>(transpose(m));
  return out;
}

Entry SubmatrixIndex::max(Index i0, Index i1, Index j0, Index j1, Trace* trace) const {
  if (i0 < 0 || i0 > i1 || i1 >= rows() || j0 < 0 || j0 > j1 || j1 >= cols())
    throw std::out_of_range("rectangle outside the matrix");
  if (variant_ == Variant::Basic) return exact_->max(i0, i1, j0, j1);

  std::vector<Index> rs, cs;
  std::vector<Entry> exact, exact_t;
  row_side_->collect(i0, i1, j0, j1, rs, exact);
  col_side_->collect(j0, j1, i0, i1, cs, exact_t);
  for (const Entry& e : exact_t) exact.push_back({e.col, e.row, e.value});
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());

  std::optional<Entry> best;
  for (const Entry& e : exact) keep_max(best, e);
  if (!rs.empty() && !cs.empty()) {
    const MatrixOracle& m = m_;
    auto at = column_maxima_with(static_cast<Index>(rs.size()), static_cast<Index>(cs.size()),
                                 [&](Index a, Index b) { return m(rs[static_cast<std::size_t>(a)], cs[static_cast<std::size_t>(b)]); });
    for (std::size_t b = 0; b < cs.size(); ++b) {
      const Index r = rs[static_cast<std::size_t>(at[b])];
      keep_max(best, Entry{r, cs[b], m(r, cs[b])});
    }
  }
  if (trace) {
    trace->rows = std::move(rs);
    trace->cols = std::move(cs);
    trace->exact = std::move(exact);
    trace->row_sub_slice = row_side_->sub_slice_rows();
    trace->col_sub_slice = col_side_->sub_slice_rows();
  }
  return *best;
}

std::size_t SubmatrixIndex::words() const noexcept {
  std::size_t w = 4;
  if (exact_) w += exact_->words();
  if (row_side_) w += row_side_->words();
  if (col_side_) w += col_side_->words();
  return w;
}

}  // namespace monge
