#include "monge/subcolumn_index.hpp"

#include <bit>
#include <stdexcept>

namespace monge {

Index slice_height(Index m) {
  if (m <= 2) return 1;
  return static_cast<Index>(std::bit_width(static_cast<std::uint64_t>(m - 1)));
}

SubcolumnIndex SubcolumnIndex::build_basic(const MatrixOracle& m) {
  if (m.empty()) throw std::invalid_argument("empty matrix");
  SubcolumnIndex out;
  out.m_ = m;
  out.variant_ = Variant::Basic;
  auto forest = std::make_shared<RowTreeForest>();
  forest->add(m, false);
  forest->finish();
  out.forest_ = std::move(forest);
  return out;
}

SubcolumnIndex SubcolumnIndex::build_two_level(const MatrixOracle& m) {
  if (m.empty()) throw std::invalid_argument("empty matrix");
  SubcolumnIndex out;
  out.m_ = m;
  out.variant_ = Variant::TwoLevel;
  const Index rows = m.rows(), cols = m.cols();
  if (rows < 4) {
    out.brute_ = true;
    return out;
  }
  out.x_ = slice_height(rows);
  out.xs_ = slice_height(out.x_);
  out.per_ = (out.x_ + out.xs_ - 1) / out.xs_;
  const Index x = out.x_, xs = out.xs_, slices = (rows + x - 1) / x;

  std::vector<Index> starts, sub_starts;
  for (Index s = 0; s < slices; ++s) {
    starts.push_back(s * x);
    for (Index a = s * x; a < std::min(rows, (s + 1) * x); a += xs) sub_starts.push_back(a);
  }
  auto slice_micro = std::make_shared<MicroIndex>(m, starts);
  auto sub_micro = std::make_shared<MicroIndex>(m, sub_starts);

  auto forest = std::make_shared<RowTreeForest>();
  const MicroIndex* sm = slice_micro.get();
  forest->add(MatrixOracle(slices, cols, [sm](Index s, Index j) { return sm->column_max(s, j).value; }), false);
  const Index per = out.per_;
  for (Index s = 0; s < slices; ++s) {
    const Index count = (std::min(rows, (s + 1) * x) - s * x + xs - 1) / xs;
    const MicroIndex* um = sub_micro.get();
    const Index base = s * per;
    forest->add(MatrixOracle(count, cols, [um, base](Index t, Index j) { return um->column_max(base + t, j).value; }),
                false);
  }
  forest->finish();
  out.forest_ = std::move(forest);
  out.slices_ = std::move(slice_micro);
  out.subs_ = std::move(sub_micro);
  return out;
}

Entry SubcolumnIndex::contracted_value(std::int32_t mat, Index row, Index j) const {
  if (variant_ == Variant::Basic) return {row, j, m_(row, j)};
  if (mat == 0) return slices_->column_max(row, j);
  return subs_->column_max((mat - 1) * per_ + row, j);
}

// Column j over rows [i0, i1] of forest matrix `mat`, with rows mapped to m.
Entry SubcolumnIndex::basic_max(std::int32_t mat, Index j, Index i0, Index i1) const {
  int count = 0;
  auto parts = forest_->cover(mat, i0, i1, j, j, count);
  Entry best = contracted_value(mat, parts[0].row[0], j);
  if (count == 2) {
    const Entry e = contracted_value(mat, parts[1].row[0], j);
    if (e.value >= best.value) best = e;
  }
  return best;
}

void SubcolumnIndex::slice_max(Index s, Index a, Index b, Index j, std::optional<Entry>& best) const {
  auto scan = [&](Index lo, Index hi) {
    for (Index i = lo; i <= hi; ++i) keep_max(best, Entry{i, j, m_(i, j)});
  };
  const Index base = s * x_;
  Index ta = (a - base) / xs_, tb = (b - base) / xs_;
  if (ta == tb) {
    scan(a, b);
    return;
  }
  if (a != base + ta * xs_) {
    scan(a, base + (ta + 1) * xs_ - 1);
    ++ta;
  }
  if (b != std::min(base + (tb + 1) * xs_, m_.rows()) - 1) {
    scan(base + tb * xs_, b);
    --tb;
  }
  if (ta <= tb) keep_max(best, basic_max(static_cast<std::int32_t>(1 + s), j, ta, tb));
}

Entry SubcolumnIndex::max(Index j, Index i0, Index i1) const {
  if (j < 0 || j >= m_.cols() || i0 < 0 || i1 >= m_.rows() || i0 > i1)
    throw std::out_of_range("subcolumn query out of range");
  if (variant_ == Variant::Basic) return basic_max(0, j, i0, i1);
  std::optional<Entry> best;
  if (brute_) {
    for (Index i = i0; i <= i1; ++i) keep_max(best, Entry{i, j, m_(i, j)});
    return *best;
  }
  const Index s0 = i0 / x_, s1 = i1 / x_;
  if (s0 == s1) {
    slice_max(s0, i0, i1, j, best);
    return *best;
  }
  slice_max(s0, i0, (s0 + 1) * x_ - 1, j, best);
  if (s0 + 1 <= s1 - 1) keep_max(best, basic_max(0, j, s0 + 1, s1 - 1));
  slice_max(s1, s1 * x_, i1, j, best);
  return *best;
}

std::size_t SubcolumnIndex::words() const noexcept {
  std::size_t w = 8;
  if (forest_) w += forest_->words();
  if (slices_) w += slices_->words();
  if (subs_) w += subs_->words();
  return w;
}

}  // namespace monge
