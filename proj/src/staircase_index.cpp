#include "monge/staircase_index.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <stdexcept>

#include "monge/cell_maxima.hpp"
#include "monge/dominance_index.hpp"
#include "monge/ordered_index.hpp"
#include "monge/smawk.hpp"
#include "monge/submatrix_index.hpp"

namespace monge {

namespace {

constexpr Value kNone = std::numeric_limits<Value>::min();
constexpr Entry kNoEntry{-1, -1, kNone};

void keep(Entry& best, const Entry& e) {
  if (e.value > best.value) best = e;
}

template <class T>
std::size_t half_words(const std::vector<T>& v) {
  return (v.size() * sizeof(T) + 7) / 8;
}

void decompose(const std::vector<Index>& t, Index ra, Index rb, Index ca, std::vector<Fragment>& out) {
  while (true) {
    while (rb >= ra && t[static_cast<std::size_t>(rb)] < ca) --rb;
    if (rb < ra) return;
    const Index mid = ra + (rb - ra) / 2;
    const Index tm = t[static_cast<std::size_t>(mid)];
    out.push_back({ra, mid, ca, tm});
    decompose(t, ra, mid, tm + 1, out);
    ra = mid + 1;
  }
}

// Mirror that turns a staircase into the upper-left kind.
struct Mirror {
  Index m = 0, n = 0;
  bool row_flip = false, col_flip = false;
  Index row(Index i) const { return row_flip ? m - 1 - i : i; }
  Index col(Index j) const { return col_flip ? n - 1 - j : j; }
};

Mirror mirror_of(StaircaseKind kind, Index m, Index n) {
  Mirror f{m, n, false, false};
  f.row_flip = kind == StaircaseKind::LowerLeft || kind == StaircaseKind::LowerRight;
  f.col_flip = kind == StaircaseKind::UpperRight || kind == StaircaseKind::LowerRight;
  return f;
}

std::vector<Index> canonical_lasts(const PartialShape& shape, const Mirror& f) {
  std::vector<Index> t(static_cast<std::size_t>(shape.rows()));
  for (Index i = 0; i < shape.rows(); ++i) {
    const Index r = f.row(i);
    t[static_cast<std::size_t>(i)] = f.col_flip ? shape.cols() - 1 - shape.first(r) : shape.last(r);
  }
  return t;
}

StaircaseKind require_staircase(const PartialShape& shape) {
  shape.validate();
  auto kind = classify_staircase(shape);
  if (!kind) throw std::invalid_argument("shape is not a staircase");
  return *kind;
}

using RectFn = std::function<Entry(Index, Index, Index, Index)>;

// A staircase in upper-left position as seen by the fragment machinery. Entries and
// rectangle maxima come back in the caller's coordinates; the flips say how rows and
// columns must be reordered for the matrix to be Monge.
struct StairView {
  Index rows = 0, cols = 0;
  std::vector<Index> t;
  bool row_flip = false, col_flip = false;
  std::function<Entry(Index, Index)> entry;
};

// Dominance maxima over a staircase via its fragment decomposition: a DominanceIndex on
// fragment corners, per-row and per-column arrays of intersected fragments with suffix
// maxima, and one rectangle query for the fragment holding the corner.
class FragmentDominance {
 public:
  FragmentDominance() = default;
  explicit FragmentDominance(const StairView& v);

  Entry query(Index i, Index j, const RectFn& rect) const;
  std::size_t words() const noexcept {
    return half_words(frags_) + half_words(frag_max_) + dom_.words() + half_words(row_at_) + half_words(col_at_) +
           half_words(row_items_) + half_words(col_items_);
  }

 private:
  struct Item {
    std::int32_t key = 0, frag = 0;
    Entry best;
  };
  static void finish_lines(std::vector<Item>& items, const std::vector<std::int32_t>& at);

  Index rows_ = 0, cols_ = 0;
  std::vector<Fragment> frags_;
  std::vector<Entry> frag_max_;
  DominanceIndex dom_;
  std::vector<std::int32_t> row_at_, col_at_;
  std::vector<Item> row_items_, col_items_;
};

FragmentDominance::FragmentDominance(const StairView& v) : rows_(v.rows), cols_(v.cols) {
  frags_ = decompose_staircase(v.t);
  row_at_.assign(static_cast<std::size_t>(rows_) + 1, 0);
  col_at_.assign(static_cast<std::size_t>(cols_) + 1, 0);
  for (const Fragment& f : frags_) {
    for (Index r = f.r0; r <= f.r1; ++r) ++row_at_[static_cast<std::size_t>(r) + 1];
    for (Index c = f.c0; c <= f.c1; ++c) ++col_at_[static_cast<std::size_t>(c) + 1];
  }
  for (std::size_t k = 1; k < row_at_.size(); ++k) row_at_[k] += row_at_[k - 1];
  for (std::size_t k = 1; k < col_at_.size(); ++k) col_at_[k] += col_at_[k - 1];
  row_items_.resize(static_cast<std::size_t>(row_at_.back()));
  col_items_.resize(static_cast<std::size_t>(col_at_.back()));
  auto row_fill = row_at_, col_fill = col_at_;

  std::vector<DominanceIndex::Point> points;
  points.reserve(frags_.size());
  frag_max_.reserve(frags_.size());
  std::vector<Entry> row_max, col_max;
  for (std::size_t k = 0; k < frags_.size(); ++k) {
    const Fragment& f = frags_[k];
    const Index h = f.r1 - f.r0 + 1, w = f.c1 - f.c0 + 1;
    auto row = [&](Index p) { return v.row_flip ? f.r1 - p : f.r0 + p; };
    auto col = [&](Index q) { return v.col_flip ? f.c1 - q : f.c0 + q; };
    auto val = [&](Index p, Index q) { return v.entry(row(p), col(q)).value; };
    const auto by_col = column_maxima_with(h, w, val);
    const auto by_row = column_maxima_with(w, h, [&](Index q, Index p) { return val(p, q); });
    row_max.assign(static_cast<std::size_t>(h), kNoEntry);
    col_max.assign(static_cast<std::size_t>(w), kNoEntry);
    for (Index p = 0; p < h; ++p)
      row_max[static_cast<std::size_t>(row(p) - f.r0)] = v.entry(row(p), col(by_row[static_cast<std::size_t>(p)]));
    for (Index q = 0; q < w; ++q)
      col_max[static_cast<std::size_t>(col(q) - f.c0)] = v.entry(row(by_col[static_cast<std::size_t>(q)]), col(q));

    Entry run = kNoEntry;
    for (Index r = f.r1; r >= f.r0; --r) {
      keep(run, row_max[static_cast<std::size_t>(r - f.r0)]);
      row_items_[static_cast<std::size_t>(row_fill[static_cast<std::size_t>(r)]++)] =
          Item{static_cast<std::int32_t>(f.c0), static_cast<std::int32_t>(k), run};
    }
    frag_max_.push_back(run);
    points.push_back({f.c0, f.r0, run.value});
    run = kNoEntry;
    for (Index c = f.c1; c >= f.c0; --c) {
      keep(run, col_max[static_cast<std::size_t>(c - f.c0)]);
      col_items_[static_cast<std::size_t>(col_fill[static_cast<std::size_t>(c)]++)] =
          Item{static_cast<std::int32_t>(f.r0), static_cast<std::int32_t>(k), run};
    }
  }
  finish_lines(row_items_, row_at_);
  finish_lines(col_items_, col_at_);
  dom_ = DominanceIndex(std::move(points));
}

void FragmentDominance::finish_lines(std::vector<Item>& items, const std::vector<std::int32_t>& at) {
  for (std::size_t l = 0; l + 1 < at.size(); ++l) {
    const auto b = items.begin() + at[l], e = items.begin() + at[l + 1];
    std::sort(b, e, [](const Item& x, const Item& y) { return x.key < y.key; });
    for (auto it = e; it != b && it - 1 != b; --it) keep((it - 2)->best, (it - 1)->best);
  }
}

Entry FragmentDominance::query(Index i, Index j, const RectFn& rect) const {
  Entry best = kNoEntry;
  if (i >= rows_ || j >= cols_) return best;
  if (auto p = dom_.query(j, i)) keep(best, frag_max_[*p]);
  auto first_at_least = [](auto b, auto e, Index key) {
    return std::partition_point(b, e, [key](const Item& x) { return x.key < key; });
  };
  {
    const auto b = row_items_.begin() + row_at_[static_cast<std::size_t>(i)];
    const auto e = row_items_.begin() + row_at_[static_cast<std::size_t>(i) + 1];
    const auto it = first_at_least(b, e, j);
    if (it != e) keep(best, it->best);
    if (it != b) {
      const Fragment& f = frags_[static_cast<std::size_t>((it - 1)->frag)];
      if (f.c1 >= j) keep(best, rect(i, f.r1, j, f.c1));
    }
  }
  {
    const auto b = col_items_.begin() + col_at_[static_cast<std::size_t>(j)];
    const auto e = col_items_.begin() + col_at_[static_cast<std::size_t>(j) + 1];
    const auto it = first_at_least(b, e, i);
    if (it != e) keep(best, it->best);
  }
  return best;
}

// Block boundaries of one recursion level plus cell maxima of the filled matrix.
struct Grid {
  std::vector<Index> row_starts, col_starts;  // upper-left frame, ascending
  CellMaxima cells;                            // matrix orientation
  Index rows = 0, cols = 0;

  Index row_end(Index k) const {
    return (static_cast<std::size_t>(k) + 1 < row_starts.size() ? row_starts[static_cast<std::size_t>(k) + 1] : rows) - 1;
  }
  Index col_end(Index k) const {
    return (static_cast<std::size_t>(k) + 1 < col_starts.size() ? col_starts[static_cast<std::size_t>(k) + 1] : cols) - 1;
  }
  static Index block_of(const std::vector<Index>& starts, Index x) {
    return static_cast<Index>(std::upper_bound(starts.begin(), starts.end(), x) - starts.begin()) - 1;
  }
};

}  // namespace

class StaircaseIndex::Impl {
 public:
  Impl(const MatrixOracle& m, const PartialShape& shape, Variant variant, std::optional<ValueRange> range);

  std::optional<Entry> max(Index i0, Index i1, Index j0, Index j1) const;
  std::size_t words() const noexcept;

  Index m_ = 0, n_ = 0;
  StaircaseKind kind_ = StaircaseKind::UpperLeft;
  Variant variant_ = Variant::Basic;

 private:
  class Region;

  Value value(Index i, Index j) const { return filled_(mirror_.row(i), mirror_.col(j)); }
  Entry to_frame(const Entry& e) const { return {mirror_.row(e.row), mirror_.col(e.col), e.value}; }
  Entry rect(Index i0, Index i1, Index j0, Index j1) const {
    Index a0 = mirror_.row(i0), a1 = mirror_.row(i1), b0 = mirror_.col(j0), b1 = mirror_.col(j1);
    if (a0 > a1) std::swap(a0, a1);
    if (b0 > b1) std::swap(b0, b1);
    return to_frame(full_.max(a0, a1, b0, b1));
  }
  Index last(Index i) const { return t_[static_cast<std::size_t>(i)]; }
  Entry dominance(Index i, Index j) const;
  void build_grids(const std::vector<Index>& sides);

  Mirror mirror_;
  std::vector<Index> t_;           // upper-left frame
  std::vector<Index> first_below_;  // first row whose t is below column j
  MatrixOracle filled_;
  Value shift_ = 0;
  SubmatrixIndex full_;
  FragmentDominance basic_;
  std::vector<Grid> grids_;
  std::shared_ptr<const Region> top_;
};

// One staircase region [r0, r1] x [c0, c1] at a recursion level: row i is defined on
// [c0, min(c1, t_i)]. Fully defined cells form a smaller staircase handled by fragment
// dominance; partially defined cells are kept in one list ordered by (row block asc,
// column block desc), along which both block coordinates are monotone.
class StaircaseIndex::Impl::Region {
 public:
  Region(const Impl& s, std::size_t level, Index r0, Index r1, Index c0, Index c1);
  Entry dominance(const Impl& s, Index i, Index j) const;
  std::size_t words() const noexcept;

 private:
  struct Cell {
    std::int32_t a, b;
  };
  const Grid& grid(const Impl& s) const { return s.grids_[level_]; }
  Index rf(const Impl& s, Index a) const { return grid(s).row_starts[static_cast<std::size_t>(base_r_ + a)]; }
  Index rl(const Impl& s, Index a) const { return grid(s).row_end(base_r_ + a); }
  Index cf(const Impl& s, Index b) const { return grid(s).col_starts[static_cast<std::size_t>(base_c_ + b)]; }
  Index cl(const Impl& s, Index b) const { return grid(s).col_end(base_c_ + b); }
  Index limit(const Impl& s, Index i) const { return std::min(c1_, s.last(i)); }
  Entry inside(const Impl& s, std::size_t cell, Index i, Index j) const;

  std::size_t level_ = 0;
  Index r0_ = 0, r1_ = 0, c0_ = 0, c1_ = 0;
  Index base_r_ = 0, base_c_ = 0, na_ = 0, nb_ = 0;
  std::vector<std::int32_t> full_last_;     // per row block: last fully defined column block
  std::vector<std::int32_t> touch_last_;    // per row block: last column block touching the region
  std::vector<std::int32_t> last_full_row_;  // per column block: last row block fully defining it
  FragmentDominance contracted_;
  std::vector<Cell> cells_;
  std::vector<std::int32_t> row_first_;  // per row block, first cell in the list
  std::vector<std::int32_t> col_at_, col_cells_;
  PredecessorSet by_row_, by_col_;
  std::vector<Entry> cell_max_;
  RangeMaxIndex cell_rmq_;
  std::vector<std::int32_t> right_at_, down_at_;
  std::vector<Entry> right_from_, down_from_;
  std::vector<Region> children_;
};

StaircaseIndex::Impl::Region::Region(const Impl& s, std::size_t level, Index r0, Index r1, Index c0, Index c1)
    : level_(level), r0_(r0), r1_(r1), c0_(c0), c1_(c1) {
  const Grid& g = grid(s);
  base_r_ = Grid::block_of(g.row_starts, r0);
  base_c_ = Grid::block_of(g.col_starts, c0);
  na_ = Grid::block_of(g.row_starts, r1) - base_r_ + 1;
  nb_ = Grid::block_of(g.col_starts, c1) - base_c_ + 1;

  auto block_col = [&](Index x) { return Grid::block_of(g.col_starts, x) - base_c_; };
  full_last_.resize(static_cast<std::size_t>(na_));
  touch_last_.resize(static_cast<std::size_t>(na_));
  row_first_.resize(static_cast<std::size_t>(na_) + 1);
  for (Index a = 0; a < na_; ++a) {
    const Index lo = limit(s, rl(s, a)), hi = limit(s, rf(s, a));
    Index full = -1, touch = -1;
    if (lo >= c0_) {
      const Index b = block_col(lo);
      full = cl(s, b) == lo ? b : b - 1;
    }
    if (hi >= c0_) touch = block_col(hi);
    full_last_[static_cast<std::size_t>(a)] = static_cast<std::int32_t>(full);
    touch_last_[static_cast<std::size_t>(a)] = static_cast<std::int32_t>(touch);
    row_first_[static_cast<std::size_t>(a)] = static_cast<std::int32_t>(cells_.size());
    for (Index b = touch; b > full; --b) cells_.push_back({static_cast<std::int32_t>(a), static_cast<std::int32_t>(b)});
  }
  row_first_.back() = static_cast<std::int32_t>(cells_.size());

  last_full_row_.assign(static_cast<std::size_t>(nb_), -1);
  for (Index a = 0; a < na_; ++a)
    for (Index b = 0; b <= full_last_[static_cast<std::size_t>(a)]; ++b)
      last_full_row_[static_cast<std::size_t>(b)] = static_cast<std::int32_t>(a);
  col_at_.assign(static_cast<std::size_t>(nb_) + 1, 0);
  for (const Cell& c : cells_) ++col_at_[static_cast<std::size_t>(c.b) + 1];
  for (std::size_t k = 1; k < col_at_.size(); ++k) col_at_[k] += col_at_[k - 1];
  col_cells_.resize(cells_.size());
  {
    auto fill = col_at_;
    for (std::size_t p = 0; p < cells_.size(); ++p)
      col_cells_[static_cast<std::size_t>(fill[static_cast<std::size_t>(cells_[p].b)]++)] = static_cast<std::int32_t>(p);
  }
  std::vector<std::uint64_t> k1, k2;
  for (const Cell& c : cells_) {
    k1.push_back(static_cast<std::uint64_t>(c.a) * static_cast<std::uint64_t>(nb_ + 1) + static_cast<std::uint64_t>(nb_ - c.b));
    k2.push_back(static_cast<std::uint64_t>(nb_ - c.b) * static_cast<std::uint64_t>(na_ + 1) + static_cast<std::uint64_t>(c.a));
  }
  by_row_ = PredecessorSet(std::move(k1));
  by_col_ = PredecessorSet(std::move(k2));

  // Contracted staircase of fully defined cells.
  StairView v;
  v.rows = na_;
  v.cols = nb_;
  v.t.assign(full_last_.begin(), full_last_.end());
  v.row_flip = s.mirror_.row_flip;
  v.col_flip = s.mirror_.col_flip;
  v.entry = [&](Index a, Index b) {
    Index ga = base_r_ + a, gb = base_c_ + b;
    if (s.mirror_.row_flip) ga = static_cast<Index>(g.row_starts.size()) - 1 - ga;
    if (s.mirror_.col_flip) gb = static_cast<Index>(g.col_starts.size()) - 1 - gb;
    return s.to_frame(g.cells.cell_max(ga, gb));
  };
  contracted_ = FragmentDominance(v);

  // Partial cells: row and column maxima by scanning, then suffix tables.
  right_at_.assign(cells_.size() + 1, 0);
  down_at_.assign(cells_.size() + 1, 0);
  for (std::size_t p = 0; p < cells_.size(); ++p) {
    right_at_[p + 1] = right_at_[p] + static_cast<std::int32_t>(rl(s, cells_[p].a) - rf(s, cells_[p].a) + 1);
    down_at_[p + 1] = down_at_[p] + static_cast<std::int32_t>(cl(s, cells_[p].b) - cf(s, cells_[p].b) + 1);
  }
  right_from_.assign(static_cast<std::size_t>(right_at_.back()), kNoEntry);
  down_from_.assign(static_cast<std::size_t>(down_at_.back()), kNoEntry);
  cell_max_.assign(cells_.size(), kNoEntry);
  for (std::size_t p = 0; p < cells_.size(); ++p) {
    const Index a = cells_[p].a, b = cells_[p].b;
    const Index i0 = rf(s, a), i1 = rl(s, a), j0 = cf(s, b), j1 = cl(s, b);
    Entry* right = right_from_.data() + right_at_[p];
    Entry* down = down_from_.data() + down_at_[p];
    for (Index i = i0; i <= i1; ++i) {
      const Index stop = std::min(j1, limit(s, i));
      for (Index j = j0; j <= stop; ++j) {
        const Entry e{i, j, s.value(i, j)};
        keep(right[i - i0], e);
        keep(down[j - j0], e);
      }
    }
    for (Index r = i1 - i0; r > 0; --r) keep(right[r - 1], right[r]);
    for (Index c = j1 - j0; c > 0; --c) keep(down[c - 1], down[c]);
    cell_max_[p] = right[0];
    if (static_cast<std::int32_t>(p) > row_first_[static_cast<std::size_t>(a)]) {
      const Entry* prev = right_from_.data() + right_at_[p - 1];
      for (Index r = 0; r <= i1 - i0; ++r) keep(right[r], prev[r]);
    }
  }
  for (Index b = 0; b < nb_; ++b)
    for (auto k = col_at_[static_cast<std::size_t>(b) + 1] - 1; k > col_at_[static_cast<std::size_t>(b)]; --k) {
      const auto p = static_cast<std::size_t>(col_cells_[static_cast<std::size_t>(k) - 1]);
      const auto q = static_cast<std::size_t>(col_cells_[static_cast<std::size_t>(k)]);
      Entry* down = down_from_.data() + down_at_[p];
      const Entry* below = down_from_.data() + down_at_[q];
      for (Index c = 0; c < down_at_[p + 1] - down_at_[p]; ++c) keep(down[c], below[c]);
    }
  std::vector<Value> values;
  values.reserve(cell_max_.size());
  for (const Entry& e : cell_max_) values.push_back(e.value);
  if (!values.empty()) cell_rmq_ = RangeMaxIndex(std::move(values));

  if (level_ + 1 < s.grids_.size()) {
    children_.reserve(cells_.size());
    for (const Cell& c : cells_) children_.emplace_back(s, level_ + 1, rf(s, c.a), rl(s, c.a), cf(s, c.b), cl(s, c.b));
  }
}

Entry StaircaseIndex::Impl::Region::inside(const Impl& s, std::size_t cell, Index i, Index j) const {
  if (!children_.empty()) return children_[cell].dominance(s, i, j);
  Entry best = kNoEntry;
  const Index i1 = rl(s, cells_[cell].a), j1 = cl(s, cells_[cell].b);
  for (Index r = i; r <= i1; ++r) {
    const Index stop = std::min(j1, limit(s, r));
    for (Index c = j; c <= stop; ++c) keep(best, Entry{r, c, s.value(r, c)});
  }
  return best;
}

Entry StaircaseIndex::Impl::Region::dominance(const Impl& s, Index i, Index j) const {
  const Grid& g = grid(s);
  const Index A = Grid::block_of(g.row_starts, i) - base_r_, B = Grid::block_of(g.col_starts, j) - base_c_;
  const bool row_cut = i != rf(s, A), col_cut = j != cf(s, B);
  const Index Ap = row_cut ? A + 1 : A, Bp = col_cut ? B + 1 : B;
  Entry best = kNoEntry;

  if (Ap < na_ && Bp < nb_) {
    keep(best, contracted_.query(Ap, Bp, [&](Index a0, Index a1, Index b0, Index b1) {
      return s.rect(rf(s, a0), rl(s, a1), cf(s, b0), cl(s, b1));
    }));
    const auto lo = by_row_.succ_index(static_cast<std::uint64_t>(Ap) * static_cast<std::uint64_t>(nb_ + 1));
    const auto hi = by_col_.pred_index(static_cast<std::uint64_t>(nb_ - Bp) * static_cast<std::uint64_t>(na_ + 1) +
                                       static_cast<std::uint64_t>(na_));
    if (lo && hi && *lo <= *hi) keep(best, cell_max_[static_cast<std::size_t>(cell_rmq_.argmax(static_cast<Index>(*lo), static_cast<Index>(*hi)))]);
  }

  if (row_cut) {
    const Index full = full_last_[static_cast<std::size_t>(A)], touch = touch_last_[static_cast<std::size_t>(A)];
    if (full >= B) keep(best, s.rect(i, rl(s, A), j, cl(s, full)));
    const Index bu = std::max(B, full + 1);
    if (bu <= touch) {
      const auto first = static_cast<std::size_t>(row_first_[static_cast<std::size_t>(A)]);
      const std::size_t u = first + static_cast<std::size_t>(touch - bu);
      const Index r = i - rf(s, A);
      if (bu == B && col_cut) {
        keep(best, inside(s, u, i, j));
        if (u > first) keep(best, right_from_[static_cast<std::size_t>(right_at_[u - 1] + r)]);
      } else {
        keep(best, right_from_[static_cast<std::size_t>(right_at_[u] + r)]);
      }
    }
  }

  if (col_cut) {
    const Index astar = last_full_row_[static_cast<std::size_t>(B)];
    if (astar >= A) keep(best, s.rect(i, rl(s, astar), j, cl(s, B)));
    const Index av = std::max(A, astar + 1);
    const auto begin = col_at_[static_cast<std::size_t>(B)], end = col_at_[static_cast<std::size_t>(B) + 1];
    const Index k = begin + (av - astar - 1);
    if (k < end) {
      const auto v = static_cast<std::size_t>(col_cells_[static_cast<std::size_t>(k)]);
      const Index c = j - cf(s, B);
      if (av == A && row_cut) {
        keep(best, inside(s, v, i, j));
        if (k + 1 < end) {
          const auto w = static_cast<std::size_t>(col_cells_[static_cast<std::size_t>(k) + 1]);
          keep(best, down_from_[static_cast<std::size_t>(down_at_[w] + c)]);
        }
      } else {
        keep(best, down_from_[static_cast<std::size_t>(down_at_[v] + c)]);
      }
    }
  }
  return best;
}

std::size_t StaircaseIndex::Impl::Region::words() const noexcept {
  std::size_t w = 12 + half_words(full_last_) + half_words(touch_last_) + half_words(last_full_row_) +
                  contracted_.words() + half_words(cells_) + half_words(row_first_) + half_words(col_at_) +
                  half_words(col_cells_) + by_row_.words() + by_col_.words() + half_words(cell_max_) +
                  cell_rmq_.words() + half_words(right_at_) + half_words(down_at_) + half_words(right_from_) +
                  half_words(down_from_);
  for (const Region& c : children_) w += c.words();
  return w;
}

std::vector<Index> staircase_cell_sides(Index n) {
  auto side = [](Index x) { return std::max<Index>(2, x <= 1 ? 0 : static_cast<Index>(std::bit_width(static_cast<std::uint64_t>(x - 1)))); };
  const Index g1 = side(n), g2 = side(g1), g3 = side(g2);
  return {g1, g2, g3};
}

void StaircaseIndex::Impl::build_grids(const std::vector<Index>& sides) {
  std::vector<Index> rs{0}, cs{0};
  auto refine = [](const std::vector<Index>& coarse, Index len, Index side) {
    std::vector<Index> out;
    for (std::size_t k = 0; k < coarse.size(); ++k) {
      const Index end = k + 1 < coarse.size() ? coarse[k + 1] : len;
      for (Index x = coarse[k]; x < end; x += side) out.push_back(x);
    }
    return out;
  };
  auto matrix_order = [](const std::vector<Index>& starts, Index len, bool flip) {
    if (!flip) return starts;
    std::vector<Index> out;
    for (std::size_t k = starts.size(); k-- > 0;) {
      const Index end = k + 1 < starts.size() ? starts[k + 1] - 1 : len - 1;
      out.push_back(len - 1 - end);
    }
    return out;
  };
  for (Index side : sides) {
    rs = refine(rs, m_, side);
    cs = refine(cs, n_, side);
    Grid g;
    g.rows = m_;
    g.cols = n_;
    g.row_starts = rs;
    g.col_starts = cs;
    g.cells = CellMaxima(filled_, matrix_order(rs, m_, mirror_.row_flip), matrix_order(cs, n_, mirror_.col_flip));
    grids_.push_back(std::move(g));
  }
}

StaircaseIndex::Impl::Impl(const MatrixOracle& m, const PartialShape& shape, Variant variant,
                           std::optional<ValueRange> range)
    : m_(m.rows()), n_(m.cols()), variant_(variant) {
  if (m.rows() != shape.rows() || m.cols() != shape.cols()) throw std::invalid_argument("shape does not match matrix");
  kind_ = require_staircase(shape);
  mirror_ = mirror_of(kind_, m_, n_);
  t_ = canonical_lasts(shape, mirror_);
  first_below_.assign(static_cast<std::size_t>(n_) + 1, m_);
  for (Index j = 0, i = m_; j <= n_; ++j) {
    while (i > 0 && last(i - 1) < j) --i;
    first_below_[static_cast<std::size_t>(j)] = i;
  }
  FilledStaircase f = range ? fill_staircase(m, shape, *range) : fill_staircase(m, shape);
  filled_ = f.filled;
  shift_ = f.shift;
  full_ = variant == Variant::Basic ? SubmatrixIndex::build_basic(filled_) : SubmatrixIndex::build_linear(filled_);
  if (variant == Variant::Basic) {
    StairView v;
    v.rows = m_;
    v.cols = n_;
    v.t = t_;
    v.row_flip = mirror_.row_flip;
    v.col_flip = mirror_.col_flip;
    v.entry = [this](Index i, Index j) { return Entry{i, j, value(i, j)}; };
    basic_ = FragmentDominance(v);
  } else {
    build_grids(staircase_cell_sides(std::max(m_, n_)));
    top_ = std::make_shared<const Region>(*this, 0, 0, m_ - 1, 0, n_ - 1);
  }
}

Entry StaircaseIndex::Impl::dominance(Index i, Index j) const {
  if (variant_ == Variant::Basic) {
    return basic_.query(i, j, [this](Index a0, Index a1, Index b0, Index b1) { return rect(a0, a1, b0, b1); });
  }
  return top_->dominance(*this, i, j);
}

std::optional<Entry> StaircaseIndex::Impl::max(Index i0, Index i1, Index j0, Index j1) const {
  if (i0 < 0 || i0 > i1 || i1 >= m_ || j0 < 0 || j0 > j1 || j1 >= n_)
    throw std::out_of_range("rectangle outside the matrix");
  Index a0 = mirror_.row(i0), a1 = mirror_.row(i1), b0 = mirror_.col(j0), b1 = mirror_.col(j1);
  if (a0 > a1) std::swap(a0, a1);
  if (b0 > b1) std::swap(b0, b1);
  if (b0 > last(a0)) return std::nullopt;
  Entry best = kNoEntry;
  if (last(a1) >= b1) {
    best = rect(a0, a1, b0, b1);
  } else {
    if (last(a1) >= b0) keep(best, rect(a0, a1, b0, last(a1)));
    const Index jp = std::max(b0, last(a1) + 1);
    const Index ip = std::max(a0, first_below_[static_cast<std::size_t>(b1)]);
    if (ip > a0) keep(best, rect(a0, ip - 1, jp, b1));
    keep(best, dominance(ip, jp));
  }
  const Entry e = to_frame(best);
  return Entry{e.row, e.col, e.value - shift_};
}

std::size_t StaircaseIndex::Impl::words() const noexcept {
  std::size_t w = 8 + half_words(t_) + half_words(first_below_) + full_.words() + basic_.words();
  for (const Grid& g : grids_) w += half_words(g.row_starts) + half_words(g.col_starts) + g.cells.words();
  if (top_) w += top_->words();
  return w;
}

std::vector<Fragment> decompose_staircase(const std::vector<Index>& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < -1) throw std::invalid_argument("row end below -1");
    if (i > 0 && t[i] > t[i - 1]) throw std::invalid_argument("row ends must be non-increasing");
  }
  std::vector<Fragment> out;
  decompose(t, 0, static_cast<Index>(t.size()) - 1, 0, out);
  return out;
}

std::vector<Fragment> decompose_staircase(const PartialShape& shape) {
  shape.validate();
  for (Index i = 0; i < shape.rows(); ++i)
    if (shape.first(i) != 0 || (i > 0 && shape.last(i) > shape.last(i - 1)))
      throw std::invalid_argument("decomposition needs an upper-left staircase; mirror the shape first");
  return decompose_staircase(shape.lasts());
}

std::vector<Fragment> staircase_fragments(const PartialShape& shape) {
  const Mirror f = mirror_of(require_staircase(shape), shape.rows(), shape.cols());
  std::vector<Fragment> out = decompose_staircase(canonical_lasts(shape, f));
  for (Fragment& x : out) {
    Index r0 = f.row(x.r0), r1 = f.row(x.r1), c0 = f.col(x.c0), c1 = f.col(x.c1);
    x = {std::min(r0, r1), std::max(r0, r1), std::min(c0, c1), std::max(c0, c1)};
  }
  return out;
}

StaircaseIndex::StaircaseIndex(const MatrixOracle& m, const PartialShape& shape, Variant variant,
                               std::optional<ValueRange> range)
    : impl_(std::make_shared<const Impl>(m, shape, variant, range)) {}

Index StaircaseIndex::rows() const noexcept { return impl_ ? impl_->m_ : 0; }
Index StaircaseIndex::cols() const noexcept { return impl_ ? impl_->n_ : 0; }
StaircaseKind StaircaseIndex::kind() const noexcept { return impl_ ? impl_->kind_ : StaircaseKind::UpperLeft; }
StaircaseIndex::Variant StaircaseIndex::variant() const noexcept { return impl_ ? impl_->variant_ : Variant::Basic; }

std::optional<Entry> StaircaseIndex::max(Index i0, Index i1, Index j0, Index j1) const {
  if (!impl_) throw std::out_of_range("empty index");
  return impl_->max(i0, i1, j0, j1);
}

std::size_t StaircaseIndex::words() const noexcept { return impl_ ? impl_->words() : 0; }

}  // namespace monge
