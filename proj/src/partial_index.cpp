#include "monge/partial_index.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "monge/ordered_index.hpp"
#include "monge/smawk.hpp"

namespace monge {

Index StaircasePiece::c0() const { return *std::min_element(first.begin(), first.end()); }
Index StaircasePiece::c1() const { return *std::max_element(last.begin(), last.end()); }

PartialShape StaircasePiece::local_shape() const {
  const Index lo = c0(), hi = c1();
  std::vector<Index> s, t;
  for (std::size_t k = 0; k < first.size(); ++k) {
    s.push_back(first[k] - lo);
    t.push_back(last[k] - lo);
  }
  return PartialShape(r1 - r0 + 1, hi - lo + 1, std::move(s), std::move(t));
}

namespace {

// Rows of one slice visited in an order along which both boundaries are non-decreasing.
struct SliceWalk {
  Index p = 0, q = 0;
  bool flipped = false;
  Index size() const { return q - p + 1; }
  Index row(Index k) const { return flipped ? q - k : p + k; }
};

StaircasePiece make_piece(const SliceWalk& w, Index k0, Index k1, StaircasePiece::Group group,
                          const std::function<std::pair<Index, Index>(Index)>& span) {
  StaircasePiece piece;
  const Index a = w.row(k0), b = w.row(k1);
  piece.r0 = std::min(a, b);
  piece.r1 = std::max(a, b);
  piece.group = group;
  for (Index i = piece.r0; i <= piece.r1; ++i) {
    const auto [lo, hi] = span(i);
    piece.first.push_back(lo);
    piece.last.push_back(hi);
  }
  return piece;
}

}  // namespace

std::vector<StaircasePiece> partition_staircases(const PartialShape& shape) {
  shape.validate();
  const Index m = shape.rows();
  auto s = [&](Index i) { return shape.first(i); };
  auto t = [&](Index i) { return shape.last(i); };
  using Group = StaircasePiece::Group;
  std::vector<StaircasePiece> out;
  if (classify_staircase(shape)) {
    out.push_back(make_piece({0, m - 1, false}, 0, m - 1, Group::Outer, [&](Index i) { return std::pair{s(i), t(i)}; }));
    return out;
  }

  Index sa = m - 1, ta = m - 1;
  while (sa > 0 && s(sa - 1) <= s(sa)) --sa;
  while (ta > 0 && t(ta - 1) >= t(ta)) --ta;
  const Index lo = std::min(sa, ta), hi = std::max(sa, ta);
  const Index bottom = std::max(hi, lo + 1);

  // Top slice widens: split at the first row's last column.
  {
    const Index K = t(0);
    const SliceWalk w{0, lo, false};
    out.push_back(make_piece(w, 0, lo, Group::Outer, [&](Index i) { return std::pair{s(i), K}; }));
    Index q = lo + 1;
    while (q > 0 && t(q - 1) > K) --q;
    if (q <= lo) out.push_back(make_piece(w, q, lo, Group::Outer, [&](Index i) { return std::pair{K + 1, t(i)}; }));
  }
  // Bottom slice narrows: split at the last row's last column.
  if (bottom <= m - 1) {
    const Index K = t(m - 1);
    const SliceWalk w{bottom, m - 1, false};
    out.push_back(make_piece(w, 0, w.size() - 1, Group::Outer, [&](Index i) { return std::pair{s(i), K}; }));
    Index q = bottom - 1;
    while (q + 1 <= m - 1 && t(q + 1) > K) ++q;
    if (q >= bottom)
      out.push_back(make_piece(w, 0, q - bottom, Group::Outer, [&](Index i) { return std::pair{K + 1, t(i)}; }));
  }
  // Middle slice: alternate between a left piece ending at a fixed column and a right
  // piece holding what sticks out past it.
  if (lo + 1 <= bottom - 1) {
    const SliceWalk w{lo + 1, bottom - 1, sa > ta};
    Index k = 0, end = t(w.row(0));
    while (k < w.size()) {
      Index k2 = k;
      while (k2 < w.size() && s(w.row(k2)) <= end) ++k2;
      const Index fixed = end;
      out.push_back(make_piece(w, k, k2 - 1, Group::Left, [&](Index i) { return std::pair{s(i), fixed}; }));
      Index kb = k2;
      while (kb > k && t(w.row(kb - 1)) > fixed) --kb;
      if (kb < k2)
        out.push_back(make_piece(w, kb, k2 - 1, Group::Right, [&](Index i) { return std::pair{fixed + 1, t(i)}; }));
      const Index next = t(w.row(k2 - 1));
      k = k2;
      if (k < w.size()) end = s(w.row(k)) <= next ? next : t(w.row(k));
    }
  }
  return out;
}

class PartialIndex::Impl {
 public:
  Impl(const MatrixOracle& m, const PartialShape& shape, StaircaseIndex::Variant variant);
  std::optional<Entry> max(Index i0, Index i1, Index j0, Index j1) const;
  std::size_t words() const noexcept;

  Index m_ = 0, n_ = 0;
  std::vector<StaircasePiece> pieces_;
  std::vector<Entry> maxima_;

 private:
  // A Left or Right collection: pieces sorted so rows (in walk order) and columns increase.
  struct Collection {
    SliceWalk walk;
    std::vector<std::int32_t> piece;
    std::vector<Index> k1, c1;
    PredecessorSet k_start, k_end, c_start, c_end;
    RangeMaxIndex best;
  };

  void query_piece(std::size_t p, Index i0, Index i1, Index j0, Index j1, std::optional<Entry>& best) const;
  void query_collection(const Collection& c, Index i0, Index i1, Index j0, Index j1, std::optional<Entry>& best) const;

  std::vector<Index> c0_, c1_;
  std::vector<StaircaseIndex> indexes_;
  std::vector<std::int32_t> outer_;
  std::vector<Collection> collections_;
};

PartialIndex::Impl::Impl(const MatrixOracle& m, const PartialShape& shape, StaircaseIndex::Variant variant)
    : m_(m.rows()), n_(m.cols()) {
  if (m.rows() != shape.rows() || m.cols() != shape.cols()) throw std::invalid_argument("shape does not match matrix");
  pieces_ = partition_staircases(shape);
  for (std::size_t p = 0; p < pieces_.size(); ++p) {
    const StaircasePiece& piece = pieces_[p];
    const Index lo = piece.c0(), hi = piece.c1();
    c0_.push_back(lo);
    c1_.push_back(hi);
    indexes_.emplace_back(submatrix(m, piece.r0, lo, piece.r1 - piece.r0 + 1, hi - lo + 1), piece.local_shape(), variant);
    const Entry e = *indexes_.back().max(0, piece.r1 - piece.r0, 0, hi - lo);
    maxima_.push_back({e.row + piece.r0, e.col + lo, e.value});
    if (piece.group == StaircasePiece::Group::Outer) outer_.push_back(static_cast<std::int32_t>(p));
  }

  for (auto group : {StaircasePiece::Group::Left, StaircasePiece::Group::Right}) {
    Collection c;
    std::vector<std::uint64_t> ks, ke, cs, ce;
    std::vector<Value> values;
    for (std::size_t p = 0; p < pieces_.size(); ++p) {
      if (pieces_[p].group != group) continue;
      c.piece.push_back(static_cast<std::int32_t>(p));
      values.push_back(maxima_[p].value);
    }
    if (c.piece.empty()) continue;
    // Pieces come out in walk order; any row numbering monotone along it will do.
    Index p_row = m_, q_row = -1;
    for (const auto& x : c.piece) {
      p_row = std::min(p_row, pieces_[static_cast<std::size_t>(x)].r0);
      q_row = std::max(q_row, pieces_[static_cast<std::size_t>(x)].r1);
    }
    const auto& front = pieces_[static_cast<std::size_t>(c.piece.front())];
    const auto& back = pieces_[static_cast<std::size_t>(c.piece.back())];
    c.walk = {p_row, q_row, c.piece.size() > 1 ? front.r0 > back.r0 : false};
    for (const auto& x : c.piece) {
      const auto& piece = pieces_[static_cast<std::size_t>(x)];
      const Index a = c.walk.flipped ? q_row - piece.r1 : piece.r0 - p_row;
      const Index b = c.walk.flipped ? q_row - piece.r0 : piece.r1 - p_row;
      ks.push_back(static_cast<std::uint64_t>(a));
      ke.push_back(static_cast<std::uint64_t>(b));
      c.k1.push_back(b);
      cs.push_back(static_cast<std::uint64_t>(c0_[static_cast<std::size_t>(x)]));
      ce.push_back(static_cast<std::uint64_t>(c1_[static_cast<std::size_t>(x)]));
      c.c1.push_back(c1_[static_cast<std::size_t>(x)]);
    }
    c.k_start = PredecessorSet(std::move(ks));
    c.k_end = PredecessorSet(std::move(ke));
    c.c_start = PredecessorSet(std::move(cs));
    c.c_end = PredecessorSet(std::move(ce));
    c.best = RangeMaxIndex(std::move(values));
    collections_.push_back(std::move(c));
  }
}

void PartialIndex::Impl::query_piece(std::size_t p, Index i0, Index i1, Index j0, Index j1,
                                     std::optional<Entry>& best) const {
  const StaircasePiece& piece = pieces_[p];
  const Index a0 = std::max(i0, piece.r0), a1 = std::min(i1, piece.r1);
  const Index b0 = std::max(j0, c0_[p]), b1 = std::min(j1, c1_[p]);
  if (a0 > a1 || b0 > b1) return;
  if (auto e = indexes_[p].max(a0 - piece.r0, a1 - piece.r0, b0 - c0_[p], b1 - c0_[p]))
    keep_max(best, Entry{e->row + piece.r0, e->col + c0_[p], e->value});
}

void PartialIndex::Impl::query_collection(const Collection& c, Index i0, Index i1, Index j0, Index j1,
                                          std::optional<Entry>& best) const {
  const Index r0 = std::max(i0, c.walk.p), r1 = std::min(i1, c.walk.q);
  if (r0 > r1) return;
  const Index ka = c.walk.flipped ? c.walk.q - r1 : r0 - c.walk.p;
  const Index kb = c.walk.flipped ? c.walk.q - r0 : r1 - c.walk.p;
  auto piece_at = [&](const PredecessorSet& starts, const std::vector<Index>& ends, Index x) {
    if (auto k = starts.pred_index(static_cast<std::uint64_t>(x)); k && ends[*k] >= x)
      query_piece(static_cast<std::size_t>(c.piece[*k]), i0, i1, j0, j1, best);
  };
  piece_at(c.k_start, c.k1, ka);
  piece_at(c.k_start, c.k1, kb);
  piece_at(c.c_start, c.c1, j0);
  piece_at(c.c_start, c.c1, j1);
  const auto lo_k = c.k_start.succ_index(static_cast<std::uint64_t>(ka));
  const auto lo_c = c.c_start.succ_index(static_cast<std::uint64_t>(j0));
  const auto hi_k = c.k_end.pred_index(static_cast<std::uint64_t>(kb));
  const auto hi_c = c.c_end.pred_index(static_cast<std::uint64_t>(j1));
  if (!lo_k || !lo_c || !hi_k || !hi_c) return;
  const std::size_t lo = std::max(*lo_k, *lo_c), hi = std::min(*hi_k, *hi_c);
  if (lo > hi) return;
  const Index at = c.best.argmax(static_cast<Index>(lo), static_cast<Index>(hi));
  keep_max(best, maxima_[static_cast<std::size_t>(c.piece[static_cast<std::size_t>(at)])]);
}

std::optional<Entry> PartialIndex::Impl::max(Index i0, Index i1, Index j0, Index j1) const {
  if (i0 < 0 || i0 > i1 || i1 >= m_ || j0 < 0 || j0 > j1 || j1 >= n_)
    throw std::out_of_range("rectangle outside the matrix");
  std::optional<Entry> best;
  for (auto p : outer_) query_piece(static_cast<std::size_t>(p), i0, i1, j0, j1, best);
  for (const Collection& c : collections_) query_collection(c, i0, i1, j0, j1, best);
  return best;
}

std::size_t PartialIndex::Impl::words() const noexcept {
  std::size_t w = 4 + 2 * pieces_.size() + 3 * maxima_.size() + outer_.size() / 2;
  for (const auto& x : indexes_) w += x.words();
  for (const auto& c : collections_)
    w += c.piece.size() / 2 + c.k1.size() + c.c1.size() + c.k_start.words() + c.k_end.words() + c.c_start.words() +
         c.c_end.words() + c.best.words();
  return w;
}

PartialIndex::PartialIndex(const MatrixOracle& m, const PartialShape& shape, StaircaseIndex::Variant variant)
    : impl_(std::make_shared<const Impl>(m, shape, variant)) {}

Index PartialIndex::rows() const noexcept { return impl_ ? impl_->m_ : 0; }
Index PartialIndex::cols() const noexcept { return impl_ ? impl_->n_ : 0; }

const std::vector<StaircasePiece>& PartialIndex::pieces() const noexcept {
  static const std::vector<StaircasePiece> none;
  return impl_ ? impl_->pieces_ : none;
}

const std::vector<Entry>& PartialIndex::piece_maxima() const noexcept {
  static const std::vector<Entry> none;
  return impl_ ? impl_->maxima_ : none;
}

std::optional<Entry> PartialIndex::max(Index i0, Index i1, Index j0, Index j1) const {
  if (!impl_) throw std::out_of_range("empty index");
  return impl_->max(i0, i1, j0, j1);
}

std::size_t PartialIndex::words() const noexcept { return impl_ ? impl_->words() : 0; }

std::vector<Index> partial_column_maxima(const MatrixOracle& m, const PartialShape& shape) {
  if (m.rows() != shape.rows() || m.cols() != shape.cols()) throw std::invalid_argument("shape does not match matrix");
  std::vector<Index> row(static_cast<std::size_t>(m.cols()), -1);
  std::vector<Value> best(row.size());
  for (const StaircasePiece& piece : partition_staircases(shape)) {
    const Index lo = piece.c0();
    for (const Fragment& f : staircase_fragments(piece.local_shape())) {
      const Index r0 = piece.r0 + f.r0, c0 = lo + f.c0;
      const auto r = column_maxima_with(f.r1 - f.r0 + 1, f.c1 - f.c0 + 1, [&](Index i, Index j) { return m(r0 + i, c0 + j); });
      for (std::size_t q = 0; q < r.size(); ++q) {
        const Index i = r0 + r[q], j = c0 + static_cast<Index>(q);
        const Value v = m(i, j);
        auto& cur = row[static_cast<std::size_t>(j)];
        if (cur < 0 || v > best[static_cast<std::size_t>(j)] || (v == best[static_cast<std::size_t>(j)] && i > cur)) {
          cur = i;
          best[static_cast<std::size_t>(j)] = v;
        }
      }
    }
  }
  return row;
}

}  // namespace monge
