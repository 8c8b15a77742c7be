#include "monge/breakpoint_tree.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace monge {

namespace {

// Pop/push insertion shared by the tree and the final-stack helper. `on_push` receives
// (column, row, parent stack depth) and returns nothing; `on_row` sees the stack after row i.
template <class Push, class AfterRow>
void insert_rows(const MatrixOracle& m, Index r0, Index r1, std::vector<std::pair<Index, Index>>& stack,
                 Push&& on_push, AfterRow&& after_row) {
  const Index cols = m.cols();
  for (Index i = r0; i <= r1; ++i) {
    while (!stack.empty()) {
      const auto [c, r] = stack.back();
      if (m(i, c) < m(r, c)) break;
      stack.pop_back();
    }
    if (stack.empty()) {
      on_push(Index{0}, i);
      stack.emplace_back(0, i);
    } else {
      const auto [ck, rk] = stack.back();
      if (m(i, cols - 1) >= m(rk, cols - 1)) {
        Index lo = ck, hi = cols - 1;  // predicate false at lo, true at hi
        while (hi - lo > 1) {
          const Index mid = lo + (hi - lo) / 2;
          (m(i, mid) >= m(rk, mid) ? hi : lo) = mid;
        }
        on_push(hi, i);
        stack.emplace_back(hi, i);
      }
    }
    after_row(i);
  }
}

}  // namespace

std::vector<std::pair<Index, Index>> slice_breakpoints(const MatrixOracle& m, Index r0, Index r1) {
  std::vector<std::pair<Index, Index>> stack;
  insert_rows(m, r0, r1, stack, [](Index, Index) {}, [](Index) {});
  return stack;
}

BreakpointTree BreakpointTree::build(const MatrixOracle& m, const SpanMax* span) {
  Builder b;
  b.add(m, span);
  return b.finish();
}

std::int32_t BreakpointTree::Builder::add(const MatrixOracle& m, const SpanMax* span) {
  const Index rows = m.rows();
  if (rows + static_cast<Index>(weight_.size()) + 1 >= std::numeric_limits<Node>::max() ||
      m.cols() >= std::numeric_limits<std::int32_t>::max())
    throw std::length_error("too many rows for a breakpoint tree");
  valued_ = valued_ || span != nullptr;

  // Creation order first: parents always precede children. Local id 0 is the root.
  std::vector<std::int32_t> weight{-1}, row{-1}, value_col{-1};
  std::vector<Node> parent{-1}, top(static_cast<std::size_t>(rows));
  std::vector<Value> value{kNoValue};
  std::vector<Node> ids;  // node id of each stack entry
  std::vector<std::pair<Index, Index>> stack;
  insert_rows(
      m, 0, rows - 1, stack,
      [&](Index col, Index i) {
        Value v = kNoValue;
        Index vcol = -1;
        if (span && !stack.empty()) std::tie(v, vcol) = (*span)(stack.back().second, stack.back().first, col - 1);
        ids.resize(stack.size());
        parent.push_back(stack.empty() ? 0 : ids.back());
        ids.push_back(static_cast<Node>(weight.size()));
        weight.push_back(static_cast<std::int32_t>(col));
        row.push_back(static_cast<std::int32_t>(i));
        value.push_back(v);
        value_col.push_back(static_cast<std::int32_t>(vcol));
      },
      [&](Index i) {
        ids.resize(stack.size());
        top[static_cast<std::size_t>(i)] = ids.back();
      });

  // Heavy-path relabelling.
  const std::size_t count = weight.size();
  std::vector<std::int32_t> size(count, 1);
  for (std::size_t v = count; v-- > 1;) size[static_cast<std::size_t>(parent[v])] += size[v];
  std::vector<Node> heavy(count, -1);
  for (std::size_t v = 1; v < count; ++v) {
    auto& h = heavy[static_cast<std::size_t>(parent[v])];
    if (h < 0 || size[v] > size[static_cast<std::size_t>(h)]) h = static_cast<Node>(v);
  }
  std::vector<std::int32_t> child_start(count + 1, 0);
  for (std::size_t v = 1; v < count; ++v) ++child_start[static_cast<std::size_t>(parent[v]) + 1];
  for (std::size_t v = 0; v < count; ++v) child_start[v + 1] += child_start[v];
  std::vector<Node> children(count - 1);
  {
    auto fill = child_start;
    for (std::size_t v = 1; v < count; ++v)
      children[static_cast<std::size_t>(fill[static_cast<std::size_t>(parent[v])]++)] = static_cast<Node>(v);
  }
  const Node base = static_cast<Node>(weight_.size());
  std::vector<Node> pos(count), chain_head(count);
  Node next = base;
  std::vector<Node> pending{0};
  while (!pending.empty()) {
    const Node start = pending.back();
    pending.pop_back();
    for (Node v = start; v >= 0; v = heavy[static_cast<std::size_t>(v)]) {
      pos[static_cast<std::size_t>(v)] = next++;
      chain_head[static_cast<std::size_t>(v)] = start;
      for (auto c = child_start[static_cast<std::size_t>(v)]; c < child_start[static_cast<std::size_t>(v) + 1]; ++c) {
        const Node ch = children[static_cast<std::size_t>(c)];
        if (ch != heavy[static_cast<std::size_t>(v)]) pending.push_back(ch);
      }
    }
  }

  const std::size_t grown = weight_.size() + count;
  weight_.resize(grown);
  row_.resize(grown);
  parent_.resize(grown);
  head_.resize(grown);
  value_.resize(grown);
  value_col_.resize(grown);
  for (std::size_t v = 0; v < count; ++v) {
    const auto p = static_cast<std::size_t>(pos[v]);
    weight_[p] = weight[v];
    row_[p] = row[v];
    parent_[p] = parent[v] < 0 ? -1 : pos[static_cast<std::size_t>(parent[v])];
    head_[p] = pos[static_cast<std::size_t>(chain_head[v])];
    value_[p] = value[v];
    value_col_[p] = value_col[v];
  }
  if (top_at_.empty()) top_at_.push_back(0);
  for (Node t : top) top_.push_back(pos[static_cast<std::size_t>(t)]);
  top_at_.push_back(static_cast<std::int64_t>(top_.size()));
  return static_cast<std::int32_t>(top_at_.size() - 2);
}

BreakpointTree BreakpointTree::Builder::finish() {
  BreakpointTree t;
  t.weight_ = std::move(weight_);
  t.row_ = std::move(row_);
  t.parent_ = std::move(parent_);
  t.head_ = std::move(head_);
  t.top_ = std::move(top_);
  if (top_at_.empty()) top_at_.push_back(0);
  t.top_at_ = std::move(top_at_);
  if (valued_) {
    t.value_col_ = std::move(value_col_);
    t.values_ = RangeMaxIndex(std::move(value_));
  }
  *this = Builder();
  return t;
}

std::pair<BreakpointTree::Node, BreakpointTree::Node> BreakpointTree::weighted_ancestor_with_child(
    Node v, Index j) const {
  Node child = -1;
  Node p = v;
  while (!is_root(p)) {
    const Node h = head(p);
    const Node lo = is_root(h) ? h + 1 : h;
    if (weight_[static_cast<std::size_t>(lo)] <= j) {
      // Weights increase along the run [lo, p].
      const auto first = weight_.begin() + lo, last = weight_.begin() + p + 1;
      const Node q = static_cast<Node>(std::upper_bound(first, last, j) - weight_.begin()) - 1;
      return {q, q < p ? q + 1 : child};
    }
    child = lo;
    p = parent(lo);
  }
  return {p, child};
}

std::pair<BreakpointTree::Node, Value> BreakpointTree::path_max(Node ancestor, Node v) const {
  if (!has_values()) throw std::logic_error("breakpoint tree was built without values");
  if (ancestor == v || v < 0 || v >= node_count() || ancestor < 0 || is_root(v))
    throw std::invalid_argument("path_max needs a proper ancestor");
  Node best = -1;
  auto take = [&](Node lo, Node hi) {
    if (lo > hi) return;
    const Node c = static_cast<Node>(values_.argmax(lo, hi));
    if (best < 0 || values_.value(c) > values_.value(best)) best = c;
  };
  Node p = v;
  while (true) {
    const Node h = head(p);
    if (h <= ancestor && ancestor < p) {
      take(ancestor + 1, p);
      break;
    }
    if (is_root(h)) throw std::invalid_argument("path_max needs a proper ancestor");
    take(h, p);
    p = parent(h);
    if (p == ancestor) break;
  }
  return {best, values_.value(best)};
}

std::vector<BreakpointTree::Node> BreakpointTree::ancestors(Node v) const {
  std::vector<Node> out;
  for (Node p = v; !is_root(p); p = parent(p)) out.push_back(p);
  std::reverse(out.begin(), out.end());
  return out;
}

std::size_t BreakpointTree::words() const noexcept {
  const std::size_t n = parent_.size();
  return (4 * n + top_.size() + value_col_.size() + 1) / 2 + top_at_.size() + values_.words();
}

}  // namespace monge
