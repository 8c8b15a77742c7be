#pragma once

#include <optional>
#include <type_traits>
#include <vector>

#include "monge/matrix.hpp"

namespace monge {

namespace detail {

// SMAWK with the columns of M as queries and its rows as candidates. Row j beats row
// i < j in column c iff M[j,c] >= M[i,c], and by the Monge condition that stays true for
// every later column, so equal values resolve to the larger row.
template <class Entry>
class Smawk {
 public:
  explicit Smawk(Entry& entry) : entry_(entry) {}

  void solve(const std::vector<Index>& queries, const std::vector<Index>& cands,
             std::vector<Index>& answer) {
    if (queries.empty()) return;
    const std::vector<Index>* use = &cands;
    std::vector<Index> reduced;
    if (cands.size() > queries.size()) {
      reduce(queries, cands, reduced);
      use = &reduced;
    }
    std::vector<Index> odd;
    odd.reserve(queries.size() / 2);
    for (std::size_t q = 1; q < queries.size(); q += 2) odd.push_back(queries[q]);
    solve(odd, *use, answer);

    std::size_t pos = 0;
    for (std::size_t q = 0; q < queries.size(); q += 2) {
      const Index col = queries[q];
      const Index stop = q + 1 < queries.size() ? answer[static_cast<std::size_t>(queries[q + 1])]
                                                : use->back();
      Index best = (*use)[pos];
      Value best_v = entry_(best, col);
      while ((*use)[pos] != stop) {
        ++pos;
        const Value v = entry_((*use)[pos], col);
        if (v >= best_v) {
          best_v = v;
          best = (*use)[pos];
        }
      }
      answer[static_cast<std::size_t>(col)] = best;
    }
  }

 private:
  void reduce(const std::vector<Index>& queries, const std::vector<Index>& cands,
              std::vector<Index>& out) {
    // stack_value[t] caches M[out[t], queries[t]].
    std::vector<Value> stack_value;
    out.clear();
    for (Index c : cands) {
      Value v = 0;
      std::size_t probed_at = queries.size();
      while (!out.empty()) {
        const std::size_t t = out.size() - 1;
        v = entry_(c, queries[t]);
        probed_at = t;
        if (v < stack_value[t]) break;
        out.pop_back();
        stack_value.pop_back();
      }
      if (out.size() < queries.size()) {
        const std::size_t t = out.size();
        if (probed_at != t) v = entry_(c, queries[t]);
        out.push_back(c);
        stack_value.push_back(v);
      }
    }
  }

  Entry& entry_;
};

}  // namespace detail

/// Row of the maximum in each column of a Monge matrix given by an entry functor;
/// ties go to the larger row. The result is non-decreasing.
template <class Entry>
std::vector<Index> column_maxima_with(Index rows, Index cols, Entry&& entry) {
  std::vector<Index> answer(static_cast<std::size_t>(cols), 0);
  if (rows <= 0 || cols <= 0) return answer;
  std::vector<Index> queries(static_cast<std::size_t>(cols)), cands(static_cast<std::size_t>(rows));
  for (Index c = 0; c < cols; ++c) queries[static_cast<std::size_t>(c)] = c;
  for (Index r = 0; r < rows; ++r) cands[static_cast<std::size_t>(r)] = r;
  detail::Smawk<std::remove_reference_t<Entry>> s(entry);
  s.solve(queries, cands, answer);
  return answer;
}

std::vector<Index> column_maxima(const MatrixOracle& m);

/// A column where the column-maximum row strictly increases; column 0 always qualifies.
/// For every breakpoint but the first, span_max/span_col give the maximum of the previous
/// breakpoint's row over [previous col, col), leftmost on ties.
struct Breakpoint {
  Index col = 0;
  Index row = 0;
  std::optional<Value> span_max;
  Index span_col = -1;

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

std::vector<Breakpoint> breakpoints(const MatrixOracle& m);
/// Breakpoints read off an existing column-maxima vector.
std::vector<Breakpoint> breakpoints(const MatrixOracle& m, const std::vector<Index>& r);

/// Column maxima among defined entries of a partial Monge matrix (larger row on ties).
/// Runs SMAWK on each fragment of a staircase decomposition and merges.
std::vector<Index> partial_column_maxima(const MatrixOracle& m, const PartialShape& shape);

}  // namespace monge
