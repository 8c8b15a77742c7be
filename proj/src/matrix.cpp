#include "monge/matrix.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace monge {

namespace {

// Modulo draw on mt19937_64 so generated instances are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(span == 0 ? engine_() : engine_() % span);
  }
  bool coin(int percent) { return uniform(0, 99) < percent; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Value> sorted_draws(Rng& rng, Index count, Value lo, Value hi) {
  std::vector<Value> v(static_cast<std::size_t>(count));
  for (auto& x : v) x = rng.uniform(lo, hi);
  std::sort(v.begin(), v.end());
  return v;
}

void require_dims(Index rows, Index cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix dimensions must be positive");
}

PartialShape reversed(const PartialShape& shape) {
  const Index m = shape.rows(), n = shape.cols();
  std::vector<Index> s(static_cast<std::size_t>(m)), t(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    s[static_cast<std::size_t>(i)] = n - 1 - shape.last(m - 1 - i);
    t[static_cast<std::size_t>(i)] = n - 1 - shape.first(m - 1 - i);
  }
  return PartialShape(m, n, std::move(s), std::move(t));
}

bool fits(__int128 v) {
  constexpr __int128 budget = static_cast<__int128>(1) << 61;
  return v <= budget && v >= -budget;
}

}  // namespace

MatrixOracle::MatrixOracle(Index rows, Index cols, Accessor entry)
    : rows_(rows), cols_(cols), entry_(std::move(entry)) {}

DenseMatrix::DenseMatrix(Index rows, Index cols, Value fill)
    : rows_(rows),
      cols_(cols),
      data_(std::make_shared<std::vector<Value>>(static_cast<std::size_t>(rows * cols), fill)) {}

DenseMatrix::DenseMatrix(Index rows, Index cols, std::vector<Value> data)
    : rows_(rows), cols_(cols), data_(std::make_shared<std::vector<Value>>(std::move(data))) {
  if (static_cast<Index>(data_->size()) != rows * cols)
    throw std::invalid_argument("data size does not match dimensions");
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<Value>>& rows) {
  const Index m = static_cast<Index>(rows.size());
  const Index n = m ? static_cast<Index>(rows.front().size()) : 0;
  std::vector<Value> data;
  data.reserve(static_cast<std::size_t>(m * n));
  for (const auto& r : rows) {
    if (static_cast<Index>(r.size()) != n) throw std::invalid_argument("ragged rows");
    data.insert(data.end(), r.begin(), r.end());
  }
  return DenseMatrix(m, n, std::move(data));
}

DenseMatrix DenseMatrix::materialize(const MatrixOracle& oracle) {
  DenseMatrix out(oracle.rows(), oracle.cols());
  for (Index i = 0; i < oracle.rows(); ++i)
    for (Index j = 0; j < oracle.cols(); ++j) out.at(i, j) = oracle(i, j);
  return out;
}

MatrixOracle DenseMatrix::oracle() const {
  auto data = data_;
  const Index n = cols_;
  return MatrixOracle(rows_, cols_, [data, n](Index i, Index j) {
    return (*data)[static_cast<std::size_t>(i * n + j)];
  });
}

MatrixOracle transpose(const MatrixOracle& m) {
  return MatrixOracle(m.cols(), m.rows(), [m](Index i, Index j) { return m(j, i); });
}

MatrixOracle reverse_both(const MatrixOracle& m) {
  const Index r = m.rows() - 1, c = m.cols() - 1;
  return MatrixOracle(m.rows(), m.cols(), [m, r, c](Index i, Index j) { return m(r - i, c - j); });
}

MatrixOracle oriented(const MatrixOracle& m, Orientation o) {
  switch (o) {
    case Orientation::Transpose: return transpose(m);
    case Orientation::ReverseBoth: return reverse_both(m);
    case Orientation::Identity: break;
  }
  return m;
}

MatrixOracle submatrix(const MatrixOracle& m, Index r0, Index c0, Index rows, Index cols) {
  if (r0 < 0 || c0 < 0 || rows < 0 || cols < 0 || r0 + rows > m.rows() || c0 + cols > m.cols())
    throw std::out_of_range("submatrix outside the base matrix");
  return MatrixOracle(rows, cols, [m, r0, c0](Index i, Index j) { return m(r0 + i, c0 + j); });
}

MatrixOracle negate(const MatrixOracle& m) {
  return MatrixOracle(m.rows(), m.cols(), [m](Index i, Index j) { return -m(i, j); });
}

MatrixOracle counting(const MatrixOracle& m, std::shared_ptr<std::uint64_t> counter) {
  return MatrixOracle(m.rows(), m.cols(), [m, counter](Index i, Index j) {
    ++*counter;
    return m(i, j);
  });
}

// ---------------------------------------------------------------------------

PartialShape::PartialShape(Index rows, Index cols, std::vector<Index> s, std::vector<Index> t)
    : rows_(rows), cols_(cols), s_(std::move(s)), t_(std::move(t)) {
  if (static_cast<Index>(s_.size()) != rows || static_cast<Index>(t_.size()) != rows)
    throw std::invalid_argument("shape needs one interval per row");
}

PartialShape PartialShape::full(Index rows, Index cols) {
  return PartialShape(rows, cols, std::vector<Index>(static_cast<std::size_t>(rows), 0),
                      std::vector<Index>(static_cast<std::size_t>(rows), cols - 1));
}

bool PartialShape::fully_defined() const {
  for (Index i = 0; i < rows_; ++i)
    if (first(i) != 0 || last(i) != cols_ - 1) return false;
  return true;
}

void PartialShape::validate() const {
  if (rows_ < 1 || cols_ < 1) throw std::invalid_argument("shape dimensions must be positive");
  for (Index i = 0; i < rows_; ++i)
    if (first(i) < 0 || first(i) > last(i) || last(i) >= cols_)
      throw std::invalid_argument("row " + std::to_string(i) + " has no valid defined interval");
  // s: non-increasing then non-decreasing; t: non-decreasing then non-increasing.
  auto unimodal = [&](const std::vector<Index>& v, bool valley) {
    bool turned = false;
    for (std::size_t k = 1; k < v.size(); ++k) {
      const bool up = v[k] > v[k - 1], down = v[k] < v[k - 1];
      if (valley ? up : down) turned = true;
      else if (turned && (valley ? down : up)) return false;
    }
    return true;
  };
  if (!unimodal(s_, true)) throw std::invalid_argument("row starts are not valley-shaped");
  if (!unimodal(t_, false)) throw std::invalid_argument("row ends are not mountain-shaped");
  for (Index j = 0; j < cols_; ++j) {
    int runs = 0;
    bool prev = false;
    for (Index i = 0; i < rows_; ++i) {
      const bool d = defined(i, j);
      if (d && !prev) ++runs;
      prev = d;
    }
    if (runs > 1)
      throw std::invalid_argument("column " + std::to_string(j) + " is not contiguous");
  }
}

std::optional<StaircaseKind> classify_staircase(const PartialShape& shape) {
  const Index m = shape.rows(), n = shape.cols();
  bool left = true, right = true;
  for (Index i = 0; i < m; ++i) {
    left = left && shape.first(i) == 0;
    right = right && shape.last(i) == n - 1;
  }
  auto monotone = [&](const std::vector<Index>& v, bool increasing) {
    for (std::size_t k = 1; k < v.size(); ++k)
      if (increasing ? v[k] < v[k - 1] : v[k] > v[k - 1]) return false;
    return true;
  };
  if (left && monotone(shape.lasts(), false)) return StaircaseKind::UpperLeft;
  if (left && monotone(shape.lasts(), true)) return StaircaseKind::LowerLeft;
  if (right && monotone(shape.firsts(), true)) return StaircaseKind::UpperRight;
  if (right && monotone(shape.firsts(), false)) return StaircaseKind::LowerRight;
  return std::nullopt;
}

std::string to_string(StaircaseKind kind) {
  switch (kind) {
    case StaircaseKind::UpperLeft: return "upper-left";
    case StaircaseKind::LowerLeft: return "lower-left";
    case StaircaseKind::UpperRight: return "upper-right";
    case StaircaseKind::LowerRight: return "lower-right";
  }
  return "?";
}

// ---------------------------------------------------------------------------

namespace {

MongeCheck verify_impl(const MatrixOracle& m, const PartialShape* shape, Convention convention) {
  MongeCheck result;
  for (Index i = 0; i + 1 < m.rows(); ++i) {
    Index lo = 0, hi = m.cols() - 1;
    if (shape) {
      lo = std::max(shape->first(i), shape->first(i + 1));
      hi = std::min(shape->last(i), shape->last(i + 1));
    }
    for (Index j = lo; j < hi; ++j) {
      const __int128 lhs = static_cast<__int128>(m(i, j)) + m(i + 1, j + 1);
      const __int128 rhs = static_cast<__int128>(m(i + 1, j)) + m(i, j + 1);
      if (convention == Convention::Max ? lhs < rhs : lhs > rhs) {
        result.ok = false;
        result.violation = std::make_pair(i, j);
        return result;
      }
    }
  }
  return result;
}

}  // namespace

MongeCheck verify_monge(const MatrixOracle& m, Convention convention) {
  return verify_impl(m, nullptr, convention);
}

MongeCheck verify_monge(const MatrixOracle& m, const PartialShape& shape, Convention convention) {
  return verify_impl(m, &shape, convention);
}

// ---------------------------------------------------------------------------

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "lines") return GeneratorKind::Lines;
  if (name == "density") return GeneratorKind::Density;
  if (name == "product") return GeneratorKind::Product;
  if (name == "distance") return GeneratorKind::Distance;
  throw std::invalid_argument("unknown generator kind '" + name + "'");
}

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Lines: return "lines";
    case GeneratorKind::Density: return "density";
    case GeneratorKind::Product: return "product";
    case GeneratorKind::Distance: return "distance";
  }
  return "?";
}

MatrixOracle lines_oracle(std::vector<Value> slope, std::vector<Value> intercept, Index cols) {
  if (slope.size() != intercept.size()) throw std::invalid_argument("slope/intercept mismatch");
  auto a = std::make_shared<const std::vector<Value>>(std::move(slope));
  auto b = std::make_shared<const std::vector<Value>>(std::move(intercept));
  return MatrixOracle(static_cast<Index>(a->size()), cols, [a, b](Index i, Index j) {
    return (*a)[static_cast<std::size_t>(i)] * (j + 1) + (*b)[static_cast<std::size_t>(i)];
  });
}

namespace {

// Row i peaks near column x_i: slope x_i, intercept -x_i^2/2 plus noise. Occasional
// duplicated rows and flat stretches give ties.
MatrixOracle lines_instance(Rng& rng, Index rows, Index cols) {
  const Value span = std::max<Value>(2, cols);
  const Value scale = rng.uniform(1, 4);
  auto x = sorted_draws(rng, rows, -span / 4, span + span / 4);
  std::vector<Value> a(static_cast<std::size_t>(rows)), b(a.size());
  const Value noise = rng.coin(30) ? 0 : span;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0 && rng.coin(10)) {
      a[i] = a[i - 1];
      b[i] = b[i - 1];
      continue;
    }
    a[i] = scale * x[i];
    b[i] = -scale * x[i] * x[i] / 2 + rng.uniform(-noise, noise);
  }
  return lines_oracle(std::move(a), std::move(b), cols);
}

MatrixOracle distance_instance(Rng& rng, Index rows, Index cols) {
  constexpr Value limit = Value{1} << 19;
  auto x = std::make_shared<const std::vector<Value>>(sorted_draws(rng, rows, 0, limit));
  auto y = std::make_shared<const std::vector<Value>>(sorted_draws(rng, cols, 0, limit));
  return MatrixOracle(rows, cols, [x, y](Index i, Index j) {
    const Value d = (*x)[static_cast<std::size_t>(i)] - (*y)[static_cast<std::size_t>(j)];
    return -d * d;
  });
}

}  // namespace

DenseMatrix generate_monge(std::uint64_t seed, Index rows, Index cols, GeneratorKind kind) {
  require_dims(rows, cols);
  Rng rng(mix(seed, static_cast<std::uint64_t>(kind)));
  switch (kind) {
    case GeneratorKind::Lines:
      return DenseMatrix::materialize(lines_instance(rng, rows, cols));
    case GeneratorKind::Distance:
      return DenseMatrix::materialize(distance_instance(rng, rows, cols));
    case GeneratorKind::Density: {
      // Prefix sums of a non-negative density over p <= i, q <= j.
      const Value k = static_cast<Value>(rows + cols);
      const int zeros = static_cast<int>(rng.uniform(20, 90));
      const Value peak = rng.uniform(1, 6);
      DenseMatrix out(rows, cols);
      std::vector<Value> col_prefix(static_cast<std::size_t>(cols), 0);
      std::vector<Value> c(static_cast<std::size_t>(cols));
      for (auto& v : c) v = rng.uniform(-k, k);
      for (Index i = 0; i < rows; ++i) {
        const Value r = rng.uniform(-k, k);
        Value running = 0;
        for (Index j = 0; j < cols; ++j) {
          running += rng.coin(zeros) ? 0 : rng.uniform(1, peak);
          col_prefix[static_cast<std::size_t>(j)] += running;
          out.at(i, j) = r + c[static_cast<std::size_t>(j)] + col_prefix[static_cast<std::size_t>(j)];
        }
      }
      return out;
    }
    case GeneratorKind::Product: {
      auto u = sorted_draws(rng, rows, 0, 1024);
      auto v = sorted_draws(rng, cols, 0, 1024);
      DenseMatrix out(rows, cols);
      for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
          out.at(i, j) = (i + 1) * (j + 1) + u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
      return out;
    }
  }
  throw std::invalid_argument("unknown generator kind");
}

MatrixOracle implicit_monge(std::uint64_t seed, Index rows, Index cols, GeneratorKind kind) {
  require_dims(rows, cols);
  Rng rng(mix(seed, static_cast<std::uint64_t>(kind)));
  if (kind == GeneratorKind::Lines) return lines_instance(rng, rows, cols);
  if (kind == GeneratorKind::Distance) return distance_instance(rng, rows, cols);
  throw std::invalid_argument("implicit generation supports lines and distance only");
}

PartialShape random_staircase(std::uint64_t seed, Index rows, Index cols, StaircaseKind kind) {
  require_dims(rows, cols);
  Rng rng(mix(seed, 100 + static_cast<std::uint64_t>(kind)));
  // Canonical upper-left: t non-increasing, then mapped to the requested corner.
  std::vector<Value> draws = sorted_draws(rng, rows, 0, cols - 1);
  if (rng.coin(50)) draws.back() = cols - 1;
  std::reverse(draws.begin(), draws.end());
  std::vector<Index> s(static_cast<std::size_t>(rows), 0), t(draws.begin(), draws.end());
  PartialShape ul(rows, cols, s, t);
  switch (kind) {
    case StaircaseKind::UpperLeft: return ul;
    case StaircaseKind::LowerRight: return reversed(ul);
    case StaircaseKind::LowerLeft: {
      std::reverse(t.begin(), t.end());
      return PartialShape(rows, cols, s, t);
    }
    case StaircaseKind::UpperRight: {
      std::reverse(t.begin(), t.end());
      return reversed(PartialShape(rows, cols, s, t));
    }
  }
  return ul;
}

PartialShape random_partial_shape(std::uint64_t seed, Index rows, Index cols) {
  require_dims(rows, cols);
  Rng rng(mix(seed, 200));
  const Index p1 = rng.uniform(0, rows), p2 = rng.uniform(p1, rows);
  const bool shift_right = rng.coin(50);
  const Index step = std::max<Index>(1, 2 * cols / std::max<Index>(1, rows));
  std::vector<Index> s(static_cast<std::size_t>(rows)), t(s.size());
  Index lo = rng.uniform(0, cols - 1), hi = rng.uniform(lo, cols - 1);
  for (Index i = 0; i < rows; ++i) {
    if (i > 0) {
      const Index ds = rng.coin(40) ? 0 : rng.uniform(0, step);
      const Index dt = rng.coin(40) ? 0 : rng.uniform(0, step);
      if (i < p1) {
        lo = std::max<Index>(0, lo - ds);
        hi = std::min(cols - 1, hi + dt);
      } else if (i < p2) {
        if (shift_right) {
          hi = std::min(cols - 1, hi + dt);
          lo = std::min(lo + ds, hi);
        } else {
          lo = std::max<Index>(0, lo - ds);
          hi = std::max(hi - dt, lo);
        }
      } else {
        const Index old_lo = lo;
        hi = std::max(hi - dt, old_lo);
        lo = std::min(lo + ds, hi);
      }
    }
    s[static_cast<std::size_t>(i)] = lo;
    t[static_cast<std::size_t>(i)] = hi;
  }
  return PartialShape(rows, cols, std::move(s), std::move(t));
}

PartialShape diamond_shape(Index rows, Index cols) {
  require_dims(rows, cols);
  std::vector<Index> s(static_cast<std::size_t>(rows)), t(s.size());
  const Index mid = (cols - 1) / 2;
  for (Index i = 0; i < rows; ++i) {
    const Index d = std::min(i, rows - 1 - i);
    const Index half = rows > 1 ? d * cols / rows : cols / 2;
    s[static_cast<std::size_t>(i)] = std::max<Index>(0, mid - half);
    t[static_cast<std::size_t>(i)] = std::min(cols - 1, mid + (cols % 2 == 0) + half);
  }
  return PartialShape(rows, cols, std::move(s), std::move(t));
}

// ---------------------------------------------------------------------------

FilledStaircase fill_staircase(const MatrixOracle& m, const PartialShape& shape) {
  ValueRange range{std::numeric_limits<Value>::max(), std::numeric_limits<Value>::min()};
  for (Index i = 0; i < shape.rows(); ++i)
    for (Index j = shape.first(i); j <= shape.last(i); ++j) {
      const Value v = m(i, j);
      range.min = std::min(range.min, v);
      range.max = std::max(range.max, v);
    }
  return fill_staircase(m, shape, range);
}

FilledStaircase fill_staircase(const MatrixOracle& m, const PartialShape& shape, ValueRange range) {
  if (m.rows() != shape.rows() || m.cols() != shape.cols())
    throw std::invalid_argument("shape does not match matrix dimensions");
  const auto kind = classify_staircase(shape);
  if (!kind)
    throw std::invalid_argument(
        "shape is not a staircase; decompose it with the partial index first");
  if (range.min > range.max) throw std::invalid_argument("empty value range");

  const bool flipped = *kind == StaircaseKind::LowerRight || *kind == StaircaseKind::UpperRight;
  const MatrixOracle base_m = flipped ? reverse_both(m) : m;
  const PartialShape canon = flipped ? reversed(shape) : shape;
  const bool lower = *kind == StaircaseKind::LowerLeft || *kind == StaircaseKind::UpperRight;
  const Index rows = m.rows(), cols = m.cols();

  FilledStaircase out;
  out.kind = *kind;
  out.shift = -range.min;
  const __int128 b = static_cast<__int128>(range.max) - range.min + 1;
  const __int128 reach = b * cols * (rows + 3);
  if (!fits(b) || !fits(reach) || !fits(static_cast<__int128>(range.max) + out.shift))
    throw std::overflow_error("staircase fill constants exceed the 62-bit budget");
  out.base = static_cast<Value>(b);

  auto t = std::make_shared<const std::vector<Index>>(canon.lasts());
  const Value shift = out.shift, base = out.base;
  MatrixOracle canonical;
  if (lower) {
    canonical = MatrixOracle(rows, cols, [base_m, t, shift, base, rows](Index i, Index j) {
      const Index ti = (*t)[static_cast<std::size_t>(i)];
      if (j <= ti) return base_m(i, j) + shift;
      return -base * (j - ti) * (rows - i);
    });
  } else {
    canonical = MatrixOracle(rows, cols, [base_m, t, shift, base](Index i, Index j) {
      const Index ti = (*t)[static_cast<std::size_t>(i)];
      if (j <= ti) return base_m(i, j) + shift;
      return base * (j - ti) * (i + 3);
    });
  }
  out.filled = flipped ? reverse_both(canonical) : canonical;
  return out;
}

// ---------------------------------------------------------------------------

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

TextMatrix read_matrix(std::istream& in) {
  std::string text;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, text)) {
      ++line_no;
      if (text.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError(line_no + 1, "missing header \"m n\"");
  Index m = 0, n = 0;
  {
    std::istringstream header(text);
    std::string extra;
    if (!(header >> m >> n) || (header >> extra))
      throw ParseError(line_no, "header must be two integers \"m n\"");
    if (m < 1 || n < 1) throw ParseError(line_no, "dimensions must be positive");
  }
  TextMatrix out{DenseMatrix(m, n), std::nullopt};
  std::vector<Index> s(static_cast<std::size_t>(m)), t(s.size());
  bool partial = false;
  for (Index i = 0; i < m; ++i) {
    if (!next_line()) throw ParseError(line_no + 1, "expected " + std::to_string(m) + " rows");
    std::istringstream row(text);
    std::string tok;
    Index j = 0, lo = -1, hi = -1;
    bool closed = false;
    while (row >> tok) {
      if (j >= n) throw ParseError(line_no, "too many entries in row");
      if (tok == "*") {
        partial = true;
        if (lo >= 0) closed = true;
      } else {
        if (closed) throw ParseError(line_no, "defined entries in a row must be contiguous");
        std::size_t used = 0;
        Value v = 0;
        try {
          v = std::stoll(tok, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != tok.size()) throw ParseError(line_no, "bad entry '" + tok + "'");
        out.values.at(i, j) = v;
        if (lo < 0) lo = j;
        hi = j;
      }
      ++j;
    }
    if (j != n) throw ParseError(line_no, "too few entries in row");
    if (lo < 0) throw ParseError(line_no, "row has no defined entry");
    s[static_cast<std::size_t>(i)] = lo;
    t[static_cast<std::size_t>(i)] = hi;
  }
  if (next_line()) throw ParseError(line_no, "unexpected trailing data");
  if (partial) {
    PartialShape shape(m, n, std::move(s), std::move(t));
    try {
      shape.validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError(1, e.what());
    }
    out.shape = std::move(shape);
  }
  return out;
}

void write_matrix(std::ostream& out, const DenseMatrix& m, const std::optional<PartialShape>& shape) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      if (shape && !shape->defined(i, j)) out << '*';
      else out << m(i, j);
    }
    out << '\n';
  }
}

}  // namespace monge
