// Command-line front end. Coordinates on the command line and in output are 1-based.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <variant>

#include "CLI11.hpp"
#include "monge/matrix.hpp"
#include "monge/partial_index.hpp"
#include "monge/predecessor_duality.hpp"
#include "monge/smawk.hpp"
#include "monge/staircase_index.hpp"
#include "monge/subcolumn_index.hpp"
#include "monge/submatrix_index.hpp"

using namespace monge;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kIndexNames = {"submatrix-basic", "submatrix-linear", "subcolumn-basic",
                                              "subcolumn-two-level", "staircase-basic", "staircase-linear",
                                              "partial-basic", "partial-linear"};

bool is_partial_index(const std::string& name) {
  return name.rfind("staircase", 0) == 0 || name.rfind("partial", 0) == 0;
}

// A built index of any kind, queried uniformly.
class AnyIndex {
 public:
  AnyIndex(const std::string& name, const MatrixOracle& m, const std::optional<PartialShape>& shape,
           std::optional<ValueRange> range = std::nullopt)
      : name_(name) {
    if (name == "submatrix-basic" || name == "submatrix-linear" || name == "subcolumn-basic" ||
        name == "subcolumn-two-level") {
      if (shape) throw UsageError(name + " needs a fully defined matrix");
      if (name == "submatrix-basic") idx_ = SubmatrixIndex::build_basic(m);
      else if (name == "submatrix-linear") idx_ = SubmatrixIndex::build_linear(m);
      else if (name == "subcolumn-basic") idx_ = SubcolumnIndex::build_basic(m);
      else idx_ = SubcolumnIndex::build_two_level(m);
      return;
    }
    const PartialShape s = shape ? *shape : PartialShape::full(m.rows(), m.cols());
    if (name == "staircase-basic" || name == "staircase-linear") {
      if (!classify_staircase(s)) throw UsageError("the defined region is not a staircase");
      idx_ = StaircaseIndex(m, s, name == "staircase-basic" ? StaircaseIndex::Variant::Basic
                                                            : StaircaseIndex::Variant::Linear, range);
    } else if (name == "partial-basic" || name == "partial-linear") {
      idx_ = PartialIndex(m, s, name == "partial-basic" ? StaircaseIndex::Variant::Basic
                                                        : StaircaseIndex::Variant::Linear);
    } else {
      throw UsageError("unknown index '" + name + "'");
    }
  }

  bool column_only() const { return std::holds_alternative<SubcolumnIndex>(idx_); }

  std::optional<Entry> max(Index i0, Index i1, Index j0, Index j1) const {
    return std::visit(
        [&](const auto& x) -> std::optional<Entry> {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, SubcolumnIndex>) {
            if (j0 != j1) throw UsageError(name_ + " answers single-column queries only");
            return x.max(j0, i0, i1);
          } else {
            return x.max(i0, i1, j0, j1);
          }
        },
        idx_);
  }

  std::size_t words() const {
    return std::visit([](const auto& x) { return x.words(); }, idx_);
  }

 private:
  std::string name_;
  std::variant<SubmatrixIndex, SubcolumnIndex, StaircaseIndex, PartialIndex> idx_;
};

TextMatrix load_matrix(const std::string& path) {
  if (path == "-") return read_matrix(std::cin);
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return read_matrix(in);
}

std::string format_entry(const std::optional<Entry>& e) {
  if (!e) return "none";
  return std::to_string(e->row + 1) + " " + std::to_string(e->col + 1) + " " + std::to_string(e->value);
}

PartialShape make_shape(const std::string& shape, std::uint64_t seed, Index rows, Index cols) {
  if (shape == "staircase-ul") return random_staircase(seed, rows, cols, StaircaseKind::UpperLeft);
  if (shape == "staircase-ll") return random_staircase(seed, rows, cols, StaircaseKind::LowerLeft);
  if (shape == "staircase-ur") return random_staircase(seed, rows, cols, StaircaseKind::UpperRight);
  if (shape == "staircase-lr") return random_staircase(seed, rows, cols, StaircaseKind::LowerRight);
  if (shape == "partial") return random_partial_shape(seed, rows, cols);
  if (shape == "diamond") return diamond_shape(rows, cols);
  throw UsageError("unknown shape '" + shape + "'");
}

void check_rect(Index rows, Index cols, Index i0, Index i1, Index j0, Index j1) {
  if (i0 < 0 || i1 >= rows || i0 > i1 || j0 < 0 || j1 >= cols || j0 > j1)
    throw UsageError("rectangle outside the matrix");
}

std::optional<Entry> brute_max(const MatrixOracle& m, const std::optional<PartialShape>& shape, Index i0, Index i1,
                               Index j0, Index j1) {
  std::optional<Entry> best;
  for (Index i = i0; i <= i1; ++i)
    for (Index j = j0; j <= j1; ++j)
      if (!shape || shape->defined(i, j)) keep_max(best, Entry{i, j, m(i, j)});
  return best;
}

bool same_answer(const MatrixOracle& m, const std::optional<Entry>& got, const std::optional<Entry>& want) {
  if (got.has_value() != want.has_value()) return false;
  if (!got) return true;
  return got->value == want->value && m(got->row, got->col) == got->value;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string kind = "lines", shape = "full", out = "-";
  Index rows = 4, cols = 4;
  std::uint64_t seed = 1;
};

int cmd_gen(const GenArgs& a) {
  if (a.rows < 1 || a.cols < 1) throw UsageError("rows and cols must be positive");
  const auto m = generate_monge(a.seed, a.rows, a.cols, parse_generator_kind(a.kind));
  std::optional<PartialShape> shape;
  if (a.shape != "full") shape = make_shape(a.shape, a.seed, a.rows, a.cols);
  if (a.out == "-") {
    write_matrix(std::cout, m, shape);
  } else {
    std::ofstream out(a.out);
    if (!out) throw UsageError("cannot write " + a.out);
    write_matrix(out, m, shape);
  }
  return kOk;
}

int cmd_check(const std::string& file, bool min) {
  const auto tm = load_matrix(file);
  const auto conv = min ? Convention::Min : Convention::Max;
  if (tm.shape) tm.shape->validate();
  const auto r = tm.shape ? verify_monge(tm.values.oracle(), *tm.shape, conv) : verify_monge(tm.values.oracle(), conv);
  if (r.ok) {
    std::cout << "OK\n";
    return kOk;
  }
  std::cout << "VIOLATION " << r.violation->first + 1 << " " << r.violation->second + 1 << "\n";
  return kFail;
}

int cmd_maxima(const std::string& file) {
  const auto tm = load_matrix(file);
  const auto m = tm.values.oracle();
  std::vector<Index> r;
  if (tm.shape) {
    tm.shape->validate();
    r = partial_column_maxima(m, *tm.shape);
  } else {
    r = column_maxima(m);
  }
  std::cout << "r";
  for (auto x : r) std::cout << " " << (x < 0 ? std::string("*") : std::to_string(x + 1));
  std::cout << "\nbreakpoints";
  if (!tm.shape) {
    for (const auto& b : breakpoints(m, r)) std::cout << " " << b.col + 1 << ":" << b.row + 1;
  } else {
    Index prev = -1;
    for (Index j = 0; j < static_cast<Index>(r.size()); ++j)
      if (r[static_cast<std::size_t>(j)] >= 0 && (prev < 0 || r[static_cast<std::size_t>(j)] > prev)) {
        std::cout << " " << j + 1 << ":" << r[static_cast<std::size_t>(j)] + 1;
        prev = r[static_cast<std::size_t>(j)];
      }
  }
  std::cout << "\n";
  return kOk;
}

int cmd_build(const std::string& file, const std::string& index) {
  const auto tm = load_matrix(file);
  if (tm.shape) tm.shape->validate();
  const auto t0 = std::chrono::steady_clock::now();
  AnyIndex idx(index, tm.values.oracle(), tm.shape);
  const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "index " << index << "\nrows " << tm.values.rows() << "\ncols " << tm.values.cols() << "\nwords "
            << idx.words() << "\nbuild_ns " << ns << "\n";
  return kOk;
}

struct QueryArgs {
  std::string file, index = "submatrix-linear", batch;
  std::vector<Index> rect, rows;
  Index col = 0;
};

int cmd_query(const QueryArgs& a) {
  const auto tm = load_matrix(a.file);
  if (tm.shape) tm.shape->validate();
  const auto m = tm.values.oracle();
  std::string index = a.index;
  if (tm.shape && !is_partial_index(index)) index = "partial-linear";
  if (!a.rows.empty() && index.rfind("submatrix", 0) == 0) index = "subcolumn-two-level";
  AnyIndex idx(index, m, tm.shape);
  auto answer = [&](Index i0, Index i1, Index j0, Index j1) {
    check_rect(m.rows(), m.cols(), i0 - 1, i1 - 1, j0 - 1, j1 - 1);
    std::cout << format_entry(idx.max(i0 - 1, i1 - 1, j0 - 1, j1 - 1)) << "\n";
  };
  if (!a.rect.empty()) {
    answer(a.rect[0], a.rect[1], a.rect[2], a.rect[3]);
  } else if (!a.rows.empty()) {
    answer(a.rows[0], a.rows[1], a.col, a.col);
  } else if (!a.batch.empty()) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (a.batch != "-") {
      file.open(a.batch);
      if (!file) throw UsageError("cannot open " + a.batch);
      in = &file;
    }
    std::string line;
    std::size_t no = 0;
    while (std::getline(*in, line)) {
      ++no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::istringstream ls(line);
      Index i0, i1, j0, j1;
      if (!(ls >> i0 >> i1 >> j0 >> j1)) throw UsageError("batch line " + std::to_string(no) + ": expected i0 i1 j0 j1");
      answer(i0, i1, j0, j1);
    }
  } else {
    throw UsageError("query needs --rect, --col/--rows or --batch");
  }
  return kOk;
}

struct FuzzArgs {
  std::string index = "submatrix-linear";
  Index n = 32;
  int cases = 100, queries = 400;
  std::uint64_t seed = 1;
};

void print_reproducer(const DenseMatrix& d, const std::optional<PartialShape>& shape, Index i0, Index i1, Index j0,
                      Index j1, const std::optional<Entry>& got, const std::optional<Entry>& want) {
  std::cout << "reproducer matrix:\n";
  write_matrix(std::cout, d, shape);
  std::cout << "query --rect " << i0 + 1 << " " << i1 + 1 << " " << j0 + 1 << " " << j1 + 1 << "\n"
            << "got " << format_entry(got) << "\nexpected " << format_entry(want) << "\n";
}

// Smallest failing window: drop rows and columns outside the query while it keeps failing.
void shrink_and_report(const std::string& index, const DenseMatrix& d, const std::optional<PartialShape>& shape,
                       Index i0, Index i1, Index j0, Index j1) {
  const auto m = d.oracle();
  auto fails = [&](Index r0, Index r1, Index c0, Index c1) -> bool {
    const Index rows = r1 - r0 + 1, cols = c1 - c0 + 1;
    DenseMatrix w(rows, cols);
    std::vector<Index> s, t;
    for (Index i = 0; i < rows; ++i) {
      for (Index j = 0; j < cols; ++j) w.at(i, j) = m(r0 + i, c0 + j);
      if (shape) {
        s.push_back(std::max(shape->first(r0 + i), c0) - c0);
        t.push_back(std::min(shape->last(r0 + i), c1) - c0);
      }
    }
    std::optional<PartialShape> ws;
    try {
      if (shape) {
        ws = PartialShape(rows, cols, s, t);
        ws->validate();
      }
      AnyIndex idx(index, w.oracle(), ws);
      const auto got = idx.max(i0 - r0, i1 - r0, j0 - c0, j1 - c0);
      return !same_answer(w.oracle(), got, brute_max(w.oracle(), ws, i0 - r0, i1 - r0, j0 - c0, j1 - c0));
    } catch (const std::exception&) {
      return false;
    }
  };
  Index r0 = 0, r1 = d.rows() - 1, c0 = 0, c1 = d.cols() - 1;
  for (bool moved = true; moved;) {
    moved = false;
    if (r0 < i0 && fails(r0 + 1, r1, c0, c1)) ++r0, moved = true;
    if (r1 > i1 && fails(r0, r1 - 1, c0, c1)) --r1, moved = true;
    if (c0 < j0 && fails(r0, r1, c0 + 1, c1)) ++c0, moved = true;
    if (c1 > j1 && fails(r0, r1, c0, c1 - 1)) --c1, moved = true;
  }
  DenseMatrix w(r1 - r0 + 1, c1 - c0 + 1);
  std::vector<Index> s, t;
  for (Index i = r0; i <= r1; ++i) {
    for (Index j = c0; j <= c1; ++j) w.at(i - r0, j - c0) = m(i, j);
    if (shape) {
      s.push_back(std::max(shape->first(i), c0) - c0);
      t.push_back(std::min(shape->last(i), c1) - c0);
    }
  }
  std::optional<PartialShape> ws;
  if (shape) ws = PartialShape(w.rows(), w.cols(), s, t);
  AnyIndex idx(index, w.oracle(), ws);
  const auto got = idx.max(i0 - r0, i1 - r0, j0 - c0, j1 - c0);
  print_reproducer(w, ws, i0 - r0, i1 - r0, j0 - c0, j1 - c0, got,
                   brute_max(w.oracle(), ws, i0 - r0, i1 - r0, j0 - c0, j1 - c0));
}

int cmd_fuzz(const FuzzArgs& a) {
  if (std::find(kIndexNames.begin(), kIndexNames.end(), a.index) == kIndexNames.end())
    throw UsageError("unknown index '" + a.index + "'");
  if (a.n < 1 || a.cases < 0) throw UsageError("--n and --cases must be positive");
  std::mt19937_64 rng(a.seed);
  const GeneratorKind kinds[] = {GeneratorKind::Lines, GeneratorKind::Density, GeneratorKind::Product,
                                 GeneratorKind::Distance};
  const StaircaseKind corners[] = {StaircaseKind::UpperLeft, StaircaseKind::LowerLeft, StaircaseKind::UpperRight,
                                   StaircaseKind::LowerRight};
  std::uniform_int_distribution<Index> dim(1, a.n);
  int passed = 0;
  for (int c = 0; c < a.cases; ++c) {
    const Index rows = dim(rng), cols = dim(rng);
    const std::uint64_t seed = rng();
    const auto d = generate_monge(seed, rows, cols, kinds[c % 4]);
    const auto m = d.oracle();

    auto probes = std::make_shared<std::uint64_t>(0);
    const auto r = column_maxima(counting(m, probes));
    bool ok = *probes <= static_cast<std::uint64_t>(8 * (rows + cols));
    for (Index j = 0; ok && j < cols; ++j) {
      const auto e = brute_max(m, std::nullopt, 0, rows - 1, j, j);
      ok = m(r[static_cast<std::size_t>(j)], j) == e->value;
    }
    if (!ok) {
      std::cout << "FAIL case " << c + 1 << ": SMAWK used " << *probes << " probes or a wrong column maximum\n"
                << "reproducer matrix:\n";
      write_matrix(std::cout, d);
      return kFail;
    }

    std::optional<PartialShape> shape;
    if (a.index.rfind("staircase", 0) == 0) shape = random_staircase(seed, rows, cols, corners[(c / 4) % 4]);
    if (a.index.rfind("partial", 0) == 0) shape = random_partial_shape(seed, rows, cols);
    AnyIndex idx(a.index, m, shape);
    const bool column = idx.column_only();
    std::uniform_int_distribution<Index> ri(0, rows - 1), ci(0, cols - 1);
    for (int q = 0; q < a.queries; ++q) {
      Index i0 = ri(rng), i1 = ri(rng), j0 = ci(rng), j1 = ci(rng);
      if (i0 > i1) std::swap(i0, i1);
      if (j0 > j1) std::swap(j0, j1);
      if (column) j1 = j0;
      const auto got = idx.max(i0, i1, j0, j1);
      const auto want = brute_max(m, shape, i0, i1, j0, j1);
      if (!same_answer(m, got, want)) {
        std::cout << "FAIL case " << c + 1 << " (" << rows << "x" << cols << ", " << to_string(kinds[c % 4]) << ")\n";
        shrink_and_report(a.index, d, shape, i0, i1, j0, j1);
        return kFail;
      }
    }
    ++passed;
  }
  std::cout << "OK " << passed << "/" << a.cases << "\n";
  return kOk;
}

struct BenchArgs {
  std::vector<Index> n = {1024};
  std::vector<std::string> index = {"submatrix-linear"};
  std::string kind = "lines", out = "-";
  int queries = 10000, threads = 1;
  std::uint64_t seed = 1;
};

struct BenchRow {
  Index n = 0;
  std::string kind;
  long long build_ns = 0;
  std::size_t words = 0;
  double p50 = 0, p99 = 0, probes = 0;
};

BenchRow bench_one(const BenchArgs& a, Index n, const std::string& index) {
  const auto base = implicit_monge(a.seed, n, n, parse_generator_kind(a.kind));
  auto counter = std::make_shared<std::uint64_t>(0);
  const auto m = counting(base, counter);
  std::optional<PartialShape> shape;
  std::optional<ValueRange> range;
  if (index.rfind("staircase", 0) == 0) {
    shape = random_staircase(a.seed, n, n, StaircaseKind::UpperLeft);
    range = ValueRange{-(Value{1} << 40), Value{1} << 40};
  }
  if (index.rfind("partial", 0) == 0) shape = random_partial_shape(a.seed, n, n);

  const auto t0 = std::chrono::steady_clock::now();
  AnyIndex idx(index, m, shape, range);
  BenchRow row;
  row.n = n;
  row.kind = index;
  row.build_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
  row.words = idx.words();

  std::mt19937_64 rng(a.seed ^ static_cast<std::uint64_t>(n));
  std::uniform_int_distribution<Index> d(0, n - 1);
  struct Q {
    Index i0, i1, j0, j1;
  };
  std::vector<Q> qs(static_cast<std::size_t>(std::max(1, a.queries)));
  for (auto& q : qs) {
    q = {d(rng), d(rng), d(rng), d(rng)};
    if (q.i0 > q.i1) std::swap(q.i0, q.i1);
    if (q.j0 > q.j1) std::swap(q.j0, q.j1);
    if (idx.column_only()) q.j1 = q.j0;
  }
  Value sink = 0;
  for (std::size_t k = 0; k < qs.size() && k < 1000; ++k) {
    const auto e = idx.max(qs[k].i0, qs[k].i1, qs[k].j0, qs[k].j1);
    sink += e ? e->value : 0;
  }
  std::vector<double> lat;
  lat.reserve(qs.size());
  *counter = 0;
  for (const auto& q : qs) {
    const auto s = std::chrono::steady_clock::now();
    const auto e = idx.max(q.i0, q.i1, q.j0, q.j1);
    lat.push_back(static_cast<double>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - s).count()));
    sink += e ? e->value : 0;
  }
  row.probes = static_cast<double>(*counter) / static_cast<double>(qs.size());
  std::sort(lat.begin(), lat.end());
  row.p50 = lat[lat.size() / 2];
  row.p99 = lat[std::min(lat.size() - 1, lat.size() * 99 / 100)];
  if (sink == 42) std::cerr << "";
  return row;
}

int cmd_bench(const BenchArgs& a) {
  for (const auto& name : a.index)
    if (std::find(kIndexNames.begin(), kIndexNames.end(), name) == kIndexNames.end())
      throw UsageError("unknown index '" + name + "'");
  for (auto n : a.n)
    if (n < 1) throw UsageError("--n must be positive");
  parse_generator_kind(a.kind);
  std::vector<std::pair<Index, std::string>> jobs;
  for (auto n : a.n)
    for (const auto& name : a.index) jobs.emplace_back(n, name);
  std::vector<BenchRow> rows(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::size_t next = 0;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      std::size_t k;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= jobs.size()) return;
        k = next++;
      }
      try {
        rows[k] = bench_one(a, jobs[k].first, jobs[k].second);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(1, a.threads); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t k = 0; k < jobs.size(); ++k)
    if (!errors[k].empty()) throw UsageError(jobs[k].second + " at n=" + std::to_string(jobs[k].first) + ": " + errors[k]);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (a.out != "-") {
    file.open(a.out);
    if (!file) throw UsageError("cannot write " + a.out);
    out = &file;
  }
  *out << "n,kind,build_ns,words,q_p50_ns,q_p99_ns,probes_mean\n";
  for (const auto& r : rows)
    *out << r.n << "," << r.kind << "," << r.build_ns << "," << r.words << "," << r.p50 << "," << r.p99 << ","
         << r.probes << "\n";
  return kOk;
}

struct PredArgs {
  std::string set, via = "monge";
  std::uint64_t x = 0;
  Index n = 0;
};

int cmd_pred(const PredArgs& a) {
  std::ifstream in(a.set);
  if (!in) throw UsageError("cannot open " + a.set);
  std::vector<std::uint64_t> keys;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long long v;
    std::string rest;
    if (!(ls >> v) || v < 0 || (ls >> rest)) throw ParseError(no, "expected one non-negative integer");
    keys.push_back(static_cast<std::uint64_t>(v));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::optional<std::uint64_t> answer;
  if (a.via == "direct") {
    const auto it = std::upper_bound(keys.begin(), keys.end(), a.x);
    if (it != keys.begin()) answer = *(it - 1);
  } else if (a.via == "monge") {
    Index n = std::max<Index>({2, static_cast<Index>(keys.size()), a.n});
    const std::uint64_t top = std::max(keys.empty() ? 0 : keys.back(), a.x);
    while (static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) <= top) ++n;
    answer = MongePredecessor(keys, n).pred(a.x);
  } else if (a.via == "reduced") {
    const auto n = static_cast<std::uint64_t>(keys.size());
    if (n < 2) throw UsageError("--via reduced needs at least two keys");
    const std::uint64_t top = std::max(keys.back(), a.x);
    const long double cube = std::pow(static_cast<long double>(n), 3.0L);
    const int c = static_cast<long double>(top) < cube ? 3 : 4;
    if (c == 4 && static_cast<long double>(top) >= cube * static_cast<long double>(n))
      throw UsageError("--via reduced needs keys and x below n^4");
    answer = UniverseReduction(keys, c).pred(a.x);
  } else {
    throw UsageError("--via must be monge, direct or reduced");
  }
  std::cout << (answer ? std::to_string(*answer) : std::string("none")) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Submatrix maximum queries on Monge matrices"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a Monge matrix");
  g->add_option("--kind", gen.kind, "lines, density, product or distance");
  g->add_option("--rows", gen.rows);
  g->add_option("--cols", gen.cols);
  g->add_option("--seed", gen.seed);
  g->add_option("--shape", gen.shape, "full, staircase-ul|ll|ur|lr, partial or diamond");
  g->add_option("-o,--out", gen.out);

  std::string check_file;
  bool check_min = false;
  auto* c = app.add_subcommand("check", "Verify the Monge condition");
  c->add_option("file", check_file)->required();
  c->add_flag("--min", check_min, "Use the min convention");

  std::string maxima_file;
  auto* mx = app.add_subcommand("maxima", "Column maxima rows and breakpoints");
  mx->add_option("file", maxima_file)->required();

  std::string build_file, build_index = "submatrix-linear";
  auto* b = app.add_subcommand("build", "Build an index and report its size");
  b->add_option("file", build_file)->required();
  b->add_option("--index", build_index);

  QueryArgs query;
  auto* q = app.add_subcommand("query", "Answer maximum queries");
  q->add_option("file", query.file)->required();
  q->add_option("--index", query.index);
  q->add_option("--rect", query.rect, "i0 i1 j0 j1")->expected(4);
  q->add_option("--col", query.col);
  q->add_option("--rows", query.rows, "i0 i1")->expected(2);
  q->add_option("--batch", query.batch, "File with one rectangle per line, - for stdin");

  FuzzArgs fuzz;
  auto* f = app.add_subcommand("fuzz", "Compare an index against brute force");
  f->add_option("--index", fuzz.index);
  f->add_option("--n", fuzz.n);
  f->add_option("--cases", fuzz.cases);
  f->add_option("--queries", fuzz.queries, "Rectangles per case");
  f->add_option("--seed", fuzz.seed);

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "Build and query timings as CSV");
  be->add_option("--n", bench.n)->expected(1, -1);
  be->add_option("--index", bench.index)->expected(1, -1);
  be->add_option("--kind", bench.kind, "lines or distance");
  be->add_option("--queries", bench.queries);
  be->add_option("--seed", bench.seed);
  be->add_option("--threads", bench.threads);
  be->add_option("-o,--out", bench.out);

  PredArgs pred;
  auto* p = app.add_subcommand("pred", "Predecessor search");
  p->add_option("--set", pred.set, "One integer per line")->required();
  p->add_option("--x", pred.x)->required();
  p->add_option("--via", pred.via, "monge, direct or reduced");
  p->add_option("--n", pred.n, "Block count for --via monge");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    if (*g) return cmd_gen(gen);
    if (*c) return cmd_check(check_file, check_min);
    if (*mx) return cmd_maxima(maxima_file);
    if (*b) return cmd_build(build_file, build_index);
    if (*q) return cmd_query(query);
    if (*f) return cmd_fuzz(fuzz);
    if (*be) return cmd_bench(bench);
    if (*p) return cmd_pred(pred);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
