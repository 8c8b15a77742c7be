#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monge {

using Value = std::int64_t;
using Index = std::ptrdiff_t;

/// A located matrix entry. Coordinates are 0-based.
struct Entry {
  Index row = 0;
  Index col = 0;
  Value value = 0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Keeps the larger of two entries; on equal values the incumbent stays.
inline void keep_max(std::optional<Entry>& best, const Entry& e) {
  if (!best || e.value > best->value) best = e;
}

/// Dimensions plus an O(1) entry accessor. Copies share the accessor.
class MatrixOracle {
 public:
  using Accessor = std::function<Value(Index, Index)>;

  MatrixOracle() = default;
  MatrixOracle(Index rows, Index cols, Accessor entry);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  Value operator()(Index i, Index j) const { return entry_(i, j); }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  Accessor entry_;
};

/// Row-major explicit matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(Index rows, Index cols, Value fill = 0);
  DenseMatrix(Index rows, Index cols, std::vector<Value> data);
  static DenseMatrix from_rows(const std::vector<std::vector<Value>>& rows);
  static DenseMatrix materialize(const MatrixOracle& oracle);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  Value& at(Index i, Index j) { return (*data_)[static_cast<std::size_t>(i * cols_ + j)]; }
  Value at(Index i, Index j) const { return (*data_)[static_cast<std::size_t>(i * cols_ + j)]; }
  Value operator()(Index i, Index j) const { return at(i, j); }

  /// Oracle sharing this matrix's storage; stays valid after the matrix is destroyed.
  MatrixOracle oracle() const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::shared_ptr<std::vector<Value>> data_ = std::make_shared<std::vector<Value>>();
};

// ---------------------------------------------------------------------------
// Views

enum class Orientation { Identity, Transpose, ReverseBoth };

MatrixOracle transpose(const MatrixOracle& m);
/// M'[i,j] = M[rows-1-i, cols-1-j]; Monge-preserving.
MatrixOracle reverse_both(const MatrixOracle& m);
MatrixOracle oriented(const MatrixOracle& m, Orientation o);
/// Rows [r0, r0+rows) x cols [c0, c0+cols) of m.
MatrixOracle submatrix(const MatrixOracle& m, Index r0, Index c0, Index rows, Index cols);
MatrixOracle negate(const MatrixOracle& m);
/// Wraps m so every probe increments *counter.
MatrixOracle counting(const MatrixOracle& m, std::shared_ptr<std::uint64_t> counter);

// ---------------------------------------------------------------------------
// Partial shapes

/// Per-row defined column intervals [s_i, t_i] (inclusive, 0-based).
class PartialShape {
 public:
  PartialShape() = default;
  PartialShape(Index rows, Index cols, std::vector<Index> s, std::vector<Index> t);
  static PartialShape full(Index rows, Index cols);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  Index first(Index i) const { return s_[static_cast<std::size_t>(i)]; }
  Index last(Index i) const { return t_[static_cast<std::size_t>(i)]; }
  const std::vector<Index>& firsts() const noexcept { return s_; }
  const std::vector<Index>& lasts() const noexcept { return t_; }
  bool defined(Index i, Index j) const { return first(i) <= j && j <= last(i); }
  bool fully_defined() const;

  /// Throws std::invalid_argument naming the broken invariant.
  void validate() const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Index> s_;
  std::vector<Index> t_;
};

/// Corner occupied by the defined region of a staircase.
/// UpperLeft: rows are prefixes, t non-increasing. LowerLeft: prefixes, t non-decreasing.
/// UpperRight: suffixes, s non-decreasing. LowerRight: suffixes, s non-increasing.
enum class StaircaseKind { UpperLeft, LowerLeft, UpperRight, LowerRight };

std::optional<StaircaseKind> classify_staircase(const PartialShape& shape);
std::string to_string(StaircaseKind kind);

// ---------------------------------------------------------------------------
// Monge verification

enum class Convention { Max, Min };

struct MongeCheck {
  bool ok = true;
  /// Top-left coordinate of the first violating adjacent quadruple (row-major scan).
  std::optional<std::pair<Index, Index>> violation;
  explicit operator bool() const noexcept { return ok; }
};

MongeCheck verify_monge(const MatrixOracle& m, Convention convention = Convention::Max);
/// Only quadruples whose four entries are all defined are checked.
MongeCheck verify_monge(const MatrixOracle& m, const PartialShape& shape,
                        Convention convention = Convention::Max);

// ---------------------------------------------------------------------------
// Generators. Entries stay within +-2^40.

enum class GeneratorKind { Lines, Density, Product, Distance };

GeneratorKind parse_generator_kind(const std::string& name);
std::string to_string(GeneratorKind kind);

/// Deterministic max-convention Monge matrix keyed by seed.
DenseMatrix generate_monge(std::uint64_t seed, Index rows, Index cols, GeneratorKind kind);

/// M[i,j] = slope[i]*(j+1) + intercept[i]; Monge when slopes are non-decreasing.
MatrixOracle lines_oracle(std::vector<Value> slope, std::vector<Value> intercept, Index cols);

/// Implicit Monge oracle needing O(rows+cols) memory, for instances too large to materialize.
/// Lines and Distance kinds only.
MatrixOracle implicit_monge(std::uint64_t seed, Index rows, Index cols, GeneratorKind kind);

/// Random shapes used by tests and the CLI. Every row keeps at least one defined entry.
PartialShape random_staircase(std::uint64_t seed, Index rows, Index cols, StaircaseKind kind);
PartialShape random_partial_shape(std::uint64_t seed, Index rows, Index cols);

/// Diamond (widening then narrowing) shape, always a valid partial shape.
PartialShape diamond_shape(Index rows, Index cols);

// ---------------------------------------------------------------------------
// Staircase filling

/// A full Monge completion of a staircase matrix. Defined entries equal the original plus
/// `shift` (so they lie in [0, base)); undefined entries are synthesized from `base`.
/// Both rules are linear in j along each row's undefined tail, 0-based (i, j), m rows:
///
///   upper-left family (lower-right via reverse-both):  M~[i,j] = base * (j - t_i) * (i + 3)
///   lower-left family (upper-right via reverse-both):  M~[i,j] = -base * (j - t_i) * (m - i)
///
/// The Monge condition is that M~[i+1,j] - M~[i,j] is non-decreasing in j. Once either row
/// runs out of defined entries that difference jumps or grows by at least `base` per column,
/// which dominates any difference of two shifted values.
struct FilledStaircase {
  MatrixOracle filled;
  StaircaseKind kind = StaircaseKind::UpperLeft;
  Value shift = 0;
  Value base = 1;
};

/// Bounds over the defined entries used to pick the fill constants.
struct ValueRange {
  Value min = 0;
  Value max = 0;
};

/// Scans every defined entry for the exact range.
FilledStaircase fill_staircase(const MatrixOracle& m, const PartialShape& shape);
/// Uses caller-supplied bounds on the defined entries (any enclosing range is valid).
/// Throws std::overflow_error when synthesized entries could leave the 62-bit budget.
FilledStaircase fill_staircase(const MatrixOracle& m, const PartialShape& shape, ValueRange range);

// ---------------------------------------------------------------------------
// Text format: "m n" then m lines of n integers, "*" for undefined.

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct TextMatrix {
  DenseMatrix values;  // undefined entries hold 0
  std::optional<PartialShape> shape;  // present iff some entry is "*"
};

TextMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const DenseMatrix& m,
                  const std::optional<PartialShape>& shape = std::nullopt);

}  // namespace monge
