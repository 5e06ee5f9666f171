#pragma once

// Exact rational dense linear algebra over Q.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace kslice {

/// Arbitrary precision rational; GMP keeps it in lowest terms with a
/// positive denominator after every arithmetic operation.
using Rat = mpq_class;
using Int = mpz_class;
using RatVector = std::vector<Rat>;

Rat make_rat(long num, long den = 1);

/// Parses "a" or "a/b" (optional sign on a). Throws std::invalid_argument.
Rat parse_rat(std::string_view text);

/// "a" for integers, "a/b" otherwise.
std::string format_rat(const Rat& r);

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries);

  static RatMatrix zero(std::size_t rows, std::size_t cols) { return RatMatrix(rows, cols); }
  static RatMatrix identity(std::size_t n);
  static RatMatrix column(std::span<const Rat> v);
  /// Builds from integer rows; convenient for literals in tests.
  static RatMatrix from_ints(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<Rat>& entries() const { return data_; }

  bool is_zero() const;
  RatMatrix transpose() const;
  RatMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t row0, std::size_t col0, const RatMatrix& src);

  RatMatrix& operator+=(const RatMatrix& other);
  RatMatrix& operator-=(const RatMatrix& other);
  RatMatrix& operator*=(const Rat& s);

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

RatMatrix operator+(RatMatrix a, const RatMatrix& b);
RatMatrix operator-(RatMatrix a, const RatMatrix& b);
RatMatrix operator-(RatMatrix a);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const Rat& s, RatMatrix a);
RatVector operator*(const RatMatrix& a, std::span<const Rat> x);

/// Stacks the entries of each matrix (row-major) as one column of the result.
RatMatrix columns_of(std::span<const RatMatrix> mats);

/// Linear combination sum_i coeffs[i] * mats[i]; all mats share a shape.
RatMatrix combine(std::span<const Rat> coeffs, std::span<const RatMatrix> mats);

/// Monic polynomial, coefficients in ascending degree.
struct Poly {
  std::vector<Rat> coeffs;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  Rat operator()(const Rat& t) const;
  friend bool operator==(const Poly&, const Poly&) = default;
};

std::string format_poly(const Poly& p, char var = 't');

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
  RatMatrix reduced;
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return pivots.size(); }
};

/// Fraction-free (Bareiss) forward elimination on integer-scaled rows,
/// followed by back substitution into the unique reduced echelon form.
Echelon row_reduce(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// Canonical kernel basis as column vectors: one vector per non-pivot column
/// j (ascending), with a 1 at j, 0 at every other non-pivot column.
std::vector<RatMatrix> kernel_basis(const RatMatrix& m);

/// Same basis as kernel_basis, as plain coordinate vectors.
std::vector<RatVector> kernel_vectors(const RatMatrix& m);

/// Particular solution of A x = b with zeros in every non-pivot coordinate,
/// or nullopt when the system is inconsistent.
std::optional<RatVector> solve(const RatMatrix& a, std::span<const Rat> b);

/// Bareiss determinant. Throws DimensionError for non-square input.
Rat determinant(const RatMatrix& m);

/// Inverse, or nullopt when singular. Throws DimensionError for non-square input.
std::optional<RatMatrix> inverse(const RatMatrix& m);

/// det(tI - M), computed with the division-free Berkowitz recurrence on the
/// integer matrix d*M (d the common denominator) and rescaled.
Poly charpoly(const RatMatrix& m);

/// Smallest k <= n with M^k = 0, or nullopt if M^n != 0.
std::optional<std::size_t> nilpotency_index(const RatMatrix& m);

// Matrix text format: "rows cols" followed by row-major entries "a" or "a/b".
RatMatrix read_matrix(std::istream& in);
RatMatrix parse_matrix(std::string_view text);
std::string format_matrix(const RatMatrix& m);

}  // namespace kslice
