#include "kslice/exact.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <utility>

#include "kslice/detail/berkowitz.hpp"

namespace kslice {

Rat make_rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  Int n(num, 10);
  Int d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string format_rat(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// ---------------------------------------------------------------------------
// RatMatrix

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw DimensionError("entry count does not match shape");
  for (auto& x : data_) x.canonicalize();
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::column(std::span<const Rat> v) {
  return RatMatrix(v.size(), 1, std::vector<Rat>(v.begin(), v.end()));
}

RatMatrix RatMatrix::from_ints(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  RatMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("ragged matrix literal");
    std::size_t j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

bool RatMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rat& x) { return sgn(x) == 0; });
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMatrix RatMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                           std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) throw DimensionError("block out of range");
  RatMatrix b(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(row0 + i, col0 + j);
  return b;
}

void RatMatrix::set_block(std::size_t row0, std::size_t col0, const RatMatrix& src) {
  if (row0 + src.rows() > rows_ || col0 + src.cols() > cols_) {
    throw DimensionError("block out of range");
  }
  for (std::size_t i = 0; i < src.rows(); ++i)
    for (std::size_t j = 0; j < src.cols(); ++j) (*this)(row0 + i, col0 + j) = src(i, j);
}

RatMatrix& RatMatrix::operator+=(const RatMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("shape mismatch in +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

RatMatrix& RatMatrix::operator-=(const RatMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("shape mismatch in -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

RatMatrix& RatMatrix::operator*=(const Rat& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
RatMatrix operator-(RatMatrix a) { return a *= Rat(-1); }
RatMatrix operator*(const Rat& s, RatMatrix a) { return a *= s; }

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("shape mismatch in *");
  RatMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rat& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

RatVector operator*(const RatMatrix& a, std::span<const Rat> x) {
  if (a.cols() != x.size()) throw DimensionError("shape mismatch in matrix-vector product");
  RatVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(i, j)) != 0) y[i] += a(i, j) * x[j];
  return y;
}

RatMatrix columns_of(std::span<const RatMatrix> mats) {
  if (mats.empty()) return {};
  const std::size_t len = mats.front().entries().size();
  RatMatrix out(len, mats.size());
  for (std::size_t c = 0; c < mats.size(); ++c) {
    if (mats[c].entries().size() != len) throw DimensionError("columns_of: mixed shapes");
    for (std::size_t r = 0; r < len; ++r) out(r, c) = mats[c].entries()[r];
  }
  return out;
}

RatMatrix combine(std::span<const Rat> coeffs, std::span<const RatMatrix> mats) {
  if (coeffs.size() != mats.size()) throw DimensionError("combine: length mismatch");
  if (mats.empty()) throw DimensionError("combine: empty basis");
  RatMatrix out(mats.front().rows(), mats.front().cols());
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (sgn(coeffs[i]) == 0) continue;
    if (mats[i].rows() != out.rows() || mats[i].cols() != out.cols()) {
      throw DimensionError("combine: mixed shapes");
    }
    const auto& src = mats[i];
    for (std::size_t r = 0; r < out.rows(); ++r)
      for (std::size_t c = 0; c < out.cols(); ++c)
        if (sgn(src(r, c)) != 0) out(r, c) += coeffs[i] * src(r, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Poly

Rat Poly::operator()(const Rat& t) const {
  Rat acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::string format_poly(const Poly& p, char var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = p.coeffs.size(); k-- > 0;) {
    const Rat& c = p.coeffs[k];
    if (sgn(c) == 0) continue;
    Rat mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) os << format_rat(mag);
    if (k >= 1) os << var;
    if (k >= 2) os << "^" << k;
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// Elimination

namespace {

using IntRows = std::vector<std::vector<Int>>;

// Each row scaled by the lcm of its denominators.
IntRows integer_rows(const RatMatrix& m) {
  IntRows rows(m.rows(), std::vector<Int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Int& d = m(i, j).get_den();
      if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rat& x = m(i, j);
      if (sgn(x) != 0) rows[i][j] = x.get_num() * (l / x.get_den());
    }
  }
  return rows;
}

// Fraction-free forward elimination. Entries after step k are k x k minors of
// the input, so every division by the previous pivot is exact.
std::vector<std::size_t> bareiss_forward(IntRows& a, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  const std::size_t nrows = a.size();
  Int prev = 1;
  Int tmp;
  std::size_t r = 0;
  std::vector<std::size_t> nz;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t pr = r;
    while (pr < nrows && sgn(a[pr][c]) == 0) ++pr;
    if (pr == nrows) continue;
    std::swap(a[r], a[pr]);
    const Int& piv = a[r][c];
    nz.clear();
    for (std::size_t j = c + 1; j < ncols; ++j)
      if (sgn(a[r][j]) != 0) nz.push_back(j);
    const bool unit_step = (piv == prev);
    for (std::size_t i = r + 1; i < nrows; ++i) {
      auto& row = a[i];
      if (sgn(row[c]) == 0) {
        if (unit_step) continue;
        for (std::size_t j = c + 1; j < ncols; ++j) {
          if (sgn(row[j]) == 0) continue;
          tmp = row[j] * piv;
          mpz_divexact(row[j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
        }
        continue;
      }
      const Int factor = row[c];
      for (std::size_t j = c + 1; j < ncols; ++j) {
        if (sgn(row[j]) == 0 && !std::binary_search(nz.begin(), nz.end(), j)) continue;
        tmp = row[j] * piv - factor * a[r][j];
        if (unit_step) {
          row[j] = tmp;
        } else {
          mpz_divexact(row[j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
        }
      }
      row[c] = 0;
    }
    prev = piv;
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Echelon row_reduce(const RatMatrix& m) {
  IntRows a = integer_rows(m);
  const std::vector<std::size_t> pivots = bareiss_forward(a, m.cols());
  const std::size_t r = pivots.size();

  RatMatrix red(m.rows(), m.cols());
  for (std::size_t i = 0; i < r; ++i) {
    const Int& piv = a[i][pivots[i]];
    for (std::size_t j = pivots[i]; j < m.cols(); ++j) {
      if (sgn(a[i][j]) == 0) continue;
      Rat x(a[i][j], piv);
      x.canonicalize();
      red(i, j) = std::move(x);
    }
  }
  // Back substitution: clear the entries above each pivot.
  std::vector<std::size_t> nz;
  for (std::size_t i = r; i-- > 0;) {
    const std::size_t pc = pivots[i];
    nz.clear();
    for (std::size_t j = pc + 1; j < m.cols(); ++j)
      if (sgn(red(i, j)) != 0) nz.push_back(j);
    for (std::size_t k = 0; k < i; ++k) {
      if (sgn(red(k, pc)) == 0) continue;
      const Rat factor = red(k, pc);
      for (std::size_t j : nz) red(k, j) -= factor * red(i, j);
      red(k, pc) = 0;
    }
  }
  return Echelon{std::move(red), pivots};
}

std::size_t rank(const RatMatrix& m) {
  IntRows a = integer_rows(m);
  return bareiss_forward(a, m.cols()).size();
}

std::vector<RatVector> kernel_vectors(const RatMatrix& m) {
  const Echelon ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t pc : ech.pivots) is_pivot[pc] = true;
  std::vector<RatVector> basis;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    RatVector v(m.cols());
    v[j] = 1;
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) v[ech.pivots[i]] = -ech.reduced(i, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<RatMatrix> kernel_basis(const RatMatrix& m) {
  std::vector<RatMatrix> out;
  for (auto& v : kernel_vectors(m)) out.push_back(RatMatrix::column(v));
  return out;
}

std::optional<RatVector> solve(const RatMatrix& a, std::span<const Rat> b) {
  if (a.rows() != b.size()) throw DimensionError("solve: rhs length does not match rows");
  RatMatrix aug(a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < b.size(); ++i) aug(i, a.cols()) = b[i];
  const Echelon ech = row_reduce(aug);
  if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return std::nullopt;
  RatVector x(a.cols());
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) x[ech.pivots[i]] = ech.reduced(i, a.cols());
  return x;
}

Rat determinant(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Scale rows to integers, track the scale, then run Bareiss with sign.
  Rat scale = 1;
  IntRows a(n, std::vector<Int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < n; ++j) {
      const Int& d = m(i, j).get_den();
      if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    scale /= Rat(l);
  }
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k;
    while (pr < n && sgn(a[pr][k]) == 0) ++pr;
    if (pr == n) return 0;
    if (pr != k) {
      std::swap(a[pr], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Rat det(a[n - 1][n - 1]);
  det *= scale;
  if (sign < 0) det = -det;
  return det;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, RatMatrix::identity(n));
  const Echelon ech = row_reduce(aug);
  if (ech.rank() < n || (n > 0 && ech.pivots[n - 1] != n - 1)) return std::nullopt;
  return ech.reduced.block(0, n, n, n);
}

Poly charpoly(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("charpoly of non-square matrix");
  const std::size_t n = m.rows();
  Int d = 1;
  for (const auto& x : m.entries()) {
    if (x.get_den() != 1) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den().get_mpz_t());
  }
  std::vector<Int> scaled(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    const Rat& x = m.entries()[k];
    scaled[k] = x.get_num() * (d / x.get_den());
  }
  const std::vector<Int> desc = detail::berkowitz<Int>(
      n, [&](std::size_t i, std::size_t j) -> const Int& { return scaled[i * n + j]; });
  // det(tI - M) = d^{-n} det((dt) I - dM): coefficient of t^k picks up d^{k-n}.
  Poly p;
  p.coeffs.resize(n + 1);
  Int dpow = 1;
  for (std::size_t k = n + 1; k-- > 0;) {
    // desc[n - k] is the coefficient of t^k of det(sI - dM).
    Rat c(desc[n - k], dpow);
    c.canonicalize();
    p.coeffs[k] = std::move(c);
    dpow *= d;
  }
  return p;
}

std::optional<std::size_t> nilpotency_index(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("nilpotency_index of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 0;
  RatMatrix power = m;
  for (std::size_t k = 1; k <= n; ++k) {
    if (power.is_zero()) return k;
    if (k < n) power = power * m;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Text format

RatMatrix read_matrix(std::istream& in) {
  long long rows = -1;
  long long cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
    throw std::invalid_argument("matrix header must be 'rows cols'");
  }
  const auto r = static_cast<std::size_t>(rows);
  const auto c = static_cast<std::size_t>(cols);
  RatMatrix m(r, c);
  std::string tok;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (!(in >> tok)) throw std::invalid_argument("matrix has fewer entries than its header");
      m(i, j) = parse_rat(tok);
    }
  }
  if (in >> tok) throw std::invalid_argument("matrix has trailing tokens");
  return m;
}

RatMatrix parse_matrix(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_matrix(is);
}

std::string format_matrix(const RatMatrix& m) {
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << format_rat(m(i, j));
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace kslice
