#include "kslice/pairs.hpp"

#include <array>
#include <utility>

namespace kslice {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::GL:
      return "gl";
    case Family::ORTH:
      return "o";
    case Family::SP:
      return "sp";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "gl") return Family::GL;
  if (name == "o") return Family::ORTH;
  if (name == "sp") return Family::SP;
  throw std::invalid_argument("unknown family '" + std::string(name) + "' (expected gl, o or sp)");
}

ConstraintViolation::ConstraintViolation(Family family, long p, long q, std::string condition)
    : std::invalid_argument(std::string(family_name(family)) + "(" + std::to_string(p) + "," +
                            std::to_string(q) + "): " + condition),
      family_(family),
      p_(p),
      q_(q),
      condition_(std::move(condition)) {}

RatMatrix anti_identity(std::size_t r) {
  RatMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i) m(i, r - 1 - i) = 1;
  return m;
}

RatMatrix alternating_anti_identity(std::size_t r) {
  RatMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i) m(i, r - 1 - i) = (i % 2 == 0) ? 1 : -1;
  return m;
}

RatMatrix bracket(const RatMatrix& x, const RatMatrix& y) {
  if (!x.is_square() || x.rows() != y.rows() || y.cols() != x.cols()) {
    throw DimensionError("bracket: operands must be square of equal size");
  }
  return x * y - y * x;
}

namespace {

void validate(Family family, long p, long q) {
  if (q < 1) throw ConstraintViolation(family, p, q, "q >= 1 required (positivity)");
  if (p < q) throw ConstraintViolation(family, p, q, "p >= q required (ordering)");
  if (family == Family::ORTH && p - q > 1) {
    throw ConstraintViolation(family, p, q, "|p - q| <= 1 required");
  }
  if (family == Family::SP && (p % 2 != 0 || q % 2 != 0)) {
    throw ConstraintViolation(family, p, q, "p and q must be even (parity)");
  }
}

// Unknowns are the n*n entries of X ordered by (block, row, col) with blocks
// top-left, top-right, bottom-left, bottom-right.
std::vector<std::pair<std::size_t, std::size_t>> block_order(std::size_t p, std::size_t q) {
  const std::size_t n = p + q;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  order.reserve(n * n);
  const std::array<std::array<std::size_t, 4>, 4> blocks{{
      {0, p, 0, p},
      {0, p, p, n},
      {p, n, 0, p},
      {p, n, p, n},
  }};
  for (const auto& b : blocks)
    for (std::size_t i = b[0]; i < b[1]; ++i)
      for (std::size_t j = b[2]; j < b[3]; ++j) order.emplace_back(i, j);
  return order;
}

}  // namespace

SymmetricPair SymmetricPair::make(Family family, long p, long q) {
  validate(family, p, q);
  SymmetricPair sp;
  sp.family_ = family;
  sp.p_ = static_cast<std::size_t>(p);
  sp.q_ = static_cast<std::size_t>(q);
  const std::size_t n = sp.n();

  sp.invol_ = RatMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) sp.invol_(i, i) = i < sp.p_ ? 1 : -1;

  if (family == Family::ORTH) {
    RatMatrix j(n, n);
    j.set_block(0, 0, anti_identity(sp.p_));
    j.set_block(sp.p_, sp.p_, -anti_identity(sp.q_));
    sp.form_ = std::move(j);
  } else if (family == Family::SP) {
    RatMatrix j(n, n);
    j.set_block(0, 0, alternating_anti_identity(sp.p_));
    j.set_block(sp.p_, sp.p_, alternating_anti_identity(sp.q_));
    sp.form_ = std::move(j);
  }
  if (sp.form_) sp.form_inv_ = inverse(*sp.form_);

  switch (family) {
    case Family::GL:
    case Family::ORTH:
      sp.rank_theta_ = sp.q_;
      break;
    case Family::SP:
      sp.rank_theta_ = sp.q_ / 2;
      break;
  }

  const auto order = block_order(sp.p_, sp.q_);
  const std::size_t nn = n * n;

  // Rows 0..nn-1: algebra condition J E^t J^{-1} + E (absent for GL).
  // Rows nn..2nn-1: theta(E) - sign * E, filled per sign below.
  RatMatrix algebra_rows(sp.form_ ? nn : 0, nn);
  if (sp.form_) {
    for (std::size_t c = 0; c < nn; ++c) {
      RatMatrix e(n, n);
      e(order[c].first, order[c].second) = 1;
      const RatMatrix img = (*sp.form_) * e.transpose() * (*sp.form_inv_) + e;
      for (std::size_t r = 0; r < nn; ++r) algebra_rows(r, c) = img(order[r].first, order[r].second);
    }
  }

  auto basis_from = [&](const RatMatrix& conditions) {
    std::vector<RatMatrix> basis;
    for (const RatVector& v : kernel_vectors(conditions)) {
      RatMatrix x(n, n);
      for (std::size_t c = 0; c < nn; ++c)
        if (sgn(v[c]) != 0) x(order[c].first, order[c].second) = v[c];
      basis.push_back(std::move(x));
    }
    return basis;
  };

  if (sp.form_) {
    sp.basis_g_ = basis_from(algebra_rows);
  } else {
    sp.basis_g_ = basis_from(RatMatrix(0, nn));
  }

  auto eigen_conditions = [&](int sign) {
    RatMatrix rows(algebra_rows.rows() + nn, nn);
    rows.set_block(0, 0, algebra_rows);
    for (std::size_t c = 0; c < nn; ++c) {
      const auto [i, j] = order[c];
      const int weight = ((i < sp.p_) == (j < sp.p_)) ? 1 : -1;
      rows(algebra_rows.rows() + c, c) = weight - sign;
    }
    return rows;
  };
  sp.basis_plus_ = basis_from(eigen_conditions(1));
  sp.basis_minus_ = basis_from(eigen_conditions(-1));
  return sp;
}

void SymmetricPair::require_square(const RatMatrix& x) const {
  if (x.rows() != n() || x.cols() != n()) {
    throw DimensionError("expected a " + std::to_string(n()) + "x" + std::to_string(n()) +
                         " matrix");
  }
}

RatMatrix SymmetricPair::apply_theta(const RatMatrix& x) const {
  require_square(x);
  // I_{p,q} is its own inverse; conjugation flips the off-diagonal blocks.
  RatMatrix y = x;
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < n(); ++j)
      if ((i < p_) != (j < p_)) y(i, j) = -y(i, j);
  return y;
}

bool SymmetricPair::in_algebra(const RatMatrix& x) const {
  require_square(x);
  if (!form_) return true;
  return (*form_) * x.transpose() * (*form_inv_) == -x;
}

bool SymmetricPair::in_eigenspace(const RatMatrix& x, int sign) const {
  if (x.rows() != n() || x.cols() != n()) return false;
  if (!in_algebra(x)) return false;
  const RatMatrix t = apply_theta(x);
  return sign > 0 ? t == x : t == -x;
}

const std::vector<RatMatrix>& SymmetricPair::eigenspace_basis(int sign) const {
  return sign > 0 ? basis_plus_ : basis_minus_;
}

std::optional<RatVector> SymmetricPair::minus_coordinates(const RatMatrix& x) const {
  if (!in_eigenspace(x, -1)) return std::nullopt;
  return solve(columns_of(basis_minus_), x.entries());
}

}  // namespace kslice
