#pragma once

// Symmetric pairs (g, theta) for the three classical families, with theta
// the conjugation by I_{p,q} = diag(1_p, -1_q).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kslice/exact.hpp"

namespace kslice {

enum class Family { GL, ORTH, SP };

std::string_view family_name(Family f);  // "gl", "o", "sp"
Family parse_family(std::string_view name);

/// Raised when (family, p, q) does not describe a supported pair.
class ConstraintViolation : public std::invalid_argument {
 public:
  ConstraintViolation(Family family, long p, long q, std::string condition);

  Family family() const { return family_; }
  long p() const { return p_; }
  long q() const { return q_; }
  const std::string& condition() const { return condition_; }

 private:
  Family family_;
  long p_;
  long q_;
  std::string condition_;
};

/// Raised when an element is required to lie in g(-1) (or g) and does not.
class MembershipError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// J_r: ones on the anti-diagonal.
RatMatrix anti_identity(std::size_t r);
/// J'_r: anti-diagonal with entry (i, r-1-i) = (-1)^i.
RatMatrix alternating_anti_identity(std::size_t r);

class SymmetricPair {
 public:
  /// Validates the parameters, builds the form and solves for the bases.
  /// Requires p >= q >= 1; ORTH additionally p - q <= 1, SP p and q even.
  static SymmetricPair make(Family family, long p, long q);

  Family family() const { return family_; }
  std::size_t p() const { return p_; }
  std::size_t q() const { return q_; }
  std::size_t n() const { return p_ + q_; }
  const std::optional<RatMatrix>& form() const { return form_; }
  const RatMatrix& involution() const { return invol_; }
  const std::vector<RatMatrix>& basis_g() const { return basis_g_; }
  const std::vector<RatMatrix>& basis_plus() const { return basis_plus_; }
  const std::vector<RatMatrix>& basis_minus() const { return basis_minus_; }
  std::size_t rank_theta() const { return rank_theta_; }

  /// I_{p,q} X I_{p,q}^{-1}.
  RatMatrix apply_theta(const RatMatrix& x) const;
  /// GL: always true. ORTH/SP: J X^t J^{-1} == -X.
  bool in_algebra(const RatMatrix& x) const;
  /// In g and theta(X) == sign * X.
  bool in_eigenspace(const RatMatrix& x, int sign) const;
  const std::vector<RatMatrix>& eigenspace_basis(int sign) const;

  /// Coordinates of X in basis_minus, or nullopt if X is not in g(-1).
  std::optional<RatVector> minus_coordinates(const RatMatrix& x) const;

 private:
  SymmetricPair() = default;
  void require_square(const RatMatrix& x) const;

  Family family_ = Family::GL;
  std::size_t p_ = 0;
  std::size_t q_ = 0;
  std::optional<RatMatrix> form_;
  std::optional<RatMatrix> form_inv_;
  RatMatrix invol_;
  std::vector<RatMatrix> basis_g_;
  std::vector<RatMatrix> basis_plus_;
  std::vector<RatMatrix> basis_minus_;
  std::size_t rank_theta_ = 0;
};

inline SymmetricPair make_pair(Family family, long p, long q) {
  return SymmetricPair::make(family, p, q);
}

/// XY - YX.
RatMatrix bracket(const RatMatrix& x, const RatMatrix& y);

}  // namespace kslice
