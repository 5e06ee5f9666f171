#pragma once

// The affine slice f + g(-1)^e, conjugation invariants on it, and inversion
// of the invariant map back to slice coordinates.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kslice/exact.hpp"
#include "kslice/pairs.hpp"
#include "kslice/sl2.hpp"

namespace kslice {

class SliceDimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficients of charpoly(X), constant term first, leading 1 dropped.
/// Orthogonal pairs with p == q append det A (A the top-right block): the
/// charpoly only sees det(A)^2, so it cannot tell apart the two slice points
/// that the connected group keeps separate.
struct InvariantVector {
  RatVector values;
  friend bool operator==(const InvariantVector&, const InvariantVector&) = default;
};

class KostantSlice {
 public:
  /// slice basis = centralizer(pair, triple.e); its size must be rank theta.
  /// Throws SliceDimensionError otherwise.
  static KostantSlice make(std::shared_ptr<const SymmetricPair> pair, Sl2Triple triple);

  const SymmetricPair& pair() const { return *pair_; }
  const std::shared_ptr<const SymmetricPair>& pair_ptr() const { return pair_; }
  const Sl2Triple& triple() const { return triple_; }
  const std::vector<RatMatrix>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }

 private:
  KostantSlice(std::shared_ptr<const SymmetricPair> pair, Sl2Triple triple,
               std::vector<RatMatrix> basis)
      : pair_(std::move(pair)), triple_(std::move(triple)), basis_(std::move(basis)) {}

  std::shared_ptr<const SymmetricPair> pair_;
  Sl2Triple triple_;
  std::vector<RatMatrix> basis_;
};

/// f + sum_i coords[i] * basis[i]. Throws DimensionError on length mismatch.
RatMatrix slice_point(const KostantSlice& slice, std::span<const Rat> coords);

/// n, or n + 1 for orthogonal pairs with p == q.
std::size_t invariant_count(const SymmetricPair& pair);

/// Throws MembershipError if X is not in g(-1).
InvariantVector invariants(const SymmetricPair& pair, const RatMatrix& x);

/// Schedule for invert_on_slice. None of these values are part of the result
/// contract; only exactly verified coordinates are ever returned.
struct SolverConfig {
  int starts = 25;
  int max_iterations = 200;
  double start_radius = 10.0;
  /// Relative step size below which an iteration is considered converged.
  double step_tolerance = 1e-15;
  std::vector<std::int64_t> denominator_bounds{1'000, 1'000'000, 1'000'000'000'000};
};

struct InversionStats {
  int starts_used = 0;
  int iterations = 0;
};

/// Damped Gauss-Newton in double precision from deterministic starts (the
/// origin, then pseudo-random points seeded by a hash of the target), with
/// residuals evaluated exactly at each iterate. Converged iterates are
/// rounded by continued fractions under each denominator bound and
/// re-verified exactly. nullopt means the schedule was exhausted; it does
/// not certify that the fiber misses the slice.
std::optional<RatVector> invert_on_slice(const KostantSlice& slice, const InvariantVector& target,
                                         const SolverConfig& config = {},
                                         InversionStats* stats = nullptr);

/// Rank of the exact Jacobian of coords -> invariants(slice_point(coords)),
/// each column obtained by exact interpolation along a coordinate line.
std::size_t jacobian_rank_at(const KostantSlice& slice, std::span<const Rat> coords);

/// Best rational approximation with denominator <= bound (continued fractions).
Rat best_rational(double x, std::int64_t bound);

/// JSON array of "a/b" strings.
std::string invariants_to_json(const InvariantVector& v);
/// Throws std::invalid_argument on malformed input.
InvariantVector invariants_from_json(const std::string& text);

}  // namespace kslice
