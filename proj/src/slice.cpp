#include "kslice/slice.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string_view>

#include <Eigen/Dense>
#include <json.hpp>

#include "kslice/detail/berkowitz.hpp"
#include "kslice/log.hpp"
#include "kslice/nilpotent.hpp"

namespace kslice {

KostantSlice KostantSlice::make(std::shared_ptr<const SymmetricPair> pair, Sl2Triple triple) {
  if (!pair) throw std::invalid_argument("null pair");
  std::vector<RatMatrix> basis = centralizer(*pair, triple.e);
  if (basis.size() != pair->rank_theta()) {
    throw SliceDimensionError("centralizer of e has dimension " + std::to_string(basis.size()) +
                              ", expected rank theta = " + std::to_string(pair->rank_theta()));
  }
  return KostantSlice(std::move(pair), std::move(triple), std::move(basis));
}

RatMatrix slice_point(const KostantSlice& slice, std::span<const Rat> coords) {
  if (coords.size() != slice.dim()) {
    throw DimensionError("slice_point: expected " + std::to_string(slice.dim()) + " coordinates");
  }
  RatMatrix x = slice.triple().f;
  if (!coords.empty()) x += combine(coords, slice.basis());
  return x;
}

namespace {

bool has_det_invariant(const SymmetricPair& pair) {
  return pair.family() == Family::ORTH && pair.p() == pair.q();
}

RatVector invariant_values(const SymmetricPair& pair, const RatMatrix& x) {
  Poly p = charpoly(x);
  p.coeffs.pop_back();
  if (has_det_invariant(pair)) {
    p.coeffs.push_back(determinant(x.block(0, pair.p(), pair.p(), pair.q())));
  }
  return std::move(p.coeffs);
}

}  // namespace

std::size_t invariant_count(const SymmetricPair& pair) {
  return pair.n() + (has_det_invariant(pair) ? 1 : 0);
}

InvariantVector invariants(const SymmetricPair& pair, const RatMatrix& x) {
  if (!pair.in_eigenspace(x, -1)) throw MembershipError("invariants: element is not in g(-1)");
  return InvariantVector{invariant_values(pair, x)};
}

Rat best_rational(double x, std::int64_t bound) {
  if (!std::isfinite(x)) throw std::invalid_argument("best_rational: non-finite input");
  if (bound < 1) throw std::invalid_argument("best_rational: bound must be >= 1");
  const Rat exact(x);
  const Int limit(static_cast<long>(bound));
  if (exact.get_den() <= limit) return exact;
  Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Int num = exact.get_num();
  Int den = exact.get_den();
  while (true) {
    Int a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Int q2 = q0 + a * q1;
    if (q2 > limit) break;
    Int p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Int rem = num - a * den;
    num = den;
    den = rem;
    if (den == 0) break;
  }
  Int k;
  mpz_fdiv_q(k.get_mpz_t(), Int(limit - q0).get_mpz_t(), q1.get_mpz_t());
  Rat b1(p0 + k * p1, q0 + k * q1);
  Rat b2(p1, q1);
  b1.canonicalize();
  b2.canonicalize();
  return abs(b2 - exact) <= abs(b1 - exact) ? b2 : b1;
}

namespace {

struct Dual {
  double v = 0.0;
  double d = 0.0;
  Dual() = default;
  Dual(int x) : v(x) {}  // NOLINT: ring literal
  Dual(double value, double deriv) : v(value), d(deriv) {}
  Dual operator-() const { return {-v, -d}; }
  Dual& operator+=(const Dual& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
};

Eigen::MatrixXd to_double(const RatMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Indices of a basic set of invariants inside the full vector: the first d
// structurally nonzero charpoly coefficients t^{n-2}, t^{n-4}, ..., with det A
// taking the last slot when it is present. On the slice these give a
// polynomial isomorphism onto affine d-space, so the square Jacobian is
// invertible everywhere; the remaining invariants are checked exactly later.
std::vector<std::size_t> basic_rows(const SymmetricPair& pair, std::size_t d) {
  const std::size_t n = pair.n();
  const bool det = has_det_invariant(pair);
  std::vector<std::size_t> rows;
  const std::size_t from_charpoly = det ? d - 1 : d;
  for (std::size_t j = 1; j <= from_charpoly; ++j) rows.push_back(n - 2 * j);
  if (det) rows.push_back(n);
  return rows;
}

// Residual and Jacobian of the basic invariants minus their targets, rows
// scaled by 1 / max(1, |target_k|).
class SliceSystem {
 public:
  SliceSystem(const KostantSlice& slice, const InvariantVector& target)
      : slice_(slice),
        target_(target),
        n_(slice.pair().n()),
        rows_(basic_rows(slice.pair(), slice.dim())) {
    f_ = to_double(slice.triple().f);
    for (const auto& b : slice.basis()) basis_.push_back(to_double(b));
    for (std::size_t k : rows_) {
      weights_.push_back(1.0 / std::max(1.0, std::abs(target.values[k].get_d())));
    }
  }

  // Evaluated in exact arithmetic at the (exactly representable) iterate.
  Eigen::VectorXd residual(const Eigen::VectorXd& c, bool* exact_zero = nullptr) const {
    RatVector coords(c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) coords[i] = Rat(c[i]);
    const RatVector vals = invariant_values(slice_.pair(), slice_point(slice_, coords));
    Eigen::VectorXd r(rows_.size());
    bool zero = true;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rat diff = vals[rows_[i]] - target_.values[rows_[i]];
      if (sgn(diff) != 0) zero = false;
      r[i] = diff.get_d() * weights_[i];
    }
    if (exact_zero) *exact_zero = zero;
    return r;
  }

  // Forward-mode derivative of the Berkowitz recurrence, one direction per column.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& c) const {
    Eigen::MatrixXd x = f_;
    for (std::size_t i = 0; i < basis_.size(); ++i) x += c[i] * basis_[i];
    Eigen::MatrixXd jac(rows_.size(), basis_.size());
    const std::size_t p = slice_.pair().p();
    const std::size_t q = n_ - p;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Eigen::MatrixXd& dir = basis_[i];
      const auto desc = detail::berkowitz<Dual>(n_, [&](std::size_t r, std::size_t s) {
        return Dual(x(r, s), dir(r, s));
      });
      for (std::size_t k = 0; k < rows_.size(); ++k) {
        double deriv = 0.0;
        if (rows_[k] < n_) {
          // desc[n - j] is the coefficient of t^j.
          deriv = desc[n_ - rows_[k]].d;
        } else {
          // det A = (-1)^q times the constant term of charpoly(A).
          const auto block = detail::berkowitz<Dual>(q, [&](std::size_t r, std::size_t s) {
            return Dual(x(r, p + s), dir(r, p + s));
          });
          deriv = (q % 2 ? -1.0 : 1.0) * block[q].d;
        }
        jac(k, i) = deriv * weights_[k];
      }
    }
    return jac;
  }

 private:
  const KostantSlice& slice_;
  const InvariantVector& target_;
  std::size_t n_;
  std::vector<std::size_t> rows_;
  std::vector<double> weights_;
  Eigen::MatrixXd f_;
  std::vector<Eigen::MatrixXd> basis_;
};

std::optional<RatVector> reconstruct(const KostantSlice& slice, const InvariantVector& target,
                                     const Eigen::VectorXd& c, const SolverConfig& config) {
  std::optional<RatVector> last;
  for (std::int64_t bound : config.denominator_bounds) {
    RatVector cand(c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) cand[i] = best_rational(c[i], bound);
    if (last && *last == cand) continue;
    if (invariant_values(slice.pair(), slice_point(slice, cand)) == target.values) return cand;
    last = std::move(cand);
  }
  return std::nullopt;
}

}  // namespace

std::optional<RatVector> invert_on_slice(const KostantSlice& slice, const InvariantVector& target,
                                         const SolverConfig& config, InversionStats* stats) {
  const std::size_t m = invariant_count(slice.pair());
  if (target.values.size() != m) {
    throw DimensionError("invert_on_slice: expected " + std::to_string(m) + " invariants");
  }
  InversionStats local;
  InversionStats& st = stats ? *stats : local;
  st = InversionStats{};

  const std::size_t d = slice.dim();
  if (d == 0) {
    if (invariant_values(slice.pair(), slice.triple().f) == target.values) return RatVector{};
    return std::nullopt;
  }

  std::uint64_t seed = 0;
  for (const auto& v : target.values) seed = fnv1a(format_rat(v) + ",", seed ? seed : 1469598103934665603ull);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-config.start_radius, config.start_radius);

  const SliceSystem sys(slice, target);
  for (int s = 0; s < config.starts; ++s) {
    ++st.starts_used;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    if (s > 0)
      for (auto& x : c) x = uni(rng);

    bool hit = false;
    Eigen::VectorXd r = sys.residual(c, &hit);
    double norm = r.norm();
    double damping = 1.0;
    for (int it = 0; it < config.max_iterations && !hit; ++it) {
      ++st.iterations;
      const Eigen::MatrixXd jac = sys.jacobian(c);
      const Eigen::VectorXd step = jac.fullPivLu().solve(-r);
      if (!step.allFinite()) break;
      bool accepted = false;
      Eigen::VectorXd next;
      while (damping >= 1.0 / 1024.0) {
        next = c + damping * step;
        if (!next.allFinite()) break;
        Eigen::VectorXd rn = sys.residual(next, &hit);
        const double nn = rn.norm();
        if (hit || nn < norm) {
          r = std::move(rn);
          norm = nn;
          accepted = true;
          break;
        }
        damping /= 2.0;
      }
      if (!accepted) break;
      const double moved = (next - c).norm();
      c = std::move(next);
      if (hit) break;
      damping = std::min(1.0, damping * 2.0);
      if (moved <= config.step_tolerance * (1.0 + c.norm())) break;
    }
    if (!c.allFinite()) continue;
    log::debug("invert_on_slice: start {} ended at residual {:.3e}, c[0] = {:.17g}", s, norm, c[0]);
    if (auto found = reconstruct(slice, target, c, config)) {
      log::debug("invert_on_slice: start {} succeeded after {} iterations", s, st.iterations);
      return found;
    }
  }
  log::info("invert_on_slice: exhausted {} starts", config.starts);
  return std::nullopt;
}

std::size_t jacobian_rank_at(const KostantSlice& slice, std::span<const Rat> coords) {
  const std::size_t n = slice.pair().n();
  const std::size_t d = slice.dim();
  if (coords.size() != d) throw DimensionError("jacobian_rank_at: coordinate length mismatch");
  if (d == 0) return 0;

  // The map is polynomial of degree <= n along each line, so n + 1 nodes
  // t = 0..n determine it; weights[t] = L_t'(0) for the Lagrange basis.
  RatVector weights(n + 1);
  for (std::size_t t = 0; t <= n; ++t) {
    Rat denom = 1;
    for (std::size_t m = 0; m <= n; ++m)
      if (m != t) denom *= Rat(static_cast<long>(t) - static_cast<long>(m));
    // L_t'(0) = sum_{j != t} prod_{m != t, j} (0 - x_m) / denom.
    Rat numer = 0;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == t) continue;
      Rat prod = 1;
      for (std::size_t m = 0; m <= n; ++m)
        if (m != t && m != j) prod *= Rat(-static_cast<long>(m));
      numer += prod;
    }
    weights[t] = numer / denom;
  }

  const std::size_t count = invariant_count(slice.pair());
  RatMatrix jac(count, d);
  RatVector point(coords.begin(), coords.end());
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t t = 0; t <= n; ++t) {
      RatVector shifted = point;
      shifted[i] += Rat(static_cast<long>(t));
      const RatVector vals = invariant_values(slice.pair(), slice_point(slice, shifted));
      for (std::size_t k = 0; k < count; ++k) jac(k, i) += weights[t] * vals[k];
    }
  }
  return rank(jac);
}

std::string invariants_to_json(const InvariantVector& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& x : v.values) arr.push_back(format_rat(x));
  return arr.dump();
}

InvariantVector invariants_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("invariants: ") + e.what());
  }
  if (!j.is_array()) throw std::invalid_argument("invariants: expected a JSON array");
  InvariantVector v;
  for (const auto& item : j) {
    if (!item.is_string()) throw std::invalid_argument("invariants: entries must be \"a/b\" strings");
    v.values.push_back(parse_rat(item.get<std::string>()));
  }
  return v;
}

}  // namespace kslice
