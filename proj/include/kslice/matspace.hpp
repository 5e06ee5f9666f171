#pragma once

// The correspondence g(-1) <-> M_{p,q} and the action of G(1) on both sides.

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "kslice/exact.hpp"
#include "kslice/pairs.hpp"

namespace kslice {

class InvalidGroupElement : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RetryExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rational point of G(1): block-diagonal diag(g1, g2), invertible, and
/// preserving the pair's form when there is one.
class GroupElement {
 public:
  /// Throws InvalidGroupElement if any invariant fails.
  static GroupElement make(const SymmetricPair& pair, RatMatrix g);

  const RatMatrix& matrix() const { return g_; }
  const RatMatrix& inverse() const { return inv_; }
  RatMatrix g1() const { return g_.block(0, 0, p_, p_); }
  RatMatrix g2() const { return g_.block(p_, p_, q_, q_); }

 private:
  GroupElement(RatMatrix g, RatMatrix inv, std::size_t p, std::size_t q)
      : g_(std::move(g)), inv_(std::move(inv)), p_(p), q_(q) {}

  RatMatrix g_;
  RatMatrix inv_;
  std::size_t p_;
  std::size_t q_;
};

/// Top-right p x q block. Throws MembershipError if X is not in g(-1).
RatMatrix to_matrix_space(const SymmetricPair& pair, const RatMatrix& x);

/// (0 A; Y 0) with Y = J_q A^t J_p (ORTH) or Y = J'_q A^t J'_p (SP).
/// GL has no forced partner block; use the (A, B) overload.
RatMatrix from_matrix_space(const SymmetricPair& pair, const RatMatrix& a);

/// (0 A; B 0); throws MembershipError unless the result lies in g(-1).
RatMatrix from_matrix_space(const SymmetricPair& pair, const RatMatrix& a, const RatMatrix& b);

/// g X g^{-1}.
RatMatrix act(const SymmetricPair& pair, const GroupElement& g, const RatMatrix& x);
/// g1 A g2^{-1}.
RatMatrix act_mpq(const SymmetricPair& pair, const GroupElement& g, const RatMatrix& a);

/// Deterministic in (pair, seed, height).
/// GL: block-diagonal products of elementary integer matrices (det +-1).
/// ORTH/SP: Cayley transform (I - S)(I + S)^{-1} of a random S in g(1).
GroupElement random_group_element(const SymmetricPair& pair, std::uint64_t seed, long height,
                                  int max_retries = 64);

/// Relative regularity of A in M_{p,q}, decided through its preimage (ORTH/SP).
bool is_regular_mpq(const SymmetricPair& pair, const RatMatrix& a);

}  // namespace kslice
