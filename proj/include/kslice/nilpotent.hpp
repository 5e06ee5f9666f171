#pragma once

// Explicit relatively regular nilpotent elements of g(-1) and their
// centralizers.

#include <cstddef>
#include <vector>

#include "kslice/exact.hpp"
#include "kslice/pairs.hpp"

namespace kslice {

/// eps_n: ones on the first superdiagonal.
RatMatrix shift_matrix(std::size_t n);
/// lambda_{m,n}: m x n with a single 1 in the bottom-left corner.
RatMatrix corner_matrix(std::size_t m, std::size_t n);

/// (0 A; B 0) with A p x q and B q x p.
RatMatrix off_diagonal(const RatMatrix& a, const RatMatrix& b);

/// The constructed relatively regular nilpotent e in g(-1) for the pair's
/// family and parity case.
RatMatrix regular_nilpotent(const SymmetricPair& pair);

/// Canonical basis of {Z in g(-1) : [X, Z] = 0}: the kernel of ad_X on the
/// coordinates of basis_minus, mapped back to matrices.
std::vector<RatMatrix> centralizer(const SymmetricPair& pair, const RatMatrix& x);

/// dim centralizer(X) == rank theta. Throws MembershipError if X is not in g(-1).
bool is_relatively_regular(const SymmetricPair& pair, const RatMatrix& x);

/// Hand-parameterized centralizer of regular_nilpotent(pair), one basis
/// element per free parameter. Test oracle only.
std::vector<RatMatrix> closed_form_centralizer(const SymmetricPair& pair);

struct NilpotentWitness {
  RatMatrix e;
  std::size_t nilp_index = 0;
  std::vector<RatMatrix> centralizer_basis;
  std::size_t centralizer_dim = 0;
};

NilpotentWitness make_witness(const SymmetricPair& pair);

/// rank of the column span of `a` stacked with `b`, compared to each alone.
bool same_span(const std::vector<RatMatrix>& a, const std::vector<RatMatrix>& b);

}  // namespace kslice
