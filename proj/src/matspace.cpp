#include "kslice/matspace.hpp"

#include <random>

#include "kslice/nilpotent.hpp"

namespace kslice {

namespace {

bool block_diagonal(const RatMatrix& g, std::size_t p) {
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if ((i < p) != (j < p) && sgn(g(i, j)) != 0) return false;
  return true;
}

long draw(std::mt19937_64& rng, long height) {
  const auto span = static_cast<std::uint64_t>(2 * height + 1);
  return static_cast<long>(rng() % span) - height;
}

RatMatrix random_unimodular(std::mt19937_64& rng, std::size_t m, long height) {
  RatMatrix g = RatMatrix::identity(m);
  if (m == 0) return g;
  if (rng() % 2) g(0, 0) = -1;
  if (m == 1) return g;
  for (std::size_t step = 0; step < 2 * m; ++step) {
    const std::size_t i = rng() % m;
    std::size_t j = rng() % (m - 1);
    if (j >= i) ++j;
    const long c = draw(rng, height);
    for (std::size_t col = 0; col < m; ++col) g(i, col) += Rat(c) * g(j, col);
  }
  return g;
}

}  // namespace

GroupElement GroupElement::make(const SymmetricPair& pair, RatMatrix g) {
  if (g.rows() != pair.n() || g.cols() != pair.n()) {
    throw InvalidGroupElement("group element has the wrong size");
  }
  if (!block_diagonal(g, pair.p())) {
    throw InvalidGroupElement("group element does not commute with I_{p,q}");
  }
  auto inv = kslice::inverse(g);
  if (!inv) throw InvalidGroupElement("group element is singular");
  if (pair.form()) {
    const RatMatrix& j = *pair.form();
    const RatMatrix jinv = *kslice::inverse(j);
    if (j * inv->transpose() * jinv != g) {
      throw InvalidGroupElement("group element does not preserve the form");
    }
  }
  return GroupElement(std::move(g), std::move(*inv), pair.p(), pair.q());
}

RatMatrix to_matrix_space(const SymmetricPair& pair, const RatMatrix& x) {
  if (!pair.in_eigenspace(x, -1)) throw MembershipError("element is not in g(-1)");
  return x.block(0, pair.p(), pair.p(), pair.q());
}

RatMatrix from_matrix_space(const SymmetricPair& pair, const RatMatrix& a) {
  if (a.rows() != pair.p() || a.cols() != pair.q()) {
    throw DimensionError("expected a p x q matrix");
  }
  switch (pair.family()) {
    case Family::GL:
      throw std::invalid_argument("GL: g(-1) carries independent blocks; pass (A, B)");
    case Family::ORTH:
      return off_diagonal(a, anti_identity(pair.q()) * a.transpose() * anti_identity(pair.p()));
    case Family::SP:
      return off_diagonal(a, alternating_anti_identity(pair.q()) * a.transpose() *
                                 alternating_anti_identity(pair.p()));
  }
  throw std::logic_error("unreachable family");
}

RatMatrix from_matrix_space(const SymmetricPair& pair, const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != pair.p() || a.cols() != pair.q() || b.rows() != pair.q() ||
      b.cols() != pair.p()) {
    throw DimensionError("expected p x q and q x p blocks");
  }
  RatMatrix x = off_diagonal(a, b);
  if (!pair.in_eigenspace(x, -1)) throw MembershipError("(A, B) does not define an element of g(-1)");
  return x;
}

RatMatrix act(const SymmetricPair& pair, const GroupElement& g, const RatMatrix& x) {
  if (x.rows() != pair.n() || x.cols() != pair.n() || g.matrix().rows() != pair.n()) {
    throw InvalidGroupElement("group element and matrix sizes do not match the pair");
  }
  return g.matrix() * x * g.inverse();
}

RatMatrix act_mpq(const SymmetricPair& pair, const GroupElement& g, const RatMatrix& a) {
  if (a.rows() != pair.p() || a.cols() != pair.q() || g.matrix().rows() != pair.n()) {
    throw InvalidGroupElement("group element and matrix sizes do not match the pair");
  }
  return g.g1() * a * g.inverse().block(pair.p(), pair.p(), pair.q(), pair.q());
}

GroupElement random_group_element(const SymmetricPair& pair, std::uint64_t seed, long height,
                                  int max_retries) {
  if (height < 1) throw std::invalid_argument("height must be >= 1");
  std::mt19937_64 rng(seed);
  const std::size_t n = pair.n();
  if (pair.family() == Family::GL) {
    RatMatrix g(n, n);
    g.set_block(0, 0, random_unimodular(rng, pair.p(), height));
    g.set_block(pair.p(), pair.p(), random_unimodular(rng, pair.q(), height));
    return GroupElement::make(pair, std::move(g));
  }
  const auto& plus = pair.basis_plus();
  const RatMatrix id = RatMatrix::identity(n);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    RatVector coeffs(plus.size());
    for (auto& c : coeffs) c = draw(rng, height);
    const RatMatrix s = plus.empty() ? RatMatrix(n, n) : combine(coeffs, plus);
    const auto inv = inverse(id + s);
    if (!inv) continue;
    return GroupElement::make(pair, (id - s) * (*inv));
  }
  throw RetryExhausted("Cayley transform: I + S singular on every draw");
}

bool is_regular_mpq(const SymmetricPair& pair, const RatMatrix& a) {
  return is_relatively_regular(pair, from_matrix_space(pair, a));
}

}  // namespace kslice
