#include "kslice/nilpotent.hpp"

#include <functional>

namespace kslice {

RatMatrix shift_matrix(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1;
  return m;
}

RatMatrix corner_matrix(std::size_t m, std::size_t n) {
  RatMatrix c(m, n);
  if (m > 0 && n > 0) c(m - 1, 0) = 1;
  return c;
}

RatMatrix off_diagonal(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows()) {
    throw DimensionError("off_diagonal: blocks must be p x q and q x p");
  }
  const std::size_t p = a.rows();
  const std::size_t q = a.cols();
  RatMatrix x(p + q, p + q);
  x.set_block(0, p, a);
  x.set_block(p, 0, b);
  return x;
}

namespace {

RatMatrix matrix_power(const RatMatrix& m, std::size_t k) {
  RatMatrix out = RatMatrix::identity(m.rows());
  for (std::size_t i = 0; i < k; ++i) out = out * m;
  return out;
}

// e* for p = q: identity with its first ceil(q/2) ones shifted one column right.
RatMatrix shifted_identity(std::size_t q) {
  const std::size_t k = q / 2;
  RatMatrix es(q, q);
  if (q % 2 == 0) {
    es.set_block(0, 0, shift_matrix(k));
    es.set_block(0, k, corner_matrix(k, k));
    es.set_block(k, k, RatMatrix::identity(k));
  } else {
    es.set_block(0, 0, shift_matrix(k + 1));
    es.set_block(0, k + 1, corner_matrix(k + 1, k));
    es.set_block(k + 1, k + 1, RatMatrix::identity(k));
  }
  return es;
}

// Bottom-left block forced by the top-right one for the orthogonal family.
RatMatrix orth_partner(const RatMatrix& a) {
  return anti_identity(a.cols()) * a.transpose() * anti_identity(a.rows());
}

// Shared by GL (all p >= q) and ORTH with p = q + 1.
RatMatrix staircase_element(std::size_t p, std::size_t q) {
  RatMatrix a(p, q);
  a.set_block(0, 0, RatMatrix::identity(q));
  if (p == q) return off_diagonal(a, shift_matrix(q));
  RatMatrix b(q, p);
  b.set_block(0, 1, RatMatrix::identity(q));
  return off_diagonal(a, b);
}

// A = (T; 0), B = (0 | T | 0), or B = T eps_q when p = q.
RatMatrix staircase_centralizer(std::size_t p, std::size_t q, const RatMatrix& t) {
  RatMatrix a(p, q);
  a.set_block(0, 0, t);
  RatMatrix b(q, p);
  if (p == q) {
    b = t * shift_matrix(q);
  } else {
    b.set_block(0, 1, t);
  }
  return off_diagonal(a, b);
}

using Param = std::function<Rat(long)>;

// Even orthogonal case q = 2k; entries indexed from 1 as in the block display.
RatMatrix orth_even_block(std::size_t k, const Param& a) {
  const long kk = static_cast<long>(k);
  RatMatrix x(2 * k, 2 * k);
  for (long i = 1; i <= kk; ++i) {
    for (long j = 1; j <= kk; ++j) {
      Rat av = j > i ? a(j - i) : Rat(0);
      Rat dv = j >= i ? a(j - i + 1) : Rat(0);
      Rat b1 = j >= i ? a(kk + j - i) : Rat(0);
      Rat b2 = i > j ? a(j + kk - i) : Rat(0);
      Rat b3 = (i > j && i <= kk - 1) ? a(j + kk - i) : Rat(0);
      if (i == 1 && j == kk) dv = a(kk) - a(2 * kk);
      if (i == kk && j == kk) b1 = a(2 * kk);
      x(i - 1, j - 1) = av;
      x(i - 1, k + j - 1) = b1 + b2 + b3;
      x(k + i - 1, k + j - 1) = dv;
    }
  }
  return x;
}

// Odd orthogonal case q = 2k + 1 with k >= 1.
RatMatrix orth_odd_block(std::size_t k, const Param& a) {
  const long kk = static_cast<long>(k);
  RatMatrix x(2 * k + 1, 2 * k + 1);
  for (long i = 1; i <= kk + 1; ++i)
    for (long j = 1; j <= kk + 1; ++j)
      if (j > i) x(i - 1, j - 1) = a(j - i);
  for (long i = 1; i <= kk; ++i)
    for (long j = 1; j <= kk; ++j)
      if (j >= i) x(k + i, k + j) = a(j - i + 1);
  for (long i = 1; i <= kk + 1; ++i) {
    for (long j = 1; j <= kk; ++j) {
      Rat b1 = (j >= i && i <= kk - 1) ? a(kk + 1 + j - i) : Rat(0);
      Rat b2 = i > j ? a(j + kk + 1 - i) : Rat(0);
      Rat b3 = (i > j && i <= kk - 1) ? a(j + kk - i) : Rat(0);
      if (i == kk && j == kk) b1 += a(2 * kk + 1);
      if (i == kk + 1 && j == kk) {
        b1 -= a(2 * kk + 1);
        b2 = a(kk + 1);
      }
      x(i - 1, k + j) = b1 + b2 + b3;
    }
  }
  return x;
}

}  // namespace

RatMatrix regular_nilpotent(const SymmetricPair& pair) {
  const std::size_t p = pair.p();
  const std::size_t q = pair.q();
  switch (pair.family()) {
    case Family::GL:
      return staircase_element(p, q);
    case Family::SP: {
      if (p == q) return off_diagonal(shift_matrix(q), shift_matrix(q));
      const std::size_t r = (p - q) / 2;
      RatMatrix a(p, q);
      a.set_block(r - 1, 0, RatMatrix::identity(q));
      RatMatrix b(q, p);
      b.set_block(0, r + 1, Rat(r % 2 == 0 ? 1 : -1) * RatMatrix::identity(q));
      return off_diagonal(a, b);
    }
    case Family::ORTH: {
      if (p == q + 1) return staircase_element(p, q);
      const RatMatrix es = shifted_identity(q);
      return off_diagonal(es, orth_partner(es));
    }
  }
  throw std::logic_error("unreachable family");
}

std::vector<RatMatrix> centralizer(const SymmetricPair& pair, const RatMatrix& x) {
  if (x.rows() != pair.n() || x.cols() != pair.n()) {
    throw DimensionError("centralizer: element has the wrong size");
  }
  const auto& basis = pair.basis_minus();
  std::vector<RatMatrix> images;
  images.reserve(basis.size());
  for (const auto& b : basis) images.push_back(bracket(x, b));
  std::vector<RatMatrix> out;
  for (const RatVector& v : kernel_vectors(columns_of(images))) out.push_back(combine(v, basis));
  return out;
}

bool is_relatively_regular(const SymmetricPair& pair, const RatMatrix& x) {
  if (!pair.in_eigenspace(x, -1)) throw MembershipError("element is not in g(-1)");
  return centralizer(pair, x).size() == pair.rank_theta();
}

std::vector<RatMatrix> closed_form_centralizer(const SymmetricPair& pair) {
  const std::size_t p = pair.p();
  const std::size_t q = pair.q();
  std::vector<RatMatrix> out;
  switch (pair.family()) {
    case Family::GL:
      for (std::size_t m = 0; m < q; ++m)
        out.push_back(staircase_centralizer(p, q, matrix_power(shift_matrix(q), m)));
      return out;
    case Family::SP: {
      if (p == q) {
        // A = B = odd powers of eps_q.
        for (std::size_t m = 1; m < q; m += 2) {
          const RatMatrix t = matrix_power(shift_matrix(q), m);
          out.push_back(off_diagonal(t, t));
        }
        return out;
      }
      const std::size_t r = (p - q) / 2;
      const Rat sign = r % 2 == 0 ? 1 : -1;
      for (std::size_t m = 0; m < q; m += 2) {
        const RatMatrix t = matrix_power(shift_matrix(q), m);
        RatMatrix a(p, q);
        a.set_block(r - 1, 0, t);
        RatMatrix b(q, p);
        b.set_block(0, r + 1, sign * t);
        out.push_back(off_diagonal(a, b));
      }
      return out;
    }
    case Family::ORTH: {
      if (p == q + 1) {
        for (std::size_t m = 0; m < q; ++m)
          out.push_back(staircase_centralizer(p, q, matrix_power(shift_matrix(q), m)));
        return out;
      }
      if (q == 1) {
        // e = 0 here, so the centralizer is all of g(-1).
        const RatMatrix a = RatMatrix::identity(1);
        out.push_back(off_diagonal(a, orth_partner(a)));
        return out;
      }
      const std::size_t k = q / 2;
      const std::size_t params = q % 2 == 0 ? 2 * k : 2 * k + 1;
      for (std::size_t m = 1; m <= params; ++m) {
        const Param a = [m](long idx) { return Rat(idx == static_cast<long>(m) ? 1 : 0); };
        const RatMatrix x = q % 2 == 0 ? orth_even_block(k, a) : orth_odd_block(k, a);
        out.push_back(off_diagonal(x, orth_partner(x)));
      }
      return out;
    }
  }
  throw std::logic_error("unreachable family");
}

NilpotentWitness make_witness(const SymmetricPair& pair) {
  NilpotentWitness w;
  w.e = regular_nilpotent(pair);
  w.nilp_index = nilpotency_index(w.e).value_or(0);
  w.centralizer_basis = centralizer(pair, w.e);
  w.centralizer_dim = w.centralizer_basis.size();
  return w;
}

bool same_span(const std::vector<RatMatrix>& a, const std::vector<RatMatrix>& b) {
  std::vector<RatMatrix> both = a;
  both.insert(both.end(), b.begin(), b.end());
  if (both.empty()) return true;
  const std::size_t ra = a.empty() ? 0 : rank(columns_of(a));
  const std::size_t rb = b.empty() ? 0 : rank(columns_of(b));
  const std::size_t rab = rank(columns_of(both));
  return ra == rab && rb == rab;
}

}  // namespace kslice
