#include "kslice/sl2.hpp"

#include <optional>

#include "kslice/nilpotent.hpp"

namespace kslice {

namespace {

// Writes the entries of m into column `col` of `sys`, starting at row `row0`.
void put_column(RatMatrix& sys, std::size_t row0, std::size_t col, const RatMatrix& m) {
  const auto& v = m.entries();
  for (std::size_t r = 0; r < v.size(); ++r)
    if (sgn(v[r]) != 0) sys(row0 + r, col) = v[r];
}

// Rows of the f-system: [e, f] - h and [h, f] + 2f, over the given basis.
RatMatrix f_system(const RatMatrix& e, const RatMatrix& h, const std::vector<RatMatrix>& basis) {
  const std::size_t nn = e.rows() * e.cols();
  RatMatrix sys(2 * nn, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    put_column(sys, 0, k, bracket(e, basis[k]));
    put_column(sys, nn, k, bracket(h, basis[k]) + Rat(2) * basis[k]);
  }
  return sys;
}

}  // namespace

std::optional<RatMatrix> solve_for_f(const RatMatrix& e, const RatMatrix& h,
                                     const std::vector<RatMatrix>& basis) {
  const std::size_t nn = e.rows() * e.cols();
  RatVector rhs(2 * nn);
  for (std::size_t r = 0; r < nn; ++r) rhs[r] = h.entries()[r];
  const auto coords = solve(f_system(e, h, basis), rhs);
  if (!coords) return std::nullopt;
  return combine(*coords, basis);
}

Sl2Triple complete_triple(const SymmetricPair& pair, const RatMatrix& e) {
  if (!pair.in_eigenspace(e, -1)) throw NoTriple("e is not in g(-1)");
  if (e.is_zero()) throw NoTriple("e = 0 cannot be part of an sl2-triple");
  if (!nilpotency_index(e)) throw NoTriple("e is not nilpotent");

  const auto& plus = pair.basis_plus();
  const auto& g = pair.basis_g();
  const std::size_t nn = pair.n() * pair.n();

  // Unknowns: h-coordinates over g(1), then y-coordinates over g.
  RatMatrix sys(2 * nn, plus.size() + g.size());
  for (std::size_t i = 0; i < plus.size(); ++i) {
    put_column(sys, 0, i, bracket(plus[i], e));
    put_column(sys, nn, i, -plus[i]);
  }
  for (std::size_t j = 0; j < g.size(); ++j) put_column(sys, nn, plus.size() + j, bracket(e, g[j]));
  RatVector rhs(2 * nn);
  for (std::size_t r = 0; r < nn; ++r) rhs[r] = 2 * e.entries()[r];

  const auto sol = solve(sys, rhs);
  if (!sol) throw NoTriple("no h in g(1) with [h,e] = 2e inside the image of ad_e");
  const RatVector hc(sol->begin(), sol->begin() + static_cast<long>(plus.size()));
  const RatMatrix h = combine(hc, plus);

  auto f = solve_for_f(e, h, pair.basis_minus());
  if (!f) throw NoTriple("no f in g(-1) with [e,f] = h and [h,f] = -2f");

  Sl2Triple t{e, std::move(*f), h};
  if (bracket(t.h, t.e) != Rat(2) * t.e || bracket(t.h, t.f) != Rat(-2) * t.f ||
      bracket(t.e, t.f) != t.h || t.h.is_zero() || t.f.is_zero()) {
    throw NoTriple("solved triple failed exact verification");
  }
  return t;
}

std::size_t f_solution_dimension(const SymmetricPair& pair, const RatMatrix& e,
                                 const RatMatrix& h) {
  return kernel_vectors(f_system(e, h, pair.basis_minus())).size();
}

CheckList verify_triple(const SymmetricPair& pair, const Sl2Triple& t) {
  CheckList out;
  const bool shapes_ok = t.e.rows() == pair.n() && t.e.is_square() && t.f.rows() == pair.n() &&
                         t.f.is_square() && t.h.rows() == pair.n() && t.h.is_square();
  if (!shapes_ok) {
    for (const char* name : {"nonzero", "[h,e]=2e", "[h,f]=-2f", "[e,f]=h", "h in g(1)",
                             "e in g(-1)", "f in g(-1)", "f relatively regular"}) {
      out.emplace_back(name, false);
    }
    return out;
  }
  out.emplace_back("nonzero", !t.e.is_zero() && !t.f.is_zero() && !t.h.is_zero());
  out.emplace_back("[h,e]=2e", bracket(t.h, t.e) == Rat(2) * t.e);
  out.emplace_back("[h,f]=-2f", bracket(t.h, t.f) == Rat(-2) * t.f);
  out.emplace_back("[e,f]=h", bracket(t.e, t.f) == t.h);
  out.emplace_back("h in g(1)", pair.in_eigenspace(t.h, 1));
  const bool e_minus = pair.in_eigenspace(t.e, -1);
  const bool f_minus = pair.in_eigenspace(t.f, -1);
  out.emplace_back("e in g(-1)", e_minus);
  out.emplace_back("f in g(-1)", f_minus);
  bool f_regular = false;
  if (f_minus) {
    const bool e_regular = e_minus && is_relatively_regular(pair, t.e);
    f_regular = !e_regular || is_relatively_regular(pair, t.f);
  }
  out.emplace_back("f relatively regular", f_regular);
  return out;
}

bool all_pass(const CheckList& checks) {
  for (const auto& [name, ok] : checks)
    if (!ok) return false;
  return true;
}

}  // namespace kslice
