#pragma once

// Completion of a nilpotent e in g(-1) to a rational sl2-triple (e, f, h)
// with h in g(1) and f in g(-1).

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kslice/exact.hpp"
#include "kslice/pairs.hpp"

namespace kslice {

struct Sl2Triple {
  RatMatrix e;
  RatMatrix f;
  RatMatrix h;
};

class NoTriple : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (i) Solve [h, e] = 2e, [e, y] = h jointly for h in g(1), y in g, taking
/// the canonical solution. (ii) Solve [e, f] = h, [h, f] = -2f for f in
/// g(-1). (iii) Check every relation exactly. Throws NoTriple.
Sl2Triple complete_triple(const SymmetricPair& pair, const RatMatrix& e);

/// Solution set dimension of the homogeneous part of step (ii); zero means
/// f is uniquely determined by (e, h).
std::size_t f_solution_dimension(const SymmetricPair& pair, const RatMatrix& e,
                                 const RatMatrix& h);

/// Step (ii) alone, solving over `basis` (a basis of g(-1) in any order).
std::optional<RatMatrix> solve_for_f(const RatMatrix& e, const RatMatrix& h,
                                     const std::vector<RatMatrix>& basis);

using CheckList = std::vector<std::pair<std::string, bool>>;

/// Independent evaluation of each triple invariant. Check names:
/// "nonzero", "[h,e]=2e", "[h,f]=-2f", "[e,f]=h", "h in g(1)",
/// "e in g(-1)", "f in g(-1)", "f relatively regular".
CheckList verify_triple(const SymmetricPair& pair, const Sl2Triple& t);

bool all_pass(const CheckList& checks);

}  // namespace kslice
