#include <doctest.h>

#include <algorithm>

#include "kslice/nilpotent.hpp"
#include "kslice/sl2.hpp"

using namespace kslice;

namespace {

CheckList::value_type find(const CheckList& checks, const std::string& name) {
  for (const auto& c : checks)
    if (c.first == name) return c;
  FAIL("missing check " << name);
  return {};
}

}  // namespace

TEST_CASE("standard gl2 triple") {
  const auto pair = make_pair(Family::GL, 1, 1);
  const RatMatrix e = RatMatrix::from_ints({{0, 1}, {0, 0}});
  const Sl2Triple t = complete_triple(pair, e);
  CHECK(t.h == RatMatrix::from_ints({{1, 0}, {0, -1}}));
  CHECK(t.f == RatMatrix::from_ints({{0, 0}, {1, 0}}));
  CHECK(all_pass(verify_triple(pair, t)));
}

TEST_CASE("degenerate inputs") {
  CHECK_THROWS_AS(complete_triple(make_pair(Family::GL, 2, 1), RatMatrix(3, 3)), NoTriple);
  CHECK_THROWS_AS(complete_triple(make_pair(Family::ORTH, 1, 1), RatMatrix(2, 2)), NoTriple);
  // Not in g(-1).
  CHECK_THROWS_AS(complete_triple(make_pair(Family::GL, 1, 1), RatMatrix::identity(2)), NoTriple);
  // In g(-1) but not nilpotent.
  CHECK_THROWS_AS(complete_triple(make_pair(Family::GL, 1, 1),
                                  RatMatrix::from_ints({{0, 1}, {1, 0}})),
                  NoTriple);
}

TEST_CASE("verify_triple notices perturbations") {
  const auto pair = make_pair(Family::ORTH, 2, 1);
  const Sl2Triple t = complete_triple(pair, regular_nilpotent(pair));
  const CheckList ok = verify_triple(pair, t);
  CHECK(all_pass(ok));
  CHECK(ok.size() == 8);

  Sl2Triple doubled = t;
  doubled.f = Rat(2) * t.f;
  const CheckList c1 = verify_triple(pair, doubled);
  CHECK_FALSE(find(c1, "[e,f]=h").second);
  CHECK(find(c1, "[h,f]=-2f").second);

  Sl2Triple shifted = t;
  shifted.h = t.h + t.e;
  CHECK_FALSE(find(verify_triple(pair, shifted), "h in g(1)").second);

  Sl2Triple wrong_shape = t;
  wrong_shape.f = RatMatrix(2, 2);
  CHECK_FALSE(all_pass(verify_triple(pair, wrong_shape)));
}

TEST_CASE("triples exist for the constructed nilpotents") {
  std::vector<std::tuple<Family, long, long>> cases;
  for (long p = 1; p <= 5; ++p)
    for (long q = 1; q <= p; ++q) cases.emplace_back(Family::GL, p, q);
  for (long q = 1; q <= 5; ++q) {
    if (q > 1) cases.emplace_back(Family::ORTH, q, q);
    cases.emplace_back(Family::ORTH, q + 1, q);
  }
  for (long q = 2; q <= 6; q += 2)
    for (long p = q; p <= 6; p += 2) cases.emplace_back(Family::SP, p, q);

  for (auto [fam, p, q] : cases) {
    CAPTURE(family_name(fam));
    CAPTURE(p);
    CAPTURE(q);
    const auto pair = make_pair(fam, p, q);
    const RatMatrix e = regular_nilpotent(pair);
    const Sl2Triple t = complete_triple(pair, e);
    CHECK(all_pass(verify_triple(pair, t)));
    CHECK(is_relatively_regular(pair, t.f));
    CHECK(f_solution_dimension(pair, e, t.h) == 0);

    // f does not depend on the order of the basis it is solved over.
    auto reversed = pair.basis_minus();
    std::reverse(reversed.begin(), reversed.end());
    const auto f2 = solve_for_f(e, t.h, reversed);
    REQUIRE(f2);
    CHECK(*f2 == t.f);
  }
}
