#include <doctest.h>

#include "kslice/nilpotent.hpp"

using namespace kslice;

TEST_CASE("shift and corner matrices") {
  CHECK(shift_matrix(3) == RatMatrix::from_ints({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));
  CHECK(corner_matrix(2, 3) == RatMatrix::from_ints({{0, 0, 0}, {1, 0, 0}}));
  CHECK(off_diagonal(RatMatrix::from_ints({{1}, {2}}), RatMatrix::from_ints({{3, 4}})) ==
        RatMatrix::from_ints({{0, 0, 1}, {0, 0, 2}, {3, 4, 0}}));
}

TEST_CASE("regular nilpotent examples") {
  const RatMatrix e21 = RatMatrix::from_ints({{0, 0, 1}, {0, 0, 0}, {0, 1, 0}});
  CHECK(regular_nilpotent(make_pair(Family::GL, 2, 1)) == e21);
  CHECK(regular_nilpotent(make_pair(Family::ORTH, 2, 1)) == e21);

  const RatMatrix sp = regular_nilpotent(make_pair(Family::SP, 4, 2));
  CHECK(sp.block(0, 4, 4, 2) == RatMatrix::from_ints({{1, 0}, {0, 1}, {0, 0}, {0, 0}}));
  CHECK(sp.block(4, 0, 2, 4) == RatMatrix::from_ints({{0, 0, -1, 0}, {0, 0, 0, -1}}));
  CHECK(sp.block(0, 0, 4, 4).is_zero());
  CHECK(sp.block(4, 4, 2, 2).is_zero());

  // p = q symplectic: A = B = eps_q.
  const RatMatrix sp22 = regular_nilpotent(make_pair(Family::SP, 2, 2));
  CHECK(sp22 == off_diagonal(shift_matrix(2), shift_matrix(2)));

  // o(1,1): the shift falls off the matrix.
  CHECK(regular_nilpotent(make_pair(Family::ORTH, 1, 1)).is_zero());
}

TEST_CASE("centralizer dimensions match the rank of theta") {
  for (long p = 1; p <= 5; ++p)
    for (long q = 1; q <= p; ++q) {
      const auto pair = make_pair(Family::GL, p, q);
      CHECK(centralizer(pair, regular_nilpotent(pair)).size() == static_cast<std::size_t>(q));
    }
  for (long q = 2; q <= 6; q += 2)
    for (long p = q; p <= 6; p += 2) {
      const auto pair = make_pair(Family::SP, p, q);
      CHECK(centralizer(pair, regular_nilpotent(pair)).size() == static_cast<std::size_t>(q / 2));
    }
  for (long q = 1; q <= 5; ++q)
    for (long p : {q, q + 1}) {
      const auto pair = make_pair(Family::ORTH, p, q);
      CHECK(centralizer(pair, regular_nilpotent(pair)).size() == static_cast<std::size_t>(q));
    }
}

TEST_CASE("centralizer of zero is all of g(-1)") {
  const auto pair = make_pair(Family::ORTH, 3, 2);
  CHECK(same_span(centralizer(pair, RatMatrix(5, 5)), pair.basis_minus()));
  CHECK(centralizer(pair, RatMatrix(5, 5)).size() == 6);
}

TEST_CASE("centralizer elements commute and lie in g(-1)") {
  for (auto [fam, p, q] : {std::tuple{Family::GL, 4L, 3L}, std::tuple{Family::ORTH, 4L, 4L},
                           std::tuple{Family::ORTH, 5L, 5L}, std::tuple{Family::SP, 6L, 4L}}) {
    const auto pair = make_pair(fam, p, q);
    const RatMatrix e = regular_nilpotent(pair);
    for (const auto& z : centralizer(pair, e)) {
      CHECK(pair.in_eigenspace(z, -1));
      CHECK(bracket(e, z).is_zero());
    }
  }
}

TEST_CASE("relative regularity") {
  CHECK_FALSE(is_relatively_regular(make_pair(Family::GL, 2, 1), RatMatrix(3, 3)));
  CHECK(is_relatively_regular(make_pair(Family::ORTH, 1, 1), RatMatrix(2, 2)));
  for (auto [fam, p, q] : {std::tuple{Family::GL, 3L, 1L}, std::tuple{Family::ORTH, 3L, 2L},
                           std::tuple{Family::SP, 4L, 4L}}) {
    const auto pair = make_pair(fam, p, q);
    CHECK(is_relatively_regular(pair, regular_nilpotent(pair)));
  }
  CHECK_THROWS_AS(is_relatively_regular(make_pair(Family::GL, 2, 1), RatMatrix::identity(3)),
                  MembershipError);
}

TEST_CASE("closed-form centralizers span the computed ones") {
  for (long p = 1; p <= 5; ++p)
    for (long q = 1; q <= p; ++q) {
      const auto pair = make_pair(Family::GL, p, q);
      CHECK(same_span(centralizer(pair, regular_nilpotent(pair)), closed_form_centralizer(pair)));
    }
  for (long q = 1; q <= 7; ++q)
    for (long p : {q, q + 1}) {
      CAPTURE(p);
      CAPTURE(q);
      const auto pair = make_pair(Family::ORTH, p, q);
      CHECK(same_span(centralizer(pair, regular_nilpotent(pair)), closed_form_centralizer(pair)));
    }
  for (long q = 2; q <= 6; q += 2)
    for (long p = q; p <= 8; p += 2) {
      const auto pair = make_pair(Family::SP, p, q);
      CHECK(same_span(centralizer(pair, regular_nilpotent(pair)), closed_form_centralizer(pair)));
    }
}

TEST_CASE("symplectic p = q centralizer is spanned by odd powers of the shift") {
  // q = 2: only eps itself, so the centralizer is the line through e.
  const auto pair = make_pair(Family::SP, 2, 2);
  const RatMatrix e = regular_nilpotent(pair);
  const auto c = centralizer(pair, e);
  REQUIRE(c.size() == 1);
  CHECK(same_span(c, {e}));
  // A = diag(1, 1) with its partner block is in g(-1) but does not commute with e.
  const RatMatrix j = alternating_anti_identity(2);
  const RatMatrix id = off_diagonal(RatMatrix::identity(2), j * j);
  CHECK(pair.in_eigenspace(id, -1));
  CHECK_FALSE(bracket(e, id).is_zero());
}

TEST_CASE("witness") {
  const auto pair = make_pair(Family::GL, 2, 1);
  const NilpotentWitness w = make_witness(pair);
  CHECK(w.nilp_index == 3);
  CHECK(w.centralizer_dim == 1);
  CHECK(w.centralizer_basis.size() == 1);
}

TEST_CASE("same_span") {
  const RatMatrix a = RatMatrix::from_ints({{1, 0}, {0, 0}});
  const RatMatrix b = RatMatrix::from_ints({{0, 1}, {0, 0}});
  CHECK(same_span({a, b}, {a + b, a - b}));
  CHECK_FALSE(same_span({a}, {b}));
  CHECK_FALSE(same_span({a}, {a, b}));
  CHECK(same_span({}, {}));
}
