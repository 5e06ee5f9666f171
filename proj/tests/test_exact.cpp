#include <doctest.h>

#include <random>
#include <sstream>

#include "kslice/exact.hpp"

using namespace kslice;

namespace {

RatMatrix sample4() {
  RatMatrix m = RatMatrix::from_ints({{0, 2, -3, 0}, {0, 0, 5, 0}, {2, 1, 1, -1}, {0, 0, -2, 3}});
  m(0, 0) = Rat(1, 2);
  m(1, 0) = Rat(-1, 3);
  m(1, 3) = Rat(7, 4);
  m(3, 1) = Rat(5, 6);
  return m;
}

RatMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = Rat(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 4) + 1);
      m(i, j).canonicalize();
    }
  return m;
}

// det(tI - M) at t = 0..n, interpolated back to coefficients. Uses only the
// determinant, so it is independent of the Berkowitz recurrence.
Poly charpoly_by_interpolation(const RatMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<Rat> values(n + 1);
  for (std::size_t t = 0; t <= n; ++t) {
    RatMatrix a = -m;
    for (std::size_t i = 0; i < n; ++i) a(i, i) += Rat(static_cast<long>(t));
    values[t] = determinant(a);
  }
  // Solve the Vandermonde system.
  RatMatrix v(n + 1, n + 1);
  for (std::size_t t = 0; t <= n; ++t) {
    Rat pw = 1;
    for (std::size_t k = 0; k <= n; ++k) {
      v(t, k) = pw;
      pw *= Rat(static_cast<long>(t));
    }
  }
  return Poly{*solve(v, values)};
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rat("3") == Rat(3));
  CHECK(parse_rat("-6/4") == Rat(-3, 2));
  CHECK(parse_rat("+1/3") == Rat(1, 3));
  CHECK(format_rat(make_rat(-6, 4)) == "-3/2");
  CHECK(format_rat(Rat(5)) == "5");
  CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("2/-3"), std::invalid_argument);
}

TEST_CASE("kernel basis") {
  auto k = kernel_basis(RatMatrix(2, 2));
  REQUIRE(k.size() == 2);
  CHECK(k[0] == RatMatrix::from_ints({{1}, {0}}));
  CHECK(k[1] == RatMatrix::from_ints({{0}, {1}}));

  CHECK(kernel_basis(RatMatrix::identity(3)).empty());

  k = kernel_basis(RatMatrix::from_ints({{1, 2}, {2, 4}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == RatMatrix::from_ints({{-2}, {1}}));

  RatMatrix n = RatMatrix::from_ints({{1, 2, 3, 4, 5}, {2, 4, 6, 8, 10}, {1, 0, 1, 0, 1}, {0, 1, 0, 2, 0}});
  n(3, 0) = Rat(1, 2);
  n(3, 2) = Rat(3, 2);
  n(3, 4) = Rat(5, 2);
  const auto vs = kernel_vectors(n);
  REQUIRE(vs.size() == 3);
  CHECK(vs[0] == RatVector{-1, -1, 1, 0, 0});
  CHECK(vs[1] == RatVector{0, -2, 0, 1, 0});
  CHECK(vs[2] == RatVector{-1, -2, 0, 0, 1});

  const Echelon ech = row_reduce(n);
  CHECK(ech.pivots == std::vector<std::size_t>{0, 1});
  CHECK(ech.reduced == RatMatrix::from_ints({{1, 0, 1, 0, 1}, {0, 1, 1, 2, 2}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}));
}

TEST_CASE("solve") {
  const RatVector b{3, Rat(-1, 2)};
  auto x = solve(RatMatrix::identity(2), b);
  REQUIRE(x);
  CHECK(*x == b);

  CHECK_FALSE(solve(RatMatrix::from_ints({{1, 1}, {1, 1}}), RatVector{1, 2}));

  x = solve(RatMatrix::from_ints({{1, 2}, {2, 4}}), RatVector{1, 2});
  REQUIRE(x);
  CHECK(*x == RatVector{1, 0});

  CHECK_THROWS_AS(solve(RatMatrix::identity(2), RatVector{1}), DimensionError);
}

TEST_CASE("determinant, inverse and characteristic polynomial against frozen values") {
  const RatMatrix m = sample4();
  CHECK(determinant(m) == Rat(923, 16));
  const auto inv = inverse(m);
  REQUIRE(inv);
  CHECK((*inv)(0, 0) == Rat(-386, 923));
  CHECK((*inv)(0, 1) == Rat(-216, 923));
  CHECK((*inv)(0, 2) == Rat(522, 923));
  CHECK((*inv)(0, 3) == Rat(300, 923));
  CHECK(charpoly(m).coeffs == RatVector{Rat(923, 16), Rat(-237, 16), Rat(77, 24), Rat(-9, 2), 1});

  RatMatrix h(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) h(i, j) = Rat(1, static_cast<long>(i + j + 1));
  CHECK(determinant(h) == Rat(1, 266716800000L));
  CHECK(charpoly(h).coeffs == RatVector{Rat(-1, 266716800000L), Rat(61501, 53343360000L),
                                        Rat(-852401, 222264000), Rat(735781, 2116800),
                                        Rat(-563, 315), 1});
}

TEST_CASE("characteristic polynomial examples") {
  CHECK(charpoly(RatMatrix(2, 2)).coeffs == RatVector{0, 0, 1});
  CHECK(charpoly(RatMatrix::identity(2)).coeffs == RatVector{1, -2, 1});
  const Poly p = charpoly(RatMatrix::from_ints({{0, 5}, {1, 0}}));
  CHECK(p.coeffs == RatVector{-5, 0, 1});
  CHECK(format_poly(p) == "t^2 - 5");
  CHECK(charpoly(RatMatrix(0, 0)).coeffs == RatVector{1});
}

TEST_CASE("characteristic polynomial agrees with determinant interpolation") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 7; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const RatMatrix m = random_matrix(rng, n, n);
      CHECK(charpoly(m) == charpoly_by_interpolation(m));
    }
  }
}

TEST_CASE("linear algebra properties on random matrices") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6, k = rng() % 4;
    // Product of thin factors gives rank deficiency on purpose.
    const RatMatrix m = k == 0 ? random_matrix(rng, r, c)
                               : random_matrix(rng, r, k) * random_matrix(rng, k, c);
    const auto kernel = kernel_basis(m);
    CHECK(rank(m) + kernel.size() == c);
    CHECK(rank(m) == rank(m.transpose()));
    for (const auto& v : kernel) CHECK((m * v).is_zero());

    RatVector x0(c);
    for (auto& x : x0) x = Rat(static_cast<long>(rng() % 7) - 3);
    const RatVector b = m * x0;
    const auto x = solve(m, b);
    REQUIRE(x);
    CHECK(m * std::span<const Rat>(*x) == b);

    if (r == c) {
      const auto inv = inverse(m);
      CHECK(inv.has_value() == (sgn(determinant(m)) != 0));
      if (inv) {
        CHECK(m * *inv == RatMatrix::identity(r));
        CHECK(*inv * m == RatMatrix::identity(r));
      }
      // Similarity invariance of the characteristic polynomial.
      RatMatrix g = RatMatrix::identity(r);
      if (r > 1) g(0, r - 1) = Rat(3, 2);
      CHECK(charpoly(g * m * *inverse(g)) == charpoly(m));
    }
  }
}

TEST_CASE("nilpotency index") {
  CHECK(nilpotency_index(RatMatrix(3, 3)) == 1u);
  CHECK_FALSE(nilpotency_index(RatMatrix::identity(3)));
  CHECK(nilpotency_index(RatMatrix::from_ints({{0, 0, 1}, {0, 0, 0}, {0, 1, 0}})) == 3u);
}

TEST_CASE("matrix text format") {
  const RatMatrix m = sample4();
  const std::string text = format_matrix(m);
  CHECK(parse_matrix(text) == m);
  std::istringstream in("2 2\n1 -1/2\n0 3\n");
  CHECK(read_matrix(in) == RatMatrix::from_ints({{1, 0}, {0, 3}}) + [] {
          RatMatrix d(2, 2);
          d(0, 1) = Rat(-1, 2);
          return d;
        }());
  CHECK_THROWS_AS(parse_matrix("2 2\n1 2 3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_matrix("2 2\n1 2 3 4 5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_matrix("two 2"), std::invalid_argument);
}

TEST_CASE("dimension errors") {
  CHECK_THROWS_AS(RatMatrix(2, 3) * RatMatrix(2, 3), DimensionError);
  CHECK_THROWS_AS(RatMatrix(2, 3) + RatMatrix(3, 2), DimensionError);
  CHECK_THROWS_AS(determinant(RatMatrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(charpoly(RatMatrix(2, 3)), DimensionError);
}
