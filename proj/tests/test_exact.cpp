#include <random>

#include "cubepack/exact.hpp"
#include "doctest.h"

using namespace cubepack;

namespace {

Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

// N as a polynomial in the indeterminate.
const Polynomial N = Polynomial::linear(0);

}  // namespace

TEST_CASE("rational formatting and parsing") {
  CHECK(to_string(q(6, 4)) == "3/2");
  CHECK(to_string(q(-4, 2)) == "-2");
  CHECK(parse_rational("10/4") == q(5, 2));
  CHECK(parse_rational(" -7 ") == q(-7));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("rational functions normalize") {
  const RationalFunction a(N, N + Polynomial::constant(1));
  const RationalFunction b(Polynomial::constant(1), N + Polynomial::constant(1));
  CHECK(a + b == RationalFunction(1));
  const RationalFunction c(N * N - Polynomial::constant(1), N - Polynomial::constant(1));
  CHECK(c == RationalFunction(N + Polynomial::constant(1)));
  CHECK(c.den() == Polynomial::constant(1));
  CHECK_THROWS_AS(a / RationalFunction(0), ArithmeticError);
}

TEST_CASE("face probability by direct substitution") {
  // faces of dimension 2, 1, 1, 0 at N = 3: weights 4, 2, 2, 1
  const Polynomial x = N - Polynomial::constant(1);
  const Polynomial den = x * x + x * Rational(2) + Polynomial::constant(1);
  const RationalFunction p(x * x, den);
  CHECK(p(3) == q(4, 9));
}

TEST_CASE("expansion in 1/(N-1)") {
  // 1 + 2/(N+1) = 1 + 2x/(1+2x) with x = 1/(N-1)
  const RationalFunction f = RationalFunction(1) + RationalFunction(Polynomial::constant(2), N + Polynomial::constant(1));
  const Series s = expand(f, 4);
  REQUIRE(s.order() == 4);
  CHECK(s[0] == 1);
  CHECK(s[1] == 2);
  CHECK(s[2] == -4);
  CHECK(s[3] == 8);
  CHECK(s[4] == -16);
  CHECK(s[3] == q(28 - 153 + 149, 3));

  const Series one = expand(RationalFunction(1), 3);
  CHECK(one == Series::constant(3, 1));

  CHECK_THROWS_AS(expand(RationalFunction(N), 2), ArithmeticError);
}

TEST_CASE("expand then evaluate tracks the exact value") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coef(-5, 5);
  const Rational big = 1000000;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> num, den;
    const int dd = 1 + trial % 3;
    for (int k = 0; k <= dd; ++k) {
      num.push_back(coef(rng));
      den.push_back(coef(rng));
    }
    den.back() = 1 + trial % 4;
    const RationalFunction f{Polynomial(num), Polynomial(den)};
    if (f.den()(big) == 0) continue;
    const int K = 4;
    const Series s = expand(f, K);
    const Rational x = Rational(1) / (big - 1);
    Rational err = f(big) - s.evaluate(x);
    if (err < 0) err = -err;
    // the remainder is O(x^(K+1)); allow a generous constant
    Rational bound = 1;
    for (int k = 0; k <= K; ++k) bound *= x;
    CHECK(err <= bound * 1000000);
  }
}

TEST_CASE("interpolation") {
  auto p = interpolate({{1, 2}, {2, 4}, {3, 6}}, 1);
  CHECK(p == Polynomial({0, 2}));
  CHECK(p.to_string() == "2n");
  p = interpolate({{1, -4}, {2, 0}, {3, 12}}, 2);
  CHECK(p == Polynomial({0, -8, 4}));
  CHECK(p.to_string() == "4n^2-8n");
  p = interpolate({{1, 5}, {2, 5}, {7, 5}}, 0);
  CHECK(p == Polynomial({5}));
  CHECK_THROWS_AS(interpolate({{1, 1}, {2, 2}, {3, 5}}, 1), ArithmeticError);

  const Polynomial c3 = Polynomial({0, 149, -153, 28}) * q(1, 3);
  CHECK(c3.to_string() == "(28n^3-153n^2+149n)/3");
  std::vector<std::pair<Rational, Rational>> pts;
  for (int n = 1; n <= 5; ++n) pts.emplace_back(n, c3(n));
  CHECK(interpolate(pts, 3) == c3);
}

TEST_CASE("field axioms on random rationals") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-50, 50);
  auto r = [&] {
    long b = d(rng);
    if (b == 0) b = 1;
    return q(d(rng), b);
  };
  for (int k = 0; k < 200; ++k) {
    const Rational a = r(), b = r(), c = r();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
  for (int k = 0; k < 50; ++k) {
    const Polynomial a({d(rng), d(rng), d(rng)}), b({d(rng), d(rng)}), c({d(rng), d(rng), d(rng), 1});
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    auto [quo, rem] = Polynomial::divmod(a * c + b, c);
    CHECK(quo * c + rem == a * c + b);
    CHECK(rem.degree() < c.degree());
  }
}

TEST_CASE("series arithmetic") {
  const Series x = Series::monomial(5, 1);
  Series one_minus_x = Series::constant(5, 1) + x * Rational(-1);
  const Series inv = one_minus_x.inverse();
  for (int k = 0; k <= 5; ++k) CHECK(inv[k] == 1);
  CHECK((inv * one_minus_x) == Series::constant(5, 1));
  CHECK(x.valuation() == 1);
  CHECK(Series(3).valuation() == -1);
  CHECK_THROWS_AS(x.inverse(), ArithmeticError);
}
