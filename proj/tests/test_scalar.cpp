#include <cmath>

#include "cbtau/errors.hpp"
#include "cbtau/gamma.hpp"
#include "cbtau/pit.hpp"
#include "doctest.h"

using namespace cbtau;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("6/4") == rational(3, 2));
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-0.25")) == "-1/4");
  CHECK(to_string(Rational(5)) == "5");
  CHECK_THROWS_AS(parse_rational("x"), UsageError);
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
}

TEST_CASE("quadratic extension") {
  QuadExt r2 = QuadExt::sqrt2();
  CHECK(r2 * r2 == QuadExt(2));
  QuadExt x(rational(1, 3), rational(-2, 5));
  CHECK(x * x.inverse() == QuadExt(1));

  RationalSampler s(11);
  for (int i = 0; i < 20; ++i) {
    QuadExt a(s.next(), s.next()), b(s.next(), s.next()), c(s.next(), s.next());
    CHECK((a * b + c).conjugate() == a.conjugate() * b.conjugate() + c.conjugate());
  }
}

TEST_CASE("pit_check") {
  auto sq = [](const ParameterPoint& p) -> Rational { return p.at("x") * p.at("x") - 1; };
  CHECK(pit_check(sq, sq, {"x"}, 5, 1).agree);
  auto a = [](const ParameterPoint& p) -> Rational {
    Rational x = p.at("x");
    return (x + 1) * (x + 1);
  };
  auto b = [](const ParameterPoint& p) -> Rational {
    Rational x = p.at("x");
    return x * x + 2 * x + 1;
  };
  CHECK(pit_check(a, b, {"x"}, 5, 2).agree);
  auto id = [](const ParameterPoint& p) -> Rational { return p.at("x"); };
  auto sqr = [](const ParameterPoint& p) -> Rational { return p.at("x") * p.at("x"); };
  auto res = pit_check(id, sqr, {"x"}, 5, 3);
  CHECK_FALSE(res.agree);
  REQUIRE(res.witness);
  Rational w = res.witness->at("x");
  CHECK(w != w * w);

  auto never = [](const ParameterPoint&) -> Rational { throw NonGenericPoint("no"); };
  CHECK_THROWS_AS(pit_check(never, id, {"x"}, 3, 4), DomainError);
}

TEST_CASE("BigFloat precision bookkeeping") {
  BigFloat a(rational(1, 3), 80), b(rational(1, 7), 55);
  CHECK((a + b).digits() == 55);
  DigitsScope scope(70);
  CHECK(BigFloat(rational(1, 2)).digits() == 70);
}

namespace {
BigFloat mpfr_oracle(const Rational& z, int digits) {
  BigFloat x(z, digits);
  mpfr_gamma(x.get(), x.get(), MPFR_RNDN);
  return x;
}

double rel_err(const BigFloat& a, const BigFloat& b) {
  BigFloat d = abs(a - b) / abs(b);
  return d.is_zero() ? -1000 : std::log10(std::fabs(d.to_double()) + 1e-300);
}
}  // namespace

TEST_CASE("gamma_hp against independent values") {
  const int D = 60;
  CHECK(gamma_hp(BigFloat(1L, D), D) == BigFloat(1L, D));
  CHECK(gamma_hp(Rational(5), D) == BigFloat(24L, D));
  BigFloat sqrt_pi = sqrt(BigFloat::pi(D));
  CHECK(rel_err(gamma_hp(rational(1, 2), D), sqrt_pi) < -(D - 3));
  CHECK(rel_err(gamma_hp(BigFloat(1L, D), D), BigFloat(1L, D)) < -(D - 3));
  for (Rational z : {rational(7, 3), rational(-5, 2), rational(1, 97), rational(101, 4), rational(-13, 7)})
    CHECK(rel_err(gamma_hp(z, D), mpfr_oracle(z, D + 10)) < -(D - 3));
  CHECK_THROWS_AS(gamma_hp(Rational(0), D), DomainError);
  CHECK_THROWS_AS(gamma_hp(BigFloat(-3L, D), D), DomainError);

  RationalSampler s(5);
  for (int i = 0; i < 10; ++i) {
    Rational z = rational(s.uniform(1, 9999), 1000);
    BigFloat lhs = gamma_hp(z + 1, D);
    BigFloat rhs = BigFloat(z, D) * gamma_hp(z, D);
    CHECK(rel_err(lhs, rhs) < -(D - 5));
  }
}

TEST_CASE("Barnes shift ratios") {
  const int D = 60;
  CHECK(std::get<Rational>(barnes_shift_ratio(rational(3, 7), 0, D)) == 1);
  CHECK(std::get<Rational>(barnes_shift_ratio(Rational(1), 2, D)) == 2);
  BigFloat g32 = std::get<BigFloat>(barnes_shift_ratio(rational(1, 2), 1, D));
  CHECK(rel_err(g32, gamma_hp(rational(3, 2), D)) < -(D - 3));
  CHECK_THROWS_AS(barnes_shift_ratio(Rational(-2), 1, D), DomainError);

  RationalSampler s(9);
  for (int t = 0; t < 5; ++t) {
    Rational x = s.next() + rational(1, 1000);
    for (int n = -3; n <= 3; ++n)
      for (int m = -3; m <= 3; ++m) {
        GammaProduct lhs = barnes_shift_product(x, n);
        lhs *= barnes_shift_product(x + n, m);
        CHECK(lhs.same_value(barnes_shift_product(x, n + m)));
      }
  }
  // Gamma(x+3)/Gamma(x) folds to a rational
  GammaProduct g;
  g.add(rational(1, 3) + 3, 1);
  g.add(rational(1, 3), -1);
  CHECK(g.is_rational());
  CHECK(std::get<Rational>(g.evaluate(D)) == rational(1, 3) * rational(4, 3) * rational(7, 3));
}
