#include <chrono>

#include "cbtau/errors.hpp"
#include "cbtau/pit.hpp"
#include "cbtau/whittaker.hpp"
#include "doctest.h"

using namespace cbtau;

namespace {

Rational rank1_a1(const Rational& th, const Rational& b, const Rational& t0, const Rational& tt) {
  return 2 * (2 * b * b * b - 3 * b * b * th + b * th * th - b * t0 * t0 - b * tt * tt + th * tt * tt);
}

Rational rank1_a2(const Rational& th, const Rational& b, const Rational& t0s, const Rational& tts) {
  // t0s = theta_0^2, tts = theta_t^2
  Rational b2 = b * b, b3 = b2 * b, b4 = b3 * b, th2 = th * th, th3 = th2 * th;
  Rational s = 4 * b3 * b3 - 12 * b4 * b * th + 13 * b4 * th2 - 4 * b4 * t0s - 4 * b4 * tts + 5 * b4 -
               6 * b3 * th3 + 6 * b3 * th * t0s + 10 * b3 * th * tts - 10 * b3 * th + b2 * th2 * th2 -
               2 * b2 * th2 * t0s - 8 * b2 * th2 * tts + 6 * b2 * th2 + b2 * t0s * t0s + 2 * b2 * t0s * tts -
               3 * b2 * t0s + b2 * tts * tts - 3 * b2 * tts + 2 * b * th3 * tts - b * th3 -
               2 * b * th * t0s * tts + b * th * t0s - 2 * b * th * tts * tts + 5 * b * th * tts +
               th2 * tts * tts - 2 * th2 * tts + t0s * tts;
  return 2 * s;
}

Rational rank2_c2(const Rational& th, const Rational& b, const Rational& tt) {
  Rational ts = tt * tt;
  return th * th * b + 2 * th * ts - 6 * th * b * b - 3 * ts * b + 6 * b * b * b;
}

Rational rank2_c4(const Rational& th, const Rational& b, const Rational& tt) {
  Rational ts = tt * tt, t4 = ts * ts;
  Rational b2 = b * b, b3 = b2 * b, b4 = b3 * b, th2 = th * th, th3 = th2 * th;
  Rational s = 2 * th2 * th2 * b2 + 8 * th3 * ts * b - 24 * th3 * b3 - 4 * th3 * b + 8 * th2 * t4 -
               60 * th2 * ts * b2 - 16 * th2 * ts + 96 * th2 * b4 + 48 * th2 * b2 - 24 * th * t4 * b +
               120 * th * ts * b3 + 72 * th * ts * b - 144 * th * b4 * b - 140 * th * b3 - 2 * th * b +
               18 * t4 * b2 + t4 - 72 * ts * b4 - 66 * ts * b2 - ts + 72 * b3 * b3 + 105 * b4 + 3 * b2;
  return s / 4;
}

// (L_n - Lambda'_n) w_m computed directly in the outgoing module.
GradedVector lhs(const IrregularParams& p, const WhittakerVector& w, int n) {
  WhittakerModule mod(p.rank, p.lambda_out, p.c);
  GradedVector out = mod.act(n, w.coeffs);
  if (n >= p.rank) {
    Rational ev = mod.eigen(n);
    axpy(out, -ev, w.coeffs);
  }
  return out;
}

}  // namespace

TEST_CASE("Whittaker module action") {
  Rational l1 = rational(2, 3), l2 = rational(-5, 7), c = rational(3, 2);
  WhittakerModule m(1, {l1, l2}, c);
  CHECK(m.act(1, Partition{}) == GradedVector{{Partition{}, l1}});
  CHECK(m.act(2, Partition{}) == GradedVector{{Partition{}, l2}});
  CHECK(m.act(3, Partition{}).empty());
  CHECK(m.act(0, Partition{}) == GradedVector{{Partition{1}, 1}});
  CHECK(m.act(-1, Partition{1}) == GradedVector{{Partition{2, 1}, 1}});
  // L_1 L_0 |L> = L_0 L_1 |L> + L_1 |L> = l1 L_0|L> + l1 |L>
  CHECK(m.act(1, Partition{1}) == GradedVector{{Partition{1}, l1}, {Partition{}, l1}});
  // L_2 L_{-1}|L> = 3 L_1 |L> + L_{-1} L_2|L> = 3 l1 + l2 L_{-1}
  CHECK(m.act(2, Partition{2}) == GradedVector{{Partition{}, 3 * l1}, {Partition{2}, l2}});
  // L_1 L_{-1}|L> = 2 L_0|L> + L_{-1} l1
  CHECK(m.act(1, Partition{2}) == GradedVector{{Partition{1}, 2}, {Partition{2}, l1}});
  // central term: L_2 L_{-2}: 4 L_0 + c/2 + L_{-2} L_2
  WhittakerModule m2(2, {1, 0, 1}, c);
  auto v = m2.act(2, Partition{4});  // L_{-2} is part 4 in rank 2
  CHECK(v.at(Partition{2}) == 4);
  CHECK(v.at(Partition{}) == c / 2);
  CHECK(v.at(Partition{4}) == 1);
  CHECK_THROWS_AS(WhittakerModule(3, {1, 1, 1, 1}, c), UsageError);
}

TEST_CASE("Rank-1 irregular relations hold for all n") {
  RationalSampler rs(11);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Rational> lam{rs.next(), rs.next()};
    if (is_zero(lam[1])) lam[1] = rational(1, 5);
    IrregularParams p = irregular_vertex_params(1, rs.next(), lam, rs.next(), rs.next());
    auto ws = irregular_descendants(p, 5);
    for (int m = 0; m <= 5; ++m)
      for (int n = 0; n <= m + 2; ++n) {
        if (n == 0) continue;  // L_0 is not in the relation family; checked through n >= 1
        CHECK(lhs(p, ws[m], n) == irregular_relation_rhs(p, ws, n, m));
      }
  }
}

TEST_CASE("Rank-2 irregular relations hold for n = 2..4") {
  RationalSampler rs(12);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Rational> lam{rs.next(), rs.next(), rs.next()};
    if (is_zero(lam[2])) lam[2] = rational(1, 5);
    IrregularParams p = irregular_vertex_params(2, rs.next(), lam, rs.next(), rs.next());
    auto ws = irregular_descendants(p, 6);
    for (int m = 0; m <= 6; ++m)
      for (int n = 2; n <= 4; ++n) CHECK(lhs(p, ws[m], n) == irregular_relation_rhs(p, ws, n, m));
  }
}

TEST_CASE("Irregular parameters") {
  Rational th = rational(3, 5), b = rational(-2, 7), tt = rational(4, 9);
  auto p1 = irregular_vertex_params(1, tt * tt, {th, rational(1, 4)}, b);
  CHECK(p1.alpha == -2 * b * (th - b) - 2 * tt * tt);
  CHECK(p1.lambda_out[0] == th - b);
  auto p2 = irregular_vertex_params(2, tt * tt, {th, 0, rational(1, 4)}, b / 2);
  CHECK(p2.beta[0] == 0);
  CHECK(p2.alpha == -(3 * tt * tt + b * (2 * th - 3 * b)));
  CHECK_THROWS_AS(irregular_vertex_params(1, tt, {th, 0}, b), DomainError);
  CHECK_NOTHROW(irregular_vertex_params(1, tt, {th, 1}, 0));
}

TEST_CASE("Rank-1 ICB matches closed-form coefficients") {
  RationalSampler rs(21);
  for (int trial = 0; trial < 10; ++trial) {
    Rational th = rs.next(), b = rs.next(), t0 = rs.next(), tt = rs.next();
    IcbSeries s = icb_rank1(th, b, t0, tt, 2);
    CHECK(s.coeffs[0] == QuadExt(1));
    CHECK(s.coeffs[1] == QuadExt(rank1_a1(th, b, t0, tt)));
    CHECK(s.coeffs[2] == QuadExt(rank1_a2(th, b, t0 * t0, tt * tt)));
    CHECK(-s.alpha == 2 * tt * tt + 2 * b * (th - b));
  }
  // the t^{-1} coefficient splits into two factorized pieces
  Rational th = rational(2, 3), b = rational(5, 11), t0 = rational(-1, 4), tt = rational(7, 3);
  CHECK(rank1_a1(th, b, t0, tt) == 2 * (b - th) * (b * b - tt * tt) + 2 * b * ((th - b) * (th - b) - t0 * t0));
}

TEST_CASE("Rank-2 ICB matches closed-form coefficients") {
  RationalSampler rs(22);
  for (int trial = 0; trial < 5; ++trial) {
    Rational th = rs.next(), b = rs.next(), tt = rs.next();
    IcbSeries s = icb_rank2(th, b, tt, QuadExt(1), 7);
    CHECK(-s.alpha == 3 * tt * tt + b * (2 * th - 3 * b));
    CHECK(s.exp_poly[1] == QuadExt(b / 2));
    CHECK(s.coeffs[2] == QuadExt(rank2_c2(th, b, tt)));
    CHECK(s.coeffs[4] == QuadExt(rank2_c4(th, b, tt)));
    for (int k = 1; k <= 7; k += 2) CHECK(s.coeffs[k] == QuadExt(0));
  }
}

TEST_CASE("Rank-1 prefactor exponent tracks beta shifts") {
  Rational th = rational(1, 3), b = rational(2, 7), tt = rational(3, 5), t0 = rational(1, 2);
  for (int d = -2; d <= 2; ++d) {
    IcbSeries s = icb_rank1(th, b + d, t0, tt, 0);
    CHECK(-s.alpha == 2 * tt * tt + 2 * (b + d) * (th - b - d));
  }
}

TEST_CASE("Pairing kinds enforce rank") {
  WhittakerVector v{1, {1, 1}, 1, {{Partition{}, 1}, {Partition{1}, 2}, {Partition{1, 1}, 3}, {Partition{2}, 5}}};
  Rational d = rational(2, 3);
  CHECK(pair_out(PairingKind::DUAL_VERMA, d, v) == 1 + 2 * d + 3 * d * d);
  CHECK_THROWS_AS(pair_out(PairingKind::VACUUM, d, v), UsageError);
  WhittakerVector u{2, {1, 0, 1}, 1, {{Partition{}, 4}, {Partition{2}, 2}}};
  CHECK(pair_out(PairingKind::VACUUM, 0, u) == 4);
  CHECK_THROWS_AS(pair_out(PairingKind::DUAL_VERMA, d, u), UsageError);
}
