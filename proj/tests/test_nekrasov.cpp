#include "cbtau/errors.hpp"
#include "cbtau/nekrasov.hpp"
#include "cbtau/pit.hpp"
#include "doctest.h"

using namespace cbtau;

namespace {
const std::vector<std::string> kFull4{sym::theta_0, sym::theta_t, sym::sigma, sym::theta_1, sym::theta_inf};

ParameterPoint full_point(std::uint64_t seed) {
  RationalSampler s(seed);
  ParameterPoint p = s.sample(kFull4);
  p.set(sym::sigma, p.at(sym::sigma) + rational(1, 1009));
  p.set(sym::theta_star, s.next());
  p.set(sym::theta_bigstar, s.next());
  return p;
}

// Pair sum at order n written out independently of block_sum.
Rational pair_sum(NekrasovKind kind, const ParameterPoint& p, int n) {
  Rational s = 0;
  for (int a = 0; a <= n; ++a)
    for (const auto& l : enumerate_partitions(a))
      for (const auto& m : enumerate_partitions(n - a)) s += nekrasov_factor(kind, l, m, p);
  return s;
}
}  // namespace

TEST_CASE("Nekrasov factor values") {
  ParameterPoint p = full_point(1);
  for (auto k : {NekrasovKind::FULL4, NekrasovKind::PV, NekrasovKind::PIII, NekrasovKind::PIII_ALT,
                 NekrasovKind::PIII_D7, NekrasovKind::PIII_D8})
    CHECK(nekrasov_factor(k, Partition{}, Partition{}, p) == 1);

  Rational t0 = p.at(sym::theta_0), tt = p.at(sym::theta_t), s = p.at(sym::sigma), t1 = p.at(sym::theta_1),
           ti = p.at(sym::theta_inf);
  Rational a = tt + s, b = t1 + s;
  CHECK(nekrasov_factor(NekrasovKind::FULL4, Partition{1}, Partition{}, p) ==
        (a * a - t0 * t0) * (b * b - ti * ti) / (4 * s * s));

  ParameterPoint missing{{sym::sigma, rational(1, 3)}};
  CHECK_THROWS_AS(nekrasov_factor(NekrasovKind::PV, Partition{1}, Partition{}, missing), MissingSymbol);
  ParameterPoint bad = p.with(sym::sigma, Rational(0));
  CHECK_THROWS_AS(nekrasov_factor(NekrasovKind::FULL4, Partition{1}, Partition{}, bad), NonGenericPoint);
}

TEST_CASE("Nekrasov swap symmetry and PIII coincidence") {
  RationalSampler rs(77);
  for (int t = 0; t < 20; ++t) {
    ParameterPoint p = full_point(100 + t);
    int n1 = static_cast<int>(rs.uniform(0, 4)), n2 = static_cast<int>(rs.uniform(0, 4));
    auto ls = enumerate_partitions(n1), ms = enumerate_partitions(n2);
    Partition l = ls[rs.uniform(0, static_cast<long>(ls.size()) - 1)];
    Partition m = ms[rs.uniform(0, static_cast<long>(ms.size()) - 1)];
    ParameterPoint q = p.with(sym::sigma, -p.at(sym::sigma));
    CHECK(nekrasov_factor(NekrasovKind::FULL4, l, m, p) == nekrasov_factor(NekrasovKind::FULL4, m, l, q));

    ParameterPoint alt = p;
    alt.set(sym::theta_star, p.at(sym::theta_t) + p.at(sym::theta_0));
    alt.set(sym::theta_bigstar, p.at(sym::theta_t) - p.at(sym::theta_0));
    CHECK(nekrasov_factor(NekrasovKind::PIII_ALT, l, m, alt) == nekrasov_factor(NekrasovKind::PIII, l, m, alt));
  }
}

TEST_CASE("block sums") {
  ParameterPoint p = full_point(5);
  auto b = block_sum(NekrasovKind::FULL4, p, 5);
  CHECK(b[0] == 1);
  CHECK(b[1] == nekrasov_factor(NekrasovKind::FULL4, Partition{1}, Partition{}, p) +
                    nekrasov_factor(NekrasovKind::FULL4, Partition{}, Partition{1}, p));
  for (int n = 0; n <= 5; ++n) CHECK(b[n] == pair_sum(NekrasovKind::FULL4, p, n));
  auto longer = block_sum(NekrasovKind::FULL4, p, 7);
  CHECK(std::vector<Rational>(longer.begin(), longer.begin() + 6) == b);
  CHECK(block_sum(NekrasovKind::PV, p, 6, 1) == block_sum(NekrasovKind::PV, p, 6, 4));
}

TEST_CASE("hypergeometric specialization") {
  RationalSampler s(8);
  for (int t = 0; t < 3; ++t) {
    Rational t0 = s.next(), t1 = s.next(), ti = s.next();
    ParameterPoint p{{sym::theta_0, t0}, {sym::theta_t, rational(1, 2)}, {sym::sigma, t0 + rational(1, 2)},
                     {sym::theta_1, t1}, {sym::theta_inf, ti}};
    auto b = block_sum(NekrasovKind::FULL4, p, 6);
    Rational prod = 1, fact = 1;
    for (int n = 0; n <= 6; ++n) {
      if (n > 0) {
        Rational x = t1 + t0 + n - rational(1, 2);
        prod *= (x * x - ti * ti) / (2 * t0 + n);
        fact *= n;
      }
      CHECK(b[n] == prod / fact);
    }
  }
}

TEST_CASE("AGT equivalence") {
  auto r0 = agt_equivalence_check(full_point(11), 0);
  CHECK(r0.pass);
  for (int t = 0; t < 3; ++t) {
    ParameterPoint p = full_point(40 + t);
    auto r = agt_equivalence_check(p, 4);
    CHECK(r.pass);
    CHECK_FALSE(r.theta0_dressing_pass);
    Rational tt = p.at(sym::theta_t), t1 = p.at(sym::theta_1);
    auto n = block_sum(NekrasovKind::FULL4, p, 1);
    CHECK(r.virasoro[1] == n[1] - 2 * tt * t1);
  }
}

TEST_CASE("degeneration ladder") {
  using K = NekrasovKind;
  ParameterPoint p = full_point(3);
  std::vector<Rational> L{Rational(100), Rational(1000), Rational(10000)};
  std::vector<std::pair<K, K>> edges{{K::FULL4, K::PV},     {K::PV, K::PIII},        {K::PV, K::PIII_ALT},
                                     {K::PIII, K::PIII_D7}, {K::PIII_D7, K::PIII_D8}, {K::PIII_ALT, K::PIII_D7}};
  for (auto [par, ch] : edges) {
    auto rep = degeneration_limit_check(par, ch, p, L, 3);
    for (double d : rep.deviations[0]) CHECK(d == 0);
    // D7 -> D8 loses its 1/Lambda term to the sigma -> -sigma pairing
    double lo = (par == K::PIII_D7) ? 80 : 8, hi = (par == K::PIII_D7) ? 120 : 12;
    for (int k = 1; k <= 3; ++k) {
      if (par == K::PIII_D7 && k == 1) {
        for (double d : rep.deviations[k]) CHECK(d == 0);
        continue;
      }
      for (double r : rep.ratios[k]) {
        CHECK(r > lo);
        CHECK(r < hi);
      }
    }
  }
  CHECK_THROWS_AS(degeneration_limit_check(K::FULL4, K::PIII_D8, p, L, 1), UsageError);
}
