#include "cbtau/tau.hpp"

#include <climits>
#include <cmath>
#include <memory>
#include <mutex>
#include <vector>

#include "cbtau/errors.hpp"
#include "cbtau/verma.hpp"
#include "cbtau/whittaker.hpp"

namespace cbtau {

std::string to_string(TauFamily f) {
  switch (f) {
    case TauFamily::PVI: return "pvi";
    case TauFamily::PV: return "pv";
    case TauFamily::PIV: return "piv";
  }
  return "?";
}

TauFamily parse_tau_family(const std::string& name) {
  if (name == "pvi") return TauFamily::PVI;
  if (name == "pv") return TauFamily::PV;
  if (name == "piv") return TauFamily::PIV;
  throw UsageError("unknown tau family '" + name + "' (expected pvi, pv or piv)");
}

std::vector<std::string> tau_symbols(TauFamily f) {
  switch (f) {
    case TauFamily::PVI: return {sym::theta_0, sym::theta_t, sym::theta_1, sym::theta_inf, sym::sigma};
    case TauFamily::PV: return {sym::theta_0, sym::theta_t, sym::theta, sym::beta};
    case TauFamily::PIV: return {sym::theta_t, sym::theta, sym::beta};
  }
  return {};
}

ChannelSpec tau_channel_spec(TauFamily f, const ParameterPoint& p) {
  ChannelSpec s;
  if (f == TauFamily::PVI) {
    const Rational &t0 = p.at(sym::theta_0), &tt = p.at(sym::theta_t), &sg = p.at(sym::sigma);
    s.r = 1;
    s.texp_0 = sg * sg - t0 * t0 - tt * tt;
    s.texp_1 = 2 * sg;
    s.texp_2 = 1;
  } else if (f == TauFamily::PV) {
    const Rational &th = p.at(sym::theta), &b = p.at(sym::beta);
    p.at(sym::theta_0);
    p.at(sym::theta_t);
    s.r = 1;
    s.rate_0 = b - th / 2;
    s.rate_1 = 1;
    s.texp_0 = 2 * b * (th - b) - th * th / 2;
    s.texp_1 = 2 * th - 4 * b;
    s.texp_2 = -2;
  } else {
    const Rational &th = p.at(sym::theta), &b = p.at(sym::beta), &tt = p.at(sym::theta_t);
    s.r = 2;
    s.rate_0 = tt + b;
    s.rate_1 = 1;
    s.texp_0 = tt * tt + b * (2 * th - 3 * b);
    s.texp_1 = 2 * th - 6 * b;
    s.texp_2 = -3;
  }
  return s;
}

namespace {
void multiply_in(GammaProduct& g, const GammaProduct& h, int sign) {
  for (const auto& [arg, pw] : h.factors()) g.add(arg, sign * pw);
}
}  // namespace

GammaProduct structure_ratio_product(TauFamily f, int n, const ParameterPoint& p) {
  GammaProduct g;
  if (f == TauFamily::PVI) {
    const Rational &t0 = p.at(sym::theta_0), &tt = p.at(sym::theta_t), &t1 = p.at(sym::theta_1),
                   &ti = p.at(sym::theta_inf), &sg = p.at(sym::sigma);
    for (int e : {1, -1})
      for (int e2 : {1, -1}) {
        multiply_in(g, barnes_shift_product(tt + e * t0 + e2 * sg, e2 * n), 1);
        multiply_in(g, barnes_shift_product(t1 + e * ti + e2 * sg, e2 * n), 1);
      }
    multiply_in(g, barnes_shift_product(2 * sg, 2 * n), -1);
    multiply_in(g, barnes_shift_product(-2 * sg, -2 * n), -1);
  } else if (f == TauFamily::PV) {
    const Rational &t0 = p.at(sym::theta_0), &tt = p.at(sym::theta_t), &th = p.at(sym::theta),
                   &b = p.at(sym::beta);
    multiply_in(g, barnes_shift_product(t0 + th - b, -n), 1);
    multiply_in(g, barnes_shift_product(-t0 + th - b, -n), 1);
    multiply_in(g, barnes_shift_product(tt + b, n), 1);
    multiply_in(g, barnes_shift_product(tt - b, -n), 1);
  } else {
    const Rational &tt = p.at(sym::theta_t), &th = p.at(sym::theta), &b = p.at(sym::beta);
    multiply_in(g, barnes_shift_product(th - b, -n), 1);
    multiply_in(g, barnes_shift_product(tt + b, n), 1);
    multiply_in(g, barnes_shift_product(tt - b, -n), 1);
  }
  return g;
}

Scalar structure_ratio(TauFamily f, int n, const ParameterPoint& p, int digits) {
  Scalar v = structure_ratio_product(f, n, p).evaluate(digits);
  long e = static_cast<long>(n) * (n + 1) / 2;
  if (f == TauFamily::PV && e % 2 != 0) {
    if (auto q = std::get_if<Rational>(&v)) return Rational(-*q);
    return -std::get<BigFloat>(v);
  }
  return v;
}

template <>
Rational scalar_cast<Rational>(const Scalar& s, int) {
  if (auto q = std::get_if<Rational>(&s)) return *q;
  if (auto e = std::get_if<QuadExt>(&s); e && is_zero(e->b())) return e->a();
  throw DomainError("value is not rational; use a digits (BigFloat) computation");
}

template <>
BigFloat scalar_cast<BigFloat>(const Scalar& s, int digits) {
  return to_bigfloat(s, digits);
}

namespace {

// Block coefficients of channel n (offset -> value), without C_n.
std::map<int, Scalar> channel_block(TauFamily f, const ParameterPoint& p, int n, int order) {
  std::map<int, Scalar> out;
  if (f == TauFamily::PVI) {
    const Rational &t0 = p.at(sym::theta_0), &tt = p.at(sym::theta_t), &t1 = p.at(sym::theta_1),
                   &ti = p.at(sym::theta_inf);
    Rational sg = p.at(sym::sigma) + n;
    auto b = four_point_block(t0 * t0, tt * tt, sg * sg, t1 * t1, ti * ti, Rational(1), order);
    for (int k = 0; k <= order; ++k) out[k] = b[k];
  } else if (f == TauFamily::PV) {
    Rational b = p.at(sym::beta) + n;
    IcbSeries s = icb_rank1(p.at(sym::theta), b, p.at(sym::theta_0), p.at(sym::theta_t), order);
    for (int k = 0; k <= order; ++k) out[-k] = s.coeffs[k].a();
  } else {
    Rational b = p.at(sym::beta) + n;
    IcbSeries s = icb_rank2(p.at(sym::theta), b, p.at(sym::theta_t), QuadExt(0, rational(1, 2)), order);
    for (int k = 0; k <= order; ++k) {
      const QuadExt& a = s.coeffs[k];
      if (!is_zero(a.b())) throw Error("unexpected irrational ICB coefficient");
      out[-k] = a.a();
    }
  }
  return out;
}

int pv_sign(int n) { return (static_cast<long>(n) * (n + 1) / 2) % 2 == 0 ? 1 : -1; }

// PIV: the argument 1/(sqrt2 t) contributes (1/sqrt2)^{alpha_n}; relative to
// channel 0 this is 2^{e_n} with e_n = (n(2theta - 6beta) - 3n^2)/2.
Rational piv_weight_exponent(const ParameterPoint& p, int n) {
  return (n * (2 * p.at(sym::theta) - 6 * p.at(sym::beta)) - Rational(3L * n * n)) / 2;
}

Scalar channel_weight(TauFamily f, const ParameterPoint& p, int n, int digits) {
  Scalar v = structure_ratio(f, n, p, digits);
  if (f != TauFamily::PIV) return v;
  Rational e = piv_weight_exponent(p, n);
  if (is_integer(e)) {
    Rational w = ipow(Rational(2), e.get_num().get_si());
    if (auto q = std::get_if<Rational>(&v)) return Rational(*q * w);
    return to_bigfloat(v, digits) * BigFloat(w, digits);
  }
  return to_bigfloat(v, digits) * pow(BigFloat(2L, digits), BigFloat(e, digits));
}

// C_a C_b / (C_0 C_{a+b}): every Gamma factor telescopes, so this is rational.
Rational channel_cocycle(TauFamily f, const ParameterPoint& p, int a, int b) {
  GammaProduct g = structure_ratio_product(f, a, p);
  g *= structure_ratio_product(f, b, p);
  GammaProduct sum = structure_ratio_product(f, a + b, p);
  for (const auto& [arg, pw] : sum.factors()) g.add(arg, -pw);
  Rational v = std::get<Rational>(g.evaluate(30));
  if (f == TauFamily::PV) v *= pv_sign(a) * pv_sign(b) * pv_sign(a + b);
  if (f == TauFamily::PIV) v *= ipow(Rational(2), 3L * a * b);
  return v;
}

template <class T>
ChannelSeries<T> assemble(TauFamily f, const ParameterPoint& p, int n_max, int order, int digits, int threads,
                          bool normalized) {
  if (n_max < 0 || order < 0) throw UsageError("n_max and order must be non-negative");
  DigitsScope scope(digits);
  ChannelSeries<T> out{tau_channel_spec(f, p), 1, {}, nullptr};
  std::vector<std::map<int, T>> rows(2 * n_max + 1);
  parallel_for(rows.size(), threads, [&](size_t i) {
    DigitsScope inner(digits);
    int n = static_cast<int>(i) - n_max;
    T w = normalized ? scalar_from<T>(Rational(1)) : scalar_cast<T>(channel_weight(f, p, n, digits + 10), digits);
    for (const auto& [k, v] : channel_block(f, p, n, order)) {
      T x = scalar_cast<T>(v, digits) * w;
      if (!is_zero_value(x)) rows[i].emplace(k, x);
    }
  });
  for (size_t i = 0; i < rows.size(); ++i)
    if (!rows[i].empty()) out.data[static_cast<int>(i) - n_max] = std::move(rows[i]);
  if (normalized) {
    struct Cache {
      std::mutex mu;
      std::map<std::pair<int, int>, T> values;
    };
    auto cache = std::make_shared<Cache>();
    out.cocycle = std::make_shared<const typename ChannelSeries<T>::Cocycle>([f, p, digits, cache](int a, int b) {
      std::lock_guard<std::mutex> lock(cache->mu);
      auto key = std::make_pair(a, b);
      auto it = cache->values.find(key);
      if (it != cache->values.end()) return it->second;
      DigitsScope scope(digits);
      T v = scalar_from<T>(channel_cocycle(f, p, a, b));
      cache->values.emplace(key, v);
      return v;
    });
  }
  return out;
}

}  // namespace

template <class T>
ChannelSeries<T> tau_series(TauFamily f, const ParameterPoint& p, int n_max, int order, int digits, int threads) {
  return assemble<T>(f, p, n_max, order, digits, threads, false);
}

template <class T>
ChannelSeries<T> tau_series_normalized(TauFamily f, const ParameterPoint& p, int n_max, int order, int digits,
                                       int threads) {
  return assemble<T>(f, p, n_max, order, digits, threads, true);
}

template ChannelSeries<Rational> tau_series<Rational>(TauFamily, const ParameterPoint&, int, int, int, int);
template ChannelSeries<BigFloat> tau_series<BigFloat>(TauFamily, const ParameterPoint&, int, int, int, int);
template ChannelSeries<Rational> tau_series_normalized<Rational>(TauFamily, const ParameterPoint&, int, int, int,
                                                                 int);
template ChannelSeries<BigFloat> tau_series_normalized<BigFloat>(TauFamily, const ParameterPoint&, int, int, int,
                                                                 int);

DiffPoly ode_polynomial(TauFamily f, const ParameterPoint& p) {
  using P = DiffPoly;
  P t = P::t(), T0 = P::T(0), T1 = P::T(1), T2 = P::T(2);
  P T02 = T0 * T0;
  if (f == TauFamily::PV) {
    const Rational &th = p.at(sym::theta), &t0 = p.at(sym::theta_0), &tt = p.at(sym::theta_t);
    // h = A/T, h' = B/T^2, h'' = C/T^3
    P A = t * T1;
    P B = T0 * T1 + t * T0 * T2 - t * T1 * T1;
    P C = B.derive() * T0 - P(Rational(2)) * B * T1;
    P inner = A * T02 * T0 - t * B * T02 + P(Rational(2)) * B * B;
    P T04 = T02 * T02;
    P m = P(Rational(2)) * B - P(th) * T02;
    P q = P(Rational(2)) * B + P(th) * T02;
    P f1 = m * m - P(Rational(4) * t0 * t0) * T04;
    P f2 = q * q - P(Rational(4) * tt * tt) * T04;
    return t * t * C * C * T02 - inner * inner + P(rational(1, 4)) * f1 * f2;
  }
  if (f == TauFamily::PIV) {
    const Rational &th = p.at(sym::theta), &tt = p.at(sym::theta_t);
    // H = T1/T, H' = B/T^2, H'' = C/T^3
    P B = T0 * T2 - T1 * T1;
    P C = B.derive() * T0 - P(Rational(2)) * B * T1;
    P u = t * B - T0 * T1;
    return C * C - P(Rational(4)) * u * u * T02 +
           P(Rational(4)) * B * (B - P(2 * (th + tt)) * T02) * (B - P(4 * tt) * T02);
  }
  throw UsageError("no sigma-form equation is implemented for pvi");
}

namespace {
BigFloat magnitude(const Rational& x, int digits) { return abs(BigFloat(x, digits)); }
BigFloat magnitude(const BigFloat& x, int) { return abs(x); }
}  // namespace

template <class T>
ResidualReport<T> ode_residual(TauFamily f, const ParameterPoint& p, const ChannelSeries<T>& tau, int n_max,
                               int order, int digits, int threads) {
  DigitsScope scope(digits);
  if (!(tau.spec == tau_channel_spec(f, p))) throw UsageError("tau series was built for a different family or point");
  DiffPoly poly = ode_polynomial(f, p);
  int degree = 0;
  if (!poly.is_homogeneous(&degree)) throw Error("sigma-form polynomial is not homogeneous");
  const int r = tau.spec.r;
  int shift = INT32_MIN;
  for (const auto& [m, c] : poly.terms()) shift = std::max(shift, m.tpow + (r - 1) * m.weight());

  ResidualReport<T> rep;
  rep.family = f;
  rep.degree = degree;
  rep.shift = shift;
  rep.window = cs_validity_window(tau.spec, degree, n_max, -order, shift, n_max == 0);
  if (rep.window.empty())
    throw TruncationError("no trusted residual cells at n_max=" + std::to_string(n_max) + ", order=" +
                          std::to_string(order) + "; try order >= " + std::to_string(order + 4) + " with n_max " +
                          std::to_string(n_max));

  std::array<ChannelSeries<T>, 4> der;
  der[0] = tau;
  for (int j = 1; j < 4; ++j) der[j] = cs_derive(der[j - 1]);
  // Largest offset per channel of each factor; combined under the channel cross
  // term this bounds what the unmultiplied factors of a monomial can still add.
  using TopMap = std::map<int, long>;
  std::array<TopMap, 4> top;
  for (int j = 0; j < 4; ++j)
    for (const auto& [n, row] : der[j].data)
      if (!row.empty()) top[j][n] = row.rbegin()->first;
  auto combine = [&](const TopMap& a, const TopMap& b) {
    TopMap out;
    for (const auto& [na, ka] : a)
      for (const auto& [nb, kb] : b) {
        long v = ka + kb + tau.spec.cross(na, nb);
        auto it = out.find(na + nb);
        if (it == out.end() || it->second < v) out[na + nb] = v;
      }
    return out;
  };
  // Drops cells of a partial product that cannot land in the window.
  auto prune_partial = [&](ChannelSeries<T>& part, const TopMap& rest, int tpow) {
    for (auto& [n, row] : part.data) {
      long need = LONG_MAX;
      for (const auto& [nr, kr] : rest) {
        auto w = rep.window.ranges.find(n + nr);
        if (w == rep.window.ranges.end()) continue;
        need = std::min(need, w->second.first - kr - tau.spec.cross(n, nr) - tpow);
      }
      if (need == LONG_MAX) {
        row.clear();
        continue;
      }
      row.erase(row.begin(), row.lower_bound(static_cast<int>(std::max<long>(need, INT_MIN))));
    }
    part.prune();
  };

  ChannelSeries<T> total{tau.spec, degree, {}, nullptr};
  for (const auto& [m, c] : poly.terms()) {
    std::vector<int> factors;
    for (int j = 3; j >= 0; --j)
      for (int i = 0; i < m.e[j]; ++i) factors.push_back(j);
    std::vector<TopMap> rest(factors.size() + 1);
    rest[factors.size()] = TopMap{{0, 0}};
    for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i) rest[i] = combine(top[factors[i]], rest[i + 1]);
    ChannelSeries<T> prod = der[factors[0]];
    prune_partial(prod, rest[1], m.tpow);
    for (std::size_t i = 1; i < factors.size(); ++i) {
      prod = cs_mul(prod, der[factors[i]], threads);
      prune_partial(prod, rest[i + 1], m.tpow);
    }
    prod = cs_shift(prod, m.tpow);
    for (const auto& [n, row] : prod.data)
      for (const auto& [k, v] : row)
        if (rep.window.contains(n, k)) total.accumulate(n, k, v * scalar_from<T>(c));
  }
  total.prune();
  rep.residual = total;
  rep.max_abs = BigFloat(0L, digits);
  for (const auto& [n, row] : total.data)
    for (const auto& [k, v] : row) {
      BigFloat a = magnitude(v, digits);
      if (rep.max_abs < a) rep.max_abs = a;
    }
  if constexpr (std::is_same_v<T, Rational>) {
    rep.tolerance = 0;
    rep.pass = total.empty();
  } else {
    rep.tolerance = std::pow(10.0, -(digits - 15));
    rep.pass = rep.max_abs.to_double() <= rep.tolerance;
  }
  return rep;
}

template ResidualReport<Rational> ode_residual<Rational>(TauFamily, const ParameterPoint&,
                                                         const ChannelSeries<Rational>&, int, int, int, int);
template ResidualReport<BigFloat> ode_residual<BigFloat>(TauFamily, const ParameterPoint&,
                                                         const ChannelSeries<BigFloat>&, int, int, int, int);

}  // namespace cbtau
