#include "cbtau/nekrasov.hpp"

#include <cmath>

#include "cbtau/errors.hpp"
#include "cbtau/parallel.hpp"
#include "cbtau/verma.hpp"

namespace cbtau {

std::string to_string(NekrasovKind kind) {
  switch (kind) {
    case NekrasovKind::FULL4: return "full4";
    case NekrasovKind::PV: return "pv";
    case NekrasovKind::PIII: return "piii";
    case NekrasovKind::PIII_ALT: return "piii_alt";
    case NekrasovKind::PIII_D7: return "piii_d7";
    case NekrasovKind::PIII_D8: return "piii_d8";
  }
  return "?";
}

NekrasovKind parse_nekrasov_kind(std::string_view name) {
  for (auto k : {NekrasovKind::FULL4, NekrasovKind::PV, NekrasovKind::PIII, NekrasovKind::PIII_ALT,
                 NekrasovKind::PIII_D7, NekrasovKind::PIII_D8})
    if (to_string(k) == name) return k;
  throw UsageError("unknown Nekrasov kind '" + std::string(name) + "'");
}

std::vector<std::string> nekrasov_symbols(NekrasovKind kind) {
  switch (kind) {
    case NekrasovKind::FULL4: return {sym::theta_0, sym::theta_t, sym::sigma, sym::theta_1, sym::theta_inf};
    case NekrasovKind::PV: return {sym::theta_0, sym::theta_t, sym::sigma, sym::theta_star};
    case NekrasovKind::PIII: return {sym::theta_bigstar, sym::sigma, sym::theta_star};
    case NekrasovKind::PIII_ALT: return {sym::theta_0, sym::theta_t, sym::sigma};
    case NekrasovKind::PIII_D7: return {sym::theta_bigstar, sym::sigma};
    case NekrasovKind::PIII_D8: return {sym::sigma};
  }
  return {};
}

namespace {

struct KindParams {
  Rational t0, tt, sigma, t1, ti, star, bigstar;
};

KindParams read_params(NekrasovKind kind, const ParameterPoint& p) {
  KindParams k;
  k.sigma = p.at(sym::sigma);
  switch (kind) {
    case NekrasovKind::FULL4:
      k.t1 = p.at(sym::theta_1);
      k.ti = p.at(sym::theta_inf);
      [[fallthrough]];
    case NekrasovKind::PIII_ALT:
      k.t0 = p.at(sym::theta_0);
      k.tt = p.at(sym::theta_t);
      break;
    case NekrasovKind::PV:
      k.t0 = p.at(sym::theta_0);
      k.tt = p.at(sym::theta_t);
      k.star = p.at(sym::theta_star);
      break;
    case NekrasovKind::PIII:
      k.star = p.at(sym::theta_star);
      k.bigstar = p.at(sym::theta_bigstar);
      break;
    case NekrasovKind::PIII_D7:
      k.bigstar = p.at(sym::theta_bigstar);
      break;
    case NekrasovKind::PIII_D8:
      break;
  }
  return k;
}

// Cell numerator with s = +sigma for cells of lambda, -sigma for cells of mu.
Rational numerator(NekrasovKind kind, const KindParams& k, const Rational& s, int content) {
  Rational a = k.tt + s + content;
  switch (kind) {
    case NekrasovKind::FULL4: {
      Rational b = k.t1 + s + content;
      return (a * a - k.t0 * k.t0) * (b * b - k.ti * k.ti);
    }
    case NekrasovKind::PV: return (k.star + s + content) * (a * a - k.t0 * k.t0);
    case NekrasovKind::PIII: return (k.star + s + content) * (k.bigstar + s + content);
    case NekrasovKind::PIII_ALT: return a * a - k.t0 * k.t0;
    case NekrasovKind::PIII_D7: return k.bigstar + s + content;
    case NekrasovKind::PIII_D8: return 1;
  }
  return 0;
}

Rational factor_with(NekrasovKind kind, const KindParams& k, const Partition& lambda, const Partition& mu) {
  Partition lc = lambda.conjugate(), mc = mu.conjugate();
  Rational num = 1, den = 1;
  Rational s2 = 2 * k.sigma;
  for (const Cell& c : lambda.cells()) {
    num *= numerator(kind, k, k.sigma, c.content());
    Rational cross = lc.row(c.j) + mu.row(c.i) - c.i - c.j + 1 + s2;
    if (is_zero(cross))
      throw NonGenericPoint("vanishing cross term at cell (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                            ") of lambda=" + lambda.to_string());
    int h = lambda.hook(c.i, c.j);
    den *= h * h * cross * cross;
  }
  for (const Cell& c : mu.cells()) {
    num *= numerator(kind, k, -k.sigma, c.content());
    Rational cross = mc.row(c.j) + lambda.row(c.i) - c.i - c.j + 1 - s2;
    if (is_zero(cross))
      throw NonGenericPoint("vanishing cross term at cell (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                            ") of mu=" + mu.to_string());
    int h = mu.hook(c.i, c.j);
    den *= h * h * cross * cross;
  }
  return num / den;
}

}  // namespace

Rational nekrasov_factor(NekrasovKind kind, const Partition& lambda, const Partition& mu, const ParameterPoint& p) {
  return factor_with(kind, read_params(kind, p), lambda, mu);
}

std::vector<Rational> block_sum(NekrasovKind kind, const ParameterPoint& p, int max_order, int threads) {
  if (max_order < 0) throw UsageError("order must be >= 0");
  KindParams k = read_params(kind, p);
  struct Job {
    int order;
    Partition lambda, mu;
  };
  std::vector<Job> jobs;
  for (int n = 0; n <= max_order; ++n)
    for (auto& [l, m] : partition_pairs(n)) jobs.push_back({n, l, m});
  std::vector<Rational> values(jobs.size());
  parallel_for(jobs.size(), threads, [&](size_t i) { values[i] = factor_with(kind, k, jobs[i].lambda, jobs[i].mu); });
  std::vector<Rational> out(max_order + 1, Rational(0));
  for (size_t i = 0; i < jobs.size(); ++i) out[jobs[i].order] += values[i];
  return out;
}

std::vector<Rational> binomial_series(const Rational& a, int count) {
  std::vector<Rational> c;
  Rational term = 1;
  for (int k = 0; k < count; ++k) {
    c.push_back(term);
    term *= -(a - k) / (k + 1);
  }
  return c;
}

AgtReport agt_equivalence_check(const ParameterPoint& p, int max_order, int threads) {
  const Rational& t0 = p.at(sym::theta_0);
  const Rational& tt = p.at(sym::theta_t);
  const Rational& sg = p.at(sym::sigma);
  const Rational& t1 = p.at(sym::theta_1);
  const Rational& ti = p.at(sym::theta_inf);
  AgtReport rep;
  rep.virasoro = four_point_block(t0 * t0, tt * tt, sg * sg, t1 * t1, ti * ti, Rational(1), max_order);
  auto n = block_sum(NekrasovKind::FULL4, p, max_order, threads);
  auto dressed = [&](const Rational& exponent) {
    auto pre = binomial_series(exponent, max_order + 1);
    std::vector<Rational> out;
    for (int k = 0; k <= max_order; ++k) {
      Rational s = 0;
      for (int j = 0; j <= k; ++j) s += pre[j] * n[k - j];
      out.push_back(s);
    }
    return out;
  };
  // The U(1) factor couples the insertions at t and 1.
  rep.agt = dressed(2 * tt * t1);
  rep.pass = rep.virasoro == rep.agt;
  rep.theta0_dressing_pass = rep.virasoro == dressed(2 * t0 * t1);
  return rep;
}

ParameterPoint degeneration_point(NekrasovKind parent, NekrasovKind child, const ParameterPoint& p,
                                  const Rational& lambda) {
  using K = NekrasovKind;
  ParameterPoint q = p;
  auto split = [&](const char* plus, const char* minus, const char* diff) {
    // plus + minus = Lambda, plus - minus = p[diff]
    Rational d = p.at(diff);
    q.set(plus, (lambda + d) / 2);
    q.set(minus, (lambda - d) / 2);
  };
  if (parent == K::FULL4 && child == K::PV) {
    split(sym::theta_1, sym::theta_inf, sym::theta_star);
  } else if (parent == K::PV && child == K::PIII) {
    split(sym::theta_t, sym::theta_0, sym::theta_bigstar);
  } else if (parent == K::PIII_ALT && child == K::PIII_D7) {
    split(sym::theta_t, sym::theta_0, sym::theta_bigstar);
  } else if ((parent == K::PV && child == K::PIII_ALT) || (parent == K::PIII && child == K::PIII_D7)) {
    q.set(sym::theta_star, lambda);
  } else if (parent == K::PIII_D7 && child == K::PIII_D8) {
    q.set(sym::theta_bigstar, lambda);
  } else {
    throw UsageError(to_string(parent) + " -> " + to_string(child) + " is not a degeneration edge");
  }
  return q;
}

DegenerationReport degeneration_limit_check(NekrasovKind parent, NekrasovKind child, const ParameterPoint& p,
                                            const std::vector<Rational>& lambdas, int max_order, int threads) {
  DegenerationReport rep;
  rep.lambdas = lambdas;
  rep.child = block_sum(child, p, max_order, threads);
  rep.deviations.assign(max_order + 1, {});
  for (const auto& L : lambdas) {
    auto par = block_sum(parent, degeneration_point(parent, child, p, L), max_order, threads);
    for (int k = 0; k <= max_order; ++k) {
      Rational d = par[k] / ipow(L, k) - rep.child[k];
      rep.deviations[k].push_back(std::fabs(d.get_d()));
    }
  }
  rep.ratios.assign(max_order + 1, {});
  for (int k = 0; k <= max_order; ++k)
    for (size_t i = 0; i + 1 < lambdas.size(); ++i) {
      double b = rep.deviations[k][i + 1];
      rep.ratios[k].push_back(b == 0 ? 0 : rep.deviations[k][i] / b);
    }
  return rep;
}

DegenerationVerdict degeneration_verdict(const DegenerationReport& rep) {
  DegenerationVerdict v;
  for (size_t k = 0; k < rep.deviations.size(); ++k) {
    const auto& dev = rep.deviations[k];
    int order = 0;
    bool ok = true;
    for (size_t i = 0; i + 1 < dev.size() && ok; ++i) {
      if (dev[i] == 0) {
        ok = dev[i + 1] == 0;  // once exact, it has to stay exact
        continue;
      }
      if (dev[i + 1] == 0) continue;
      double r = dev[i] / dev[i + 1];
      int p = static_cast<int>(std::lround(std::log10(r)));
      double scale = std::pow(10.0, p - 1);
      if (p < 1 || r < 8 * scale || r > 12 * scale || (order != 0 && p != order)) ok = false;
      order = p;
    }
    v.orders.push_back(ok ? order : -1);
    if (!ok) v.pass = false;
  }
  return v;
}

}  // namespace cbtau
