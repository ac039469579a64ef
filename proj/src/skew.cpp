#include "cbtau/skew.hpp"

#include <map>

#include "cbtau/errors.hpp"
#include "cbtau/parallel.hpp"
#include "cbtau/pit.hpp"
#include "cbtau/whittaker.hpp"

namespace cbtau {

std::string SkewTerm::key() const {
  return lambda.to_string() + "|" + mu.to_string() + "|" + nu.to_string() + "|" + eta.to_string();
}

namespace {

struct Point4 {
  Rational t0, tt, th, b;
  explicit Point4(const ParameterPoint& p)
      : t0(p.at(sym::theta_0)), tt(p.at(sym::theta_t)), th(p.at(sym::theta)), b(p.at(sym::beta)) {}
};

Rational u_skew(const Partition& lambda, const Partition& nu, const Point4& q) {
  Rational out = 1;
  for (const Cell& c : skew_cells(lambda, nu)) out *= 2 * (q.b - q.th) + c.content();
  return out;
}

Rational v_skew(const Partition& mu, const Partition& eta, const Point4& q) {
  Rational out = 1;
  for (const Cell& c : skew_cells(mu, eta)) out *= -2 * q.b + c.content();
  return out;
}

Rational s_factor(const Partition& lambda, const Partition& mu, const Point4& q) {
  Rational out = mu.size() % 2 ? -1 : 1;
  for (const Cell& c : lambda.cells()) {
    Rational x = q.b + c.content();
    long h = lambda.hook(c.i, c.j);
    out *= (x * x - q.tt * q.tt) / (h * h);
  }
  for (const Cell& c : mu.cells()) {
    Rational x = q.th - q.b + c.content();
    long h = mu.hook(c.i, c.j);
    out *= (x * x - q.t0 * q.t0) / (h * h);
  }
  return out;
}

void check_term(const SkewTerm& t) {
  if (!skew_contains(t.lambda, t.nu) || !skew_contains(t.mu, t.eta))
    throw ContainmentError("skew term " + t.key() + " violates containment");
  if (t.nu.size() != t.eta.size()) throw ContainmentError("skew term " + t.key() + " has |nu| != |eta|");
}

}  // namespace

SkewWeight skew_weight(const SkewTerm& term, const ParameterPoint& p) {
  check_term(term);
  Point4 q(p);
  return {u_skew(term.lambda, term.nu, q), v_skew(term.mu, term.eta, q), s_factor(term.lambda, term.mu, q)};
}

Rational skew_u(const Partition& lambda, const Partition& nu, const ParameterPoint& p) {
  if (!skew_contains(lambda, nu)) throw ContainmentError(nu.to_string() + " is not inside " + lambda.to_string());
  return u_skew(lambda, nu, Point4(p));
}

Rational skew_v(const Partition& mu, const Partition& eta, const ParameterPoint& p) {
  if (!skew_contains(mu, eta)) throw ContainmentError(eta.to_string() + " is not inside " + mu.to_string());
  return v_skew(mu, eta, Point4(p));
}

Rational skew_n(const Partition& lambda, const Partition& mu, const ParameterPoint& p) {
  SkewWeight w = skew_weight({lambda, mu, {}, {}}, p);
  return w.U * w.V * w.S;
}

int q_stat(const Partition& lambda) {
  int total = 0;
  for (const auto& row : q_tableau(lambda))
    for (int x : row) total += x;
  return total;
}

std::vector<std::vector<int>> q_tableau(const Partition& lambda) {
  std::vector<std::vector<int>> rows;
  if (lambda.empty()) return rows;
  Partition conj = lambda.conjugate();
  const int l1 = lambda.row(1);
  for (int i = 1; i <= lambda.length(); ++i) {
    std::vector<int> row;
    int partial = 0;  // sum of lambda'_k for k < j
    for (int j = 1; j <= lambda.row(i); ++j) {
      row.push_back(i == 1 ? 2 * (j - 1) : l1 - 1 + partial);
      partial += conj.row(j);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SkewTerm> skew_terms(int k) {
  if (k < 0) throw UsageError("order must be non-negative");
  std::vector<SkewTerm> out;
  for (const auto& [lambda, mu] : partition_pairs(k))
    for (int s = 0; s <= std::min(lambda.size(), mu.size()); ++s)
      for (const auto& nu : subpartitions(lambda, s))
        for (const auto& eta : subpartitions(mu, s)) out.push_back({lambda, mu, nu, eta});
  return out;
}

Rational skew_expansion(int k, const std::vector<Rational>& c, const ParameterPoint& p) {
  auto terms = skew_terms(k);
  if (c.size() != terms.size()) throw UsageError("coefficient vector does not match the term list");
  Point4 q(p);
  Rational out = 0;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (is_zero(c[i])) continue;
    const SkewTerm& t = terms[i];
    Rational x = c[i] * u_skew(t.lambda, t.nu, q) * v_skew(t.mu, t.eta, q) * s_factor(t.lambda, t.mu, q);
    if (t.nu.size() % 2) x = -x;
    out += x;
  }
  return out;
}

Rational icb_coefficient(int k, const ParameterPoint& p) {
  IcbSeries s = icb_rank1(p.at(sym::theta), p.at(sym::beta), p.at(sym::theta_0), p.at(sym::theta_t), k);
  return s.coeffs[k].a();
}

namespace {

// Row-reduced system grown one equation at a time.
class IncrementalSystem {
 public:
  explicit IncrementalSystem(int n) : n_(n) {}

  // false when the row contradicts the rows already present.
  bool add(std::vector<Rational> row) {
    for (size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = row[pivots_[r]];
      if (is_zero(f)) continue;
      for (int j = 0; j <= n_; ++j)
        if (!is_zero(rows_[r][j])) row[j] -= f * rows_[r][j];
    }
    int piv = -1;
    for (int j = 0; j < n_; ++j)
      if (!is_zero(row[j])) {
        piv = j;
        break;
      }
    if (piv < 0) return is_zero(row[n_]);
    Rational inv = 1 / row[piv];
    for (int j = 0; j <= n_; ++j) row[j] *= inv;
    for (auto& other : rows_) {
      const Rational f = other[piv];
      if (is_zero(f)) continue;
      for (int j = 0; j <= n_; ++j)
        if (!is_zero(row[j])) other[j] -= f * row[j];
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(piv);
    return true;
  }

  int rank() const { return static_cast<int>(rows_.size()); }

  void solution(std::vector<Rational>& particular, std::vector<std::vector<Rational>>& kernel,
                std::vector<int>& free_cols) const {
    std::vector<int> owner(n_, -1);
    for (size_t r = 0; r < rows_.size(); ++r) owner[pivots_[r]] = static_cast<int>(r);
    particular.assign(n_, Rational(0));
    for (size_t r = 0; r < rows_.size(); ++r) particular[pivots_[r]] = rows_[r][n_];
    kernel.clear();
    free_cols.clear();
    for (int f = 0; f < n_; ++f) {
      if (owner[f] >= 0) continue;
      std::vector<Rational> v(n_, Rational(0));
      v[f] = 1;
      for (size_t r = 0; r < rows_.size(); ++r) v[pivots_[r]] = -rows_[r][f];
      kernel.push_back(std::move(v));
      free_cols.push_back(f);
    }
  }

 private:
  int n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> pivots_;
};

Partition conj(const Partition& p) { return p.conjugate(); }

void integer_search(CSolution& sol, const std::vector<int>& free_cols, const SolveOptions& opt) {
  const int m = static_cast<int>(free_cols.size());
  const int n = static_cast<int>(sol.particular.size());
  long combos = 1;
  for (int i = 0; i < m && combos <= opt.search_limit; ++i) combos *= opt.search_bound + 1;
  if (combos > opt.search_limit) return;
  sol.search_complete = true;
  std::vector<int> v(m, 0);
  for (;;) {
    std::vector<long> x(n);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      Rational xi = sol.particular[i];
      for (int j = 0; j < m; ++j)
        if (v[j] != 0) xi += sol.kernel[j][i] * v[j];
      if (!is_integer(xi) || sgn(xi) < 0)
        ok = false;
      else
        x[i] = xi.get_num().get_si();
    }
    if (ok) sol.integer_points.push_back(std::move(x));
    int j = 0;
    while (j < m && ++v[j] > opt.search_bound) v[j++] = 0;
    if (j == m) break;
  }
}

}  // namespace

CSolution solve_c(int k, const SolveOptions& opt) {
  CSolution sol;
  sol.order = k;
  sol.symmetric = opt.symmetric;
  sol.observed = opt.observed;
  sol.unknowns = skew_terms(k);
  const int n = static_cast<int>(sol.unknowns.size());
  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i) index[sol.unknowns[i].key()] = i;

  IncrementalSystem sys(n);
  if (opt.symmetric) {
    for (int i = 0; i < n; ++i) {
      const SkewTerm& t = sol.unknowns[i];
      for (const SkewTerm& s : {SkewTerm{t.mu, t.lambda, t.eta, t.nu},
                                SkewTerm{conj(t.lambda), conj(t.mu), conj(t.nu), conj(t.eta)}}) {
        int j = index.at(s.key());
        if (j == i) continue;
        std::vector<Rational> row(n + 1, Rational(0));
        row[i] = 1;
        row[j] = -1;
        sys.add(std::move(row));
      }
    }
  }

  if (opt.observed) {
    for (int i = 0; i < n; ++i)
      if (auto v = observed_value(sol.unknowns[i])) {
        std::vector<Rational> row(n + 1, Rational(0));
        row[i] = 1;
        row[n] = *v;
        if (!sys.add(std::move(row))) {
          sol.consistent = false;
          return sol;
        }
      }
  }

  const int trials = opt.trials > 0 ? opt.trials : n + 20;
  RationalSampler sampler(opt.seed);
  const std::vector<std::string> symbols{sym::theta_0, sym::theta_t, sym::theta, sym::beta};
  std::vector<ParameterPoint> pts;
  for (int i = 0; i < trials; ++i) pts.push_back(sampler.sample(symbols));

  std::vector<std::vector<Rational>> rows(pts.size());
  std::vector<char> usable(pts.size(), 1);
  parallel_for(pts.size(), opt.threads, [&](size_t i) {
    const ParameterPoint& p = pts[i];
    Rational rhs;
    try {
      rhs = icb_coefficient(k, p);
    } catch (const NonGenericPoint&) {
      usable[i] = 0;
      return;
    }
    Point4 q(p);
    std::vector<Rational> row(n + 1);
    for (int j = 0; j < n; ++j) {
      const SkewTerm& t = sol.unknowns[j];
      Rational x = u_skew(t.lambda, t.nu, q) * v_skew(t.mu, t.eta, q) * s_factor(t.lambda, t.mu, q);
      row[j] = t.nu.size() % 2 ? Rational(-x) : x;
    }
    row[n] = rhs;
    rows[i] = std::move(row);
  });
  for (size_t i = 0; i < pts.size(); ++i) {
    if (!usable[i]) continue;
    ++sol.points;
    if (!sys.add(rows[i])) {
      sol.consistent = false;
      sol.witness = pts[i];
      break;
    }
  }
  sol.rank = sys.rank();
  if (!sol.consistent) return sol;

  std::vector<int> free_cols;
  sys.solution(sol.particular, sol.kernel, free_cols);
  sol.determined.assign(n, true);
  for (const auto& v : sol.kernel)
    for (int i = 0; i < n; ++i)
      if (!is_zero(v[i])) sol.determined[i] = false;
  integer_search(sol, free_cols, opt);
  return sol;
}

std::optional<Rational> observed_value(const SkewTerm& t) {
  static const Partition one{1}, two{2}, two_cols{1, 1};
  if (t.nu.empty()) return Rational(1);
  if (t.nu == one && t.eta == one) return Rational(2L * t.lambda.size() * t.mu.size());
  if (t.nu == two && t.eta == two) return Rational(static_cast<long>(q_stat(t.lambda)) * q_stat(t.mu));
  if (t.nu == two && t.eta == two_cols) return Rational(3L * q_stat(t.lambda) * q_stat(t.mu.conjugate()));
  return std::nullopt;
}

bool ObservedReport::pass() const {
  if (negative_or_fractional != 0) return false;
  for (const auto& c : checks)
    if (c.mismatched != 0) return false;
  return true;
}

ObservedReport verify_observed(const std::vector<CSolution>& tables) {
  ObservedReport rep;
  std::map<std::string, ObservedCheck> checks;
  const Partition one{1}, two{2}, two_cols{1, 1};
  auto record = [&](const std::string& family, const CSolution& sol, int i, const std::optional<Rational>& expect,
                    const std::string& partner = "") {
    ObservedCheck& c = checks[family];
    c.family = family;
    if (!sol.determined[i] || (!partner.empty() && !sol.determined[std::stoi(partner)])) {
      ++c.undetermined;
      return;
    }
    Rational want = expect ? *expect : sol.particular[std::stoi(partner)];
    if (sol.particular[i] == want) {
      ++c.matched;
    } else {
      ++c.mismatched;
      c.mismatches.push_back(sol.unknowns[i].key());
    }
  };

  for (const CSolution& sol : tables) {
    if (!sol.consistent) continue;
    std::map<std::string, int> index;
    for (size_t i = 0; i < sol.unknowns.size(); ++i) index[sol.unknowns[i].key()] = static_cast<int>(i);
    for (size_t ii = 0; ii < sol.unknowns.size(); ++ii) {
      const int i = static_cast<int>(ii);
      const SkewTerm& t = sol.unknowns[i];
      if (sol.determined[i]) {
        const Rational& x = sol.particular[i];
        if (!is_integer(x) || sgn(x) < 0) ++rep.negative_or_fractional;
      }
      if (t.nu.empty()) record("c^{0,0} = 1", sol, i, Rational(1));
      if (t.nu == one && t.eta == one) record("c^{(1),(1)} = 2|lambda||mu|", sol, i, Rational(2L * t.lambda.size() * t.mu.size()));
      if (t.nu == two && t.eta == two)
        record("c^{(2),(2)} = q_lambda q_mu", sol, i, Rational(static_cast<long>(q_stat(t.lambda)) * q_stat(t.mu)));
      if (t.nu == two && t.eta == two_cols)
        record("c^{(2),(1,1)} = 3 q_lambda q_mu'", sol, i,
               Rational(3L * q_stat(t.lambda) * q_stat(t.mu.conjugate())));
      int swap = index.at(SkewTerm{t.mu, t.lambda, t.eta, t.nu}.key());
      record("swap symmetry", sol, i, std::nullopt, std::to_string(swap));
      int tr = index.at(SkewTerm{conj(t.lambda), conj(t.mu), conj(t.nu), conj(t.eta)}.key());
      record("transpose symmetry", sol, i, std::nullopt, std::to_string(tr));
    }
  }
  for (auto& [name, c] : checks) rep.checks.push_back(std::move(c));
  return rep;
}

}  // namespace cbtau
