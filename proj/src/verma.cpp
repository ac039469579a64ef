#include "cbtau/verma.hpp"

#include <cmath>

#include "cbtau/errors.hpp"

namespace cbtau {

void axpy(GradedVector& y, const Rational& a, const GradedVector& x) {
  if (is_zero(a)) return;
  for (const auto& [w, v] : x) {
    auto [it, inserted] = y.try_emplace(w, 0);
    it->second += a * v;
    if (is_zero(it->second)) y.erase(it);
  }
}

GradedVector scaled(const GradedVector& x, const Rational& a) {
  GradedVector y;
  axpy(y, a, x);
  return y;
}

std::optional<int> VermaVector::level() const {
  std::optional<int> lvl;
  for (const auto& [w, v] : coeffs) {
    if (lvl && *lvl != w.size()) return std::nullopt;
    lvl = w.size();
  }
  return lvl ? lvl : 0;
}

namespace {
Partition drop_first(const Partition& p) {
  return Partition(std::vector<int>(p.parts().begin() + 1, p.parts().end()));
}

Partition prepend(int part, const Partition& p) {
  std::vector<int> v{part};
  v.insert(v.end(), p.parts().begin(), p.parts().end());
  return Partition(std::move(v));
}
}  // namespace

const GradedVector& VermaModule::act(int n, const Partition& word) {
  auto key = std::make_pair(n, word);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  GradedVector out;
  if (n == 0) {
    out[word] = delta_ + word.size();
  } else if (word.empty()) {
    if (n < 0) out[Partition{-n}] = 1;
  } else {
    int a = word.parts()[0];
    if (n < 0 && -n >= a) {
      out[prepend(-n, word)] = 1;
    } else {
      // L_n L_{-a} R = L_{-a} L_n R + (n+a) L_{n-a} R + (c/12)(n^3-n) delta_{n,a} R
      Partition rest = drop_first(word);
      GradedVector inner = act(n, rest);
      for (const auto& [w, v] : inner) axpy(out, v, act(-a, w));
      axpy(out, Rational(n + a), act(n - a, rest));
      if (n == a) {
        Rational central = c_ * rational(static_cast<long>(n) * n * n - n, 12);
        axpy(out, central, GradedVector{{rest, 1}});
      }
    }
  }
  return memo_.emplace(key, std::move(out)).first->second;
}

GradedVector VermaModule::act(int n, const GradedVector& v) {
  GradedVector out;
  for (const auto& [w, x] : v) axpy(out, x, act(n, w));
  return out;
}

Matrix<Rational> VermaModule::gram(int level) {
  auto basis = enumerate_partitions(level);
  int d = static_cast<int>(basis.size());
  Matrix<Rational> g(d, d);
  for (int col = 0; col < d; ++col) {
    for (int row = 0; row < d; ++row) {
      // <delta| L_{lambda_k} ... L_{lambda_1} L_{-mu} |delta>
      GradedVector v{{basis[col], 1}};
      for (int part : basis[row].parts()) v = act(part, v);
      auto it = v.find(Partition{});
      g(row, col) = it == v.end() ? Rational(0) : it->second;
    }
  }
  return g;
}

VermaVector verma_l_action(int n, const VermaVector& v) {
  VermaModule mod(v.delta, v.c);
  return {v.delta, v.c, mod.act(n, v.coeffs)};
}

Matrix<Rational> gram_matrix(const Rational& delta, const Rational& c, int m) {
  if (m < 0) throw UsageError("gram_matrix needs m >= 0");
  return VermaModule(delta, c).gram(m);
}

bool is_generic_verma(const Rational& delta, const Rational& c, int m) {
  VermaModule mod(delta, c);
  for (int k = 1; k <= m; ++k)
    if (is_zero(determinant(mod.gram(k)))) return false;
  return true;
}

Rational vertex_relation_factor(const Rational& d3, const Rational& d2, const Rational& d1, int n, int m) {
  Rational f = d3 + n * d2 - d1 + (m - n);
  if (n == 0) f += d1;
  return f;
}

std::vector<VermaVector> vertex_descendants(const Rational& d3, const Rational& d2, const Rational& d1,
                                            const Rational& c, int max_level) {
  VermaModule mod(d3, c);
  std::vector<VermaVector> out;
  out.push_back({d3, c, {{Partition{}, 1}}});
  for (int m = 1; m <= max_level; ++m) {
    auto basis = enumerate_partitions(m);
    Matrix<Rational> g = mod.gram(m);
    std::vector<Rational> rhs;
    for (const auto& lam : basis) {
      // <d3| L_lambda v_m> unwinds through the relation one mode at a time
      Rational r = 1;
      int level = m;
      for (int part : lam.parts()) {
        r *= vertex_relation_factor(d3, d2, d1, part, level);
        level -= part;
      }
      rhs.push_back(r);
    }
    std::vector<Rational> x;
    try {
      x = solve_unique(g, rhs);
    } catch (const NonGenericPoint&) {
      throw NonGenericPoint("degenerate weight: Gram matrix at level " + std::to_string(m) + " is singular");
    }
    VermaVector v{d3, c, {}};
    for (size_t i = 0; i < basis.size(); ++i)
      if (!is_zero(x[i])) v.coeffs[basis[i]] = x[i];
    out.push_back(std::move(v));
  }
  return out;
}

VermaVector vertex_descendant(const Rational& d3, const Rational& d2, const Rational& d1, const Rational& c,
                              int m) {
  return vertex_descendants(d3, d2, d1, c, m).back();
}

Rational dual_matrix_element(const Rational& d4, const Rational& d3, const Rational& d, const Partition& lambda) {
  // Moving L_{-n} left through Phi(1) gives (Delta_above + n*d3 - d4) with
  // Delta_above the weight of the remaining word.
  Rational r = 1;
  int tail = lambda.size();
  for (int part : lambda.parts()) {
    tail -= part;
    r *= d + tail + part * d3 - d4;
  }
  return r;
}

std::vector<Rational> four_point_block(const Rational& d1, const Rational& d2, const Rational& d,
                                       const Rational& d3, const Rational& d4, const Rational& c, int max_order) {
  auto vs = vertex_descendants(d, d2, d1, c, max_order);
  std::vector<Rational> b;
  for (const auto& v : vs) {
    Rational s = 0;
    for (const auto& [w, x] : v.coeffs) s += x * dual_matrix_element(d4, d3, d, w);
    b.push_back(s);
  }
  return b;
}

namespace {
double max_abs(const GradedVector& v) {
  double m = 0;
  for (const auto& [w, x] : v) m = std::max(m, std::fabs(x.get_d()));
  return m;
}
}  // namespace

CollisionReport collision_check(const Rational& c1, const Rational& c2, const Rational& c10, const Rational& c21,
                                const Rational& c20, const Rational& d3, const Rational& central,
                                const std::vector<Rational>& lambdas, int m_max) {
  CollisionReport rep;
  std::vector<std::vector<GradedVector>> scaled_levels;  // per lambda, v_m / L^m
  for (const auto& L : lambdas) {
    Rational d2 = c2 * L * L + c21 * L + c20 - c1 * L - c10;
    Rational d1 = d2 - c1 * L - c10;
    try {
      auto vs = vertex_descendants(d3, d2, d1, central, m_max);
      std::vector<GradedVector> lv;
      for (int m = 0; m <= m_max; ++m) lv.push_back(scaled(vs[m].coeffs, 1 / ipow(L, m)));
      rep.lambdas.push_back(L);
      scaled_levels.push_back(std::move(lv));
    } catch (const NonGenericPoint& e) {
      rep.notes.push_back("skipped Lambda=" + to_string(L) + ": " + e.what());
    }
  }
  for (size_t i = 0; i + 1 < scaled_levels.size(); ++i) {
    std::vector<double> diff;
    for (int m = 0; m <= m_max; ++m) {
      GradedVector d = scaled_levels[i + 1][m];
      axpy(d, -1, scaled_levels[i][m]);
      diff.push_back(max_abs(d));
    }
    rep.differences.push_back(std::move(diff));
  }
  if (scaled_levels.size() >= 2) {
    size_t k = scaled_levels.size();
    const Rational& La = rep.lambdas[k - 2];
    const Rational& Lb = rep.lambdas[k - 1];
    // Richardson step removing the O(1/Lambda) term.
    std::vector<GradedVector> p;
    for (int m = 0; m <= m_max; ++m) {
      GradedVector e = scaled(scaled_levels[k - 1][m], Lb / (Lb - La));
      axpy(e, -La / (Lb - La), scaled_levels[k - 2][m]);
      p.push_back(std::move(e));
    }
    VermaModule mod(d3, central);
    for (int m = 0; m <= m_max; ++m) {
      GradedVector r1 = mod.act(1, p[m]);
      if (m >= 1) axpy(r1, -c1, p[m - 1]);
      GradedVector r2 = mod.act(2, p[m]);
      if (m >= 2) axpy(r2, -c2, p[m - 2]);
      rep.residuals.push_back(std::max(max_abs(r1), max_abs(r2)));
    }
  }
  return rep;
}

}  // namespace cbtau
