#include "cbtau/whittaker.hpp"

#include <algorithm>
#include <set>

#include "cbtau/errors.hpp"
#include "cbtau/linalg.hpp"

namespace cbtau {

WhittakerModule::WhittakerModule(int rank, std::vector<Rational> lambda, Rational c)
    : r_(rank), lambda_(std::move(lambda)), c_(std::move(c)) {
  if (r_ < 1 || r_ > 2) throw UsageError("Whittaker rank must be 1 or 2");
  if (static_cast<int>(lambda_.size()) != r_ + 1)
    throw UsageError("Whittaker module of rank " + std::to_string(r_) + " needs " + std::to_string(r_ + 1) +
                     " eigenvalues");
}

Rational WhittakerModule::eigen(int n) const {
  if (n < r_) throw UsageError("L_n with n < r is not diagonal on |Lambda>");
  if (n > 2 * r_) return 0;
  return lambda_[n - r_];
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

const GradedVector& WhittakerModule::act(int n, const Partition& word) {
  auto key = std::make_pair(n, word);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  GradedVector out;
  if (word.empty()) {
    if (n >= r_) {
      Rational e = eigen(n);
      if (!is_zero(e)) out[word] = e;
    } else {
      out[Partition{r_ - n}] = 1;
    }
  } else {
    int a = r_ - word.parts()[0];  // leftmost mode
    if (n <= a) {
      out[prepend(r_ - n, word)] = 1;
    } else {
      // L_n L_a R = L_a L_n R + (n-a) L_{n+a} R + (c/12)(n^3-n) delta_{n+a,0} R
      Partition rest = drop_first(word);
      GradedVector inner = act(n, rest);
      for (const auto& [w, v] : inner) {
        GradedVector moved = act(a, w);
        axpy(out, v, moved);
      }
      GradedVector shifted = act(n + a, rest);
      axpy(out, Rational(n - a), shifted);
      if (n + a == 0) axpy(out, c_ * rational(static_cast<long>(n) * n * n - n, 12), GradedVector{{rest, 1}});
    }
  }
  return memo_.emplace(key, std::move(out)).first->second;
}

GradedVector WhittakerModule::act(int n, const GradedVector& v) {
  GradedVector out;
  for (const auto& [w, x] : v) {
    GradedVector y = act(n, w);
    axpy(out, x, y);
  }
  return out;
}

WhittakerVector whittaker_l_action(int n, const WhittakerVector& v) {
  WhittakerModule mod(v.rank, v.lambda, v.c);
  return {v.rank, v.lambda, v.c, mod.act(n, v.coeffs)};
}

IrregularParams irregular_vertex_params(int rank, const Rational& delta, const std::vector<Rational>& lambda,
                                        const Rational& beta_r, const Rational& c) {
  if (rank < 1 || rank > 2) throw UsageError("irregular vertex operators are implemented for rank 1 and 2");
  if (static_cast<int>(lambda.size()) != rank + 1) throw UsageError("wrong number of Lambda values");
  if (is_zero(lambda.back())) throw DomainError("Lambda_{2r} must be nonzero");
  IrregularParams p;
  p.rank = rank;
  p.delta = delta;
  p.c = c;
  p.lambda_in = lambda;
  p.lambda_out = lambda;
  p.lambda_out[0] -= rank * beta_r;
  if (rank == 1) {
    const Rational &l1 = lambda[0], &l2 = lambda[1];
    p.beta = {beta_r};
    p.alpha = -beta_r * (l1 - beta_r) / (2 * l2) - 2 * delta;
  } else {
    const Rational &l2 = lambda[0], &l3 = lambda[1], &l4 = lambda[2];
    Rational b1 = beta_r * l3 / l4;
    p.beta = {b1, beta_r};
    p.alpha = beta_r * l3 * l3 / (4 * l4 * l4) + (3 * beta_r * beta_r - beta_r * l2) / l4 - 3 * delta;
  }
  return p;
}

namespace {

// Value plus a linear combination of undetermined constants (by id).
struct Affine {
  Rational c{0};
  std::map<int, Rational> p;

  bool is_zero() const { return cbtau::is_zero(c) && p.empty(); }
  void add(const Affine& o, const Rational& s) {
    if (cbtau::is_zero(s)) return;
    c += s * o.c;
    for (const auto& [id, v] : o.p) {
      Rational& t = p[id];
      t += s * v;
      if (cbtau::is_zero(t)) p.erase(id);
    }
  }
};

using AffineVector = std::map<Partition, Affine>;

void add_scaled(AffineVector& y, const Affine& a, const GradedVector& x) {
  for (const auto& [w, v] : x) {
    Affine& t = y[w];
    t.add(a, v);
    if (t.is_zero()) y.erase(w);
  }
}

void add_scaled(AffineVector& y, const Rational& s, const AffineVector& x) {
  for (const auto& [w, a] : x) {
    Affine& t = y[w];
    t.add(a, s);
    if (t.is_zero()) y.erase(w);
  }
}

const Affine kZero{};

const Affine& lookup(const AffineVector& v, const Partition& w) {
  auto it = v.find(w);
  return it == v.end() ? kZero : it->second;
}

void substitute(AffineVector& v, int id, const Affine& value) {
  for (auto it = v.begin(); it != v.end();) {
    Affine& a = it->second;
    auto f = a.p.find(id);
    if (f != a.p.end()) {
      Rational s = f->second;
      a.p.erase(f);
      a.add(value, s);
    }
    if (a.is_zero())
      it = v.erase(it);
    else
      ++it;
  }
}

// Builds w_0, w_1, ... level by level. At level M the unknown w_M (in U_M, the
// span of words of degree <= M) is fixed by (L_n - Lambda'_n) w_M = rhs_n for
// r <= n <= 2r. Components are solved from the top degree down: the degree-d
// part is pinned by the projections of those equations onto degrees d-1 and
// d-2 (after eliminating the degree-(d-1) unknowns in rank 2). The constant
// term is only fixed one level later, so it is carried as a named unknown.
class IrregularSolver {
 public:
  explicit IrregularSolver(const IrregularParams& p) : p_(p), mod_(p.rank, p.lambda_out, p.c) {
    w_.push_back({{Partition{}, Affine{Rational(1), {}}}});
  }

  std::vector<WhittakerVector> run(int target) {
    for (int level = 1; !settled(target); ++level) {
      if (level > target + 6) throw Error("irregular descendants did not settle");
      solve_level(level);
    }
    std::vector<WhittakerVector> out;
    for (int m = 0; m <= target; ++m) {
      WhittakerVector v{p_.rank, p_.lambda_out, p_.c, {}};
      for (const auto& [w, a] : w_[m])
        if (!cbtau::is_zero(a.c)) v.coeffs[w] = a.c;
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  bool settled(int target) const {
    if (static_cast<int>(w_.size()) <= target) return false;
    for (int m = 0; m <= target; ++m)
      for (const auto& [w, a] : w_[m])
        if (!a.p.empty()) return false;
    return true;
  }

  GradedVector op(int n, const Partition& mu) {
    GradedVector e = mod_.act(n, mu);
    Rational ev = mod_.eigen(n);
    if (!cbtau::is_zero(ev)) axpy(e, -ev, GradedVector{{mu, 1}});
    return e;
  }

  AffineVector rhs(int n, int level) const {
    AffineVector out;
    int r = p_.rank;
    for (int j = 1; j <= r; ++j) {
      int idx = level - n + j;
      if (idx < 0 || idx == level) continue;
      add_scaled(out, Rational(-j) * p_.beta[j - 1], w_[idx]);
    }
    if (level - n >= 0) add_scaled(out, p_.alpha + (n + 1) * p_.delta + (level - n), w_[level - n]);
    return out;
  }

  struct RowKind {
    std::vector<std::pair<int, Rational>> ops;  // (n, weight)
    int drop;                                   // projection degree = d - drop
  };

  std::vector<RowKind> row_kinds() const {
    if (p_.rank == 1) return {{{{1, Rational(1)}}, 1}, {{{2, Rational(1)}}, 1}};
    const Rational& l3 = p_.lambda_out[1];
    const Rational& l4 = p_.lambda_out[2];
    // 2 Lambda_4 E_2 - Lambda_3 E_3 has no degree-1 drop, so it does not see the
    // still unknown degree-(d-1) component at projection d-2.
    return {{{{2, Rational(1)}}, 1},
            {{{3, Rational(1)}}, 1},
            {{{4, Rational(1)}}, 2},
            {{{2, 2 * l4}, {3, -l3}}, 2}};
  }

  void record_residual(const Affine& a, std::vector<Affine>& constraints, const char* where) {
    if (a.is_zero()) return;
    if (a.p.empty())
      throw InconsistentSystem(std::string("irregular vertex operator relations are inconsistent (") + where + ")");
    constraints.push_back(a);
  }

  void solve_level(int level) {
    const int r = p_.rank;
    std::map<int, AffineVector> target, acc;
    for (int n = r; n <= 2 * r; ++n) target[n] = rhs(n, level);
    for (auto& [n, t] : target)
      for (const auto& [w, a] : t)
        if (w.size() >= level) throw Error("irregular relation right side leaves U_M");

    AffineVector x;
    std::vector<Affine> constraints;
    const int d_low = r;
    std::vector<RowKind> kinds = row_kinds();

    for (int d = level; d > d_low; --d) {
      std::vector<Partition> unknowns = enumerate_partitions(d);
      std::map<std::pair<int, Partition>, int> row_index;
      std::vector<std::pair<int, Partition>> rows;
      std::vector<std::map<int, GradedVector>> images(unknowns.size());
      for (size_t u = 0; u < unknowns.size(); ++u)
        for (int n = r; n <= 2 * r; ++n) images[u][n] = op(n, unknowns[u]);

      auto ensure_row = [&](int k, const Partition& tau) {
        auto key = std::make_pair(k, tau);
        if (row_index.emplace(key, static_cast<int>(rows.size())).second) rows.push_back(key);
      };
      for (size_t k = 0; k < kinds.size(); ++k) {
        int proj = d - kinds[k].drop;
        if (proj < 0) continue;
        for (size_t u = 0; u < unknowns.size(); ++u)
          for (const auto& [n, wt] : kinds[k].ops)
            for (const auto& [tau, v] : images[u][n])
              if (tau.size() == proj) ensure_row(static_cast<int>(k), tau);
      }

      // Affine right sides: constant plus named unknowns, one column each.
      std::vector<Affine> row_rhs(rows.size());
      std::set<int> ids;
      for (size_t i = 0; i < rows.size(); ++i) {
        const RowKind& kind = kinds[rows[i].first];
        for (const auto& [n, wt] : kind.ops) {
          row_rhs[i].add(lookup(target[n], rows[i].second), wt);
          row_rhs[i].add(lookup(acc[n], rows[i].second), -wt);
        }
        for (const auto& [id, v] : row_rhs[i].p) ids.insert(id);
      }
      std::vector<int> id_list(ids.begin(), ids.end());
      int nu = static_cast<int>(unknowns.size());
      int ncol = nu + 1 + static_cast<int>(id_list.size());
      Matrix<Rational> m(static_cast<int>(rows.size()), ncol);
      for (size_t u = 0; u < unknowns.size(); ++u)
        for (size_t k = 0; k < kinds.size(); ++k) {
          int proj = d - kinds[k].drop;
          for (const auto& [n, wt] : kinds[k].ops)
            for (const auto& [tau, v] : images[u][n])
              if (tau.size() == proj) m(row_index.at({static_cast<int>(k), tau}), static_cast<int>(u)) += wt * v;
        }
      for (size_t i = 0; i < rows.size(); ++i) {
        m(static_cast<int>(i), nu) = row_rhs[i].c;
        for (size_t q = 0; q < id_list.size(); ++q) {
          auto f = row_rhs[i].p.find(id_list[q]);
          if (f != row_rhs[i].p.end()) m(static_cast<int>(i), nu + 1 + static_cast<int>(q)) = f->second;
        }
      }
      auto piv = rref(m, nu);
      if (static_cast<int>(piv.size()) < nu)
        throw NonGenericPoint("irregular descendant undetermined at level " + std::to_string(level) + ", degree " +
                              std::to_string(d));
      for (int i = nu; i < m.rows(); ++i) {
        Affine res;
        res.c = m(i, nu);
        for (size_t q = 0; q < id_list.size(); ++q)
          if (!cbtau::is_zero(m(i, nu + 1 + static_cast<int>(q)))) res.p[id_list[q]] = m(i, nu + 1 + static_cast<int>(q));
        record_residual(res, constraints, "overdetermined rows");
      }
      for (int u = 0; u < nu; ++u) {
        Affine val;
        val.c = m(u, nu);
        for (size_t q = 0; q < id_list.size(); ++q)
          if (!cbtau::is_zero(m(u, nu + 1 + static_cast<int>(q)))) val.p[id_list[q]] = m(u, nu + 1 + static_cast<int>(q));
        if (val.is_zero()) continue;
        x[unknowns[u]] = val;
        for (int n = r; n <= 2 * r; ++n) add_scaled(acc[n], val, images[u][n]);
      }
      // Every equation projected to degree d-1 is now fully known.
      for (int n = r; n <= 2 * r; ++n) {
        std::set<Partition> taus;
        for (const auto& [w, a] : target[n])
          if (w.size() == d - 1) taus.insert(w);
        for (const auto& [w, a] : acc[n])
          if (w.size() == d - 1) taus.insert(w);
        for (const auto& tau : taus) {
          Affine res = lookup(target[n], tau);
          res.add(lookup(acc[n], tau), Rational(-1));
          record_residual(res, constraints, "projection check");
        }
      }
    }

    // Bottom block: words of degree <= r, all named unknowns, all remaining equations.
    std::vector<Partition> low;
    for (int d = d_low; d >= 1; --d)
      for (const auto& p : enumerate_partitions(d)) low.push_back(p);
    std::map<int, GradedVector> low_images;
    std::vector<std::map<int, GradedVector>> images(low.size() + 1);
    for (size_t u = 0; u < low.size(); ++u)
      for (int n = r; n <= 2 * r; ++n) images[u][n] = op(n, low[u]);
    for (int n = r; n <= 2 * r; ++n) images[low.size()][n] = op(n, Partition{});

    std::vector<std::pair<int, Partition>> rows;
    std::map<std::pair<int, Partition>, int> row_index;
    auto ensure_row = [&](int n, const Partition& tau) {
      auto key = std::make_pair(n, tau);
      if (row_index.emplace(key, static_cast<int>(rows.size())).second) rows.push_back(key);
    };
    std::set<int> ids;
    for (int n = r; n <= 2 * r; ++n) {
      for (const auto& img : images)
        for (const auto& [tau, v] : img.at(n))
          if (tau.size() < d_low) ensure_row(n, tau);
      for (const auto& [w, a] : target[n])
        if (w.size() < d_low) ensure_row(n, w);
      for (const auto& [w, a] : acc[n])
        if (w.size() < d_low) ensure_row(n, w);
    }
    std::vector<Affine> row_rhs;
    for (const auto& [n, tau] : rows) {
      Affine a = lookup(target[n], tau);
      a.add(lookup(acc[n], tau), Rational(-1));
      row_rhs.push_back(a);
    }
    for (const auto& c : constraints) row_rhs.push_back(c);
    for (const auto& a : row_rhs)
      for (const auto& [id, v] : a.p) ids.insert(id);

    std::vector<int> id_list(ids.begin(), ids.end());
    // Columns: low words, then named unknowns, then the constant term last so
    // that it is the one left free when the level cannot fix it.
    int nw = static_cast<int>(low.size());
    int np = static_cast<int>(id_list.size());
    int ncol = nw + np + 1;
    int nrows = static_cast<int>(row_rhs.size());
    Matrix<Rational> m(nrows, ncol + 1);
    for (int u = 0; u <= nw; ++u) {
      int col = u < nw ? u : ncol - 1;
      for (int n = r; n <= 2 * r; ++n)
        for (const auto& [tau, v] : images[u].at(n))
          if (tau.size() < d_low) m(row_index.at({n, tau}), col) += v;
    }
    for (int i = 0; i < nrows; ++i) {
      // sum A x - sum R_id p_id = R_const; constraints read sum e_id p_id = -e_const
      bool is_constraint = i >= static_cast<int>(rows.size());
      const Affine& a = row_rhs[i];
      for (int q = 0; q < np; ++q) {
        auto f = a.p.find(id_list[q]);
        if (f != a.p.end()) m(i, nw + q) = is_constraint ? f->second : Rational(-f->second);
      }
      m(i, ncol) = is_constraint ? Rational(-a.c) : a.c;
    }
    auto piv = rref(m, ncol);
    if (!rref_consistent(m, ncol, static_cast<int>(piv.size())))
      throw InconsistentSystem("irregular vertex operator relations are inconsistent at level " +
                               std::to_string(level));

    std::vector<bool> is_piv(ncol, false);
    for (int c : piv) is_piv[c] = true;
    std::map<int, Affine> var;  // column -> value in terms of free columns
    std::map<int, int> free_id;
    for (int col = 0; col < ncol; ++col) {
      if (is_piv[col]) continue;
      int id = (col >= nw && col < nw + np) ? id_list[col - nw] : next_id_++;
      free_id[col] = id;
      var[col] = Affine{Rational(0), {{id, Rational(1)}}};
    }
    for (size_t i = 0; i < piv.size(); ++i) {
      int col = piv[i];
      Affine v;
      v.c = m(static_cast<int>(i), ncol);
      for (const auto& [fc, id] : free_id) {
        const Rational& coef = m(static_cast<int>(i), fc);
        if (!cbtau::is_zero(coef)) v.add(var[fc], -coef);
      }
      var[col] = v;
    }
    for (int u = 0; u <= nw; ++u) {
      int col = u < nw ? u : ncol - 1;
      const Affine& v = var[col];
      if (!v.is_zero()) x[u < nw ? low[u] : Partition{}] = v;
    }
    for (int q = 0; q < np; ++q) {
      int col = nw + q;
      if (!is_piv[col]) continue;
      for (auto& wv : w_) substitute(wv, id_list[q], var[col]);
      substitute(x, id_list[q], var[col]);
    }
    w_.push_back(std::move(x));
  }

  IrregularParams p_;
  WhittakerModule mod_;
  std::vector<AffineVector> w_;
  int next_id_ = 0;
};

}  // namespace

std::vector<WhittakerVector> irregular_descendants(const IrregularParams& params, int max_level) {
  if (max_level < 0) throw UsageError("level must be >= 0");
  return IrregularSolver(params).run(max_level);
}

WhittakerVector irregular_descendant(int rank, const Rational& delta, const std::vector<Rational>& lambda,
                                     const Rational& beta_r, int m, const Rational& c) {
  return irregular_descendants(irregular_vertex_params(rank, delta, lambda, beta_r, c), m).back();
}

GradedVector irregular_relation_rhs(const IrregularParams& p, const std::vector<WhittakerVector>& w, int n,
                                    int level) {
  GradedVector out;
  for (int j = 1; j <= p.rank; ++j) {
    int idx = level - n + j;
    if (idx < 0 || idx == level) continue;
    axpy(out, Rational(-j) * p.beta[j - 1], w.at(idx).coeffs);
  }
  if (level - n >= 0) axpy(out, p.alpha + (n + 1) * p.delta + (level - n), w.at(level - n).coeffs);
  return out;
}

Rational pair_out(PairingKind kind, const Rational& delta, const WhittakerVector& v) {
  if (kind == PairingKind::DUAL_VERMA) {
    if (v.rank != 1) throw UsageError("the dual Verma pairing needs a rank-1 vector");
    Rational s = 0;
    for (const auto& [w, x] : v.coeffs) {
      // only words made of L_0 (parts equal to 1) survive
      if (!w.empty() && w.parts()[0] != 1) continue;
      s += x * ipow(delta, w.length());
    }
    return s;
  }
  if (v.rank != 2) throw UsageError("the vacuum pairing needs a rank-2 vector");
  auto it = v.coeffs.find(Partition{});
  return it == v.coeffs.end() ? Rational(0) : it->second;
}

IcbSeries icb_series(int rank, const Rational& delta_out, const Rational& delta_insert,
                     const std::vector<Rational>& lambda, const Rational& beta_r, const QuadExt& scale,
                     int max_order, const Rational& c) {
  IrregularParams p = irregular_vertex_params(rank, delta_insert, lambda, beta_r, c);
  auto ws = irregular_descendants(p, max_order);
  IcbSeries s;
  s.rank = rank;
  s.alpha = p.alpha;
  s.scale = scale;
  QuadExt sp = 1;
  for (int j = 1; j <= rank; ++j) {
    sp *= scale;
    s.exp_poly.push_back(QuadExt(p.beta[j - 1]) / sp);
  }
  PairingKind kind = rank == 1 ? PairingKind::DUAL_VERMA : PairingKind::VACUUM;
  QuadExt pw = 1;
  Rational a0 = pair_out(kind, delta_out, ws[0]);
  for (int k = 0; k <= max_order; ++k) {
    s.coeffs.push_back(QuadExt(pair_out(kind, delta_out, ws[k]) / a0) * pw);
    pw *= scale;
  }
  return s;
}

IcbSeries icb_rank1(const Rational& theta, const Rational& beta, const Rational& theta_0, const Rational& theta_t,
                    int max_order) {
  return icb_series(1, theta_0 * theta_0, theta_t * theta_t, {theta, rational(1, 4)}, beta, QuadExt(1), max_order);
}

IcbSeries icb_rank2(const Rational& theta, const Rational& beta, const Rational& theta_t, const QuadExt& scale,
                    int max_order) {
  return icb_series(2, Rational(0), theta_t * theta_t, {theta, Rational(0), rational(1, 4)}, beta / 2, scale,
                    max_order);
}

}  // namespace cbtau
