#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cbtau/linalg.hpp"
#include "cbtau/partition.hpp"
#include "cbtau/scalar.hpp"

namespace cbtau {

// Coefficients over PBW words, keyed by partition.
using GradedVector = std::map<Partition, Rational>;

void axpy(GradedVector& y, const Rational& a, const GradedVector& x);
GradedVector scaled(const GradedVector& x, const Rational& a);

struct VermaVector {
  Rational delta;
  Rational c;
  GradedVector coeffs;  // word lambda stands for L_{-lambda_1} ... L_{-lambda_k}|delta>
  std::optional<int> level() const;
};

// Verma module M(delta, c) with memoized action on basis words. Not thread-safe;
// give each thread its own instance.
class VermaModule {
 public:
  VermaModule(Rational delta, Rational c) : delta_(std::move(delta)), c_(std::move(c)) {}

  const Rational& delta() const { return delta_; }
  const Rational& central_charge() const { return c_; }

  const GradedVector& act(int n, const Partition& word);
  GradedVector act(int n, const GradedVector& v);
  Matrix<Rational> gram(int level);

 private:
  Rational delta_, c_;
  std::map<std::pair<int, Partition>, GradedVector> memo_;
};

VermaVector verma_l_action(int n, const VermaVector& v);
Matrix<Rational> gram_matrix(const Rational& delta, const Rational& c, int m);
bool is_generic_verma(const Rational& delta, const Rational& c, int m);

// Right side of the vertex-operator relation, L_n v_m = f(n, m) v_{m-n}.
Rational vertex_relation_factor(const Rational& d3, const Rational& d2, const Rational& d1, int n, int m);

// Level components v_0..v_max of Phi^{d2}_{d3,d1}(z)|d1> in M(d3, c).
std::vector<VermaVector> vertex_descendants(const Rational& d3, const Rational& d2, const Rational& d1,
                                            const Rational& c, int max_level);
VermaVector vertex_descendant(const Rational& d3, const Rational& d2, const Rational& d1, const Rational& c,
                              int m);

// <d4| Phi^{d3}(1) L_{-lambda} |d> / <d4| Phi^{d3}(1) |d>.
Rational dual_matrix_element(const Rational& d4, const Rational& d3, const Rational& d, const Partition& lambda);

std::vector<Rational> four_point_block(const Rational& d1, const Rational& d2, const Rational& d,
                                       const Rational& d3, const Rational& d4, const Rational& c, int max_order);

struct CollisionReport {
  std::vector<Rational> lambdas;
  // differences[i][m]: max |coeff| of v_m/L^m between lambdas[i] and lambdas[i+1]
  std::vector<std::vector<double>> differences;
  // residuals[m]: max |coeff| of L_1 p_m - c1 p_{m-1} and L_2 p_m - c2 p_{m-2}, with p_m
  // extrapolated from the two largest lambdas
  std::vector<double> residuals;
  std::vector<std::string> notes;
};

CollisionReport collision_check(const Rational& c1, const Rational& c2, const Rational& c10, const Rational& c21,
                                const Rational& c20, const Rational& d3, const Rational& central,
                                const std::vector<Rational>& lambdas, int m_max);

}  // namespace cbtau
