#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cbtau/param.hpp"
#include "cbtau/partition.hpp"

namespace cbtau {

// One summand of the rank-one skew expansion: nu inside lambda, eta inside mu, |nu| = |eta|.
struct SkewTerm {
  Partition lambda, mu, nu, eta;
  std::string key() const;  // "lambda|mu|nu|eta"
  bool operator==(const SkewTerm&) const = default;
};

struct SkewWeight {
  Rational U, V, S;
};

// Cellwise U_{lambda/nu}, V_{mu/eta} and S_{lambda,mu} at (theta_0, theta_t, theta, beta).
SkewWeight skew_weight(const SkewTerm& term, const ParameterPoint& p);
Rational skew_u(const Partition& lambda, const Partition& nu, const ParameterPoint& p);
Rational skew_v(const Partition& mu, const Partition& eta, const ParameterPoint& p);
Rational skew_n(const Partition& lambda, const Partition& mu, const ParameterPoint& p);

int q_stat(const Partition& lambda);
// Row-major entries of the tableau whose total is q_stat.
std::vector<std::vector<int>> q_tableau(const Partition& lambda);

// All terms with |lambda| + |mu| = k, in a fixed order.
std::vector<SkewTerm> skew_terms(int k);

// Right side of the expansion at order k for a given coefficient vector (aligned with skew_terms(k)).
Rational skew_expansion(int k, const std::vector<Rational>& c, const ParameterPoint& p);
// Coefficient a_k of the rank-one block.
Rational icb_coefficient(int k, const ParameterPoint& p);

struct CSolution {
  int order = 0;
  std::vector<SkewTerm> unknowns;
  bool symmetric = false;  // symmetry relations imposed as constraints
  bool observed = false;   // the observed closed-form families imposed as constraints
  bool consistent = true;
  std::optional<ParameterPoint> witness;  // first point that made the system inconsistent
  int points = 0;
  int rank = 0;
  std::vector<Rational> particular;          // free coordinates set to 0
  std::vector<std::vector<Rational>> kernel;  // basis of the homogeneous solutions
  std::vector<bool> determined;               // coordinate is the same on every solution
  // Non-negative integer solutions with free coordinates in [0, search_bound].
  std::vector<std::vector<long>> integer_points;
  bool search_complete = false;
  int nullity() const { return static_cast<int>(kernel.size()); }
};

struct SolveOptions {
  int trials = 0;  // 0: #unknowns + 20
  std::uint64_t seed = 1;
  bool symmetric = true;
  bool observed = false;
  int search_bound = 64;
  long search_limit = 2000000;
  int threads = 1;
};

CSolution solve_c(int k, const SolveOptions& opt = {});

// Closed-form value of c for the observed families, if the term belongs to one.
std::optional<Rational> observed_value(const SkewTerm& t);

struct ObservedCheck {
  std::string family;
  int matched = 0;
  int mismatched = 0;
  int undetermined = 0;
  std::vector<std::string> mismatches;  // term keys
};

struct ObservedReport {
  std::vector<ObservedCheck> checks;
  int negative_or_fractional = 0;  // determined entries that are not non-negative integers
  bool pass() const;
};

ObservedReport verify_observed(const std::vector<CSolution>& tables);

}  // namespace cbtau
