#pragma once

#include <string>
#include <vector>

#include "cbtau/param.hpp"
#include "cbtau/partition.hpp"

namespace cbtau {

enum class NekrasovKind { FULL4, PV, PIII, PIII_ALT, PIII_D7, PIII_D8 };

std::string to_string(NekrasovKind kind);
NekrasovKind parse_nekrasov_kind(std::string_view name);
// The symbols a kind reads from a parameter point.
std::vector<std::string> nekrasov_symbols(NekrasovKind kind);

Rational nekrasov_factor(NekrasovKind kind, const Partition& lambda, const Partition& mu, const ParameterPoint& p);

// Coefficients of t^0..t^M of sum_{lambda,mu} N_{lambda,mu} t^{|lambda|+|mu|}.
std::vector<Rational> block_sum(NekrasovKind kind, const ParameterPoint& p, int max_order, int threads = 1);

// First `count` coefficients of (1-t)^a.
std::vector<Rational> binomial_series(const Rational& a, int count);

struct AgtReport {
  bool pass = true;
  std::vector<Rational> virasoro;  // B_k from the Gram recursion
  std::vector<Rational> agt;       // (1-t)^{2 theta_t theta_1} times the N-sum
  // Same comparison with the exponent 2 theta_0 theta_1 in the dressing factor.
  bool theta0_dressing_pass = false;
};

AgtReport agt_equivalence_check(const ParameterPoint& p, int max_order, int threads = 1);

// Point of the parent family that tends to the child family as Lambda grows.
ParameterPoint degeneration_point(NekrasovKind parent, NekrasovKind child, const ParameterPoint& p,
                                  const Rational& lambda);

struct DegenerationReport {
  std::vector<Rational> lambdas;
  std::vector<Rational> child;                  // child coefficients (exact)
  std::vector<std::vector<double>> deviations;  // [k][i]: |parent_k(L_i)/L_i^k - child_k|
  std::vector<std::vector<double>> ratios;      // [k][i]: deviations[k][i] / deviations[k][i+1]
};

DegenerationReport degeneration_limit_check(NekrasovKind parent, NekrasovKind child, const ParameterPoint& p,
                                            const std::vector<Rational>& lambdas, int max_order, int threads = 1);

// Deviations must shrink by a fixed power 10^p (p >= 1) per decade of Lambda,
// i.e. every ratio lies in [8, 12] * 10^{p-1}. orders[k] is that p, 0 when the
// coefficient matches exactly at every Lambda, -1 when the pattern fails.
struct DegenerationVerdict {
  bool pass = true;
  std::vector<int> orders;
};
DegenerationVerdict degeneration_verdict(const DegenerationReport& rep);


}  // namespace cbtau
