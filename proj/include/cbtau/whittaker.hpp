#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cbtau/partition.hpp"
#include "cbtau/scalar.hpp"
#include "cbtau/verma.hpp"

namespace cbtau {

// Element of the Whittaker module W^[r]_Lambda. A partition lambda stands for
// the word L_{r-lambda_1} ... L_{r-lambda_k} |Lambda>, modes weakly increasing and < r.
struct WhittakerVector {
  int rank = 1;
  std::vector<Rational> lambda;  // Lambda_r .. Lambda_{2r}
  Rational c;
  GradedVector coeffs;
};

class WhittakerModule {
 public:
  WhittakerModule(int rank, std::vector<Rational> lambda, Rational c);

  int rank() const { return r_; }
  const std::vector<Rational>& lambda() const { return lambda_; }
  const Rational& central_charge() const { return c_; }
  // Eigenvalue of L_n on |Lambda> for n >= r (zero above 2r).
  Rational eigen(int n) const;

  const GradedVector& act(int n, const Partition& word);
  GradedVector act(int n, const GradedVector& v);

 private:
  int r_;
  std::vector<Rational> lambda_;
  Rational c_;
  std::map<std::pair<int, Partition>, GradedVector> memo_;
};

WhittakerVector whittaker_l_action(int n, const WhittakerVector& v);

struct IrregularParams {
  int rank = 1;
  Rational delta;
  Rational c;
  std::vector<Rational> lambda_in;   // Lambda_r .. Lambda_{2r}
  std::vector<Rational> lambda_out;  // Lambda'_n = Lambda_n - delta_{n,r} r beta_r
  std::vector<Rational> beta;        // beta_1 .. beta_r
  Rational alpha;
};

// Exponents of the irregular vertex operator Phi(z): W_Lambda -> W_Lambda', whose
// prefactor is z^alpha exp(sum_j beta_j z^{-j}). Rank 1 or 2.
IrregularParams irregular_vertex_params(int rank, const Rational& delta, const std::vector<Rational>& lambda,
                                        const Rational& beta_r, const Rational& c = Rational(1));

// Components w_0..w_M of Phi(z)|Lambda> = z^alpha e^{...} sum_m w_m z^m, w_0 = |Lambda'>.
std::vector<WhittakerVector> irregular_descendants(const IrregularParams& params, int max_level);
WhittakerVector irregular_descendant(int rank, const Rational& delta, const std::vector<Rational>& lambda,
                                     const Rational& beta_r, int m, const Rational& c = Rational(1));

// Right side of (L_n - Lambda'_n) w_M for n >= r, as a combination of lower w's.
GradedVector irregular_relation_rhs(const IrregularParams& params, const std::vector<WhittakerVector>& w, int n,
                                    int level);

enum class PairingKind { DUAL_VERMA, VACUUM };

// <delta| v for rank 1 (only powers of L_0 survive) or <0| v for rank 2.
Rational pair_out(PairingKind kind, const Rational& delta, const WhittakerVector& v);

struct IcbSeries {
  int rank = 1;
  Rational alpha;                 // the block is scale^alpha t^{-alpha} exp(sum_j exp_poly[j-1] t^j) sum_k a_k t^{-r' k}
  std::vector<QuadExt> exp_poly;  // beta_j / scale^j, j = 1..r
  QuadExt scale{1};
  std::vector<QuadExt> coeffs;  // a_k = pair(w_k) scale^k, coefficient of t^{-k}
};

IcbSeries icb_series(int rank, const Rational& delta_out, const Rational& delta_insert,
                     const std::vector<Rational>& lambda, const Rational& beta_r, const QuadExt& scale,
                     int max_order, const Rational& c = Rational(1));

// The two normal forms used for the Painleve blocks:
// rank 1: Lambda = (theta, 1/4), beta_1 = beta, Delta = theta_t^2, outgoing theta_0^2;
// rank 2: Lambda = (theta, 0, 1/4), beta_2 = beta/2, Delta = theta_t^2, vacuum pairing.
IcbSeries icb_rank1(const Rational& theta, const Rational& beta, const Rational& theta_0, const Rational& theta_t,
                    int max_order);
IcbSeries icb_rank2(const Rational& theta, const Rational& beta, const Rational& theta_t, const QuadExt& scale,
                    int max_order);

}  // namespace cbtau
