#pragma once

#include <map>
#include <string>

#include "cbtau/scalar.hpp"

namespace cbtau {

// Gamma via argument lifting into the Stirling regime. Throws DomainError at poles.
BigFloat gamma_hp(const BigFloat& z, int digits);
BigFloat gamma_hp(const Rational& z, int digits);

// Exact Bernoulli number B_n (B_1 = -1/2).
Rational bernoulli(int n);

// A finite product of Gamma(arg)^power with rational arguments. Factors whose
// arguments differ by integers are folded together, so the product evaluates to
// an exact rational whenever every non-integral residue class has total power 0.
class GammaProduct {
 public:
  void add(const Rational& arg, int power = 1);
  GammaProduct& operator*=(const GammaProduct& o);
  bool is_rational() const;
  Scalar evaluate(int digits) const;
  // Canonical form: per residue class the minimal argument, total power, and rational cofactor.
  bool same_value(const GammaProduct& o) const;
  const std::map<Rational, int>& factors() const { return factors_; }

 private:
  struct Reduced {
    Rational cofactor{1};
    std::map<Rational, int> base;  // class representative -> power
  };
  Reduced reduce() const;
  std::map<Rational, int> factors_;
};

GammaProduct barnes_shift_product(const Rational& x, int n);
// G(1+x+n)/G(1+x) as a finite Gamma product.
Scalar barnes_shift_ratio(const Rational& x, int n, int digits);

BigFloat to_bigfloat(const Scalar& s, int digits);

}  // namespace cbtau
