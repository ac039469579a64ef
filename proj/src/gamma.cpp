#include "cbtau/gamma.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include "cbtau/errors.hpp"

namespace cbtau {

Rational bernoulli(int n) {
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(table.size()) <= n) {
    int m = static_cast<int>(table.size());
    // sum_{k=0}^{m} C(m+1,k) B_k = 0
    Rational s = 0;
    Integer binom = 1;
    for (int k = 0; k < m; ++k) {
      s += binom * table[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    table.push_back(-s / (m + 1));
  }
  return table[n];
}

namespace {

// log Gamma(x) for x large and positive; the Stirling remainder is bounded by
// the first omitted term, so we stop once that falls below the working ulp.
bool stirling_log_gamma(const BigFloat& x, int work_digits, BigFloat& out) {
  mpfr_prec_t bits = BigFloat::bits_for(work_digits);
  BigFloat half(rational(1, 2), work_digits);
  BigFloat lx = log(x);
  BigFloat two_pi = BigFloat::pi(work_digits) * BigFloat(2L, work_digits);
  BigFloat sum = (x - half) * lx - x + half * log(two_pi);

  BigFloat x2 = x * x;
  BigFloat xpow = x;  // x^{2k-1}
  BigFloat prev_abs(0L, work_digits);
  BigFloat tol(1L, work_digits);
  mpfr_mul_2si(tol.get(), tol.get(), -static_cast<long>(bits), MPFR_RNDN);
  tol *= abs(sum) + BigFloat(1L, work_digits);

  for (int k = 1; k < 4000; ++k) {
    Rational coef = bernoulli(2 * k) / Rational(2L * k * (2 * k - 1));
    BigFloat term = BigFloat(coef, work_digits) / xpow;
    BigFloat a = abs(term);
    if (k > 1 && prev_abs < a) return false;  // asymptotic series turned around
    if (a < tol) {
      out = sum;
      return true;
    }
    sum += term;
    prev_abs = a;
    xpow *= x2;
  }
  return false;
}

}  // namespace

BigFloat gamma_hp(const BigFloat& z, int digits) {
  if (z.is_integer() && z.sign() <= 0) throw DomainError("Gamma pole at " + z.to_string(20));
  int work = digits + 12;
  BigFloat zw = z.with_digits(work);
  double threshold = 0.45 * digits + 12;
  for (int attempt = 0; attempt < 6; ++attempt, threshold *= 2) {
    BigFloat x = zw;
    BigFloat denom(1L, work);
    while (x.to_double() < threshold) {
      denom *= x;
      x += BigFloat(1L, work);
    }
    BigFloat lg;
    if (!stirling_log_gamma(x, work, lg)) continue;
    return (exp(lg) / denom).with_digits(digits);
  }
  throw DomainError("gamma_hp: Stirling series did not converge");
}

BigFloat gamma_hp(const Rational& z, int digits) {
  if (is_integer(z)) {
    if (sgn(z) <= 0) throw DomainError("Gamma pole at " + to_string(z));
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), z.get_num().get_ui() - 1);
    return BigFloat(Rational(f), digits);
  }
  return gamma_hp(BigFloat(z, digits + 12), digits);
}

void GammaProduct::add(const Rational& arg, int power) {
  if (power == 0) return;
  int& p = factors_[arg];
  p += power;
  if (p == 0) factors_.erase(arg);
}

GammaProduct& GammaProduct::operator*=(const GammaProduct& o) {
  for (const auto& [a, p] : o.factors_) add(a, p);
  return *this;
}

namespace {
Rational frac_part(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - Rational(fl);
}

// Gamma(a)/Gamma(b) for a-b a non-negative integer.
Rational rising(const Rational& b, const Rational& a) {
  Rational r = 1;
  for (Rational x = b; x < a; x += 1) r *= x;
  return r;
}
}  // namespace

GammaProduct::Reduced GammaProduct::reduce() const {
  Reduced out;
  std::map<Rational, Rational> lowest;  // residue -> minimal argument
  for (const auto& [a, p] : factors_) {
    if (is_integer(a) && sgn(a) <= 0)
      throw DomainError("Gamma pole in factor Gamma(" + to_string(a) + ")^" + std::to_string(p));
    Rational r = frac_part(a);
    auto it = lowest.find(r);
    if (it == lowest.end() || a < it->second) lowest[r] = a;
  }
  for (const auto& [a, p] : factors_) {
    Rational r = frac_part(a);
    Rational b = lowest[r];
    if (is_integer(a)) b = 1;  // integral class collapses to factorials
    Rational ratio = rising(b, a);
    out.cofactor *= ipow(ratio, p);
    if (!is_integer(a)) out.base[b] += p;
  }
  for (auto it = out.base.begin(); it != out.base.end();) {
    if (it->second == 0)
      it = out.base.erase(it);
    else
      ++it;
  }
  return out;
}

bool GammaProduct::is_rational() const { return reduce().base.empty(); }

bool GammaProduct::same_value(const GammaProduct& o) const {
  auto a = reduce(), b = o.reduce();
  return a.cofactor == b.cofactor && a.base == b.base;
}

Scalar GammaProduct::evaluate(int digits) const {
  // Poles that only occur in denominators make the product vanish.
  bool zero = false;
  for (const auto& [a, p] : factors_)
    if (is_integer(a) && sgn(a) <= 0) {
      if (p > 0) throw DomainError("Gamma pole in factor Gamma(" + to_string(a) + ")^" + std::to_string(p));
      zero = true;
    }
  if (zero) return Rational(0);
  Reduced red = reduce();
  if (red.base.empty()) return red.cofactor;
  BigFloat v(red.cofactor, digits);
  for (const auto& [b, p] : red.base) {
    BigFloat g = gamma_hp(b, digits);
    for (int i = 0; i < std::abs(p); ++i) {
      if (p > 0)
        v *= g;
      else
        v /= g;
    }
  }
  return v;
}

GammaProduct barnes_shift_product(const Rational& x, int n) {
  GammaProduct g;
  if (n >= 0) {
    for (int j = 0; j < n; ++j) g.add(x + 1 + j, 1);
  } else {
    for (int j = 1; j <= -n; ++j) g.add(x + 1 - j, -1);
  }
  return g;
}

Scalar barnes_shift_ratio(const Rational& x, int n, int digits) {
  return barnes_shift_product(x, n).evaluate(digits);
}

BigFloat to_bigfloat(const Scalar& s, int digits) {
  if (auto q = std::get_if<Rational>(&s)) return BigFloat(*q, digits);
  if (auto e = std::get_if<QuadExt>(&s)) return to_bigfloat(*e, digits);
  return std::get<BigFloat>(s).with_digits(digits);
}

}  // namespace cbtau
