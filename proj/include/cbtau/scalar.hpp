#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <string_view>
#include <variant>

namespace cbtau {

using Integer = mpz_class;
using Rational = mpq_class;

Rational rational(long num, long den = 1);
// Accepts "p", "p/q", "-p/q" and finite decimals such as "0.25".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
Rational ipow(const Rational& base, long exponent);
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
bool is_integer(const Rational& q);

// a + b*sqrt(2) with rational a, b.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(Rational a) : a_(std::move(a)) {}  // NOLINT(implicit)
  QuadExt(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}
  QuadExt(long a) : a_(a) {}  // NOLINT(implicit)

  static QuadExt sqrt2() { return {Rational(0), Rational(1)}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  QuadExt conjugate() const { return {a_, -b_}; }
  Rational norm() const { return a_ * a_ - 2 * b_ * b_; }
  QuadExt inverse() const;

  QuadExt& operator+=(const QuadExt& o);
  QuadExt& operator-=(const QuadExt& o);
  QuadExt& operator*=(const QuadExt& o);
  QuadExt& operator/=(const QuadExt& o);

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  friend QuadExt operator-(const QuadExt& x) { return {-x.a_, -x.b_}; }
  friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  Rational a_{0};
  Rational b_{0};
};

inline bool is_zero(const QuadExt& x) { return is_zero(x.a()) && is_zero(x.b()); }
std::string to_string(const QuadExt& x);

int default_digits();

// Sets the thread-local precision used when converting exact values to BigFloat.
class DigitsScope {
 public:
  explicit DigitsScope(int digits);
  ~DigitsScope();
  DigitsScope(const DigitsScope&) = delete;
  DigitsScope& operator=(const DigitsScope&) = delete;

 private:
  int saved_;
};

// MPFR value tagged with a decimal precision. Binary operations keep the
// smaller precision of the two operands.
class BigFloat {
 public:
  BigFloat();
  explicit BigFloat(long v, int digits = default_digits());
  explicit BigFloat(const Rational& q, int digits = default_digits());
  BigFloat(std::string_view decimal, int digits);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  int digits() const { return digits_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }
  BigFloat with_digits(int digits) const;

  static BigFloat pi(int digits);
  static mpfr_prec_t bits_for(int digits);

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);

  friend BigFloat operator+(BigFloat x, const BigFloat& y) { return x += y; }
  friend BigFloat operator-(BigFloat x, const BigFloat& y) { return x -= y; }
  friend BigFloat operator*(BigFloat x, const BigFloat& y) { return x *= y; }
  friend BigFloat operator/(BigFloat x, const BigFloat& y) { return x /= y; }
  friend BigFloat operator-(const BigFloat& x);
  friend bool operator==(const BigFloat& x, const BigFloat& y) { return mpfr_equal_p(x.v_, y.v_) != 0; }
  friend bool operator<(const BigFloat& x, const BigFloat& y) { return mpfr_less_p(x.v_, y.v_) != 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int shown_digits = 0) const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

 private:
  void init(int digits);
  mpfr_t v_;
  int digits_ = 0;
};

inline bool is_zero(const BigFloat& x) { return x.is_zero(); }
BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);
std::string to_string(const BigFloat& x);

template <class T>
T from_rational(const Rational& q);
template <>
inline Rational from_rational<Rational>(const Rational& q) { return q; }
template <>
inline QuadExt from_rational<QuadExt>(const Rational& q) { return QuadExt(q); }
template <>
inline BigFloat from_rational<BigFloat>(const Rational& q) { return BigFloat(q); }

BigFloat to_bigfloat(const QuadExt& x, int digits);

using Scalar = std::variant<Rational, QuadExt, BigFloat>;
std::string to_string(const Scalar& s);

}  // namespace cbtau
