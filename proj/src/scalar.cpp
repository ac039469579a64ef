#include "cbtau/scalar.hpp"

#include <cmath>
#include <sstream>

#include "cbtau/errors.hpp"

namespace cbtau {

Rational rational(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q{Integer(num), Integer(den)};
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return UsageError("cannot parse rational '" + s + "'"); };
  if (s.empty()) throw bad();
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac = s.size() - dot - 1;
    Integer num;
    if (digits.empty() || digits == "-" || num.set_str(digits, 10) != 0) throw bad();
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw bad();
  if (sgn(q.get_den()) == 0) throw DomainError("rational with zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational ipow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (is_zero(base)) throw DomainError("zero to a negative power");
    Rational inv = 1 / base;
    return ipow(inv, -exponent);
  }
  Rational num, den;
  mpz_pow_ui(num.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_num_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num.get_num(), den.get_num());
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

QuadExt QuadExt::inverse() const {
  Rational n = norm();
  if (is_zero(n)) throw DomainError("division by zero in Q(sqrt2)");
  return {a_ / n, -b_ / n};
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
  Rational a = a_ * o.a_ + 2 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) { return *this *= o.inverse(); }

std::string to_string(const QuadExt& x) {
  return "{\"a\":\"" + to_string(x.a()) + "\",\"b\":\"" + to_string(x.b()) + "\"}";
}

namespace {
thread_local int tl_digits = 60;
}

int default_digits() { return tl_digits; }

DigitsScope::DigitsScope(int digits) : saved_(tl_digits) {
  if (digits < 1) throw UsageError("precision must be positive");
  tl_digits = digits;
}

DigitsScope::~DigitsScope() { tl_digits = saved_; }

mpfr_prec_t BigFloat::bits_for(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

void BigFloat::init(int digits) {
  digits_ = digits;
  mpfr_init2(v_, bits_for(digits));
}

BigFloat::BigFloat() {
  init(default_digits());
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v, int digits) {
  init(digits);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& q, int digits) {
  init(digits);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(std::string_view decimal, int digits) {
  init(digits);
  std::string s(decimal);
  if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw UsageError("cannot parse decimal '" + s + "'");
  }
}

BigFloat::BigFloat(const BigFloat& o) {
  init(o.digits_);
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  init(o.digits_);
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    digits_ = o.digits_;
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  std::swap(digits_, o.digits_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::with_digits(int digits) const {
  BigFloat r(0L, digits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pi(int digits) {
  BigFloat r(0L, digits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

namespace {
// Shrinks the target to the smaller operand precision before a binary op.
void narrow_to(BigFloat& x, const BigFloat& o) {
  if (o.digits() < x.digits()) x = x.with_digits(o.digits());
}
}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  narrow_to(*this, o);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
  narrow_to(*this, o);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
  narrow_to(*this, o);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
  if (o.is_zero()) throw DomainError("BigFloat division by zero");
  narrow_to(*this, o);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat operator-(const BigFloat& x) {
  BigFloat r(x);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

std::string BigFloat::to_string(int shown_digits) const {
  int n = shown_digits > 0 ? shown_digits : digits_;
  if (mpfr_zero_p(v_)) return "0";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", n - 1, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

BigFloat abs(const BigFloat& x) {
  BigFloat r(x);
  mpfr_abs(r.get(), r.get(), MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& x) {
  if (x.sign() < 0) throw DomainError("sqrt of a negative BigFloat");
  BigFloat r(x);
  mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
  return r;
}

BigFloat exp(const BigFloat& x) {
  BigFloat r(x);
  mpfr_exp(r.get(), r.get(), MPFR_RNDN);
  return r;
}

BigFloat log(const BigFloat& x) {
  if (x.sign() <= 0) throw DomainError("log of a non-positive BigFloat");
  BigFloat r(x);
  mpfr_log(r.get(), r.get(), MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& x, const BigFloat& y) {
  BigFloat r = x.digits() <= y.digits() ? x : x.with_digits(y.digits());
  mpfr_pow(r.get(), r.get(), y.get(), MPFR_RNDN);
  return r;
}

std::string to_string(const BigFloat& x) { return x.to_string(); }

BigFloat to_bigfloat(const QuadExt& x, int digits) {
  BigFloat r2 = sqrt(BigFloat(2L, digits));
  return BigFloat(x.a(), digits) + BigFloat(x.b(), digits) * r2;
}

std::string to_string(const Scalar& s) {
  return std::visit([](const auto& v) { return to_string(v); }, s);
}

}  // namespace cbtau
