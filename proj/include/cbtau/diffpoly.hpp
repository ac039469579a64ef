#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>

#include "cbtau/scalar.hpp"

namespace cbtau {

// Polynomial in t, T_0, T_1, T_2, T_3 where T_j stands for the j-th t-derivative
// of a single function. Used to clear denominators in the sigma-form equations.
struct DiffMonomial {
  int tpow = 0;
  std::array<int, 4> e{};
  int degree() const { return e[0] + e[1] + e[2] + e[3]; }
  int weight() const { return e[1] + 2 * e[2] + 3 * e[3]; }
  auto operator<=>(const DiffMonomial&) const = default;
};

class DiffPoly {
 public:
  DiffPoly() = default;
  DiffPoly(const Rational& c);  // NOLINT(implicit)
  static DiffPoly t(int power = 1);
  static DiffPoly T(int j);

  const std::map<DiffMonomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_homogeneous(int* degree = nullptr) const;

  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  DiffPoly& operator*=(const DiffPoly& o);
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(DiffPoly a, const DiffPoly& b) { return a *= b; }
  friend DiffPoly operator-(const DiffPoly& a) { return DiffPoly(Rational(-1)) * a; }

  // Total t-derivative; T_3 may not be differentiated.
  DiffPoly derive() const;

  std::string to_string() const;

 private:
  void add_term(const DiffMonomial& m, const Rational& c);
  std::map<DiffMonomial, Rational> terms_;
};

}  // namespace cbtau
