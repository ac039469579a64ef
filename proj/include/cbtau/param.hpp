#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "cbtau/scalar.hpp"

namespace cbtau {

// Symbol names as they appear in point files.
namespace sym {
inline constexpr const char* theta_0 = "theta_0";
inline constexpr const char* theta_t = "theta_t";
inline constexpr const char* theta_1 = "theta_1";
inline constexpr const char* theta_inf = "theta_inf";
inline constexpr const char* theta = "theta";
inline constexpr const char* theta_star = "theta_star";        // θ_*
inline constexpr const char* theta_bigstar = "theta_bigstar";  // θ_⋆
inline constexpr const char* sigma = "sigma";
inline constexpr const char* beta = "beta";
inline constexpr const char* s = "s";
inline constexpr const char* c = "c";
}  // namespace sym

class ParameterPoint {
 public:
  ParameterPoint() = default;
  ParameterPoint(std::initializer_list<std::pair<const std::string, Rational>> init) : values_(init) {}

  const Rational& at(std::string_view symbol) const;
  bool has(std::string_view symbol) const { return values_.find(symbol) != values_.end(); }
  void set(std::string symbol, Rational value) { values_[std::move(symbol)] = std::move(value); }
  ParameterPoint with(std::string symbol, Rational value) const {
    ParameterPoint p = *this;
    p.set(std::move(symbol), std::move(value));
    return p;
  }
  const std::map<std::string, Rational, std::less<>>& values() const { return values_; }

 private:
  std::map<std::string, Rational, std::less<>> values_;
};

}  // namespace cbtau
