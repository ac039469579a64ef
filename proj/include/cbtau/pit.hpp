#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cbtau/param.hpp"

namespace cbtau {

// Numerators are drawn from [-kPitBound, kPitBound], denominators from [1, kPitBound].
inline constexpr int kPitBound = 97;

class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}
  Rational next();
  ParameterPoint sample(const std::vector<std::string>& symbols, const ParameterPoint& base = {});
  long uniform(long lo, long hi);

 private:
  std::mt19937_64 rng_;
};

struct PitResult {
  bool agree = true;
  std::optional<ParameterPoint> witness;
  int evaluated = 0;
  int skipped = 0;
};

using PointFunction = std::function<Rational(const ParameterPoint&)>;

// Compares f and g at `trials` seeded random points. Points where either side
// throws NonGenericPoint are skipped and redrawn (up to 10x the trial count).
PitResult pit_check(const PointFunction& f, const PointFunction& g, const std::vector<std::string>& symbols,
                    int trials, std::uint64_t seed, const ParameterPoint& base = {});

}  // namespace cbtau
