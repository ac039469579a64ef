#include "cbtau/pit.hpp"

#include "cbtau/errors.hpp"

namespace cbtau {

long RationalSampler::uniform(long lo, long hi) {
  // Rejection sampling keeps the stream identical across standard libraries,
  // which std::uniform_int_distribution does not promise.
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do x = rng_();
  while (x >= limit);
  return lo + static_cast<long>(x % span);
}

Rational RationalSampler::next() {
  long num = uniform(-kPitBound, kPitBound);
  long den = uniform(1, kPitBound);
  return rational(num, den);
}

ParameterPoint RationalSampler::sample(const std::vector<std::string>& symbols, const ParameterPoint& base) {
  ParameterPoint p = base;
  for (const auto& s : symbols) p.set(s, next());
  return p;
}

PitResult pit_check(const PointFunction& f, const PointFunction& g, const std::vector<std::string>& symbols,
                    int trials, std::uint64_t seed, const ParameterPoint& base) {
  if (trials < 1) throw UsageError("pit_check needs trials >= 1");
  RationalSampler sampler(seed);
  PitResult res;
  int attempts = 0;
  while (res.evaluated < trials && attempts < 10 * trials) {
    ++attempts;
    ParameterPoint p = sampler.sample(symbols, base);
    Rational a, b;
    try {
      a = f(p);
      b = g(p);
    } catch (const NonGenericPoint&) {
      ++res.skipped;
      continue;
    }
    ++res.evaluated;
    if (a != b) {
      res.agree = false;
      res.witness = p;
      return res;
    }
  }
  if (res.evaluated == 0) throw DomainError("pit_check: every sampled point was non-generic");
  return res;
}

}  // namespace cbtau
