#include "cbtau/channel.hpp"

#include <climits>

#include "json.hpp"

namespace cbtau {

namespace {

// Smallest sum of squares of `count` integers with the given sum.
long balanced_squares(int count, int sum) {
  if (count == 0) return sum == 0 ? 0 : LONG_MAX;
  long q = sum >= 0 ? sum / count : -((-sum + count - 1) / count);
  long rem = sum - q * count;
  return rem * (q + 1) * (q + 1) + (count - rem) * q * q;
}

// Same, with every entry bounded by |x| <= bound. Balanced is optimal when feasible.
long bounded_squares(int count, int sum, int bound) {
  if (std::abs(sum) > static_cast<long>(count) * bound) return LONG_MAX;
  return balanced_squares(count, sum);
}

}  // namespace

TrustedWindow cs_validity_window(const ChannelSpec& spec, int degree, int n_max, int k_min, int shift,
                                 bool channels_complete) {
  if (spec.texp_2 > 0) throw UsageError("validity window needs texp_2 <= 0");
  if (degree < 1) throw UsageError("degree must be positive");
  const long w = -spec.texp_2;
  TrustedWindow win;
  for (int n = -degree * n_max; n <= degree * n_max; ++n) {
    long kept = bounded_squares(degree, n, n_max);
    long cross_kept = w * (static_cast<long>(n) * n - kept);
    // Dropped tuples contain some |n_1| >= n_max + 1; the square sum is convex so
    // the boundary value is extremal.
    long dropped = LONG_MAX;
    if (degree > 1 && !channels_complete)
      for (int s : {-1, 1}) {
        int n1 = s * (n_max + 1);
        long rest = balanced_squares(degree - 1, n - n1);
        dropped = std::min(dropped, static_cast<long>(n1) * n1 + rest);
      }
    long lo = k_min + shift + cross_kept;
    long hi = shift + cross_kept;
    if (dropped != LONG_MAX && w > 0) {
      long cross_dropped = w * (static_cast<long>(n) * n - dropped);
      lo = std::max(lo, shift + cross_dropped + 1);
    } else if (dropped != LONG_MAX && w == 0) {
      // Without the quadratic defect every channel tuple reaches the same top.
      continue;
    }
    if (lo <= hi) win.ranges[n] = {static_cast<int>(lo), static_cast<int>(hi)};
  }
  return win;
}

std::string to_json_string(const ChannelSpec& spec) {
  nlohmann::json j{{"r", spec.r},
                   {"rate_0", to_string(spec.rate_0)},
                   {"rate_1", to_string(spec.rate_1)},
                   {"texp_0", to_string(spec.texp_0)},
                   {"texp_1", to_string(spec.texp_1)},
                   {"texp_2", spec.texp_2}};
  return j.dump();
}

}  // namespace cbtau
