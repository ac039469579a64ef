#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cbtau/errors.hpp"
#include "cbtau/parallel.hpp"
#include "cbtau/scalar.hpp"

namespace cbtau {

// Channel N of a degree-d element carries exp((d*rate_0 + N*rate_1) t^r) and
// t^{ref(d,N)} with ref(d,N) = d*texp_0 + N*texp_1 + N^2*texp_2.
struct ChannelSpec {
  int r = 1;
  Rational rate_0, rate_1;
  Rational texp_0, texp_1;
  int texp_2 = 0;

  Rational ref(int d, int n) const { return d * texp_0 + n * texp_1 + Rational(texp_2) * n * n; }
  Rational rate(int d, int n) const { return d * rate_0 + n * rate_1; }
  // Integer offset picked up when channels a and b (same d bookkeeping) multiply.
  int cross(int a, int b) const { return texp_2 * (a * a + b * b - (a + b) * (a + b)); }
  friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;
};

inline bool is_zero_value(const Rational& x) { return is_zero(x); }
inline bool is_zero_value(const BigFloat& x) { return x.is_zero(); }

template <class T>
T scalar_from(const Rational& q) {
  return from_rational<T>(q);
}

// Truncated sum over channels N of marker(d,N) * sum_k data[N][k] t^{ref(d,N)+k}.
// With a cocycle w the stored data of channel N is implicitly multiplied by
// C_N C_0^{d-1}, and products pick up w(a, b) = C_a C_b / (C_0 C_{a+b}).
template <class T>
struct ChannelSeries {
  using Cocycle = std::function<T(int, int)>;

  ChannelSpec spec;
  int degree = 1;
  std::map<int, std::map<int, T>> data;
  std::shared_ptr<const Cocycle> cocycle;

  bool empty() const {
    for (const auto& [n, row] : data)
      if (!row.empty()) return false;
    return true;
  }

  const T* find(int n, int k) const {
    auto it = data.find(n);
    if (it == data.end()) return nullptr;
    auto jt = it->second.find(k);
    return jt == it->second.end() ? nullptr : &jt->second;
  }

  void accumulate(int n, int k, const T& v) {
    auto& row = data[n];
    auto it = row.find(k);
    if (it == row.end())
      row.emplace(k, v);
    else
      it->second += v;
  }

  void prune() {
    for (auto it = data.begin(); it != data.end();) {
      for (auto jt = it->second.begin(); jt != it->second.end();)
        jt = is_zero_value(jt->second) ? it->second.erase(jt) : std::next(jt);
      it = it->second.empty() ? data.erase(it) : std::next(it);
    }
  }
};

template <class T>
void check_compatible(const ChannelSeries<T>& a, const ChannelSeries<T>& b, bool same_degree) {
  if (!(a.spec == b.spec)) throw UsageError("channel series with different specs");
  if (same_degree && a.degree != b.degree) throw UsageError("adding channel series of different degree");
  if ((a.cocycle == nullptr) != (b.cocycle == nullptr)) throw UsageError("mixing normalized and plain channel series");
}

template <class T>
ChannelSeries<T> cs_add(const ChannelSeries<T>& a, const ChannelSeries<T>& b, const T& scale_b) {
  check_compatible(a, b, true);
  ChannelSeries<T> out = a;
  for (const auto& [n, row] : b.data)
    for (const auto& [k, v] : row) out.accumulate(n, k, v * scale_b);
  out.prune();
  return out;
}

template <class T>
ChannelSeries<T> cs_add(const ChannelSeries<T>& a, const ChannelSeries<T>& b) {
  return cs_add(a, b, scalar_from<T>(1));
}

template <class T>
ChannelSeries<T> cs_scale(const ChannelSeries<T>& a, const T& s) {
  ChannelSeries<T> out{a.spec, a.degree, {}, a.cocycle};
  for (const auto& [n, row] : a.data)
    for (const auto& [k, v] : row) out.data[n].emplace(k, v * s);
  out.prune();
  return out;
}

// Multiplication by t^p.
template <class T>
ChannelSeries<T> cs_shift(const ChannelSeries<T>& a, int p) {
  ChannelSeries<T> out{a.spec, a.degree, {}, a.cocycle};
  for (const auto& [n, row] : a.data)
    for (const auto& [k, v] : row) out.data[n].emplace(k + p, v);
  return out;
}

// Keeps only cells for which keep(n, k) is true.
template <class T, class Keep>
void cs_filter(ChannelSeries<T>& a, Keep&& keep) {
  for (auto it = a.data.begin(); it != a.data.end();) {
    for (auto jt = it->second.begin(); jt != it->second.end();)
      jt = keep(it->first, jt->first) ? std::next(jt) : it->second.erase(jt);
    it = it->second.empty() ? a.data.erase(it) : std::next(it);
  }
}

template <class T>
ChannelSeries<T> cs_mul(const ChannelSeries<T>& a, const ChannelSeries<T>& b, int threads = 1) {
  check_compatible(a, b, false);
  ChannelSeries<T> out{a.spec, a.degree + b.degree, {}, a.cocycle};
  std::vector<int> targets;
  {
    std::map<int, bool> seen;
    for (const auto& [na, ra] : a.data)
      for (const auto& [nb, rb] : b.data) seen[na + nb] = true;
    for (const auto& [n, f] : seen) targets.push_back(n);
  }
  std::vector<std::map<int, T>> rows(targets.size());
  parallel_for(targets.size(), threads, [&](size_t i) {
    int n = targets[i];
    auto& row = rows[i];
    for (const auto& [na, ra] : a.data) {
      auto jt = b.data.find(n - na);
      if (jt == b.data.end()) continue;
      int cr = a.spec.cross(na, n - na);
      const T* w = nullptr;
      T wv;
      if (a.cocycle) {
        wv = (*a.cocycle)(na, n - na);
        w = &wv;
      }
      for (const auto& [ka, va] : ra) {
        T x = w ? T(va * *w) : va;
        for (const auto& [kb, vb] : jt->second) {
          int k = ka + kb + cr;
          auto it = row.find(k);
          if (it == row.end())
            row.emplace(k, x * vb);
          else
            it->second += x * vb;
        }
      }
    }
  });
  for (size_t i = 0; i < targets.size(); ++i)
    if (!rows[i].empty()) out.data[targets[i]] = std::move(rows[i]);
  out.prune();
  return out;
}

// d/dt of marker * t^{ref+k}: r*rho*t^{ref+k+r-1} + (ref+k)*t^{ref+k-1}.
template <class T>
ChannelSeries<T> cs_derive(const ChannelSeries<T>& a) {
  ChannelSeries<T> out{a.spec, a.degree, {}, a.cocycle};
  const int r = a.spec.r;
  for (const auto& [n, row] : a.data) {
    Rational rho = r * a.spec.rate(a.degree, n);
    Rational ref = a.spec.ref(a.degree, n);
    T rho_t = scalar_from<T>(rho);
    for (const auto& [k, v] : row) {
      if (!is_zero(rho)) out.accumulate(n, k + r - 1, v * rho_t);
      Rational e = ref + k;
      if (!is_zero(e)) out.accumulate(n, k - 1, v * scalar_from<T>(e));
    }
  }
  out.prune();
  return out;
}

// Cells of a degree-d expression that are unaffected by truncating its inputs to
// channels |n| <= n_max and offsets >= k_min below each factor's top. `shift`
// bounds the top offset of every monomial (t-powers plus derivative raises).
// Requires texp_2 <= 0; per channel N the trusted offsets are [lo, hi]. With
// channels_complete the input has no channels beyond n_max at all (s = 0).
struct TrustedWindow {
  std::map<int, std::pair<int, int>> ranges;

  bool contains(int n, int k) const {
    auto it = ranges.find(n);
    return it != ranges.end() && k >= it->second.first && k <= it->second.second;
  }
  bool empty() const { return ranges.empty(); }
  size_t cell_count() const {
    size_t c = 0;
    for (const auto& [n, r] : ranges) c += static_cast<size_t>(r.second - r.first + 1);
    return c;
  }
};

TrustedWindow cs_validity_window(const ChannelSpec& spec, int degree, int n_max, int k_min, int shift = 0,
                                 bool channels_complete = false);

template <class T>
TrustedWindow cs_validity_window(const ChannelSeries<T>& a, int degree, int n_max, int k_min, int shift = 0,
                                 bool channels_complete = false) {
  if (a.empty()) return {};
  return cs_validity_window(a.spec, degree, n_max, k_min, shift, channels_complete);
}

std::string to_json_string(const ChannelSpec& spec);

}  // namespace cbtau
