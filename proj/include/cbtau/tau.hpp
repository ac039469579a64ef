#pragma once

#include <string>
#include <vector>

#include "cbtau/channel.hpp"
#include "cbtau/diffpoly.hpp"
#include "cbtau/gamma.hpp"
#include "cbtau/param.hpp"

namespace cbtau {

enum class TauFamily { PVI, PV, PIV };

std::string to_string(TauFamily f);
TauFamily parse_tau_family(const std::string& name);
std::vector<std::string> tau_symbols(TauFamily f);

// Channel bookkeeping of the normalized tau function:
//   PVI: t^{(sigma+n)^2 - theta_0^2 - theta_t^2}, no exponential;
//   PV:  t^{2(beta+n)(theta-beta-n) - theta^2/2} e^{(beta+n-theta/2) t};
//   PIV: t^{theta_t^2 + (beta+n)(2theta-3beta-3n)} e^{(theta_t+beta+n) t^2}.
ChannelSpec tau_channel_spec(TauFamily f, const ParameterPoint& p);

// Product of Gamma factors equal to C_n / C_0.
GammaProduct structure_ratio_product(TauFamily f, int n, const ParameterPoint& p);
// C_n / C_0: exact when every Gamma ratio telescopes, BigFloat otherwise.
Scalar structure_ratio(TauFamily f, int n, const ParameterPoint& p, int digits);

// Converts to the series scalar type; Rational throws DomainError for irrational input.
template <class T>
T scalar_cast(const Scalar& s, int digits);

// Degree-1 channel series with channels |n| <= n_max and offsets down to -order
// (PV, PIV) or up to +order (PVI).
template <class T>
ChannelSeries<T> tau_series(TauFamily f, const ParameterPoint& p, int n_max, int order, int digits = 60,
                            int threads = 1);

// Same channels without C_n; the series carries the exact cocycle
// C_a C_b / (C_0 C_{a+b}), so every product stays rational. A degree-d cell of
// channel N equals the true value divided by C_N C_0^{d-1}.
template <class T>
ChannelSeries<T> tau_series_normalized(TauFamily f, const ParameterPoint& p, int n_max, int order, int digits = 60,
                                       int threads = 1);

// Denominator-cleared sigma-form equation: PV uses h = t T_1/T_0, PIV uses H = T_1/T_0.
DiffPoly ode_polynomial(TauFamily f, const ParameterPoint& p);

template <class T>
struct ResidualReport {
  TauFamily family = TauFamily::PV;
  int degree = 0;
  int shift = 0;
  TrustedWindow window;
  ChannelSeries<T> residual;  // restricted to the trusted window
  BigFloat max_abs;
  double tolerance = 0;  // 0 in exact mode
  bool pass = false;
};

// Evaluates ode_polynomial on a tau series built with (n_max, order). n_max = 0
// is the single-channel s = 0 series, which has nothing beyond the window.
template <class T>
ResidualReport<T> ode_residual(TauFamily f, const ParameterPoint& p, const ChannelSeries<T>& tau, int n_max,
                               int order, int digits = 60, int threads = 1);

}  // namespace cbtau
