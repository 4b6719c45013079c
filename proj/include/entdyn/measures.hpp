#pragma once

// Entanglement measures driven by decoherence-factor moduli: concurrence
// for two qubits (pure and Werner), negativity for two qutrits and general
// d-level Werner states, sudden-death thresholds and times.

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "entdyn/factor.hpp"

namespace entdyn {

struct PureAmplitudes {
  // amps[i] multiplies |ii> in the sector with the i-th ascending branch.
  std::vector<std::complex<double>> amps;

  int d() const { return static_cast<int>(amps.size()); }

  void validate() const {
    if (amps.size() < 2)
      throw std::invalid_argument("PureAmplitudes: need d >= 2 amplitudes");
    double norm2 = 0.0;
    for (const auto& a : amps) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-12)
      throw std::invalid_argument("PureAmplitudes: amplitudes must be normalized");
  }
};

inline PureAmplitudes maximally_entangled(int d) {
  PureAmplitudes s;
  s.amps.assign(d, std::complex<double>(1.0 / std::sqrt(double(d)), 0.0));
  return s;
}

struct WernerParams {
  double P = 1.0;
  int d = 2;

  void validate() const {
    if (d < 2) throw std::invalid_argument("WernerParams: d must be >= 2");
    if (!(P >= 0.0 && P <= 1.0))
      throw std::invalid_argument("WernerParams: P must be in [0, 1]");
  }
};

struct MeasureSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::string kind; // "concurrence" or "negativity"
};

inline double concurrence_pure(const PureAmplitudes& state, double factor) {
  state.validate();
  if (state.d() != 2)
    throw std::invalid_argument("concurrence_pure: requires d = 2 amplitudes");
  if (!(factor >= 0.0 && factor <= 1.0))
    throw std::invalid_argument("concurrence_pure: |F| must be in [0, 1]");
  return 2.0 * std::abs(state.amps[0] * std::conj(state.amps[1])) * factor;
}

inline double concurrence_werner(double P, double factor) {
  if (!(P >= 0.0 && P <= 1.0))
    throw std::invalid_argument("concurrence_werner: P must be in [0, 1]");
  if (!(factor >= 0.0 && factor <= 1.0))
    throw std::invalid_argument("concurrence_werner: |F| must be in [0, 1]");
  return std::max(0.0, P * (factor + 0.5) - 0.5);
}

// Factor-modulus level below which Werner entanglement is gone; > 1 means
// the state is separable for every t.
inline double sudden_death_threshold(double P, int d) {
  if (!(P > 0.0 && P <= 1.0))
    throw std::invalid_argument("sudden_death_threshold: P must be in (0, 1]");
  if (d < 2) throw std::invalid_argument("sudden_death_threshold: d must be >= 2");
  return (1.0 / P - 1.0) / d;
}

// t_d = (ln(2P/(1-P)) / gamma)^(1/4), valid for the qubit Werner window.
inline double disentanglement_time_analytic(double P, double gamma) {
  if (!(P > 1.0 / 3.0 && P < 1.0))
    throw std::invalid_argument("disentanglement_time_analytic: P must be in (1/3, 1)");
  if (!(gamma > 0.0))
    throw std::invalid_argument("disentanglement_time_analytic: gamma must be > 0");
  return std::pow(std::log(2.0 * P / (1.0 - P)) / gamma, 0.25);
}

inline double negativity_pure_qutrit(const PureAmplitudes& state, double f1, double f2,
                                     double f3) {
  state.validate();
  if (state.d() != 3)
    throw std::invalid_argument("negativity_pure_qutrit: requires d = 3 amplitudes");
  for (double f : {f1, f2, f3})
    if (!(f >= 0.0 && f <= 1.0))
      throw std::invalid_argument("negativity_pure_qutrit: |F| must be in [0, 1]");
  const auto &a = state.amps[0], &b = state.amps[1], &c = state.amps[2];
  return std::abs(a * std::conj(b)) * f1 + std::abs(a * std::conj(c)) * f2 +
         std::abs(b * std::conj(c)) * f3;
}

// N = (1/d) sum_{i<j} max{0, P(|F_ij| + 1/d) - 1/d}; factors in pair_index
// order.
inline double negativity_werner_general(double P, int d, const std::vector<double>& factors) {
  if (!(P >= 0.0 && P <= 1.0))
    throw std::invalid_argument("negativity_werner_general: P must be in [0, 1]");
  if (d < 2) throw std::invalid_argument("negativity_werner_general: d must be >= 2");
  if (static_cast<int>(factors.size()) != d * (d - 1) / 2)
    throw std::invalid_argument("negativity_werner_general: expected d(d-1)/2 factors");
  const double inv_d = 1.0 / d;
  double sum = 0.0;
  for (double f : factors) {
    if (!(f >= 0.0 && f <= 1.0))
      throw std::invalid_argument("negativity_werner_general: |F| must be in [0, 1]");
    sum += std::max(0.0, P * (f + inv_d) - inv_d);
  }
  return inv_d * sum;
}

inline double negativity_pure_general(const PureAmplitudes& state,
                                      const std::vector<double>& factors) {
  state.validate();
  const int d = state.d();
  if (static_cast<int>(factors.size()) != d * (d - 1) / 2)
    throw std::invalid_argument("negativity_pure_general: expected d(d-1)/2 factors");
  double sum = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      sum += std::abs(state.amps[i] * std::conj(state.amps[j])) *
             factors[pair_index(i, j, d)];
  return sum;
}

// Earliest time at which every pairwise |F_ij| sits at or below the
// sudden-death threshold, refined by bisection to 1e-6 in t. nullopt when
// no crossing happens within the horizon.
inline std::optional<double> disentanglement_time_numeric(
    const ChainConfig& config, const BranchSet& branches, double P,
    AngleConvention convention = AngleConvention::Atan2, double horizon = 0.0,
    int scan_points = 4000) {
  config.validate();
  const int d = branches.d;
  const double threshold = sudden_death_threshold(P, d);
  if (threshold >= 1.0) return 0.0; // never entangled
  if (horizon <= 0.0) {
    horizon = 40.0;
    if (P > 1.0 / 3.0 && P < 1.0 && config.g != 0.0) {
      const auto qubit = branch_lambdas(config, 2);
      const auto rates = quartic_rates(config, qubit, default_cutoff(config.modes()),
                                       convention);
      if (rates.gamma > 0.0)
        horizon = 4.0 * disentanglement_time_analytic(P, rates.gamma);
    }
  }

  std::vector<ModeSpectrum> specs;
  specs.reserve(d);
  for (double lam : branches.lambdas)
    specs.push_back(build_spectrum(config, lam, convention));

  auto max_factor = [&](double t) {
    double fmax = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        fmax = std::max(fmax, factor_modulus(specs[i], specs[j], t));
    return fmax;
  };

  double prev_t = 0.0;
  double prev_v = max_factor(0.0) - threshold;
  if (prev_v <= 0.0) return 0.0;
  for (int n = 1; n <= scan_points; ++n) {
    const double t = horizon * n / scan_points;
    const double v = max_factor(t) - threshold;
    if (v <= 0.0) {
      double lo = prev_t, hi = t;
      while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (max_factor(mid) - threshold > 0.0 ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev_t = t;
    prev_v = v;
  }
  (void)prev_v;
  return std::nullopt;
}

} // namespace entdyn
