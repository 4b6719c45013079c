#pragma once

// Decoherence-factor moduli |F_ij(t)| as products over momentum modes,
// plus the cutoff / partial-sum approximation ledger (partial product,
// small-k partial sum, quartic decay rates).

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entdyn/chain.hpp"
#include "entdyn/parallel.hpp"

namespace entdyn {

// Radicand more negative than this is an algebra bug, not roundoff.
inline constexpr double kRadicandSlack = 1e-12;
// Switch the mode product to log-space accumulation below this factor.
inline constexpr double kLogSpaceThreshold = 1e-8;

struct FactorSeries {
  ChainConfig config;
  std::pair<int, int> branch_pair{0, 1};
  std::vector<double> times;
  std::vector<double> values;
};

struct ApproxParams {
  int Kc = 1;
  double E_Kc = 0.0;  // cutoff energy scale
  double gamma = 0.0; // |F|_c ~ exp(-gamma t^4)
  double Gamma = 0.0; // C ~ exp(-Gamma t^4), exact mode sum
};

// Single mode factor F_k of the product |F(t)| = prod_k F_k.
inline double mode_factor(const ModeSpectrum& spec_i, const ModeSpectrum& spec_j,
                          int k, double t) {
  if (spec_i.config.L != spec_j.config.L)
    throw std::invalid_argument("mode_factor: spectra built from different chains");
  if (k < 1 || k > spec_i.modes())
    throw std::invalid_argument("mode_factor: mode index out of range");
  if (!std::isfinite(t)) throw std::invalid_argument("mode_factor: t must be finite");

  const int idx = k - 1;
  const double si = std::sin(spec_i.omega[idx] * t);
  const double ci = std::cos(spec_i.omega[idx] * t);
  const double sj = std::sin(spec_j.omega[idx] * t);
  const double cj = std::cos(spec_j.omega[idx] * t);
  const double sti = std::sin(spec_i.theta[idx]);
  const double stj = std::sin(spec_j.theta[idx]);
  const double std_ = std::sin(spec_i.theta[idx] - spec_j.theta[idx]);

  const double bracket = si * cj * sti - ci * sj * stj;
  const double radicand = 1.0 - bracket * bracket - si * si * sj * sj * std_ * std_;
  if (radicand < -kRadicandSlack)
    throw std::logic_error("mode_factor: radicand below roundoff slack");
  if (radicand <= 0.0) return 0.0;
  const double f = std::sqrt(radicand);
  return f > 1.0 ? 1.0 : f;
}

namespace detail {

// Product of F_k for k = 1..kmax, ascending, serial semantics. Falls back
// to a log-space sum when any factor drops below kLogSpaceThreshold.
inline double factor_product(const ModeSpectrum& spec_i, const ModeSpectrum& spec_j,
                             int kmax, double t) {
  std::vector<double> factors(static_cast<std::size_t>(kmax));
  bool tiny = false;
  for (int k = 1; k <= kmax; ++k) {
    factors[k - 1] = mode_factor(spec_i, spec_j, k, t);
    if (factors[k - 1] < kLogSpaceThreshold) tiny = true;
  }
  if (!tiny) {
    double prod = 1.0;
    for (double f : factors) prod *= f;
    return prod;
  }
  double logsum = 0.0;
  for (double f : factors) {
    if (f == 0.0) return 0.0;
    logsum += std::log(f);
  }
  return std::exp(logsum);
}

} // namespace detail

inline double factor_modulus(const ModeSpectrum& spec_i, const ModeSpectrum& spec_j,
                             double t) {
  return detail::factor_product(spec_i, spec_j, spec_i.modes(), t);
}

inline double factor_modulus(const ChainConfig& config, const BranchSet& branches,
                             int i, int j, double t,
                             AngleConvention convention = AngleConvention::Atan2) {
  if (i < 0 || j < 0 || i >= branches.d || j >= branches.d)
    throw std::invalid_argument("factor_modulus: branch index out of range");
  const auto spec_i = build_spectrum(config, branches.lambdas[i], convention);
  const auto spec_j = build_spectrum(config, branches.lambdas[j], convention);
  return factor_modulus(spec_i, spec_j, t);
}

inline FactorSeries factor_series(const ChainConfig& config, const BranchSet& branches,
                                  int i, int j, const std::vector<double>& times,
                                  AngleConvention convention = AngleConvention::Atan2,
                                  unsigned jobs = 1) {
  if (times.empty()) throw std::invalid_argument("factor_series: empty time grid");
  if (times.front() != 0.0)
    throw std::invalid_argument("factor_series: time grid must start at 0");
  for (std::size_t n = 1; n < times.size(); ++n)
    if (!(times[n] > times[n - 1]))
      throw std::invalid_argument("factor_series: time grid must be strictly increasing");

  const auto spec_i = build_spectrum(config, branches.lambdas.at(i), convention);
  const auto spec_j = build_spectrum(config, branches.lambdas.at(j), convention);

  FactorSeries series;
  series.config = config;
  series.branch_pair = {i, j};
  series.times = times;
  series.values.resize(times.size());
  parallel_for(times.size(), jobs, [&](std::size_t n) {
    series.values[n] = factor_modulus(spec_i, spec_j, times[n]);
  });
  return series;
}

inline std::vector<double> uniform_grid(double t_max, int points) {
  if (points < 1 || t_max <= 0.0)
    throw std::invalid_argument("uniform_grid: need points >= 1 and t_max > 0");
  std::vector<double> times(static_cast<std::size_t>(points));
  for (int n = 0; n < points; ++n)
    times[n] = t_max * static_cast<double>(n) / (points == 1 ? 1 : points - 1);
  return times;
}

// Truncated product over the first Kc modes; an upper bound on |F(t)|.
inline double partial_product(const ModeSpectrum& spec_i, const ModeSpectrum& spec_j,
                              int Kc, double t) {
  if (Kc < 1 || Kc > spec_i.modes())
    throw std::invalid_argument("partial_product: Kc out of range");
  return detail::factor_product(spec_i, spec_j, Kc, t);
}

// E(Kc) = 4 pi^2 Kc (Kc+1)(2Kc+1) / (6 L^2).
inline double cutoff_energy(int Kc, int L) {
  if (Kc < 1) throw std::invalid_argument("cutoff_energy: Kc must be >= 1");
  if (L < 3) throw std::invalid_argument("cutoff_energy: L must be >= 3");
  const double kc = Kc;
  return 4.0 * M_PI * M_PI * kc * (kc + 1.0) * (2.0 * kc + 1.0) /
         (6.0 * static_cast<double>(L) * static_cast<double>(L));
}

inline int default_cutoff(int modes) {
  const int kc = static_cast<int>(std::ceil(0.1 * modes));
  return std::min(modes, std::max(1, kc));
}

// Small-k closed form of S(t) = ln |F(t)|_c. Singular at a branch exactly
// on the critical point, where the exact product is the fallback.
inline double partial_sum_S(const ChainConfig& config, double lambda_i, double lambda_j,
                            int Kc, double t) {
  config.validate();
  if (Kc < 1 || Kc > config.modes())
    throw std::invalid_argument("partial_sum_S: Kc out of range");
  const double wi = small_k_frequency(lambda_i);
  const double wj = small_k_frequency(lambda_j);
  if (wi < 1e-12 || wj < 1e-12)
    throw std::domain_error("partial_sum_S: branch at the critical point, "
                            "small-k form is singular; use the exact product");

  const double e = cutoff_energy(Kc, config.L);
  const double diff = lambda_i - lambda_j;
  const double swi = std::sin(wi * t), cwi = std::cos(wi * t);
  const double swj = std::sin(wj * t), cwj = std::cos(wj * t);
  const double bracket = swi * cwj * wj - swj * cwi * wi;
  const double braces = diff * diff * swi * swi * swj * swj + bracket * bracket;
  return -2.0 * e / (wi * wi * wj * wj) * braces;
}

// Quartic decay rates for the qubit pair: gamma from the cutoff ledger,
// Gamma from the exact short-time mode sum.
inline ApproxParams quartic_rates(const ChainConfig& config, const BranchSet& branches,
                                  int Kc,
                                  AngleConvention convention = AngleConvention::Atan2) {
  if (branches.d != 2)
    throw std::invalid_argument("quartic_rates: requires a d = 2 branch set");
  if (Kc < 1 || Kc > config.modes())
    throw std::invalid_argument("quartic_rates: Kc out of range");

  ApproxParams p;
  p.Kc = Kc;
  p.E_Kc = cutoff_energy(Kc, config.L);
  const double spacing = branches.lambdas[1] - branches.lambdas[0];
  p.gamma = 2.0 * p.E_Kc * spacing * spacing;

  const auto spec_0 = build_spectrum(config, branches.lambdas[0], convention);
  const auto spec_1 = build_spectrum(config, branches.lambdas[1], convention);
  double sum = 0.0;
  for (int k = 0; k < spec_0.modes(); ++k) {
    const double sd = std::sin(spec_0.theta[k] - spec_1.theta[k]);
    const double w0 = spec_0.omega[k], w1 = spec_1.omega[k];
    sum += sd * sd * w0 * w0 * w1 * w1;
  }
  p.Gamma = 0.5 * sum;
  return p;
}

} // namespace entdyn
