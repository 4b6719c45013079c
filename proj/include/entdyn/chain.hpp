#pragma once

// Mode spectrum of a transverse-field Ising chain conditioned on the
// conserved two-spin sector. Each sector ("branch") sees the chain with an
// effective field Lambda_i = lambda + (g/2)(2i+1-d); the chain then
// block-diagonalizes into independent momentum modes with frequency
// Omega_k and Bogoliubov angle theta_k.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace entdyn {

// Below this frequency a mode is treated as degenerate (theta set to 0).
inline constexpr double kDegenerateOmegaTol = 1e-14;

// theta_k convention. Atan2 diagonalizes the per-mode Hamiltonian for all
// parameters; Arcsin reproduces the textbook formula, which loses the
// quadrant when hz_k < 0 (happens for |Lambda| < 2 at large k).
enum class AngleConvention { Atan2, Arcsin };

inline const char* to_string(AngleConvention c) {
  return c == AngleConvention::Atan2 ? "atan2" : "arcsin";
}

struct ChainConfig {
  int L = 3;           // number of chain spins
  double lambda = 0.0; // transverse field
  double g = 0.0;      // system-chain coupling

  // k = 1..M momentum modes; the k = 0 mode carries no modulus content.
  int modes() const { return (L - 1) / 2; }

  void validate() const {
    if (L < 3) throw std::invalid_argument("ChainConfig: L must be >= 3");
    if (!std::isfinite(lambda) || !std::isfinite(g))
      throw std::invalid_argument("ChainConfig: lambda and g must be finite");
  }
};

// The c-number values the conserved sector operator takes, ascending.
struct BranchSet {
  int d = 2;
  std::vector<double> lambdas;

  int pairs() const { return d * (d - 1) / 2; }
};

// Lexicographic index of the unordered pair (i, j), i < j, among all pairs.
inline int pair_index(int i, int j, int d) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= d || i == j)
    throw std::invalid_argument("pair_index: need 0 <= i < j < d");
  return i * d - i * (i + 1) / 2 + (j - i - 1);
}

inline BranchSet branch_lambdas(const ChainConfig& config, int d) {
  config.validate();
  if (d < 2) throw std::invalid_argument("branch_lambdas: d must be >= 2");
  BranchSet bs;
  bs.d = d;
  bs.lambdas.reserve(d);
  for (int i = 0; i < d; ++i)
    bs.lambdas.push_back(config.lambda + 0.5 * config.g * (2 * i + 1 - d));
  return bs;
}

// Small-k / large-L limiting mode frequency |2 - Lambda|.
inline double small_k_frequency(double lambda_branch) {
  return std::abs(2.0 - lambda_branch);
}

// Per-branch mode tables: H_k = hz_k sigma_z + hy_k sigma_y in each
// pseudospin block, Omega_k = |(hz_k, hy_k)|, theta_k its polar angle.
struct ModeSpectrum {
  ChainConfig config;
  double branch_lambda = 0.0;
  AngleConvention convention = AngleConvention::Atan2;
  std::vector<double> omega;
  std::vector<double> theta;
  std::vector<double> hz;
  std::vector<double> hy;
  std::vector<int> degenerate_modes; // 1-based k with Omega_k ~ 0

  int modes() const { return static_cast<int>(omega.size()); }
};

inline ModeSpectrum build_spectrum(const ChainConfig& config, double lambda_branch,
                                   AngleConvention convention = AngleConvention::Atan2) {
  config.validate();
  if (!std::isfinite(lambda_branch))
    throw std::invalid_argument("build_spectrum: branch value must be finite");

  const int m = config.modes();
  ModeSpectrum spec;
  spec.config = config;
  spec.branch_lambda = lambda_branch;
  spec.convention = convention;
  spec.omega.resize(m);
  spec.theta.resize(m);
  spec.hz.resize(m);
  spec.hy.resize(m);

  const double step = 2.0 * M_PI / config.L;
  for (int k = 1; k <= m; ++k) {
    const double x = step * k;
    const double hz = -lambda_branch + 2.0 * std::cos(x);
    const double hy = -2.0 * std::sin(x);
    const double omega = std::hypot(hz, hy);
    spec.hz[k - 1] = hz;
    spec.hy[k - 1] = hy;
    spec.omega[k - 1] = omega;
    if (omega < kDegenerateOmegaTol) {
      spec.theta[k - 1] = 0.0;
      spec.degenerate_modes.push_back(k);
    } else if (convention == AngleConvention::Arcsin) {
      spec.theta[k - 1] = std::asin(hy / omega);
    } else {
      spec.theta[k - 1] = std::atan2(hy, hz);
    }
  }
  return spec;
}

} // namespace entdyn
