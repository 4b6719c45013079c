#pragma once

// Ground-truth engine independent of the trigonometric closed forms:
// per-mode 2x2 propagators from dense matrix exponentials, and explicit
// small density matrices with a partial-transpose eigensolver.
//
// The mode Hamiltonian is built straight from the coefficient pair
// (hz, hy) = (-Lambda + 2 cos(2 pi k / L), -2 sin(2 pi k / L)), so no
// angle-branch convention enters anywhere on this path.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "entdyn/chain.hpp"
#include "entdyn/measures.hpp"

namespace entdyn {

struct ModeHamiltonian {
  double hz = 0.0;
  double hy = 0.0;
  double phase0 = 0.0; // optional zero-mode term; drops from every modulus
};

inline ModeHamiltonian mode_hamiltonian(const ChainConfig& config, double lambda_branch,
                                        int k) {
  config.validate();
  if (k < 1 || k > config.modes())
    throw std::invalid_argument("mode_hamiltonian: mode index out of range");
  const double x = 2.0 * M_PI * k / config.L;
  return {-lambda_branch + 2.0 * std::cos(x), -2.0 * std::sin(x),
          -0.5 * lambda_branch + 1.0};
}

// U = exp(-i t (hz sigma_z + hy sigma_y)) via self-adjoint
// eigendecomposition, not the rotated closed form.
inline Eigen::Matrix2cd mode_propagator(const ModeHamiltonian& h, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("mode_propagator: t must be finite");
  using namespace std::complex_literals;
  Eigen::Matrix2cd ham;
  ham << h.hz, -1i * h.hy, 1i * h.hy, -h.hz;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(ham);
  Eigen::Vector2cd phases;
  phases << std::exp(-1i * t * es.eigenvalues()(0)),
      std::exp(-1i * t * es.eigenvalues()(1));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// |<0| U_j^dag U_i |0>| with |0> the sigma_z = -1 pseudospin vacuum.
inline double oracle_mode_factor(const ModeHamiltonian& h_i, const ModeHamiltonian& h_j,
                                 double t) {
  const Eigen::Matrix2cd u = mode_propagator(h_j, t).adjoint() * mode_propagator(h_i, t);
  return std::abs(u(1, 1));
}

inline double oracle_factor_modulus(const ChainConfig& config, double lambda_i,
                                    double lambda_j, double t) {
  double prod = 1.0;
  for (int k = 1; k <= config.modes(); ++k)
    prod *= oracle_mode_factor(mode_hamiltonian(config, lambda_i, k),
                               mode_hamiltonian(config, lambda_j, k), t);
  return prod;
}

// rho = sum_{i,j} a_i a_j^* F_ij |ii><jj| on the coherent block; factor
// phases are dropped (every target measure depends on moduli only).
inline Eigen::MatrixXcd assemble_pure_density(const PureAmplitudes& state,
                                              const std::vector<double>& factors) {
  state.validate();
  const int d = state.d();
  if (static_cast<int>(factors.size()) != d * (d - 1) / 2)
    throw std::invalid_argument("assemble_pure_density: expected d(d-1)/2 factors");
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double f = (i == j) ? 1.0 : factors[pair_index(i, j, d)];
      rho(i * d + i, j * d + j) = state.amps[i] * std::conj(state.amps[j]) * f;
    }
  return rho;
}

inline Eigen::MatrixXcd assemble_werner_density(const WernerParams& params,
                                                const std::vector<double>& factors) {
  params.validate();
  const int d = params.d;
  if (static_cast<int>(factors.size()) != d * (d - 1) / 2)
    throw std::invalid_argument("assemble_werner_density: expected d(d-1)/2 factors");
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(d * d, d * d);
  rho *= (1.0 - params.P) / (d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double f = (i == j) ? 1.0 : factors[pair_index(i, j, d)];
      rho(i * d + i, j * d + j) += params.P / d * f;
    }
  return rho;
}

// Sum of |negative eigenvalues| of the partial transpose over the second
// subsystem. Cross-checks every closed-form measure.
inline double negativity_eigen_oracle(const Eigen::MatrixXcd& rho, int d) {
  if (d < 2 || rho.rows() != d * d || rho.cols() != d * d)
    throw std::invalid_argument("negativity_eigen_oracle: expected a d^2 x d^2 matrix");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("negativity_eigen_oracle: matrix not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
    throw std::invalid_argument("negativity_eigen_oracle: trace must be 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> psd(rho, Eigen::EigenvaluesOnly);
  if (psd.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("negativity_eigen_oracle: matrix not PSD");

  Eigen::MatrixXcd pt(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          pt(i * d + j, k * d + l) = rho(i * d + l, k * d + j);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt, Eigen::EigenvaluesOnly);
  double neg = 0.0;
  for (int n = 0; n < es.eigenvalues().size(); ++n)
    if (es.eigenvalues()(n) < 0.0) neg += -es.eigenvalues()(n);
  return neg;
}

} // namespace entdyn
