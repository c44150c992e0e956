#pragma once

#include "msl/boundary.hpp"

#include <vector>

namespace msl {

struct SpectralData {
  std::vector<double> eigenvalues;
  // mu({lambda}) = ||phi_lambda||^-2; NaN for coupled conditions.
  std::vector<double> norming;
  std::vector<int> multiplicity;
  // (lambda, characteristic) pairs from the scan.
  std::vector<std::pair<double, double>> samples;
};

// Separate: W(u_b, u_a). Coupled: e^{-i phi} det(e^{i phi} R M_alpha - M_beta)
// with a fundamental system normalized at a. Real on the real axis.
cplx characteristic(const SelfAdjointProblem& problem, cplx z);

struct EigenOptions {
  // Scan step is (hi - lo) / scan_cells.
  int scan_cells = 1024;
  int refine_levels = 5;
};

SpectralData eigenvalues(const SelfAdjointProblem& problem, double lo, double hi, double tol,
                         const EigenOptions& opts = {});

cplx green_function(const SelfAdjointProblem& problem, cplx z, double x, double y);

// f with (tau - z) f = g satisfying the boundary conditions.
QuasiSolution resolvent_apply(const SelfAdjointProblem& problem, cplx z, const PiecewiseFunction& g);

// Solutions theta, phi at a with W(theta, phi) = 1 fixing the m-function.
QuasiSolution theta_solution(const SelfAdjointProblem& problem, cplx z);
QuasiSolution phi_solution(const SelfAdjointProblem& problem, cplx z);

cplx m_function(const SelfAdjointProblem& problem, cplx z, double tol = 1e-10);

// psi = theta + M phi.
QuasiSolution weyl_solution(const SelfAdjointProblem& problem, cplx z);

// Integral of |u|^2 dvarrho over the window.
double l2_norm_squared(const TauExpression& tau, const QuasiSolution& u);

struct SpectralAtom {
  double lambda;
  double mu;
  // eps Im M(lambda + i eps) at eps = 1e-6, and its Richardson extrapolation.
  double residue;
  double residue_extrapolated;
  bool flagged;
};

std::vector<SpectralAtom> spectral_measure_atoms(const SelfAdjointProblem& problem, const SpectralData& data);

struct WeylMatrix {
  Eigen::Matrix2cd matrix;
  cplx m_minus;
  cplx m_plus;
  cplx det;
  cplx trace;
};

WeylMatrix weyl_matrix(const SelfAdjointProblem& problem, double x0, double phi_alpha, cplx z);

}  // namespace msl
