#pragma once

#include "msl/boundary.hpp"

#include <vector>

namespace msl {

// One cell of piecewise-constant classical data: -(p y')' + q y = z r y.
struct ClassicalCell {
  double x0;
  double x1;
  double r;
  double p;
  double q;
};

// dvarrho = r dx, dvarsigma = dx / p, dchi = q dx. Cells must tile (a,b).
TauExpression from_classical(const std::vector<ClassicalCell>& cells, double a, double b);

// Samples smooth r, p, q at cell midpoints of a uniform mesh.
template <class R, class P, class Q>
TauExpression from_classical(R r, P p, Q q, double a, double b, int cells) {
  std::vector<ClassicalCell> cs;
  const double h = (b - a) / cells;
  for (int k = 0; k < cells; ++k) {
    const double x0 = a + k * h, x1 = k + 1 == cells ? b : a + (k + 1) * h, m = 0.5 * (x0 + x1);
    cs.push_back({x0, x1, r(m), p(m), q(m)});
  }
  return from_classical(cs, a, b);
}

// Jacobi operator (tau f)(n) = p_{n-1}(f(n) - f(n-1)) - p_n(f(n+1) - f(n)) + q_n f(n),
// n = 1..N. p holds p_0..p_N (N+1 entries), q holds q_1..q_N. The interval is
// (1/2, N + 1/2).
TauExpression from_jacobi(const std::vector<double>& p, const std::vector<double>& q);

// Conditions f(0) = f(N+1) = 0 written with left-limit functionals at 1 and N.
BoundaryConditionSpec jacobi_dirichlet_bc(const std::vector<double>& p);

// The symmetric tridiagonal matrix of the Dirichlet Jacobi problem.
Eigen::MatrixXd jacobi_matrix(const std::vector<double>& p, const std::vector<double>& q);

// varsigma Lebesgue, chi = 0 on (0, length).
TauExpression from_krein_string(const Measure& mass, double length);

struct Peakon {
  double x;
  double m;
};

// dvarrho = sum m_i delta_{x_i}, dvarsigma = dx, dchi = dx / 4 on the window
// (min x - margin, max x + margin), which replaces the real line.
TauExpression from_peakon(const std::vector<Peakon>& peakons, double margin = 10.0);

// Dirichlet conditions read by point evaluation at the interval ends.
BoundaryConditionSpec point_dirichlet_bc();

}  // namespace msl
