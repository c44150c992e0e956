#include "msl/adapters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace msl {

TauExpression from_classical(const std::vector<ClassicalCell>& cells, double a, double b) {
  std::vector<DensityCell> rho, sigma, chi;
  for (const auto& c : cells) {
    if (!(c.r > 0.0)) throw HypothesisViolation(HypothesisViolation::Clause::RhoNotPositive, "r must be positive");
    if (c.p == 0.0) throw HypothesisViolation(HypothesisViolation::Clause::SigmaSupport, "p must be nonzero");
    rho.push_back({c.x0, c.x1, c.r});
    sigma.push_back({c.x0, c.x1, 1.0 / c.p});
    chi.push_back({c.x0, c.x1, c.q});
  }
  return build_tau(Measure(a, b, {}, rho), Measure(a, b, {}, sigma), Measure(a, b, {}, chi));
}

TauExpression from_jacobi(const std::vector<double>& p, const std::vector<double>& q) {
  const int n = static_cast<int>(q.size());
  if (n < 1 || p.size() != q.size() + 1) throw ValidationError("Jacobi data needs N >= 1, |p| = N + 1, |q| = N");
  const double a = 0.5, b = n + 0.5;
  std::vector<Atom> rho, chi;
  std::vector<DensityCell> sigma;
  for (int k = 0; k <= n; ++k) {
    if (p[k] == 0.0) throw ValidationError("Jacobi off-diagonal entries must be nonzero");
    sigma.push_back({std::max(a, double(k)), std::min(b, k + 1.0), 1.0 / p[k]});
  }
  for (int k = 1; k <= n; ++k) {
    rho.push_back({double(k), 1.0});
    chi.push_back({double(k), q[k - 1]});
  }
  TauOptions opts;
  opts.one_point = n == 1;
  return build_tau(Measure(a, b, rho, {}), Measure(a, b, {}, sigma), Measure(a, b, chi, {}), opts);
}

BoundaryConditionSpec jacobi_dirichlet_bc(const std::vector<double>& p) {
  const double pi = std::numbers::pi;
  // f(0) = u(1-) - u^[1](1-)/p_0 and f(N+1) = u(N+) + u^[1](N+)/p_N.
  double phi_a = std::atan2(1.0, p.front());
  double phi_b = std::atan2(-1.0, p.back()) + pi;
  phi_a = std::fmod(phi_a + pi, pi);
  phi_b = std::fmod(phi_b + pi, pi);
  return {SeparateBC{phi_a, phi_b}, FunctionalBasis::LeftLimitAtSupport, FunctionalBasis::LeftLimitAtSupport};
}

Eigen::MatrixXd jacobi_matrix(const std::vector<double>& p, const std::vector<double>& q) {
  const int n = static_cast<int>(q.size());
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    j(k, k) = q[k] + p[k] + p[k + 1];
    if (k + 1 < n) j(k, k + 1) = j(k + 1, k) = -p[k + 1];
  }
  return j;
}

TauExpression from_krein_string(const Measure& mass, double length) {
  if (!(length > 0.0)) throw ValidationError("string length must be positive");
  const Measure rho(0.0, length, mass.atoms(), mass.cells());
  TauOptions opts;
  opts.one_point = rho.cells().empty() && rho.atoms().size() == 1;
  return build_tau(rho, Measure::lebesgue(0.0, length), Measure(0.0, length), opts);
}

TauExpression from_peakon(const std::vector<Peakon>& peakons, double margin) {
  if (peakons.empty()) {
    throw HypothesisViolation(HypothesisViolation::Clause::SupportTooSmall, "no peakons given");
  }
  double lo = peakons.front().x, hi = lo;
  for (const auto& pk : peakons) {
    lo = std::min(lo, pk.x);
    hi = std::max(hi, pk.x);
  }
  const double a = lo - margin, b = hi + margin;
  std::vector<Atom> rho;
  for (const auto& pk : peakons) rho.push_back({pk.x, pk.m});
  const Measure varrho(a, b, rho, {});
  TauOptions opts;
  opts.one_point = varrho.atoms().size() == 1;
  return build_tau(varrho, Measure::lebesgue(a, b), Measure::lebesgue(a, b, 0.25), opts);
}

BoundaryConditionSpec point_dirichlet_bc() {
  return {SeparateBC{0.0, 0.0}, FunctionalBasis::PointEvaluation, FunctionalBasis::PointEvaluation};
}

}  // namespace msl
