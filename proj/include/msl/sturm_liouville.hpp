#pragma once

#include "msl/mde.hpp"

#include <limits>
#include <memory>
#include <vector>

namespace msl {

struct TauOptions {
  // Accept supp(varrho) = {x0}.
  bool one_point = false;
  // Compact computational window; defaults to the interval when finite.
  double window_lo = std::numeric_limits<double>::quiet_NaN();
  double window_hi = std::numeric_limits<double>::quiet_NaN();
};

// tau f = d/dvarrho(-df/dvarsigma + int f dchi) with validated coefficients.
class TauExpression {
 public:
  const Measure& varrho() const { return varrho_; }
  const Measure& varsigma() const { return varsigma_; }
  const Measure& chi() const { return chi_; }
  const Measure& omega() const { return system_->omega(); }
  double a() const { return varrho_.a(); }
  double b() const { return varrho_.b(); }
  // inf and sup of supp(varrho).
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  bool regular(Side s) const { return s == Side::A ? regular_a_ : regular_b_; }
  bool one_point() const { return alpha_ == beta_; }
  double window_lo() const { return window_lo_; }
  double window_hi() const { return window_hi_; }
  // Closed components of supp(varrho), left to right.
  const std::vector<std::pair<double, double>>& support() const { return support_; }

  // du = u^[1] dvarsigma, du^[1] = u dchi - (z u + g) dvarrho.
  const MeasureSystem& system() const { return *system_; }
  MeasureSystem system_with_forcing(const PiecewiseFunction& g) const;

  // Same coefficients on a different computational window.
  TauExpression with_window(double lo, double hi) const;

 private:
  friend TauExpression build_tau(Measure, Measure, Measure, TauOptions);
  Measure varrho_, varsigma_, chi_;
  std::shared_ptr<const MeasureSystem> system_;
  double alpha_ = 0.0, beta_ = 0.0;
  bool regular_a_ = false, regular_b_ = false;
  double window_lo_ = 0.0, window_hi_ = 0.0;
  std::vector<std::pair<double, double>> support_;
};

TauExpression build_tau(Measure varrho, Measure varsigma, Measure chi, TauOptions opts = {});

// 2x2 system of the expression without hypothesis checks.
MeasureSystem sl_system(const Measure& varrho, const Measure& varsigma, const Measure& chi);

enum class LimitKind { AtX, AtXPlus };

// Solution u of (tau - z) u = g: the pair (u, u^[1]) on the window.
class QuasiSolution {
 public:
  QuasiSolution(std::shared_ptr<const Trajectory> tr, cplx z, PiecewiseFunction g);

  cplx z() const { return z_; }
  const PiecewiseFunction& forcing() const { return g_; }
  const Trajectory& trajectory() const { return *tr_; }
  double lo() const { return tr_->lo(); }
  double hi() const { return tr_->hi(); }

  cplx f(double x) const { return tr_->value(x)(0); }
  cplx f1(double x) const { return tr_->value(x)(1); }
  cplx f_plus(double x) const { return tr_->value_plus(x)(0); }
  cplx f1_plus(double x) const { return tr_->value_plus(x)(1); }

  PiecewiseFunction value_fn() const;
  PiecewiseFunction quasi_fn() const;
  // tau u = z u + g, valid varrho-almost everywhere.
  PiecewiseFunction tau_fn() const;

 private:
  std::shared_ptr<const Trajectory> tr_;
  cplx z_;
  PiecewiseFunction g_;
};

// c may be a finite endpoint at which tau is regular.
QuasiSolution solve_tau(const TauExpression& tau, cplx z, const PiecewiseFunction& g, double c, cplx d1, cplx d2,
                        LimitKind kind = LimitKind::AtX, std::vector<double> points = {});
QuasiSolution solve_tau(const TauExpression& tau, cplx z, double c, cplx d1, cplx d2,
                        LimitKind kind = LimitKind::AtX);

cplx wronskian(const QuasiSolution& u, const QuasiSolution& v, double x);
cplx wronskian_plus(const QuasiSolution& u, const QuasiSolution& v, double x);

cplx lagrange_residual(const TauExpression& tau, const QuasiSolution& u, const QuasiSolution& v, double alpha,
                       double beta);

cplx pluecker_residual(const QuasiSolution& f1, const QuasiSolution& f2, const QuasiSolution& f3,
                       const QuasiSolution& f4, double x);

struct TauSample {
  double x;
  cplx value;
};

// tau u at a point of supp(varrho): jump formula at atoms, cell derivative on
// absolutely continuous parts.
cplx apply_tau_at(const TauExpression& tau, const QuasiSolution& u, double x);
// At every varrho-atom and at the midpoint of every density cell in the window.
std::vector<TauSample> apply_tau(const TauExpression& tau, const QuasiSolution& u);

}  // namespace msl
