#include "msl/sturm_liouville.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace msl {

namespace {

using Clause = HypothesisViolation::Clause;

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::vector<std::pair<double, double>> support_components(const Measure& rho) {
  std::vector<std::pair<double, double>> parts;
  for (const auto& at : rho.atoms()) parts.emplace_back(at.x, at.x);
  for (const auto& c : rho.cells()) parts.emplace_back(c.x0, c.x1);
  std::sort(parts.begin(), parts.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& p : parts) {
    if (!merged.empty() && p.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, p.second);
    } else {
      merged.push_back(p);
    }
  }
  return merged;
}

// Signs (+1/-1) of the nonzero parts of mu inside the open interval (lo,hi).
void collect_signs(const Measure& mu, double lo, double hi, bool& pos, bool& neg) {
  for (const auto& at : mu.atoms()) {
    if (at.x > lo && at.x < hi) (at.weight.real() > 0 ? pos : neg) = true;
  }
  for (const auto& c : mu.cells()) {
    if (std::min(c.x1, hi) > std::max(c.x0, lo)) (c.value.real() > 0 ? pos : neg) = true;
  }
}

class ComponentImpl final : public PiecewiseFunction::Impl {
 public:
  ComponentImpl(std::shared_ptr<const Trajectory> tr, int i) : tr_(std::move(tr)), i_(i) {}
  cplx value(double x) const override { return tr_->value(x)(i_); }
  cplx value_plus(double x) const override { return tr_->value_plus(x)(i_); }
  cplx derivative(double x) const override { return tr_->derivative(x)(i_); }
  std::vector<double> breakpoints() const override { return tr_->nodes(); }
  double rate(double lo, double hi) const override { return tr_->rate(lo, hi); }

 private:
  std::shared_ptr<const Trajectory> tr_;
  int i_;
};

}  // namespace

MeasureSystem sl_system(const Measure& varrho, const Measure& varsigma, const Measure& chi) {
  const double a = varrho.a();
  const double b = varrho.b();
  const Measure zero(a, b);
  std::vector<Measure> m1{zero, varsigma, chi, zero};
  std::vector<Measure> m2{zero, zero, varrho * -1.0, zero};
  return MeasureSystem::with_variation_omega(2, std::move(m1), std::move(m2));
}

TauExpression build_tau(Measure varrho, Measure varsigma, Measure chi, TauOptions opts) {
  const double a = varrho.a();
  const double b = varrho.b();
  if (varsigma.a() != a || varsigma.b() != b || chi.a() != a || chi.b() != b) {
    throw HypothesisViolation(Clause::IntervalMismatch, "");
  }
  if (!varrho.is_nonnegative()) throw HypothesisViolation(Clause::RhoNotPositive, "");
  if (!chi.is_real()) throw HypothesisViolation(Clause::ChiNotReal, "");
  if (!varsigma.is_real()) throw HypothesisViolation(Clause::SigmaNotReal, "");

  {
    const auto& cells = varsigma.cells();
    bool covers = !cells.empty() && cells.front().x0 == a && cells.back().x1 == b;
    for (std::size_t k = 0; covers && k + 1 < cells.size(); ++k) covers = cells[k].x1 == cells[k + 1].x0;
    if (!covers) throw HypothesisViolation(Clause::SigmaSupport, "density of varsigma vanishes on a subinterval");
  }
  for (const auto& at : varsigma.atoms()) {
    if (varrho.atom_mass(at.x) != cplx(0.0) || chi.atom_mass(at.x) != cplx(0.0)) {
      throw HypothesisViolation(Clause::SharedAtom, "x = " + num(at.x));
    }
  }

  TauExpression t;
  t.support_ = support_components(varrho);
  if (t.support_.empty()) throw HypothesisViolation(Clause::SupportTooSmall, "varrho is zero");
  for (std::size_t k = 0; k + 1 < t.support_.size(); ++k) {
    const double lo = t.support_[k].second;
    const double hi = t.support_[k + 1].first;
    bool pos = false, neg = false;
    collect_signs(varsigma, lo, hi, pos, neg);
    collect_signs(chi, lo, hi, pos, neg);
    if (pos && neg) throw HypothesisViolation(Clause::GapSign, "gap (" + num(lo) + ", " + num(hi) + ")");
  }
  t.alpha_ = t.support_.front().first;
  t.beta_ = t.support_.back().second;
  if (t.alpha_ == t.beta_ && !opts.one_point) {
    throw HypothesisViolation(Clause::SupportTooSmall, "supp(varrho) = {" + num(t.alpha_) + "}");
  }

  // Finite representations have finite variation up to every finite endpoint.
  t.regular_a_ = std::isfinite(a);
  t.regular_b_ = std::isfinite(b);

  double lo = opts.window_lo;
  double hi = opts.window_hi;
  if (std::isnan(lo) || std::isnan(hi)) {
    std::vector<double> feats = varrho.features();
    for (const Measure* m : {&varsigma, &chi}) {
      auto f = m->features();
      feats.insert(feats.end(), f.begin(), f.end());
    }
    std::sort(feats.begin(), feats.end());
    if (std::isnan(lo)) lo = std::isfinite(a) ? a : feats.front() - 10.0;
    if (std::isnan(hi)) hi = std::isfinite(b) ? b : feats.back() + 10.0;
  }
  if (!(lo >= a && hi <= b && lo < hi && std::isfinite(lo) && std::isfinite(hi))) {
    throw ValidationError("computational window must be a compact subinterval of the closure of (a,b)");
  }
  t.window_lo_ = lo;
  t.window_hi_ = hi;
  t.varrho_ = std::move(varrho);
  t.varsigma_ = std::move(varsigma);
  t.chi_ = std::move(chi);
  t.system_ = std::make_shared<const MeasureSystem>(sl_system(t.varrho_, t.varsigma_, t.chi_));
  return t;
}

TauExpression TauExpression::with_window(double lo, double hi) const {
  if (!(lo >= a() && hi <= b() && lo < hi && std::isfinite(lo) && std::isfinite(hi))) {
    throw ValidationError("computational window must be a compact subinterval of the closure of (a,b)");
  }
  TauExpression t = *this;
  t.window_lo_ = lo;
  t.window_hi_ = hi;
  return t;
}

MeasureSystem TauExpression::system_with_forcing(const PiecewiseFunction& g) const {
  if (g.is_zero()) return *system_;
  return system_->with_forcing({ForcingTerm{1, varrho_ * -1.0, g}});
}

// ---------------------------------------------------------------------------

QuasiSolution::QuasiSolution(std::shared_ptr<const Trajectory> tr, cplx z, PiecewiseFunction g)
    : tr_(std::move(tr)), z_(z), g_(std::move(g)) {}

PiecewiseFunction QuasiSolution::value_fn() const {
  return PiecewiseFunction(std::make_shared<ComponentImpl>(tr_, 0));
}

PiecewiseFunction QuasiSolution::quasi_fn() const {
  return PiecewiseFunction(std::make_shared<ComponentImpl>(tr_, 1));
}

PiecewiseFunction QuasiSolution::tau_fn() const {
  if (g_.is_zero()) return value_fn() * z_;
  return value_fn() * z_ + g_;
}

QuasiSolution solve_tau(const TauExpression& tau, cplx z, const PiecewiseFunction& g, double c, cplx d1, cplx d2,
                        LimitKind kind, std::vector<double> points) {
  if ((c == tau.a() && !tau.regular(Side::A)) || (c == tau.b() && !tau.regular(Side::B))) {
    throw EndpointNotRegular("initial point is a non-regular endpoint");
  }
  if (c < tau.window_lo() || c > tau.window_hi()) throw PositionOutsideInterval(c, tau.window_lo(), tau.window_hi());
  CVec yc(2);
  yc << d1, d2;
  points.push_back(tau.window_lo());
  points.push_back(tau.window_hi());
  auto tr = std::make_shared<const Trajectory>(solve_ivp(tau.system_with_forcing(g), z, c, yc, std::move(points),
                                                         kind == LimitKind::AtX ? InitialKind::AtX
                                                                                : InitialKind::AtXPlus));
  return QuasiSolution(std::move(tr), z, g);
}

QuasiSolution solve_tau(const TauExpression& tau, cplx z, double c, cplx d1, cplx d2, LimitKind kind) {
  return solve_tau(tau, z, PiecewiseFunction(), c, d1, d2, kind);
}

cplx wronskian(const QuasiSolution& u, const QuasiSolution& v, double x) {
  const CVec p = u.trajectory().value(x);
  const CVec q = v.trajectory().value(x);
  return p(0) * q(1) - p(1) * q(0);
}

cplx wronskian_plus(const QuasiSolution& u, const QuasiSolution& v, double x) {
  const CVec p = u.trajectory().value_plus(x);
  const CVec q = v.trajectory().value_plus(x);
  return p(0) * q(1) - p(1) * q(0);
}

cplx lagrange_residual(const TauExpression& tau, const QuasiSolution& u, const QuasiSolution& v, double alpha,
                       double beta) {
  const PiecewiseFunction integrand = v.value_fn() * u.tau_fn() - u.value_fn() * v.tau_fn();
  return integrate(integrand, tau.varrho(), alpha, beta) - (wronskian(u, v, beta) - wronskian(u, v, alpha));
}

cplx pluecker_residual(const QuasiSolution& f1, const QuasiSolution& f2, const QuasiSolution& f3,
                       const QuasiSolution& f4, double x) {
  return wronskian(f1, f2, x) * wronskian(f3, f4, x) + wronskian(f1, f3, x) * wronskian(f4, f2, x) +
         wronskian(f1, f4, x) * wronskian(f2, f3, x);
}

cplx apply_tau_at(const TauExpression& tau, const QuasiSolution& u, double x) {
  const cplx mass = tau.varrho().atom_mass(x);
  if (mass != cplx(0.0)) {
    const CVec left = u.trajectory().value(x);
    const CVec right = u.trajectory().value_plus(x);
    return (-(right(1) - left(1)) + left(0) * tau.chi().atom_mass(x)) / mass;
  }
  const cplx r = tau.varrho().density_at(x);
  if (r == cplx(0.0)) return std::numeric_limits<double>::quiet_NaN();
  const CVec y = u.trajectory().value(x);
  const CVec dy = u.trajectory().derivative(x);
  return (-dy(1) + tau.chi().density_at(x) * y(0)) / r;
}

std::vector<TauSample> apply_tau(const TauExpression& tau, const QuasiSolution& u) {
  std::vector<TauSample> out;
  for (const auto& at : tau.varrho().atoms()) {
    if (at.x >= u.lo() && at.x <= u.hi()) out.push_back({at.x, apply_tau_at(tau, u, at.x)});
  }
  for (const auto& c : tau.varrho().cells()) {
    const double s = std::max(c.x0, u.lo());
    const double t = std::min(c.x1, u.hi());
    if (s < t) {
      const double mid = 0.5 * (s + t);
      if (tau.varrho().atom_mass(mid) == cplx(0.0)) out.push_back({mid, apply_tau_at(tau, u, mid)});
    }
  }
  std::sort(out.begin(), out.end(), [](const TauSample& l, const TauSample& r) { return l.x < r.x; });
  return out;
}

}  // namespace msl
