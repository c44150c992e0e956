#include "msl/boundary.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace msl {

namespace {

constexpr double kZeroRelTol = 1e-12;
constexpr double kConvergedGrowth = 1e-3;
constexpr double kStrongGrowth = 1e3;

std::string num(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

bool is_zero_rel(double v, double scale) { return std::abs(v) <= kZeroRelTol * std::max(scale, 1e-300); }

void check_angle(double phi, const char* name) {
  if (!std::isfinite(phi) || phi < 0.0 || phi >= std::numbers::pi) {
    throw InvalidBC(std::string("angle ") + name + " must lie in [0, pi)");
  }
}

}  // namespace

const char* to_string(EndpointTag t) {
  switch (t) {
    case EndpointTag::Regular:
      return "regular";
    case EndpointTag::LimitCircle:
      return "limit-circle";
    case EndpointTag::LimitPoint:
      return "limit-point";
  }
  return "unknown";
}

EndpointClass classify_endpoint(const TauExpression& tau, Side which, std::vector<double> probe) {
  const bool left = which == Side::A;
  const double end = left ? tau.a() : tau.b();
  if (tau.regular(which)) {
    const double mid = 0.5 * (tau.window_lo() + tau.window_hi());
    const double lo = left ? end : mid;
    const double hi = left ? mid : end;
    std::ostringstream ev;
    ev << "finite variation near endpoint: |varrho|=" << total_variation(tau.varrho(), lo, hi)
       << " |varsigma|=" << total_variation(tau.varsigma(), lo, hi)
       << " |chi|=" << total_variation(tau.chi(), lo, hi);
    return {EndpointTag::Regular, ev.str(), {}, false};
  }
  const double edge = left ? tau.alpha() : tau.beta();
  if (std::isfinite(edge)) {
    return {EndpointTag::LimitCircle, "varrho has no weight near the endpoint (support edge " + num(edge) + ")", {},
            false};
  }

  const double c = 0.5 * (tau.window_lo() + tau.window_hi());
  if (probe.empty()) {
    const double len = left ? c - tau.window_lo() : tau.window_hi() - c;
    for (double scale : {1.0, 10.0, 100.0}) probe.push_back(left ? c - len * scale : c + len * scale);
  }
  double far = c;
  for (double p : probe) far = left ? std::min(far, p) : std::max(far, p);
  const TauExpression wide = left ? tau.with_window(far, tau.window_hi()) : tau.with_window(tau.window_lo(), far);
  const QuasiSolution u1 = solve_tau(wide, 0.0, c, 1.0, 0.0);
  const QuasiSolution u2 = solve_tau(wide, 0.0, c, 0.0, 1.0);
  EndpointClass out{EndpointTag::LimitPoint, "", {}, true};
  for (double p : probe) {
    double n = 0.0;
    for (const QuasiSolution* u : {&u1, &u2}) {
      const PiecewiseFunction abs2 = u->value_fn() * u->value_fn().conj();
      n = std::max(n, std::abs(integrate(abs2, wide.varrho(), std::min(c, p), std::max(c, p))));
    }
    out.norms.push_back(n);
  }
  const std::size_t k = out.norms.size();
  const double last = out.norms[k - 1];
  const double prev = k > 1 ? out.norms[k - 2] : last;
  const double first = out.norms.front();
  const bool finite = std::isfinite(last) && std::isfinite(prev);
  const bool converged = finite && last <= (1.0 + kConvergedGrowth) * prev;
  const double growth = first > 0.0 ? last / first : std::numeric_limits<double>::infinity();
  std::ostringstream ev;
  ev << "heuristic: max L2 norm growth " << growth << " over probe windows";
  if (converged) {
    out.tag = EndpointTag::LimitCircle;
    ev << " (converged)";
  } else {
    ev << (growth >= kStrongGrowth ? " (divergent)" : " (not converged)");
  }
  out.evidence = ev.str();
  return out;
}

// ---------------------------------------------------------------------------

BoundaryFunctionals::BoundaryFunctionals(Side side, FunctionalBasis basis, double point)
    : side_(side), basis_(basis), point_(point) {}

LimitKind BoundaryFunctionals::limit_kind() const {
  return (basis_ == FunctionalBasis::LeftLimitAtSupport && side_ == Side::B) ? LimitKind::AtXPlus : LimitKind::AtX;
}

cplx BoundaryFunctionals::bc1(const QuasiSolution& f) const {
  return limit_kind() == LimitKind::AtXPlus ? f.f_plus(point_) : f.f(point_);
}

cplx BoundaryFunctionals::bc2(const QuasiSolution& f) const {
  return limit_kind() == LimitKind::AtXPlus ? f.f1_plus(point_) : f.f1(point_);
}

cplx BoundaryFunctionals::condition(const QuasiSolution& f, double phi) const {
  return bc1(f) * std::cos(phi) - bc2(f) * std::sin(phi);
}

BoundaryFunctionals boundary_functionals(const TauExpression& tau, Side which, FunctionalBasis basis) {
  const bool left = which == Side::A;
  const double end = left ? tau.a() : tau.b();
  const double edge = left ? tau.alpha() : tau.beta();
  if (basis == FunctionalBasis::Auto) {
    basis = edge != end ? FunctionalBasis::LeftLimitAtSupport : FunctionalBasis::PointEvaluation;
  }
  if (basis == FunctionalBasis::PointEvaluation) {
    if (!tau.regular(which)) throw EndpointNotRegular(std::string("endpoint ") + (left ? "a" : "b") + " is not regular");
    if (end != (left ? tau.window_lo() : tau.window_hi())) {
      throw EndpointNotRegular("point evaluation needs the computational window to reach the endpoint");
    }
    return BoundaryFunctionals(which, basis, end);
  }
  if (edge == end) {
    throw NoGapAtEndpoint(std::string("varrho has weight arbitrarily close to ") + (left ? "a" : "b"));
  }
  return BoundaryFunctionals(which, basis, edge);
}

std::array<double, 4> reference_values(const TauExpression& tau, const BoundaryFunctionals& fun) {
  const LimitKind kind = fun.limit_kind();
  const QuasiSolution w1 = solve_tau(tau, 0.0, fun.point(), 1.0, 0.0, kind);
  const QuasiSolution w2 = solve_tau(tau, 0.0, fun.point(), 0.0, 1.0, kind);
  const bool left = fun.side() == Side::A;
  const double x = left ? tau.alpha() : tau.beta();
  if (left) return {w1.f(x).real(), w1.f1(x).real(), w2.f(x).real(), w2.f1(x).real()};
  return {w1.f_plus(x).real(), w1.f1_plus(x).real(), w2.f_plus(x).real(), w2.f1_plus(x).real()};
}

Eigen::Matrix2d conjugated_r(const TauExpression& tau, const BoundaryFunctionals& fa, const BoundaryFunctionals& fb,
                             const Eigen::Matrix2d& r) {
  auto pmat = [](const std::array<double, 4>& w) {
    Eigen::Matrix2d p;
    p << w[3], -w[2], -w[1], w[0];
    return p;
  };
  const Eigen::Matrix2d pa = pmat(reference_values(tau, fa));
  const Eigen::Matrix2d pb = pmat(reference_values(tau, fb));
  return pb.inverse() * r * pa;
}

// ---------------------------------------------------------------------------

OneDimVerdict onedim_classify(const TauExpression& tau, const BoundaryConditionSpec& bc) {
  if (!tau.one_point()) throw NotOnePoint("supp(varrho) is not a single point");
  const double x0 = tau.alpha();
  const double rho0 = tau.varrho().atom_mass(x0).real();
  const double chi0 = tau.chi().atom_mass(x0).real();
  const BoundaryFunctionals fa = boundary_functionals(tau, Side::A, bc.basis_a);
  const BoundaryFunctionals fb = boundary_functionals(tau, Side::B, bc.basis_b);
  OneDimVerdict out;
  if (const auto* sep = std::get_if<SeparateBC>(&bc.kind)) {
    check_angle(sep->phi_a, "phi_a");
    check_angle(sep->phi_b, "phi_b");
    const auto wa = reference_values(tau, fa);
    const auto wb = reference_values(tau, fb);
    const double ca = std::cos(sep->phi_a), sa = std::sin(sep->phi_a);
    const double cb = std::cos(sep->phi_b), sb = std::sin(sep->phi_b);
    const double ia = ca * wa[2] + sa * wa[0];
    const double ib = cb * wb[2] + sb * wb[0];
    const bool ha = !is_zero_rel(ia, std::abs(ca * wa[2]) + std::abs(sa * wa[0]));
    const bool hb = !is_zero_rel(ib, std::abs(cb * wb[2]) + std::abs(sb * wb[0]));
    out.self_adjoint = ha || hb;
    out.op = ha && hb;
    if (out.op) {
      const double ka = (ca * wa[3] + sa * wa[1]) / ia;
      const double kb = (cb * wb[3] + sb * wb[1]) / ib;
      out.tau_scalar = (ka - kb + chi0) / rho0;
    }
    return out;
  }
  const auto& cp = std::get<CoupledBC>(bc.kind);
  check_angle(cp.phi, "phi");
  const Eigen::Matrix2d rt = conjugated_r(tau, fa, fb, cp.r);
  const cplx e = std::polar(1.0, cp.phi);
  const bool r12 = !is_zero_rel(rt(0, 1), rt.cwiseAbs().maxCoeff());
  out.op = r12;
  out.self_adjoint = r12 || (std::abs(e * rt(0, 0) - 1.0) > kZeroRelTol && std::abs(e * rt(1, 1) - 1.0) > kZeroRelTol);
  if (out.op) out.tau_scalar = ((2.0 * std::cos(cp.phi) - rt.trace()) / rt(0, 1) + chi0) / rho0;
  return out;
}

SelfAdjointProblem build_problem(const TauExpression& tau, const BoundaryConditionSpec& bc_in) {
  BoundaryConditionSpec bc = bc_in;
  if (const auto* sep = std::get_if<SeparateBC>(&bc.kind)) {
    check_angle(sep->phi_a, "phi_a");
    check_angle(sep->phi_b, "phi_b");
  } else {
    const auto& cp = std::get<CoupledBC>(bc.kind);
    check_angle(cp.phi, "phi");
    if (!cp.r.allFinite() || std::abs(cp.r.determinant() - 1.0) > 1e-12 * std::max(1.0, cp.r.squaredNorm())) {
      throw InvalidBC("coupled boundary condition needs det R = 1");
    }
  }

  SelfAdjointProblem p{tau, bc, {}, classify_endpoint(tau, Side::A), classify_endpoint(tau, Side::B), {}, {}};
  const bool lp_a = p.class_a.tag == EndpointTag::LimitPoint;
  const bool lp_b = p.class_b.tag == EndpointTag::LimitPoint;
  if (!bc.separate() && (lp_a || lp_b)) {
    throw InvalidBC("coupled boundary conditions need both endpoints in the limit-circle case");
  }
  if (!lp_a) p.fa = boundary_functionals(tau, Side::A, bc.basis_a);
  if (!lp_b) p.fb = boundary_functionals(tau, Side::B, bc.basis_b);
  p.bc.basis_a = p.fa ? p.fa->basis() : FunctionalBasis::Auto;
  p.bc.basis_b = p.fb ? p.fb->basis() : FunctionalBasis::Auto;

  const double alpha = tau.alpha();
  const double beta = tau.beta();
  if (tau.one_point()) {
    const OneDimVerdict v = onedim_classify(tau, p.bc);
    if (!v.self_adjoint) throw InvalidBC("boundary conditions do not give a self-adjoint relation");
    if (!v.op) p.mul = {1, "span{1_{x0}}, x0 = " + num(alpha), {{1.0, 0.0}}};
    else p.mul = {0, "{0}", {}};
    return p;
  }

  const bool massive_a = !lp_a && tau.varrho().atom_mass(alpha) != cplx(0.0);
  const bool massive_b = !lp_b && tau.varrho().atom_mass(beta) != cplx(0.0);
  p.mul = {0, "{0}", {}};
  if (const auto* sep = std::get_if<SeparateBC>(&bc.kind)) {
    auto fails = [&](const BoundaryFunctionals& f, double phi) {
      const auto w = reference_values(tau, f);
      const double c = std::cos(phi), s = std::sin(phi);
      return is_zero_rel(c * w[2] + s * w[0], std::abs(c * w[2]) + std::abs(s * w[0]));
    };
    std::string desc;
    if (massive_a && fails(*p.fa, sep->phi_a)) {
      p.mul.basis.push_back({1.0, 0.0});
      desc = "1_{alpha}, alpha = " + num(alpha);
    }
    if (massive_b && fails(*p.fb, sep->phi_b)) {
      p.mul.basis.push_back({0.0, 1.0});
      desc += (desc.empty() ? "" : "; ") + std::string("1_{beta}, beta = ") + num(beta);
    }
    p.mul.dimension = static_cast<int>(p.mul.basis.size());
    if (p.mul.dimension > 0) p.mul.description = "span{" + desc + "}";
  } else if (massive_a && massive_b) {
    const auto& cp = std::get<CoupledBC>(bc.kind);
    const Eigen::Matrix2d rt = conjugated_r(tau, *p.fa, *p.fb, cp.r);
    if (is_zero_rel(rt(0, 1), rt.cwiseAbs().maxCoeff())) {
      const double rho_a = tau.varrho().atom_mass(alpha).real();
      const double rho_b = tau.varrho().atom_mass(beta).real();
      const cplx coeff = -std::polar(1.0, cp.phi) * rt(1, 1) * rho_a / rho_b;
      p.mul = {1, "span{1_{alpha} + c 1_{beta}}, c = " + num(coeff.real()) + (coeff.imag() < 0 ? "-" : "+") +
                      num(std::abs(coeff.imag())) + "i",
               {{1.0, coeff}}};
    }
  }
  return p;
}

std::vector<QuasiSolution> mul_basis_functions(const SelfAdjointProblem& problem) {
  const TauExpression& tau = problem.tau;
  std::vector<QuasiSolution> out;
  for (const auto& coeffs : problem.mul.basis) {
    std::vector<std::pair<double, cplx>> pts{{tau.alpha(), coeffs[0]}};
    if (tau.beta() != tau.alpha()) pts.emplace_back(tau.beta(), coeffs[1]);
    const PiecewiseFunction g = PiecewiseFunction().with_point_values(pts);
    out.push_back(solve_tau(tau, 0.0, g, tau.alpha(), 0.0, 0.0, LimitKind::AtXPlus));
  }
  return out;
}

}  // namespace msl
