#include "msl/spectral.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace msl {

namespace {

constexpr double kNearZeroRel = 1e-13;
constexpr double kTouchRel = 1e-8;
constexpr int kMaxWindowDoublings = 30;

struct Anchor {
  BoundaryFunctionals fun;
  double phi;
};

// Limit-point sides are truncated with a Dirichlet condition at the window edge.
Anchor anchor(const SelfAdjointProblem& p, Side side) {
  const auto& f = side == Side::A ? p.fa : p.fb;
  double phi = 0.0;
  if (const auto* sep = std::get_if<SeparateBC>(&p.bc.kind)) phi = side == Side::A ? sep->phi_a : sep->phi_b;
  if (f) return {*f, phi};
  const double edge = side == Side::A ? p.tau.window_lo() : p.tau.window_hi();
  return {BoundaryFunctionals(side, FunctionalBasis::PointEvaluation, edge), 0.0};
}

QuasiSolution side_solution(const SelfAdjointProblem& p, cplx z, Side side, cplx v1, cplx v2,
                            const PiecewiseFunction& g = PiecewiseFunction()) {
  const Anchor an = anchor(p, side);
  return solve_tau(p.tau, z, g, an.fun.point(), v1, v2, an.fun.limit_kind());
}

// Size of the boundary data of u; the condition is compared against it.
double condition_scale(const Anchor& an, const QuasiSolution& u) {
  return std::abs(an.fun.bc1(u)) + std::abs(an.fun.bc2(u));
}

const CoupledBC& coupled(const SelfAdjointProblem& p) { return std::get<CoupledBC>(p.bc.kind); }

Eigen::Matrix2cd beta_matrix(const Anchor& b, const QuasiSolution& u1, const QuasiSolution& u2) {
  Eigen::Matrix2cd m;
  m << b.fun.bc1(u1), b.fun.bc1(u2), b.fun.bc2(u1), b.fun.bc2(u2);
  return m;
}

Eigen::Matrix2cd coupled_system(const SelfAdjointProblem& p, const Eigen::Matrix2cd& mb) {
  const auto& cp = coupled(p);
  return std::polar(1.0, cp.phi) * cp.r.cast<cplx>() - mb;
}

bool near_singular(const Eigen::Matrix2cd& d, const Eigen::Matrix2cd& mb, const SelfAdjointProblem& p) {
  const double scale = std::max({1.0, mb.cwiseAbs().maxCoeff(), coupled(p).r.cwiseAbs().maxCoeff()});
  return std::abs(d.determinant()) <= kNearZeroRel * scale * scale;
}

void require_separate(const SelfAdjointProblem& p, const char* what) {
  if (!p.bc.separate()) throw InvalidBC(std::string(what) + " requires separate boundary conditions");
}

// theta(X)/phi(X) as the window edge X moves out towards a limit-point endpoint.
cplx window_ratio(const SelfAdjointProblem& p, cplx z, Side side, double x0, const CVec& theta0, const CVec& phi0,
                  LimitKind kind, double tol) {
  const TauExpression& tau = p.tau;
  const bool left = side == Side::A;
  double edge = left ? tau.window_lo() : tau.window_hi();
  cplx prev = std::numeric_limits<double>::quiet_NaN();
  for (int k = 0; k < kMaxWindowDoublings; ++k) {
    const TauExpression t = left ? tau.with_window(edge, tau.window_hi()) : tau.with_window(tau.window_lo(), edge);
    const QuasiSolution th = solve_tau(t, z, x0, theta0(0), theta0(1), kind);
    const QuasiSolution ph = solve_tau(t, z, x0, phi0(0), phi0(1), kind);
    const cplx ratio = th.f(edge) / ph.f(edge);
    if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag())) break;
    if (std::abs(ratio - prev) < 10.0 * tol * std::max(1.0, std::abs(ratio))) return ratio;
    prev = ratio;
    edge = x0 + 2.0 * (edge - x0);
  }
  throw ZOnSpectrum(z);
}

}  // namespace

cplx characteristic(const SelfAdjointProblem& p, cplx z) {
  if (p.bc.separate()) {
    const Anchor a = anchor(p, Side::A);
    const Anchor b = anchor(p, Side::B);
    const QuasiSolution ua = side_solution(p, z, Side::A, std::sin(a.phi), std::cos(a.phi));
    // W(u_b, u_a) evaluated where u_b carries its boundary data.
    return -b.fun.condition(ua, b.phi);
  }
  const QuasiSolution u1 = side_solution(p, z, Side::A, 1.0, 0.0);
  const QuasiSolution u2 = side_solution(p, z, Side::A, 0.0, 1.0);
  const Eigen::Matrix2cd mb = beta_matrix(anchor(p, Side::B), u1, u2);
  return coupled_system(p, mb).determinant() / std::polar(1.0, coupled(p).phi);
}

SpectralData eigenvalues(const SelfAdjointProblem& p, double lo, double hi, double tol, const EigenOptions& opts) {
  if (!(lo < hi) || !(tol > 0.0)) throw ValidationError("eigenvalue search needs lo < hi and tol > 0");
  auto f = [&](double lam) { return characteristic(p, lam).real(); };
  SpectralData out;
  std::vector<std::pair<double, int>> roots;

  auto refine = [&](double l, double r, double fl, double fr) {
    boost::uintmax_t iters = 200;
    auto stop = [tol](double x, double y) { return std::abs(y - x) <= tol; };
    const auto br = boost::math::tools::toms748_solve(f, l, r, fl, fr, stop, iters);
    return 0.5 * (br.first + br.second);
  };

  // Scans [l, r] with n cells; local minima of |f| without a sign change are
  // rescanned four times finer.
  auto scan = [&](auto&& self, double l, double r, int n, int level, double scale) -> void {
    std::vector<double> xs(n + 1), vs(n + 1);
    for (int k = 0; k <= n; ++k) {
      xs[k] = k == n ? r : l + (r - l) * k / n;
      vs[k] = f(xs[k]);
      if (level == 0) out.samples.emplace_back(xs[k], vs[k]);
    }
    for (int k = 0; k < n; ++k) {
      if (vs[k] == 0.0) {
        roots.emplace_back(xs[k], 1);
      } else if (vs[k + 1] != 0.0 && (vs[k] < 0) != (vs[k + 1] < 0)) {
        roots.emplace_back(refine(xs[k], xs[k + 1], vs[k], vs[k + 1]), 1);
      }
    }
    if (level == 0 && vs[n] == 0.0) roots.emplace_back(xs[n], 1);
    for (int k = 1; k < n; ++k) {
      const bool same = (vs[k - 1] < 0) == (vs[k] < 0) && (vs[k] < 0) == (vs[k + 1] < 0);
      if (!same || vs[k] == 0.0) continue;
      if (!(std::abs(vs[k]) < std::abs(vs[k - 1]) && std::abs(vs[k]) < std::abs(vs[k + 1]))) continue;
      const double sc = std::max(scale, std::max(std::abs(vs[k - 1]), std::abs(vs[k + 1])));
      if (level < opts.refine_levels) {
        self(self, xs[k - 1], xs[k + 1], 8, level + 1, sc);
        continue;
      }
      const auto m = boost::math::tools::brent_find_minima([&](double x) { return std::abs(f(x)); }, xs[k - 1],
                                                           xs[k + 1], 52);
      if (m.second <= kTouchRel * sc) {
        if (p.bc.separate()) throw BracketTooCoarse(xs[k - 1], xs[k + 1]);
        roots.emplace_back(m.first, 2);
      }
    }
  };
  scan(scan, lo, hi, opts.scan_cells, 0, 0.0);

  std::sort(roots.begin(), roots.end());
  for (const auto& [lam, mult] : roots) {
    if (!out.eigenvalues.empty() && std::abs(lam - out.eigenvalues.back()) <= 2.0 * tol) continue;
    out.eigenvalues.push_back(lam);
    out.multiplicity.push_back(mult);
    if (p.bc.separate()) {
      const Anchor a = anchor(p, Side::A);
      const QuasiSolution phi = side_solution(p, lam, Side::A, std::sin(a.phi), std::cos(a.phi));
      out.norming.push_back(1.0 / l2_norm_squared(p.tau, phi));
    } else {
      out.norming.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return out;
}

cplx green_function(const SelfAdjointProblem& p, cplx z, double x, double y) {
  if (p.bc.separate()) {
    const Anchor a = anchor(p, Side::A);
    const Anchor b = anchor(p, Side::B);
    const QuasiSolution ua = side_solution(p, z, Side::A, std::sin(a.phi), std::cos(a.phi));
    const QuasiSolution ub = side_solution(p, z, Side::B, std::sin(b.phi), std::cos(b.phi));
    const cplx w = -b.fun.condition(ua, b.phi);
    if (std::abs(w) <= kNearZeroRel * condition_scale(b, ua)) throw ZAtEigenvalue(z);
    if (y < x) return ua.f(y) * ub.f(x) / w;
    return ua.f(x) * ub.f(y) / w;
  }
  const QuasiSolution u1 = side_solution(p, z, Side::A, 1.0, 0.0);
  const QuasiSolution u2 = side_solution(p, z, Side::A, 0.0, 1.0);
  const Eigen::Matrix2cd mb = beta_matrix(anchor(p, Side::B), u1, u2);
  const Eigen::Matrix2cd d = coupled_system(p, mb);
  if (near_singular(d, mb, p)) throw ZAtEigenvalue(z);
  const Eigen::Matrix2cd k = d.inverse() * mb;
  const cplx u1x = u1.f(x), u2x = u2.f(x), u1y = u1.f(y), u2y = u2.f(y);
  cplx g = u1x * (k(0, 0) * u2y - k(0, 1) * u1y) + u2x * (k(1, 0) * u2y - k(1, 1) * u1y);
  if (y < x) g += u1x * u2y - u2x * u1y;
  return g;
}

QuasiSolution resolvent_apply(const SelfAdjointProblem& p, cplx z, const PiecewiseFunction& g) {
  const Anchor a = anchor(p, Side::A);
  const Anchor b = anchor(p, Side::B);
  const QuasiSolution fp = side_solution(p, z, Side::A, 0.0, 0.0, g);
  if (p.bc.separate()) {
    const QuasiSolution ua = side_solution(p, z, Side::A, std::sin(a.phi), std::cos(a.phi));
    const cplx lb = b.fun.condition(ua, b.phi);
    if (std::abs(lb) <= kNearZeroRel * condition_scale(b, ua)) throw ZAtEigenvalue(z);
    const cplx c = -b.fun.condition(fp, b.phi) / lb;
    return side_solution(p, z, Side::A, c * std::sin(a.phi), c * std::cos(a.phi), g);
  }
  const QuasiSolution u1 = side_solution(p, z, Side::A, 1.0, 0.0);
  const QuasiSolution u2 = side_solution(p, z, Side::A, 0.0, 1.0);
  const Eigen::Matrix2cd mb = beta_matrix(b, u1, u2);
  const Eigen::Matrix2cd d = coupled_system(p, mb);
  if (near_singular(d, mb, p)) throw ZAtEigenvalue(z);
  Eigen::Vector2cd rhs;
  rhs << b.fun.bc1(fp), b.fun.bc2(fp);
  const Eigen::Vector2cd c = d.partialPivLu().solve(rhs);
  return side_solution(p, z, Side::A, c(0), c(1), g);
}

QuasiSolution theta_solution(const SelfAdjointProblem& p, cplx z) {
  require_separate(p, "the m-function");
  if (!p.fa) throw InvalidBC("the m-function needs a regular or left-limit construction at a");
  const Anchor a = anchor(p, Side::A);
  return side_solution(p, z, Side::A, std::cos(a.phi), -std::sin(a.phi));
}

QuasiSolution phi_solution(const SelfAdjointProblem& p, cplx z) {
  require_separate(p, "the m-function");
  if (!p.fa) throw InvalidBC("the m-function needs a regular or left-limit construction at a");
  const Anchor a = anchor(p, Side::A);
  return side_solution(p, z, Side::A, std::sin(a.phi), std::cos(a.phi));
}

cplx m_function(const SelfAdjointProblem& p, cplx z, double tol) {
  const QuasiSolution th = theta_solution(p, z);
  const QuasiSolution ph = phi_solution(p, z);
  if (p.fb) {
    const Anchor b = anchor(p, Side::B);
    const cplx den = b.fun.condition(ph, b.phi);
    if (std::abs(den) <= kNearZeroRel * condition_scale(b, ph)) throw ZOnSpectrum(z);
    return -b.fun.condition(th, b.phi) / den;
  }
  const Anchor a = anchor(p, Side::A);
  CVec t0(2), f0(2);
  t0 << std::cos(a.phi), -std::sin(a.phi);
  f0 << std::sin(a.phi), std::cos(a.phi);
  return -window_ratio(p, z, Side::B, a.fun.point(), t0, f0, a.fun.limit_kind(), tol);
}

QuasiSolution weyl_solution(const SelfAdjointProblem& p, cplx z) {
  const cplx m = m_function(p, z);
  const Anchor a = anchor(p, Side::A);
  const double c = std::cos(a.phi), s = std::sin(a.phi);
  return side_solution(p, z, Side::A, c + m * s, -s + m * c);
}

double l2_norm_squared(const TauExpression& tau, const QuasiSolution& u) {
  const PiecewiseFunction abs2 = u.value_fn() * u.value_fn().conj();
  double n = integrate(abs2, tau.varrho(), u.lo(), u.hi()).real();
  if (u.hi() < tau.b()) n += tau.varrho().atom_mass(u.hi()).real() * std::norm(u.f(u.hi()));
  return n;
}

std::vector<SpectralAtom> spectral_measure_atoms(const SelfAdjointProblem& p, const SpectralData& data) {
  std::vector<SpectralAtom> out;
  constexpr double eps = 1e-6;
  for (std::size_t k = 0; k < data.eigenvalues.size(); ++k) {
    const double lam = data.eigenvalues[k];
    const double mu = k < data.norming.size() ? data.norming[k] : std::numeric_limits<double>::quiet_NaN();
    SpectralAtom at{lam, mu, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
                    false};
    if (p.bc.separate()) {
      const double r1 = eps * m_function(p, cplx(lam, eps)).imag();
      const double r2 = 2.0 * eps * m_function(p, cplx(lam, 2.0 * eps)).imag();
      at.residue = r1;
      at.residue_extrapolated = (4.0 * r1 - r2) / 3.0;
      at.flagged = !(std::abs(r1 - mu) <= 0.1 * std::abs(mu));
    }
    out.push_back(at);
  }
  return out;
}

WeylMatrix weyl_matrix(const SelfAdjointProblem& p, double x0, double phi_alpha, cplx z) {
  require_separate(p, "the Weyl matrix");
  if (!(x0 > p.tau.window_lo() && x0 < p.tau.window_hi())) {
    throw PositionOutsideInterval(x0, p.tau.window_lo(), p.tau.window_hi());
  }
  if (z.imag() == 0.0) throw ZOnSpectrum(z);
  const double c = std::cos(phi_alpha), s = std::sin(phi_alpha);
  CVec t0(2), f0(2);
  t0 << c, s;
  f0 << -s, c;
  const QuasiSolution th = solve_tau(p.tau, z, x0, t0(0), t0(1));
  const QuasiSolution ph = solve_tau(p.tau, z, x0, f0(0), f0(1));
  WeylMatrix w;
  if (p.fb) {
    const Anchor b = anchor(p, Side::B);
    w.m_plus = -b.fun.condition(th, b.phi) / b.fun.condition(ph, b.phi);
  } else {
    w.m_plus = -window_ratio(p, z, Side::B, x0, t0, f0, LimitKind::AtX, 1e-10);
  }
  if (p.fa) {
    const Anchor a = anchor(p, Side::A);
    w.m_minus = a.fun.condition(th, a.phi) / a.fun.condition(ph, a.phi);
  } else {
    w.m_minus = window_ratio(p, z, Side::A, x0, t0, f0, LimitKind::AtX, 1e-10);
  }
  const cplx sum = w.m_minus + w.m_plus;
  if (std::abs(sum) <= 1e-14 * (std::abs(w.m_minus) + std::abs(w.m_plus))) {
    throw DenominatorVanishes("m_- + m_+ vanishes at the requested z");
  }
  const cplx off = 0.5 * (w.m_minus - w.m_plus) / sum;
  w.matrix << -1.0 / sum, off, off, w.m_minus * w.m_plus / sum;
  w.det = w.matrix.determinant();
  w.trace = w.matrix.trace();
  return w;
}

}  // namespace msl
