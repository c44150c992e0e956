#include "msl/mde.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace msl {

namespace {

constexpr double kSingularRelTol = 1e-12;
constexpr double kSeriesThreshold = 1e-8;

void check_span(double x, double a, double b) {
  if (!std::isfinite(x) || x < a || x > b) throw PositionOutsideInterval(x, a, b);
}

double row_sum_norm(const CMat& m) {
  double best = 0.0;
  for (int i = 0; i < m.rows(); ++i) best = std::max(best, m.row(i).cwiseAbs().sum());
  return best;
}

// cosh(r t) and sinh(r t)/r with r^2 = disc.
void cosh_sinhc(cplx disc, double t, cplx& c, cplx& s) {
  const cplx d2 = disc * t * t;
  if (std::abs(d2) < kSeriesThreshold) {
    c = 1.0 + d2 / 2.0 + d2 * d2 / 24.0;
    s = t * (1.0 + d2 / 6.0 + d2 * d2 / 120.0);
  } else if (disc.imag() == 0.0 && disc.real() > 0.0) {
    const double r = std::sqrt(disc.real());
    c = std::cosh(r * t);
    s = std::sinh(r * t) / r;
  } else if (disc.imag() == 0.0) {
    const double r = std::sqrt(-disc.real());
    c = std::cos(r * t);
    s = std::sin(r * t) / r;
  } else {
    const cplx r = std::sqrt(disc);
    c = std::cosh(r * t);
    s = std::sinh(r * t) / r;
  }
}

double cell_rate(const CMat& a) {
  if (a.rows() == 2) {
    const cplx half_trace = 0.5 * (a(0, 0) + a(1, 1));
    const cplx n00 = a(0, 0) - half_trace;
    const cplx disc = n00 * n00 + a(0, 1) * a(1, 0);
    return std::abs(half_trace.real()) + std::sqrt(std::abs(disc));
  }
  return row_sum_norm(a);
}

}  // namespace

CMat expm(const CMat& a, double t) {
  const auto n = a.rows();
  if (n == 1) {
    CMat e(1, 1);
    e(0, 0) = std::exp(a(0, 0) * t);
    return e;
  }
  if (n == 2) {
    const cplx half_trace = 0.5 * (a(0, 0) + a(1, 1));
    CMat nil = a;
    nil(0, 0) -= half_trace;
    nil(1, 1) -= half_trace;
    const cplx disc = nil(0, 0) * nil(0, 0) + nil(0, 1) * nil(1, 0);
    cplx c, s;
    cosh_sinhc(disc, t, c, s);
    const cplx scale =
        half_trace.imag() == 0.0 ? cplx(std::exp(half_trace.real() * t)) : std::exp(half_trace * t);
    CMat e = s * nil;
    e(0, 0) += c;
    e(1, 1) += c;
    return scale * e;
  }
  Eigen::MatrixXcd dyn = a * t;
  Eigen::MatrixXcd ex = dyn.exp();
  return ex;
}

// ---------------------------------------------------------------------------

MeasureSystem::MeasureSystem(std::size_t n, Measure omega, std::vector<Measure> m1, std::vector<Measure> m2,
                             std::vector<ForcingTerm> forcing)
    : n_(n), omega_(std::move(omega)), m1_(std::move(m1)), m2_(std::move(m2)), forcing_(std::move(forcing)) {
  if (n_ == 0 || n_ > static_cast<std::size_t>(kMaxDim)) throw ValidationError("system size must be 1..4");
  if (m1_.size() != n_ * n_ || m2_.size() != n_ * n_) throw ValidationError("coefficient arrays must be n x n");
  if (!omega_.is_nonnegative()) throw ValidationError("omega must be a nonnegative measure");
  auto check = [&](const Measure& m) {
    if (m.a() != omega_.a() || m.b() != omega_.b()) throw ValidationError("system measures must share one interval");
    for (const auto& at : m.atoms()) {
      if (omega_.atom_mass(at.x) == cplx(0.0)) {
        throw ValidationError("coefficient atom at " + std::to_string(at.x) + " is not an atom of omega");
      }
    }
  };
  for (const auto& m : m1_) check(m);
  for (const auto& m : m2_) check(m);
  for (const auto& f : forcing_) {
    if (f.component >= n_) throw ValidationError("forcing component out of range");
    if (f.measure.a() != omega_.a() || f.measure.b() != omega_.b()) {
      throw ValidationError("forcing measure must share the system interval");
    }
  }
}

MeasureSystem MeasureSystem::with_variation_omega(std::size_t n, std::vector<Measure> m1, std::vector<Measure> m2,
                                                  std::vector<ForcingTerm> forcing) {
  if (m1.empty()) throw ValidationError("empty coefficient array");
  Measure omega(m1.front().a(), m1.front().b());
  for (const auto& m : m1) omega = omega + m.abs();
  for (const auto& m : m2) omega = omega + m.abs();
  return MeasureSystem(n, std::move(omega), std::move(m1), std::move(m2), std::move(forcing));
}

MeasureSystem MeasureSystem::with_forcing(std::vector<ForcingTerm> forcing) const {
  return MeasureSystem(n_, omega_, m1_, m2_, std::move(forcing));
}

CMat MeasureSystem::atom_matrix(double x, cplx z) const {
  CMat m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = m1(i, j).atom_mass(x) + z * m2(i, j).atom_mass(x);
  }
  return m;
}

CMat MeasureSystem::density_matrix(double x, cplx z) const {
  CMat m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = m1(i, j).density_at(x) + z * m2(i, j).density_at(x);
  }
  return m;
}

CVec MeasureSystem::atom_forcing(double x) const {
  CVec f = CVec::Zero(n_);
  for (const auto& t : forcing_) {
    const cplx w = t.measure.atom_mass(x);
    if (w != cplx(0.0)) f(t.component) += w * t.weight.value(x);
  }
  return f;
}

std::vector<double> MeasureSystem::features() const {
  std::vector<double> out = omega_.features();
  auto add = [&](const std::vector<double>& v) { out.insert(out.end(), v.begin(), v.end()); };
  for (const auto& m : m1_) add(m.features());
  for (const auto& m : m2_) add(m.features());
  for (const auto& f : forcing_) {
    add(f.measure.features());
    for (double x : f.weight.breakpoints()) {
      if (std::isfinite(x)) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------

JumpFactor jump_factor(const MeasureSystem& sys, cplx z, double x) {
  check_span(x, sys.a(), sys.b());
  CMat j = sys.atom_matrix(x, z);
  for (std::size_t i = 0; i < sys.n(); ++i) j(i, i) += 1.0;
  const double scale = std::pow(j.norm(), static_cast<double>(sys.n()));
  const bool singular = std::abs(j.determinant()) <= kSingularRelTol * scale;
  return {j, singular};
}

std::vector<double> check_uniqueness(const MeasureSystem& sys, cplx z, double lo, double hi) {
  std::vector<double> out;
  for (const auto& at : sys.omega().atoms()) {
    if (at.x < lo || at.x > hi) continue;
    if (jump_factor(sys, z, at.x).singular) out.push_back(at.x);
  }
  return out;
}

double integrated_norm(const MeasureSystem& sys, cplx z, double c, double x) {
  if (x < c) return integrated_norm(sys, z, x, c);
  double total = 0.0;
  for (const auto& at : sys.omega().atoms()) {
    if (at.x >= c && at.x < x) total += row_sum_norm(sys.atom_matrix(at.x, z));
  }
  auto pts = sys.features();
  std::vector<double> mesh{c};
  for (double p : pts) {
    if (p > c && p < x) mesh.push_back(p);
  }
  mesh.push_back(x);
  for (std::size_t k = 0; k + 1 < mesh.size(); ++k) {
    const double mid = 0.5 * (mesh[k] + mesh[k + 1]);
    total += row_sum_norm(sys.density_matrix(mid, z)) * (mesh[k + 1] - mesh[k]);
  }
  return total;
}

// ---------------------------------------------------------------------------

std::size_t Trajectory::locate(double x) const {
  if (!(x >= nodes_.front() && x <= nodes_.back())) throw PositionOutsideInterval(x, nodes_.front(), nodes_.back());
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  return static_cast<std::size_t>(it - nodes_.begin()) - 1;
}

CVec Trajectory::forcing_at(const Cell& cell, double x) const {
  CVec f = CVec::Zero(n_);
  for (const auto& [dens, w] : cell.forcing) f += dens * w.value(x);
  return f;
}

CVec Trajectory::convolution(std::size_t k, double x) const {
  const Cell& cell = cells_[k];
  const double t0 = nodes_[k];
  if (cell.forcing.empty() || !(x > t0)) return CVec::Zero(n_);
  double rate = cell.rate;
  for (const auto& fw : cell.forcing) rate += fw.second.rate(t0, x);
  return smooth_integral_into([&](double s) -> CVec { return expm(cell.a, x - s) * forcing_at(cell, s); }, t0, x,
                              rate, CVec(CVec::Zero(n_)));
}

CVec Trajectory::propagate(std::size_t k, const CVec& start, double x) const {
  return expm(cells_[k].a, x - nodes_[k]) * start + convolution(k, x);
}

// Cells left of the initial point are evaluated from their right node, in the
// direction the states were computed; this keeps decaying solutions accurate.
CVec Trajectory::interior(std::size_t k, double x) const {
  if (k >= origin_) return propagate(k, right_[k], x);
  const double h = nodes_[k + 1] - x;
  return expm(cells_[k].a, -h) * (left_[k + 1] - convolution(k, nodes_[k + 1])) + convolution(k, x);
}

CVec Trajectory::value(double x) const {
  const std::size_t k = locate(x);
  if (nodes_[k] == x) return left_[k];
  return interior(k, x);
}

CVec Trajectory::value_plus(double x) const {
  const std::size_t k = locate(x);
  if (nodes_[k] == x) return right_[k];
  return interior(k, x);
}

CVec Trajectory::derivative(double x) const {
  std::size_t k = locate(x);
  if (k + 1 == nodes_.size()) --k;
  return cells_[k].a * value(x) + forcing_at(cells_[k], x);
}

double Trajectory::rate(double lo, double hi) const {
  double r = 0.0;
  for (std::size_t k = 0; k + 1 < nodes_.size(); ++k) {
    if (nodes_[k + 1] <= lo || nodes_[k] >= hi) continue;
    double cr = cells_[k].rate;
    for (const auto& fw : cells_[k].forcing) cr = std::max(cr, fw.second.rate(lo, hi));
    r = std::max(r, cr);
  }
  return r;
}

Trajectory solve_ivp(const MeasureSystem& sys, cplx z, double c, const CVec& yc, std::vector<double> targets,
                     InitialKind kind) {
  const std::size_t n = sys.n();
  if (static_cast<std::size_t>(yc.size()) != n) throw ValidationError("initial vector has wrong size");
  check_span(c, sys.a(), sys.b());
  for (double t : targets) check_span(t, sys.a(), sys.b());

  double lo = c;
  double hi = c;
  for (double t : targets) {
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  std::vector<double> nodes = std::move(targets);
  nodes.push_back(c);
  for (double p : sys.features()) {
    if (p > lo && p < hi) nodes.push_back(p);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  Trajectory tr;
  tr.n_ = n;
  tr.z_ = z;
  tr.nodes_ = nodes;
  tr.left_.assign(nodes.size(), CVec::Zero(n));
  tr.right_.assign(nodes.size(), CVec::Zero(n));
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double mid = 0.5 * (nodes[k] + nodes[k + 1]);
    Trajectory::Cell cell;
    cell.a = sys.density_matrix(mid, z);
    cell.rate = cell_rate(cell.a);
    for (const auto& f : sys.forcing()) {
      const cplx d = f.measure.density_at(mid);
      if (d == cplx(0.0) || f.weight.is_zero()) continue;
      CVec dens = CVec::Zero(n);
      dens(f.component) = d;
      cell.forcing.emplace_back(dens, f.weight);
    }
    tr.cells_.push_back(std::move(cell));
  }

  const auto kc = static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), c) - nodes.begin());
  tr.origin_ = kc;
  {
    const JumpFactor jf = jump_factor(sys, z, c);
    const CVec f = sys.atom_forcing(c);
    if (kind == InitialKind::AtX) {
      tr.left_[kc] = yc;
      tr.right_[kc] = jf.matrix * yc + f;
    } else {
      tr.right_[kc] = yc;
      if (jf.singular) throw SingularJump(c);
      tr.left_[kc] = jf.matrix.partialPivLu().solve(yc - f);
    }
  }
  for (std::size_t k = kc; k + 1 < nodes.size(); ++k) {
    tr.left_[k + 1] = tr.propagate(k, tr.right_[k], nodes[k + 1]);
    const JumpFactor jf = jump_factor(sys, z, nodes[k + 1]);
    tr.right_[k + 1] = jf.matrix * tr.left_[k + 1] + sys.atom_forcing(nodes[k + 1]);
  }
  for (std::size_t k = kc; k-- > 0;) {
    const double h = nodes[k + 1] - nodes[k];
    tr.right_[k] = expm(tr.cells_[k].a, -h) * (tr.left_[k + 1] - tr.convolution(k, nodes[k + 1]));
    const JumpFactor jf = jump_factor(sys, z, nodes[k]);
    if (jf.singular) throw SingularJump(nodes[k]);
    tr.left_[k] = jf.matrix.partialPivLu().solve(tr.right_[k] - sys.atom_forcing(nodes[k]));
  }
  return tr;
}

}  // namespace msl
