#include "msl/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace msl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_in_closure(double x, double a, double b) {
  if (std::isnan(x) || x < a || x > b || std::isinf(x)) throw PositionOutsideInterval(x, a, b);
}

std::vector<double> merge_sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

Measure::Measure(double a, double b) : a_(a), b_(b) {
  if (!(a < b)) throw ValidationError("measure interval requires a < b");
}

Measure::Measure(double a, double b, std::vector<Atom> atoms, std::vector<DensityCell> cells)
    : Measure(a, b) {
  for (const auto& at : atoms) {
    if (!std::isfinite(at.x) || !(at.x > a) || !(at.x < b)) throw PositionOutsideInterval(at.x, a, b);
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) { return l.x < r.x; });
  for (const auto& at : atoms) {
    if (!atoms_.empty() && atoms_.back().x == at.x) {
      atoms_.back().weight += at.weight;
    } else {
      atoms_.push_back(at);
    }
  }
  std::erase_if(atoms_, [](const Atom& at) { return at.weight == cplx(0.0); });

  std::vector<double> ends;
  for (const auto& c : cells) {
    if (!(c.x0 < c.x1) || c.x0 < a || c.x1 > b || std::isnan(c.x0) || std::isnan(c.x1)) {
      throw ValidationError("density cell [" + std::to_string(c.x0) + ", " + std::to_string(c.x1) +
                            "] is empty or leaves the interval");
    }
    if (c.value == cplx(0.0)) continue;
    ends.push_back(c.x0);
    ends.push_back(c.x1);
  }
  ends = merge_sorted(std::move(ends));
  for (std::size_t k = 0; k + 1 < ends.size(); ++k) {
    const double lo = ends[k];
    const double hi = ends[k + 1];
    cplx sum = 0.0;
    for (const auto& c : cells) {
      if (c.x0 <= lo && c.x1 >= hi) sum += c.value;
    }
    if (sum == cplx(0.0)) continue;
    if (!cells_.empty() && cells_.back().x1 == lo && cells_.back().value == sum) {
      cells_.back().x1 = hi;
    } else {
      cells_.push_back({lo, hi, sum});
    }
  }
}

Measure Measure::lebesgue(double a, double b, cplx value) {
  return Measure(a, b, {}, {{a, b, value}});
}

Measure Measure::dirac(double a, double b, double x, cplx weight) {
  return Measure(a, b, {{x, weight}}, {});
}

cplx Measure::atom_mass(double x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& at, double v) { return at.x < v; });
  if (it != atoms_.end() && it->x == x) return it->weight;
  return 0.0;
}

cplx Measure::density_at(double x) const {
  auto it = std::upper_bound(cells_.begin(), cells_.end(), x,
                             [](double v, const DensityCell& c) { return v < c.x0; });
  if (it == cells_.begin()) return 0.0;
  --it;
  if (x >= it->x0 && x < it->x1) return it->value;
  return 0.0;
}

std::vector<double> Measure::features() const {
  std::vector<double> out;
  for (const auto& at : atoms_) out.push_back(at.x);
  for (const auto& c : cells_) {
    if (std::isfinite(c.x0)) out.push_back(c.x0);
    if (std::isfinite(c.x1)) out.push_back(c.x1);
  }
  return merge_sorted(std::move(out));
}

bool Measure::is_real(double tol) const {
  for (const auto& at : atoms_) {
    if (std::abs(at.weight.imag()) > tol * std::abs(at.weight)) return false;
  }
  for (const auto& c : cells_) {
    if (std::abs(c.value.imag()) > tol * std::abs(c.value)) return false;
  }
  return true;
}

bool Measure::is_nonnegative() const {
  if (!is_real()) return false;
  for (const auto& at : atoms_) {
    if (at.weight.real() < 0.0) return false;
  }
  for (const auto& c : cells_) {
    if (c.value.real() < 0.0) return false;
  }
  return true;
}

Measure Measure::operator+(const Measure& other) const {
  if (a_ != other.a_ || b_ != other.b_) throw ValidationError("adding measures on different intervals");
  std::vector<Atom> atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  std::vector<DensityCell> cells = cells_;
  cells.insert(cells.end(), other.cells_.begin(), other.cells_.end());
  return Measure(a_, b_, std::move(atoms), std::move(cells));
}

Measure Measure::operator*(cplx s) const {
  std::vector<Atom> atoms = atoms_;
  for (auto& at : atoms) at.weight *= s;
  std::vector<DensityCell> cells = cells_;
  for (auto& c : cells) c.value *= s;
  return Measure(a_, b_, std::move(atoms), std::move(cells));
}

Measure Measure::abs() const {
  std::vector<Atom> atoms = atoms_;
  for (auto& at : atoms) at.weight = std::abs(at.weight);
  std::vector<DensityCell> cells = cells_;
  for (auto& c : cells) c.value = std::abs(c.value);
  return Measure(a_, b_, std::move(atoms), std::move(cells));
}

Measure Measure::restricted(double lo, double hi) const {
  std::vector<Atom> atoms;
  for (const auto& at : atoms_) {
    if (at.x >= lo && at.x < hi) atoms.push_back(at);
  }
  std::vector<DensityCell> cells;
  for (const auto& c : cells_) {
    const double s = std::max(c.x0, lo);
    const double t = std::min(c.x1, hi);
    if (s < t) cells.push_back({s, t, c.value});
  }
  return Measure(a_, b_, std::move(atoms), std::move(cells));
}

// ---------------------------------------------------------------------------
// Piecewise functions

namespace {

struct ConstantImpl final : PiecewiseFunction::Impl {
  explicit ConstantImpl(cplx v) : c(v) {}
  cplx value(double) const override { return c; }
  cplx value_plus(double) const override { return c; }
  cplx derivative(double) const override { return 0.0; }
  std::vector<double> breakpoints() const override { return {}; }
  double rate(double, double) const override { return 0.0; }
  cplx c;
};

struct PolyImpl final : PiecewiseFunction::Impl {
  PolyImpl(std::vector<double> b, std::vector<std::vector<cplx>> c) : breaks(std::move(b)), coeffs(std::move(c)) {}

  double origin(std::size_t k) const {
    if (breaks.empty()) return 0.0;
    return k == 0 ? breaks[0] : breaks[k - 1];
  }
  cplx eval(std::size_t k, double x) const {
    const double t = x - origin(k);
    cplx acc = 0.0;
    for (auto it = coeffs[k].rbegin(); it != coeffs[k].rend(); ++it) acc = acc * t + *it;
    return acc;
  }
  cplx value(double x) const override {
    const auto k = static_cast<std::size_t>(std::lower_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
    return eval(k, x);
  }
  cplx value_plus(double x) const override {
    const auto k = static_cast<std::size_t>(std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
    return eval(k, x);
  }
  cplx derivative(double x) const override {
    const auto k = static_cast<std::size_t>(std::lower_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
    const double t = x - origin(k);
    cplx acc = 0.0;
    const auto& c = coeffs[k];
    for (std::size_t j = c.size(); j-- > 1;) acc = acc * t + static_cast<double>(j) * c[j];
    return acc;
  }
  std::vector<double> breakpoints() const override { return breaks; }
  double rate(double, double) const override { return 0.0; }

  std::vector<double> breaks;
  std::vector<std::vector<cplx>> coeffs;
};

struct PointOverrideImpl final : PiecewiseFunction::Impl {
  PointOverrideImpl(PiecewiseFunction b, std::vector<std::pair<double, cplx>> p) : base(std::move(b)), pts(std::move(p)) {}
  cplx value(double x) const override {
    auto it = std::lower_bound(pts.begin(), pts.end(), x,
                               [](const std::pair<double, cplx>& e, double v) { return e.first < v; });
    if (it != pts.end() && it->first == x) return it->second;
    return base.value(x);
  }
  cplx value_plus(double x) const override { return base.value_plus(x); }
  cplx derivative(double x) const override { return base.derivative(x); }
  std::vector<double> breakpoints() const override {
    auto b = base.breakpoints();
    for (const auto& p : pts) b.push_back(p.first);
    return merge_sorted(std::move(b));
  }
  double rate(double lo, double hi) const override { return base.rate(lo, hi); }
  PiecewiseFunction base;
  std::vector<std::pair<double, cplx>> pts;
};

struct LinearImpl final : PiecewiseFunction::Impl {
  std::vector<std::pair<cplx, PiecewiseFunction>> terms;
  cplx value(double x) const override {
    cplx s = 0.0;
    for (const auto& [c, f] : terms) s += c * f.value(x);
    return s;
  }
  cplx value_plus(double x) const override {
    cplx s = 0.0;
    for (const auto& [c, f] : terms) s += c * f.value_plus(x);
    return s;
  }
  cplx derivative(double x) const override {
    cplx s = 0.0;
    for (const auto& [c, f] : terms) s += c * f.derivative(x);
    return s;
  }
  std::vector<double> breakpoints() const override {
    std::vector<double> b;
    for (const auto& t : terms) {
      auto tb = t.second.breakpoints();
      b.insert(b.end(), tb.begin(), tb.end());
    }
    return merge_sorted(std::move(b));
  }
  double rate(double lo, double hi) const override {
    double r = 0.0;
    for (const auto& t : terms) r = std::max(r, t.second.rate(lo, hi));
    return r;
  }
};

struct ProductImpl final : PiecewiseFunction::Impl {
  ProductImpl(PiecewiseFunction l, PiecewiseFunction r) : lhs(std::move(l)), rhs(std::move(r)) {}
  cplx value(double x) const override { return lhs.value(x) * rhs.value(x); }
  cplx value_plus(double x) const override { return lhs.value_plus(x) * rhs.value_plus(x); }
  cplx derivative(double x) const override {
    return lhs.derivative(x) * rhs.value(x) + lhs.value(x) * rhs.derivative(x);
  }
  std::vector<double> breakpoints() const override {
    auto b = lhs.breakpoints();
    auto c = rhs.breakpoints();
    b.insert(b.end(), c.begin(), c.end());
    return merge_sorted(std::move(b));
  }
  double rate(double lo, double hi) const override { return lhs.rate(lo, hi) + rhs.rate(lo, hi); }
  PiecewiseFunction lhs, rhs;
};

struct ConjImpl final : PiecewiseFunction::Impl {
  explicit ConjImpl(PiecewiseFunction b) : base(std::move(b)) {}
  cplx value(double x) const override { return std::conj(base.value(x)); }
  cplx value_plus(double x) const override { return std::conj(base.value_plus(x)); }
  cplx derivative(double x) const override { return std::conj(base.derivative(x)); }
  std::vector<double> breakpoints() const override { return base.breakpoints(); }
  double rate(double lo, double hi) const override { return base.rate(lo, hi); }
  PiecewiseFunction base;
};

}  // namespace

PiecewiseFunction::PiecewiseFunction() : impl_(std::make_shared<ConstantImpl>(0.0)) {}

PiecewiseFunction PiecewiseFunction::constant(cplx c) {
  return PiecewiseFunction(std::make_shared<ConstantImpl>(c));
}

PiecewiseFunction PiecewiseFunction::steps(std::vector<double> breaks, std::vector<cplx> values) {
  if (values.size() != breaks.size() + 1) throw ValidationError("steps: need one value per cell");
  if (!std::is_sorted(breaks.begin(), breaks.end()) ||
      std::adjacent_find(breaks.begin(), breaks.end()) != breaks.end()) {
    throw ValidationError("steps: breakpoints must be strictly increasing");
  }
  std::vector<std::vector<cplx>> coeffs;
  coeffs.reserve(values.size());
  for (cplx v : values) coeffs.push_back({v});
  return PiecewiseFunction(std::make_shared<PolyImpl>(std::move(breaks), std::move(coeffs)));
}

PiecewiseFunction PiecewiseFunction::polynomial(std::vector<double> breaks, std::vector<std::vector<cplx>> coeffs) {
  if (coeffs.size() != breaks.size() + 1) throw ValidationError("polynomial: need one coefficient list per cell");
  if (!std::is_sorted(breaks.begin(), breaks.end()) ||
      std::adjacent_find(breaks.begin(), breaks.end()) != breaks.end()) {
    throw ValidationError("polynomial: breakpoints must be strictly increasing");
  }
  return PiecewiseFunction(std::make_shared<PolyImpl>(std::move(breaks), std::move(coeffs)));
}

PiecewiseFunction PiecewiseFunction::distribution(const Measure& mu, double c, cplx value_at_c) {
  auto breaks = mu.features();
  if (breaks.empty()) return constant(value_at_c);
  const auto one = constant(1.0);
  auto dist = [&](double x) { return value_at_c + integrate(one, mu, c, x); };
  std::vector<std::vector<cplx>> coeffs;
  // Cell left of the first break uses breaks[0] as its origin; only a cell
  // reaching -inf can carry density there.
  coeffs.push_back({dist(breaks[0]), mu.density_at(breaks[0] - 1.0)});
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    const double x = breaks[k];
    const cplx right = dist(x) + mu.atom_mass(x);
    cplx slope = 0.0;
    if (k + 1 < breaks.size()) {
      slope = mu.density_at(0.5 * (x + breaks[k + 1]));
    } else {
      slope = mu.density_at(x);
    }
    coeffs.push_back({right, slope});
  }
  return polynomial(std::move(breaks), std::move(coeffs));
}

PiecewiseFunction PiecewiseFunction::with_point_values(std::vector<std::pair<double, cplx>> points) const {
  std::sort(points.begin(), points.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  return PiecewiseFunction(std::make_shared<PointOverrideImpl>(*this, std::move(points)));
}

PiecewiseFunction PiecewiseFunction::operator+(const PiecewiseFunction& o) const {
  auto impl = std::make_shared<LinearImpl>();
  impl->terms = {{1.0, *this}, {1.0, o}};
  return PiecewiseFunction(std::move(impl));
}

PiecewiseFunction PiecewiseFunction::operator-(const PiecewiseFunction& o) const {
  auto impl = std::make_shared<LinearImpl>();
  impl->terms = {{1.0, *this}, {-1.0, o}};
  return PiecewiseFunction(std::move(impl));
}

PiecewiseFunction PiecewiseFunction::operator*(const PiecewiseFunction& o) const {
  return PiecewiseFunction(std::make_shared<ProductImpl>(*this, o));
}

PiecewiseFunction PiecewiseFunction::operator*(cplx s) const {
  auto impl = std::make_shared<LinearImpl>();
  impl->terms = {{s, *this}};
  return PiecewiseFunction(std::move(impl));
}

PiecewiseFunction PiecewiseFunction::conj() const {
  return PiecewiseFunction(std::make_shared<ConjImpl>(*this));
}

bool PiecewiseFunction::is_zero() const {
  const auto* c = dynamic_cast<const ConstantImpl*>(impl_.get());
  return c != nullptr && c->c == cplx(0.0);
}

// ---------------------------------------------------------------------------

cplx integrate(const PiecewiseFunction& f, const Measure& mu, double c, double x) {
  check_in_closure(c, mu.a(), mu.b());
  check_in_closure(x, mu.a(), mu.b());
  if (x == c) return 0.0;
  if (x < c) return -integrate(f, mu, x, c);

  cplx sum = 0.0;
  const auto& atoms = mu.atoms();
  auto it = std::lower_bound(atoms.begin(), atoms.end(), c, [](const Atom& at, double v) { return at.x < v; });
  for (; it != atoms.end() && it->x < x; ++it) sum += it->weight * f.value(it->x);

  if (mu.cells().empty() || f.is_zero()) return sum;
  const auto fb = f.breakpoints();
  for (const auto& cell : mu.cells()) {
    const double s = std::max(cell.x0, c);
    const double t = std::min(cell.x1, x);
    if (!(s < t)) continue;
    double lo = s;
    auto bit = std::upper_bound(fb.begin(), fb.end(), s);
    while (lo < t) {
      const double hi = (bit != fb.end() && *bit < t) ? *bit : t;
      if (bit != fb.end() && *bit < t) ++bit;
      sum += cell.value * smooth_integral([&](double y) { return f.value(y); }, lo, hi, f.rate(lo, hi));
      lo = hi;
    }
  }
  return sum;
}

cplx atom_mass(const Measure& mu, double x) {
  if (!(x > mu.a()) || !(x < mu.b())) throw PositionOutsideInterval(x, mu.a(), mu.b());
  return mu.atom_mass(x);
}

double total_variation(const Measure& mu, double lo, double hi) {
  if (lo < mu.a() || hi > mu.b() || lo > hi) throw PositionOutsideInterval(lo < mu.a() ? lo : hi, mu.a(), mu.b());
  double tv = 0.0;
  for (const auto& at : mu.atoms()) {
    if (at.x >= lo && at.x < hi) tv += std::abs(at.weight);
  }
  for (const auto& cell : mu.cells()) {
    const double s = std::max(cell.x0, lo);
    const double t = std::min(cell.x1, hi);
    if (s < t) tv += std::abs(cell.value) * (t - s);
  }
  return tv;
}

}  // namespace msl
