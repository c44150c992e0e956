#pragma once

#include "msl/common.hpp"
#include "msl/detail/quadrature.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace msl {

struct Atom {
  double x;
  cplx weight;
};

struct DensityCell {
  double x0;
  double x1;
  cplx value;
};

// Locally finite complex measure on (a,b): atoms plus a piecewise-constant
// Lebesgue density. Immutable after construction.
class Measure {
 public:
  Measure() = default;
  Measure(double a, double b);
  // Coincident atoms are merged, zero weights dropped; overlapping cells add.
  Measure(double a, double b, std::vector<Atom> atoms, std::vector<DensityCell> cells);

  static Measure lebesgue(double a, double b, cplx value = 1.0);
  static Measure dirac(double a, double b, double x, cplx weight = 1.0);

  double a() const { return a_; }
  double b() const { return b_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityCell>& cells() const { return cells_; }

  cplx atom_mass(double x) const;
  // Density on the open cell containing x; at a breakpoint, the cell to the right.
  cplx density_at(double x) const;
  // Finite atom positions and cell endpoints, sorted and unique.
  std::vector<double> features() const;

  bool empty() const { return atoms_.empty() && cells_.empty(); }
  bool is_real(double tol = 0.0) const;
  bool is_nonnegative() const;

  Measure operator+(const Measure& other) const;
  Measure operator*(cplx s) const;
  Measure abs() const;
  Measure restricted(double lo, double hi) const;  // to [lo,hi)

 private:
  double a_ = 0.0;
  double b_ = 0.0;
  std::vector<Atom> atoms_;
  std::vector<DensityCell> cells_;
};

inline Measure operator*(cplx s, const Measure& m) { return m * s; }

// Left-continuous complex function with finitely many breakpoints; between
// breakpoints it is smooth (entire in x). Immutable, cheap to copy.
class PiecewiseFunction {
 public:
  struct Impl {
    virtual ~Impl() = default;
    virtual cplx value(double x) const = 0;
    virtual cplx value_plus(double x) const = 0;
    // Derivative at a point that is not a breakpoint.
    virtual cplx derivative(double x) const = 0;
    virtual std::vector<double> breakpoints() const = 0;
    // Upper bound for |f^(k)| growth rate on [lo,hi]; sets quadrature resolution.
    virtual double rate(double lo, double hi) const = 0;
  };

  PiecewiseFunction();
  explicit PiecewiseFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  static PiecewiseFunction constant(cplx c);
  // values.size() == breaks.size() + 1; values[k] holds on (breaks[k-1], breaks[k]].
  static PiecewiseFunction steps(std::vector<double> breaks, std::vector<cplx> values);
  // Per-cell polynomial coefficients in powers of (x - left break); the first
  // cell uses breaks[0] as origin. coeffs.size() == breaks.size() + 1.
  static PiecewiseFunction polynomial(std::vector<double> breaks,
                                      std::vector<std::vector<cplx>> coeffs);
  // Distribution function x -> integral of dmu from c to x (half-open convention).
  static PiecewiseFunction distribution(const Measure& mu, double c, cplx value_at_c = 0.0);

  // Overrides f(x) at isolated points; right limits are unchanged.
  PiecewiseFunction with_point_values(std::vector<std::pair<double, cplx>> points) const;

  cplx operator()(double x) const { return impl_->value(x); }
  cplx value(double x) const { return impl_->value(x); }
  cplx value_plus(double x) const { return impl_->value_plus(x); }
  cplx derivative(double x) const { return impl_->derivative(x); }
  std::vector<double> breakpoints() const { return impl_->breakpoints(); }
  double rate(double lo, double hi) const { return impl_->rate(lo, hi); }

  PiecewiseFunction operator+(const PiecewiseFunction& o) const;
  PiecewiseFunction operator-(const PiecewiseFunction& o) const;
  PiecewiseFunction operator*(const PiecewiseFunction& o) const;
  PiecewiseFunction operator*(cplx s) const;
  PiecewiseFunction conj() const;

  bool is_zero() const;

 private:
  std::shared_ptr<const Impl> impl_;
};

inline PiecewiseFunction operator*(cplx s, const PiecewiseFunction& f) { return f * s; }

// Integral of f over [c,x) for x > c, 0 for x == c, minus the integral over
// [x,c) for x < c.
cplx integrate(const PiecewiseFunction& f, const Measure& mu, double c, double x);

cplx atom_mass(const Measure& mu, double x);

// |mu| of [lo,hi).
double total_variation(const Measure& mu, double lo, double hi);

}  // namespace msl

