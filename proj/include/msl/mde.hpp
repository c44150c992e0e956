#pragma once

#include "msl/measure.hpp"

#include <memory>
#include <vector>

namespace msl {

// Contribution weight * d(measure) to one component of the forcing.
struct ForcingTerm {
  std::size_t component;
  Measure measure;
  PiecewiseFunction weight;
};

// dY/domega = (M1 + z M2) Y + F. Each coefficient entry is stored as the
// measure M_ij domega, so atom weights and cell densities are read directly.
class MeasureSystem {
 public:
  MeasureSystem(std::size_t n, Measure omega, std::vector<Measure> m1, std::vector<Measure> m2,
                std::vector<ForcingTerm> forcing = {});
  // omega = sum of |entries| over M1 and M2.
  static MeasureSystem with_variation_omega(std::size_t n, std::vector<Measure> m1, std::vector<Measure> m2,
                                            std::vector<ForcingTerm> forcing = {});

  std::size_t n() const { return n_; }
  double a() const { return omega_.a(); }
  double b() const { return omega_.b(); }
  const Measure& omega() const { return omega_; }
  const Measure& m1(std::size_t i, std::size_t j) const { return m1_[i * n_ + j]; }
  const Measure& m2(std::size_t i, std::size_t j) const { return m2_[i * n_ + j]; }
  const std::vector<ForcingTerm>& forcing() const { return forcing_; }

  MeasureSystem with_forcing(std::vector<ForcingTerm> forcing) const;

  // omega({x}) (M1(x) + z M2(x)).
  CMat atom_matrix(double x, cplx z) const;
  // Lebesgue density of (M1 + z M2) domega on the cell containing x.
  CMat density_matrix(double x, cplx z) const;
  // omega({x}) F(x).
  CVec atom_forcing(double x) const;
  // All finite atoms and breakpoints of coefficients and forcing.
  std::vector<double> features() const;

 private:
  std::size_t n_;
  Measure omega_;
  std::vector<Measure> m1_, m2_;
  std::vector<ForcingTerm> forcing_;
};

struct JumpFactor {
  CMat matrix;
  bool singular;
};

enum class InitialKind { AtX, AtXPlus };

// exp(A t) for constant A; closed form for n <= 2.
CMat expm(const CMat& a, double t);

// Solution of a MeasureSystem on a compact span, evaluable at every point of
// the span (left-continuous) and at right limits.
class Trajectory {
 public:
  std::size_t n() const { return n_; }
  cplx z() const { return z_; }
  double lo() const { return nodes_.front(); }
  double hi() const { return nodes_.back(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const CVec& left(std::size_t k) const { return left_[k]; }
  const CVec& right(std::size_t k) const { return right_[k]; }

  CVec value(double x) const;
  CVec value_plus(double x) const;
  // dY/dx away from nodes.
  CVec derivative(double x) const;
  double rate(double lo, double hi) const;

 private:
  friend Trajectory solve_ivp(const MeasureSystem&, cplx, double, const CVec&, std::vector<double>, InitialKind);

  struct Cell {
    CMat a;
    std::vector<std::pair<CVec, PiecewiseFunction>> forcing;
    double rate = 0.0;
  };
  CVec forcing_at(const Cell& cell, double x) const;
  CVec propagate(std::size_t k, const CVec& start, double x) const;
  CVec interior(std::size_t k, double x) const;
  CVec convolution(std::size_t k, double x) const;
  std::size_t locate(double x) const;

  std::size_t n_ = 0;
  std::size_t origin_ = 0;
  cplx z_;
  std::vector<double> nodes_;
  std::vector<CVec> left_, right_;
  std::vector<Cell> cells_;
};

JumpFactor jump_factor(const MeasureSystem& sys, cplx z, double x);

// Targets and c fix the span [min, max]; targets left of c need regular jumps.
Trajectory solve_ivp(const MeasureSystem& sys, cplx z, double c, const CVec& yc, std::vector<double> targets,
                     InitialKind kind = InitialKind::AtX);

std::vector<double> check_uniqueness(const MeasureSystem& sys, cplx z, double lo, double hi);

// Integral of ||M1 + z M2|| domega between c and x (max-row-sum norm).
double integrated_norm(const MeasureSystem& sys, cplx z, double c, double x);

}  // namespace msl
