#pragma once

#include "msl/msl.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace msl::test {

inline constexpr double kPi = std::numbers::pi;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin() { return integer(0, 1) == 1; }
  cplx complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }

 private:
  std::mt19937_64 gen_;
};

// Sorted distinct points in (lo, hi) with a minimal spacing.
inline std::vector<double> random_points(Rng& rng, int n, double lo, double hi, double gap = 0.05) {
  std::vector<double> pts;
  while (static_cast<int>(pts.size()) < n) {
    const double x = rng.uniform(lo + gap, hi - gap);
    bool ok = true;
    for (double p : pts) ok = ok && std::abs(p - x) > gap;
    if (ok) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

inline std::vector<DensityCell> random_cells(Rng& rng, double lo, double hi, int n, double vlo, double vhi) {
  std::vector<double> br = random_points(rng, n - 1, lo, hi);
  br.insert(br.begin(), lo);
  br.push_back(hi);
  std::vector<DensityCell> cells;
  for (int k = 0; k < n; ++k) cells.push_back({br[k], br[k + 1], rng.uniform(vlo, vhi)});
  return cells;
}

struct Triple {
  Measure rho, sigma, chi;
};

// Random coefficients satisfying the standing hypotheses on (lo, hi): varsigma
// is a positive density, chi is nonnegative off supp(varrho).
inline Triple random_triple(Rng& rng, double lo, double hi) {
  std::vector<Atom> rho_atoms, chi_atoms;
  for (double x : random_points(rng, rng.integer(2, 4), lo, hi)) {
    rho_atoms.push_back({x, rng.uniform(0.2, 2.0)});
    if (rng.coin()) chi_atoms.push_back({x, rng.uniform(-1.0, 1.0)});
  }
  std::vector<DensityCell> rho_cells;
  if (rng.coin()) {
    const double c = rng.uniform(lo, 0.5 * (lo + hi));
    rho_cells.push_back({c, c + 0.3 * (hi - lo), rng.uniform(0.5, 2.0)});
  }
  return {Measure(lo, hi, rho_atoms, rho_cells), Measure(lo, hi, {}, random_cells(rng, lo, hi, 3, 0.5, 2.0)),
          Measure(lo, hi, chi_atoms, random_cells(rng, lo, hi, 2, 0.0, 1.0))};
}

// Classical RK4 shooting for -(p u')' + q u = z r u with smooth coefficients;
// returns (u, p u') at x. Independent of the measure machinery.
struct ShootResult {
  cplx u, pu;
};

inline ShootResult rk4_shoot(const std::function<double(double)>& r, const std::function<double(double)>& p,
                             const std::function<double(double)>& q, cplx z, double x0, cplx u0, cplx pu0,
                             double x1, int steps) {
  const double h = (x1 - x0) / steps;
  auto rhs = [&](double x, cplx u, cplx v, cplx& du, cplx& dv) {
    du = v / p(x);
    dv = (q(x) - z * r(x)) * u;
  };
  cplx u = u0, v = pu0;
  for (int k = 0; k < steps; ++k) {
    const double x = x0 + k * h;
    cplx k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
    rhs(x, u, v, k1u, k1v);
    rhs(x + h / 2, u + h / 2 * k1u, v + h / 2 * k1v, k2u, k2v);
    rhs(x + h / 2, u + h / 2 * k2u, v + h / 2 * k2v, k3u, k3v);
    rhs(x + h, u + h * k3u, v + h * k3v, k4u, k4v);
    u += h / 6 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += h / 6 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
  return {u, v};
}

inline SelfAdjointProblem dirichlet_pi() {
  return build_problem(from_classical({{0.0, kPi, 1.0, 1.0, 0.0}}, 0.0, kPi), point_dirichlet_bc());
}

}  // namespace msl::test
