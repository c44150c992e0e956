#include <doctest.h>

#include "support.hpp"

#include <unsupported/Eigen/MatrixFunctions>

using namespace msl;
using namespace msl::test;

namespace {

CVec vec(std::initializer_list<cplx> v) {
  CVec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (cplx x : v) out(k++) = x;
  return out;
}

MeasureSystem scalar(const Measure& m) { return MeasureSystem(1, m.abs(), {m}, {Measure(m.a(), m.b())}); }

// Random 2x2 system with atoms and cells on (-1, 1).
MeasureSystem random_system(Rng& rng, bool real) {
  std::vector<Measure> m1, m2;
  const auto atoms = random_points(rng, 3, -1.0, 1.0);
  for (int k = 0; k < 8; ++k) {
    std::vector<Atom> at;
    for (double x : atoms) {
      if (rng.coin()) at.push_back({x, real ? cplx(rng.uniform(-0.5, 0.5)) : rng.complex(0.5)});
    }
    std::vector<DensityCell> cells;
    for (auto c : random_cells(rng, -1.0, 1.0, 3, -1.5, 1.5)) {
      cells.push_back({c.x0, c.x1, real ? c.value : cplx(c.value.real(), rng.uniform(-1.0, 1.0))});
    }
    (k < 4 ? m1 : m2).push_back(Measure(-1.0, 1.0, at, cells));
  }
  return MeasureSystem::with_variation_omega(2, m1, m2);
}

}  // namespace

TEST_CASE("jump_factor") {
  SUBCASE("no atom gives the identity") {
    const auto sys = scalar(Measure::lebesgue(-1.0, 1.0));
    const JumpFactor j = jump_factor(sys, 0.3, 0.2);
    CHECK(j.matrix(0, 0) == cplx(1.0));
    CHECK_FALSE(j.singular);
  }
  SUBCASE("counterexample atom is singular") {
    const auto sys = scalar(Measure(-2.0, 2.0, {{-1.0, -1.0}, {1.0, -1.0}}, {}));
    const JumpFactor j = jump_factor(sys, 0.0, 1.0);
    CHECK(std::abs(j.matrix(0, 0)) < 1e-15);
    CHECK(j.singular);
  }
  SUBCASE("SL system at a varrho atom") {
    const double w = 0.7, c = 0.4;
    const cplx z(1.5, -0.5);
    const auto sys = sl_system(Measure(-1.0, 1.0, {{0.0, w}}, {{-1.0, 1.0, 1.0}}), Measure::lebesgue(-1.0, 1.0),
                               Measure(-1.0, 1.0, {{0.0, c}}, {}));
    const JumpFactor j = jump_factor(sys, z, 0.0);
    CHECK(std::abs(j.matrix(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(j.matrix(0, 1)) < 1e-15);
    CHECK(std::abs(j.matrix(1, 0) - (c - z * w)) < 1e-15);
    CHECK(std::abs(j.matrix(1, 1) - 1.0) < 1e-15);
    // Direct integral-equation step: Y(0+) = Y(0) + [[0,0],[c - z w, 0]] Y(0).
    const Trajectory tr = solve_ivp(sys, z, -0.5, vec({1.0, 2.0}), {0.5});
    const CVec left = tr.value(0.0), right = tr.value_plus(0.0);
    CHECK(std::abs(right(0) - left(0)) < 1e-14);
    CHECK(std::abs(right(1) - left(1) - (c - z * w) * left(0)) < 1e-13);
  }
}

TEST_CASE("solve_ivp examples") {
  SUBCASE("zero data stays zero") {
    Rng rng(3);
    const Trajectory tr = solve_ivp(random_system(rng, false), 2.0, 0.0, vec({0.0, 0.0}), {-0.9, 0.9});
    for (double x : {-0.9, -0.3, 0.2, 0.9}) CHECK(tr.value(x).norm() == 0.0);
  }
  SUBCASE("single forced jump") {
    const auto sys = scalar(Measure::dirac(-2.0, 2.0, 0.0));
    const Trajectory tr = solve_ivp(sys, 0.0, -1.0, vec({1.0}), {1.0});
    CHECK(tr.value(-0.5)(0) == cplx(1.0));
    CHECK(tr.value(0.0)(0) == cplx(1.0));
    CHECK(tr.value_plus(0.0)(0) == cplx(2.0));
    CHECK(tr.value(0.5)(0) == cplx(2.0));
  }
  SUBCASE("exponential from a right limit") {
    const auto sys = scalar(Measure(-1.0, 2.0, {}, {{0.0, 1.0, 1.0}}));
    const Trajectory tr = solve_ivp(sys, 0.0, 0.0, vec({1.0}), {1.0}, InitialKind::AtXPlus);
    CHECK(std::abs(tr.value(1.0)(0) - std::exp(1.0)) < 1e-12);
  }
  SUBCASE("backward solve through a singular atom") {
    const auto sys = scalar(Measure(-2.0, 2.0, {{-1.0, -1.0}, {1.0, -1.0}}, {}));
    CHECK_NOTHROW(solve_ivp(sys, 0.0, -1.5, vec({1.0}), {1.5}));
    try {
      solve_ivp(sys, 0.0, 1.5, vec({1.0}), {-1.5});
      FAIL("expected SingularJump");
    } catch (const SingularJump& e) {
      CHECK(e.position == 1.0);
    }
  }
  SUBCASE("backward jump inverts the forward rule with forcing") {
    const Measure atom(-1.0, 1.0, {{0.0, 0.5}}, {});
    const auto base = scalar(atom);
    const auto sys = base.with_forcing({{0, atom, PiecewiseFunction::constant(3.0)}});
    const Trajectory tr = solve_ivp(sys, 0.0, 0.5, vec({4.0}), {-0.5});
    // Forward rule: Y(0+) = Y(0) + 0.5 (Y(0) + 3).
    const cplx y0 = tr.value(0.0)(0);
    CHECK(std::abs(y0 + 0.5 * (y0 + 3.0) - 4.0) < 1e-14);
  }
}

TEST_CASE("check_uniqueness") {
  const Measure leb = Measure::lebesgue(-1.0, 1.0);
  const auto sys = sl_system(leb, Measure(-1.0, 1.0, {{0.0, 1.0}}, {{-1.0, 1.0, 1.0}}),
                             Measure(-1.0, 1.0, {{0.0, 1.0}}, {}));
  CHECK(check_uniqueness(sys, 0.0, -0.5, 0.5) == std::vector<double>{0.0});
  CHECK(check_uniqueness(sl_system(leb, leb, Measure(-1.0, 1.0)), 1.0, -0.5, 0.5).empty());
  const TauExpression jac = from_jacobi({1.0, 2.0, 0.5, 1.5}, {0.3, -1.0, 2.0});
  for (cplx z : {cplx(0.0), cplx(3.0, 1.0), cplx(-7.0)}) {
    CHECK(check_uniqueness(jac.system(), z, 0.6, 3.4).empty());
  }
}

TEST_CASE("expm closed form against Eigen") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    CMat a(2, 2);
    a << rng.complex(3.0), rng.complex(3.0), rng.complex(3.0), rng.complex(3.0);
    if (trial % 10 == 0) {
      // Nilpotent part plus shift: zero discriminant.
      const cplx s = rng.complex(1.0), n = rng.complex(2.0);
      a << s, n, 0.0, s;
    }
    const double t = rng.uniform(-1.0, 1.0);
    const Eigen::Matrix2cd ref = (a * t).eval().exp();
    CHECK((expm(a, t) - ref).norm() <= 1e-12 * std::max(1.0, ref.norm()));
  }
  CMat a3 = CMat::Random(3, 3);
  CHECK((expm(a3, 0.7) - Eigen::MatrixXcd(a3 * 0.7).exp()).norm() < 1e-12);
}

TEST_CASE("property: Gronwall bound") {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sys = random_system(rng, false);
    const cplx z = rng.complex(2.0);
    const CVec y0 = vec({rng.complex(1.0), rng.complex(1.0)});
    const double c = rng.uniform(-0.9, 0.0);
    const Trajectory tr = solve_ivp(sys, z, c, y0, {0.95});
    const double k = y0.cwiseAbs().maxCoeff();
    for (double x = c; x <= 0.95; x += 0.05) {
      const double bound = k * std::exp(integrated_norm(sys, z, c, x));
      CHECK(tr.value(x).cwiseAbs().maxCoeff() <= bound * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("property: forward then backward recovers the data") {
  Rng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sys = random_system(rng, false);
    const cplx z = rng.complex(2.0);
    const double c = rng.uniform(-0.9, 0.9), x = rng.uniform(-0.9, 0.9);
    if (!check_uniqueness(sys, z, -0.99, 0.99).empty()) continue;
    const CVec y0 = vec({rng.complex(1.0), rng.complex(1.0)});
    const CVec yx = solve_ivp(sys, z, c, y0, {x}).value(x);
    const CVec back = solve_ivp(sys, z, x, yx, {c}).value(c);
    CHECK((back - y0).norm() <= 1e-10 * y0.norm());
  }
}

TEST_CASE("property: endpoint limits are Cauchy") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const auto sys = random_system(rng, false);
    const CVec y0 = vec({1.0, -1.0});
    std::vector<double> xs;
    for (int k = 1; k <= 30; ++k) xs.push_back(1.0 - std::ldexp(1.0, -k));
    const Trajectory tr = solve_ivp(sys, 0.5, 0.0, y0, xs);
    double prev = INFINITY;
    for (std::size_t k = 20; k + 1 < xs.size(); ++k) {
      const double d = (tr.value(xs[k + 1]) - tr.value(xs[k])).norm();
      CHECK(d <= prev * 0.75 + 1e-15);
      prev = d;
    }
  }
}

TEST_CASE("property: analytic in z (Cauchy mean)") {
  Rng rng(24);
  for (int trial = 0; trial < 10; ++trial) {
    const auto sys = random_system(rng, false);
    const cplx z0 = rng.complex(2.0);
    const CVec y0 = vec({1.0, 0.5});
    const double x = rng.uniform(-0.9, 0.9);
    const CVec centre = solve_ivp(sys, z0, 0.0, y0, {x}).value(x);
    CVec mean = CVec::Zero(2);
    const int n = 64;
    for (int k = 0; k < n; ++k) {
      const cplx z = z0 + 0.5 * std::polar(1.0, 2.0 * kPi * k / n);
      mean += solve_ivp(sys, z, 0.0, y0, {x}).value(x) / double(n);
    }
    CHECK((mean - centre).norm() <= 1e-8 * std::max(1.0, centre.norm()));
  }
}

TEST_CASE("property: real data stays real") {
  Rng rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sys = random_system(rng, true);
    const Trajectory tr = solve_ivp(sys, rng.uniform(-3.0, 3.0), 0.1, vec({1.0, -2.0}), {-0.95, 0.95});
    for (double x = -0.95; x <= 0.95; x += 0.1) CHECK(tr.value(x).imag().cwiseAbs().maxCoeff() <= 1e-14);
  }
}
