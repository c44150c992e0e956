#include <doctest.h>

#include "support.hpp"

using namespace msl;
using namespace msl::test;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

BoundaryConditionSpec left_limit(double phi_a, double phi_b) {
  return {SeparateBC{phi_a, phi_b}, FunctionalBasis::LeftLimitAtSupport, FunctionalBasis::LeftLimitAtSupport};
}

BoundaryConditionSpec coupled_left_limit(double phi, Eigen::Matrix2d r) {
  return {CoupledBC{phi, r}, FunctionalBasis::LeftLimitAtSupport, FunctionalBasis::LeftLimitAtSupport};
}

TauExpression one_point(double rho0, double chi0) {
  TauOptions o;
  o.one_point = true;
  return build_tau(Measure::dirac(-1.0, 1.0, 0.0, rho0), Measure::lebesgue(-1.0, 1.0),
                   Measure::dirac(-1.0, 1.0, 0.0, chi0), o);
}

// Atoms of varrho at 1 and 2 inside (0, 3).
TauExpression two_atoms() {
  return build_tau(Measure(0.0, 3.0, {{1.0, 1.0}, {2.0, 0.5}}, {}), Measure::lebesgue(0.0, 3.0),
                   Measure(0.0, 3.0, {{1.0, 0.3}}, {}));
}

}  // namespace

TEST_CASE("classify_endpoint") {
  SUBCASE("bounded interval is regular") {
    const TauExpression tau = from_classical({{0.0, 1.0, 1.0, 1.0, 0.0}}, 0.0, 1.0);
    CHECK(classify_endpoint(tau, Side::A).tag == EndpointTag::Regular);
    CHECK(classify_endpoint(tau, Side::B).tag == EndpointTag::Regular);
  }
  SUBCASE("no weight near an infinite endpoint") {
    const TauExpression tau = build_tau(Measure(-kInf, 1.0, {{0.0, 1.0}, {0.5, 1.0}}, {}),
                                        Measure(-kInf, 1.0, {}, {{-kInf, 1.0, 1.0}}), Measure(-kInf, 1.0));
    const EndpointClass c = classify_endpoint(tau, Side::A);
    CHECK(c.tag == EndpointTag::LimitCircle);
    CHECK_FALSE(c.heuristic);
  }
  SUBCASE("free half-line is limit point") {
    const TauExpression tau = build_tau(Measure(0.0, kInf, {}, {{0.0, kInf, 1.0}}),
                                        Measure(0.0, kInf, {}, {{0.0, kInf, 1.0}}), Measure(0.0, kInf));
    const EndpointClass c = classify_endpoint(tau, Side::B);
    CHECK(c.tag == EndpointTag::LimitPoint);
    CHECK(c.heuristic);
    CHECK(c.norms.size() == 3);
    CHECK(classify_endpoint(tau, Side::A).tag == EndpointTag::Regular);
  }
}

TEST_CASE("boundary_functionals") {
  SUBCASE("point evaluation at a regular endpoint") {
    const TauExpression tau = from_classical({{0.0, 1.0, 1.0, 1.0, 0.0}}, 0.0, 1.0);
    const BoundaryFunctionals fa = boundary_functionals(tau, Side::A);
    CHECK(fa.basis() == FunctionalBasis::PointEvaluation);
    const QuasiSolution u = solve_tau(tau, 2.0, 0.5, 0.3, -0.8);
    CHECK(fa.bc1(u) == u.f(0.0));
    CHECK(fa.bc2(u) == u.f1(0.0));
  }
  SUBCASE("left limits on the Jacobi support") {
    const TauExpression jac = from_jacobi({1.0, 2.0, 1.0}, {0.0, 1.0});
    const BoundaryFunctionals fa = boundary_functionals(jac, Side::A);
    CHECK(fa.basis() == FunctionalBasis::LeftLimitAtSupport);
    const QuasiSolution u = solve_tau(jac, 1.5, 1.5, 0.3, -0.8);
    CHECK(fa.bc1(u) == u.f(1.0));
    CHECK(fa.bc2(u) == u.f1(1.0));
    CHECK_THROWS_AS(boundary_functionals(from_classical({{0.0, 1.0, 1.0, 1.0, 0.0}}, 0.0, 1.0), Side::A,
                                         FunctionalBasis::LeftLimitAtSupport),
                    NoGapAtEndpoint);
  }
  SUBCASE("fundamental pair normalized at a") {
    const TauExpression tau = two_atoms();
    for (auto basis : {FunctionalBasis::PointEvaluation, FunctionalBasis::LeftLimitAtSupport}) {
      const BoundaryFunctionals fa = boundary_functionals(tau, Side::A, basis);
      const QuasiSolution u1 = solve_tau(tau, 0.7, fa.point(), 1.0, 0.0, fa.limit_kind());
      const QuasiSolution u2 = solve_tau(tau, 0.7, fa.point(), 0.0, 1.0, fa.limit_kind());
      CHECK(std::abs(fa.bc1(u1) - 1.0) + std::abs(fa.bc2(u1)) + std::abs(fa.bc1(u2)) + std::abs(fa.bc2(u2) - 1.0) <
            1e-14);
    }
  }
}

TEST_CASE("property: Wronskian equals the boundary form") {
  Rng rng(51);
  const TauExpression tau = two_atoms();
  for (int trial = 0; trial < 30; ++trial) {
    const QuasiSolution f = solve_tau(tau, rng.complex(3.0), rng.uniform(0.5, 2.5), rng.complex(1), rng.complex(1));
    const QuasiSolution g = solve_tau(tau, rng.complex(3.0), rng.uniform(0.5, 2.5), rng.complex(1), rng.complex(1));
    for (auto basis : {FunctionalBasis::PointEvaluation, FunctionalBasis::LeftLimitAtSupport}) {
      const BoundaryFunctionals fa = boundary_functionals(tau, Side::A, basis);
      const BoundaryFunctionals fb = boundary_functionals(tau, Side::B, basis);
      const cplx wa = wronskian(f, g, 0.0), wb = wronskian(f, g, 3.0);
      const double sa = 1.0 + std::abs(f.f(0.0) * g.f1(0.0)) + std::abs(f.f1(0.0) * g.f(0.0));
      const double sb = 1.0 + std::abs(f.f(3.0) * g.f1(3.0)) + std::abs(f.f1(3.0) * g.f(3.0));
      CHECK(std::abs(wa - (fa.bc1(f) * fa.bc2(g) - fa.bc2(f) * fa.bc1(g))) <= 1e-12 * sa);
      CHECK(std::abs(wb - (fb.bc1(f) * fb.bc2(g) - fb.bc2(f) * fb.bc1(g))) <= 1e-12 * sb);
    }
  }
}

TEST_CASE("property: boundary condition zero set is scale invariant") {
  Rng rng(52);
  const TauExpression tau = two_atoms();
  const BoundaryFunctionals fa = boundary_functionals(tau, Side::A);
  for (int trial = 0; trial < 20; ++trial) {
    const double phi = rng.uniform(0.0, kPi);
    const cplx s = rng.complex(3.0);
    // Data on the condition ray and off it.
    const QuasiSolution on = solve_tau(tau, 1.0, fa.point(), std::sin(phi), std::cos(phi), fa.limit_kind());
    const QuasiSolution on_s = solve_tau(tau, 1.0, fa.point(), s * std::sin(phi), s * std::cos(phi), fa.limit_kind());
    const QuasiSolution off = solve_tau(tau, 1.0, fa.point(), std::cos(phi), -std::sin(phi), fa.limit_kind());
    const QuasiSolution off_s = solve_tau(tau, 1.0, fa.point(), s * std::cos(phi), -s * std::sin(phi), fa.limit_kind());
    CHECK(std::abs(fa.condition(on, phi)) < 1e-15);
    CHECK(std::abs(fa.condition(on_s, phi)) < 1e-14);
    CHECK(std::abs(fa.condition(off, phi)) > 0.5);
    CHECK(std::abs(fa.condition(off_s, phi)) > 0.5 * std::abs(s));
  }
}

TEST_CASE("build_problem") {
  SUBCASE("Dirichlet on (0, pi)") {
    const SelfAdjointProblem p = dirichlet_pi();
    CHECK(p.mul.dimension == 0);
    CHECK(p.class_a.tag == EndpointTag::Regular);
  }
  SUBCASE("atom at the support edge with phi_a = 0") {
    const SelfAdjointProblem p = build_problem(two_atoms(), left_limit(0.0, kPi / 2));
    REQUIRE(p.mul.dimension == 1);
    CHECK(p.mul.basis[0][0] == cplx(1.0));
    CHECK(p.mul.basis[0][1] == cplx(0.0));
    CHECK(build_problem(two_atoms(), left_limit(kPi / 3, kPi / 2)).mul.dimension == 0);
    CHECK(build_problem(two_atoms(), left_limit(0.0, 0.0)).mul.dimension == 2);
  }
  SUBCASE("coupled with R12 = 1 is an operator") {
    Eigen::Matrix2d r;
    r << 1.0, 1.0, 0.0, 1.0;
    const SelfAdjointProblem p = build_problem(two_atoms(), coupled_left_limit(0.0, r));
    CHECK(p.mul.dimension == 0);
    CHECK((conjugated_r(p.tau, *p.fa, *p.fb, r) - r).norm() < 1e-14);
  }
  SUBCASE("invalid specifications") {
    Eigen::Matrix2d r;
    r << 2.0, 0.0, 0.0, 1.0;
    CHECK_THROWS_AS(build_problem(two_atoms(), coupled_left_limit(0.0, r)), InvalidBC);
    CHECK_THROWS_AS(build_problem(two_atoms(), left_limit(kPi, 0.0)), InvalidBC);
    CHECK_THROWS_AS(build_problem(two_atoms(), left_limit(-0.1, 0.0)), InvalidBC);
    const TauExpression half = build_tau(Measure(0.0, kInf, {}, {{0.0, kInf, 1.0}}),
                                         Measure(0.0, kInf, {}, {{0.0, kInf, 1.0}}), Measure(0.0, kInf));
    CHECK_THROWS_AS(build_problem(half, BoundaryConditionSpec{CoupledBC{}}), InvalidBC);
    CHECK_NOTHROW(build_problem(half, BoundaryConditionSpec{}));
  }
}

TEST_CASE("property: mul basis functions") {
  Rng rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const TauExpression tau = two_atoms();
    BoundaryConditionSpec bc;
    if (trial % 2 == 0) {
      bc = left_limit(0.0, rng.coin() ? 0.0 : rng.uniform(0.1, 3.0));
    } else {
      // R with vanishing (1,2) entry and det R = 1.
      const double d = rng.uniform(0.3, 3.0) * (rng.coin() ? 1 : -1);
      Eigen::Matrix2d r;
      r << d, 0.0, rng.uniform(-2.0, 2.0), 1.0 / d;
      bc = coupled_left_limit(rng.uniform(0.0, kPi), r);
    }
    const SelfAdjointProblem p = build_problem(tau, bc);
    REQUIRE(p.mul.dimension >= 1);
    const auto fs = mul_basis_functions(p);
    REQUIRE(fs.size() == p.mul.basis.size());
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const QuasiSolution& f = fs[k];
      for (double x : {1.0, 2.0}) CHECK(std::abs(f.f(x)) < 1e-14);
      const cplx ta = apply_tau_at(tau, f, 1.0), tb = apply_tau_at(tau, f, 2.0);
      CHECK(std::abs(ta - p.mul.basis[k][0]) < 1e-13);
      CHECK(std::abs(tb - p.mul.basis[k][1]) < 1e-13);
      // f lies in the domain of the relation: it satisfies the conditions.
      const Eigen::Vector2cd bca(p.fa->bc1(f), p.fa->bc2(f)), bcb(p.fb->bc1(f), p.fb->bc2(f));
      if (const auto* sep = std::get_if<SeparateBC>(&p.bc.kind)) {
        CHECK(std::abs(p.fa->condition(f, sep->phi_a)) < 1e-13);
        CHECK(std::abs(p.fb->condition(f, sep->phi_b)) < 1e-13);
      } else {
        const auto& cp = std::get<CoupledBC>(p.bc.kind);
        CHECK((bcb - std::polar(1.0, cp.phi) * cp.r.cast<cplx>() * bca).norm() < 1e-13);
      }
    }
  }
}

TEST_CASE("onedim_classify") {
  SUBCASE("both inequalities fail") {
    const OneDimVerdict v = onedim_classify(one_point(1.0, 0.0), left_limit(0.0, 0.0));
    CHECK_FALSE(v.self_adjoint);
    CHECK_FALSE(v.op);
    CHECK_THROWS_AS(build_problem(one_point(1.0, 0.0), left_limit(0.0, 0.0)), InvalidBC);
  }
  SUBCASE("one inequality fails: multivalued") {
    const OneDimVerdict v = onedim_classify(one_point(1.0, 0.0), left_limit(0.0, kPi / 2));
    CHECK(v.self_adjoint);
    CHECK_FALSE(v.op);
    CHECK(build_problem(one_point(1.0, 0.0), left_limit(0.0, kPi / 2)).mul.dimension == 1);
  }
  SUBCASE("equal slopes and no chi atom give zero") {
    const TauExpression tau = one_point(2.0, 0.0);
    const QuasiSolution u = solve_tau(tau, 0.0, -0.5, 1.0, 0.7);
    CHECK(std::abs(u.f1_plus(0.0) - u.f1(0.0)) < 1e-15);
    CHECK(std::abs(apply_tau_at(tau, u, 0.0)) < 1e-15);
  }
  SUBCASE("Neumann-type angles") {
    const OneDimVerdict v = onedim_classify(one_point(2.0, 0.6), left_limit(kPi / 2, kPi / 2));
    CHECK(v.op);
    REQUIRE(v.tau_scalar);
    CHECK(std::abs(*v.tau_scalar - 0.3) < 1e-15);
  }
  SUBCASE("requires one-point support") {
    CHECK_THROWS_AS(onedim_classify(two_atoms(), left_limit(0.0, 0.0)), NotOnePoint);
  }
}
