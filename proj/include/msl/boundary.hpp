#pragma once

#include "msl/sturm_liouville.hpp"

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace msl {

enum class EndpointTag { Regular, LimitCircle, LimitPoint };

const char* to_string(EndpointTag t);

struct EndpointClass {
  EndpointTag tag;
  std::string evidence;
  // L2(varrho) norms of a z=0 fundamental system on the probe windows.
  std::vector<double> norms;
  bool heuristic = false;
};

// probe: window ends approaching the endpoint (only used for infinite
// endpoints carrying varrho-mass); empty selects three decades.
EndpointClass classify_endpoint(const TauExpression& tau, Side which, std::vector<double> probe = {});

enum class FunctionalBasis { Auto, PointEvaluation, LeftLimitAtSupport };

struct SeparateBC {
  double phi_a = 0.0;
  double phi_b = 0.0;
};

struct CoupledBC {
  double phi = 0.0;
  Eigen::Matrix2d r = Eigen::Matrix2d::Identity();
};

struct BoundaryConditionSpec {
  std::variant<SeparateBC, CoupledBC> kind;
  FunctionalBasis basis_a = FunctionalBasis::Auto;
  FunctionalBasis basis_b = FunctionalBasis::Auto;

  bool separate() const { return std::holds_alternative<SeparateBC>(kind); }
};

// BC^1(f) = W(f, w2), BC^2(f) = W(w1, f) at the functional's point; both
// bases reduce to reading (f, f^[1]) there.
class BoundaryFunctionals {
 public:
  BoundaryFunctionals() = default;
  BoundaryFunctionals(Side side, FunctionalBasis basis, double point);

  Side side() const { return side_; }
  FunctionalBasis basis() const { return basis_; }
  double point() const { return point_; }
  // Right limits are read at beta+ for the left-limit basis at b.
  LimitKind limit_kind() const;

  cplx bc1(const QuasiSolution& f) const;
  cplx bc2(const QuasiSolution& f) const;
  // BC^1 cos(phi) - BC^2 sin(phi).
  cplx condition(const QuasiSolution& f, double phi) const;

 private:
  Side side_ = Side::A;
  FunctionalBasis basis_ = FunctionalBasis::PointEvaluation;
  double point_ = 0.0;
};

BoundaryFunctionals boundary_functionals(const TauExpression& tau, Side which,
                                         FunctionalBasis basis = FunctionalBasis::Auto);

struct MulReport {
  int dimension = 0;
  std::string description;
  // Each basis vector as coefficients of (1_{alpha}, 1_{beta}).
  std::vector<std::array<cplx, 2>> basis;
};

struct SelfAdjointProblem {
  TauExpression tau;
  BoundaryConditionSpec bc;
  MulReport mul;
  EndpointClass class_a;
  EndpointClass class_b;
  // Absent at limit-point endpoints.
  std::optional<BoundaryFunctionals> fa;
  std::optional<BoundaryFunctionals> fb;
};

SelfAdjointProblem build_problem(const TauExpression& tau, const BoundaryConditionSpec& bc);

// Functions f with f = 0 on supp(varrho) whose tau f spans mul(S).
std::vector<QuasiSolution> mul_basis_functions(const SelfAdjointProblem& problem);

struct OneDimVerdict {
  bool self_adjoint = false;
  bool op = false;
  std::optional<double> tau_scalar;
};

OneDimVerdict onedim_classify(const TauExpression& tau, const BoundaryConditionSpec& bc);

// w1, w2 at z = 0 normalized at the functional point, read at alpha- (side A)
// or beta+ (side B): {w1, w1^[1], w2, w2^[1]}.
std::array<double, 4> reference_values(const TauExpression& tau, const BoundaryFunctionals& fun);

// The displayed conjugation of R by the reference values at both support edges.
Eigen::Matrix2d conjugated_r(const TauExpression& tau, const BoundaryFunctionals& fa, const BoundaryFunctionals& fb,
                             const Eigen::Matrix2d& r);

}  // namespace msl
