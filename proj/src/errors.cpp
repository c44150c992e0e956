#include "msl/common.hpp"

#include <sstream>

namespace msl {

namespace {
std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string fmt_cplx(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}
}  // namespace

PositionOutsideInterval::PositionOutsideInterval(double x, double a, double b)
    : ValidationError("position " + fmt_double(x) + " outside interval (" + fmt_double(a) + ", " +
                      fmt_double(b) + ")"),
      position(x) {}

const char* HypothesisViolation::clause_name(Clause c) {
  switch (c) {
    case Clause::IntervalMismatch:
      return "coefficient measures share one interval";
    case Clause::RhoNotPositive:
      return "varrho is a positive measure";
    case Clause::ChiNotReal:
      return "chi is a real measure";
    case Clause::SigmaNotReal:
      return "varsigma is a real measure";
    case Clause::SigmaSupport:
      return "varsigma is supported on the whole interval";
    case Clause::SharedAtom:
      return "varsigma has no point masses in common with varrho or chi";
    case Clause::GapSign:
      return "on each gap of supp(varrho), varsigma and chi are of one and the same sign";
    case Clause::SupportTooSmall:
      return "supp(varrho) contains more than one point";
  }
  return "unknown clause";
}

HypothesisViolation::HypothesisViolation(Clause c, const std::string& detail)
    : ValidationError(std::string("hypothesis violated: ") + clause_name(c) +
                      (detail.empty() ? "" : " (" + detail + ")")),
      clause(c) {}

SingularJump::SingularJump(double x)
    : NumericalError("singular jump factor at x = " + fmt_double(x)), position(x) {}

ZAtEigenvalue::ZAtEigenvalue(cplx zz)
    : NumericalError("z = " + fmt_cplx(zz) + " is (numerically) an eigenvalue"), z(zz) {}

ZOnSpectrum::ZOnSpectrum(cplx zz)
    : NumericalError("z = " + fmt_cplx(zz) + " lies on the spectrum"), z(zz) {}

BracketTooCoarse::BracketTooCoarse(double l, double h)
    : NumericalError("scan step could not separate zeros in [" + fmt_double(l) + ", " + fmt_double(h) +
                     "]"),
      lo(l),
      hi(h) {}

}  // namespace msl
