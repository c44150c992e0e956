#include "msl/cli.hpp"

#include "msl/problem_file.hpp"
#include "msl/spectral.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace msl {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// "re" or "re,im".
cplx parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ValidationError("cannot read complex number '" + s + "'");
  }
}

class Csv {
 public:
  explicit Csv(std::ostream& os) : os_(os) {}
  void header(std::initializer_list<const char*> cols) {
    const char* sep = "";
    for (const char* c : cols) {
      os_ << sep << c;
      sep = ",";
    }
    os_ << '\n';
  }
  void row(std::initializer_list<double> vals) {
    const char* sep = "";
    for (double v : vals) {
      os_ << sep << num(v);
      sep = ",";
    }
    os_ << '\n';
  }

 private:
  std::ostream& os_;
};

SelfAdjointProblem load(const std::string& path) {
  ProblemSpec spec = load_problem(path);
  return build_problem(spec.tau, spec.bc);
}

void check(const std::string& path, std::ostream& out) {
  const SelfAdjointProblem p = load(path);
  out << "hypotheses: satisfied\n";
  out << "interval: (" << num(p.tau.a()) << ", " << num(p.tau.b()) << ")\n";
  out << "support of varrho: [" << num(p.tau.alpha()) << ", " << num(p.tau.beta()) << "]\n";
  out << "endpoint a: " << to_string(p.class_a.tag) << (p.class_a.heuristic ? " (heuristic)" : "") << "; "
      << p.class_a.evidence << '\n';
  out << "endpoint b: " << to_string(p.class_b.tag) << (p.class_b.heuristic ? " (heuristic)" : "") << "; "
      << p.class_b.evidence << '\n';
  out << "mul(S) dimension: " << p.mul.dimension << '\n';
  if (!p.mul.description.empty()) out << "mul(S): " << p.mul.description << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sturm-Liouville problems with measure coefficients"};
  app.require_subcommand(1);
  std::string file, output;
  app.add_option("-o,--output", output, "write CSV here instead of stdout");

  auto* cmd_check = app.add_subcommand("check", "validate the problem and classify it");
  cmd_check->add_option("file", file)->required();

  std::string z_str = "0", d1_str = "0", d2_str = "0";
  double c = 0.0;
  std::vector<double> points;
  auto* cmd_solve = app.add_subcommand("solve", "solve the initial value problem (tau - z) u = 0");
  cmd_solve->add_option("file", file)->required();
  cmd_solve->add_option("--z", z_str, "re,im");
  cmd_solve->add_option("--c", c)->required();
  cmd_solve->add_option("--d1", d1_str, "u(c) as re,im");
  cmd_solve->add_option("--d2", d2_str, "u^[1](c) as re,im");
  cmd_solve->add_option("--points", points, "output positions (default: 101 across the window)");

  double lo = 0.0, hi = 0.0, tol = 1e-10;
  auto* cmd_eig = app.add_subcommand("eig", "eigenvalues and norming constants in [lo, hi]");
  cmd_eig->add_option("file", file)->required();
  cmd_eig->add_option("--lo", lo)->required();
  cmd_eig->add_option("--hi", hi)->required();
  cmd_eig->add_option("--tol", tol);

  std::string grid;
  double eps = 1e-3;
  auto* cmd_mfun = app.add_subcommand("mfun", "m-function on a horizontal line");
  cmd_mfun->add_option("file", file)->required();
  cmd_mfun->add_option("--grid", grid, "re0,re1,n")->required();
  cmd_mfun->add_option("--eps", eps, "imaginary part");

  double x0 = 0.0, phi = 0.0;
  auto* cmd_weyl = app.add_subcommand("weylmat", "Weyl matrix at an interior point");
  cmd_weyl->add_option("file", file)->required();
  cmd_weyl->add_option("--x0", x0)->required();
  cmd_weyl->add_option("--phi", phi);
  cmd_weyl->add_option("--z", z_str, "re,im")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    // Usage errors count as validation failures; --help stays 0.
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  std::ofstream file_out;
  if (!output.empty()) {
    file_out.open(output, std::ios::binary);
    if (!file_out) {
      err << "validation error: cannot write " << output << '\n';
      return 1;
    }
  }
  std::ostream& os = output.empty() ? out : file_out;
  Csv csv(os);

  try {
    if (*cmd_check) {
      check(file, os);
    } else if (*cmd_solve) {
      ProblemSpec spec = load_problem(file);
      const TauExpression& tau = spec.tau;
      if (points.empty()) {
        for (int k = 0; k <= 100; ++k) points.push_back(tau.window_lo() + (tau.window_hi() - tau.window_lo()) * k / 100.0);
      }
      const QuasiSolution u = solve_tau(tau, parse_complex(z_str), PiecewiseFunction(), c, parse_complex(d1_str),
                                        parse_complex(d2_str), LimitKind::AtX, points);
      csv.header({"x", "re_f", "im_f", "re_f1", "im_f1"});
      for (double x : points) {
        const cplx f = u.f(x), f1 = u.f1(x);
        csv.row({x, f.real(), f.imag(), f1.real(), f1.imag()});
      }
    } else if (*cmd_eig) {
      const SelfAdjointProblem p = load(file);
      const SpectralData d = eigenvalues(p, lo, hi, tol);
      csv.header({"lambda", "mu"});
      for (std::size_t k = 0; k < d.eigenvalues.size(); ++k) {
        for (int m = 0; m < d.multiplicity[k]; ++m) csv.row({d.eigenvalues[k], d.norming[k]});
      }
    } else if (*cmd_mfun) {
      std::vector<double> g;
      std::stringstream ss(grid);
      for (std::string item; std::getline(ss, item, ',');) g.push_back(parse_complex(item).real());
      if (g.size() != 3 || g[2] < 1) throw ValidationError("--grid expects re0,re1,n with n >= 1");
      const SelfAdjointProblem p = load(file);
      const int n = static_cast<int>(g[2]);
      csv.header({"re_z", "im_z", "re_m", "im_m"});
      for (int k = 0; k < n; ++k) {
        const double re = n == 1 ? g[0] : g[0] + (g[1] - g[0]) * k / (n - 1);
        const cplx m = m_function(p, cplx(re, eps));
        csv.row({re, eps, m.real(), m.imag()});
      }
    } else if (*cmd_weyl) {
      const SelfAdjointProblem p = load(file);
      const WeylMatrix w = weyl_matrix(p, x0, phi, parse_complex(z_str));
      os << "entry,re,im\n";
      const char* names[] = {"m11", "m12", "m21", "m22"};
      for (int k = 0; k < 4; ++k) {
        const cplx v = w.matrix(k / 2, k % 2);
        os << names[k] << ',' << num(v.real()) << ',' << num(v.imag()) << '\n';
      }
      os << "det," << num(w.det.real()) << ',' << num(w.det.imag()) << '\n';
      os << "trace," << num(w.trace.real()) << ',' << num(w.trace.imag()) << '\n';
    }
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace msl
