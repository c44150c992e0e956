#include "msl/problem_file.hpp"

#include <toml.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace msl {

namespace {

double number(const toml::node& n, const std::string& what) {
  if (auto v = n.value<double>()) return *v;
  if (auto s = n.value<std::string>()) {
    if (*s == "inf" || *s == "+inf") return std::numeric_limits<double>::infinity();
    if (*s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw ValidationError(what + " must be a number");
}

double number_or(const toml::table& t, const char* key, double fallback) {
  const toml::node* n = t.get(key);
  return n ? number(*n, key) : fallback;
}

double required(const toml::table& t, const char* key, const std::string& section) {
  const toml::node* n = t.get(key);
  if (!n) throw ValidationError("[" + section + "] needs '" + key + "'");
  return number(*n, section + "." + key);
}

const toml::array& array_at(const toml::table& t, const char* key, const std::string& section) {
  const toml::array* a = t.get_as<toml::array>(key);
  if (!a) throw ValidationError("[" + section + "] needs an array '" + key + "'");
  return *a;
}

std::vector<double> reals(const toml::array& a, const std::string& what) {
  std::vector<double> out;
  for (const auto& n : a) out.push_back(number(n, what));
  return out;
}

std::vector<double> row(const toml::node& n, std::size_t min_len, std::size_t max_len, const std::string& what) {
  const toml::array* a = n.as_array();
  if (!a || a->size() < min_len || a->size() > max_len) throw ValidationError("malformed entry in " + what);
  return reals(*a, what);
}

Measure measure(const toml::table* t, double a, double b, const std::string& section) {
  if (!t) return Measure(a, b);
  std::vector<Atom> atoms;
  std::vector<DensityCell> cells;
  if (const toml::array* arr = t->get_as<toml::array>("atoms")) {
    for (const auto& n : *arr) {
      const auto v = row(n, 2, 3, section + ".atoms");
      atoms.push_back({v[0], cplx(v[1], v.size() > 2 ? v[2] : 0.0)});
    }
  }
  if (const toml::array* arr = t->get_as<toml::array>("density")) {
    for (const auto& n : *arr) {
      const auto v = row(n, 3, 4, section + ".density");
      cells.push_back({v[0], v[1], cplx(v[2], v.size() > 3 ? v[3] : 0.0)});
    }
  }
  return Measure(a, b, std::move(atoms), std::move(cells));
}

FunctionalBasis basis(const toml::table& t, const char* key) {
  const std::string s = t[key].value_or(std::string("auto"));
  if (s == "auto") return FunctionalBasis::Auto;
  if (s == "point") return FunctionalBasis::PointEvaluation;
  if (s == "left_limit") return FunctionalBasis::LeftLimitAtSupport;
  throw ValidationError(std::string("bc.") + key + " must be auto, point or left_limit");
}

BoundaryConditionSpec boundary(const toml::table& t) {
  BoundaryConditionSpec bc;
  const std::string type = t["type"].value_or(std::string("separate"));
  if (type == "separate") {
    bc.kind = SeparateBC{number_or(t, "phi_a", 0.0), number_or(t, "phi_b", 0.0)};
  } else if (type == "coupled") {
    CoupledBC c;
    c.phi = number_or(t, "phi", 0.0);
    const toml::array& r = t.contains("R") ? array_at(t, "R", "bc") : array_at(t, "r", "bc");
    if (r.size() != 2) throw ValidationError("bc.r must be a 2x2 array");
    for (int i = 0; i < 2; ++i) {
      const auto v = row(*r.get(i), 2, 2, "bc.r");
      c.r(i, 0) = v[0];
      c.r(i, 1) = v[1];
    }
    bc.kind = c;
  } else {
    throw ValidationError("bc.type must be separate or coupled");
  }
  bc.basis_a = basis(t, "basis_a");
  bc.basis_b = basis(t, "basis_b");
  return bc;
}

TauOptions tau_options(const toml::table* interval) {
  TauOptions opts;
  if (!interval) return opts;
  opts.one_point = (*interval)["one_point"].value_or(false);
  if (const toml::array* w = interval->get_as<toml::array>("window")) {
    const auto v = reals(*w, "interval.window");
    if (v.size() != 2) throw ValidationError("interval.window must be [lo, hi]");
    opts.window_lo = v[0];
    opts.window_hi = v[1];
  }
  return opts;
}

TauExpression classical(const toml::table& t, const toml::table* interval) {
  if (const toml::array* cells = t.get_as<toml::array>("cells")) {
    std::vector<ClassicalCell> cs;
    for (const auto& n : *cells) {
      const auto v = row(n, 5, 5, "classical.cells");
      cs.push_back({v[0], v[1], v[2], v[3], v[4]});
    }
    if (cs.empty()) throw ValidationError("classical.cells is empty");
    return from_classical(cs, cs.front().x0, cs.back().x1);
  }
  if (!interval) throw ValidationError("[classical] without cells needs [interval]");
  const double a = required(*interval, "a", "interval"), b = required(*interval, "b", "interval");
  const double r = number_or(t, "r", 1.0), p = number_or(t, "p", 1.0), q = number_or(t, "q", 0.0);
  return from_classical(std::vector<ClassicalCell>{{a, b, r, p, q}}, a, b);
}

ProblemSpec build(const toml::table& doc) {
  const toml::table* interval = doc["interval"].as_table();
  const toml::table* bc_table = doc["bc"].as_table();
  const char* adapters[] = {"jacobi", "classical", "krein", "peakon"};
  int count = 0;
  std::string which;
  for (const char* name : adapters) {
    if (doc.contains(name)) {
      ++count;
      which = name;
    }
  }
  const bool raw = doc.contains("varrho") || doc.contains("varsigma") || doc.contains("chi");
  if (count > 1 || (count == 1 && raw)) {
    throw ValidationError("adapter sections are mutually exclusive with each other and with raw measures");
  }

  auto with_bc = [&](TauExpression tau, BoundaryConditionSpec fallback) {
    return ProblemSpec{std::move(tau), bc_table ? boundary(*bc_table) : fallback};
  };

  if (which == "jacobi") {
    const toml::table& t = *doc["jacobi"].as_table();
    const auto p = reals(array_at(t, "p", "jacobi"), "jacobi.p");
    const auto q = reals(array_at(t, "q", "jacobi"), "jacobi.q");
    TauExpression tau = from_jacobi(p, q);
    return with_bc(std::move(tau), jacobi_dirichlet_bc(p));
  }
  if (which == "classical") {
    return with_bc(classical(*doc["classical"].as_table(), interval), point_dirichlet_bc());
  }
  if (which == "krein") {
    const toml::table& t = *doc["krein"].as_table();
    const double length = required(t, "length", "krein");
    return with_bc(from_krein_string(measure(&t, 0.0, length, "krein"), length), point_dirichlet_bc());
  }
  if (which == "peakon") {
    const toml::table& t = *doc["peakon"].as_table();
    const auto x = reals(array_at(t, "positions", "peakon"), "peakon.positions");
    const auto m = reals(array_at(t, "masses", "peakon"), "peakon.masses");
    if (x.size() != m.size()) throw ValidationError("peakon positions and masses differ in length");
    std::vector<Peakon> pk;
    for (std::size_t i = 0; i < x.size(); ++i) pk.push_back({x[i], m[i]});
    return with_bc(from_peakon(pk, number_or(t, "margin", 10.0)), point_dirichlet_bc());
  }

  if (!interval) throw ValidationError("missing [interval]");
  const double a = required(*interval, "a", "interval"), b = required(*interval, "b", "interval");
  if (!(a < b)) throw ValidationError("interval needs a < b");
  TauExpression tau = build_tau(measure(doc["varrho"].as_table(), a, b, "varrho"),
                                measure(doc["varsigma"].as_table(), a, b, "varsigma"),
                                measure(doc["chi"].as_table(), a, b, "chi"), tau_options(interval));
  return with_bc(std::move(tau), BoundaryConditionSpec{});
}

}  // namespace

ProblemSpec parse_problem(std::string_view text) {
  toml::table doc;
  try {
    doc = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "problem file: " << e.description() << " at line " << e.source().begin.line;
    throw ValidationError(os.str());
  }
  return build(doc);
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open problem file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

}  // namespace msl
