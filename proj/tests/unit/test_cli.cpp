#include <doctest.h>

#include "support.hpp"

#include "msl/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace msl;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string problem(const std::string& name) { return std::string(MSL_PROBLEMS_DIR) + "/" + name; }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("cli eig") {
  const Run r = run({"eig", problem("dirichlet_pi.toml"), "--lo", "0", "--hi", "30"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "lambda,mu");
  for (int n = 1; n <= 5; ++n) {
    double lambda = 0, mu = 0;
    REQUIRE(std::sscanf(rows[n].c_str(), "%lf,%lf", &lambda, &mu) == 2);
    CHECK(std::abs(lambda - n * n) < 1e-8);
    CHECK(std::abs(mu - 2.0 * n * n / test::kPi) < 1e-7);
  }
  CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("cli check") {
  const Run good = run({"check", problem("dirichlet_pi.toml")});
  CHECK(good.code == 0);
  CHECK(good.out.find("hypotheses: satisfied") != std::string::npos);
  const Run bad = run({"check", problem("bad_shared_atom.toml")});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("no point masses in common") != std::string::npos);
}

TEST_CASE("cli solve") {
  const Run r = run({"solve", problem("dirichlet_pi.toml"), "--z", "2,0.5", "--c", "1", "--d1", "0,0", "--d2", "0,0"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 102);
  CHECK(rows[0] == "x,re_f,im_f,re_f1,im_f1");
  for (std::size_t k = 1; k < rows.size(); ++k) {
    double x, v[4];
    REQUIRE(std::sscanf(rows[k].c_str(), "%lf,%lf,%lf,%lf,%lf", &x, v, v + 1, v + 2, v + 3) == 5);
    for (double c : v) CHECK(c == 0.0);
  }
}

TEST_CASE("cli output is deterministic") {
  const std::vector<std::string> args{"mfun", problem("dirichlet_pi.toml"), "--grid", "-1,10,7", "--eps", "0.25"};
  const Run first = run(args), second = run(args);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(lines(first.out).size() == 8);

  const auto path = std::filesystem::temp_directory_path() / "msl_cli_test.csv";
  const Run to_file = run({"-o", path.string(), "weylmat", problem("dirichlet_pi.toml"), "--x0", "1", "--z", "0,1"});
  REQUIRE(to_file.code == 0);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto rows = lines(buf.str());
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == "entry,re,im");
  double det_re = 0, det_im = 0;
  REQUIRE(std::sscanf(rows[5].c_str(), "det,%lf,%lf", &det_re, &det_im) == 2);
  CHECK(std::abs(det_re + 0.25) < 1e-10);
  CHECK(std::abs(det_im) < 1e-10);
  std::filesystem::remove(path);
}

TEST_CASE("cli failures") {
  SUBCASE("numerical") {
    const Run r = run({"weylmat", problem("dirichlet_pi.toml"), "--x0", "1", "--z", "1,0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("numerical error") != std::string::npos);
  }
  SUBCASE("validation") {
    CHECK(run({"eig", "/nonexistent.toml", "--lo", "0", "--hi", "1"}).code == 1);
    CHECK(run({"solve", problem("dirichlet_pi.toml"), "--c", "9"}).code == 1);
    CHECK(run({"bogus"}).code == 1);
  }
}
