#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pivasym/io.hpp"

using namespace pivasym;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "pivasym-XXXXXX").string();
    path = mkdtemp(tmpl.data());
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& f) const { return (path / f).string(); }
};

struct Run {
  int code = -1;
  std::string err;
};

Run cli(const std::string& args, const TempDir& dir) {
  std::string errf = dir / "stderr.txt";
  std::string cmd = std::string(PIVASYM_CLI) + " " + args + " >/dev/null 2>" + errf;
  int st = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  std::ifstream in(errf);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  return r;
}

std::string slurp(const std::string& f) {
  std::ifstream in(f, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("monodromy JSON round trip") {
  auto md = complete_monodromy(cplx(0.3, 0.1), 0.7, 0.5, cplx(0.8, 0.3), cplx(-0.4, 0.2));
  auto back = monodromy_from_json(to_json(md));
  CHECK(back.alpha == md.alpha);
  CHECK(back.beta == md.beta);
  for (int k = 0; k < 4; ++k) CHECK(back.s[k] == md.s[k]);
}

TEST_CASE("asymptotic solution JSON round trip") {
  auto md = complete_monodromy(0.3, 0.7, 0.5, cplx(0.8, 0.3), cplx(-0.4, 0.2));
  auto as = asymptotic_solution(md, -kPi / 8);
  auto back = asymptotic_from_json(to_json(as));
  CHECK(back.chi == as.chi);
  CHECK(back.A_phi == as.A_phi);
  CHECK(back.n == as.n);
  CHECK(std::abs(back.ep.periods.omega_b - as.ep.periods.omega_b) < 1e-12);
  CHECK(to_json(back) == to_json(as));
}

TEST_CASE("malformed JSON") {
  CHECK_THROWS_AS(monodromy_from_json("{"), DomainError);
  CHECK_THROWS_AS(monodromy_from_json(R"({"alpha": 0.3, "beta": 0.7})"), DomainError);
  CHECK_THROWS_AS(monodromy_from_json(R"({"alpha": 0.3, "beta": 0.7, "s": [1, 2, 3]})"),
                  DomainError);
  CHECK_THROWS_AS(
      monodromy_from_json(R"({"alpha": "x", "beta": 0.7, "s": [1, 2, 3, 4]})"), DomainError);
  CHECK_THROWS_AS(asymptotic_from_json(R"({"phi": 0.1})"), DomainError);
}

TEST_CASE("CLI exit codes") {
  TempDir d;
  CHECK(cli("phase-shift --out " + (d / "p.json"), d).code == 0);
  CHECK(fs::exists(d / "p.json"));
  CHECK(cli("evaluate --bogus", d).code == 2);
  CHECK(cli("periods --phi nan", d).code == 2);
  // degenerate curve: a numeric failure, not an input error
  CHECK(cli("periods --phi 0.7853981633974483 --A 0", d).code == 1);
}

TEST_CASE("CLI hypothesis violation writes nothing") {
  TempDir d;
  auto r = cli("evaluate --s1 1 --s2 -0.5 --s3 -2 --out " + (d / "e.csv"), d);
  CHECK(r.code == 2);
  CHECK(r.err.find("(1+s1s2)(1+s2s3)−1 = 0") != std::string::npos);
  CHECK_FALSE(fs::exists(d / "e.csv"));
  CHECK(cli("phase-shift --s1 1 --s2 -0.5 --s3 -2 --out " + (d / "p.json"), d).code == 2);
  CHECK_FALSE(fs::exists(d / "p.json"));
}

TEST_CASE("CLI output is deterministic") {
  TempDir d;
  REQUIRE(cli("evaluate --out " + (d / "a.csv"), d).code == 0);
  REQUIRE(cli("evaluate --out " + (d / "b.csv"), d).code == 0);
  CHECK(slurp(d / "a.csv") == slurp(d / "b.csv"));
  CHECK(slurp(d / "a.csv").rfind("t,re_x,im_x,re_y,im_y,marker\n", 0) == 0);
}

TEST_CASE("CLI config file and overrides") {
  TempDir d;
  {
    std::ofstream c(d / "run.cfg");
    c << "# evaluate run\nt-min = 80\nt-max = 81\npoints = 5\nalpha = [0.25, 0.1]\n";
  }
  REQUIRE(cli("evaluate --config " + (d / "run.cfg") + " --out " + (d / "c.csv"), d).code == 0);
  std::string csv = slurp(d / "c.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(csv.find("\n80,") != std::string::npos);
  REQUIRE(cli("evaluate --config " + (d / "run.cfg") + " --points 3 --out " + (d / "o.csv"), d)
              .code == 0);
  csv = slurp(d / "o.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  {
    std::ofstream c(d / "bad.cfg");
    c << "t-min = 80\nwidth = 3\n";
  }
  auto r = cli("evaluate --config " + (d / "bad.cfg") + " --out " + (d / "x.csv"), d);
  CHECK(r.code == 2);
  CHECK(r.err.find(":2:") != std::string::npos);
  CHECK_FALSE(fs::exists(d / "x.csv"));
}

TEST_CASE("CLI pole markers") {
  TempDir d;
  REQUIRE(cli("evaluate --s1 0 --s2 1 --s3 1 --out " + (d / "e.csv"), d).code == 0);
  std::string csv = slurp(d / "e.csv");
  size_t n = 0;
  for (size_t p = csv.find(",,,pole\n"); p != std::string::npos; p = csv.find(",,,pole\n", p + 1)) ++n;
  CHECK(n >= 1);
  CHECK(csv.find(",,,\n") == std::string::npos);
}

TEST_CASE("CLI identities") {
  TempDir d;
  CHECK(cli("identities --out " + (d / "id.csv"), d).code == 0);
  std::string csv = slurp(d / "id.csv");
  CHECK(csv.find("legendre") != std::string::npos);
  CHECK(csv.find("M0") != std::string::npos);
}
