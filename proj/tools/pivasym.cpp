#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "pivasym/boutroux.hpp"
#include "pivasym/io.hpp"
#include "pivasym/monodromy.hpp"
#include "pivasym/suites.hpp"
#include "pivasym/verify.hpp"
#include "pivasym/wkb.hpp"

using namespace pivasym;
using nlohmann::json;

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Buffered outputs, committed only after the command succeeded.
class Outputs {
 public:
  std::ostringstream& open(const std::string& path) {
    order_.push_back(path);
    return files_[path];
  }
  void commit() {
    for (const auto& path : order_) {
      auto tmp = path + ".tmp";
      {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw InputError("cannot write " + path);
        os << files_[path].str();
        if (!os) throw InputError("cannot write " + path);
      }
      std::filesystem::rename(tmp, path);
    }
  }

 private:
  std::vector<std::string> order_;
  std::map<std::string, std::ostringstream> files_;
};

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

cplx to_cplx(const std::vector<double>& v, const char* name) {
  if (v.empty() || v.size() > 2)
    throw InputError(std::string("--") + name + " takes one or two numbers (re [im])");
  cplx z(v[0], v.size() == 2 ? v[1] : 0.0);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw InputError(std::string("--") + name + " must be finite");
  return z;
}

void check_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw InputError(std::string("--") + name + " must be finite");
}

struct Common {
  double phi = -kPi / 8;
  std::vector<double> alpha{0.3}, beta{0.7};
  std::vector<double> s1{0.5}, s2{0.8, 0.3}, s3{-0.4, 0.2};
  int n = 0;
  double quad_tol = 1e-10, newton_tol = 1e-12;

  Tolerances tol() const {
    for (double v : {quad_tol, newton_tol})
      if (!(v > 1e-14) || !std::isfinite(v)) throw InputError("tolerances must exceed 1e-14");
    return {quad_tol, newton_tol};
  }

  MonodromyData monodromy() const {
    cplx al = to_cplx(alpha, "alpha"), be = to_cplx(beta, "beta");
    cplx a = to_cplx(s1, "s1"), b = to_cplx(s2, "s2"), c = to_cplx(s3, "s3");
    cplx X = (1.0 + a * b) * (1.0 + b * c) - 1.0;
    if (std::abs(X) < 1e-14)
      throw InputError("hypothesis violated: (1+s1s2)(1+s2s3)−1 = 0");
    try {
      return complete_monodromy(al, be, a, b, c);
    } catch (const UnderdeterminedError& e) {
      throw InputError(e.what());
    }
  }
};

void add_phi(CLI::App* c, Common& p) {
  c->add_option("--phi", p.phi, "direction angle phi");
}
void add_tol(CLI::App* c, Common& p) {
  c->add_option("--quad-tol", p.quad_tol, "quadrature tolerance");
  c->add_option("--newton-tol", p.newton_tol, "Newton tolerance");
}
void add_mono(CLI::App* c, Common& p) {
  c->add_option("--alpha", p.alpha, "alpha (re [im])")->expected(1, 2);
  c->add_option("--beta", p.beta, "beta (re [im])")->expected(1, 2);
  c->add_option("--s1", p.s1, "Stokes multiplier s1 (re [im])")->expected(1, 2);
  c->add_option("--s2", p.s2, "Stokes multiplier s2 (re [im])")->expected(1, 2);
  c->add_option("--s3", p.s3, "Stokes multiplier s3 (re [im])")->expected(1, 2);
  c->add_option("--sector", p.n, "sector index n");
}

cplx solve_A_default(double phi, const Tolerances& tol) {
  BoutrouxOptions bo;
  bo.tol = tol;
  TrajectoryOptions to;
  to.newton = bo;
  return trajectory({phi}, to)[0].A;
}

// ------------------------------------------------------------ trajectory

struct TrajectoryCmd {
  double phi_min = -kPi / 4, phi_max = kPi / 4;
  int points = 101;
  std::string csv = "trajectory.csv", json_out = "trajectory.json", figure;
  bool check_symmetry = false;
};

void write_loop_svg(std::ostream& os, const std::vector<BoutrouxPoint>& pts) {
  double W = 640, H = 480, x0 = -0.02, x1 = 0.32, y0 = -0.2, y1 = 0.2;
  auto X = [&](double x) { return g17((x - x0) / (x1 - x0) * W); };
  auto Y = [&](double y) { return g17((y1 - y) / (y1 - y0) * H); };
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
     << "\" height=\"" << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<line x1=\"" << X(x0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(x1) << "\" y2=\""
     << Y(0) << "\" stroke=\"#999\"/>\n"
     << "<line x1=\"" << X(0) << "\" y1=\"" << Y(y0) << "\" x2=\"" << X(0) << "\" y2=\""
     << Y(y1) << "\" stroke=\"#999\"/>\n<polyline fill=\"none\" stroke=\"#c00\" points=\"";
  for (const auto& p : pts) os << X(p.A.real()) << ',' << Y(p.A.imag()) << ' ';
  os << "\"/>\n";
  for (double a : {0.0, kA0})
    os << "<circle cx=\"" << X(a) << "\" cy=\"" << Y(0) << "\" r=\"3\" fill=\"black\"/>\n";
  os << "<text x=\"" << X(kA0) << "\" y=\"" << g17(std::stod(Y(0)) - 8)
     << "\" font-size=\"12\">8/27</text>\n</svg>\n";
}

int run_trajectory(const TrajectoryCmd& c, const Common& p) {
  check_finite(c.phi_min, "phi-min");
  check_finite(c.phi_max, "phi-max");
  if (c.points < 2 || !(c.phi_max > c.phi_min))
    throw InputError("need --points >= 2 and --phi-max > --phi-min");
  TrajectoryOptions to;
  to.newton.tol = p.tol();
  std::vector<double> grid;
  for (int k = 0; k < c.points; ++k)
    grid.push_back(c.phi_min + (c.phi_max - c.phi_min) * k / (c.points - 1));
  auto pts = trajectory(grid, to);

  Outputs out;
  auto& csv = out.open(c.csv);
  csv << "phi,re_A,im_A,re_omega_a,im_omega_a,re_omega_b,im_omega_b,residual_a,residual_b,"
         "newton_iters\n";
  json arr = json::array();
  for (const auto& b : pts) {
    csv << g17(b.phi) << ',' << g17(b.A.real()) << ',' << g17(b.A.imag()) << ',';
    if (b.analytic) {
      csv << ",,,,,," << b.newton_iters << "\n";  // degenerate curve, no periods
      arr.push_back({{"phi", b.phi}, {"A", cj(b.A)}, {"analytic", true}});
      continue;
    }
    csv << g17(b.periods.omega_a.real()) << ',' << g17(b.periods.omega_a.imag()) << ','
        << g17(b.periods.omega_b.real()) << ',' << g17(b.periods.omega_b.imag()) << ','
        << g17(b.residual[0]) << ',' << g17(b.residual[1]) << ',' << b.newton_iters << "\n";
    arr.push_back({{"phi", b.phi},
                   {"A", cj(b.A)},
                   {"omega_a", cj(b.periods.omega_a)},
                   {"omega_b", cj(b.periods.omega_b)},
                   {"residual", {b.residual[0], b.residual[1]}},
                   {"analytic", b.analytic}});
  }
  out.open(c.json_out) << json{{"points", arr}}.dump(2) << "\n";
  if (!c.figure.empty()) write_loop_svg(out.open(c.figure), pts);

  if (c.check_symmetry) {
    std::vector<double> neg;
    for (double f : grid) neg.push_back(-f);
    auto mirror = trajectory(neg, to);
    double worst = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
      worst = std::max(worst, std::abs(mirror[i].A - std::conj(pts[i].A)));
    std::cout << "max |A(-phi) - conj A(phi)| = " << g17(worst) << "\n";
  }
  out.commit();
  return 0;
}

// ------------------------------------------------------------ periods

struct PeriodsCmd {
  std::vector<double> A;
  std::string frame = "z", out = "periods.json";
};

int run_periods(const PeriodsCmd& c, const Common& p) {
  check_finite(p.phi, "phi");
  Tolerances tol = p.tol();
  if (c.frame != "z" && c.frame != "zeta") throw InputError("--frame must be z or zeta");
  cplx A = c.A.empty() ? solve_A_default(p.phi, tol) : to_cplx(c.A, "A");
  CurveSpec spec = make_curve(p.phi, A, c.frame == "z" ? Frame::z : Frame::zeta);
  Periods per = periods(spec, tol, true);
  json j;
  j["curve"] = json::parse(to_json(spec));
  j["periods"] = json::parse(to_json(per));
  j["legendre_residual"] = std::abs(per.legendre_residual());
  Outputs out;
  out.open(c.out) << j.dump(2) << "\n";
  out.commit();
  return 0;
}

// ------------------------------------------------------------ stokes

struct StokesCmd {
  std::vector<double> A;
  std::string svg = "stokes.svg", json_out = "stokes.json";
  int width = 800, height = 800;
  std::vector<double> viewport{-3, 3, -3, 3};
};

int run_stokes(const StokesCmd& c, const Common& p) {
  check_finite(p.phi, "phi");
  if (c.viewport.size() != 4) throw InputError("--viewport takes x0 x1 y0 y1");
  if (c.width <= 0 || c.height <= 0) throw InputError("--width and --height must be positive");
  cplx A = c.A.empty() ? solve_A_default(p.phi, p.tol()) : to_cplx(c.A, "A");
  auto g = stokes_graph(p.phi, A);
  SvgOptions so{c.width, c.height, c.viewport[0], c.viewport[1], c.viewport[2], c.viewport[3]};
  Outputs out;
  write_svg(out.open(c.svg), g, so);
  out.open(c.json_out) << adjacency_json(g) << "\n";
  out.commit();
  return 0;
}

// ------------------------------------------------------------ phase-shift

struct PhaseCmd {
  std::string out = "phase_shift.json";
};

int run_phase(const PhaseCmd& c, const Common& p) {
  check_finite(p.phi, "phi");
  auto md = p.monodromy();
  auto as = asymptotic_solution(md, p.phi, p.n, p.tol());
  Outputs out;
  out.open(c.out) << to_json(as) << "\n";
  out.commit();
  return 0;
}

// ------------------------------------------------------------ evaluate

struct EvaluateCmd {
  double t_min = 50, t_max = 60, clearance = 0.05;
  int points = 201;
  std::string out = "evaluate.csv";
};

int run_evaluate(const EvaluateCmd& c, const Common& p) {
  check_finite(p.phi, "phi");
  check_finite(c.t_min, "t-min");
  check_finite(c.t_max, "t-max");
  if (c.points < 2 || !(c.t_max > c.t_min) || !(c.t_min > 0))
    throw InputError("need 0 < --t-min < --t-max and --points >= 2");
  auto md = p.monodromy();
  auto as = asymptotic_solution(md, p.phi, p.n, p.tol());
  cplx e = expi(p.phi);
  Outputs out;
  auto& csv = out.open(c.out);
  csv << "t,re_x,im_x,re_y,im_y,marker\n";
  for (int k = 0; k < c.points; ++k) {
    double t = c.t_min + (c.t_max - c.t_min) * k / (c.points - 1);
    cplx x = x_of_t(t, p.phi);
    cplx u = e * t + as.chi_raw;
    auto [d, pole] = nearest_pole(u, as.ep);
    csv << g17(t) << ',' << g17(x.real()) << ',' << g17(x.imag()) << ',';
    if (d < c.clearance) {
      csv << ",,pole\n";
      continue;
    }
    cplx y = std::conj(e) * x * P_eval(u, as.ep);
    csv << g17(y.real()) << ',' << g17(y.imag()) << ",\n";
  }
  out.commit();
  return 0;
}

// ------------------------------------------------------------ verify

struct VerifyCmd {
  std::vector<double> t{100, 141, 200, 283, 400};
  double t_seed = 3200, im = 0.3;
  std::string out = "verify.csv";
};

int run_verify(const VerifyCmd& c, const Common& p) {
  check_finite(p.phi, "phi");
  for (double t : c.t)
    if (!(t > 0) || !std::isfinite(t)) throw InputError("--t values must be positive");
  auto md = p.monodromy();
  auto as = asymptotic_solution(md, p.phi, p.n, p.tol());
  ScanOptions so;
  so.t_seed = c.t_seed;
  so.im = c.im;
  so.ode.arithmetic = Arithmetic::extended;
  auto res = residual_scan(as, c.t, so);
  Outputs out;
  auto& csv = out.open(c.out);
  csv << "re_t,im_t,re_y_num,im_y_num,re_y_asym,im_y_asym,residual,b_residual,ok\n";
  for (const auto& r : res.rows)
    csv << g17(r.t.real()) << ',' << g17(r.t.imag()) << ',' << g17(r.y_num.real()) << ','
        << g17(r.y_num.imag()) << ',' << g17(r.y_asym.real()) << ',' << g17(r.y_asym.imag())
        << ',' << g17(r.residual) << ',' << g17(r.b_residual) << ',' << (r.ok ? 1 : 0) << "\n";
  std::cout << "fitted exponent (residual) = " << g17(res.slope_residual) << "\n"
            << "fitted exponent (correction) = " << g17(res.slope_b) << "\n";
  out.commit();
  return 0;
}

// ------------------------------------------------------------ identities

struct IdentitiesCmd {
  std::string out;
};

int run_identities(const IdentitiesCmd& c) {
  auto rs = all_suites();
  bool ok = true;
  std::ostringstream rep;
  rep << "suite,passed,worst,tol,detail\n";
  for (const auto& r : rs) {
    ok = ok && r.passed;
    std::printf("%-12s %s  worst %.3e  tol %.1e\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                r.worst, r.tol);
    rep << r.name << ',' << (r.passed ? 1 : 0) << ',' << g17(r.worst) << ',' << g17(r.tol)
        << ",\"" << r.detail << "\"\n";
  }
  if (!c.out.empty()) {
    Outputs out;
    out.open(c.out) << rep.str();
    out.commit();
  }
  return ok ? 0 : 1;
}

// ------------------------------------------------------------ oracle-scan

struct OracleCmd {
  int grid = 160;
  std::string out = "oracle.json";
};

int run_oracle(const OracleCmd& c, const Common& p) {
  check_finite(p.phi, "phi");
  if (c.grid < 4) throw InputError("--grid must be at least 4");
  Tolerances tol = p.tol();
  auto o = boutroux_oracle_scan(p.phi, default_scan_rect(p.phi), c.grid);
  cplx A = solve_A_default(p.phi, tol);
  json j{{"phi", p.phi},
         {"oracle", cj(o.A)},
         {"oracle_coarse", cj(o.coarse)},
         {"objective", o.objective},
         {"newton", cj(A)},
         {"difference", std::abs(o.A - A)}};
  std::cout << "|oracle - newton| = " << g17(std::abs(o.A - A)) << "\n";
  Outputs out;
  out.open(c.out) << j.dump(2) << "\n";
  out.commit();
  return 0;
}

struct ConfigEntry {
  std::string key, where;
  std::vector<std::string> values;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// key = value lines; values may be JSON-style numbers, strings or arrays.
std::vector<ConfigEntry> read_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot read config file " + path);
  std::vector<ConfigEntry> out;
  std::string line;
  for (int no = 1; std::getline(is, line); ++no) {
    std::string where = path + ":" + std::to_string(no);
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError(where + ": expected key = value");
    ConfigEntry c{trim(line.substr(0, eq)), where, {}};
    std::string v = trim(line.substr(eq + 1));
    if (c.key.empty() || v.empty()) throw InputError(where + ": empty key or value");
    if (v.front() == '[') {
      if (v.back() != ']') throw InputError(where + ": unterminated array for '" + c.key + "'");
      v = v.substr(1, v.size() - 2);
      for (char& ch : v)
        if (ch == ',') ch = ' ';
      std::istringstream ss(v);
      for (std::string tok; ss >> tok;) c.values.push_back(tok);
      if (c.values.empty()) throw InputError(where + ": empty array for '" + c.key + "'");
    } else if (v.front() == '"') {
      if (v.size() < 2 || v.back() != '"') throw InputError(where + ": unterminated string");
      c.values.push_back(v.substr(1, v.size() - 2));
    } else {
      c.values.push_back(v);
    }
    out.push_back(std::move(c));
  }
  return out;
}

// Pulls --config out of args and appends the file's keys that the command
// line does not set.
std::vector<ConfigEntry> splice_config(CLI::App& app, std::vector<std::string>& args) {
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 == args.size()) throw InputError("--config needs a file name");
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (path.empty()) return {};
  CLI::App* sub = nullptr;
  for (const auto& a : args)
    if (a.rfind("-", 0) != 0) {
      sub = app.get_subcommand_ptr(a).get();
      break;
    }
  if (!sub) throw InputError("--config must follow a subcommand");
  auto entries = read_config(path);
  for (const auto& c : entries) {
    std::string flag = "--" + c.key;
    CLI::Option* opt = sub->get_option_no_throw(flag);
    if (!opt || c.key == "help")
      throw InputError(c.where + ": unknown key '" + c.key + "' for " + sub->get_name());
    bool given = false;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
    if (given) continue;
    if (opt->get_expected_max() == 0) {  // flag
      if (c.values.size() != 1 || (c.values[0] != "true" && c.values[0] != "false"))
        throw InputError(c.where + ": '" + c.key + "' takes true or false");
      if (c.values[0] == "true") args.push_back(flag);
      continue;
    }
    args.push_back(flag);
    for (const auto& v : c.values) args.push_back(v);
  }
  return entries;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boutroux trajectories and elliptic asymptotics of Painleve IV"};
  app.require_subcommand(1);
  Common p;

  TrajectoryCmd tc;
  auto* tr = app.add_subcommand("trajectory", "A_phi over a grid of phi");
  tr->add_option("--phi-min", tc.phi_min);
  tr->add_option("--phi-max", tc.phi_max);
  tr->add_option("--points", tc.points);
  tr->add_option("--csv", tc.csv);
  tr->add_option("--json", tc.json_out);
  tr->add_option("--figure", tc.figure, "SVG of the trajectory loop");
  tr->add_flag("--check-symmetry", tc.check_symmetry);
  add_tol(tr, p);

  PeriodsCmd pc;
  auto* pe = app.add_subcommand("periods", "periods and J integrals at (phi, A)");
  add_phi(pe, p);
  add_tol(pe, p);
  pe->add_option("--A", pc.A, "A (re [im]); default: solved")->expected(1, 2);
  pe->add_option("--frame", pc.frame, "z or zeta");
  pe->add_option("--out", pc.out);

  StokesCmd sc;
  auto* st = app.add_subcommand("stokes", "Stokes graph at t = infinity");
  add_phi(st, p);
  add_tol(st, p);
  st->add_option("--A", sc.A)->expected(1, 2);
  st->add_option("--svg", sc.svg);
  st->add_option("--json", sc.json_out);
  st->add_option("--width", sc.width);
  st->add_option("--height", sc.height);
  st->add_option("--viewport", sc.viewport, "x0 x1 y0 y1")->expected(4);

  PhaseCmd phc;
  auto* ph = app.add_subcommand("phase-shift", "phase shift chi from monodromy data");
  add_phi(ph, p);
  add_tol(ph, p);
  add_mono(ph, p);
  ph->add_option("--out", phc.out);

  EvaluateCmd ec;
  auto* ev = app.add_subcommand("evaluate", "asymptotic y(x) along the ray arg x = phi");
  add_phi(ev, p);
  add_tol(ev, p);
  add_mono(ev, p);
  ev->add_option("--t-min", ec.t_min);
  ev->add_option("--t-max", ec.t_max);
  ev->add_option("--points", ec.points);
  ev->add_option("--clearance", ec.clearance, "pole disk radius in the u plane");
  ev->add_option("--out", ec.out);

  VerifyCmd vc;
  auto* ve = app.add_subcommand("verify", "asymptotics against direct integration");
  add_phi(ve, p);
  add_tol(ve, p);
  add_mono(ve, p);
  ve->add_option("--t", vc.t, "comparison points (real parts)");
  ve->add_option("--t-seed", vc.t_seed);
  ve->add_option("--im", vc.im, "Im t of the integration strip");
  ve->add_option("--out", vc.out);

  IdentitiesCmd ic;
  auto* id = app.add_subcommand("identities", "run all identity suites");
  id->add_option("--out", ic.out, "CSV report");

  OracleCmd oc;
  auto* orc = app.add_subcommand("oracle-scan", "brute-force A_phi against Newton");
  add_phi(orc, p);
  add_tol(orc, p);
  orc->add_option("--grid", oc.grid);
  orc->add_option("--out", oc.out);

  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<ConfigEntry> config;
  try {
    config = splice_config(app, args);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::reverse(args.begin(), args.end());  // CLI11 consumes from the back

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    if (code == 0) return 0;
    std::string msg = e.what();
    for (const auto& c : config)
      if (msg.find("--" + c.key) != std::string::npos)
        std::cerr << "  (" << c.key << " set at " << c.where << ")\n";
    return 2;
  }

  try {
    if (*tr) return run_trajectory(tc, p);
    if (*pe) return run_periods(pc, p);
    if (*st) return run_stokes(sc, p);
    if (*ph) return run_phase(phc, p);
    if (*ev) return run_evaluate(ec, p);
    if (*ve) return run_verify(vc, p);
    if (*id) return run_identities(ic);
    if (*orc) return run_oracle(oc, p);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const NonGenericError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
