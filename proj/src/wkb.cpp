#include "pivasym/wkb.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "pivasym/curve.hpp"

namespace pivasym {

namespace {

constexpr int kGauss = 10;

// Gauss-Legendre nodes and weights on [0, 1].
struct Rule {
  std::vector<double> x, w;
};
const Rule& unit_rule() {
  static const Rule r = [] {
    Rule out;
    const auto& ab = boost::math::quadrature::gauss<double, kGauss>::abscissa();
    const auto& wt = boost::math::quadrature::gauss<double, kGauss>::weights();
    for (size_t i = 0; i < ab.size(); ++i) {
      if (ab[i] == 0.0) {
        out.x.push_back(0.5);
        out.w.push_back(0.5 * wt[i]);
        continue;
      }
      for (double s : {-1.0, 1.0}) {
        out.x.push_back(0.5 * (1.0 + s * ab[i]));
        out.w.push_back(0.5 * wt[i]);
      }
    }
    return out;
  }();
  return r;
}

cplx nearest_root(cplx sq, cplx guess) {
  cplx r = std::sqrt(sq);
  return std::abs(r - guess) <= std::abs(r + guess) ? r : -r;
}

// Integral of mu over the segment [p, q], mu continued from mu_p at p.
// Returns (integral, mu at q).
std::pair<cplx, cplx> segment_integral(double phi, cplx A, cplx p, cplx q,
                                       cplx mu_p) {
  const Rule& r = unit_rule();
  cplx d = q - p;
  cplx mu_q = nearest_root(mu_inf_squared(phi, A, q),
                           mu_p + mu_inf_squared_deriv(phi, A, p) / (2.0 * mu_p) * d);
  cplx sum = 0.0;
  for (size_t i = 0; i < r.x.size(); ++i) {
    double s = r.x[i];
    cplx guess = mu_p + s * (mu_q - mu_p);
    sum += r.w[i] * nearest_root(mu_inf_squared(phi, A, p + s * d), guess);
  }
  return {sum * d, mu_q};
}

// Local data at a turning point of order m: mu^2 ~ D (lambda - lj)^m.
struct Local {
  int m = 1;
  cplx D{};
};

Local local_model(double phi, cplx A, cplx lj) {
  cplx d1 = mu_inf_squared_deriv(phi, A, lj);
  double scale = 1.0 + std::pow(std::abs(lj), 5);
  if (std::abs(d1) > 1e-8 * scale) return {1, d1};
  // second derivative by a centered difference of the derivative
  double h = 1e-5;
  cplx d2 = (mu_inf_squared_deriv(phi, A, lj + h) -
             mu_inf_squared_deriv(phi, A, lj - h)) / (2.0 * h);
  return {2, d2 / 2.0};
}

// Integral of mu from lj to lj + s e^{i theta} via lambda = lj + v^2 e^{i theta}.
std::pair<cplx, cplx> start_integral(double phi, cplx A, cplx lj, const Local& loc,
                                     double s, double theta) {
  const Rule& r = unit_rule();
  cplx et = expi(theta);
  cplx sD = std::sqrt(loc.D);
  double vmax = std::sqrt(s);
  cplx sum = 0.0;
  auto mu_at = [&](double v) {
    cplx lam = lj + v * v * et;
    cplx guess = sD * std::pow(v * std::sqrt(et), loc.m);
    return nearest_root(mu_inf_squared(phi, A, lam), guess);
  };
  for (size_t i = 0; i < r.x.size(); ++i) {
    double v = vmax * r.x[i];
    sum += r.w[i] * mu_at(v) * 2.0 * v * et;
  }
  return {sum * vmax, mu_at(vmax)};
}

double min_dist_other(const std::array<cplx, 6>& tps, cplx lam, int skip_cluster_of,
                      int* which) {
  double best = 1e300;
  for (int k = 0; k < 6; ++k) {
    if (skip_cluster_of >= 0 &&
        std::abs(tps[k] - tps[skip_cluster_of]) < 1e-7)
      continue;
    double d = std::abs(lam - tps[k]);
    if (d < best) {
      best = d;
      if (which) *which = k;
    }
  }
  return best;
}

int nearest_ray(double arg, double* deviation) {
  int best = 0;
  double bd = 1e300;
  for (int k = 0; k < 8; ++k) {
    double ray = kPi / 8 + k * kPi / 4;
    double d = std::remainder(arg - ray, 2 * kPi);
    if (std::abs(d) < bd) {
      bd = std::abs(d);
      best = k;
    }
  }
  if (deviation) *deviation = bd;
  return best;
}

double seg_dist(cplx p, cplx a, cplx b) {
  cplx d = b - a;
  double n = std::norm(d);
  double s = n > 0 ? std::clamp(std::real((p - a) * std::conj(d)) / n, 0.0, 1.0) : 0.0;
  return std::abs(p - (a + s * d));
}

double poly_dist(cplx p, const std::vector<cplx>& poly) {
  double best = 1e300;
  for (size_t i = 0; i + 1 < poly.size(); ++i)
    best = std::min(best, seg_dist(p, poly[i], poly[i + 1]));
  return best;
}

}  // namespace

cplx mu_inf_squared(double phi, cplx A, cplx lambda) {
  cplx e = expi(phi);
  cplx l2 = lambda * lambda;
  return ((l2 + 4.0 * e) * l2 + 4.0 * e * e) * l2 + 4.0 * e * e * e * A;
}

cplx mu_inf_squared_deriv(double phi, cplx A, cplx lambda) {
  (void)A;
  cplx e = expi(phi);
  cplx l2 = lambda * lambda;
  return lambda * ((6.0 * l2 + 16.0 * e) * l2 + 8.0 * e * e);
}

std::array<cplx, 6> turning_points(double phi, cplx A) {
  auto z = cubic_roots(phi, A);
  std::array<cplx, 6> out{};
  for (int k = 0; k < 3; ++k) {
    cplx r = std::sqrt(z[k]);
    // the root closest to the positive imaginary axis
    if (std::abs(std::arg(r) - kPi / 2) > std::abs(std::arg(-r) - kPi / 2)) r = -r;
    out[2 * k] = r;
    out[2 * k + 1] = -r;
  }
  return out;
}

std::array<cplx, 6> turning_points_tracked(double phi, cplx A,
                                           const std::array<cplx, 6>& prev) {
  auto z = track_roots({prev[0] * prev[0], prev[2] * prev[2], prev[4] * prev[4]},
                       cubic_roots(phi, A));
  std::array<cplx, 6> out{};
  for (int k = 0; k < 3; ++k) {
    cplx r = nearest_root(z[k], prev[2 * k]);
    out[2 * k] = r;
    out[2 * k + 1] = -r;
  }
  return out;
}

std::array<double, 3> initial_directions(double phi, cplx A, cplx lambda_j) {
  Local loc = local_model(phi, A, lambda_j);
  if (loc.m != 1) throw DomainError("initial_directions: turning point is not simple");
  double a = std::arg(std::sqrt(loc.D));
  std::array<double, 3> out{};
  for (int k = 0; k < 3; ++k) out[k] = (kPi / 2 + k * kPi - a) * 2.0 / 3.0;
  return out;
}

StokesCurve stokes_trace(double phi, cplx A, const std::array<cplx, 6>& tps,
                         int from, double theta, const TraceOptions& opt) {
  StokesCurve c;
  c.from = from;
  const cplx lj = tps[from];
  Local loc = local_model(phi, A, lj);

  double sep = min_dist_other(tps, lj, from, nullptr);
  double s0 = std::min(opt.start, 0.25 * sep);
  auto [F, mu] = start_integral(phi, A, lj, loc, s0, theta);
  cplx lam = lj + s0 * expi(theta);
  c.points = {lj, lam};
  c.max_level_error = std::abs(F.real());

  // orientation sign, fixed along the curve
  cplx dir0 = expi(theta);
  auto field = [&](cplx m) { return kI * std::conj(m) / std::abs(m); };
  double sigma = std::real(field(mu) * std::conj(dir0)) >= 0 ? 1.0 : -1.0;
  cplx dir = sigma * field(mu);

  double h = s0;
  bool probed = false;
  for (int step = 0; step < opt.max_steps; ++step) {
    int near = -1;
    double dnear = min_dist_other(tps, lam, from, &near);
    if (dnear < opt.capture) {
      c.points.push_back(tps[near]);
      c.to_point = near;
      return c;
    }
    double r = std::abs(lam);
    if (r >= opt.r_max) {
      c.to_ray = nearest_ray(std::arg(lam), nullptr);
      if (!probed) {
        c.probe_arg = std::arg(lam);
        nearest_ray(c.probe_arg, &c.ray_deviation);
      }
      return c;
    }
    double dself = std::abs(lam - lj);
    double hcap = std::min({opt.max_step, 0.3 * dnear, 0.5 * dself + s0});
    h = std::min(h, hcap);

    bool accepted = false;
    while (!accepted) {
      if (h < opt.min_step) {
        throw TraceError("stokes_trace: step collapse at lambda = (" +
                         fmt_sci(lam.real()) + ", " + fmt_sci(lam.imag()) +
                         ") after " + std::to_string(c.points.size()) + " points");
      }
      // midpoint predictor on the direction field
      cplx mu_mid = nearest_root(mu_inf_squared(phi, A, lam + 0.5 * h * dir),
                                 mu + mu_inf_squared_deriv(phi, A, lam) /
                                          (2.0 * mu) * (0.5 * h * dir));
      cplx dmid = sigma * field(mu_mid);
      cplx q = lam + h * dmid;
      auto [dF, mu_q] = segment_integral(phi, A, lam, q, mu);
      cplx Fq = F + dF;
      // projection back to Re F = 0, twice
      for (int it = 0; it < 2; ++it) {
        cplx dl = -Fq.real() * std::conj(mu_q) / std::norm(mu_q);
        q += dl;
        std::tie(dF, mu_q) = segment_integral(phi, A, lam, q, mu);
        Fq = F + dF;
      }
      cplx dnew = sigma * field(mu_q);
      double turn = std::abs(std::arg(dnew * std::conj(dir)));
      double drift = std::abs(Fq.real());
      if (turn > 0.1 || drift > 1e-8 || std::abs(q - lam) > 1.5 * h) {
        h *= 0.5;
        continue;
      }
      accepted = true;
      // probe crossing of |lambda| = r_probe
      if (!probed && std::abs(lam) < opt.r_probe && std::abs(q) >= opt.r_probe) {
        double a = std::abs(lam), b = std::abs(q);
        double s = (opt.r_probe - a) / (b - a);
        c.probe_arg = std::arg(lam + s * (q - lam));
        nearest_ray(c.probe_arg, &c.ray_deviation);
        probed = true;
      }
      lam = q;
      mu = mu_q;
      F = Fq;
      dir = dnew;
      c.points.push_back(lam);
      c.max_level_error = std::max(c.max_level_error, drift);
      if (turn < 0.03) h *= 1.5;
    }
  }
  throw TraceError("stokes_trace: step budget exhausted after " +
                   std::to_string(c.points.size()) + " points");
}

double level_error(double phi, cplx A, const std::vector<cplx>& poly) {
  if (poly.size() < 2) return 0.0;
  // first segment from the turning point: local substitution
  cplx lj = poly[0];
  Local loc = local_model(phi, A, lj);
  cplx d = poly[1] - lj;
  auto [F, mu] = start_integral(phi, A, lj, loc, std::abs(d), std::arg(d));
  double worst = std::abs(F.real());
  size_t last = poly.size() - 1;
  for (size_t i = 1; i + 1 < poly.size(); ++i) {
    cplx p = poly[i], q = poly[i + 1];
    if (i + 1 == last && std::abs(mu_inf_squared(phi, A, q)) < 1e-6) {
      // ends at a turning point: integrate from it backwards
      Local lq = local_model(phi, A, q);
      cplx back = p - q;
      auto [G, mu_p] = start_integral(phi, A, q, lq, std::abs(back), std::arg(back));
      // match branches at p
      if (std::abs(mu_p + mu) < std::abs(mu_p - mu)) G = -G;
      F -= G;
    } else {
      auto [dF, mq] = segment_integral(phi, A, p, q, mu);
      F += dF;
      mu = mq;
    }
    worst = std::max(worst, std::abs(F.real()));
  }
  return worst;
}

StokesGraph stokes_graph(double phi, cplx A, const TraceOptions& opt) {
  StokesGraph g;
  g.phi = phi;
  g.A = A;
  g.tps = turning_points(phi, A);
  for (int k = 0; k < 8; ++k) g.rays.push_back(kPi / 8 + k * kPi / 4);

  std::vector<int> reps;
  for (int j = 0; j < 6; ++j) {
    bool dup = false;
    for (int r : reps)
      if (std::abs(g.tps[r] - g.tps[j]) < 1e-7) dup = true;
    if (!dup) reps.push_back(j);
  }
  for (int j : reps) {
    Local loc = local_model(phi, A, g.tps[j]);
    double a = std::arg(std::sqrt(loc.D));
    int ndir = loc.m + 2;
    for (int k = 0; k < ndir; ++k) {
      double theta = (kPi / 2 + k * kPi - a) * 2.0 / ndir;
      StokesCurve c = stokes_trace(phi, A, g.tps, j, theta, opt);
      if (c.to_point >= 0) {
        cplx mid = c.points[c.points.size() / 2];
        bool dup = false;
        for (const auto& o : g.curves) {
          if (o.to_point < 0) continue;
          bool same_ends = (std::abs(g.tps[o.from] - g.tps[c.to_point]) < 1e-7 &&
                            std::abs(g.tps[o.to_point] - g.tps[c.from]) < 1e-7);
          if (same_ends && poly_dist(mid, o.points) < 1e-3) dup = true;
        }
        if (dup) continue;
      }
      g.curves.push_back(std::move(c));
    }
  }
  return g;
}

bool Adjacency::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::find(edges.begin(), edges.end(), std::pair{i, j}) != edges.end();
}

Adjacency graph_topology(const StokesGraph& g) {
  Adjacency a;
  for (const auto& c : g.curves) {
    if (c.to_point >= 0) {
      int i = c.from + 1, j = c.to_point + 1;
      if (i > j) std::swap(i, j);
      a.edges.emplace_back(i, j);
    } else if (c.to_ray >= 0) {
      a.rays.emplace_back(c.from + 1, c.to_ray);
    }
  }
  std::sort(a.edges.begin(), a.edges.end());
  std::sort(a.rays.begin(), a.rays.end());
  return a;
}

Adjacency mirror(const Adjacency& a) {
  Adjacency m;
  m.edges = a.edges;
  for (auto [j, k] : a.rays) m.rays.emplace_back(j, ((3 - k) % 8 + 8) % 8);
  std::sort(m.rays.begin(), m.rays.end());
  return m;
}

bool same_adjacency(const Adjacency& a, const Adjacency& b) {
  return a.edges == b.edges && a.rays == b.rays;
}

void write_svg(std::ostream& os, const StokesGraph& g, const SvgOptions& opt) {
  auto X = [&](cplx p) { return (p.real() - opt.x0) / (opt.x1 - opt.x0) * opt.width; };
  auto Y = [&](cplx p) { return (opt.y1 - p.imag()) / (opt.y1 - opt.y0) * opt.height; };
  os << std::setprecision(6);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
     << opt.width << "\" height=\"" << opt.height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  auto polyline = [&](const std::vector<cplx>& pts, const char* style) {
    os << "<polyline fill=\"none\" " << style << " points=\"";
    for (cplx p : pts) os << X(p) << ',' << Y(p) << ' ';
    os << "\"/>\n";
  };
  // rays
  double R = 2.0 * std::max({std::abs(opt.x0), std::abs(opt.x1), std::abs(opt.y0),
                             std::abs(opt.y1)});
  for (double r : g.rays)
    polyline({0.0, R * expi(r)}, "stroke=\"#bbbbbb\" stroke-dasharray=\"4,4\"");
  // cuts: preimages of [z5, z3] and [z1, 0] under lambda -> lambda^2
  auto z = cubic_roots(g.phi, g.A);
  for (auto [p, q, seed] : {std::tuple{z[2], z[1], g.tps[4]},
                            std::tuple{z[0], cplx{0.0}, g.tps[0]}}) {
    for (double sgn : {1.0, -1.0}) {
      std::vector<cplx> pts;
      cplx prev = sgn * seed;
      for (int i = 0; i <= 64; ++i) {
        cplx l = nearest_root(p + (q - p) * (i / 64.0), prev);
        pts.push_back(l);
        prev = l;
      }
      polyline(pts, "stroke=\"#cc3333\" stroke-width=\"2\" stroke-dasharray=\"2,2\"");
    }
  }
  for (const auto& c : g.curves) {
    polyline(c.points, "stroke=\"#1f4e99\" stroke-width=\"1.5\"");
    std::vector<cplx> neg;
    for (cplx p : c.points) neg.push_back(-p);
    polyline(neg, "stroke=\"#1f4e99\" stroke-width=\"1.5\" stroke-opacity=\"0.5\"");
  }
  for (int j = 0; j < 6; ++j) {
    os << "<circle cx=\"" << X(g.tps[j]) << "\" cy=\"" << Y(g.tps[j])
       << "\" r=\"4\" fill=\"black\"/>\n"
       << "<text x=\"" << X(g.tps[j]) + 6 << "\" y=\"" << Y(g.tps[j]) - 6
       << "\" font-size=\"12\">" << j + 1 << "</text>\n";
  }
  os << "</svg>\n";
}

std::string adjacency_json(const StokesGraph& g) {
  Adjacency a = graph_topology(g);
  std::ostringstream os;
  os << std::setprecision(17);
  os << "{\"phi\": " << g.phi << ", \"A\": [" << g.A.real() << ", " << g.A.imag()
     << "], \"turning_points\": [";
  for (int j = 0; j < 6; ++j)
    os << (j ? ", " : "") << "[" << g.tps[j].real() << ", " << g.tps[j].imag() << "]";
  os << "], \"edges\": [";
  for (size_t i = 0; i < a.edges.size(); ++i)
    os << (i ? ", " : "") << "[" << a.edges[i].first << ", " << a.edges[i].second << "]";
  os << "], \"rays\": [";
  for (size_t i = 0; i < a.rays.size(); ++i)
    os << (i ? ", " : "") << "{\"from\": " << a.rays[i].first
       << ", \"k\": " << a.rays[i].second << "}";
  os << "], \"curves\": [";
  for (size_t i = 0; i < g.curves.size(); ++i) {
    const auto& c = g.curves[i];
    os << (i ? ", " : "") << "{\"from\": " << c.from + 1 << ", \"to_point\": "
       << (c.to_point >= 0 ? c.to_point + 1 : 0) << ", \"to_ray\": " << c.to_ray
       << ", \"probe_arg\": " << c.probe_arg
       << ", \"max_level_error\": " << c.max_level_error
       << ", \"points\": " << c.points.size() << "}";
  }
  os << "]}";
  return os.str();
}

}  // namespace pivasym
