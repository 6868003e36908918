#include "pivasym/io.hpp"

#include <json.hpp>

namespace pivasym {

using nlohmann::json;

namespace {

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

cplx jc(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw DomainError("json: expected a number or [re, im], got " + j.dump());
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw DomainError(std::string("json: missing field '") + key + "'");
  return j.at(key);
}

json periods_json(const Periods& p) {
  json j;
  j["frame"] = p.frame == Frame::z ? "z" : "zeta";
  j["phi"] = p.phi;
  j["omega_a"] = cj(p.omega_a);
  j["omega_b"] = cj(p.omega_b);
  j["tau"] = cj(p.tau);
  j["J_a"] = cj(p.J_a);
  j["J_b"] = cj(p.J_b);
  json ex = json::object();
  for (const auto& [k, v] : p.extras) ex[k] = cj(v);
  j["extras"] = ex;
  return j;
}

json monodromy_json(const MonodromyData& md) {
  json j;
  j["alpha"] = cj(md.alpha);
  j["beta"] = cj(md.beta);
  json s = json::array();
  for (cplx v : md.s) s.push_back(cj(v));
  j["s"] = s;
  return j;
}

MonodromyData monodromy_of(const json& j) {
  MonodromyData md;
  md.alpha = jc(field(j, "alpha"));
  md.beta = jc(field(j, "beta"));
  const json& s = field(j, "s");
  if (!s.is_array() || s.size() != 4) throw DomainError("json: 's' must hold four entries");
  for (int k = 0; k < 4; ++k) md.s[k] = jc(s[k]);
  return md;
}

}  // namespace

std::string to_json(const CurveSpec& spec) {
  json j;
  j["phi"] = spec.phi;
  j["A"] = cj(spec.A);
  j["frame"] = spec.frame == Frame::z ? "z" : "zeta";
  j["z1"] = cj(spec.z1);
  j["z3"] = cj(spec.z3);
  j["z5"] = cj(spec.z5);
  j["b_sign"] = spec.b_sign;
  return j.dump(2);
}

std::string to_json(const Periods& p) { return periods_json(p).dump(2); }

std::string to_json(const MonodromyData& md) { return monodromy_json(md).dump(2); }

std::string to_json(const AsymptoticSolution& as) {
  json j;
  j["phi"] = as.phi;
  j["n"] = as.n;
  j["monodromy"] = monodromy_json(as.monodromy);
  j["A_phi"] = cj(as.A_phi);
  j["chi"] = cj(as.chi);
  j["chi_raw"] = cj(as.chi_raw);
  j["branch_l"] = cj(as.branch_l);
  j["log_gen"] = cj(as.log_gen);
  j["Gamma"] = cj(as.Gamma_ab);
  j["C_a"] = cj(as.C_a);
  j["C_b"] = cj(as.C_b);
  j["periods"] = periods_json(as.ep.periods);
  return j.dump(2);
}

MonodromyData monodromy_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("json: ") + e.what());
  }
  return monodromy_of(j);
}

AsymptoticSolution asymptotic_from_json(const std::string& text, const Tolerances& tol) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("json: ") + e.what());
  }
  AsymptoticSolution as;
  as.phi = field(j, "phi").get<double>();
  as.n = field(j, "n").get<int>();
  as.monodromy = monodromy_of(field(j, "monodromy"));
  as.A_phi = jc(field(j, "A_phi"));
  as.ep = make_elliptic_P(as.phi, as.A_phi, tol);
  as.chi = jc(field(j, "chi"));
  as.chi_raw = jc(field(j, "chi_raw"));
  as.branch_l = jc(field(j, "branch_l"));
  as.log_gen = jc(field(j, "log_gen"));
  as.Gamma_ab = jc(field(j, "Gamma"));
  as.C_a = jc(field(j, "C_a"));
  as.C_b = jc(field(j, "C_b"));
  return as;
}

}  // namespace pivasym
