#include "permanence/json_io.hpp"

#include <stdexcept>
#include <string>

namespace permanence {

using nlohmann::json;

json spec_to_json(const SystemSpec& spec) {
  if (spec.family.tag == FamilyTag::Custom) {
    throw std::invalid_argument("custom families are not serializable");
  }
  json j;
  j["n"] = spec.n;
  j["family"] = family_name(spec.family.tag);
  json b = json::array();
  for (int i = 0; i < spec.n; ++i) {
    json row = json::array();
    for (int k = 0; k < spec.n; ++k) row.push_back(spec.B(i, k));
    b.push_back(row);
  }
  j["b"] = b;
  json c = json::array();
  for (int i = 0; i < spec.n; ++i) c.push_back(spec.c[i]);
  j["c"] = c;
  return j;
}

SystemSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("spec must be a JSON object");
  for (const char* key : {"n", "family", "b", "c"}) {
    if (!j.contains(key)) {
      throw std::invalid_argument(std::string("spec is missing required key \"") + key + "\"");
    }
  }
  SystemSpec spec;
  if (!j["n"].is_number_integer()) throw std::invalid_argument("\"n\" must be an integer");
  spec.n = j["n"].get<int>();
  if (spec.n < 1) throw std::invalid_argument("\"n\" must be at least 1");

  auto tag = family_from_name(j["family"].get<std::string>());
  if (!tag) {
    throw std::invalid_argument("unknown family \"" + j["family"].get<std::string>() + "\"");
  }
  spec.family.tag = *tag;

  const json& b = j["b"];
  if (!b.is_array() || static_cast<int>(b.size()) != spec.n) {
    throw std::invalid_argument("\"b\" must be an n x n array of arrays");
  }
  spec.B = Mat(spec.n, spec.n);
  for (int i = 0; i < spec.n; ++i) {
    if (!b[i].is_array() || static_cast<int>(b[i].size()) != spec.n) {
      throw std::invalid_argument("\"b\" must be an n x n array of arrays");
    }
    for (int k = 0; k < spec.n; ++k) {
      if (!b[i][k].is_number()) throw std::invalid_argument("\"b\" entries must be numbers");
      spec.B(i, k) = b[i][k].get<double>();
    }
  }

  const json& c = j["c"];
  if (!c.is_array() || static_cast<int>(c.size()) != spec.n) {
    throw std::invalid_argument("\"c\" must be an array of length n");
  }
  spec.c = Vec(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    if (!c[i].is_number()) throw std::invalid_argument("\"c\" entries must be numbers");
    spec.c[i] = c[i].get<double>();
  }
  return spec;
}

json equilibrium_to_json(const Equilibrium& eq) {
  json j;
  json support = json::array();
  for (int i : eq.support) support.push_back(i + 1);
  j["support"] = support;
  json x = json::array();
  for (int i = 0; i < eq.x.size(); ++i) x.push_back(eq.x[i]);
  j["x"] = x;
  json eigs = json::object();
  for (const auto& [idx, val] : eq.external_eigs) eigs[std::to_string(idx + 1)] = val;
  j["external_eigs"] = eigs;
  return j;
}

json equilibria_to_json(const std::vector<Equilibrium>& eqs) {
  json arr = json::array();
  for (const auto& eq : eqs) arr.push_back(equilibrium_to_json(eq));
  return arr;
}

json sign_configuration_to_json(const SignConfiguration& cfg) {
  json j;
  json g = json::object();
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      if (i == k) continue;
      g[std::to_string(i + 1) + std::to_string(k + 1)] =
          std::string(1, sign_char(cfg.gamma_signs[i][k]));
    }
  }
  j["gamma"] = g;
  json b = json::object();
  b["12"] = std::string(1, sign_char(cfg.beta_signs[pair_index(0, 1)]));
  b["13"] = std::string(1, sign_char(cfg.beta_signs[pair_index(0, 2)]));
  b["23"] = std::string(1, sign_char(cfg.beta_signs[pair_index(1, 2)]));
  j["beta"] = b;
  json p = json::object();
  for (int k = 0; k < 3; ++k) {
    if (cfg.planar_quantities[k]) {
      p[std::to_string(k + 1)] = *cfg.planar_quantities[k];
    }
  }
  j["planar_quantities"] = p;
  j["nullcline_stable"] = cfg.nullcline_stable;
  j["degenerate_solve"] = cfg.degenerate_solve;
  return j;
}

json verdict_to_json(const Verdict& v) {
  json j;
  j["outcome"] = outcome_name(v.outcome);
  if (v.certificate) {
    json nu = json::array();
    for (int i = 0; i < v.certificate->nu.size(); ++i) nu.push_back(v.certificate->nu[i]);
    j["nu"] = nu;
    j["margin"] = v.certificate->margin;
    j["direction"] =
        v.certificate->direction == Direction::Permanence ? "Permanence" : "Impermanence";
  } else {
    j["nu"] = nullptr;
    j["margin"] = nullptr;
  }
  j["rho"] = v.rho_value ? json(*v.rho_value) : json(nullptr);
  j["evidence"] = v.evidence;
  j["notes"] = v.notes;
  return j;
}

}  // namespace permanence
