#include "qmeter/json_io.hpp"

#include <cmath>

namespace qmeter {

namespace {

const Json& require(const Json& j, const char* key, const char* context) {
  if (!j.contains(key)) {
    throw ConfigError(std::string(context) + ": missing field '" + key + "'");
  }
  return j.at(key);
}

double require_number(const Json& j, const char* key, const char* context) {
  const Json& v = require(j, key, context);
  if (!v.is_number()) {
    throw ConfigError(std::string(context) + ": field '" + key + "' must be a number");
  }
  return v.get<double>();
}

std::string require_string(const Json& j, const char* key, const char* context) {
  const Json& v = require(j, key, context);
  if (!v.is_string()) {
    throw ConfigError(std::string(context) + ": field '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

Vec3 vec3_from_json(const Json& j, const char* key, const char* context) {
  const Json& v = require(j, key, context);
  if (!v.is_array() || v.size() != 3) {
    throw ConfigError(std::string(context) + ": field '" + key + "' must be a 3-vector");
  }
  return Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
}

Json vec3_to_json(const Vec3& v) {
  return Json::array({v.x(), v.y(), v.z()});
}

}  // namespace

SpinSystem system_from_json(const Json& j) {
  const Json& sites_json = require(j, "sites", "system");
  if (!sites_json.is_array() || sites_json.empty()) {
    throw ConfigError("system: 'sites' must be a non-empty array");
  }
  std::vector<Site> sites;
  for (const Json& sj : sites_json) {
    Site s;
    s.label = require_string(sj, "label", "system.sites");
    const std::string role = require_string(sj, "role", "system.sites");
    if (role == "electron") {
      s.role = SpinRole::Electron;
    } else if (role == "nucleus") {
      s.role = SpinRole::Nucleus;
    } else {
      throw ConfigError("system.sites: role must be 'electron' or 'nucleus', got '" + role + "'");
    }
    s.multiplicity = static_cast<int>(require_number(sj, "multiplicity", "system.sites"));
    sites.push_back(std::move(s));
  }
  return SpinSystem(std::move(sites));
}

Json system_to_json(const SpinSystem& system) {
  Json sites = Json::array();
  for (const Site& s : system.sites()) {
    sites.push_back({{"label", s.label},
                     {"role", s.role == SpinRole::Electron ? "electron" : "nucleus"},
                     {"multiplicity", s.multiplicity}});
  }
  return Json{{"sites", sites}};
}

HamiltonianSpec hamiltonian_from_json(const Json& j, const SpinSystem& system) {
  const Json& terms_json = require(j, "terms", "hamiltonian");
  if (!terms_json.is_array()) {
    throw ConfigError("hamiltonian: 'terms' must be an array");
  }
  HamiltonianSpec spec;
  for (const Json& tj : terms_json) {
    const std::string type = require_string(tj, "type", "hamiltonian.terms");
    if (type == "exchange") {
      ExchangeTerm t;
      t.j_uT = require_number(tj, "J_uT", "exchange term");
      t.e1 = system.index_of(require_string(tj, "e1", "exchange term"));
      t.e2 = system.index_of(require_string(tj, "e2", "exchange term"));
      spec.terms.emplace_back(t);
    } else if (type == "hyperfine") {
      HyperfineTerm t;
      const Json& a = require(tj, "A_uT", "hyperfine term");
      if (a.is_array() && a.size() == 3 && a[0].is_array()) {
        for (int r = 0; r < 3; ++r) {
          if (!a[r].is_array() || a[r].size() != 3) {
            throw ConfigError("hyperfine term: 'A_uT' tensor must be 3x3");
          }
          for (int c = 0; c < 3; ++c) {
            if (!a[r][c].is_number()) {
              throw ConfigError("hyperfine term: 'A_uT' tensor entries must be real numbers");
            }
            t.a_uT(r, c) = a[r][c].get<double>();
          }
        }
      } else if (a.is_array() && a.size() == 3) {
        t.a_uT = Vec3(a[0].get<double>(), a[1].get<double>(), a[2].get<double>()).asDiagonal();
      } else {
        throw ConfigError("hyperfine term: 'A_uT' must be a 3-vector or a 3x3 tensor");
      }
      t.electron = system.index_of(require_string(tj, "electron", "hyperfine term"));
      t.nucleus = system.index_of(require_string(tj, "nucleus", "hyperfine term"));
      spec.terms.emplace_back(t);
    } else if (type == "zeeman") {
      ZeemanTerm t;
      t.b_uT = vec3_from_json(tj, "B_uT", "zeeman term");
      if (tj.contains("electrons")) {
        for (const Json& label : tj.at("electrons")) {
          t.electrons.push_back(system.index_of(label.get<std::string>()));
        }
      }
      spec.terms.emplace_back(t);
    } else if (type == "dipolar") {
      DipolarTerm t;
      t.v_uT = require_number(tj, "V_uT", "dipolar term");
      if (tj.contains("axis")) t.axis = vec3_from_json(tj, "axis", "dipolar term");
      t.e1 = system.index_of(require_string(tj, "e1", "dipolar term"));
      t.e2 = system.index_of(require_string(tj, "e2", "dipolar term"));
      spec.terms.emplace_back(t);
    } else {
      throw ConfigError("hamiltonian.terms: unknown term type '" + type + "'");
    }
  }
  return spec;
}

Json hamiltonian_to_json(const HamiltonianSpec& spec, const SpinSystem& system) {
  Json terms = Json::array();
  const auto label = [&](int idx) { return system.site(idx).label; };
  for (const HamiltonianTerm& term : spec.terms) {
    if (const auto* ex = std::get_if<ExchangeTerm>(&term)) {
      terms.push_back(
          {{"type", "exchange"}, {"J_uT", ex->j_uT}, {"e1", label(ex->e1)}, {"e2", label(ex->e2)}});
    } else if (const auto* hf = std::get_if<HyperfineTerm>(&term)) {
      Json a;
      if (hf->a_uT.isDiagonal(0.0)) {
        a = Json::array({hf->a_uT(0, 0), hf->a_uT(1, 1), hf->a_uT(2, 2)});
      } else {
        a = Json::array();
        for (int r = 0; r < 3; ++r) {
          a.push_back(Json::array({hf->a_uT(r, 0), hf->a_uT(r, 1), hf->a_uT(r, 2)}));
        }
      }
      terms.push_back({{"type", "hyperfine"},
                       {"A_uT", a},
                       {"electron", label(hf->electron)},
                       {"nucleus", label(hf->nucleus)}});
    } else if (const auto* ze = std::get_if<ZeemanTerm>(&term)) {
      Json t{{"type", "zeeman"}, {"B_uT", vec3_to_json(ze->b_uT)}};
      if (!ze->electrons.empty()) {
        Json electrons = Json::array();
        for (int e : ze->electrons) electrons.push_back(label(e));
        t["electrons"] = electrons;
      }
      terms.push_back(t);
    } else if (const auto* dp = std::get_if<DipolarTerm>(&term)) {
      terms.push_back({{"type", "dipolar"},
                       {"V_uT", dp->v_uT},
                       {"axis", vec3_to_json(dp->axis)},
                       {"e1", label(dp->e1)},
                       {"e2", label(dp->e2)}});
    }
  }
  return Json{{"terms", terms}};
}

OpenSystemModel open_system_from_json(const Json& j) {
  OpenSystemModel model;
  if (j.contains("tau_c_s")) {
    const Json& tau = j.at("tau_c_s");
    if (tau.is_string() && (tau == "inf" || tau == "infinity")) {
      model.tau_c_s = std::numeric_limits<double>::infinity();
    } else if (tau.is_number()) {
      model.tau_c_s = tau.get<double>();
    } else {
      throw ConfigError("open_system: 'tau_c_s' must be a number or \"inf\"");
    }
  }
  if (j.contains("k_back_per_s")) model.k_back_per_s = j.at("k_back_per_s").get<double>();
  if (j.contains("k_prot_per_s")) model.k_prot_per_s = j.at("k_prot_per_s").get<double>();
  if (j.contains("decoherence")) {
    const std::string mode = j.at("decoherence").get<std::string>();
    if (mode == "local-dephasing") {
      model.decoherence = Decoherence::LocalDephasing;
    } else if (mode == "collapse") {
      model.decoherence = Decoherence::Collapse;
    } else {
      throw ConfigError("open_system: decoherence must be 'local-dephasing' or 'collapse', got '" +
                        mode + "'");
    }
  }
  if (model.k_back_per_s < 0.0 || model.k_prot_per_s < 0.0) {
    throw ConfigError("open_system: rates must be >= 0");
  }
  if (!(model.tau_c_s > 0.0)) {
    throw ConfigError("open_system: 'tau_c_s' must be positive");
  }
  return model;
}

Json open_system_to_json(const OpenSystemModel& model) {
  Json j;
  if (std::isinf(model.tau_c_s)) {
    j["tau_c_s"] = "inf";
  } else {
    j["tau_c_s"] = model.tau_c_s;
  }
  j["k_back_per_s"] = model.k_back_per_s;
  j["k_prot_per_s"] = model.k_prot_per_s;
  j["decoherence"] =
      model.decoherence == Decoherence::Collapse ? "collapse" : "local-dephasing";
  return j;
}

KineticScheme scheme_from_json(const Json& j) {
  KineticScheme s;
  const Json& levels = require(j, "levels", "scheme");
  if (!levels.is_array() || levels.empty()) {
    throw ConfigError("scheme: 'levels' must be a non-empty array");
  }
  for (const Json& l : levels) s.levels.push_back(l.get<std::string>());

  const Json& edges = require(j, "edges", "scheme");
  for (const Json& ej : edges) {
    RateEdge e;
    e.from = require_string(ej, "from", "scheme.edges");
    e.to = require_string(ej, "to", "scheme.edges");
    e.rate_per_s = require_number(ej, "rate_per_s", "scheme.edges");
    s.edges.push_back(std::move(e));
  }
  if (j.contains("pump")) {
    PumpEdge p;
    const Json& pj = j.at("pump");
    p.from = require_string(pj, "from", "scheme.pump");
    p.to = require_string(pj, "to", "scheme.pump");
    p.base_rate_per_s = require_number(pj, "base_rate_per_s", "scheme.pump");
    p.n_bar = require_number(pj, "n_bar", "scheme.pump");
    s.pump = p;
  }
  if (j.contains("recycle")) {
    for (const Json& rj : j.at("recycle")) {
      RecycleRule r;
      r.absorbing_level = require_string(rj, "absorbing_level", "scheme.recycle");
      r.to = require_string(rj, "to", "scheme.recycle");
      s.recycle.push_back(std::move(r));
    }
  }
  if (j.contains("signal_level")) s.signal_level = j.at("signal_level").get<std::string>();
  return s;
}

Json scheme_to_json(const KineticScheme& scheme) {
  Json j;
  j["levels"] = scheme.levels;
  Json edges = Json::array();
  for (const RateEdge& e : scheme.edges) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"rate_per_s", e.rate_per_s}});
  }
  j["edges"] = edges;
  if (scheme.pump) {
    j["pump"] = {{"from", scheme.pump->from},
                 {"to", scheme.pump->to},
                 {"base_rate_per_s", scheme.pump->base_rate_per_s},
                 {"n_bar", scheme.pump->n_bar}};
  }
  if (!scheme.recycle.empty()) {
    Json recycle = Json::array();
    for (const RecycleRule& r : scheme.recycle) {
      recycle.push_back({{"absorbing_level", r.absorbing_level}, {"to", r.to}});
    }
    j["recycle"] = recycle;
  }
  if (scheme.signal_level) j["signal_level"] = *scheme.signal_level;
  return j;
}

std::string fnv1a_hex(const std::string& text) {
  uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace qmeter
