#include "eulerperm/config.hpp"

#include <fstream>

#include "eulerperm/error.hpp"

namespace eulerperm {

namespace {

template <class T>
void take(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidInput(std::string("config: wrong type for '") + key + "'");
  }
}

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> known, const char* where) {
  if (!j.is_object()) throw InvalidInput(std::string("config: ") + where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw InvalidInput(std::string("config: unknown key '") + key + "' in " + where);
  }
}

}  // namespace

SolverConfig config_from_json(const nlohmann::json& j, SolverConfig cfg) {
  reject_unknown(j,
                 {"n", "L", "dt", "cfl_safety", "t_end", "dealias", "diagnostics_every", "snapshot_every",
                  "reproject_every", "mode", "family", "initial_file", "params"},
                 "top level");
  take(j, "n", cfg.n);
  take(j, "L", cfg.box_length);
  if (j.contains("dt")) {
    if (j.at("dt").is_null() || (j.at("dt").is_string() && j.at("dt") == "auto")) {
      cfg.dt.reset();
    } else {
      double dt = 0.0;
      take(j, "dt", dt);
      cfg.dt = dt;
    }
  }
  take(j, "cfl_safety", cfg.cfl_safety);
  take(j, "t_end", cfg.t_end);
  take(j, "dealias", cfg.dealias);
  take(j, "diagnostics_every", cfg.diagnostics_every);
  take(j, "snapshot_every", cfg.snapshot_every);
  take(j, "reproject_every", cfg.reproject_every);
  if (j.contains("mode")) {
    std::string m;
    take(j, "mode", m);
    cfg.mode = parse_formulation(m);
  }
  take(j, "family", cfg.family);
  take(j, "initial_file", cfg.initial_file);
  if (j.contains("params")) {
    const auto& p = j.at("params");
    reject_unknown(p, {"amplitude", "width", "ring_radius", "ring_offset", "perturbation", "mirror"}, "params");
    take(p, "amplitude", cfg.params.amplitude);
    take(p, "width", cfg.params.width);
    take(p, "ring_radius", cfg.params.ring_radius);
    take(p, "ring_offset", cfg.params.ring_offset);
    take(p, "perturbation", cfg.params.perturbation);
    take(p, "mirror", cfg.params.mirror);
  }
  return cfg;
}

SolverConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("config " + path + ": " + e.what());
  }
  return config_from_json(j);
}

nlohmann::json config_to_json(const SolverConfig& cfg) {
  nlohmann::json j;
  j["n"] = cfg.n;
  j["L"] = cfg.box_length;
  j["dt"] = cfg.dt ? nlohmann::json(*cfg.dt) : nlohmann::json("auto");
  j["cfl_safety"] = cfg.cfl_safety;
  j["t_end"] = cfg.t_end;
  j["dealias"] = cfg.dealias;
  j["diagnostics_every"] = cfg.diagnostics_every;
  j["snapshot_every"] = cfg.snapshot_every;
  j["reproject_every"] = cfg.reproject_every;
  j["mode"] = to_string(cfg.mode);
  j["family"] = cfg.family;
  j["initial_file"] = cfg.initial_file;
  j["params"] = {{"amplitude", cfg.params.amplitude},       {"width", cfg.params.width},
                 {"ring_radius", cfg.params.ring_radius},   {"ring_offset", cfg.params.ring_offset},
                 {"perturbation", cfg.params.perturbation}, {"mirror", cfg.params.mirror}};
  return j;
}

}  // namespace eulerperm
