#include "fluxks/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fluxks {

using nlohmann::json;

std::string format17(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("config file not found or unreadable: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("config parse error in " + path.string() + ": " + e.what());
  }
  return j;
}

double need_number(const json& j, const char* key) {
  if (!j.contains(key))
    throw ValidationError(std::string("config: missing field '") + key + "'");
  if (!j[key].is_number())
    throw ValidationError(std::string("config: field '") + key + "' must be a number");
  return j[key].get<double>();
}

int need_int(const json& j, const char* key) {
  if (!j.contains(key))
    throw ValidationError(std::string("config: missing field '") + key + "'");
  if (!j[key].is_number_integer())
    throw ValidationError(std::string("config: field '") + key + "' must be an integer");
  return j[key].get<int>();
}

double opt_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw ValidationError(std::string("config: field '") + key + "' must be a number");
  return j[key].get<double>();
}

int opt_int(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer())
    throw ValidationError(std::string("config: field '") + key + "' must be an integer");
  return j[key].get<int>();
}

U0Spec::Family parse_family(const json& u0) {
  if (!u0.contains("family") || !u0["family"].is_string())
    throw ValidationError("config: u0.family must be \"cosine\" or \"bump\"");
  const std::string f = u0["family"].get<std::string>();
  if (f == "cosine") return U0Spec::Family::Cosine;
  if (f == "bump") return U0Spec::Family::Bump;
  throw ValidationError("config: unknown u0.family '" + f + "'");
}

const char* family_name(U0Spec::Family f) {
  return f == U0Spec::Family::Cosine ? "cosine" : "bump";
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path.string());
  return out;
}

}  // namespace

SimConfig load_sim_config(const std::filesystem::path& path) {
  const json j = parse_file(path);
  SimConfig cfg;
  cfg.dim = need_int(j, "n");
  cfg.radius = need_number(j, "R");
  cfg.ncells = need_int(j, "N");
  cfg.chi = need_number(j, "chi");
  cfg.t_end = need_number(j, "t_end");
  cfg.cfl = opt_number(j, "cfl", cfg.cfl);
  cfg.blowup_factor = opt_number(j, "blowup_factor", cfg.blowup_factor);
  cfg.dt_min = opt_number(j, "dt_min", cfg.dt_min);
  cfg.sample_stride = opt_int(j, "sample_stride", cfg.sample_stride);
  if (!j.contains("u0") || !j["u0"].is_object())
    throw ValidationError("config: missing object field 'u0'");
  const json& u0 = j["u0"];
  cfg.u0.family = parse_family(u0);
  cfg.u0.mass = need_number(u0, "mass");
  cfg.u0.amplitude = opt_number(u0, "amplitude", cfg.u0.amplitude);
  cfg.u0.k = opt_int(u0, "k", cfg.u0.k);
  return cfg;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  const json j = parse_file(path);
  SweepSpec spec;
  spec.dim = need_int(j, "n");
  spec.radius = need_number(j, "R");
  spec.ncells = need_int(j, "N");
  auto need_array = [&](const char* key, std::vector<double>& dst) {
    if (!j.contains(key) || !j[key].is_array() || j[key].empty())
      throw ValidationError(std::string("sweep config: '") + key +
                            "' must be a non-empty array");
    for (const auto& v : j[key]) {
      if (!v.is_number())
        throw ValidationError(std::string("sweep config: '") + key +
                              "' entries must be numbers");
      dst.push_back(v.get<double>());
    }
  };
  need_array("chi", spec.chis);
  need_array("mass", spec.masses);
  spec.t_end = opt_number(j, "t_end", spec.t_end);
  spec.cfl = opt_number(j, "cfl", spec.cfl);
  spec.blowup_factor = opt_number(j, "blowup_factor", spec.blowup_factor);
  spec.dt_min = opt_number(j, "dt_min", spec.dt_min);
  spec.sample_stride = opt_int(j, "sample_stride", spec.sample_stride);
  if (j.contains("u0")) {
    const json& u0 = j["u0"];
    spec.family = parse_family(u0);
    spec.amplitude = opt_number(u0, "amplitude", spec.amplitude);
    spec.k = opt_int(u0, "k", spec.k);
  }
  return spec;
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           std::span<const DiagnosticsRecord> records) {
  std::ofstream out = open_out(path);
  out << "t,mass,mu,min_u,max_u,min_ur,max_abs_ur,max_z,lower_envelope,lp2,lp4,dt,"
         "max_zplus_hist,ur_over_zplus_ratio\n";
  for (const DiagnosticsRecord& r : records) {
    out << format17(r.t) << ',' << format17(r.mass_value) << ',' << format17(r.mu) << ','
        << format17(r.min_u) << ',' << format17(r.max_u) << ',' << format17(r.min_ur) << ','
        << format17(r.max_abs_ur) << ',' << format17(r.max_z) << ','
        << format17(r.lower_envelope) << ',' << format17(r.lp2) << ',' << format17(r.lp4)
        << ',' << format17(r.dt_current) << ',' << format17(r.max_zplus_history) << ','
        << format17(r.ur_over_zplus_ratio) << '\n';
  }
}

void write_final_state_csv(const std::filesystem::path& path, const RadialGrid& grid,
                           std::span<const double> u) {
  std::ofstream out = open_out(path);
  out << "r,u\n";
  for (int i = 0; i < grid.ncells; ++i)
    out << format17(grid.centers[i]) << ',' << format17(u[i]) << '\n';
}

void write_summary_json(const std::filesystem::path& path, const SimConfig& config,
                        const RunResult& result) {
  json j;
  j["classification"] = to_string(result.classification.label);
  j["reason"] = result.classification.reason;
  j["peak_ratio"] = result.classification.peak_ratio;
  j["t_final"] = result.classification.t_final;
  j["termination"] = to_string(result.termination);
  j["steps_total"] = result.steps_total;
  j["steps_rejected"] = result.steps_rejected;
  j["wall_seconds"] = result.wall_seconds;
  j["initial"] = {{"mass", result.initial_mass},
                  {"max_u", result.initial_max_u},
                  {"min_u", result.initial_min_u}};
  j["final"] = {{"t", result.final_state.t},
                {"mu", result.final_state.mu},
                {"peak_max_u", result.peak_max_u}};
  j["config"] = {{"n", config.dim},
                 {"R", config.radius},
                 {"N", config.ncells},
                 {"chi", config.chi},
                 {"t_end", config.t_end},
                 {"cfl", config.cfl},
                 {"blowup_factor", config.blowup_factor},
                 {"dt_min", config.dt_min},
                 {"sample_stride", config.sample_stride},
                 {"u0",
                  {{"family", family_name(config.u0.family)},
                   {"mass", config.u0.mass},
                   {"amplitude", config.u0.amplitude},
                   {"k", config.u0.k}}}};
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows) {
  std::ofstream out = open_out(path);
  out << "n,chi,mass,m_c,classification,peak_ratio,t_final\n";
  for (const SweepRow& r : rows) {
    out << r.dim << ',' << format17(r.chi) << ',' << format17(r.mass_target) << ','
        << format17(r.m_c) << ',' << to_string(r.result.label) << ','
        << format17(r.result.peak_ratio) << ',' << format17(r.result.t_final) << '\n';
  }
}

void write_residual_csv(const std::filesystem::path& path, const ResidualReport& report) {
  std::ofstream out = open_out(path);
  out << "level,ncells,snap_spacing,form_equiv,parab,qarab,zeq,"
         "order_form_equiv,order_parab,order_qarab,order_zeq\n";
  for (size_t l = 0; l < report.levels.size(); ++l) {
    const IdentityResiduals& r = report.levels[l];
    out << l << ',' << r.ncells << ',' << format17(r.snap_spacing) << ','
        << format17(r.form_equiv) << ',' << format17(r.parab) << ',' << format17(r.qarab)
        << ',' << format17(r.zeq);
    if (l >= 1) {
      const auto& o = report.orders[l - 1];
      for (double v : o) out << ',' << format17(v);
    } else {
      out << ",,,,";
    }
    out << '\n';
  }
}

}  // namespace fluxks
