#include "irscep/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace irscep {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& why) {
  throw std::invalid_argument("scenario: " + where + ": " + why);
}

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!known.count(item.key())) fail(where, "unknown key '" + item.key() + "'");
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing required key '") + key + "'");
  return *it;
}

int get_int(const json& v, const std::string& where) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) fail(where, "expected an integer");
  return v.get<int>();
}

double get_double(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

std::vector<double> get_double_array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(get_double(e, where));
  return out;
}

BetaSpec parse_beta(const json& b) {
  reject_unknown(b, {"intra_cell", "inter_cell", "bs_irs", "irs_user", "bu", "bi", "iu"},
                 "config.beta");
  BetaSpec beta;
  if (b.contains("intra_cell")) beta.intra_cell = get_double(b["intra_cell"], "config.beta.intra_cell");
  if (b.contains("inter_cell")) beta.inter_cell = get_double(b["inter_cell"], "config.beta.inter_cell");
  if (b.contains("bs_irs")) beta.bs_irs = get_double(b["bs_irs"], "config.beta.bs_irs");
  if (b.contains("irs_user")) beta.irs_user = get_double(b["irs_user"], "config.beta.irs_user");
  if (b.contains("bu")) beta.bu = get_double_array(b["bu"], "config.beta.bu");
  if (b.contains("bi")) beta.bi = get_double_array(b["bi"], "config.beta.bi");
  if (b.contains("iu")) beta.iu = get_double_array(b["iu"], "config.beta.iu");
  return beta;
}

SystemConfig parse_config(const json& c) {
  reject_unknown(c,
                 {"L", "K", "N_T", "M", "N_BS", "N_IRS", "T", "B", "P_T", "sigma_w2",
                  "amplitude_mode", "psi_init", "irs_enabled", "seed", "mc_trials",
                  "beta"},
                 "config");
  SystemConfig cfg;
  cfg.cells = get_int(require(c, "L", "config"), "config.L");
  cfg.users_per_cell = get_int(require(c, "K", "config"), "config.K");
  cfg.bs_antennas = get_int(require(c, "N_T", "config"), "config.N_T");
  cfg.irs_elements = get_int(require(c, "M", "config"), "config.M");
  cfg.bs_alphabet = get_int(require(c, "N_BS", "config"), "config.N_BS");
  cfg.irs_alphabet = get_int(require(c, "N_IRS", "config"), "config.N_IRS");
  cfg.bs_memory = get_int(require(c, "T", "config"), "config.T");
  cfg.irs_memory = get_int(require(c, "B", "config"), "config.B");
  cfg.total_power = get_double(require(c, "P_T", "config"), "config.P_T");
  cfg.noise_power = get_double(require(c, "sigma_w2", "config"), "config.sigma_w2");
  const json& seed = require(c, "seed", "config");
  if (!seed.is_number_unsigned() &&
      !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0))
    fail("config.seed", "expected an unsigned integer");
  cfg.seed = seed.get<std::uint64_t>();
  cfg.mc_trials = get_int(require(c, "mc_trials", "config"), "config.mc_trials");
  if (c.contains("amplitude_mode")) {
    if (!c["amplitude_mode"].is_string()) fail("config.amplitude_mode", "expected a string");
    cfg.amplitude_mode = amplitude_mode_from_string(c["amplitude_mode"].get<std::string>());
  }
  if (c.contains("psi_init")) {
    const std::string v = c["psi_init"].is_string() ? c["psi_init"].get<std::string>() : "";
    if (v == "zero-phase")
      cfg.psi_init = PsiInit::kZeroPhase;
    else if (v == "random")
      cfg.psi_init = PsiInit::kRandom;
    else
      fail("config.psi_init", "expected 'zero-phase' or 'random'");
  }
  if (c.contains("irs_enabled")) {
    if (!c["irs_enabled"].is_boolean()) fail("config.irs_enabled", "expected a boolean");
    cfg.irs_enabled = c["irs_enabled"].get<bool>();
  }
  if (c.contains("beta")) {
    if (!c["beta"].is_object()) fail("config.beta", "expected an object");
    cfg.beta = parse_beta(c["beta"]);
  }
  return cfg;
}

SchemeSpec parse_scheme(const json& s, const std::string& where) {
  SchemeSpec spec;
  if (s.is_string()) {
    spec.kind = scheme_kind_from_string(s.get<std::string>());
    return spec;
  }
  if (!s.is_object()) fail(where, "expected a scheme name or object");
  reject_unknown(s, {"kind", "rounds", "rounding_draws", "sdp_tol", "sdp_max_iter",
                     "rank1_threshold"},
                 where);
  const json& kind = require(s, "kind", where);
  if (!kind.is_string()) fail(where + ".kind", "expected a string");
  spec.kind = scheme_kind_from_string(kind.get<std::string>());
  if (s.contains("rounds")) spec.rounds = get_int(s["rounds"], where + ".rounds");
  if (s.contains("rounding_draws"))
    spec.rounding_draws = get_int(s["rounding_draws"], where + ".rounding_draws");
  if (s.contains("sdp_tol")) spec.sdp_tol = get_double(s["sdp_tol"], where + ".sdp_tol");
  if (s.contains("sdp_max_iter"))
    spec.sdp_max_iter = get_int(s["sdp_max_iter"], where + ".sdp_max_iter");
  if (s.contains("rank1_threshold"))
    spec.rank1_threshold = get_double(s["rank1_threshold"], where + ".rank1_threshold");
  return spec;
}

}  // namespace

const char* to_string(SweepParam p) {
  switch (p) {
    case SweepParam::kNone: return "none";
    case SweepParam::kIrsElements: return "M";
    case SweepParam::kUsers: return "K";
    case SweepParam::kBsAntennas: return "NT";
  }
  return "?";
}

SweepParam sweep_param_from_string(const std::string& s) {
  if (s == "none") return SweepParam::kNone;
  if (s == "M") return SweepParam::kIrsElements;
  if (s == "K") return SweepParam::kUsers;
  if (s == "NT" || s == "N_T") return SweepParam::kBsAntennas;
  throw std::invalid_argument("scenario: sweep.param: expected one of M, K, NT, none");
}

SystemConfig Scenario::at_sweep_point(int value) const {
  SystemConfig cfg = config;
  switch (sweep) {
    case SweepParam::kNone: break;
    case SweepParam::kIrsElements: cfg.irs_elements = value; break;
    case SweepParam::kUsers: cfg.users_per_cell = value; break;
    case SweepParam::kBsAntennas: cfg.bs_antennas = value; break;
  }
  cfg.validate();
  return cfg;
}

Scenario parse_scenario(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario: JSON parse error: ") + e.what());
  }
  if (!root.is_object()) fail("top level", "expected an object");
  reject_unknown(root, {"config", "schemes", "sweep", "output"}, "top level");

  Scenario sc;
  const json& cfg = require(root, "config", "top level");
  if (!cfg.is_object()) fail("config", "expected an object");
  sc.config = parse_config(cfg);
  sc.config.validate();

  const json& schemes = require(root, "schemes", "top level");
  if (!schemes.is_array() || schemes.empty()) fail("schemes", "expected a non-empty array");
  for (std::size_t k = 0; k < schemes.size(); ++k) {
    std::ostringstream where;
    where << "schemes[" << k << "]";
    SchemeSpec spec = parse_scheme(schemes[k], where.str());
    spec.validate();
    sc.schemes.push_back(spec);
  }

  if (root.contains("sweep")) {
    const json& sweep = root["sweep"];
    if (!sweep.is_object()) fail("sweep", "expected an object");
    reject_unknown(sweep, {"param", "values"}, "sweep");
    const json& param = require(sweep, "param", "sweep");
    if (!param.is_string()) fail("sweep.param", "expected a string");
    sc.sweep = sweep_param_from_string(param.get<std::string>());
    if (sc.sweep != SweepParam::kNone) {
      const json& values = require(sweep, "values", "sweep");
      if (!values.is_array() || values.empty()) fail("sweep.values", "expected a non-empty array");
      for (const auto& v : values) sc.sweep_values.push_back(get_int(v, "sweep.values"));
      for (int v : sc.sweep_values) sc.at_sweep_point(v);  // validate every point
    }
  }

  if (root.contains("output")) {
    if (!root["output"].is_string()) fail("output", "expected a string");
    sc.output = root["output"].get<std::string>();
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("scenario: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace irscep
