#include "ekss/config.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ekss/errors.hpp"
#include "ekss/identity.hpp"
#include "ekss/random_fields.hpp"

namespace ekss {

namespace {

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || v.find_first_not_of(" \t", pos) != std::string::npos)
    throw ValidationError("config: " + key + " expects a number, got '" + v + "'");
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x != static_cast<double>(static_cast<long long>(x)))
    throw ValidationError("config: " + key + " expects an integer, got '" + v + "'");
  return static_cast<long long>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ValidationError("config: " + key + " expects a boolean, got '" + v + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt_list(const std::vector<double>& v) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

void apply_tree(ExperimentConfig& cfg, const boost::property_tree::ptree& tree) {
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ValidationError("config: key '" + section + "' outside a section");
    for (const auto& [key, value] : body) set_config_value(cfg, section + "." + key, value.data());
  }
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "grid.n",          "grid.L",           "grid.offset",
      "medium.c1",       "medium.c2",        "medium.g",
      "medium.perturbation", "medium.perturbation_amplitude",
      "solver.mode",     "solver.dt",        "solver.T",
      "solver.cfl",      "solver.dealias",   "solver.record_every",
      "solver.blowup_threshold",
      "experiment.delta", "experiment.seed", "experiment.seeds",
      "experiment.eps",  "experiment.T_list", "experiment.kappa0",
      "experiment.T_budget", "experiment.check",
      "experiment.kss_L", "experiment.kss_sigma", "experiment.kss_T", "experiment.kss_dt",
      "data.width",      "data.psi"};
  return keys;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(to_double("list", item));
  }
  return out;
}

void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  SolverConfig& s = cfg.solver;
  if (key == "grid.n") s.grid.n = static_cast<int>(to_int(key, v));
  else if (key == "grid.L") s.grid.L = to_double(key, v);
  else if (key == "grid.offset") s.grid.offset = to_bool(key, v);
  else if (key == "medium.c1") s.medium.c1 = to_double(key, v);
  else if (key == "medium.c2") s.medium.c2 = to_double(key, v);
  else if (key == "medium.g") cfg.g_spec = v;
  else if (key == "medium.perturbation") cfg.perturbation = v;
  else if (key == "medium.perturbation_amplitude") cfg.perturbation_amplitude = to_double(key, v);
  else if (key == "solver.mode") s.mode = solver_mode_from_string(v);
  else if (key == "solver.dt") s.dt = to_double(key, v);
  else if (key == "solver.T") s.T = to_double(key, v);
  else if (key == "solver.cfl") s.cfl = to_double(key, v);
  else if (key == "solver.dealias") s.dealias = to_bool(key, v);
  else if (key == "solver.record_every") s.record_every = static_cast<int>(to_int(key, v));
  else if (key == "solver.blowup_threshold") s.blowup_threshold = to_double(key, v);
  else if (key == "experiment.delta") cfg.delta = to_double(key, v);
  else if (key == "experiment.seed") {
    const long long x = to_int(key, v);
    if (x < 0) throw ValidationError("config: experiment.seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(x);
  } else if (key == "experiment.seeds") cfg.seeds = static_cast<int>(to_int(key, v));
  else if (key == "experiment.eps") cfg.eps = parse_list(v);
  else if (key == "experiment.T_list") cfg.T_list = parse_list(v);
  else if (key == "experiment.kappa0") cfg.kappa0 = to_double(key, v);
  else if (key == "experiment.T_budget") cfg.T_budget = to_double(key, v);
  else if (key == "experiment.check") cfg.check = v;
  else if (key == "experiment.kss_L") cfg.kss_L = to_double(key, v);
  else if (key == "experiment.kss_sigma") cfg.kss_sigma = to_double(key, v);
  else if (key == "experiment.kss_T") cfg.kss_T = to_double(key, v);
  else if (key == "experiment.kss_dt") cfg.kss_dt = to_double(key, v);
  else if (key == "data.width") cfg.profile_width = to_double(key, v);
  else if (key == "data.psi") cfg.psi = v;
  else throw ValidationError("config: unknown key '" + key + "'");
}

void apply_config_text(ExperimentConfig& cfg, const std::string& ini_text) {
  std::istringstream is(ini_text);
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  apply_tree(cfg, tree);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  ExperimentConfig cfg;
  apply_config_text(cfg, ss.str());
  return cfg;
}

void ExperimentConfig::validate() const {
  solver.grid.validate();
  solver.medium.validate();
  if (!(delta > 0.0 && delta <= 0.25)) throw ValidationError("config: experiment.delta must lie in (0, 1/4]");
  if (seeds < 1) throw ValidationError("config: experiment.seeds must be >= 1");
  if (eps.empty()) throw ValidationError("config: experiment.eps must not be empty");
  for (double e : eps)
    if (!(e >= 0.0)) throw ValidationError("config: experiment.eps entries must be nonnegative");
  if (!(profile_width > 0.0)) throw ValidationError("config: data.width must be positive");
  if (psi != "zero" && psi != "derivative") throw ValidationError("config: data.psi must be zero or derivative");
  if (perturbation != "none" && perturbation != "gaussian")
    throw ValidationError("config: medium.perturbation must be none or gaussian");
  if (!(kss_L > 0.0 && kss_sigma > 0.0 && kss_T > 0.0 && kss_dt > 0.0))
    throw ValidationError("config: experiment.kss_* values must be positive");
  if (!(T_budget > 0.0)) throw ValidationError("config: experiment.T_budget must be positive");
  if (!(solver.T > 0.0)) throw ValidationError("config: solver.T must be positive");
  if (!(solver.cfl > 0.0 && solver.cfl <= 0.5)) throw ValidationError("config: solver.cfl must lie in (0, 0.5]");
  if (solver.record_every < 1) throw ValidationError("config: solver.record_every must be >= 1");
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "grid.n=" << solver.grid.n << "\ngrid.L=" << solver.grid.L << "\ngrid.offset=" << solver.grid.offset
     << "\nmedium.c1=" << solver.medium.c1 << "\nmedium.c2=" << solver.medium.c2 << "\nmedium.g=" << g_spec
     << "\nmedium.perturbation=" << perturbation << "\nmedium.perturbation_amplitude=" << perturbation_amplitude
     << "\nsolver.mode=" << to_string(solver.mode) << "\nsolver.dt=" << solver.dt << "\nsolver.T=" << solver.T
     << "\nsolver.cfl=" << solver.cfl << "\nsolver.dealias=" << solver.dealias
     << "\nsolver.record_every=" << solver.record_every << "\nsolver.blowup_threshold=" << solver.blowup_threshold
     << "\nexperiment.delta=" << delta << "\nexperiment.seed=" << seed << "\nexperiment.seeds=" << seeds
     << "\nexperiment.eps=" << fmt_list(eps) << "\nexperiment.T_list=" << fmt_list(T_list)
     << "\nexperiment.kappa0=" << kappa0 << "\nexperiment.T_budget=" << T_budget << "\nexperiment.check=" << check
     << "\nexperiment.kss_L=" << kss_L << "\nexperiment.kss_sigma=" << kss_sigma
     << "\nexperiment.kss_T=" << kss_T << "\nexperiment.kss_dt=" << kss_dt << "\ndata.width=" << profile_width << "\ndata.psi=" << psi << "\n";
  // Regroup the dotted keys into INI sections so the text loads back.
  std::istringstream flat(os.str());
  std::ostringstream ini;
  std::string line, current;
  while (std::getline(flat, line)) {
    const auto dot = line.find('.');
    const std::string section = line.substr(0, dot);
    if (section != current) {
      ini << (current.empty() ? "" : "\n") << "[" << section << "]\n";
      current = section;
    }
    ini << line.substr(dot + 1) << "\n";
  }
  return ini.str();
}

void materialize_medium(ExperimentConfig& cfg) {
  ElasticMedium& m = cfg.solver.medium;
  if (cfg.g_spec == "default") {
    m.g = default_g();
  } else if (cfg.g_spec == "zero") {
    m.g = Tensor6{};
  } else {
    const std::vector<double> d = parse_list(cfg.g_spec);
    m.g = isotropic_g(d);
  }
  m.h = PerturbationField{};
  if (cfg.perturbation == "gaussian") {
    PerturbationField base = ManufacturedSolution::default_perturbation(cfg.solver.grid);
    // default_perturbation has sup |C| = 0.05; rescale to the requested size.
    const double s = cfg.perturbation_amplitude / 0.05;
    for (const auto& t : base.terms()) {
      Tensor4 c = t.coeff;
      for (double& x : c.c) x *= s;
      m.h.add_term(t.profile, c);
    }
  }
}

}  // namespace ekss
