#include "risamp/config_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace risamp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("config: bad integer for " + key + ": '" + value + "'");
  }
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("config: bad number for " + key + ": '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("config: bad seed for " + key + ": '" + value + "'");
  }
}

std::vector<Estimator> parse_estimators(const std::string& value) {
  std::vector<Estimator> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(estimator_from_name(item));
  }
  if (out.empty()) throw std::invalid_argument("config: empty estimator list");
  return out;
}

}  // namespace

SystemConfig parse_config(std::istream& in) {
  SystemConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "n_bs") cfg.num_bs = parse_int(key, value);
    else if (key == "n_ris") cfg.num_ris = parse_int(key, value);
    else if (key == "tau") cfg.train_len = parse_int(key, value);
    else if (key == "paths_bs") cfg.paths_bs = parse_int(key, value);
    else if (key == "paths_user") cfg.paths_user = parse_int(key, value);
    else if (key == "bits") cfg.bits = (value == "inf") ? 0 : parse_int(key, value);
    else if (key == "snr_db") cfg.snr_db = parse_real(key, value);
    else if (key == "sigma_g2") cfg.sigma_g2 = parse_real(key, value);
    else if (key == "sigma_h2") cfg.sigma_h2 = parse_real(key, value);
    else if (key == "trials") cfg.trials = parse_int(key, value);
    else if (key == "seed") cfg.seed = parse_u64(key, value);
    else if (key == "estimators") cfg.estimators = parse_estimators(value);
    else if (key == "amp_max_iters") cfg.amp.max_iterations = parse_int(key, value);
    else if (key == "amp_damping") cfg.amp.damping = parse_real(key, value);
    else if (key == "amp_stop_tol") cfg.amp.stop_tol = parse_real(key, value);
    else if (key == "zc_root") cfg.zc_root = parse_int(key, value);
    else if (key == "u_prior") {
      if (value == "product") cfg.u_prior = PriorForm::Product;
      else if (value == "harmonic") cfg.u_prior = PriorForm::Harmonic;
      else throw std::invalid_argument("config: u_prior must be 'product' or 'harmonic'");
    } else if (key == "snr_calibration") {
      if (value == "per_trial") cfg.snr_calibration = SnrCalibration::PerTrial;
      else if (value == "ensemble") cfg.snr_calibration = SnrCalibration::Ensemble;
      else throw std::invalid_argument("config: snr_calibration must be 'per_trial' or 'ensemble'");
    } else if (key == "workers") cfg.workers = parse_int(key, value);
    else if (key == "trace_dir") cfg.trace_dir = value;
    else throw std::invalid_argument("config line " + std::to_string(lineno) +
                                     ": unknown key '" + key + "'");
  }
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse_config(in);
}

std::string dump_config(const SystemConfig& cfg) {
  std::ostringstream out;
  out << "n_bs = " << cfg.num_bs << '\n';
  out << "n_ris = " << cfg.num_ris << '\n';
  out << "tau = " << cfg.train_len << '\n';
  out << "paths_bs = " << cfg.paths_bs << '\n';
  out << "paths_user = " << cfg.paths_user << '\n';
  out << "bits = " << (cfg.bits == 0 ? std::string("inf") : std::to_string(cfg.bits)) << '\n';
  out << "snr_db = " << cfg.snr_db << '\n';
  out << "sigma_g2 = " << cfg.sigma_g2 << '\n';
  out << "sigma_h2 = " << cfg.sigma_h2 << '\n';
  out << "trials = " << cfg.trials << '\n';
  out << "seed = " << cfg.seed << '\n';
  out << "estimators = ";
  for (std::size_t i = 0; i < cfg.estimators.size(); ++i) {
    if (i) out << ',';
    out << estimator_name(cfg.estimators[i]);
  }
  out << '\n';
  out << "amp_max_iters = " << cfg.amp.max_iterations << '\n';
  out << "amp_damping = " << cfg.amp.damping << '\n';
  out << "amp_stop_tol = " << cfg.amp.stop_tol << '\n';
  out << "zc_root = " << cfg.zc_root << '\n';
  out << "u_prior = " << (cfg.u_prior == PriorForm::Product ? "product" : "harmonic") << '\n';
  out << "snr_calibration = "
      << (cfg.snr_calibration == SnrCalibration::PerTrial ? "per_trial" : "ensemble") << '\n';
  out << "workers = " << cfg.workers << '\n';
  if (!cfg.trace_dir.empty()) out << "trace_dir = " << cfg.trace_dir << '\n';
  return out.str();
}

}  // namespace risamp
