#include "pdsplit/config.hpp"

#include <fstream>
#include <sstream>

namespace pdsplit {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("key '" + key + "' expects true or false, got '" + v + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(trim(tok));
  return out;
}

std::vector<std::pair<int, int>> parse_groups(const std::string& v) {
  if (v == "none") return {};
  std::vector<std::pair<int, int>> groups;
  for (const auto& part : split(v, ';')) {
    if (part.empty()) continue;
    const auto dash = part.find('-');
    require(dash != std::string::npos,
            "group '" + part + "' must be a 1-based range lo-hi");
    groups.emplace_back(std::stoi(part.substr(0, dash)), std::stoi(part.substr(dash + 1)));
  }
  require(!groups.empty(), "group list is empty (use 'none' for no groups)");
  return groups;
}

Vec parse_vector(const std::string& v) {
  std::vector<double> vals;
  for (const auto& part : split(v, ','))
    if (!part.empty()) vals.push_back(parse_double(part));
  return Eigen::Map<const Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

std::string serialize_vector(const Vec& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_double(v[i]);
  }
  return out;
}

bool vec_equal(const Vec& a, const Vec& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

Schedules::GammaRule parse_gamma_rule(const std::string& v) {
  if (v == "constant") return Schedules::GammaRule::constant;
  if (v == "harmonic") return Schedules::GammaRule::harmonic;
  throw ConfigError("unknown gamma_rule '" + v + "'");
}

Schedules::AlphaRule parse_alpha_rule(const std::string& v) {
  if (v == "zero") return Schedules::AlphaRule::zero;
  if (v == "constant") return Schedules::AlphaRule::constant;
  if (v == "gamma_squared") return Schedules::AlphaRule::gamma_squared;
  throw ConfigError("unknown alpha_rule '" + v + "'");
}

GradientOracle::Kind parse_oracle_kind(const std::string& v) {
  if (v == "exact") return GradientOracle::Kind::exact;
  if (v == "gaussian_decay") return GradientOracle::Kind::gaussian_decay;
  if (v == "minibatch_growing") return GradientOracle::Kind::minibatch_growing;
  if (v == "minibatch_fixed") return GradientOracle::Kind::minibatch_fixed;
  throw ConfigError("unknown oracle kind '" + v + "'");
}

std::string gamma_rule_name(Schedules::GammaRule r) {
  return r == Schedules::GammaRule::constant ? "constant" : "harmonic";
}

std::string alpha_rule_name(Schedules::AlphaRule r) {
  switch (r) {
    case Schedules::AlphaRule::zero: return "zero";
    case Schedules::AlphaRule::constant: return "constant";
    case Schedules::AlphaRule::gamma_squared: return "gamma_squared";
  }
  return "?";
}

std::string oracle_kind_name(GradientOracle::Kind k) {
  switch (k) {
    case GradientOracle::Kind::exact: return "exact";
    case GradientOracle::Kind::gaussian_decay: return "gaussian_decay";
    case GradientOracle::Kind::minibatch_growing: return "minibatch_growing";
    case GradientOracle::Kind::minibatch_fixed: return "minibatch_fixed";
  }
  return "?";
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots != std::string::npos) {
      const std::uint64_t lo = std::stoull(part.substr(0, dots));
      const std::uint64_t hi = std::stoull(part.substr(dots + 2));
      require(hi >= lo, "seed range '" + part + "' is reversed");
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    } else if (!part.empty()) {
      seeds.push_back(std::stoull(part));
    }
  }
  require(!seeds.empty(), "seed list is empty");
  return seeds;
}

Method parse_method_name(const std::string& name) {
  if (name == "sifb") return Method::sifb;
  if (name == "pd1") return Method::pd1;
  if (name == "pd2") return Method::pd2;
  throw ConfigError("unknown method '" + name + "' (expected sifb, pd1 or pd2)");
}

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.data.n = 48;
  cfg.data.p = 32;
  cfg.data.a = -1.0;
  cfg.data.b = 1.0;
  cfg.data.noise_scale = 0.3;
  cfg.data.seed = 8;
  cfg.data.w_gen = Vec(32);
  cfg.data.w_gen << 3, 2, 1, 0, 1, 0, 1, 2, -1, 0, 0, -2, -1, 1, 0.5, 0, 1, 0, 4, 0, -2, 0,
      0, -2, 1.0, 1, 0, 0.2, -0.1, 0, 0, 1;
  cfg.weight = 0.02;
  for (int l = 1; l <= 8; ++l) cfg.groups.emplace_back(4 * l - 3, 4 * l + 1);
  cfg.method = Method::pd1;
  cfg.primal_scale = 0.15;
  cfg.dual_scale = 0.15;
  cfg.schedules.gamma_rule = Schedules::GammaRule::harmonic;
  cfg.schedules.gamma_c = 15.0;
  cfg.schedules.gamma_n0 = 100.0;
  cfg.schedules.alpha_rule = Schedules::AlphaRule::gamma_squared;
  cfg.schedules.lambda_relax = 1.0;
  cfg.schedules.epsilon = 1e-3;
  cfg.oracle_kind = GradientOracle::Kind::gaussian_decay;
  cfg.sig = 1.0;
  cfg.iterations = 5000;
  cfg.fp_tolerance = 1e-8;
  cfg.log_every = 10;
  for (std::uint64_t s = 0; s <= 19; ++s) cfg.seeds.push_back(s);
  return cfg;
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  return data.n == o.data.n && data.p == o.data.p && data.a == o.data.a &&
         data.b == o.data.b && data.noise_scale == o.data.noise_scale &&
         data.seed == o.data.seed && vec_equal(data.w_gen, o.data.w_gen) &&
         weight == o.weight && groups == o.groups && method == o.method &&
         primal_scale == o.primal_scale && dual_scale == o.dual_scale &&
         schedules.gamma_rule == o.schedules.gamma_rule &&
         schedules.gamma_const == o.schedules.gamma_const &&
         schedules.gamma_c == o.schedules.gamma_c &&
         schedules.gamma_n0 == o.schedules.gamma_n0 &&
         schedules.alpha_rule == o.schedules.alpha_rule &&
         schedules.alpha_const == o.schedules.alpha_const &&
         schedules.lambda_relax == o.schedules.lambda_relax &&
         schedules.epsilon == o.schedules.epsilon && oracle_kind == o.oracle_kind &&
         sig == o.sig && batch0 == o.batch0 && batch_growth == o.batch_growth &&
         batch_size == o.batch_size && iterations == o.iterations &&
         fp_tolerance == o.fp_tolerance && log_every == o.log_every && seeds == o.seeds &&
         reference_iterations == o.reference_iterations &&
         reference_tolerance == o.reference_tolerance &&
         extrapolated_dual == o.extrapolated_dual && literal_primal == o.literal_primal;
}

PdMetrics ExperimentConfig::make_metrics(const std::vector<int>& dual_dims) const {
  PdMetrics m{Metric::scaled_identity(data.p, primal_scale), {}};
  m.w_metrics.reserve(dual_dims.size());
  for (int d : dual_dims) m.w_metrics.push_back(Metric::scaled_identity(d, dual_scale));
  return m;
}

GradientOracle ExperimentConfig::make_oracle(std::uint64_t seed) const {
  switch (oracle_kind) {
    case GradientOracle::Kind::exact: return GradientOracle::exact();
    case GradientOracle::Kind::gaussian_decay:
      return GradientOracle::gaussian_decay(sig, seed);
    case GradientOracle::Kind::minibatch_growing:
      return GradientOracle::minibatch_growing(batch0, batch_growth, seed);
    case GradientOracle::Kind::minibatch_fixed:
      return GradientOracle::minibatch_fixed(batch_size, seed);
  }
  return GradientOracle::exact();
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg = default_config();
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      require(line.back() == ']', "line " + std::to_string(lineno) + ": unterminated section");
      section = line.substr(1, line.size() - 2);
      require(section == "data" || section == "problem" || section == "solver" ||
                  section == "oracle" || section == "run",
              "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    require(eq != std::string::npos,
            "line " + std::to_string(lineno) + ": expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    require(!section.empty(), "key '" + key + "' appears before any section");

    if (section == "data") {
      if (key == "n") cfg.data.n = std::stoi(val);
      else if (key == "p") cfg.data.p = std::stoi(val);
      else if (key == "a") cfg.data.a = parse_double(val);
      else if (key == "b") cfg.data.b = parse_double(val);
      else if (key == "noise_scale") cfg.data.noise_scale = parse_double(val);
      else if (key == "seed") cfg.data.seed = std::stoull(val);
      else if (key == "w_gen") cfg.data.w_gen = parse_vector(val);
      else throw ConfigError("unknown key '" + key + "' in section [data]");
    } else if (section == "problem") {
      if (key == "weight") cfg.weight = parse_double(val);
      else if (key == "groups") cfg.groups = parse_groups(val);
      else throw ConfigError("unknown key '" + key + "' in section [problem]");
    } else if (section == "solver") {
      if (key == "method") cfg.method = parse_method_name(val);
      else if (key == "primal_scale") cfg.primal_scale = parse_double(val);
      else if (key == "dual_scale") cfg.dual_scale = parse_double(val);
      else if (key == "gamma_rule") cfg.schedules.gamma_rule = parse_gamma_rule(val);
      else if (key == "gamma_const") cfg.schedules.gamma_const = parse_double(val);
      else if (key == "gamma_c") cfg.schedules.gamma_c = parse_double(val);
      else if (key == "gamma_n0") cfg.schedules.gamma_n0 = parse_double(val);
      else if (key == "alpha_rule") cfg.schedules.alpha_rule = parse_alpha_rule(val);
      else if (key == "alpha_const") cfg.schedules.alpha_const = parse_double(val);
      else if (key == "lambda_relax") cfg.schedules.lambda_relax = parse_double(val);
      else if (key == "epsilon") cfg.schedules.epsilon = parse_double(val);
      else throw ConfigError("unknown key '" + key + "' in section [solver]");
    } else if (section == "oracle") {
      if (key == "kind") cfg.oracle_kind = parse_oracle_kind(val);
      else if (key == "sig") cfg.sig = parse_double(val);
      else if (key == "batch0") cfg.batch0 = parse_double(val);
      else if (key == "batch_growth") cfg.batch_growth = parse_double(val);
      else if (key == "batch_size") cfg.batch_size = std::stoi(val);
      else throw ConfigError("unknown key '" + key + "' in section [oracle]");
    } else if (section == "run") {
      if (key == "iterations") cfg.iterations = std::stoi(val);
      else if (key == "fp_tolerance") cfg.fp_tolerance = parse_double(val);
      else if (key == "log_every") cfg.log_every = std::stoi(val);
      else if (key == "seeds") cfg.seeds = parse_seed_list(val);
      else if (key == "reference_iterations") cfg.reference_iterations = std::stoi(val);
      else if (key == "reference_tolerance") cfg.reference_tolerance = parse_double(val);
      else if (key == "extrapolated_dual") cfg.extrapolated_dual = parse_bool(val, key);
      else if (key == "literal_primal") cfg.literal_primal = parse_bool(val, key);
      else throw ConfigError("unknown key '" + key + "' in section [run]");
    }
  }
  return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "[data]\n";
  os << "n = " << cfg.data.n << "\n";
  os << "p = " << cfg.data.p << "\n";
  os << "a = " << format_double(cfg.data.a) << "\n";
  os << "b = " << format_double(cfg.data.b) << "\n";
  os << "noise_scale = " << format_double(cfg.data.noise_scale) << "\n";
  os << "seed = " << cfg.data.seed << "\n";
  os << "w_gen = " << serialize_vector(cfg.data.w_gen) << "\n";
  os << "\n[problem]\n";
  os << "weight = " << format_double(cfg.weight) << "\n";
  if (cfg.groups.empty()) {
    os << "groups = none\n";
  } else {
    os << "groups = ";
    for (std::size_t l = 0; l < cfg.groups.size(); ++l) {
      if (l) os << ";";
      os << cfg.groups[l].first << "-" << cfg.groups[l].second;
    }
    os << "\n";
  }
  os << "\n[solver]\n";
  os << "method = " << method_name(cfg.method) << "\n";
  os << "primal_scale = " << format_double(cfg.primal_scale) << "\n";
  os << "dual_scale = " << format_double(cfg.dual_scale) << "\n";
  os << "gamma_rule = " << gamma_rule_name(cfg.schedules.gamma_rule) << "\n";
  os << "gamma_const = " << format_double(cfg.schedules.gamma_const) << "\n";
  os << "gamma_c = " << format_double(cfg.schedules.gamma_c) << "\n";
  os << "gamma_n0 = " << format_double(cfg.schedules.gamma_n0) << "\n";
  os << "alpha_rule = " << alpha_rule_name(cfg.schedules.alpha_rule) << "\n";
  os << "alpha_const = " << format_double(cfg.schedules.alpha_const) << "\n";
  os << "lambda_relax = " << format_double(cfg.schedules.lambda_relax) << "\n";
  os << "epsilon = " << format_double(cfg.schedules.epsilon) << "\n";
  os << "\n[oracle]\n";
  os << "kind = " << oracle_kind_name(cfg.oracle_kind) << "\n";
  os << "sig = " << format_double(cfg.sig) << "\n";
  os << "batch0 = " << format_double(cfg.batch0) << "\n";
  os << "batch_growth = " << format_double(cfg.batch_growth) << "\n";
  os << "batch_size = " << cfg.batch_size << "\n";
  os << "\n[run]\n";
  os << "iterations = " << cfg.iterations << "\n";
  os << "fp_tolerance = " << format_double(cfg.fp_tolerance) << "\n";
  os << "log_every = " << cfg.log_every << "\n";
  os << "seeds = ";
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
    if (i) os << ",";
    os << cfg.seeds[i];
  }
  os << "\n";
  os << "reference_iterations = " << cfg.reference_iterations << "\n";
  os << "reference_tolerance = " << format_double(cfg.reference_tolerance) << "\n";
  os << "extrapolated_dual = " << (cfg.extrapolated_dual ? "true" : "false") << "\n";
  os << "literal_primal = " << (cfg.literal_primal ? "true" : "false") << "\n";
  return os.str();
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void save_config(const ExperimentConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "cannot open for writing: " + path);
  out << serialize_config(cfg);
  require(out.good(), "write failed: " + path);
}

}  // namespace pdsplit
