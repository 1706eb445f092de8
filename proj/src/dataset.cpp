#include "pdsplit/dataset.hpp"

#include "pdsplit/rng.hpp"

#include <cfloat>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pdsplit {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  require(end != s.c_str(), "could not parse number: '" + s + "'");
  return v;
}

Vec polynomial_features(double x, int p) {
  Vec row(p);
  double m = 1.0;
  for (int j = 0; j < p; ++j) {
    row[j] = m;
    m *= x;
  }
  return row;
}

Dataset generate_polynomial_dataset(const DatasetMeta& meta) {
  require(meta.n > 0, "dataset: sample count must be positive");
  require(meta.p > 0, "dataset: feature count must be positive");
  require(meta.a < meta.b, "dataset: interval must satisfy a < b");
  require(meta.noise_scale >= 0.0, "dataset: noise_scale must be nonnegative");
  require(meta.w_gen.size() == meta.p,
          "dataset: generator coefficients must have length p = " + std::to_string(meta.p));
  const double reach = std::max(std::abs(meta.a), std::abs(meta.b));
  if (meta.p > 1 && reach > 1.0 &&
      (meta.p - 1) * std::log(reach) > std::log(DBL_MAX)) {
    throw ConfigError(
        "dataset: x^" + std::to_string(meta.p - 1) +
        " overflows on [" + format_double(meta.a) + ", " + format_double(meta.b) +
        "]; restrict the interval to [-1, 1] or lower the polynomial degree");
  }

  Rng rng(meta.seed);
  Dataset d;
  d.meta = meta;
  d.inputs = rng.uniform_vec(meta.n, meta.a, meta.b);
  d.features.resize(meta.n, meta.p);
  for (int i = 0; i < meta.n; ++i)
    d.features.row(i) = polynomial_features(d.inputs[i], meta.p).transpose();
  d.labels = d.features * meta.w_gen;
  if (meta.noise_scale > 0.0) {
    const double sd = std::sqrt(meta.noise_scale);
    for (int i = 0; i < meta.n; ++i) d.labels[i] += sd * rng.gaussian();
  }
  return d;
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "cannot open for writing: " + path);
  out << "x,y\n";
  for (int i = 0; i < data.meta.n; ++i)
    out << format_double(data.inputs[i]) << "," << format_double(data.labels[i]) << "\n";
  require(out.good(), "write failed: " + path);
}

void write_dataset_meta(const DatasetMeta& meta, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "cannot open for writing: " + path);
  out << "n=" << meta.n << "\n";
  out << "p=" << meta.p << "\n";
  out << "a=" << format_double(meta.a) << "\n";
  out << "b=" << format_double(meta.b) << "\n";
  out << "noise_scale=" << format_double(meta.noise_scale) << "\n";
  out << "seed=" << meta.seed << "\n";
  out << "w_gen=";
  for (int j = 0; j < meta.w_gen.size(); ++j) {
    if (j) out << ",";
    out << format_double(meta.w_gen[j]);
  }
  out << "\n";
  require(out.good(), "write failed: " + path);
}

Dataset read_dataset_csv(const std::string& csv_path, const DatasetMeta& meta) {
  std::ifstream in(csv_path);
  require(in.good(), "cannot open: " + csv_path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "empty csv: " + csv_path);
  require(line == "x,y", "unexpected csv header in " + csv_path + ": '" + line + "'");
  std::vector<double> xs, ys;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    require(comma != std::string::npos, "malformed csv row: '" + line + "'");
    xs.push_back(parse_double(line.substr(0, comma)));
    ys.push_back(parse_double(line.substr(comma + 1)));
  }
  require(static_cast<int>(xs.size()) == meta.n,
          "csv row count does not match metadata n");
  Dataset d;
  d.meta = meta;
  d.inputs = Eigen::Map<const Vec>(xs.data(), static_cast<Eigen::Index>(xs.size()));
  d.labels = Eigen::Map<const Vec>(ys.data(), static_cast<Eigen::Index>(ys.size()));
  d.features.resize(meta.n, meta.p);
  for (int i = 0; i < meta.n; ++i)
    d.features.row(i) = polynomial_features(d.inputs[i], meta.p).transpose();
  return d;
}

DatasetMeta read_dataset_meta(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open: " + path);
  DatasetMeta meta;
  std::string line;
  bool have_wgen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, "malformed metadata line: '" + line + "'");
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    if (key == "n") meta.n = std::stoi(val);
    else if (key == "p") meta.p = std::stoi(val);
    else if (key == "a") meta.a = parse_double(val);
    else if (key == "b") meta.b = parse_double(val);
    else if (key == "noise_scale") meta.noise_scale = parse_double(val);
    else if (key == "seed") meta.seed = std::stoull(val);
    else if (key == "w_gen") {
      std::vector<double> w;
      std::stringstream ss(val);
      std::string tok;
      while (std::getline(ss, tok, ',')) w.push_back(parse_double(tok));
      meta.w_gen = Eigen::Map<const Vec>(w.data(), static_cast<Eigen::Index>(w.size()));
      have_wgen = true;
    } else {
      throw ConfigError("unknown metadata key: '" + key + "'");
    }
  }
  require(have_wgen, "metadata missing w_gen: " + path);
  return meta;
}

}  // namespace pdsplit
