#pragma once

#include "pdsplit/types.hpp"

#include <cstdint>
#include <string>

namespace pdsplit {

struct DatasetMeta {
  int n = 0;
  int p = 0;
  double a = -1.0;
  double b = 1.0;
  double noise_scale = 0.0;  ///< variance of the additive Gaussian label noise
  std::uint64_t seed = 0;
  Vec w_gen;
};

/// A polynomial regression sample: raw inputs x_i drawn uniformly from
/// [a, b], feature rows (1, x_i, x_i^2, ..., x_i^(p-1)) and noisy labels
/// y_i = <w_gen, features_i> + e_i with e_i ~ N(0, noise_scale).
struct Dataset {
  Vec inputs;    ///< n raw sample positions
  Mat features;  ///< n x p design matrix
  Vec labels;    ///< n responses
  DatasetMeta meta;
};

Dataset generate_polynomial_dataset(const DatasetMeta& meta);

/// Feature row for a single position (monomial basis of length p).
Vec polynomial_features(double x, int p);

/// CSV with header "x,y"; values printed with 17 significant digits so
/// identical seeds serialize byte-identically.
void write_dataset_csv(const Dataset& data, const std::string& path);
/// Companion key=value sidecar holding everything needed to regenerate.
void write_dataset_meta(const DatasetMeta& meta, const std::string& path);

Dataset read_dataset_csv(const std::string& csv_path, const DatasetMeta& meta);
DatasetMeta read_dataset_meta(const std::string& path);

/// Formats a double with enough digits to round-trip exactly.
std::string format_double(double x);
double parse_double(const std::string& s);

}  // namespace pdsplit
