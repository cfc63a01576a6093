#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sketchls/precision.hpp"
#include "sketchls/sketch.hpp"
#include "sketchls/solvers.hpp"

namespace sketchls {

struct SweepConfig {
  std::size_t m = 2000;
  std::size_t n = 50;
  double kappa = 1e4;
  std::vector<double> rho_grid;
  std::vector<Method> methods{Method::Qr, Method::Pne, Method::Hpne};
  PrecisionChoice precision = PrecisionChoice::Double;
  double d_factor = 3.0;
  Transform transform = Transform::Dct2;
  std::size_t trials_per_point = 1;
  std::uint64_t seed = 0;
  std::string output_path;
};

struct SweepRow {
  std::string method;
  std::size_t m = 0;
  std::size_t n = 0;
  double kappa = 0.0;
  double rho = 0.0;
  std::optional<std::string> precision;
  std::optional<std::size_t> d;
  std::optional<double> kappa_ap;
  std::optional<double> kappa_rs;
  std::optional<double> rel_error;
  std::optional<double> rel_residual;
  std::optional<double> bound_pne_old;
  std::optional<double> bound_pne_new;
  std::optional<double> bound_hpne_old;
  std::optional<double> bound_hpne_new;
  std::optional<double> bound_ne;
  std::optional<double> bound_ls;
  std::uint64_t seed = 0;  // problem sub-seed
  std::size_t trial = 0;
  std::optional<double> wall_ms;
  std::string error;
};

// Column names, in output order.
const std::vector<std::string>& sweep_columns();

// Validates cfg and throws InvalidArgument on a bad config. Per-row failures
// go to the error column.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct BenchmarkRow {
  std::string method;  // "qr", "pne_double", "pne_auto"
  std::size_t m = 0;
  std::size_t n = 0;
  double kappa = 0.0;
  std::size_t trials = 0;
  double median_ms = 0.0;
  double ratio_to_qr = 0.0;  // median_ms / qr median_ms
  double rel_error = 0.0;    // from the first trial
  std::string precision;     // preconditioner precision used, empty for qr
};

const std::vector<std::string>& benchmark_columns();

std::vector<BenchmarkRow> run_benchmark(std::size_t m, const std::vector<std::size_t>& n_list,
                                        double kappa, std::size_t trials, std::uint64_t seed);

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows);

// Shortest decimal that reads back to the same double.
std::string format_number(double v);

}  // namespace sketchls
