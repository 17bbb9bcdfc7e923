#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vdd/optimize.hpp"
#include "vdd/params.hpp"
#include "vdd/pauli.hpp"

namespace vdd {

struct VarianceScanConfig {
  ModelSpec model;  // `n` is ignored; the scan sets it from n_values
  std::vector<int> n_values;
  int num_seeds = 100;
  std::vector<std::string> tracked_params{"r1", "r2", "r-1", "omega3", "phi-1"};
  std::uint64_t base_seed = 0;
  ParamMode param_mode = ParamMode::kRaw;
  int threads = 1;
};

struct VarianceRow {
  std::string model;
  double coupling = 0.0;
  int n = 0;
  std::string param;
  double variance = 0.0;
  int num_seeds = 0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

struct VarianceFit {
  std::string model;
  double coupling = 0.0;
  std::string param;
  LinearFit fit;
};

struct VarianceScanResult {
  std::vector<VarianceRow> rows;
  std::vector<VarianceFit> fits;  // labels with at least two usable rows
  std::vector<std::string> notices;
};

/// Ordinary least squares y = slope x + intercept. Needs two distinct x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// g for TFIM, J_x for Heisenberg, 1 for Z1Z2.
double model_coupling(const ModelSpec& model);

/// Population variance over num_seeds random accordion initializations of each
/// tracked exact-gradient entry, per n, plus log2-variance fits against n.
VarianceScanResult variance_scan(const VarianceScanConfig& config);

struct CurvePanel {
  std::string name;  // "z1z2", "heisenberg_j1", "tfim_g0", "tfim_g1", "tfim_g10"
  ModelSpec model;
};

std::vector<CurvePanel> default_curve_panels(int n = 10);

struct CurveResult {
  CurvePanel panel;
  TrainTrace trace;
};

/// Energy-gap training with Adam on the accordion ansatz for each panel.
std::vector<CurveResult> training_curves(const std::vector<CurvePanel>& panels, int epochs = 10000,
                                         double lr = 0.01, std::uint64_t seed = 0,
                                         ParamMode mode = ParamMode::kTrig);

struct SweepRow {
  double g = 0.0;
  double final_energy = 0.0;
  double e0 = 0.0;
  double relative_error = 0.0;
  double dimer_energy = 0.0;
  double dimer_relative_error = 0.0;
};

/// TFIM open chain at each g: accordion training plus the dimer-product benchmark.
std::vector<SweepRow> g_sweep(const std::vector<double>& g_values, int n, int epochs,
                              std::uint64_t seed, double lr = 0.01,
                              ParamMode mode = ParamMode::kTrig);

void write_variance_csv(const VarianceScanResult& result, std::ostream& out);
void write_fits_csv(const VarianceScanResult& result, std::ostream& out);
/// g,final_energy,e0,relative_error; with `benchmark`, dimer columns follow.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out, bool benchmark = true);

}  // namespace vdd
