#include "vdd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "vdd/ansatz.hpp"
#include "vdd/csv.hpp"
#include "vdd/dimer.hpp"
#include "vdd/errors.hpp"
#include "vdd/exact.hpp"
#include "vdd/parallel.hpp"
#include "vdd/rng.hpp"

namespace vdd {

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("x and y sizes differ");
  const std::size_t m = x.size();
  if (m < 2) throw DomainError("least squares needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("least squares needs two distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.points = m;
  return fit;
}

double model_coupling(const ModelSpec& model) {
  switch (model.model) {
    case ModelKind::kTfim: return model.g;
    case ModelKind::kHeisenberg: return model.jx;
    case ModelKind::kZ1Z2: return 1.0;
  }
  return 0.0;
}

VarianceScanResult variance_scan(const VarianceScanConfig& config) {
  if (config.n_values.empty()) throw DomainError("n_values is empty");
  if (!std::is_sorted(config.n_values.begin(), config.n_values.end()) ||
      std::adjacent_find(config.n_values.begin(), config.n_values.end()) != config.n_values.end()) {
    throw DomainError("n_values must be strictly ascending");
  }
  if (config.n_values.front() < 2) throw DomainError("n_values must be at least 2");
  if (config.n_values.back() > 14) throw DomainError("variance scan is limited to n <= 14");
  if (config.num_seeds < 2) throw DomainError("num_seeds must be at least 2");
  if (config.tracked_params.empty()) throw DomainError("no tracked parameters");

  VarianceScanResult result;
  const std::string model_name(to_string(config.model.model));
  const double coupling = model_coupling(config.model);
  const std::size_t seeds = static_cast<std::size_t>(config.num_seeds);

  for (int n : config.n_values) {
    ModelSpec spec = config.model;
    spec.n = n;
    const PauliHamiltonian h = build_model(spec);
    const VddGraph shape = build_accordion(n);

    std::vector<std::size_t> slots;
    std::vector<std::string> present;
    for (const auto& label : config.tracked_params) {
      if (const auto idx = find_parameter(shape, label, config.param_mode)) {
        slots.push_back(*idx);
        present.push_back(label);
      } else {
        result.notices.push_back("skipped " + label + " at n=" + std::to_string(n) + ": no such parameter");
      }
    }
    if (slots.empty()) continue;

    std::vector<double> values(seeds * slots.size());
    parallel_for(seeds, config.threads, [&](std::size_t s) {
      const std::uint64_t seed =
          derive_seed({config.base_seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s)});
      const VddGraph g = init_params(shape, InitScheme::uniform(seed));
      const GradientVector grad = exact_gradient(g, h, config.param_mode);
      for (std::size_t k = 0; k < slots.size(); ++k) values[s * slots.size() + k] = grad.entries[slots[k]];
    });

    for (std::size_t k = 0; k < slots.size(); ++k) {
      double mean = 0.0;
      for (std::size_t s = 0; s < seeds; ++s) mean += values[s * slots.size() + k];
      mean /= static_cast<double>(seeds);
      double var = 0.0;
      for (std::size_t s = 0; s < seeds; ++s) {
        const double d = values[s * slots.size() + k] - mean;
        var += d * d;
      }
      var /= static_cast<double>(seeds);
      result.rows.push_back({model_name, coupling, n, present[k], var, config.num_seeds});
    }
  }

  for (const auto& label : config.tracked_params) {
    std::vector<double> xs, ys;
    for (const auto& row : result.rows) {
      if (row.param == label && row.variance > 1e-300) {
        xs.push_back(row.n);
        ys.push_back(std::log2(row.variance));
      }
    }
    if (xs.size() < 2) {
      result.notices.push_back("no fit for " + label + ": fewer than two rows with variance > 1e-300");
      continue;
    }
    result.fits.push_back({model_name, coupling, label, least_squares(xs, ys)});
  }
  return result;
}

std::vector<CurvePanel> default_curve_panels(int n) {
  std::vector<CurvePanel> panels;
  ModelSpec z{ModelKind::kZ1Z2, n};
  panels.push_back({"z1z2", z});
  ModelSpec heis{ModelKind::kHeisenberg, n};
  panels.push_back({"heisenberg_j1", heis});
  for (double g : {0.0, 1.0, 10.0}) {
    ModelSpec t{ModelKind::kTfim, n, g};
    panels.push_back({"tfim_g" + std::to_string(static_cast<int>(g)), t});
  }
  return panels;
}

std::vector<CurveResult> training_curves(const std::vector<CurvePanel>& panels, int epochs, double lr,
                                         std::uint64_t seed, ParamMode mode) {
  std::vector<CurveResult> out;
  for (const auto& panel : panels) {
    if (panel.model.n > kDenseMaxQubits) throw DomainError("training curves need n <= 12 for the E0 oracle");
    TrainConfig cfg;
    cfg.model = panel.model;
    cfg.optimizer = AdamConfig{lr};
    cfg.epochs = epochs;
    cfg.seed = seed;
    cfg.param_mode = mode;
    cfg.loss = LossKind::kEnergyGap;
    out.push_back({panel, train(cfg)});
  }
  return out;
}

std::vector<SweepRow> g_sweep(const std::vector<double>& g_values, int n, int epochs, std::uint64_t seed,
                              double lr, ParamMode mode) {
  if (g_values.empty()) throw DomainError("g list is empty");
  if (n > kDenseMaxQubits) throw DomainError("g sweep needs n <= 12 for the E0 oracle");
  std::vector<SweepRow> rows;
  for (double g : g_values) {
    TrainConfig cfg;
    cfg.model = ModelSpec{ModelKind::kTfim, n, g};
    cfg.optimizer = AdamConfig{lr};
    cfg.epochs = epochs;
    cfg.seed = seed;
    cfg.param_mode = mode;
    const TrainTrace trace = train(cfg);
    const PauliHamiltonian h = build_model(cfg.model);
    SweepRow row;
    row.g = g;
    row.e0 = *trace.e0;
    row.final_energy = exact_energy(trace.final_graph, h);
    row.relative_error = std::abs((row.final_energy - row.e0) / row.e0);
    row.dimer_energy = dimer_product_benchmark(h, seed).energy;
    row.dimer_relative_error = std::abs((row.dimer_energy - row.e0) / row.e0);
    rows.push_back(row);
  }
  return rows;
}

void write_variance_csv(const VarianceScanResult& result, std::ostream& out) {
  CsvWriter w(out, {"model", "g", "n", "param", "variance", "num_seeds"});
  for (const auto& r : result.rows) {
    w.row({r.model, format_real(r.coupling), std::to_string(r.n), r.param, format_real(r.variance),
           std::to_string(r.num_seeds)});
  }
}

void write_fits_csv(const VarianceScanResult& result, std::ostream& out) {
  CsvWriter w(out, {"model", "g", "param", "slope", "intercept", "r2"});
  for (const auto& f : result.fits) {
    w.row({f.model, format_real(f.coupling), f.param, format_real(f.fit.slope), format_real(f.fit.intercept),
           format_real(f.fit.r_squared)});
  }
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out, bool benchmark) {
  std::vector<std::string> header{"g", "final_energy", "e0", "relative_error"};
  if (benchmark) {
    header.push_back("dimer_energy");
    header.push_back("dimer_relative_error");
  }
  CsvWriter w(out, header);
  for (const auto& r : rows) {
    std::vector<std::string> cells{format_real(r.g), format_real(r.final_energy), format_real(r.e0),
                                   format_real(r.relative_error)};
    if (benchmark) {
      cells.push_back(format_real(r.dimer_energy));
      cells.push_back(format_real(r.dimer_relative_error));
    }
    w.row(cells);
  }
}

}  // namespace vdd
