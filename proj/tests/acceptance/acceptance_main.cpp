// Acceptance criteria. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria. `--only k` runs a single criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "oracles.hpp"
#include "vdd/ansatz.hpp"
#include "vdd/exact.hpp"
#include "vdd/experiments.hpp"
#include "vdd/optimize.hpp"
#include "vdd/pauli.hpp"
#include "vdd/rng.hpp"
#include "vdd/serialize.hpp"
#include "vdd/vmc.hpp"

using namespace vdd;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// 1. amplitude of the 3-qubit worked example against the hand product
Outcome amplitude_reproduction() {
  Outcome o;
  Rng rng(derive_seed({kSeed, 1}));
  double worst = 0.0;
  for (int draw = 0; draw < 10; ++draw) {
    VddGraph g = build_accordion(3);
    for (NodeId id = 1; id <= 4; ++id) g.set_params(id, {rng.uniform(), rng.angle(), rng.angle()});
    const auto p1 = g.params(1), p2 = g.params(2), p4 = g.params(4);
    const cplx expected = p1.r * p2.r * std::sqrt(1 - p4.r * p4.r) *
                          std::exp(cplx(0, p1.omega + p2.omega + p4.phi));
    worst = std::max(worst, std::abs(amplitude(g, BitString::from_string("001")) - expected));
  }
  o.check(worst <= 1e-14, "max deviation " + fmt("%.2e", worst) + " over 10 draws");

  VddGraph g = build_accordion(3);
  g.set_params(1, {0.6, 0.3, 0.5});
  g.set_params(2, {0.8, -0.2, 1.1});
  g.set_params(3, {0.7, 0.9, 0.0});
  g.set_params(4, {0.5, 0.4, 1.3});
  const cplx a = amplitude(g, BitString::from_string("001"));
  o.check(std::abs(std::abs(a) - 0.41569219) < 1e-8 && std::abs(std::arg(a) - 1.4) < 1e-12,
          "worked values modulus " + fmt("%.8f", std::abs(a)) + " phase " + fmt("%.6f", std::arg(a)));
  return o;
}

// 2. normalization of random graphs
Outcome normalization() {
  Outcome o;
  Rng rng(derive_seed({kSeed, 2}));
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto kind = static_cast<AnsatzKind>(k % 3);
    const int n = 1 + static_cast<int>(rng.next_u64() % 14);
    const VddGraph g = init_params(build_ansatz(kind, n), InitScheme::uniform(rng.next_u64()));
    worst = std::max(worst, std::abs(to_state_vector(g).norm_squared() - 1.0));
  }
  o.check(worst <= 1e-12, "max |sum p - 1| " + fmt("%.2e", worst) + " over 50 graphs");
  return o;
}

// 3. analytic against central finite-difference gradients; step 1e-6 keeps the
// O(h^2) truncation of the reference below tolerance for r close to 1
Outcome gradient_correctness() {
  Outcome o;
  Rng rng(derive_seed({kSeed, 3}));
  double worst = 0.0;
  const ModelKind models[] = {ModelKind::kZ1Z2, ModelKind::kTfim, ModelKind::kHeisenberg};
  for (int k = 0; k < 50; ++k) {
    ModelSpec spec{models[k % 3], 2 + static_cast<int>(rng.next_u64() % 7), 0.5 + 1.5 * rng.uniform()};
    const ParamMode mode = (k / 3) % 2 == 0 ? ParamMode::kRaw : ParamMode::kTrig;
    const auto kind = static_cast<AnsatzKind>(rng.next_u64() % 3);
    const VddGraph g = init_params(build_ansatz(kind, spec.n), InitScheme::uniform(rng.next_u64()));
    const PauliHamiltonian h = build_model(spec);
    const auto a = exact_gradient(g, h, mode);
    const auto f = finite_difference(g, h, 1e-6, mode);
    double diff = 0.0, ref = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      diff += (a.entries[j] - f.entries[j]) * (a.entries[j] - f.entries[j]);
      ref += f.entries[j] * f.entries[j];
    }
    worst = std::max(worst, std::sqrt(diff) / std::max(std::sqrt(ref), 1e-300));
  }
  o.check(worst <= 1e-6, "max relative error " + fmt("%.2e", worst) + " over 50 cases");
  return o;
}

// 4. dense ground energies against closed forms
Outcome oracle_checks() {
  Outcome o;
  double worst = 0.0;
  for (int n = 2; n <= 12; ++n) {
    worst = std::max(worst, std::abs(ground_energy(build_model({ModelKind::kTfim, n, 0.0})).energy + (n - 1.0)));
  }
  o.check(worst <= 1e-9, "TFIM g=0 n=2..12 max error " + fmt("%.1e", worst));
  const double heis = ground_energy(build_model({ModelKind::kHeisenberg, 2})).energy;
  o.check(std::abs(heis + 3.0) <= 1e-9, "Heisenberg n=2 " + fmt("%.12f", heis));
  const auto tfim2 = build_model({ModelKind::kTfim, 2, 1.0});
  const double e = ground_energy(tfim2).energy;
  const double cross = oracle::ground(dense_matrix(tfim2));
  o.check(std::abs(e + std::sqrt(5.0)) <= 1e-9 && std::abs(e - cross) <= 1e-9,
          "TFIM n=2 g=1 " + fmt("%.12f", e) + " (dense cross-check " + fmt("%.12f", cross) + ")");
  return o;
}

// 5. gradient-variance scaling over random initializations
Outcome barren_plateau() {
  Outcome o;
  std::vector<int> ns;
  for (int n = 2; n <= 12; ++n) ns.push_back(n);
  struct Panel {
    const char* name;
    ModelSpec model;
  };
  const Panel panels[] = {{"tfim g=0", {ModelKind::kTfim, 2, 0.0}},
                          {"tfim g=1", {ModelKind::kTfim, 2, 1.0}},
                          {"tfim g=10", {ModelKind::kTfim, 2, 10.0}},
                          {"heisenberg", {ModelKind::kHeisenberg, 2}}};
  for (const auto& panel : panels) {
    VarianceScanConfig c;
    c.model = panel.model;
    c.n_values = ns;
    c.num_seeds = 100;
    c.tracked_params = {"r1", "r2", "r-1"};
    c.base_seed = kSeed;
    const auto result = variance_scan(c);
    for (const auto& f : result.fits) {
      o.check(f.fit.slope > -0.5, std::string(panel.name) + " " + f.param + " slope " + fmt("%.3f", f.fit.slope));
    }
    o.check(result.fits.size() == 3, std::string(panel.name) + " fits " + std::to_string(result.fits.size()));
  }
  VarianceScanConfig z;
  z.model = {ModelKind::kZ1Z2};
  z.n_values = ns;
  z.num_seeds = 100;
  z.tracked_params = {"omega3", "phi-1"};
  z.base_seed = kSeed;
  double worst = 0.0;
  const auto zr = variance_scan(z);
  for (const auto& row : zr.rows) worst = std::max(worst, row.variance);
  o.check(worst <= 1e-28 && zr.rows.size() == 2 * ns.size(), "z1z2 omega3/phi-1 max variance " + fmt("%.1e", worst));
  return o;
}

TrainTrace train_model(const ModelSpec& model, int epochs, GradientSource source = ExactSource{}) {
  TrainConfig c;
  c.model = model;
  c.epochs = epochs;
  c.seed = kSeed;
  c.optimizer = AdamConfig{0.01};
  c.param_mode = ParamMode::kTrig;
  c.source = source;
  return train(c);
}

// 6. training at n = 10
Outcome training() {
  Outcome o;
  const auto z = train_model({ModelKind::kZ1Z2, 10}, 10000);
  o.check(*z.records.back().relative_error < 1e-4, "z1z2 rel " + fmt("%.2e", *z.records.back().relative_error));
  const auto t0 = train_model({ModelKind::kTfim, 10, 0.0}, 10000);
  o.check(*t0.records.back().relative_error < 1e-4, "tfim g=0 rel " + fmt("%.2e", *t0.records.back().relative_error));
  const auto h = train_model({ModelKind::kHeisenberg, 10}, 10000);
  const double ratio = h.records.front().loss / h.records.back().loss;
  o.check(ratio >= 10.0, "heisenberg gap " + fmt("%.3f", h.records.front().loss) + " -> " +
                             fmt("%.4f", h.records.back().loss) + " (x" + fmt("%.2f", ratio) + ")");
  const auto t10 = train_model({ModelKind::kTfim, 10, 10.0}, 10000);
  double dev = 0.0;
  for (const auto& nd : t10.final_graph.nodes()) dev = std::max(dev, std::abs(nd.params.r - 1 / std::sqrt(2.0)));
  o.check(dev <= 0.05, "tfim g=10 max |r - 1/sqrt2| " + fmt("%.4f", dev));
  return o;
}

// 7. relative error against field strength at large g
Outcome one_over_g() {
  Outcome o;
  const auto rows = g_sweep({10.0, 20.0, 40.0}, 8, 10000, kSeed);
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    const double ratio = rows[k].relative_error / rows[k + 1].relative_error;
    o.check(ratio >= 1.4 && ratio <= 2.8, "err(" + fmt("%g", rows[k].g) + ")/err(" + fmt("%g", rows[k + 1].g) +
                                              ") = " + fmt("%.3f", ratio));
  }
  return o;
}

// 8. sampler and stochastic estimators
Outcome vmc_suite() {
  Outcome o;
  int passes = 0;
  for (std::uint64_t run = 0; run < 100; ++run) {
    const VddGraph g = init_params(build_universal(4), InitScheme::uniform(derive_seed({kSeed, 8, run})));
    const auto s = sample_indices(g, 100000, derive_seed({kSeed, 80, run}));
    std::vector<double> counts(16, 0.0), probs(16);
    for (auto b : s) counts[b] += 1.0;
    for (int b = 0; b < 16; ++b) probs[static_cast<std::size_t>(b)] = std::norm(oracle::amplitude(g, oracle::bits_of(static_cast<std::size_t>(b), 4)));
    passes += oracle::chi_square_p(counts, probs, 100000.0) > 0.01;
  }
  o.check(passes >= 95, "chi-square " + std::to_string(passes) + "/100 with p > 0.01");

  {
    const auto h = build_model({ModelKind::kTfim, 8, 1.0});
    const VddGraph g = init_params(build_accordion(8), InitScheme::uniform(derive_seed({kSeed, 81})));
    const auto est = vmc_energy(make_batch(g, h, 10000, derive_seed({kSeed, 82})));
    const double z = std::abs(est.mean - exact_energy(g, h)) / est.std_error;
    o.check(z <= 5.0, "energy n=8 off by " + fmt("%.2f", z) + " stderr");
  }
  for (auto spec : {ModelSpec{ModelKind::kTfim, 6, 1.0}, ModelSpec{ModelKind::kHeisenberg, 6}}) {
    const auto h = build_model(spec);
    const VddGraph g = init_params(build_accordion(6), InitScheme::uniform(derive_seed({kSeed, 83})));
    const auto batch = make_batch(g, h, 10000, derive_seed({kSeed, 84}), ParamMode::kTrig);
    const auto v = vmc_gradient(batch);
    const auto se = vmc_gradient_stderr(batch);
    const auto e = exact_gradient(g, h, ParamMode::kTrig);
    double worst = 0.0;
    for (std::size_t j = 0; j < e.size(); ++j) {
      const double d = std::abs(v.entries[j] - e.entries[j]);
      worst = std::max(worst, se[j] > 0 ? d / se[j] : (d > 1e-12 ? 1e300 : 0.0));
    }
    o.check(worst <= 5.0, std::string(to_string(spec.model)) + " gradient n=6 worst " + fmt("%.2f", worst) + " stderr");
  }
  const auto t = train_model({ModelKind::kTfim, 10, 0.0}, 10000, VmcSource{4096});
  const double rel = std::abs(exact_energy(t.final_graph, build_model({ModelKind::kTfim, 10, 0.0})) + 9.0) / 9.0;
  o.check(rel < 1e-2, "vmc training tfim g=0 rel " + fmt("%.2e", rel));
  return o;
}

// 9. structural invariants
Outcome structure() {
  Outcome o;
  double worst = 0.0;
  for (int n : {4, 6, 8}) {
    for (std::uint64_t draw = 0; draw < 20; ++draw) {
      const VddGraph g = init_params(build_accordion(n), InitScheme::uniform(derive_seed({kSeed, 9, draw})));
      const StateVector sv = to_state_vector(g);
      for (int cut = 2; cut < n; cut += 2) {
        const int rows = 1 << cut, cols = 1 << (n - cut);
        Eigen::MatrixXcd m(rows, cols);
        for (int i = 0; i < rows; ++i) {
          for (int j = 0; j < cols; ++j) m(i, j) = sv.amps[static_cast<std::size_t>(i * cols + j)];
        }
        worst = std::max(worst, Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(1));
      }
    }
  }
  o.check(worst < 1e-10, "max second singular value " + fmt("%.1e", worst));
  bool counts = true;
  for (int n = 1; n <= 20; ++n) counts = counts && build_accordion(n).parameter_count() == 3u * (3u * n / 2u);
  o.check(counts, "accordion parameter count 3*floor(3n/2) for n=1..20");
  bool round_trip = true;
  for (auto kind : {AnsatzKind::kProduct, AnsatzKind::kAccordion, AnsatzKind::kUniversal}) {
    for (int n : {1, 5, 9}) {
      VddGraph g = init_params(build_ansatz(kind, n), InitScheme::uniform(derive_seed({kSeed, 90, std::uint64_t(n)})));
      g.set_global_phase(0.123456789012345678);
      round_trip = round_trip && deserialize(serialize(g)) == g;
    }
  }
  o.check(round_trip, "serialization round trip");
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  const std::vector<Criterion> criteria{
      {1, "amplitude reproduction", 1, amplitude_reproduction},
      {2, "normalization", 30, normalization},
      {3, "gradient correctness", 120, gradient_correctness},
      {4, "oracle checks", 60, oracle_checks},
      {5, "gradient variance scan", 600, barren_plateau},
      {6, "training at n=10", 1200, training},
      {7, "1/g law", 900, one_over_g},
      {8, "VMC suite", 900, vmc_suite},
      {9, "structure invariants", 60, structure},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.check(secs < c.limit_seconds, "runtime " + fmt("%.1f", secs) + " s < " + fmt("%g", c.limit_seconds) + " s");
    std::printf("%s criterion %d (%s): %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str());
    std::fflush(stdout);
    failed += out.pass ? 0 : 1;
  }
  return failed;
}
