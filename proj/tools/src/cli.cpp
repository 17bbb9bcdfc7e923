#include "vdd/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vdd/ansatz.hpp"
#include "vdd/errors.hpp"
#include "vdd/exact.hpp"
#include "vdd/experiments.hpp"
#include "vdd/optimize.hpp"
#include "vdd/pauli.hpp"
#include "vdd/serialize.hpp"
#include "vdd/vmc.hpp"

namespace vdd::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

enum class KeyType { kInt, kSeed, kReal, kString, kBool, kIntList, kRealList, kStringList };

struct Key {
  std::string name;
  KeyType type;
  json fallback;  // null: unset unless given
  std::string help;
};

struct Context {
  json cfg;
  std::ostream& out;
  std::ostream& err;
  fs::path output_dir;
  std::vector<fs::path> written;

  fs::path output(const std::string& name) {
    fs::create_directories(output_dir);
    written.push_back(output_dir / name);
    return written.back();
  }

  void write_file(const std::string& name, const std::string& text) {
    std::ofstream f(output(name), std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (output_dir / name).string());
    f << text;
  }

  template <typename Writer>
  void write_with(const std::string& name, Writer&& writer) {
    std::ostringstream ss;
    writer(ss);
    write_file(name, ss.str());
  }
};

struct Command {
  std::string name;
  std::string help;
  std::vector<Key> keys;
  bool writes_outputs = false;
  std::function<void(Context&)> handler;
};

std::string flag_name(const std::string& key) {
  std::string out = "--" + key;
  for (auto& c : out) {
    if (c == '_') c = '-';
  }
  return out;
}

// ---- value coercion -------------------------------------------------------

template <typename T>
std::optional<T> parse_scalar(std::string_view text) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(text);
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

json from_flag(const Key& key, const std::string& text) {
  auto bad = [&](const std::string& what) { return ConfigError(key.name, what + ", got '" + text + "'"); };
  switch (key.type) {
    case KeyType::kInt:
      if (auto v = parse_scalar<std::int64_t>(text)) return *v;
      throw bad("expected an integer");
    case KeyType::kSeed:
      if (auto v = parse_scalar<std::uint64_t>(text)) return *v;
      throw bad("expected a non-negative integer");
    case KeyType::kReal:
      if (auto v = parse_scalar<double>(text)) return *v;
      throw bad("expected a number");
    case KeyType::kString: return text;
    case KeyType::kBool:
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      throw bad("expected true or false");
    case KeyType::kIntList: {
      json arr = json::array();
      for (const auto& p : split_commas(text)) {
        auto v = parse_scalar<std::int64_t>(p);
        if (!v) throw bad("expected comma-separated integers");
        arr.push_back(*v);
      }
      return arr;
    }
    case KeyType::kRealList: {
      json arr = json::array();
      for (const auto& p : split_commas(text)) {
        auto v = parse_scalar<double>(p);
        if (!v) throw bad("expected comma-separated numbers");
        arr.push_back(*v);
      }
      return arr;
    }
    case KeyType::kStringList: {
      json arr = json::array();
      for (const auto& p : split_commas(text)) arr.push_back(p);
      return arr;
    }
  }
  return nullptr;
}

json from_file_value(const Key& key, const json& v) {
  if (v.is_null() && key.fallback.is_null()) return v;
  auto bad = [&](const std::string& what) { return ConfigError(key.name, what); };
  auto all_of = [&](auto pred) {
    if (!v.is_array()) return false;
    for (const auto& e : v) {
      if (!pred(e)) return false;
    }
    return true;
  };
  switch (key.type) {
    case KeyType::kInt:
      if (v.is_number_integer()) return v;
      throw bad("expected an integer");
    case KeyType::kSeed:
      if (v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)) return v;
      throw bad("expected a non-negative integer");
    case KeyType::kReal:
      if (v.is_number()) return v.get<double>();
      throw bad("expected a number");
    case KeyType::kString:
      if (v.is_string()) return v;
      throw bad("expected a string");
    case KeyType::kBool:
      if (v.is_boolean()) return v;
      throw bad("expected true or false");
    case KeyType::kIntList:
      if (all_of([](const json& e) { return e.is_number_integer(); })) return v;
      throw bad("expected a list of integers");
    case KeyType::kRealList:
      if (all_of([](const json& e) { return e.is_number(); })) return v;
      throw bad("expected a list of numbers");
    case KeyType::kStringList:
      if (all_of([](const json& e) { return e.is_string(); })) return v;
      throw bad("expected a list of strings");
  }
  return v;
}

// ---- typed access ----------------------------------------------------------

const json& need(const json& cfg, const std::string& key) {
  const auto it = cfg.find(key);
  if (it == cfg.end() || it->is_null()) throw ConfigError(key, "required");
  return *it;
}

std::int64_t get_int(const json& cfg, const std::string& key) { return need(cfg, key).get<std::int64_t>(); }
double get_real(const json& cfg, const std::string& key) { return need(cfg, key).get<double>(); }
std::string get_string(const json& cfg, const std::string& key) { return need(cfg, key).get<std::string>(); }
bool get_bool(const json& cfg, const std::string& key) { return need(cfg, key).get<bool>(); }

int get_positive(const json& cfg, const std::string& key, int min = 1) {
  const auto v = get_int(cfg, key);
  if (v < min || v > 1'000'000'000) throw ConfigError(key, "must be at least " + std::to_string(min));
  return static_cast<int>(v);
}

std::optional<double> get_optional_real(const json& cfg, const std::string& key) {
  const auto it = cfg.find(key);
  if (it == cfg.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

template <typename F>
auto as_config(const std::string& key, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ConfigError(key, e.what());
  }
}

ParamMode get_mode(const json& cfg) {
  return as_config("param_mode", [&] { return parse_param_mode(get_string(cfg, "param_mode")); });
}

ModelSpec get_model(const json& cfg, std::optional<int> n_override = std::nullopt) {
  ModelSpec m;
  m.model = as_config("model", [&] { return parse_model_kind(get_string(cfg, "model")); });
  m.boundary = as_config("boundary", [&] { return parse_boundary(get_string(cfg, "boundary")); });
  m.g = get_real(cfg, "g");
  m.jx = get_real(cfg, "jx");
  m.jy = get_real(cfg, "jy");
  m.jz = get_real(cfg, "jz");
  if (n_override) {
    m.n = *n_override;
  } else if (cfg.contains("n")) {
    m.n = get_positive(cfg, "n", 2);
  }
  return m;
}

std::uint64_t ensure_seed(Context& ctx) {
  json& seed = ctx.cfg["seed"];
  if (seed.is_null()) {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
    ctx.err << "seed " << seed.get<std::uint64_t>() << " (generated)\n";
  }
  return seed.get<std::uint64_t>();
}

VddGraph load_vdd(const std::string& path, bool checked = true) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("vdd", "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return checked ? deserialize(ss.str()) : deserialize_unchecked(ss.str());
}

std::string format_energy(double e) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", e);
  std::string s = buf;
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8g", v);
  return buf;
}

LabeledDataset load_dataset(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("dataset", "cannot read " + path);
  LabeledDataset data;
  try {
    const json doc = json::parse(f);
    if (!doc.is_array()) throw ConfigError("dataset", "expected a list of {bits, label}");
    for (const auto& item : doc) {
      LabeledItem li;
      li.bits = BitString::from_string(item.at("bits").get<std::string>());
      if (item.contains("label")) li.label = item.at("label").get<int>();
      data.items.push_back(std::move(li));
    }
  } catch (const json::exception& e) {
    throw ConfigError("dataset", e.what());
  } catch (const DomainError& e) {
    throw ConfigError("dataset", e.what());
  }
  return data;
}

// ---- key tables ------------------------------------------------------------

std::vector<Key> model_keys(bool with_n, int n_default = 2) {
  std::vector<Key> keys{
      {"model", KeyType::kString, "tfim", "z1z2 | tfim | heisenberg"},
      {"g", KeyType::kReal, 1.0, "TFIM transverse field"},
      {"jx", KeyType::kReal, 1.0, "Heisenberg XX coupling"},
      {"jy", KeyType::kReal, 1.0, "Heisenberg YY coupling"},
      {"jz", KeyType::kReal, 1.0, "Heisenberg ZZ coupling"},
      {"boundary", KeyType::kString, "open", "open | periodic"},
  };
  if (with_n) keys.insert(keys.begin() + 1, {"n", KeyType::kInt, n_default, "qubits"});
  return keys;
}

std::vector<Key> join(std::vector<Key> a, const std::vector<Key>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const Key kOutputDir{"output_dir", KeyType::kString, ".", "directory for outputs"};
const Key kThreads{"threads", KeyType::kInt, 1, "worker threads"};
const Key kSeedKey{"seed", KeyType::kSeed, nullptr, "RNG seed (generated and recorded when absent)"};
const Key kVdd{"vdd", KeyType::kString, nullptr, "VDD file"};

// ---- handlers --------------------------------------------------------------

void cmd_build(Context& ctx) {
  const auto kind = as_config("ansatz", [&] { return parse_ansatz_kind(get_string(ctx.cfg, "ansatz")); });
  const int n = get_positive(ctx.cfg, "n");
  const std::uint64_t seed = ensure_seed(ctx);
  const auto scheme = as_config("init", [&] { return parse_init_scheme(get_string(ctx.cfg, "init"), seed); });
  const VddGraph g = as_config("n", [&] { return init_params(build_ansatz(kind, n), scheme); });
  ctx.write_file(get_string(ctx.cfg, "out"), serialize(g));
  ctx.out << "nodes " << g.node_count() << " parameters " << g.parameter_count() << '\n';
}

void cmd_validate(Context& ctx) {
  const VddGraph g = load_vdd(get_string(ctx.cfg, "vdd"), false);
  const auto diags = validate(g);
  if (diags.empty()) {
    ctx.out << "valid\n";
    return;
  }
  for (const auto& d : diags) ctx.out << d.message << '\n';
  throw std::runtime_error(std::to_string(diags.size()) + " structural violation(s)");
}

void cmd_amplitude(Context& ctx) {
  const VddGraph g = load_vdd(get_string(ctx.cfg, "vdd"));
  const BitString bits = as_config("bits", [&] { return BitString::from_string(get_string(ctx.cfg, "bits")); });
  if (bits.size() != g.num_qubits()) throw ConfigError("bits", "length differs from num_qubits");
  const cplx a = amplitude(g, bits);
  ctx.out << "modulus " << real(std::abs(a)) << " phase " << real(std::arg(a)) << '\n';
}

void cmd_statevector(Context& ctx) {
  const VddGraph g = load_vdd(get_string(ctx.cfg, "vdd"));
  const StateVector sv = to_state_vector(g);
  ctx.out << "bitstring,re,im\n";
  for (std::size_t i = 0; i < sv.amps.size(); ++i) {
    ctx.out << BitString::from_index(i, sv.num_qubits).to_string() << ',' << format_real(sv.amps[i].real()) << ','
            << format_real(sv.amps[i].imag()) << '\n';
  }
}

void cmd_eigen(Context& ctx) {
  const ModelSpec m = get_model(ctx.cfg);
  if (m.n > kDenseMaxQubits) throw ConfigError("n", "dense eigensolve needs n <= 12");
  ctx.out << format_energy(ground_energy(build_model(m)).energy) << '\n';
}

void cmd_sample(Context& ctx) {
  const VddGraph g = load_vdd(get_string(ctx.cfg, "vdd"));
  const int count = get_positive(ctx.cfg, "count");
  const int threads = get_positive(ctx.cfg, "threads");
  const std::uint64_t seed = ensure_seed(ctx);
  if (g.num_qubits() < 2) throw ConfigError("vdd", "sampling with a model needs at least 2 qubits");
  const PauliHamiltonian h = build_model(get_model(ctx.cfg, g.num_qubits()));
  const VmcBatch batch = make_batch(g, h, static_cast<std::size_t>(count), seed, ParamMode::kRaw, threads);
  ctx.write_with("samples.csv", [&](std::ostream& o) { write_batch_csv(batch, o); });
  const EnergyEstimate e = vmc_energy(batch);
  ctx.out << "energy " << format_real(e.mean) << " stderr " << format_real(e.std_error) << '\n';
}

void cmd_train(Context& ctx) {
  TrainConfig tc;
  tc.ansatz = as_config("ansatz", [&] { return parse_ansatz_kind(get_string(ctx.cfg, "ansatz")); });
  tc.loss = as_config("loss", [&] { return parse_loss_kind(get_string(ctx.cfg, "loss")); });
  tc.param_mode = get_mode(ctx.cfg);
  tc.epochs = get_positive(ctx.cfg, "epochs");
  tc.threads = get_positive(ctx.cfg, "threads");
  tc.seed = ensure_seed(ctx);
  tc.e0 = get_optional_real(ctx.cfg, "e0");
  const std::string optimizer = get_string(ctx.cfg, "optimizer");
  const double lr = get_real(ctx.cfg, "lr");
  if (optimizer == "adam") {
    tc.optimizer = AdamConfig{lr, get_real(ctx.cfg, "beta1"), get_real(ctx.cfg, "beta2"), get_real(ctx.cfg, "eps")};
  } else if (optimizer == "sgd") {
    tc.optimizer = SgdConfig{lr};
  } else {
    throw ConfigError("optimizer", "expected adam or sgd");
  }
  const std::string source = get_string(ctx.cfg, "gradient_source");
  if (source == "vmc") {
    tc.source = VmcSource{static_cast<std::size_t>(get_positive(ctx.cfg, "batch_size", 2))};
  } else if (source != "exact") {
    throw ConfigError("gradient_source", "expected exact or vmc");
  }
  const bool data_loss = tc.loss == LossKind::kBce || tc.loss == LossKind::kKl;
  if (data_loss) {
    tc.dataset = load_dataset(get_string(ctx.cfg, "dataset"));
  } else {
    tc.model = get_model(ctx.cfg);
  }

  const TrainTrace trace = train(tc);
  ctx.write_with("trace.csv", [&](std::ostream& o) { write_trace_csv(trace, o); });
  ctx.write_file("final_vdd.json", serialize(trace.final_graph));
  const EpochRecord& last = trace.records.back();
  ctx.out << "epochs " << trace.records.size() << " loss " << format_real(last.loss);
  if (last.relative_error) ctx.out << " relative_error " << format_real(*last.relative_error);
  ctx.out << '\n';
}

void cmd_variance_scan(Context& ctx) {
  VarianceScanConfig sc;
  sc.model = get_model(ctx.cfg, 2);
  sc.n_values = need(ctx.cfg, "n_values").get<std::vector<int>>();
  sc.num_seeds = get_positive(ctx.cfg, "num_seeds", 2);
  sc.tracked_params = need(ctx.cfg, "tracked").get<std::vector<std::string>>();
  sc.base_seed = ensure_seed(ctx);
  sc.param_mode = get_mode(ctx.cfg);
  sc.threads = get_positive(ctx.cfg, "threads");
  const VarianceScanResult result = as_config("n_values", [&] { return variance_scan(sc); });
  for (const auto& notice : result.notices) ctx.err << notice << '\n';
  ctx.write_with("variance.csv", [&](std::ostream& o) { write_variance_csv(result, o); });
  ctx.write_with("fits.csv", [&](std::ostream& o) { write_fits_csv(result, o); });
  for (const auto& f : result.fits) {
    ctx.out << f.param << " slope " << real(f.fit.slope) << " r2 " << real(f.fit.r_squared) << '\n';
  }
}

void cmd_g_sweep(Context& ctx) {
  const auto gs = need(ctx.cfg, "g_values").get<std::vector<double>>();
  if (gs.empty()) throw ConfigError("g_values", "empty list");
  const int n = get_positive(ctx.cfg, "n", 2);
  if (n > kDenseMaxQubits) throw ConfigError("n", "g sweep needs n <= 12");
  const auto rows = g_sweep(gs, n, get_positive(ctx.cfg, "epochs"), ensure_seed(ctx), get_real(ctx.cfg, "lr"),
                            get_mode(ctx.cfg));
  ctx.write_with("sweep.csv", [&](std::ostream& o) { write_sweep_csv(rows, o); });
  for (const auto& r : rows) {
    ctx.out << "g " << real(r.g) << " relative_error " << real(r.relative_error) << " dimer "
            << real(r.dimer_relative_error) << '\n';
  }
}

void cmd_curves(Context& ctx) {
  const int n = get_positive(ctx.cfg, "n", 2);
  if (n > kDenseMaxQubits) throw ConfigError("n", "training curves need n <= 12");
  const auto results = training_curves(default_curve_panels(n), get_positive(ctx.cfg, "epochs"),
                                       get_real(ctx.cfg, "lr"), ensure_seed(ctx), get_mode(ctx.cfg));
  for (const auto& r : results) {
    std::ostringstream csv;
    write_trace_csv(r.trace, csv);
    ctx.write_file("curve_" + r.panel.name + ".csv", csv.str());
    std::istringstream in(csv.str());
    const CsvTable table = read_csv(in);
    ctx.write_file("curve_" + r.panel.name + ".svg", render_svg(table, "epoch", "relative_error", true));
    ctx.out << r.panel.name << " relative_error " << real(*r.trace.records.back().relative_error) << '\n';
  }
}

void cmd_plot(Context& ctx) {
  const std::string csv = get_string(ctx.cfg, "csv");
  const fs::path target = ctx.output(get_string(ctx.cfg, "out"));
  emit_svg(csv, get_string(ctx.cfg, "x"), get_string(ctx.cfg, "y"), get_bool(ctx.cfg, "log_y"), target);
}

std::vector<Command> commands() {
  const Key mode_trig{"param_mode", KeyType::kString, "trig", "raw | trig"};
  std::vector<Command> cmds;
  cmds.push_back({"build",
                  "build an ansatz and write it as a VDD file",
                  {{"ansatz", KeyType::kString, "accordion", "product | accordion | universal"},
                   {"n", KeyType::kInt, 2, "qubits"},
                   {"init", KeyType::kString, "uniform", "uniform | balanced | basis:<bits>"},
                   kSeedKey,
                   {"out", KeyType::kString, "vdd.json", "output file name"},
                   kOutputDir},
                  true,
                  cmd_build});
  cmds.push_back({"validate", "check structural invariants of a VDD file", {kVdd}, false, cmd_validate});
  cmds.push_back({"amplitude",
                  "print modulus and phase of one amplitude",
                  {kVdd, {"bits", KeyType::kString, nullptr, "bit string, qubit 1 first"}},
                  false,
                  cmd_amplitude});
  cmds.push_back({"statevector", "print the dense state as CSV", {kVdd}, false, cmd_statevector});
  cmds.push_back({"eigen", "print the dense ground energy", model_keys(true), false, cmd_eigen});
  cmds.push_back({"sample",
                  "draw samples and local energies",
                  join({kVdd, {"count", KeyType::kInt, 1000, "samples"}, kSeedKey, kThreads, kOutputDir},
                       model_keys(false)),
                  true,
                  cmd_sample});
  cmds.push_back({"train",
                  "train an ansatz",
                  join(model_keys(true),
                       {{"ansatz", KeyType::kString, "accordion", "product | accordion | universal"},
                        {"epochs", KeyType::kInt, 10000, "optimizer steps"},
                        {"optimizer", KeyType::kString, "adam", "adam | sgd"},
                        {"lr", KeyType::kReal, 0.01, "learning rate"},
                        {"beta1", KeyType::kReal, 0.9, "Adam beta1"},
                        {"beta2", KeyType::kReal, 0.999, "Adam beta2"},
                        {"eps", KeyType::kReal, 1e-8, "Adam epsilon"},
                        mode_trig,
                        {"loss", KeyType::kString, "energy_gap", "energy_gap | energy | bce | kl"},
                        {"gradient_source", KeyType::kString, "exact", "exact | vmc"},
                        {"batch_size", KeyType::kInt, 1024, "VMC samples per step"},
                        {"e0", KeyType::kReal, nullptr, "ground energy (computed when n <= 12)"},
                        {"dataset", KeyType::kString, nullptr, "JSON list of {bits, label} for bce / kl"},
                        kSeedKey,
                        kThreads,
                        kOutputDir}),
                  true,
                  cmd_train});
  cmds.push_back({"variance-scan",
                  "gradient variance against n over random initializations",
                  join(model_keys(false),
                       {{"n_values", KeyType::kIntList, json{2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}, "qubit counts"},
                        {"num_seeds", KeyType::kInt, 100, "random initializations per n"},
                        {"tracked", KeyType::kStringList, json{"r1", "r2", "r-1", "omega3", "phi-1"},
                         "parameter labels"},
                        {"param_mode", KeyType::kString, "raw", "raw | trig"},
                        kSeedKey,
                        kThreads,
                        kOutputDir}),
                  true,
                  cmd_variance_scan});
  cmds.push_back({"g-sweep",
                  "TFIM relative error against field strength",
                  {{"g_values", KeyType::kRealList, json{10.0, 20.0, 40.0}, "field strengths"},
                   {"n", KeyType::kInt, 8, "qubits"},
                   {"epochs", KeyType::kInt, 10000, "optimizer steps"},
                   {"lr", KeyType::kReal, 0.01, "learning rate"},
                   mode_trig,
                   kSeedKey,
                   kOutputDir},
                  true,
                  cmd_g_sweep});
  cmds.push_back({"curves",
                  "training curves for the five reference models",
                  {{"n", KeyType::kInt, 10, "qubits"},
                   {"epochs", KeyType::kInt, 10000, "optimizer steps"},
                   {"lr", KeyType::kReal, 0.01, "learning rate"},
                   mode_trig,
                   kSeedKey,
                   kOutputDir},
                  true,
                  cmd_curves});
  cmds.push_back({"plot",
                  "line chart of two CSV columns as SVG",
                  {{"csv", KeyType::kString, nullptr, "input CSV"},
                   {"x", KeyType::kString, "epoch", "x column"},
                   {"y", KeyType::kString, "relative_error", "y column"},
                   {"log_y", KeyType::kBool, false, "log-scale y axis"},
                   {"out", KeyType::kString, "plot.svg", "output file name"},
                   kOutputDir},
                  true,
                  cmd_plot});
  return cmds;
}

json read_config_file(const std::string& path, const Command& cmd) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config", "cannot read " + path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("config", e.what());
  }
  if (!doc.is_object()) throw ConfigError("config", "expected an object");
  json out = json::object();
  for (const auto& [name, value] : doc.items()) {
    const auto it = std::find_if(cmd.keys.begin(), cmd.keys.end(), [&](const Key& k) { return k.name == name; });
    if (it == cmd.keys.end()) throw ConfigError(name, "unknown key for " + cmd.name);
    out[name] = from_file_value(*it, value);
  }
  return out;
}

void remove_all(const std::vector<fs::path>& paths) {
  for (const auto& p : paths) {
    std::error_code ec;
    fs::remove(p, ec);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const std::vector<Command> cmds = commands();
  CLI::App app{"Variational decision diagram solver", "vdd"};
  app.require_subcommand(1);

  std::map<std::string, std::string> config_paths;
  std::map<std::string, std::map<std::string, std::string>> texts;
  std::map<std::string, std::map<std::string, bool>> flags;
  std::map<std::string, std::map<std::string, CLI::Option*>> options;
  std::map<std::string, CLI::App*> subs;
  for (const auto& cmd : cmds) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    subs[cmd.name] = sub;
    sub->add_option("--config", config_paths[cmd.name], "JSON config file; flags take precedence");
    for (const auto& key : cmd.keys) {
      std::string help = key.help;
      if (!key.fallback.is_null()) help += " [" + key.fallback.dump() + "]";
      if (key.type == KeyType::kBool) {
        options[cmd.name][key.name] = sub->add_flag(flag_name(key.name), flags[cmd.name][key.name], help);
      } else {
        options[cmd.name][key.name] = sub->add_option(flag_name(key.name), texts[cmd.name][key.name], help);
      }
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const auto chosen = std::find_if(cmds.begin(), cmds.end(), [&](const Command& c) { return subs[c.name]->parsed(); });
  const Command& cmd = *chosen;
  Context ctx{json::object(), out, err, fs::path("."), {}};
  try {
    for (const auto& key : cmd.keys) ctx.cfg[key.name] = key.fallback;
    if (!config_paths[cmd.name].empty()) ctx.cfg.update(read_config_file(config_paths[cmd.name], cmd));
    for (const auto& key : cmd.keys) {
      if (options[cmd.name][key.name]->count() == 0) continue;
      ctx.cfg[key.name] = key.type == KeyType::kBool ? json(flags[cmd.name][key.name])
                                                     : from_flag(key, texts[cmd.name][key.name]);
    }
    if (ctx.cfg.contains("threads")) get_positive(ctx.cfg, "threads");
    if (ctx.cfg.contains("output_dir")) ctx.output_dir = get_string(ctx.cfg, "output_dir");

    cmd.handler(ctx);
    if (cmd.writes_outputs) ctx.write_file("resolved_config.json", ctx.cfg.dump(2) + "\n");
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    remove_all(ctx.written);
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    remove_all(ctx.written);
    return 1;
  }
}

}  // namespace vdd::cli
