// photohdc: command-line front end.
//
// Exit status: 0 success, 1 internal failure, 2 usage or input error.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "photohdc/device.hpp"
#include "photohdc/dse.hpp"
#include "photohdc/emit.hpp"
#include "photohdc/hdc.hpp"
#include "photohdc/model_io.hpp"
#include "photohdc/ppa.hpp"
#include "photohdc/reference.hpp"
#include "photohdc/validate.hpp"
#include "photohdc/workload.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace photohdc;

namespace {

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NotFoundError("cannot write '" + path.string() + "'");
  out << text;
}

struct Manifest {
  std::string command;
  ordered_json params = ordered_json::object();
  std::vector<std::string> argv;
  std::string device_path;
  std::string device_hash;
  std::uint64_t seed = 0;

  void write(const fs::path& dir) const {
    ordered_json j;
    j["command"] = command;
    j["parameters"] = params;
    j["argv"] = argv;
    if (!device_path.empty()) j["device_params"] = {{"path", device_path}, {"fnv1a64", device_hash}};
    j["seed"] = seed;
    j["tool_version"] = PHOTOHDC_VERSION;
    j["timestamp"] = utc_timestamp();
    write_text(dir / "manifest.json", j.dump(2) + "\n");
  }
};

// "4:128:4" (inclusive range) or "1,2,4".
template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& flag) {
  std::vector<T> out;
  auto number = [&](const std::string& s) -> T {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return static_cast<T>(v);
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + s + "' is not a number");
    }
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError(flag + ": ranges are lo:hi:step");
    const T lo = number(parts[0]), hi = number(parts[1]), step = number(parts[2]);
    if (!(step > 0) || hi < lo) throw UsageError(flag + ": bad range '" + text + "'");
    for (T v = lo; v <= hi; v += step) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) {
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

// Shared option state.
struct Options {
  std::string device_path = PHOTOHDC_DEFAULT_DEVICE;
  std::string out;
  std::uint64_t seed = 1;
  std::string scheme = "traditional";
  std::string mode = "train";
  std::string dataset;
  std::string rows, cols, units, freq, pds;
  double dac_rate = 10.0;
  int bits = 4;
  std::int64_t dim = kDefaultDim;
  std::size_t levels = hdc::kDefaultLevels;
  std::int64_t queries = kReferenceQueries;
  double power_budget = 20.0;
  double area_budget = 500.0;
  std::string objective = "edap";
  std::string schedule = "streamed";
  // train
  bool header = false;
  int label_column = -1;
  double train_fraction = 0.7;
  // sweep
  std::string axis = "power";
  std::string values;
  // validate
  std::size_t cases = 25;
  // calibrate
  double target_w = 4.83;
  double sram_share = 0.23;
  std::string write_path;
};

struct Loaded {
  DeviceParams device;
  std::string hash;
};

Loaded load_device(const Options& o) {
  const std::string text = read_file(o.device_path);
  Loaded l{parse_device_params(text), fnv1a_hex(text)};
  l.device.validate();
  return l;
}

Manifest manifest_for(const std::string& command, const Options& o, int argc, char** argv) {
  Manifest m;
  m.command = command;
  m.seed = o.seed;
  m.argv.assign(argv, argv + argc);
  return m;
}

fs::path output_dir(const Options& o) {
  const fs::path dir = o.out.empty() ? fs::path("photohdc_out") : fs::path(o.out);
  fs::create_directories(dir);
  return dir;
}

// ---------------------------------------------------------------- train

struct SynthSpec {
  bool graph = false;
  std::size_t d = 16, k = 3, n = 30, vertices = 20;
  double sep = 6.0, degree = 3.0;
};

bool parse_synth(const std::string& s, SynthSpec& spec) {
  std::string body;
  if (s.rfind("synth-graph", 0) == 0) {
    spec.graph = true;
    spec.k = 2;
    spec.n = 60;
    body = s.substr(11);
  } else if (s.rfind("synth", 0) == 0) {
    body = s.substr(5);
  } else {
    return false;
  }
  if (!body.empty() && body.front() == ':') body.erase(0, 1);
  for (const auto& kv : split_names(body)) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--dataset: expected key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const double v = parse_list<double>(kv.substr(eq + 1), "--dataset").front();
    if (key == "d") spec.d = static_cast<std::size_t>(v);
    else if (key == "k") spec.k = static_cast<std::size_t>(v);
    else if (key == "n") spec.n = static_cast<std::size_t>(v);
    else if (key == "sep") spec.sep = v;
    else if (key == "v") spec.vertices = static_cast<std::size_t>(v);
    else if (key == "deg") spec.degree = v;
    else throw UsageError("--dataset: unknown synth key '" + key + "'");
  }
  return true;
}

int cmd_train(const Options& o, Manifest m) {
  if (o.dataset.empty()) throw UsageError("train: --dataset is required");
  const Scheme scheme = parse_scheme(o.scheme);
  SynthSpec synth;
  const bool is_synth = parse_synth(o.dataset, synth);
  const fs::path dir = output_dir(o);

  ModelFile file;
  file.scheme = scheme;
  file.dim = static_cast<std::size_t>(o.dim);
  file.levels = scheme == Scheme::Traditional ? 0 : o.levels;
  file.seed = o.seed;
  ordered_json metrics;

  if (scheme == Scheme::Graph) {
    std::vector<hdc::GraphInstance> graphs;
    if (is_synth) {
      if (!synth.graph) throw UsageError("graph encoding needs an edge-list file or synth-graph");
      graphs = synth_graphs(synth.n, synth.k, synth.vertices, synth.degree, o.seed);
    } else {
      graphs = load_edge_list(o.dataset);
    }
    if (graphs.empty()) throw ParseError(o.dataset + ": no graphs", 0);
    std::size_t classes = 0, nodes = 0;
    for (const auto& g : graphs) {
      classes = std::max(classes, g.label + 1);
      nodes = std::max(nodes, g.vertex_count);
    }
    const auto split = split_graphs(graphs, o.train_fraction, o.seed);
    file.features = nodes;
    const auto model = file.encoding();
    file.trained = hdc::train_single_pass(split.train, classes, model, o.bits);
    auto acc = [&](const std::vector<hdc::GraphInstance>& gs) {
      std::size_t hits = 0;
      for (const auto& g : gs) hits += hdc::predict(model, file.trained, g) == g.label;
      return gs.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(gs.size());
    };
    metrics["n_train"] = split.train.size();
    metrics["n_test"] = split.test.size();
    metrics["train_accuracy"] = acc(split.train);
    metrics["test_accuracy"] = acc(split.test);
  } else {
    hdc::LabeledDataset data;
    if (is_synth) {
      if (synth.graph) throw UsageError("synth-graph needs --scheme graph");
      data = synth_classification(synth.d, synth.k, synth.n, synth.sep, o.seed);
    } else {
      data = load_csv(o.dataset, o.header, o.label_column);
    }
    data.validate();
    const auto split = split_dataset(data, o.train_fraction, o.seed);
    file.features = data.feature_count();
    file.feature_range = split.train.feature_ranges();
    const auto model = file.encoding();
    file.trained = hdc::train_single_pass(split.train, model, o.bits);
    hdc::EncodeStats clamp_stats;
    if (scheme == Scheme::Record) {
      for (const auto& s : split.test.samples) hdc::encode_record(model, s.features, &clamp_stats);
    }
    metrics["n_train"] = split.train.samples.size();
    metrics["n_test"] = split.test.samples.size();
    metrics["train_accuracy"] = hdc::accuracy(model, file.trained, split.train);
    metrics["test_accuracy"] = hdc::accuracy(model, file.trained, split.test);
    metrics["clamped_test_features"] = clamp_stats.clamped;
  }

  save_model(file, dir / "model.json");
  write_text(dir / "metrics.json", metrics.dump(2) + "\n");
  m.params = {{"dataset", o.dataset},  {"scheme", o.scheme}, {"dim", o.dim},
              {"bits", o.bits},        {"levels", file.levels}, {"seed", o.seed},
              {"header", o.header},    {"label_column", o.label_column},
              {"train_fraction", o.train_fraction}};
  m.write(dir);
  std::cout << metrics.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- ppa

AcceleratorConfig single_config(const Options& o, Scheme scheme, Mode mode) {
  AcceleratorConfig c;
  try {
    c = reference_config(scheme, mode == Mode::Combined ? Mode::Inference : mode);
  } catch (const NotFoundError&) {
  }
  auto one = [](const std::string& s, const char* flag) {
    const auto v = parse_list<double>(s, flag);
    if (v.size() != 1) throw UsageError(std::string(flag) + " takes a single value here");
    return v.front();
  };
  if (!o.rows.empty()) c.rows = static_cast<std::int64_t>(one(o.rows, "--rows"));
  if (!o.cols.empty()) c.cols = static_cast<std::int64_t>(one(o.cols, "--cols"));
  if (!o.units.empty()) c.units = static_cast<std::int64_t>(one(o.units, "--units"));
  if (!o.freq.empty()) c.f_ghz = one(o.freq, "--freq-ghz");
  if (!o.pds.empty()) {
    c.pds_per_dac = static_cast<std::int64_t>(one(o.pds, "--pds-per-dac"));
    c.dac_sharing_enabled = c.pds_per_dac > 1;
  }
  c.dac_rate_gsps = o.dac_rate;
  c.bits = o.bits;
  c = c.for_scheme(scheme);
  c.validate();
  return c;
}

ordered_json config_params(const AcceleratorConfig& c) {
  return {{"rows", c.rows},   {"cols", c.cols},         {"units", c.units}, {"f_ghz", c.f_ghz},
          {"pds_per_dac", c.pds_per_dac}, {"dac_rate_gsps", c.dac_rate_gsps}, {"bits", c.bits}};
}

int cmd_ppa(const Options& o, Manifest m) {
  if (o.dataset.empty()) throw UsageError("ppa: --dataset is required");
  const Scheme scheme = parse_scheme(o.scheme);
  const Mode mode = parse_mode(o.mode);
  const auto loaded = load_device(o);
  const auto c = single_config(o, scheme, mode);
  const auto w = make_workload(find_builtin(o.dataset), scheme, o.dim);
  const auto model = o.schedule == "discrete" ? ScheduleModel::Discrete : ScheduleModel::Streamed;
  if (o.schedule != "discrete" && o.schedule != "streamed") throw UsageError("--schedule must be streamed or discrete");
  const auto r = ppa_report(w, c, loaded.device, mode, o.queries, model);

  const std::string json = report_json(r);
  const std::string md = report_markdown_header() + report_markdown_row(r);
  std::cout << json << md;
  if (!r.wire.ok) std::cerr << "warning: row wire delay " << r.wire.delay_ns << " ns exceeds clock period\n";
  if (!o.out.empty()) {
    const fs::path dir = output_dir(o);
    write_text(dir / "report.json", json);
    write_text(dir / "report.md", md);
    m.params = config_params(c);
    m.params["dataset"] = w.name;
    m.params["scheme"] = o.scheme;
    m.params["mode"] = o.mode;
    m.params["dim"] = o.dim;
    m.params["queries"] = o.queries;
    m.params["schedule"] = o.schedule;
    m.device_path = o.device_path;
    m.device_hash = loaded.hash;
    m.write(dir);
  }
  return kOk;
}

// ---------------------------------------------------------------- dse / sweep

SearchSpace grid_from(const Options& o, Scheme scheme, Mode mode) {
  SearchSpace s = SearchSpace::defaults(scheme, mode);
  if (!o.rows.empty()) s.r_values = parse_list<std::int64_t>(o.rows, "--rows");
  if (!o.cols.empty()) s.c_values = parse_list<std::int64_t>(o.cols, "--cols");
  if (!o.units.empty()) s.u_values = parse_list<std::int64_t>(o.units, "--units");
  if (!o.freq.empty()) s.f_values_ghz = parse_list<double>(o.freq, "--freq-ghz");
  if (!o.pds.empty()) s.pds_per_dac_values = parse_list<std::int64_t>(o.pds, "--pds-per-dac");
  s.dac_rate_gsps = o.dac_rate;
  s.bits = o.bits;
  s.validate();
  return s;
}

std::vector<WorkloadSpec> workloads_from(const Options& o, Scheme scheme) {
  if (o.dataset.empty()) return builtin_workloads(scheme, o.dim);
  std::vector<WorkloadSpec> out;
  for (const auto& name : split_names(o.dataset)) out.push_back(make_workload(find_builtin(name), scheme, o.dim));
  return out;
}

ordered_json grid_params(const SearchSpace& s) {
  return {{"rows", s.r_values},        {"cols", s.c_values},
          {"units", s.u_values},       {"f_ghz", s.f_values_ghz},
          {"pds_per_dac", s.pds_per_dac_values}, {"dac_rate_gsps", s.dac_rate_gsps},
          {"bits", s.bits}};
}

int cmd_dse(const Options& o, Manifest m) {
  const Scheme scheme = parse_scheme(o.scheme);
  const Mode mode = parse_mode(o.mode);
  const Objective objective = parse_objective(o.objective);
  const auto loaded = load_device(o);
  const auto space = grid_from(o, scheme, mode);
  const auto workloads = workloads_from(o, scheme);
  const Budgets budgets{o.power_budget, o.area_budget};
  SearchOptions opts;
  opts.n_queries = o.queries;
  opts.keep_feasible = true;
  const auto result = exhaustive_search(space, workloads, budgets, loaded.device, objective, opts);

  const fs::path dir = output_dir(o);
  std::ostringstream csv;
  write_search_csv(csv, result, workloads);
  write_text(dir / "search.csv", csv.str());
  const std::string summary = search_json(result, objective, budgets);
  write_text(dir / "result.json", summary);
  write_text(dir / "summary.md", search_markdown(result));

  m.params = grid_params(space);
  m.params["scheme"] = o.scheme;
  m.params["mode"] = o.mode;
  m.params["objective"] = o.objective;
  m.params["power_budget_w"] = o.power_budget;
  m.params["area_budget_mm2"] = o.area_budget;
  m.params["dim"] = o.dim;
  m.params["queries"] = o.queries;
  ordered_json names = ordered_json::array();
  for (const auto& w : workloads) names.push_back(w.name);
  m.params["datasets"] = names;
  m.device_path = o.device_path;
  m.device_hash = loaded.hash;
  m.write(dir);

  if (!result.best) {
    std::cout << "no feasible design (" << result.evaluated_count << " points evaluated)\n";
    return kOk;
  }
  std::cout << "best: " << result.best->config.label() << "  " << o.objective << " " << result.best->objective
            << "  (" << result.feasible_count << "/" << result.evaluated_count << " feasible)\n"
            << search_markdown(result);
  return kOk;
}

int cmd_sweep(const Options& o, Manifest m) {
  const Scheme scheme = parse_scheme(o.scheme);
  const Mode mode = parse_mode(o.mode);
  const Objective objective = parse_objective(o.objective);
  if (o.axis != "power" && o.axis != "area") throw UsageError("--axis must be power or area");
  const BudgetAxis axis = o.axis == "power" ? BudgetAxis::Power : BudgetAxis::Area;
  if (o.values.empty()) throw UsageError("sweep: --values is required");
  const auto values = parse_list<double>(o.values, "--values");
  const auto loaded = load_device(o);
  const auto space = grid_from(o, scheme, mode);
  const auto workloads = workloads_from(o, scheme);
  SearchOptions opts;
  opts.n_queries = o.queries;
  const double fixed = axis == BudgetAxis::Power ? o.area_budget : o.power_budget;
  const auto curve = budget_sweep(space, workloads, loaded.device, axis, values, fixed, objective, opts);

  const fs::path dir = output_dir(o);
  std::ostringstream csv;
  write_sweep_csv(csv, curve, axis);
  write_text(dir / "sweep.csv", csv.str());
  m.params = grid_params(space);
  m.params["scheme"] = o.scheme;
  m.params["mode"] = o.mode;
  m.params["objective"] = o.objective;
  m.params["axis"] = o.axis;
  m.params["values"] = values;
  m.params[axis == BudgetAxis::Power ? "area_budget_mm2" : "power_budget_w"] = fixed;
  m.params["dim"] = o.dim;
  m.params["queries"] = o.queries;
  m.device_path = o.device_path;
  m.device_hash = loaded.hash;
  m.write(dir);
  std::cout << csv.str();
  return kOk;
}

// ---------------------------------------------------------------- validate / calibrate

int cmd_validate(const Options& o, Manifest m) {
  ValidationOptions vo;
  vo.random_cases = o.cases;
  vo.seed = o.seed;
  DeviceParams device;
  std::string hash;
  bool device_loaded = false;
  try {
    const std::string text = read_file(o.device_path);
    hash = fnv1a_hex(text);
    device = parse_device_params(text);
    device_loaded = true;
  } catch (const std::exception& e) {
    std::cout << "FAIL device params: " << e.what() << "\n";
  }
  if (device_loaded) vo.device = &device;
  const auto report = run_validation(vo);
  for (const auto& c : report.checks) std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  const bool ok = device_loaded && report.ok();
  std::cout << (ok ? "validation passed\n" : "validation FAILED\n");
  if (!o.out.empty()) {
    m.params = {{"cases", o.cases}, {"seed", o.seed}};
    m.device_path = o.device_path;
    m.device_hash = hash;
    m.write(output_dir(o));
  }
  return ok ? kOk : kInternal;
}

int cmd_calibrate(const Options& o, Manifest m) {
  const auto loaded = load_device(o);
  const Scheme scheme = parse_scheme(o.scheme);
  const auto c = single_config(o, scheme, Mode::Training);
  const auto w = make_workload(find_builtin(o.dataset.empty() ? "ISOLET" : o.dataset), scheme, o.dim);
  const auto fit = calibrate(loaded.device, w, c, o.target_w, o.sram_share);
  std::cout << "sram_energy_pj_per_32b_access " << fit.sram_energy_pj << "\n"
            << "converter multiplier " << fit.converter_multiplier << "\n"
            << "dac_ref.energy_pj " << fit.device.dac_ref.energy_pj << "\n"
            << "adc_ref.energy_pj " << fit.device.adc_ref.energy_pj << "\n"
            << "fitted total " << fit.fitted_total_w << " W\n";
  if (!o.write_path.empty()) save_device_params(fit.device, o.write_path);
  if (!o.out.empty()) {
    const fs::path dir = output_dir(o);
    save_device_params(fit.device, dir / "device_params_calibrated.json");
    m.params = config_params(c);
    m.params["dataset"] = w.name;
    m.params["target_w"] = o.target_w;
    m.params["sram_share"] = o.sram_share;
    m.device_path = o.device_path;
    m.device_hash = loaded.hash;
    m.write(dir);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PhotoHDC analytical simulator and design-space explorer"};
  app.set_version_flag("--version", std::string(PHOTOHDC_VERSION));
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--device-params", o.device_path, "Device parameter JSON")->capture_default_str();
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  };
  auto hardware = [&](CLI::App* sub) {
    sub->add_option("--scheme", o.scheme, "traditional | record | graph")->capture_default_str();
    sub->add_option("--mode", o.mode, "train | infer | combined")->capture_default_str();
    sub->add_option("--rows", o.rows, "R (value, list a,b,c or range lo:hi:step)");
    sub->add_option("--cols", o.cols, "C");
    sub->add_option("--units", o.units, "Photonic units U");
    sub->add_option("--freq-ghz", o.freq, "Clock in GHz");
    sub->add_option("--pds-per-dac", o.pds, "PDs sharing one programming DAC");
    sub->add_option("--dac-rate-gsps", o.dac_rate, "DAC sample rate")->capture_default_str();
    sub->add_option("--bits", o.bits, "Operand precision")->capture_default_str();
    sub->add_option("--dim", o.dim, "Hyperdimension D")->capture_default_str();
    sub->add_option("--queries", o.queries, "Inference queries")->capture_default_str();
  };

  auto* train = app.add_subcommand("train", "Single-pass HDC training with held-out accuracy");
  common(train);
  train->add_option("--dataset", o.dataset, "CSV or edge-list path, or synth:d=..,k=..,n=..,sep=.. / synth-graph:..");
  train->add_option("--scheme", o.scheme, "traditional | record | graph")->capture_default_str();
  train->add_option("--dim", o.dim, "Hyperdimension D")->capture_default_str();
  train->add_option("--bits", o.bits, "CHV precision")->capture_default_str();
  train->add_option("--levels", o.levels, "Level hypervectors m")->capture_default_str();
  train->add_flag("--header", o.header, "CSV has a header row");
  train->add_option("--label-column", o.label_column, "Label column (negative counts from the end)")
      ->capture_default_str();
  train->add_option("--train-fraction", o.train_fraction, "Training split")->capture_default_str();

  auto* ppa = app.add_subcommand("ppa", "Latency, power and area of one configuration");
  common(ppa);
  hardware(ppa);
  ppa->add_option("--dataset", o.dataset, "Built-in dataset name");
  ppa->add_option("--schedule", o.schedule, "streamed | discrete")->capture_default_str();

  auto* dse = app.add_subcommand("dse", "Exhaustive design-space search");
  common(dse);
  hardware(dse);
  dse->add_option("--dataset", o.dataset, "Comma-separated built-in datasets (default: all for the scheme)");
  dse->add_option("--power-budget-w", o.power_budget)->capture_default_str();
  dse->add_option("--area-budget-mm2", o.area_budget)->capture_default_str();
  dse->add_option("--objective", o.objective, "edp | edap")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Best objective versus power or area budget");
  common(sweep);
  hardware(sweep);
  sweep->add_option("--dataset", o.dataset, "Comma-separated built-in datasets");
  sweep->add_option("--axis", o.axis, "power | area")->capture_default_str();
  sweep->add_option("--values", o.values, "Budget values, list or range");
  sweep->add_option("--power-budget-w", o.power_budget, "Fixed power budget for area sweeps")->capture_default_str();
  sweep->add_option("--area-budget-mm2", o.area_budget, "Fixed area budget for power sweeps")->capture_default_str();
  sweep->add_option("--objective", o.objective, "edp | edap");
  o.objective = "edap";

  auto* validate = app.add_subcommand("validate", "Golden-model equivalence, formula and regression checks");
  common(validate);
  validate->add_option("--cases", o.cases, "Random instances per scheme")->capture_default_str();

  auto* calib = app.add_subcommand("calibrate", "Fit SRAM and converter energies to a reference power");
  common(calib);
  hardware(calib);
  calib->add_option("--dataset", o.dataset, "Built-in dataset (default ISOLET)");
  calib->add_option("--target-w", o.target_w)->capture_default_str();
  calib->add_option("--sram-share", o.sram_share)->capture_default_str();
  calib->add_option("--write", o.write_path, "Write the calibrated device file here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  if (sweep->parsed() && sweep->count("--objective") == 0) o.objective = "edp";

  try {
    if (train->parsed()) return cmd_train(o, manifest_for("train", o, argc, argv));
    if (ppa->parsed()) return cmd_ppa(o, manifest_for("ppa", o, argc, argv));
    if (dse->parsed()) return cmd_dse(o, manifest_for("dse", o, argc, argv));
    if (sweep->parsed()) return cmd_sweep(o, manifest_for("sweep", o, argc, argv));
    if (validate->parsed()) return cmd_validate(o, manifest_for("validate", o, argc, argv));
    if (calib->parsed()) return cmd_calibrate(o, manifest_for("calibrate", o, argc, argv));
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NotFoundError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
