#include "qkmi/harness.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qkmi/errors.hpp"
#include "qkmi/rng.hpp"

namespace qkmi {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kTrialSalt = 0x7472696c34ULL;  // "tril4"

std::uint64_t double_bits(double v) { return std::bit_cast<std::uint64_t>(v); }

std::string cell_label(const CellCoord& c) {
  std::ostringstream os;
  os << "cell(" << to_string(c.family) << ", v=" << c.variance << ", "
     << to_string(c.model) << ", c=" << c.coefficient << ", N=" << c.n_samples
     << ", " << kernel_kind_name(c.kernel) << ")";
  return os.str();
}

std::string series_label(const KernelSpec& spec) {
  if (std::holds_alternative<GaussianKernel>(spec)) return "gaussian";
  return "quantum-" + to_string(std::get<QuantumKernel>(spec).activation);
}

std::string kernel_activation_name(const KernelSpec& spec) {
  if (const auto* q = std::get_if<QuantumKernel>(&spec)) {
    return to_string(q->activation);
  }
  return "none";
}

json kernel_json(const KernelSpec& spec) {
  json j;
  if (const auto* g = std::get_if<GaussianKernel>(&spec)) {
    j["kind"] = "gaussian";
    j["sigma"] = g->sigma;
  } else {
    const auto& q = std::get<QuantumKernel>(spec);
    j["kind"] = "quantum";
    j["qubits"] = q.circuit.n_qubits;
    j["depth"] = q.circuit.depth;
    j["angle_scale"] = q.angle_scale;
    j["activation"] = to_string(q.activation);
  }
  return j;
}

json estimator_json(const EstimatorConfig& cfg) {
  json j;
  j["criterion"] = criterion_name(cfg);
  if (const auto* mi = std::get_if<MIConfig>(&cfg)) {
    j["kappa"] = mi->kappa;
  } else {
    const auto& smi = std::get<SMIConfig>(cfg);
    if (const auto* c = std::get_if<ConstantEpsilon>(&smi.policy)) {
      j["epsilon_policy"] = "constant";
      j["epsilon"] = c->value;
    } else {
      j["epsilon_policy"] = "decay";
      j["epsilon_scale"] = std::get<DecayEpsilon>(smi.policy).scale;
    }
  }
  return j;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << body;
  out.flush();
  if (!out) throw Error("write failed: " + path);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& raw, const std::string& what) {
  const std::string s = trim(raw);
  double value = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw ParameterError("invalid number for " + what + ": '" + raw + "'");
  }
  return value;
}

long parse_int(const std::string& raw, const std::string& what) {
  const std::string s = trim(raw);
  long value = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw ParameterError("invalid integer for " + what + ": '" + raw + "'");
  }
  return value;
}

std::uint64_t parse_u64(const std::string& raw, const std::string& what) {
  const std::string s = trim(raw);
  std::uint64_t value = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw ParameterError("invalid seed for " + what + ": '" + raw + "'");
  }
  return value;
}

bool parse_bool(const std::string& raw, const std::string& what) {
  const std::string s = trim(raw);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw ParameterError("invalid boolean for " + what + ": '" + raw + "'");
}

std::vector<std::string> parse_list(const std::string& raw,
                                    const std::string& what) {
  std::vector<std::string> items;
  for (const auto& part : split(raw, ',')) {
    const std::string item = trim(part);
    if (!item.empty()) items.push_back(item);
  }
  if (items.empty()) throw ParameterError("empty list for " + what);
  return items;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), p);
}

std::uint64_t trial_seed(std::uint64_t base_seed, const CellCoord& coord,
                         bool gaussian_noise, int trial_index) {
  // Kernel and estimator are excluded on purpose: every variant of a data
  // cell replays the same scenarios, and a single cell rerun reproduces a
  // sweep cell exactly.
  return stable_hash64({kTrialSalt, base_seed,
                        static_cast<std::uint64_t>(coord.family),
                        double_bits(coord.variance),
                        static_cast<std::uint64_t>(coord.model),
                        double_bits(coord.coefficient),
                        static_cast<std::uint64_t>(coord.n_samples),
                        static_cast<std::uint64_t>(gaussian_noise),
                        static_cast<std::uint64_t>(trial_index)});
}

CellResult aggregate_cell(const CellCoord& coord,
                          std::vector<TrialRecord> records) {
  CellResult cell;
  cell.coord = coord;
  const auto t = static_cast<double>(records.size());
  long successes = 0;
  double slack_sum = 0;
  for (const auto& rec : records) {
    successes += rec.verdict.success ? 1 : 0;
    slack_sum += rec.verdict.slack;
  }
  cell.correct_ratio_pct = 100.0 * static_cast<double>(successes) / t;
  cell.slack_mean = slack_sum / t;
  double sq = 0;
  for (const auto& rec : records) {
    const double d = rec.verdict.slack - cell.slack_mean;
    sq += d * d;
  }
  cell.slack_std = records.size() > 1 ? std::sqrt(sq / (t - 1.0)) : 0.0;
  cell.records = std::move(records);
  return cell;
}

CellResult run_cell(const CellCoord& coord, const EstimatorConfig& estimator,
                    int trials, std::uint64_t base_seed, bool gaussian_noise) {
  if (trials < 1) throw ParameterError("trials must be at least 1");

  std::vector<TrialRecord> records(static_cast<std::size_t>(trials));
  std::exception_ptr first_error;
  int first_error_index = trials;

#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    try {
      const auto t0 = std::chrono::steady_clock::now();
      TrialRecord rec;
      rec.index = t;
      rec.seed = trial_seed(base_seed, coord, gaussian_noise, t);
      const ScenarioSample sample = generate_scenario(
          {coord.family, coord.variance}, {coord.model, coord.coefficient},
          static_cast<std::size_t>(coord.n_samples), rec.seed, gaussian_noise);
      rec.verdict = verdict(scores(sample, coord.kernel, estimator));
      rec.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      records[static_cast<std::size_t>(t)] = rec;
    } catch (...) {
#pragma omp critical(qkmi_run_cell_error)
      if (t < first_error_index) {
        first_error_index = t;
        first_error = std::current_exception();
      }
    }
  }

  if (first_error) {
    const std::string where =
        cell_label(coord) + " trial " + std::to_string(first_error_index);
    try {
      std::rethrow_exception(first_error);
    } catch (const ConditioningError& e) {
      throw ConditioningError(where + ": " + e.what(), e.pivot_index);
    } catch (const std::exception& e) {
      throw Error(where + ": " + e.what());
    }
  }
  return aggregate_cell(coord, std::move(records));
}

ExperimentReport run_sweep(const ExperimentConfig& config) {
  if (config.families.empty() || config.variances.empty() ||
      config.models.empty() || config.coefficients.empty() ||
      config.sample_sizes.empty() || config.kernels.empty()) {
    throw ParameterError("sweep grids must all be non-empty");
  }
  if (config.trials < 1) throw ParameterError("trials must be at least 1");

  ExperimentReport report;
  report.config = config;
  for (const auto family : config.families) {
    for (const double variance : config.variances) {
      for (const auto model : config.models) {
        for (const double coefficient : config.coefficients) {
          for (const int n_samples : config.sample_sizes) {
            for (const auto& kernel : config.kernels) {
              const CellCoord coord{family,      variance,  model,
                                    coefficient, n_samples, kernel};
              report.cells.push_back(run_cell(coord, config.estimator,
                                              config.trials, config.base_seed,
                                              config.gaussian_noise));
            }
          }
        }
      }
    }
  }
  return report;
}

namespace {

std::string cells_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "distribution,variance,model,coefficient,samples,kernel,activation,"
        "criterion,correct_ratio_pct,slack_mean,slack_std,trials,seed\n";
  for (const auto& cell : report.cells) {
    const auto& c = cell.coord;
    os << to_string(c.family) << ',' << format_double(c.variance) << ','
       << to_string(c.model) << ',' << format_double(c.coefficient) << ','
       << c.n_samples << ',' << kernel_kind_name(c.kernel) << ','
       << kernel_activation_name(c.kernel) << ','
       << criterion_name(report.config.estimator) << ','
       << format_double(cell.correct_ratio_pct) << ','
       << format_double(cell.slack_mean) << ','
       << format_double(cell.slack_std) << ',' << cell.records.size() << ','
       << report.config.base_seed << '\n';
  }
  return os.str();
}

std::string plot_csv(const ExperimentReport& report) {
  // Key the long-format rows by the first grid axis that actually sweeps.
  std::string axis = "samples";
  if (report.config.variances.size() > 1) {
    axis = "variance";
  } else if (report.config.sample_sizes.size() > 1) {
    axis = "samples";
  } else if (report.config.coefficients.size() > 1) {
    axis = "coefficient";
  }
  std::ostringstream os;
  os << "axis,axis_value,series,distribution,variance,model,coefficient,"
        "samples,correct_ratio_pct,slack_mean,slack_std\n";
  for (const auto& cell : report.cells) {
    const auto& c = cell.coord;
    const double axis_value = axis == "variance"
                                  ? c.variance
                                  : (axis == "coefficient"
                                         ? c.coefficient
                                         : static_cast<double>(c.n_samples));
    os << axis << ',' << format_double(axis_value) << ','
       << series_label(c.kernel) << ',' << to_string(c.family) << ','
       << format_double(c.variance) << ',' << to_string(c.model) << ','
       << format_double(c.coefficient) << ',' << c.n_samples << ','
       << format_double(cell.correct_ratio_pct) << ','
       << format_double(cell.slack_mean) << ','
       << format_double(cell.slack_std) << '\n';
  }
  return os.str();
}

json report_json(const ExperimentReport& report) {
  const auto& cfg = report.config;
  json config;
  {
    json families = json::array();
    for (const auto f : cfg.families) families.push_back(to_string(f));
    json models = json::array();
    for (const auto m : cfg.models) models.push_back(to_string(m));
    json kernels = json::array();
    for (const auto& k : cfg.kernels) kernels.push_back(kernel_json(k));
    config["families"] = families;
    config["variances"] = cfg.variances;
    config["models"] = models;
    config["coefficients"] = cfg.coefficients;
    config["sample_sizes"] = cfg.sample_sizes;
    config["kernels"] = kernels;
    config["estimator"] = estimator_json(cfg.estimator);
    config["trials"] = cfg.trials;
    config["base_seed"] = cfg.base_seed;
    config["gaussian_noise"] = cfg.gaussian_noise;
  }

  json cells = json::array();
  for (const auto& cell : report.cells) {
    const auto& c = cell.coord;
    json jc;
    jc["distribution"] = to_string(c.family);
    jc["variance"] = c.variance;
    jc["model"] = to_string(c.model);
    jc["coefficient"] = c.coefficient;
    jc["samples"] = c.n_samples;
    jc["kernel"] = kernel_json(c.kernel);
    jc["correct_ratio_pct"] = cell.correct_ratio_pct;
    jc["slack_mean"] = cell.slack_mean;
    jc["slack_std"] = cell.slack_std;
    json trials = json::array();
    for (const auto& rec : cell.records) {
      json jt;
      jt["index"] = rec.index;
      jt["seed"] = rec.seed;
      jt["success"] = rec.verdict.success;
      jt["slack"] = rec.verdict.slack;
      jt["scores"] = {{"s1", rec.verdict.scores.s1},
                      {"s2", rec.verdict.scores.s2},
                      {"s3", rec.verdict.scores.s3},
                      {"i12", rec.verdict.scores.i12},
                      {"i13", rec.verdict.scores.i13},
                      {"i23", rec.verdict.scores.i23}};
      jt["wall_seconds"] = rec.wall_seconds;
      trials.push_back(std::move(jt));
    }
    jc["trials"] = std::move(trials);
    cells.push_back(std::move(jc));
  }

  json doc;
  doc["config"] = std::move(config);
  doc["cells"] = std::move(cells);
  return doc;
}

}  // namespace

void emit_report(const ExperimentReport& report, const std::string& prefix) {
  if (prefix.empty()) throw ParameterError("output prefix must not be empty");
  write_file(prefix + ".csv", cells_csv(report));
  write_file(prefix + ".json", report_json(report).dump(2) + "\n");
  write_file(prefix + "_plot.csv", plot_csv(report));
}

ExperimentConfig make_config(const std::map<std::string, std::string>& kv) {
  ExperimentConfig config;

  double sigma = 1.0;
  CircuitConfig circuit{};
  double angle_scale = 1.0;
  std::vector<Activation> activations{Activation::TanhShrink};
  std::vector<std::string> kernel_kinds{"gaussian"};
  std::string criterion = "mi";
  MIConfig mi{};
  SMIConfig smi{};
  bool have_epsilon_constant = false, have_epsilon_decay = false;

  for (const auto& [key, value] : kv) {
    if (key == "distribution") {
      config.families.clear();
      for (const auto& item : parse_list(value, key)) {
        config.families.push_back(parse_distribution_family(item));
      }
    } else if (key == "variance") {
      config.variances.clear();
      for (const auto& item : parse_list(value, key)) {
        const double v = parse_double(item, key);
        if (!(v > 0.0)) throw ParameterError("variance must be positive");
        config.variances.push_back(v);
      }
    } else if (key == "model") {
      config.models.clear();
      for (const auto& item : parse_list(value, key)) {
        config.models.push_back(parse_model_form(item));
      }
    } else if (key == "coef") {
      config.coefficients.clear();
      for (const auto& item : parse_list(value, key)) {
        config.coefficients.push_back(parse_double(item, key));
      }
    } else if (key == "samples") {
      config.sample_sizes.clear();
      for (const auto& item : parse_list(value, key)) {
        const long n = parse_int(item, key);
        if (n < 2) throw ParameterError("samples must be at least 2");
        config.sample_sizes.push_back(static_cast<int>(n));
      }
    } else if (key == "kernel") {
      kernel_kinds.clear();
      for (const auto& item : parse_list(value, key)) {
        if (item != "gaussian" && item != "quantum") {
          throw ParameterError("unknown kernel: " + item);
        }
        kernel_kinds.push_back(item);
      }
    } else if (key == "activation") {
      activations.clear();
      for (const auto& item : parse_list(value, key)) {
        activations.push_back(parse_activation(item));
      }
    } else if (key == "sigma") {
      sigma = parse_double(value, key);
      if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
    } else if (key == "qubits") {
      circuit.n_qubits = static_cast<int>(parse_int(value, key));
    } else if (key == "depth") {
      circuit.depth = static_cast<int>(parse_int(value, key));
    } else if (key == "angle-scale") {
      angle_scale = parse_double(value, key);
    } else if (key == "criterion") {
      criterion = trim(value);
      if (criterion != "mi" && criterion != "smi") {
        throw ParameterError("unknown criterion: " + value);
      }
    } else if (key == "kappa") {
      mi.kappa = parse_double(value, key);
      if (!(mi.kappa > 0.0)) throw ParameterError("kappa must be positive");
    } else if (key == "epsilon") {
      const double eps = parse_double(value, key);
      if (!(eps > 0.0)) throw ParameterError("epsilon must be positive");
      smi.policy = ConstantEpsilon{eps};
      have_epsilon_constant = true;
    } else if (key == "epsilon-decay") {
      const double scale = parse_double(value, key);
      if (!(scale > 0.0)) {
        throw ParameterError("epsilon-decay scale must be positive");
      }
      smi.policy = DecayEpsilon{scale};
      have_epsilon_decay = true;
    } else if (key == "trials") {
      const long t = parse_int(value, key);
      if (t < 1) throw ParameterError("trials must be at least 1");
      config.trials = static_cast<int>(t);
    } else if (key == "seed") {
      config.base_seed = parse_u64(value, key);
    } else if (key == "noise-gaussian") {
      config.gaussian_noise = parse_bool(value, key);
    } else if (key == "out") {
      config.out_prefix = trim(value);
    } else {
      throw ParameterError("unknown configuration key: " + key);
    }
  }

  if (have_epsilon_constant && have_epsilon_decay) {
    throw ParameterError("epsilon and epsilon-decay are mutually exclusive");
  }
  config.estimator = criterion == "mi" ? EstimatorConfig{mi}
                                       : EstimatorConfig{smi};

  config.kernels.clear();
  for (const auto& kind : kernel_kinds) {
    if (kind == "gaussian") {
      config.kernels.push_back(GaussianKernel{sigma});
    } else {
      for (const auto act : activations) {
        config.kernels.push_back(QuantumKernel{circuit, act, angle_scale});
      }
    }
  }
  return config;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ParameterError(path + ":" + std::to_string(line_no) +
                           ": expected key=value");
    }
    kv[trim(stripped.substr(0, eq))] = trim(stripped.substr(eq + 1));
  }
  return kv;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open CSV file: " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw ParameterError(path + ": empty file");
  for (const auto& name : split(trim(line), ',')) {
    table.names.push_back(trim(name));
  }
  table.columns.resize(table.names.size());
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto cells = split(stripped, ',');
    if (cells.size() != table.names.size()) {
      throw ParameterError(path + ":" + std::to_string(row) +
                           ": expected " + std::to_string(table.names.size()) +
                           " columns, got " + std::to_string(cells.size()));
    }
    for (std::size_t j = 0; j < cells.size(); ++j) {
      table.columns[j].push_back(
          parse_double(cells[j], path + ":" + std::to_string(row)));
    }
  }
  return table;
}

}  // namespace qkmi
