#include "interplab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>
#include <tuple>

#include "interplab/diagnostics.hpp"
#include "interplab/spectra.hpp"
#include "interplab/version.hpp"

namespace interplab {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t fnv1a_string(std::string_view s) {
  std::uint64_t h = fnv1a(kFnvOffset, "s", 1);
  return fnv1a(h, s.data(), s.size());
}

std::uint64_t fnv1a_integer(std::uint64_t v) {
  std::uint64_t h = fnv1a(kFnvOffset, "i", 1);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
  return fnv1a(h, bytes, 8);
}

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw InvalidParams("config: bad numeric value for '" + key + "': " + value);
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  long long v = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw InvalidParams("config: bad integer value for '" + key + "': " + value);
  }
  return v;
}

std::uint64_t parse_uint64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw InvalidParams("config: bad unsigned value for '" + key + "': " + value);
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw InvalidParams("config: bad boolean value for '" + key + "': " + value);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

SeedLabel::SeedLabel(std::string_view s) : hash_(fnv1a_string(s)) {}
SeedLabel::SeedLabel(long long v)
    : hash_(fnv1a_integer(static_cast<std::uint64_t>(v))) {}
SeedLabel::SeedLabel(std::uint64_t v) : hash_(fnv1a_integer(v)) {}

std::uint64_t derive_seed(std::uint64_t master_seed,
                          std::initializer_list<SeedLabel> labels) {
  std::uint64_t h = splitmix64_mix(master_seed ^ 0x6d61737465727364ULL);
  for (const SeedLabel& label : labels) {
    h = splitmix64_mix(h ^ label.hash());
  }
  return h;
}

const char* mode_name(NoiseModel::Kind kind) {
  return kind == NoiseModel::Kind::gaussian ? "gaussian" : "binary";
}

void SweepConfig::validate() const {
  if (config_id.empty()) throw InvalidParams("config: config_id is required");
  if (n_values.empty()) throw InvalidParams("config: n_values must be nonempty");
  for (std::size_t i = 1; i < n_values.size(); ++i) {
    if (n_values[i] <= n_values[i - 1]) {
      throw InvalidParams("config: n_values must be strictly increasing");
    }
  }
  if (trials < 1) throw InvalidParams("config: trials must be >= 1");
  if (alpha < 0.0) throw InvalidParams("config: alpha must be >= 0");
  if (sigma < 0.0) throw InvalidParams("config: sigma must be >= 0");
  if (grid_size < 1024) throw InvalidParams("config: grid_size must be >= 1024");
  if (modes.empty()) throw InvalidParams("config: modes must be nonempty");
  if (cell_budget_s <= 0.0) throw InvalidParams("config: cell budget must be > 0");
  for (long long n : n_values) {
    if (n > 4000) {
      throw InvalidParams("config: n exceeds the dense-solver cap of 4000");
    }
    BiLevelParams::create(n, beta, r, q);  // throws if the point is invalid
  }
}

std::string SweepConfig::serialize() const {
  std::ostringstream out;
  out << "config_id = " << config_id << "\n";
  out << "beta = " << format_double(beta) << "\n";
  out << "r = " << format_double(r) << "\n";
  out << "q = " << format_double(q) << "\n";
  out << "n_values = ";
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    out << (i ? ", " : "") << n_values[i];
  }
  out << "\n";
  out << "trials = " << trials << "\n";
  out << "alpha = " << format_double(alpha) << "\n";
  out << "sigma = " << format_double(sigma) << "\n";
  out << "grid_size = " << grid_size << "\n";
  out << "master_seed = " << master_seed << "\n";
  out << "modes = ";
  for (std::size_t i = 0; i < modes.size(); ++i) {
    out << (i ? ", " : "") << mode_name(modes[i]);
  }
  out << "\n";
  out << "diagnostics_enabled = " << (diagnostics_enabled ? "true" : "false")
      << "\n";
  out << "cell_budget_s = " << format_double(cell_budget_s) << "\n";
  return out.str();
}

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig cfg;
  std::vector<std::string> seen;
  bool has_beta = false, has_r = false, has_q = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw InvalidParams("config line " + std::to_string(line_no) +
                          ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      throw InvalidParams("config: duplicate key '" + key + "'");
    }
    seen.push_back(key);

    if (key == "config_id") {
      cfg.config_id = value;
    } else if (key == "beta") {
      cfg.beta = parse_double(key, value);
      has_beta = true;
    } else if (key == "r") {
      cfg.r = parse_double(key, value);
      has_r = true;
    } else if (key == "q") {
      cfg.q = parse_double(key, value);
      has_q = true;
    } else if (key == "n_values") {
      cfg.n_values.clear();
      for (const auto& item : split_list(value)) {
        cfg.n_values.push_back(parse_int(key, item));
      }
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(parse_int(key, value));
    } else if (key == "alpha") {
      cfg.alpha = parse_double(key, value);
    } else if (key == "sigma") {
      cfg.sigma = parse_double(key, value);
    } else if (key == "grid_size") {
      cfg.grid_size = static_cast<int>(parse_int(key, value));
    } else if (key == "master_seed") {
      cfg.master_seed = parse_uint64(key, value);
    } else if (key == "modes") {
      cfg.modes.clear();
      for (const auto& item : split_list(value)) {
        if (item == "gaussian") {
          cfg.modes.push_back(NoiseModel::Kind::gaussian);
        } else if (item == "binary") {
          cfg.modes.push_back(NoiseModel::Kind::binary);
        } else {
          throw InvalidParams("config: unknown mode '" + item + "'");
        }
      }
    } else if (key == "diagnostics_enabled") {
      cfg.diagnostics_enabled = parse_bool(key, value);
    } else if (key == "cell_budget_s") {
      cfg.cell_budget_s = parse_double(key, value);
    } else {
      throw InvalidParams("config: unknown key '" + key + "'");
    }
  }
  if (!has_beta || !has_r || !has_q) {
    throw InvalidParams("config: beta, r, q are required");
  }
  cfg.validate();
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  return parse_sweep_config(in);
}

RiskRecord run_trial(const SweepConfig& cfg, long long n, int trial,
                     NoiseModel::Kind mode) {
  const auto started = std::chrono::steady_clock::now();
  const BiLevelParams params = BiLevelParams::create(n, cfg.beta, cfg.r, cfg.q);
  const FourierKernel kernel = FourierKernel::from_params(params);
  const char* mode_label = mode_name(mode);

  for (int attempt = 0; attempt <= 3; ++attempt) {
    const std::uint64_t seed = derive_seed(
        cfg.master_seed, {cfg.config_id, mode_label, n, trial, attempt});
    try {
      Xoshiro256pp sample_rng(derive_seed(seed, {"samples"}));
      const SampleSet samples =
          draw_uniform_samples(static_cast<std::size_t>(n), sample_rng);
      const TargetFunction target =
          generate_target(params.p, derive_seed(seed, {"target"}));
      const ObservationSet obs =
          mode == NoiseModel::Kind::gaussian
              ? gaussian_observations(target, samples, cfg.sigma,
                                      derive_seed(seed, {"obs"}))
              : binary_labels(target, samples, derive_seed(seed, {"obs"}));
      const GramMatrix gram = gram_matrix(kernel, samples);
      const DualWeights weights = ridge_solve(gram, obs.y, cfg.alpha, samples);

      RiskRecord record;
      record.mode = mode_label;
      record.n = n;
      record.trial = trial;
      record.seed = seed;
      record.alpha = cfg.alpha;
      record.rel_l2_error = relative_l2_error(weights, kernel, target);
      record.rel_excess_risk =
          excess_classification_risk(weights, kernel, target, cfg.grid_size);
      if (cfg.diagnostics_enabled) {
        const ConcentrationReport report =
            concentration_report(kernel, samples, cfg.alpha, seed);
        record.diagnostics =
            TrialDiagnostics{report.condition, report.c_value};
      }
      record.resamples = attempt;
      record.wall_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - started)
                           .count();
      return record;
    } catch (const GramSingular&) {
      if (attempt == 3) {
        throw TrialFailed(std::string("trial failed after 3 resamples (mode ") +
                          mode_label + ", n " + std::to_string(n) + ", trial " +
                          std::to_string(trial) + "): Gram kept singular");
      }
    }
  }
  throw TrialFailed("unreachable");
}

namespace {

struct Cell {
  NoiseModel::Kind mode;
  long long n;
  int trial;
};

void compute_summary(SweepResult& result) {
  result.summary.clear();
  // records are already sorted by (mode, n, trial)
  std::size_t i = 0;
  while (i < result.records.size()) {
    std::size_t j = i;
    double sum_l2 = 0.0, sum_ex = 0.0;
    while (j < result.records.size() &&
           result.records[j].mode == result.records[i].mode &&
           result.records[j].n == result.records[i].n) {
      sum_l2 += result.records[j].rel_l2_error;
      sum_ex += result.records[j].rel_excess_risk;
      ++j;
    }
    const auto count = static_cast<int>(j - i);
    SummaryPoint point;
    point.mode = result.records[i].mode;
    point.n = result.records[i].n;
    point.count = count;
    point.mean_rel_l2 = sum_l2 / count;
    point.mean_rel_excess = sum_ex / count;
    double var_l2 = 0.0, var_ex = 0.0;
    for (std::size_t k = i; k < j; ++k) {
      const double dl = result.records[k].rel_l2_error - point.mean_rel_l2;
      const double de = result.records[k].rel_excess_risk - point.mean_rel_excess;
      var_l2 += dl * dl;
      var_ex += de * de;
    }
    if (count > 1) {
      point.se_rel_l2 = std::sqrt(var_l2 / (count - 1) / count);
      point.se_rel_excess = std::sqrt(var_ex / (count - 1) / count);
    }
    result.summary.push_back(point);
    i = j;
  }
}

}  // namespace

int effective_threads(int requested) {
  int threads = requested > 0
                    ? requested
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* cap_env = std::getenv("INTERPLAB_THREADS")) {
    const int cap = std::atoi(cap_env);
    if (cap >= 1) threads = std::min(threads, cap);
  }
  return threads;
}

SweepResult run_sweep(const SweepConfig& cfg, int threads) {
  cfg.validate();
  std::vector<Cell> cells;
  for (const auto mode : cfg.modes) {
    for (const long long n : cfg.n_values) {
      for (int trial = 0; trial < cfg.trials; ++trial) {
        cells.push_back(Cell{mode, n, trial});
      }
    }
  }

  std::vector<RiskRecord> records(cells.size());
  std::vector<std::string> errors(cells.size());
  std::vector<char> ok(cells.size(), 0);

  const int worker_count =
      std::min<int>(effective_threads(threads), static_cast<int>(cells.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) break;
      const Cell& cell = cells[i];
      const auto start = std::chrono::steady_clock::now();
      try {
        records[i] = run_trial(cfg, cell.n, cell.trial, cell.mode);
        const double elapsed_s = std::chrono::duration<double>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
        if (elapsed_s > cfg.cell_budget_s) {
          errors[i] = "cell exceeded budget (" + std::to_string(elapsed_s) +
                      " s > " + std::to_string(cfg.cell_budget_s) + " s)";
        } else {
          ok[i] = 1;
        }
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };

  if (worker_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(worker_count));
    for (int t = 0; t < worker_count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SweepResult result;
  result.config = cfg;
  result.tool_version = kToolVersion;
  result.config_hash = fnv1a_string(cfg.serialize());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (ok[i]) {
      result.records.push_back(std::move(records[i]));
    } else {
      result.failures.push_back(SweepFailure{mode_name(cells[i].mode),
                                             cells[i].n, cells[i].trial,
                                             errors[i]});
    }
  }
  auto key = [](const RiskRecord& rec) {
    return std::make_tuple(rec.mode, rec.n, rec.trial);
  };
  std::sort(result.records.begin(), result.records.end(),
            [&](const RiskRecord& a, const RiskRecord& b) {
              return key(a) < key(b);
            });
  std::sort(result.failures.begin(), result.failures.end(),
            [](const SweepFailure& a, const SweepFailure& b) {
              return std::tie(a.mode, a.n, a.trial) <
                     std::tie(b.mode, b.n, b.trial);
            });
  compute_summary(result);
  return result;
}

}  // namespace interplab
