#include <doctest.h>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "interplab/harness.hpp"

using namespace interplab;

namespace {

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.config_id = "unit";
  cfg.beta = 2.6;
  cfg.r = 0.3;
  cfg.q = 0.3;
  cfg.n_values = {10, 32};
  cfg.trials = 2;
  cfg.alpha = 1e-3;
  cfg.sigma = 1.0;
  cfg.grid_size = 1024;
  cfg.master_seed = 99;
  cfg.modes = {NoiseModel::Kind::gaussian};
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

// Minimal XML well-formedness scan: tags must nest properly, attribute values
// must close their quotes.
bool xml_well_formed(const std::string& text) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '<') {
      ++i;
      continue;
    }
    if (text.compare(i, 4, "<!--") == 0) {
      const auto end = text.find("-->", i);
      if (end == std::string::npos) return false;
      i = end + 3;
      continue;
    }
    if (text.compare(i, 2, "<?") == 0) {
      const auto end = text.find("?>", i);
      if (end == std::string::npos) return false;
      i = end + 2;
      continue;
    }
    const bool closing = text[i + 1] == '/';
    std::size_t j = i + (closing ? 2 : 1);
    std::string name;
    while (j < text.size() && (std::isalnum(text[j]) || text[j] == '-')) {
      name += text[j++];
    }
    if (name.empty()) return false;
    bool self_closing = false;
    while (j < text.size() && text[j] != '>') {
      if (text[j] == '"') {
        j = text.find('"', j + 1);
        if (j == std::string::npos) return false;
      }
      if (text[j] == '/' && j + 1 < text.size() && text[j + 1] == '>') {
        self_closing = true;
      }
      ++j;
    }
    if (j >= text.size()) return false;
    if (closing) {
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else if (!self_closing) {
      stack.push_back(name);
    }
    i = j + 1;
  }
  return stack.empty();
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int count = 0;
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("seed derivation is deterministic, order-sensitive, collision-free") {
  CHECK(derive_seed(1, {"a", 2, "b"}) == derive_seed(1, {"a", 2, "b"}));
  CHECK(derive_seed(1, {"a", "b"}) != derive_seed(1, {"b", "a"}));
  CHECK(derive_seed(1, {"a"}) != derive_seed(2, {"a"}));
  CHECK(derive_seed(1, {"1"}) != derive_seed(1, {1}));  // tagged types

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(1 << 21);
  for (int trial = 0; trial < 1000000; ++trial) {
    seen.insert(derive_seed(42, {"cfg", "gaussian", 100, trial}));
  }
  CHECK(seen.size() == 1000000);
}

TEST_CASE("config parsing") {
  const std::string text =
      "# experiment configuration\n"
      "config_id = demo\n"
      "beta = 2.6\n"
      "r = 0.3333333333333333\n"
      "q = 0.8333333333333333  # class-only regime\n"
      "n_values = 10, 32, 100\n"
      "trials = 7\n"
      "alpha = 1e-3\n"
      "sigma = 1\n"
      "grid_size = 2048\n"
      "master_seed = 31337\n"
      "modes = gaussian, binary\n"
      "diagnostics_enabled = true\n";
  std::istringstream in(text);
  const SweepConfig cfg = parse_sweep_config(in);
  CHECK(cfg.config_id == "demo");
  CHECK(cfg.beta == 2.6);
  CHECK(cfg.n_values == std::vector<long long>{10, 32, 100});
  CHECK(cfg.trials == 7);
  CHECK(cfg.grid_size == 2048);
  CHECK(cfg.master_seed == 31337);
  CHECK(cfg.modes.size() == 2);
  CHECK(cfg.diagnostics_enabled);

  auto reject = [](const std::string& body) {
    std::istringstream bad(body);
    CHECK_THROWS_AS(parse_sweep_config(bad), InvalidParams);
  };
  reject("config_id = x\nbeta = 2.6\nr = 0.3\n");              // missing q
  reject("config_id = x\nbeta = 2.6\nr = 0.3\nq = 0.3\nwhat = 1\n");
  reject("config_id = x\nbeta = 2.6\nbeta = 2.7\nr = 0.3\nq = 0.3\n");
  reject("config_id = x\nbeta = 2.6\nr = 0.3\nq = 0.3\nmodes = fancy\n");
  reject("config_id = x\nbeta = 2.6\nr = 0.3\nq = 2.4\n");     // q >= beta - r
  reject("config_id = x\nbeta = 2.6\nr = 0.3\nq = 0.3\nn_values = 10, 10\n");
  reject("config_id = x\nbeta = 2.6\nr = 0.3\nq = 0.3\nn_values = 10, 9000\n");
}

TEST_CASE("a trial is bitwise reproducible and sane") {
  const SweepConfig cfg = small_config();
  const RiskRecord a = run_trial(cfg, 32, 1, NoiseModel::Kind::gaussian);
  const RiskRecord b = run_trial(cfg, 32, 1, NoiseModel::Kind::gaussian);
  CHECK(a.seed == b.seed);
  CHECK(a.rel_l2_error == b.rel_l2_error);
  CHECK(a.rel_excess_risk == b.rel_excess_risk);
  CHECK(a.resamples == 0);
  CHECK(a.rel_l2_error >= 0.0);
  CHECK(a.rel_excess_risk >= 0.0);
  CHECK(a.rel_excess_risk <= 1.0 + 2.0 / cfg.grid_size);
}

TEST_CASE("noise-free ridge keeps some signal") {
  SweepConfig cfg = small_config();
  cfg.sigma = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const RiskRecord rec = run_trial(cfg, 32, trial, NoiseModel::Kind::gaussian);
    CHECK(rec.rel_l2_error < 1.0);
  }
}

TEST_CASE("sweep cardinality and summary consistency") {
  SweepConfig cfg = small_config();
  cfg.modes = {NoiseModel::Kind::gaussian, NoiseModel::Kind::binary};
  cfg.trials = 3;
  const SweepResult result = run_sweep(cfg, 2);
  CHECK(result.records.size() ==
        cfg.modes.size() * cfg.n_values.size() * static_cast<std::size_t>(cfg.trials) -
            result.failures.size());
  CHECK(result.failures.empty());

  for (const SummaryPoint& point : result.summary) {
    double sum_l2 = 0.0, sum_ex = 0.0;
    int count = 0;
    for (const RiskRecord& rec : result.records) {
      if (rec.mode == point.mode && rec.n == point.n) {
        sum_l2 += rec.rel_l2_error;
        sum_ex += rec.rel_excess_risk;
        ++count;
      }
    }
    REQUIRE(count == point.count);
    CHECK(point.mean_rel_l2 ==
          doctest::Approx(sum_l2 / count).epsilon(1e-12));
    CHECK(point.mean_rel_excess ==
          doctest::Approx(sum_ex / count).epsilon(1e-12));
  }
}

TEST_CASE("single-cell sweep yields exactly one record") {
  SweepConfig cfg = small_config();
  cfg.n_values = {10};
  cfg.trials = 1;
  const SweepResult result = run_sweep(cfg, 1);
  CHECK(result.records.size() == 1);
  CHECK(result.summary.size() == 1);
}

TEST_CASE("permuting n_values leaves the record set unchanged") {
  SweepConfig cfg = small_config();
  cfg.trials = 2;
  const SweepResult forward = run_sweep(cfg, 1);

  // run each n in its own sweep, in reverse order, then compare pooled records
  std::vector<RiskRecord> pooled;
  for (auto it = cfg.n_values.rbegin(); it != cfg.n_values.rend(); ++it) {
    SweepConfig single = cfg;
    single.n_values = {*it};
    const SweepResult partial = run_sweep(single, 1);
    pooled.insert(pooled.end(), partial.records.begin(), partial.records.end());
  }
  REQUIRE(pooled.size() == forward.records.size());
  for (const RiskRecord& rec : forward.records) {
    bool found = false;
    for (const RiskRecord& other : pooled) {
      if (other.mode == rec.mode && other.n == rec.n && other.trial == rec.trial) {
        CHECK(other.seed == rec.seed);
        CHECK(other.rel_l2_error == rec.rel_l2_error);
        CHECK(other.rel_excess_risk == rec.rel_excess_risk);
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("csv emission") {
  SweepConfig cfg = small_config();
  cfg.n_values = {10};
  cfg.trials = 1;
  const SweepResult result = run_sweep(cfg, 1);

  SUBCASE("one record gives header plus one row") {
    const std::string path = temp_path("interplab_unit_one.csv");
    emit_csv(result, path);
    const std::string text = read_file(path);
    CHECK(count_occurrences(text, "\n") == 2);
    CHECK(text.rfind("config_id,mode,n,trial,seed,alpha,rel_l2_error,"
                     "rel_excess_risk,cond_RRstar,c_value,resamples,wall_ms",
                     0) == 0);
  }

  SUBCASE("empty results give a header-only file") {
    SweepResult empty = result;
    empty.records.clear();
    const std::string path = temp_path("interplab_unit_empty.csv");
    emit_csv(empty, path);
    const std::string text = read_file(path);
    CHECK(count_occurrences(text, "\n") == 1);
  }

  SUBCASE("re-running the same config is byte-identical") {
    const std::string path_a = temp_path("interplab_unit_a.csv");
    const std::string path_b = temp_path("interplab_unit_b.csv");
    emit_csv(run_sweep(cfg, 2), path_a);
    emit_csv(run_sweep(cfg, 1), path_b);
    CHECK(read_file(path_a) == read_file(path_b));
  }

  SUBCASE("records round-trip through the reader") {
    const std::string path = temp_path("interplab_unit_rt.csv");
    emit_csv(result, path);
    const auto rows = read_records_csv(path);
    REQUIRE(rows.size() == result.records.size());
    CHECK(rows[0].config_id == cfg.config_id);
    CHECK(rows[0].mode == "gaussian");
    CHECK(rows[0].n == 10);
    CHECK(rows[0].rel_l2_error == result.records[0].rel_l2_error);
  }
}

TEST_CASE("svg emission") {
  SweepConfig cfg = small_config();
  cfg.n_values = {10};
  cfg.trials = 1;
  const SweepResult result = run_sweep(cfg, 1);

  SUBCASE("single summary point draws one marker per panel") {
    const std::string path = temp_path("interplab_unit_point.svg");
    emit_svg(result, path);
    const std::string text = read_file(path);
    CHECK(xml_well_formed(text));
    CHECK(count_occurrences(text, "<circle") == 2);
    CHECK(count_occurrences(text, "<polyline") == 0);
  }

  SUBCASE("multi-point series draw polylines and parse as XML") {
    SweepConfig multi = small_config();
    multi.trials = 2;
    const SweepResult swept = run_sweep(multi, 2);
    const std::string path = temp_path("interplab_unit_lines.svg");
    emit_svg(swept, path);
    const std::string text = read_file(path);
    CHECK(xml_well_formed(text));
    CHECK(count_occurrences(text, "<polyline") == 2);  // one per panel
    CHECK(count_occurrences(text, "relative L2 error vs n") == 1);
    CHECK(count_occurrences(text, "relative excess risk vs n") == 1);
  }

  SUBCASE("empty results are rejected") {
    SweepResult empty = result;
    empty.records.clear();
    empty.summary.clear();
    CHECK_THROWS_AS(emit_svg(empty, temp_path("interplab_unit_none.svg")),
                    EmptyResult);
  }

  SUBCASE("plotting straight from a csv") {
    const std::string csv = temp_path("interplab_unit_plot.csv");
    const std::string svg = temp_path("interplab_unit_plot.svg");
    emit_csv(result, csv);
    emit_svg_from_csv(csv, svg);
    CHECK(xml_well_formed(read_file(svg)));
  }
}

TEST_CASE("thread cap honors the environment variable") {
  setenv("INTERPLAB_THREADS", "2", 1);
  CHECK(effective_threads(8) == 2);
  CHECK(effective_threads(1) == 1);
  unsetenv("INTERPLAB_THREADS");
  CHECK(effective_threads(8) == 8);
  CHECK(effective_threads(0) >= 1);
}

}  // TEST_SUITE
