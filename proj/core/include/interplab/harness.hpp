#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "interplab/risks.hpp"

namespace interplab {

/// One component of a seed-derivation label tuple. Strings and integers hash
/// differently (tagged), so ("1") and (1) derive distinct seeds.
class SeedLabel {
 public:
  SeedLabel(std::string_view s);                      // NOLINT(google-explicit-constructor)
  SeedLabel(const std::string& s) : SeedLabel(std::string_view(s)) {}  // NOLINT
  SeedLabel(const char* s) : SeedLabel(std::string_view(s)) {}  // NOLINT
  SeedLabel(long long v);                             // NOLINT
  SeedLabel(int v) : SeedLabel(static_cast<long long>(v)) {}    // NOLINT
  SeedLabel(std::uint64_t v);                         // NOLINT

  std::uint64_t hash() const noexcept { return hash_; }

 private:
  std::uint64_t hash_ = 0;
};

/// Deterministic, order-sensitive derivation of a 64-bit seed from a master
/// seed and a label tuple. Platform-independent.
std::uint64_t derive_seed(std::uint64_t master_seed,
                          std::initializer_list<SeedLabel> labels);

const char* mode_name(NoiseModel::Kind kind);

/// Everything a sweep needs; parsed from flat `key = value` config text.
struct SweepConfig {
  std::string config_id;
  double beta = 0.0;
  double r = 0.0;
  double q = 0.0;
  std::vector<long long> n_values = {10,  18,  32,   56,   100, 178,
                                     316, 562, 1000, 1778, 3162};
  int trials = 100;
  double alpha = 1e-3;
  double sigma = 1.0;
  int grid_size = 8192;
  std::uint64_t master_seed = 0;
  std::vector<NoiseModel::Kind> modes = {NoiseModel::Kind::gaussian,
                                         NoiseModel::Kind::binary};
  bool diagnostics_enabled = false;
  double cell_budget_s = 120.0;

  /// Throws InvalidParams if any invariant fails (n_values increasing,
  /// trials >= 1, alpha >= 0, every (beta, r, q, n) a valid ensemble, n within
  /// the dense-solver cap of 4000).
  void validate() const;

  /// Canonical text form; hashing this yields the provenance config hash.
  std::string serialize() const;
};

/// Parses the flat config format: one `key = value` per line, `#` comments,
/// comma-separated lists. Unknown or duplicate keys are errors.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);

struct SweepFailure {
  std::string mode;
  long long n = 0;
  int trial = 0;
  std::string reason;
};

struct SummaryPoint {
  std::string mode;
  long long n = 0;
  int count = 0;
  double mean_rel_l2 = 0.0;
  double se_rel_l2 = 0.0;
  double mean_rel_excess = 0.0;
  double se_rel_excess = 0.0;
};

struct SweepResult {
  SweepConfig config;
  std::vector<RiskRecord> records;    // sorted by (mode, n, trial)
  std::vector<SweepFailure> failures;
  std::vector<SummaryPoint> summary;  // sorted by (mode, n)
  std::uint64_t config_hash = 0;
  std::string tool_version;
};

/// Full single-cell pipeline: bi-level spectrum -> Fourier kernel -> uniform
/// samples -> target -> observations -> Gram -> ridge solve -> both risks.
/// A numerically singular Gram triggers a resample under a fresh sub-seed, at
/// most 3 times; the resample count lands in the record.
RiskRecord run_trial(const SweepConfig& cfg, long long n, int trial,
                     NoiseModel::Kind mode);

/// Runs every (mode, n, trial) cell, possibly in parallel. Results are
/// deterministic for a fixed config regardless of thread count: every cell is
/// seeded by labels and aggregation sorts before reduction. `threads` = 0
/// picks hardware concurrency; the INTERPLAB_THREADS environment variable
/// caps the final value.
SweepResult run_sweep(const SweepConfig& cfg, int threads = 0);

/// Writes records as CSV with the fixed header
///   config_id,mode,n,trial,seed,alpha,rel_l2_error,rel_excess_risk,
///   cond_RRstar,c_value,resamples,wall_ms
/// sorted by (mode, n, trial), floats at 17 significant digits, absent
/// diagnostics as empty fields. Wall time is only written when
/// `include_timing` is set; by default the field is left empty so repeated
/// runs of the same config are byte-identical.
void emit_csv(const SweepResult& result, const std::string& path,
              bool include_timing = false);

struct CsvRow {
  std::string config_id;
  std::string mode;
  long long n = 0;
  int trial = 0;
  double rel_l2_error = 0.0;
  double rel_excess_risk = 0.0;
};

std::vector<CsvRow> read_records_csv(const std::string& path);

/// Two-panel log-log SVG (relative L2 error vs n, relative excess risk vs n),
/// one polyline per (config_id, mode) series.
void emit_svg(const SweepResult& result, const std::string& path);
void emit_svg_from_csv(const std::string& csv_path, const std::string& svg_path);

/// Requested thread count clamped by INTERPLAB_THREADS (if set) and by the
/// machine; returns at least 1.
int effective_threads(int requested);

}  // namespace interplab
