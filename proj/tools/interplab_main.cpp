#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "interplab/diagnostics.hpp"
#include "interplab/harness.hpp"
#include "interplab/theory.hpp"
#include "interplab/version.hpp"

namespace {

using namespace interplab;

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              int trials_override, int threads, bool timing) {
  SweepConfig cfg = load_sweep_config(config_path);
  if (trials_override > 0) {
    cfg.trials = trials_override;
    cfg.validate();
  }
  const SweepResult result = run_sweep(cfg, threads);

  std::filesystem::create_directories(out_dir);
  const std::string csv_path = out_dir + "/" + cfg.config_id + ".csv";
  const std::string svg_path = out_dir + "/" + cfg.config_id + ".svg";
  emit_csv(result, csv_path, timing);
  emit_svg(result, svg_path);

  std::printf("config %s (hash %016llx, tool %s)\n", cfg.config_id.c_str(),
              static_cast<unsigned long long>(result.config_hash),
              result.tool_version.c_str());
  std::printf("%-9s %6s %6s %14s %14s\n", "mode", "n", "count", "mean_rel_l2",
              "mean_rel_exc");
  for (const SummaryPoint& p : result.summary) {
    std::printf("%-9s %6lld %6d %14.6g %14.6g\n", p.mode.c_str(), p.n, p.count,
                p.mean_rel_l2, p.mean_rel_excess);
  }
  for (const SweepFailure& f : result.failures) {
    std::fprintf(stderr, "failed cell: mode %s n %lld trial %d: %s\n",
                 f.mode.c_str(), f.n, f.trial, f.reason.c_str());
  }
  std::printf("wrote %s and %s\n", csv_path.c_str(), svg_path.c_str());
  return 0;
}

int cmd_regime(double beta, double r, double q) {
  const RegimeVerdict verdict = regime(beta, r, q);
  std::printf("regression: %s\n", to_string(verdict.regression).c_str());
  std::printf("classification: %s\n", to_string(verdict.classification).c_str());
  std::printf("preconditions (beta > 2, r < 1): %s\n",
              verdict.preconditions_met ? "met" : "not met");
  return 0;
}

int cmd_bounds(double beta, double r, double q, long long n, double alpha,
               double sigma, double h_norm, std::uint64_t seed) {
  const BiLevelParams params = BiLevelParams::create(n, beta, r, q);
  const FourierKernel kernel = FourierKernel::from_params(params);
  const Spectrum spectrum =
      bilevel_spectrum(params, Indexing::fourier_symmetric);

  Xoshiro256pp rng(derive_seed(seed, {"bounds", n}));
  const SampleSet samples =
      draw_uniform_samples(static_cast<std::size_t>(n), rng);
  const ConcentrationReport report =
      concentration_report(kernel, samples, alpha, seed);

  std::printf("ensemble: n=%lld p=%lld d=%lld gamma=%.6g\n", params.n, params.p,
              params.d, params.gamma);
  std::printf("residual Gram bracket: alpha_L=%.6g alpha_U=%.6g cond=%.6g\n",
              alpha + report.lambda_min_rr_star,
              alpha + report.lambda_max_rr_star, report.condition);
  std::printf("top-block deviation ||C*C/n - I|| = %.6g\n",
              report.deviation_cstar_c);
  std::printf("c value = %.6g%s\n", report.c_value,
              report.c_value >= 1.0 ? "  (>= 1: bias bounds inapplicable)" : "");

  const RegularizationBracket br = bracket(alpha + report.lambda_min_rr_star,
                                           alpha + report.lambda_max_rr_star);
  std::printf("alpha_bar=%.6g alpha_tilde=%.6g survival s=%.6g\n", br.alpha_bar,
              br.alpha_tilde, survival_factor(static_cast<double>(n), br.alpha_bar));

  const double lambda_p1 = spectrum.lambda_tail_max();
  const double tr = trace_rstar_r(kernel, samples);
  const double c_for_bias = std::min(report.c_value, 0.999999);
  std::printf("bias bound         = %.6g\n",
              bias_bound(br, static_cast<double>(n), 1.0, 1.0, lambda_p1,
                         c_for_bias, h_norm));
  std::printf("refined bias bound = %.6g\n",
              refined_bias_bound(br, static_cast<double>(n), 1.0, 1.0,
                                 lambda_p1, c_for_bias, h_norm));
  std::printf("variance bound     = %.6g  (sigma=%.3g, p_count=%lld, tr=%.6g)\n",
              variance_bound(br, static_cast<double>(n),
                             static_cast<double>(spectrum.top_count()), tr,
                             sigma * sigma),
              sigma, spectrum.top_count(), tr);
  return 0;
}

int cmd_condition(long long n, long long d, double tau, int trials, long long p,
                  double gamma, std::uint64_t seed) {
  const double bound = condition_lower_bound(n, d, tau);
  const FourierKernel kernel = FourierKernel::create(p, d, gamma);
  int exceed = 0;
  std::printf("closed-form lower bound (tau=%.3g): %.6g\n", tau, bound);
  for (int t = 0; t < trials; ++t) {
    Xoshiro256pp rng(derive_seed(seed, {"condition", n, d, t}));
    const SampleSet samples =
        draw_uniform_samples(static_cast<std::size_t>(n), rng);
    const ResidualGramStats stats = residual_gram_stats(kernel, samples);
    const double condition = stats.lambda_max / stats.lambda_min;
    if (condition >= bound) ++exceed;
    std::printf("trial %2d: cond(RR*) = %.6g\n", t, condition);
  }
  std::printf("exceedance fraction: %d/%d = %.3f\n", exceed, trials,
              static_cast<double>(exceed) / trials);
  return 0;
}

int cmd_distortion(double lambda1, double lambdap, double b) {
  const Distortion d = distortion_s_star(lambda1, lambdap, b);
  std::printf("s_star    = %.12g\n", d.s_star);
  std::printf("objective = %.12g\n", d.objective);
  std::printf("ratio     = %.12g\n", distortion_ratio(lambda1, lambdap, b));
  return 0;
}

int cmd_plot(const std::string& in_csv, const std::string& out_svg) {
  emit_svg_from_csv(in_csv, out_svg);
  std::printf("wrote %s\n", out_svg.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interplab: kernel interpolation laboratory"};
  app.set_version_flag("--version", interplab::kToolVersion);
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand("sweep", "run a risk sweep from a config file");
  std::string config_path, out_dir = ".";
  int trials_override = 0, threads = 0;
  bool timing = false;
  sweep->add_option("--config", config_path, "config file (key = value lines)")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", out_dir, "output directory")->required();
  sweep->add_option("--trials", trials_override,
                    "override the config's trial count");
  sweep->add_option("--threads", threads,
                    "worker threads (0 = hardware; INTERPLAB_THREADS caps)");
  sweep->add_flag("--timing", timing,
                  "write wall_ms to the CSV (breaks byte-identity of reruns)");

  auto* regime_cmd = app.add_subcommand("regime", "asymptotic regime verdict");
  double beta = 0.0, r = 0.0, q = 0.0;
  regime_cmd->add_option("--beta", beta)->required();
  regime_cmd->add_option("--r", r)->required();
  regime_cmd->add_option("--q", q)->required();

  auto* bounds = app.add_subcommand(
      "bounds", "evaluate bias/variance bounds with diagnostic-fed inputs");
  long long bounds_n = 0;
  double bounds_alpha = 1e-3, bounds_sigma = 1.0, bounds_hnorm = 1.0;
  std::uint64_t bounds_seed = 0;
  bounds->add_option("--beta", beta)->required();
  bounds->add_option("--r", r)->required();
  bounds->add_option("--q", q)->required();
  bounds->add_option("--n", bounds_n)->required()->check(CLI::PositiveNumber);
  bounds->add_option("--alpha", bounds_alpha);
  bounds->add_option("--sigma", bounds_sigma);
  bounds->add_option("--hnorm", bounds_hnorm, "Hilbert norm of the target");
  bounds->add_option("--seed", bounds_seed);

  auto* condition = app.add_subcommand(
      "condition", "empirical residual-Gram condition vs the closed-form bound");
  long long cond_n = 0, cond_d = 0, cond_p = 10;
  double cond_tau = 3.0, cond_gamma = 1e-3;
  int cond_trials = 20;
  std::uint64_t cond_seed = 0;
  condition->add_option("--n", cond_n)->required()->check(CLI::PositiveNumber);
  condition->add_option("--d", cond_d)->required()->check(CLI::PositiveNumber);
  condition->add_option("--tau", cond_tau)->required();
  condition->add_option("--trials", cond_trials)->required();
  condition->add_option("--p", cond_p, "top half-bandwidth (default 10)");
  condition->add_option("--gamma", cond_gamma, "tail level (condition-invariant)");
  condition->add_option("--seed", cond_seed);

  auto* distortion = app.add_subcommand(
      "distortion", "optimal scalar survival approximation over the top block");
  double lambda1 = 0.0, lambdap = 0.0, b = 0.0;
  distortion->add_option("--lambda1", lambda1)->required();
  distortion->add_option("--lambdap", lambdap)->required();
  distortion->add_option("--b", b)->required();

  auto* plot = app.add_subcommand("plot", "render a sweep CSV as a static SVG");
  std::string in_csv, out_svg;
  plot->add_option("--in", in_csv, "input CSV")->required()->check(CLI::ExistingFile);
  plot->add_option("--out", out_svg, "output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*sweep) {
      return cmd_sweep(config_path, out_dir, trials_override, threads, timing);
    }
    if (*regime_cmd) return cmd_regime(beta, r, q);
    if (*bounds) {
      return cmd_bounds(beta, r, q, bounds_n, bounds_alpha, bounds_sigma,
                        bounds_hnorm, bounds_seed);
    }
    if (*condition) {
      return cmd_condition(cond_n, cond_d, cond_tau, cond_trials, cond_p,
                           cond_gamma, cond_seed);
    }
    if (*distortion) return cmd_distortion(lambda1, lambdap, b);
    if (*plot) return cmd_plot(in_csv, out_svg);
  } catch (const interplab::InvalidParams& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
