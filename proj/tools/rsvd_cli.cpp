// Command-line driver: one-shot randomized SVD, bound-verification
// campaigns, budget calculators, and synthetic test-matrix generation.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsvd/rsvd.hpp"

namespace {

rsvd::SpectrumSpec::Kind parse_spectrum_kind(const std::string& s) {
  if (s == "geometric") return rsvd::SpectrumSpec::Kind::geometric;
  if (s == "polynomial") return rsvd::SpectrumSpec::Kind::polynomial;
  if (s == "step") return rsvd::SpectrumSpec::Kind::step;
  if (s == "explicit") return rsvd::SpectrumSpec::Kind::explicit_list;
  throw CLI::ValidationError("--kind", "unknown spectrum kind '" + s + "'");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_budget(const rsvd::IterationBudget& b) {
  std::printf(
      "{\"theorem\": \"%s\", \"count\": %zu, \"epsilon\": %s, "
      "\"alpha\": %s, \"failure_probability\": %s}\n",
      b.theorem.c_str(), b.count, fmt(b.epsilon).c_str(),
      fmt(b.alpha).c_str(), fmt(b.failure_probability).c_str());
}

struct SpectrumFlags {
  std::string kind = "geometric";
  double ratio = 0.5;
  double exponent = 1.0;
  std::size_t gap_position = 1;
  double gap_ratio = 2.0;
  std::vector<double> values;

  void attach(CLI::App* cmd) {
    cmd->add_option("--spectrum,--kind", kind,
                    "spectrum kind: geometric|polynomial|step|explicit");
    cmd->add_option("--ratio", ratio, "geometric decay ratio");
    cmd->add_option("--exponent", exponent, "polynomial decay exponent");
    cmd->add_option("--gap-position", gap_position,
                    "step spectrum: number of leading unit values");
    cmd->add_option("--gap-ratio", gap_ratio,
                    "step spectrum: ratio across the gap");
    cmd->add_option("--values", values, "explicit singular values");
  }

  rsvd::SpectrumSpec build() const {
    rsvd::SpectrumSpec spec;
    spec.kind = parse_spectrum_kind(kind);
    spec.ratio = ratio;
    spec.exponent = exponent;
    spec.gap_position = gap_position;
    spec.gap_ratio = gap_ratio;
    spec.values = values;
    return spec;
  }
};

int run_svd(const std::string& input, std::size_t k, std::size_t p,
            const std::string& method, double epsilon, double alpha,
            long long iterations, std::uint64_t seed, const std::string& out,
            const std::string& format) {
  rsvd::DenseMatrix M = rsvd::read_matrix_market(input);
  const rsvd::SketchMethod m = (method == "power")
                                   ? rsvd::SketchMethod::power
                                   : rsvd::SketchMethod::lanczos;
  rsvd::IterationBudget budget =
      (m == rsvd::SketchMethod::power)
          ? rsvd::budget_power_gap_independent(M.cols(), p, k, epsilon, alpha)
          : rsvd::budget_lanczos_random(M.cols(), p, k, epsilon, alpha);
  if (iterations >= 0) budget.count = static_cast<std::size_t>(iterations);
  rsvd::SketchResult res = rsvd::randomized_svd(M, k, p, m, budget, seed);
  std::printf(
      "{\"method\": \"%s\", \"theorem\": \"%s\", \"iterations\": %zu, "
      "\"spectral_err_sq\": %s, \"frobenius_err_sq\": %s}\n",
      method.c_str(), budget.theorem.c_str(), res.iterations_used,
      fmt(res.spectral_err_sq).c_str(), fmt(res.frobenius_err_sq).c_str());
  if (!out.empty()) {
    rsvd::ExperimentReport rep;
    rep.config.kind = (m == rsvd::SketchMethod::power)
                          ? rsvd::CampaignKind::power_random
                          : rsvd::CampaignKind::lanczos_random;
    rep.config.method = (m == rsvd::SketchMethod::power)
                            ? rsvd::MethodChoice::power
                            : rsvd::MethodChoice::lanczos;
    rep.config.m = M.rows();
    rep.config.n = M.cols();
    rep.config.k = k;
    rep.config.p = p;
    rep.config.epsilon = epsilon;
    rep.config.alpha = alpha;
    rep.config.trials = 1;
    rep.config.seed = seed;
    rep.config.matrix_path = input;
    std::vector<double> sigma = rsvd::svd_reference(M).sigma;
    rsvd::TrialRecord rec;
    rec.trial = 0;
    rec.seed = seed;
    rec.method = method;
    rec.theorem = budget.theorem;
    rec.budget = budget.count;
    rec.spectral_err_sq = res.spectral_err_sq;
    rec.frobenius_err_sq = res.frobenius_err_sq;
    rec.tan_theta_init = std::numeric_limits<double>::quiet_NaN();
    rec.nullspace_residual = std::numeric_limits<double>::quiet_NaN();
    rec.bound =
        rsvd::bound_value(rsvd::BoundKind::random, sigma, k, p, epsilon);
    rec.bound_frobenius = std::numeric_limits<double>::quiet_NaN();
    rec.passed = res.spectral_err_sq <= rec.bound * (1.0 + 1e-6);
    rep.trials.push_back(rec);
    rep.pass_rate = rec.passed ? 1.0 : 0.0;
    rep.required_rate = 0.0;
    rep.overall_pass = rec.passed;
    rsvd::emit_report(rep,
                      format == "csv" ? rsvd::ReportFormat::csv
                                      : rsvd::ReportFormat::json,
                      out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randomized truncated SVD toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a TOML-style file");

  // --- svd ----------------------------------------------------------
  auto* svd_cmd = app.add_subcommand("svd", "one-shot randomized SVD");
  svd_cmd->configurable(true);
  std::string svd_input, svd_method = "lanczos", svd_out, svd_format = "json";
  std::size_t svd_k = 1, svd_p = 2;
  double svd_eps = 0.5, svd_alpha = 1.0;
  long long svd_iters = -1;
  std::uint64_t svd_seed = 0;
  svd_cmd->add_option("--input", svd_input, "matrix market file")->required();
  svd_cmd->add_option("--k", svd_k, "target rank")->required();
  svd_cmd->add_option("--p", svd_p, "block size (>= k)")->required();
  svd_cmd->add_option("--method", svd_method, "power|lanczos")
      ->check(CLI::IsMember({"power", "lanczos"}));
  svd_cmd->add_option("--epsilon", svd_eps, "accuracy target in (0,1]");
  svd_cmd->add_option("--alpha", svd_alpha, "deviation parameter");
  svd_cmd->add_option("--iterations", svd_iters,
                      "override the computed budget");
  svd_cmd->add_option("--seed", svd_seed, "random seed");
  svd_cmd->add_option("--out", svd_out, "write a single-trial report here");
  svd_cmd->add_option("--format", svd_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // --- verify -------------------------------------------------------
  auto* verify_cmd =
      app.add_subcommand("verify", "Monte-Carlo bound verification");
  verify_cmd->configurable(true);
  std::string v_theorem = "T3.1-random", v_out, v_format = "json", v_input;
  std::size_t v_m = 100, v_n = 80, v_k = 5, v_p = 25, v_trials = 50;
  double v_eps = 0.25, v_alpha = 2.0, v_slack = 1e-6, v_required = -1.0;
  std::uint64_t v_seed = 0;
  SpectrumFlags v_spec;
  verify_cmd
      ->add_option("--theorem", v_theorem,
                   "T4.1 | T3.1-random | T5.2-power | T6.3-power | "
                   "T6.3-lanczos | T6.3-both")
      ->check(CLI::IsMember({"T4.1", "T3.1-random", "T5.2-power",
                             "T6.3-power", "T6.3-lanczos", "T6.3-both"}));
  verify_cmd->add_option("--m", v_m, "rows");
  verify_cmd->add_option("--n", v_n, "cols");
  verify_cmd->add_option("--k", v_k, "target rank");
  verify_cmd->add_option("--p", v_p, "block size");
  verify_cmd->add_option("--epsilon", v_eps, "accuracy target");
  verify_cmd->add_option("--alpha", v_alpha, "deviation parameter");
  verify_cmd->add_option("--trials", v_trials, "Monte-Carlo trials");
  verify_cmd->add_option("--seed", v_seed, "master seed");
  verify_cmd->add_option("--slack", v_slack, "relative slack on bounds");
  verify_cmd->add_option("--required-rate", v_required,
                         "override the derived pass-rate threshold");
  verify_cmd->add_option("--input", v_input,
                         "verify against this matrix market file");
  verify_cmd->add_option("--out", v_out, "report path");
  verify_cmd->add_option("--format", v_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  v_spec.attach(verify_cmd);

  // --- budget -------------------------------------------------------
  auto* budget_cmd =
      app.add_subcommand("budget", "print iteration budgets");
  budget_cmd->configurable(true);
  std::string b_theorem = "T3.1-random";
  std::size_t b_n = 1000, b_p = 20, b_k = 10;
  double b_eps = 0.1, b_alpha = 1.0, b_beta = 1.0;
  double b_sigma_k = 2.0, b_sigma_p1 = 1.0;
  std::size_t b_cost_b = 0, b_cost_p = 0;
  double b_l_km1 = 0, b_l_k = 0, b_l_kb = 0, b_l_p1 = 0;
  budget_cmd
      ->add_option("--theorem", b_theorem,
                   "T3.1-random | T3.1-warm | T5.2-power | T6.1-power | "
                   "T6.1-lanczos | T6.3-power | T6.3-lanczos")
      ->check(CLI::IsMember({"T3.1-random", "T3.1-warm", "T5.2-power",
                             "T6.1-power", "T6.1-lanczos", "T6.3-power",
                             "T6.3-lanczos"}));
  budget_cmd->add_option("--n", b_n, "ambient dimension");
  budget_cmd->add_option("--p", b_p, "block size");
  budget_cmd->add_option("--k", b_k, "target rank");
  budget_cmd->add_option("--epsilon", b_eps, "accuracy target");
  budget_cmd->add_option("--alpha", b_alpha, "deviation parameter");
  budget_cmd->add_option("--beta", b_beta, "warm-start angle bound");
  budget_cmd->add_option("--sigma-k", b_sigma_k, "sigma_k");
  budget_cmd->add_option("--sigma-p1", b_sigma_p1, "sigma_{p+1}");
  budget_cmd->add_option("--cost-block-size", b_cost_b,
                         "also print the small-block cost comparison");
  budget_cmd->add_option("--cost-large-block", b_cost_p,
                         "large block size for the cost comparison");
  budget_cmd->add_option("--lambda-km1", b_l_km1, "lambda_{k-1}");
  budget_cmd->add_option("--lambda-k", b_l_k, "lambda_k");
  budget_cmd->add_option("--lambda-kb", b_l_kb, "lambda_{k+b}");
  budget_cmd->add_option("--lambda-p1", b_l_p1, "lambda_{p+1}");

  // --- spectrum -----------------------------------------------------
  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "synthesize and save a test matrix");
  spectrum_cmd->configurable(true);
  std::string s_out;
  std::size_t s_m = 10, s_n = 10;
  std::uint64_t s_seed = 0;
  SpectrumFlags s_spec;
  spectrum_cmd->add_option("--m", s_m, "rows");
  spectrum_cmd->add_option("--n", s_n, "cols");
  spectrum_cmd->add_option("--seed", s_seed, "seed for the singular bases");
  spectrum_cmd->add_option("--out", s_out, "output path")->required();
  s_spec.attach(spectrum_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (svd_cmd->parsed())
      return run_svd(svd_input, svd_k, svd_p, svd_method, svd_eps, svd_alpha,
                     svd_iters, svd_seed, svd_out, svd_format);

    if (budget_cmd->parsed()) {
      rsvd::IterationBudget b;
      if (b_theorem == "T3.1-random")
        b = rsvd::budget_lanczos_random(b_n, b_p, b_k, b_eps, b_alpha);
      else if (b_theorem == "T3.1-warm")
        b = rsvd::budget_lanczos_warm(b_beta, b_eps);
      else if (b_theorem == "T5.2-power")
        b = rsvd::budget_power_gap_independent(b_n, b_p, b_k, b_eps, b_alpha);
      else {
        const bool power = b_theorem == "T6.1-power" ||
                           b_theorem == "T6.3-power";
        const auto target = (b_theorem.rfind("T6.1", 0) == 0)
                                ? rsvd::BudgetTarget::angle
                                : rsvd::BudgetTarget::norm;
        b = rsvd::budget_gap_dependent(
            b_sigma_k, b_sigma_p1, b_n, b_p, b_k, b_eps, b_alpha,
            power ? rsvd::SketchMethod::power : rsvd::SketchMethod::lanczos,
            target);
      }
      print_budget(b);
      if (b_cost_b > 0) {
        rsvd::CostComparison cc = rsvd::cost_comparison(
            b_l_km1, b_l_k, b_l_kb, b_l_p1, b_k, b_cost_b,
            b_cost_p > 0 ? b_cost_p : b_p, b_n, b_eps);
        std::printf(
            "{\"degree_small\": %s, \"degree_large\": %s, "
            "\"time_small\": %s, \"time_large\": %s, "
            "\"memory_small\": %s, \"memory_large\": %s, "
            "\"passes_small\": %s, \"passes_large\": %s}\n",
            fmt(cc.degree_small).c_str(), fmt(cc.degree_large).c_str(),
            fmt(cc.time_small).c_str(), fmt(cc.time_large).c_str(),
            fmt(cc.memory_small).c_str(), fmt(cc.memory_large).c_str(),
            fmt(cc.passes_small).c_str(), fmt(cc.passes_large).c_str());
      }
      return 0;
    }

    if (spectrum_cmd->parsed()) {
      rsvd::SpectrumSpec spec = s_spec.build();
      spec.m = s_m;
      spec.n = s_n;
      spec.seed = s_seed;
      rsvd::DenseMatrix M = rsvd::synth_matrix(spec);
      rsvd::write_matrix_market(s_out, M);
      std::vector<double> sigma = rsvd::sigma_values(spec);
      std::printf("{\"m\": %zu, \"n\": %zu, \"sigma_max\": %s, "
                  "\"sigma_min\": %s, \"path\": \"%s\"}\n",
                  spec.m, spec.n, fmt(sigma.front()).c_str(),
                  fmt(sigma.back()).c_str(), s_out.c_str());
      return 0;
    }

    // verify
    rsvd::CampaignConfig cfg;
    if (v_theorem == "T4.1") {
      cfg.kind = rsvd::CampaignKind::initialization;
    } else if (v_theorem == "T3.1-random") {
      cfg.kind = rsvd::CampaignKind::lanczos_random;
    } else if (v_theorem == "T5.2-power") {
      cfg.kind = rsvd::CampaignKind::power_random;
    } else {
      cfg.kind = rsvd::CampaignKind::gap_norm;
      if (v_theorem == "T6.3-power")
        cfg.method = rsvd::MethodChoice::power;
      else if (v_theorem == "T6.3-lanczos")
        cfg.method = rsvd::MethodChoice::lanczos;
      else
        cfg.method = rsvd::MethodChoice::both;
    }
    cfg.m = v_m;
    cfg.n = v_n;
    cfg.k = v_k;
    cfg.p = v_p;
    cfg.epsilon = v_eps;
    cfg.alpha = v_alpha;
    cfg.trials = v_trials;
    cfg.seed = v_seed;
    cfg.slack = v_slack;
    cfg.required_rate_override = v_required;
    cfg.spectrum = v_spec.build();
    cfg.matrix_path = v_input;

    rsvd::ExperimentReport rep = rsvd::run_campaign(cfg);
    if (!v_out.empty())
      rsvd::emit_report(rep,
                        v_format == "csv" ? rsvd::ReportFormat::csv
                                          : rsvd::ReportFormat::json,
                        v_out);
    std::printf(
        "{\"kind\": \"%s\", \"trials\": %zu, \"pass_rate\": %s, "
        "\"required_rate\": %s, \"overall_pass\": %s}\n",
        to_string(cfg.kind), rep.trials.size(), fmt(rep.pass_rate).c_str(),
        fmt(rep.required_rate).c_str(), rep.overall_pass ? "true" : "false");
    return rep.overall_pass ? 0 : 1;
  } catch (const rsvd::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
