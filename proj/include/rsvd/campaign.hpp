#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "rsvd/bounds.hpp"
#include "rsvd/errors.hpp"
#include "rsvd/init.hpp"
#include "rsvd/matrix_market.hpp"
#include "rsvd/solvers.hpp"
#include "rsvd/spectrum.hpp"

namespace rsvd {

// What a campaign verifies per trial:
//   initialization  measured angle vs the start-block bound
//   lanczos_random  spectral error vs sigma_{k+1}^2 + eps sigma_{p+1}^2
//   power_random    same bound with the power-iteration budget
//   gap_norm        spectral and Frobenius errors vs the gap-dependent
//                   norm bounds, method selectable
enum class CampaignKind { initialization, lanczos_random, power_random,
                          gap_norm };

enum class MethodChoice { power, lanczos, both };

inline const char* to_string(CampaignKind k) {
  switch (k) {
    case CampaignKind::initialization: return "initialization";
    case CampaignKind::lanczos_random: return "lanczos-random";
    case CampaignKind::power_random: return "power-random";
    default: return "gap-norm";
  }
}

inline const char* to_string(MethodChoice c) {
  switch (c) {
    case MethodChoice::power: return "power";
    case MethodChoice::lanczos: return "lanczos";
    default: return "both";
  }
}

struct CampaignConfig {
  CampaignKind kind = CampaignKind::lanczos_random;
  MethodChoice method = MethodChoice::lanczos;  // used by gap_norm only
  std::size_t m = 1;
  std::size_t n = 1;
  std::size_t k = 1;
  std::size_t p = 2;
  double epsilon = 0.5;
  double alpha = 1.0;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  SpectrumSpec spectrum;     // shape and per-trial seed are overridden
  std::string matrix_path;   // when set, load M once instead of synthesizing
  double slack = 1e-6;
  // When >= 0, overrides the derived threshold
  // max(0, q - 2.58 sqrt(q(1-q)/trials)) with q = 1 - 2 exp(-alpha^2/2).
  double required_rate_override = -1.0;
};

struct TrialRecord {
  std::size_t trial;
  std::uint64_t seed;
  std::string method;
  std::string theorem;
  std::size_t budget;
  double spectral_err_sq;      // NaN for initialization trials
  double frobenius_err_sq;     // NaN for initialization trials
  double tan_theta_init;       // NaN for solver trials
  double nullspace_residual;   // NaN for solver trials
  double bound;                // angle bound or spectral-error bound
  double bound_frobenius;      // NaN unless the campaign checks it
  bool passed;
};

struct ExperimentReport {
  CampaignConfig config;
  std::vector<TrialRecord> trials;
  double pass_rate;
  double required_rate;
  bool overall_pass;
};

namespace detail {

inline void validate_config(const CampaignConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials", "must be >= 1");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0))
    throw ConfigError("epsilon", "must lie in (0, 1]");
  if (!(cfg.alpha > 0.0)) throw ConfigError("alpha", "must be > 0");
  if (!(cfg.slack >= 0.0)) throw ConfigError("slack", "must be >= 0");
  if (cfg.k < 1) throw ConfigError("k", "must be >= 1");
  if (cfg.k >= cfg.p) throw ConfigError("p", "must exceed k");
  if (std::sqrt(double(cfg.p)) - std::sqrt(double(cfg.k)) - cfg.alpha <= 0.0)
    throw ConfigError("alpha", "must be below sqrt(p) - sqrt(k)");
  if (cfg.matrix_path.empty()) {
    if (cfg.m < 1 || cfg.n < 1) throw ConfigError("m", "must be >= 1");
    if (cfg.p > std::min(cfg.m, cfg.n))
      throw ConfigError("p", "must be <= min(m, n)");
    SpectrumSpec probe = cfg.spectrum;
    probe.m = cfg.m;
    probe.n = cfg.n;
    try {
      sigma_values(probe);
    } catch (const Error& e) {
      throw ConfigError("spectrum", e.what());
    }
  }
}

inline double derived_required_rate(double alpha, std::size_t trials) {
  const double q =
      std::min(1.0, std::max(0.0, 1.0 - 2.0 * std::exp(-alpha * alpha / 2.0)));
  const double margin =
      2.58 * std::sqrt(q * (1.0 - q) / double(trials));
  return std::max(0.0, q - margin);
}

}  // namespace detail

// Run one Monte-Carlo verification campaign. Trial i depends only on the
// config and derive_seed(config.seed, 1000 + i), so results are
// independent of execution order.
inline ExperimentReport run_campaign(const CampaignConfig& cfg) {
  detail::validate_config(cfg);
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  ExperimentReport rep;
  rep.config = cfg;
  rep.required_rate = (cfg.required_rate_override >= 0.0)
                          ? cfg.required_rate_override
                          : detail::derived_required_rate(cfg.alpha,
                                                          cfg.trials);

  DenseMatrix fixed_M;
  std::vector<double> fixed_sigma;
  if (!cfg.matrix_path.empty()) {
    fixed_M = read_matrix_market(cfg.matrix_path);
    if (cfg.p > std::min(fixed_M.rows(), fixed_M.cols()))
      throw ConfigError("p", "must be <= min(m, n) of the loaded matrix");
    fixed_sigma = svd_reference(fixed_M).sigma;
  }

  DenseMatrix U_init;
  if (cfg.kind == CampaignKind::initialization)
    U_init = qr_thin(gaussian_matrix(cfg.n, cfg.n,
                                     derive_seed(cfg.seed, 1))).Q;

  std::size_t passed_count = 0;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    const std::uint64_t trial_seed = derive_seed(cfg.seed, 1000 + i);

    if (cfg.kind == CampaignKind::initialization) {
      InitializationReport ir =
          initialize(U_init, cfg.p, cfg.k, cfg.alpha, trial_seed);
      TrialRecord rec;
      rec.trial = i;
      rec.seed = trial_seed;
      rec.method = "init";
      rec.theorem = "T4.1";
      rec.budget = 0;
      rec.spectral_err_sq = kNaN;
      rec.frobenius_err_sq = kNaN;
      rec.tan_theta_init = ir.tan_theta;
      rec.nullspace_residual = ir.nullspace_residual;
      rec.bound = ir.bound;
      rec.bound_frobenius = kNaN;
      rec.passed = ir.tan_theta <= ir.bound;
      if (rec.passed) ++passed_count;
      rep.trials.push_back(std::move(rec));
      continue;
    }

    const DenseMatrix* M = &fixed_M;
    const std::vector<double>* sigma = &fixed_sigma;
    SynthesizedMatrix synth;
    if (cfg.matrix_path.empty()) {
      SpectrumSpec spec = cfg.spectrum;
      spec.m = cfg.m;
      spec.n = cfg.n;
      spec.seed = derive_seed(trial_seed, 7);
      synth = synth_with_factors(spec);
      M = &synth.M;
      sigma = &synth.factors.sigma;
    }
    const std::size_t n_dim = M->cols();

    std::vector<SketchMethod> methods;
    switch (cfg.kind) {
      case CampaignKind::lanczos_random:
        methods = {SketchMethod::lanczos};
        break;
      case CampaignKind::power_random:
        methods = {SketchMethod::power};
        break;
      default:
        if (cfg.method == MethodChoice::both)
          methods = {SketchMethod::power, SketchMethod::lanczos};
        else
          methods = {cfg.method == MethodChoice::power
                         ? SketchMethod::power
                         : SketchMethod::lanczos};
        break;
    }

    for (SketchMethod method : methods) {
      IterationBudget budget;
      switch (cfg.kind) {
        case CampaignKind::lanczos_random:
          budget = budget_lanczos_random(n_dim, cfg.p, cfg.k, cfg.epsilon,
                                         cfg.alpha);
          break;
        case CampaignKind::power_random:
          budget = budget_power_gap_independent(n_dim, cfg.p, cfg.k,
                                                cfg.epsilon, cfg.alpha);
          break;
        default:
          budget = budget_gap_dependent(
              (*sigma)[cfg.k - 1],
              (cfg.p < sigma->size()) ? (*sigma)[cfg.p] : 0.0, n_dim, cfg.p,
              cfg.k, cfg.epsilon, cfg.alpha, method, BudgetTarget::norm);
          break;
      }

      SketchResult res = randomized_svd(*M, cfg.k, cfg.p, method, budget,
                                        derive_seed(trial_seed, 11));

      TrialRecord rec;
      rec.trial = i;
      rec.seed = trial_seed;
      rec.method = to_string(method);
      rec.theorem = budget.theorem;
      rec.budget = budget.count;
      rec.spectral_err_sq = res.spectral_err_sq;
      rec.frobenius_err_sq = res.frobenius_err_sq;
      rec.tan_theta_init = kNaN;
      rec.nullspace_residual = kNaN;
      rec.bound = bound_value(BoundKind::random, *sigma, cfg.k, cfg.p,
                              cfg.epsilon);
      rec.bound_frobenius = kNaN;
      rec.passed = res.spectral_err_sq <= rec.bound * (1.0 + cfg.slack);
      if (cfg.kind == CampaignKind::gap_norm) {
        rec.bound_frobenius = bound_value(BoundKind::frobenius, *sigma, cfg.k,
                                          cfg.p, cfg.epsilon);
        rec.passed = rec.passed &&
                     res.frobenius_err_sq <=
                         rec.bound_frobenius * (1.0 + cfg.slack);
      }
      if (rec.passed) ++passed_count;
      rep.trials.push_back(std::move(rec));
    }
  }

  rep.pass_rate = rep.trials.empty()
                      ? 0.0
                      : double(passed_count) / double(rep.trials.size());
  rep.overall_pass = rep.pass_rate >= rep.required_rate;
  return rep;
}

}  // namespace rsvd
