#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nagflow/types.hpp"

namespace nagflow {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Parsed experiment description. The file format is line oriented:
///   # comment
///   [section]
///   key = value
/// Unknown sections or keys, duplicate keys and malformed lines are rejected
/// with their line numbers.
struct ExperimentConfig {
  enum class Kind { run, spectral, flow, compare, schedule };
  Kind kind = Kind::run;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string prefix;  // defaults to the kind name

  // [problem]
  std::string problem_name;   // catalog name or "quadratic_file"
  int dim = 2;
  double kappa = 10.0;
  bool zero_smallest = false;
  std::string matrix_file;
  double l1_weight = 0.0;     // > 0 adds an l1 term to a quadratic problem

  // [scheme]
  std::string scheme = "nag";
  double gamma0 = -1.0;             // <0: default L
  std::string gamma0_word;          // "mu" | "lip" | "" (numeric)
  double alpha = -1.0;              // fixed step for gd/implicit/gs
  int max_iter = 100;
  double gap_tol = 0.0;
  std::string x0 = "ones";          // ones|zeros|random|v1,v2,...
  std::string v0 = "x0";            // x0|zeros|random|list
  std::string restart = "none";     // none|fixed|adaptive
  int restart_period = 0;
  double restart_sigma = 0.0;
  int gamma_cycle = 0;

  // [flow]
  std::string flow_system = "nag";  // nag|rescaled|gradient
  double flow_time = 10.0;
  double flow_tol = 1e-9;
  std::string rescale_kind = "closed_form";  // rational|closed_form
  double rescale_b = 2.0;

  // [spectral]
  std::string analysis = "radius";  // radius|condition|scaled|gd_rates
  double spectral_alpha = -1.0;     // <0: 2/sqrt(kappa)
  int alpha_count = 1;              // >1: grid over (0, 2/sqrt(kappa)]
  int spectral_steps = 100;         // K for the scaled sweep

  // [schedule]
  std::string schedule_rule = "nag";  // nag|oag1|mu0
  double schedule_gamma0 = 1.0;
  double schedule_mu = 0.0;
  double schedule_lip = 1.0;
  int schedule_steps = 100;

  // [compare]
  std::vector<std::string> compare_schemes;
  int threads = 2;

  bool verbose = false;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace nagflow
