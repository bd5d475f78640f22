#pragma once

// Config-driven runner behind the command-line tool.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vekua/serialize.hpp"

namespace vekua {

struct ExperimentConfig {
  std::string condition = "carl";  // check-weight: carl | halfplane | logmap | threelines
  std::string domain;              // empty: subcommand default
  std::string weight = "zero";
  std::string seed = "one";
  std::string solution;            // path to a solution dump; replaces seed and weight
  std::optional<double> spacing;   // empty: subcommand default
  std::vector<double> epsilons;    // empty: default family
  std::string damper = "halfplane";  // halfplane | logmap
  double strip_a = 1.0;
  double strip_b = 2.0;
  double y_cut = 6.0;
  int n_x = 41;
  std::optional<double> m_a, m_b;  // three-lines condition
  std::vector<double> mus;         // empty: {-2, -1.5, -1, -0.5, 0, 1}
  Complex a_coef{-1.0, 0.0};
  Complex center{};
  double radius = 1.0;
  double p = 2.0;
  std::vector<double> radii;       // empty: {0.5, 0.9}
  std::optional<double> hp_bound;
  std::string mode = "auto";       // auto | bounded | unbounded
  double c = 2.0;
  double tol = 1e-8;
  int max_iter = 200;
  std::optional<double> holomorphy_tol;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Throws Error(ConfigInvalid) naming the offending field.
ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& c);

const std::vector<std::string>& subcommands();

struct RunResult {
  int exit_code = 0;
  Json body;  // deterministic part of the report
  std::vector<std::pair<std::string, std::string>> files;  // extra outputs: name, contents
};

// Exit code 0: Holds / Pass, 1: Fails (or no convergence), 2: config or precondition error.
RunResult run(std::string_view subcommand, const ExperimentConfig& config);

// Runs and writes report.json ({"body", "metadata"}) plus the extra files into out_dir.
RunResult run_to_directory(std::string_view subcommand, const ExperimentConfig& config, const std::string& out_dir);

}  // namespace vekua
