#pragma once

#include "tml/spectral.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tml::cli {

inline constexpr char const *tool_version = "tml 1.0.0";

enum class Experiment
{
  constants,
  verify_identities,
  rearrangement_check,
  eval,
  extremal,
  ground_state,
  sharpness
};

auto experiment_name(Experiment e) -> std::string;

// Raised for configurations rejected before any work starts (exit code 2).
struct ValidationError : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig
{
  Experiment            kind = Experiment::constants;
  std::optional<int>    n;
  std::optional<double> R, r_min;
  std::optional<Index>  N;
  std::optional<Scheme> scheme;
  std::filesystem::path out_dir = ".";
  std::uint64_t         seed = 0;
  int                   threads = 1;

  int max_m = 6; // verify-identities

  std::vector<int> dims{1, 3}; // rearrangement-check
  Index            count = 100;

  std::string profile_path; // eval; empty selects a Gaussian of `width`
  std::string functional = "tm_ratio";
  double      beta = 10, p = 0, lambda = 0.5, s = 0.75, q = 2, width = 1;
  std::string denominator = "power";

  double beta_frac = 0.9; // extremal
  double margin = 0.05;
  int    max_iterations = 5000;

  std::vector<double> lambdas{0.5}; // ground-state
  std::vector<double> widths{0.5, 1, 2};
  int                 memory = 30;

  std::vector<double> eps;                // sharpness; empty selects 2^-3..2^-10
  std::vector<double> ps{0, 1, 2};
  std::vector<double> beta_fracs{0.9, 1};
  double              radius = 1;
};

// Grid used by an experiment: explicit overrides on top of the experiment's default.
auto resolve_grid(ExperimentConfig const &cfg, int n) -> GridSpec;
void validate(ExperimentConfig const &cfg);
auto config_json(ExperimentConfig const &cfg) -> nlohmann::json;

// Tabular sweep, one block per parameter combination.
struct Sweep
{
  std::vector<std::string>                      columns;
  std::vector<std::string>                      labels;
  std::vector<std::vector<std::vector<double>>> blocks;
};

struct ResultRecord
{
  nlohmann::json           config;
  nlohmann::json           outputs;
  std::vector<std::string> files;
  std::vector<std::string> flags;
  std::optional<Sweep>     sweep;
  Index                    failed_cells = 0; // sweep cells that raised; outputs are still written
  double                   wall_clock = 0; // seconds; reported on stderr only
  std::string              version = tool_version;
};

auto run(ExperimentConfig const &cfg) -> ResultRecord;

// Whitespace-separated columns with a one-line header comment; blocks separated by two blank lines.
void emit_plot_data(ResultRecord const &record, std::filesystem::path const &target);

// "2^-3..2^-10", "0.5,0.25", "2^-4" and mixtures thereof.
auto parse_eps_list(std::string const &text) -> std::vector<double>;
auto parse_double_list(std::string const &text) -> std::vector<double>;

} // namespace tml::cli
