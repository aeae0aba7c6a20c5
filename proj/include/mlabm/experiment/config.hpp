#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mlabm/sugarscape/model.hpp"

namespace mlabm::experiment {

/// Bad command line or configuration. Maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { kCsv, kJson };

struct RunConfig {
  sugarscape::Wiring scenario = sugarscape::Wiring::kStandard;
  sugarscape::Phase phase = sugarscape::Phase::kBaseline;
  int trade_threshold = 10;
  std::size_t steps = 1000;
  std::size_t runs = 100;
  int width = 50;
  int height = 50;
  int n_agents = 200;
  std::uint64_t seed = 0;
  std::optional<int> vision;
  bool staged_group_actions = false;
  std::string out = "mlabm_out";
  OutputFormat format = OutputFormat::kCsv;
  unsigned jobs = 1;

  bool group_to_net() const noexcept { return phase == sugarscape::Phase::kMultiLevel; }
  std::uint64_t replicate_seed(std::size_t index) const noexcept { return seed + index; }
  sugarscape::ModelConfig model_config(std::size_t index) const;

  /// Throws ConfigError naming the offending flag.
  void validate() const;

  /// Everything that affects results (not out/format/jobs).
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
  /// 16 hex digits, stable across runs and platforms.
  std::string digest() const;
};

sugarscape::Wiring parse_scenario(const std::string& s);
sugarscape::Phase parse_phase(const std::string& s);

struct CompareCommand {
  std::string dir_a;
  std::string dir_b;
};

struct CliCommand {
  enum class Kind { kRun, kCompare, kHelp };
  Kind kind = Kind::kHelp;
  RunConfig run;
  CompareCommand compare;
  std::string help;
};

/// `run [flags]` or `compare DIR_A DIR_B`. `--help` yields kHelp with the
/// usage text. Invalid input throws ConfigError.
CliCommand parse_cli(const std::vector<std::string>& args);
CliCommand parse_cli(int argc, const char* const* argv);

}  // namespace mlabm::experiment
