#include "mlabm/experiment/config.hpp"

#include <cstdio>
#include <cstdlib>

#include "CLI11.hpp"

namespace mlabm::experiment {

using sugarscape::Phase;
using sugarscape::Wiring;

Wiring parse_scenario(const std::string& s) {
  if (s == "standard") return Wiring::kStandard;
  if (s == "explicit") return Wiring::kExplicit;
  if (s == "network") return Wiring::kNetwork;
  throw ConfigError("--scenario: unknown scenario '" + s + "'");
}

Phase parse_phase(const std::string& s) {
  if (s == "baseline") return Phase::kBaseline;
  if (s == "trade-groups") return Phase::kTradeGroups;
  if (s == "policy") return Phase::kPolicy;
  if (s == "common-resource") return Phase::kCommonResource;
  if (s == "multi-level") return Phase::kMultiLevel;
  throw ConfigError("--phase: unknown phase '" + s + "'");
}

sugarscape::ModelConfig RunConfig::model_config(std::size_t index) const {
  sugarscape::ModelConfig m;
  m.wiring = scenario;
  m.phase = phase;
  m.trade_threshold = trade_threshold;
  m.width = width;
  m.height = height;
  m.n_agents = n_agents;
  m.seed = replicate_seed(index);
  m.fixed_vision = vision;
  m.staged_group_actions = staged_group_actions;
  return m;
}

void RunConfig::validate() const {
  if (trade_threshold < 1) throw ConfigError("--trades: must be >= 1");
  if (steps < 1) throw ConfigError("--steps: must be >= 1");
  if (runs < 1) throw ConfigError("--runs: must be >= 1");
  if (width < 1) throw ConfigError("--width: must be >= 1");
  if (height < 1) throw ConfigError("--height: must be >= 1");
  if (n_agents < 0) throw ConfigError("--agents: must be >= 0");
  if (static_cast<long>(n_agents) > static_cast<long>(width) * height) {
    throw ConfigError("--agents: more agents than landscape cells");
  }
  if (vision && (*vision < 1 || *vision > 6)) throw ConfigError("--vision: must be within 1..6");
  if (jobs < 1) throw ConfigError("--jobs: must be >= 1");
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["scenario"] = sugarscape::to_string(scenario);
  j["phase"] = sugarscape::to_string(phase);
  j["trade_threshold"] = trade_threshold;
  j["steps"] = steps;
  j["runs"] = runs;
  j["width"] = width;
  j["height"] = height;
  j["n_agents"] = n_agents;
  j["seed"] = seed;
  j["vision"] = vision ? nlohmann::json(*vision) : nlohmann::json(nullptr);
  j["staged_group_actions"] = staged_group_actions;
  j["group_to_net"] = group_to_net();
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  try {
    RunConfig c;
    c.scenario = parse_scenario(j.at("scenario").get<std::string>());
    c.phase = parse_phase(j.at("phase").get<std::string>());
    c.trade_threshold = j.at("trade_threshold").get<int>();
    c.steps = j.at("steps").get<std::size_t>();
    c.runs = j.at("runs").get<std::size_t>();
    c.width = j.at("width").get<int>();
    c.height = j.at("height").get<int>();
    c.n_agents = j.at("n_agents").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("vision").is_null()) c.vision = j.at("vision").get<int>();
    c.staged_group_actions = j.at("staged_group_actions").get<bool>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config.json: ") + e.what());
  }
}

std::string RunConfig::digest() const {
  // FNV-1a over the canonical JSON dump (keys are sorted).
  const std::string text = to_json().dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string last_flag_in(const std::string& message, const std::vector<std::string>& args) {
  for (const auto& a : args) {
    if (a.rfind("--", 0) == 0 && message.find(a.substr(0, a.find('='))) != std::string::npos) {
      return a.substr(0, a.find('='));
    }
  }
  return {};
}

}  // namespace

CliCommand parse_cli(const std::vector<std::string>& args) {
  CLI::App app{"Multi-level agent-based simulation: Sugarscape batch runner", "mlabm"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string scenario = "standard";
  std::string phase = "baseline";
  std::string format = "csv";
  int vision = 0;
  auto* run = app.add_subcommand("run", "run a batch of replicates and write metrics");
  run->add_option("--scenario", scenario, "standard | explicit | network")->capture_default_str();
  run->add_option("--phase", phase, "baseline | trade-groups | policy | common-resource | multi-level")
      ->capture_default_str();
  run->add_option("--trades", cfg.trade_threshold, "trades between two agents that form a group")
      ->capture_default_str();
  run->add_option("--steps", cfg.steps, "steps per run")->capture_default_str();
  run->add_option("--runs", cfg.runs, "replicates")->capture_default_str();
  run->add_option("--seed", cfg.seed, "base seed; replicate i uses seed + i")->capture_default_str();
  run->add_option("--agents", cfg.n_agents, "initial traders")->capture_default_str();
  run->add_option("--width", cfg.width, "landscape width")->capture_default_str();
  run->add_option("--height", cfg.height, "landscape height")->capture_default_str();
  run->add_option("--vision", vision, "fix every trader's vision (1..6) instead of drawing it");
  run->add_flag("--staged-groups", cfg.staged_group_actions,
                "group members all move before any of them eats and trades");
  run->add_option("--out", cfg.out, "output directory")->capture_default_str();
  run->add_option("--format", format, "csv | json")->capture_default_str();
  run->add_option("--jobs", cfg.jobs, "replicates run in parallel")->envname("MLABM_JOBS")->capture_default_str();

  CompareCommand cmp;
  auto* compare = app.add_subcommand("compare", "compare two batch directories");
  compare->add_option("dir_a", cmp.dir_a, "first batch directory")->required();
  compare->add_option("dir_b", cmp.dir_b, "second batch directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {CliCommand::Kind::kHelp, {}, {}, app.help()};
  } catch (const CLI::CallForAllHelp&) {
    return {CliCommand::Kind::kHelp, {}, {}, app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    const std::string flag = last_flag_in(msg, args);
    if (!flag.empty() && msg.find(flag) == std::string::npos) msg = flag + ": " + msg;
    throw ConfigError(msg);
  }

  CliCommand out;
  if (*compare) {
    out.kind = CliCommand::Kind::kCompare;
    out.compare = cmp;
    return out;
  }
  cfg.scenario = parse_scenario(scenario);
  cfg.phase = parse_phase(phase);
  if (format == "csv") cfg.format = OutputFormat::kCsv;
  else if (format == "json") cfg.format = OutputFormat::kJson;
  else throw ConfigError("--format: unknown format '" + format + "'");
  if (run->count("--vision")) cfg.vision = vision;
  cfg.validate();
  out.kind = CliCommand::Kind::kRun;
  out.run = cfg;
  return out;
}

CliCommand parse_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_cli(args);
}

}  // namespace mlabm::experiment
