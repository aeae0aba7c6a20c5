// mlabm: batch runner and batch comparison for the Sugarscape experiments.
#include <cstdio>
#include <iostream>

#include "mlabm/experiment/batch.hpp"
#include "mlabm/experiment/compare.hpp"
#include "mlabm/experiment/config.hpp"
#include "mlabm/experiment/export.hpp"

using namespace mlabm::experiment;

namespace {

int run(const RunConfig& cfg) {
  const BatchResult result = run_batch(cfg);
  export_batch(result, cfg.out, cfg.format);
  std::cout << "wrote " << result.runs.size() << " run(s) to " << cfg.out << "\n";
  for (const auto& [name, s] : result.summary) {
    std::printf("  %-13s mean=%.4f sd=%.4f n=%zu\n", name.c_str(), s.mean, s.sd, s.n);
  }
  return 0;
}

int compare_dirs(const CompareCommand& cmd) {
  const BatchResult a = import_batch(cmd.dir_a);
  const BatchResult b = import_batch(cmd.dir_b);
  std::cout << "A: " << cmd.dir_a << "\nB: " << cmd.dir_b << "\n" << compare(a, b).to_text();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CliCommand cmd;
  try {
    cmd = parse_cli(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "mlabm: " << e.what() << "\n";
    return 1;
  }

  try {
    switch (cmd.kind) {
      case CliCommand::Kind::kHelp:
        std::cout << cmd.help;
        return 0;
      case CliCommand::Kind::kRun:
        return run(cmd.run);
      case CliCommand::Kind::kCompare:
        return compare_dirs(cmd.compare);
    }
  } catch (const ConfigError& e) {
    std::cerr << "mlabm: " << e.what() << "\n";
    return 1;
  } catch (const BatchError& e) {
    std::cerr << "mlabm: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "mlabm: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
