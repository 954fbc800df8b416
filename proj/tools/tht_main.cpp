#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tht/harness.hpp"

// Verification CLI: runs a named check suite at a chosen resolution and
// emits a JSON report plus a human-readable table.
//
// Exit codes: 0 all asserted checks pass, 1 an asserted check failed,
// 2 configuration error.

int main(int argc, char** argv) {
  CLI::App app{"finite-resolution triangular form verification harness"};
  app.require_subcommand(1);

  tht::HarnessConfig cli;
  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "run a verification suite");
  run->add_option("--config", config_path, "flat key=value config file");
  run->add_option("--suite", cli.suite, "one of: identities, projections, "
                  "tree-selection, single-tree, restricted-type, mfcz, "
                  "carleson, bht, endpoint, all");
  run->add_option("--resolution", cli.resolution, "grid resolution exponent");
  run->add_option("--seed", cli.seed, "random seed");
  run->add_option("--trials", cli.trials, "trial count override (0 = default)");
  run->add_option("--case", cli.case_name, "diagonal | fiberwise");
  run->add_option("--a", cli.a, "diagonal multiplier (dyadic rational >= 1)");
  run->add_option("--tolerance", cli.tolerance, "relative tolerance for exact checks");
  run->add_option("--threads", cli.threads, "worker threads (or THT_THREADS)");
  run->add_option("--out", cli.out_path, "write the JSON report here");
  run->add_flag("--canonical", cli.canonical,
                "zero wall times in the JSON report (byte-comparable output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    tht::HarnessConfig cfg;
    if (!config_path.empty()) cfg = tht::load_config_file(config_path, cfg);
    // explicit command-line options override the file
    if (run->count("--suite")) cfg.suite = cli.suite;
    if (run->count("--resolution")) cfg.resolution = cli.resolution;
    if (run->count("--seed")) cfg.seed = cli.seed;
    if (run->count("--trials")) cfg.trials = cli.trials;
    if (run->count("--case")) cfg.case_name = cli.case_name;
    if (run->count("--a")) cfg.a = cli.a;
    if (run->count("--tolerance")) cfg.tolerance = cli.tolerance;
    if (run->count("--threads")) cfg.threads = cli.threads;
    if (run->count("--out")) cfg.out_path = cli.out_path;
    if (run->count("--canonical")) cfg.canonical = cli.canonical;

    if (cfg.threads > 0)
      setenv("THT_THREADS", std::to_string(cfg.threads).c_str(), 1);

    tht::SuiteReport rep = tht::run_suite(cfg.suite, cfg);
    std::string json = rep.to_json(cfg.canonical);
    if (!cfg.out_path.empty()) {
      std::ofstream out(cfg.out_path);
      if (!out.good()) {
        std::cerr << "cannot write report to " << cfg.out_path << "\n";
        return 2;
      }
      out << json;
      if (!rep.sweep_csv.empty()) {
        std::ofstream csv(cfg.out_path + ".sweep.csv");
        csv << rep.sweep_csv;
      }
    }
    std::cout << rep.to_table();
    if (cfg.out_path.empty()) std::cout << json;
    return rep.all_passed() ? 0 : 1;
  } catch (const tht::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
