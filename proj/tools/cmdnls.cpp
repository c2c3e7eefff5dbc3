// Command-line entry point: evolve, formula, compare, zd, datum-dump.

#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "cmdnls/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Calogero-Moser derivative NLS laboratory"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  int threads = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides output.dir)");
  app.add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) { seed = s; seed_set = true; },
                                         "seed recorded in the run manifest");

  struct Cmd {
    const char* name;
    const char* help;
    int (*fn)(const cmdnls::RunConfig&, std::ostream&);
  };
  const Cmd cmds[] = {
      {"evolve", "time-step the datum, write snapshots and diagnostics", cmdnls::cmd_evolve},
      {"formula", "evaluate the explicit formula over the (t, z) sweep", cmdnls::cmd_formula},
      {"compare", "formula vs solver table and gated summary", cmdnls::cmd_compare},
      {"zd", "dispersion sweep and zero-dispersion limit", cmdnls::cmd_zd},
      {"datum-dump", "write the sampled initial datum", cmdnls::cmd_datum_dump},
  };
  for (const auto& c : cmds) app.add_subcommand(c.name, c.help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    cmdnls::RunConfig cfg = config_path.empty() ? cmdnls::parse_config(nlohmann::json::object())
                                                : cmdnls::load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads > 0) cfg.threads = threads;
    if (seed_set) cfg.seed = seed;
    for (const auto& c : cmds)
      if (app.got_subcommand(c.name)) return c.fn(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
