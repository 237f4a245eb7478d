// Command-line front end for the dynamic Dyck-reachability engine.
//
//   dyckreach build <graph>
//   dyckreach run <graph> [--updates F] [--mode on|off]
//                 [--strategy dynamic|rebuild] [--verify none|rebuild|oracle]
//   dyckreach fuzz [--seed N] [--trials N] [--mode on|off]
//   dyckreach bench [--family chain|adversarial|random] [--min N] [--max N]

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "dyckreach/session.hpp"

int main(int argc, char** argv) {
  using namespace dyckreach;

  CLI::App app{"bidirected Dyck-reachability engine"};
  app.require_subcommand(1);

  SessionConfig cfg;
  std::string mode = "on";
  std::string strategy = "dynamic";
  std::string verify = "none";

  auto add_mode = [&](CLI::App* cmd) {
    cmd->add_option("--mode", mode, "cycle handling: on|off")
        ->check(CLI::IsMember({"on", "off"}));
  };

  CLI::App* build = app.add_subcommand("build", "static solve and dump");
  build->add_option("graph", cfg.graph_path, "graph file")->required();

  CLI::App* run = app.add_subcommand("run", "replay an update stream");
  run->add_option("graph", cfg.graph_path, "graph file")->required();
  run->add_option("--updates", cfg.updates_path, "update stream file");
  add_mode(run);
  run->add_option("--strategy", strategy, "dynamic|rebuild")
      ->check(CLI::IsMember({"dynamic", "rebuild"}));
  run->add_option("--verify", verify, "none|rebuild|oracle")
      ->check(CLI::IsMember({"none", "rebuild", "oracle"}));

  CLI::App* fuzz = app.add_subcommand("fuzz", "randomized verification");
  fuzz->add_option("--seed", cfg.seed, "rng seed");
  fuzz->add_option("--trials", cfg.trials, "trial count");
  add_mode(fuzz);

  CLI::App* bench_cmd = app.add_subcommand("bench", "deletion benchmark");
  bench_cmd->add_option("--family", cfg.family, "chain|adversarial|random")
      ->check(CLI::IsMember({"chain", "adversarial", "random"}));
  bench_cmd->add_option("--min", cfg.min_n, "smallest instance size");
  bench_cmd->add_option("--max", cfg.max_n, "largest instance size");

  CLI11_PARSE(app, argc, argv);

  cfg.mode = (mode == "on") ? CycleHandling::on : CycleHandling::off;
  cfg.strategy =
      (strategy == "rebuild") ? Strategy::rebuild : Strategy::dynamic_update;
  cfg.verify = (verify == "rebuild")  ? Verify::rebuild
               : (verify == "oracle") ? Verify::oracle
                                      : Verify::none;

  try {
    if (build->parsed()) {
      cfg.updates_path.clear();
      std::ifstream in(cfg.graph_path);
      if (!in) throw Error("cannot open " + cfg.graph_path);
      std::ostringstream buf;
      buf << in.rdbuf();
      Engine engine(InputGraph::parse(buf.str()));
      std::cout << fingerprint_to_string(engine.fingerprint())
                << engine.merged().dump_medges();
      return 0;
    }
    if (run->parsed()) return run_session(cfg, std::cout, std::cerr);
    if (fuzz->parsed()) {
      FuzzReport report = fuzz_verify(cfg, std::cout);
      return report.failures == 0 ? 0 : 1;
    }
    if (bench_cmd->parsed()) return bench(cfg, std::cout);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
