#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace swapcorr;
  using namespace swapcorr::cli;

  CLI::App app{"SWAP-test correlation analyzer"};
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1);

  OverlapArgs overlap;
  auto* overlap_cmd = app.add_subcommand("overlap", "Exact overlap and p(+/-) for two input states");
  overlap_cmd->add_option("state1", overlap.state1, "Matrix JSON file for rho1")->required();
  overlap_cmd->add_option("state2", overlap.state2, "Matrix JSON file for rho2")->required();
  overlap_cmd->add_option("--shots", overlap.shots, "Sample this many sigma_x readouts")
      ->check(CLI::PositiveNumber);
  overlap_cmd->add_option("--seed", overlap.seed, "Sampling seed");

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Correlation report (and witness when entangled)");
  analyze_cmd->add_option("state1", analyze.state1, "Matrix JSON file for rho1")->required();
  analyze_cmd->add_option("state2", analyze.state2, "Matrix JSON file for rho2")->required();
  analyze_cmd->add_option("--seed", analyze.seed, "Optimizer grid seed (0 = anchored grid)");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Depolarizing example over an (a1, a2) grid");
  sweep_cmd->add_option("--resolution", sweep_args.resolution, "Grid points per axis")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  sweep_cmd->add_option("--out", sweep_args.out, "CSV output path")->required();
  sweep_cmd->add_option("--seed", sweep_args.seed, "Optimizer grid seed");

  TrajectoryArgs traj;
  std::string late_mode = "carry";
  auto* traj_cmd = app.add_subcommand("trajectory", "Time trajectory of the depolarizing example");
  auto& c = traj.config;
  traj_cmd->add_option("--gamma1-early", c.gamma1_early, "Decay rate of a1 before t_switch");
  traj_cmd->add_option("--gamma2-early", c.gamma2_early, "Decay rate of a2 before t_switch");
  traj_cmd->add_option("--gamma1-late", c.gamma1_late, "Decay rate of a1 after t_switch");
  traj_cmd->add_option("--gamma2-late", c.gamma2_late, "Decay rate of a2 after t_switch");
  traj_cmd->add_option("--a10", c.a10, "Initial a1");
  traj_cmd->add_option("--a20", c.a20, "Initial a2");
  traj_cmd->add_option("--t-switch", c.t_switch, "Rate switch time");
  traj_cmd->add_option("--t-max", c.t_max, "End time");
  traj_cmd->add_option("--steps", c.n_steps, "Number of time points");
  traj_cmd->add_option("--late-mode", late_mode, "carry: restart from a(t_switch); global: a0 exp(-rate t)")
      ->check(CLI::IsMember({"carry", "global"}));
  traj_cmd->add_option("--out", traj.out, "CSV output path")->required();
  traj_cmd->add_option("--seed", traj.seed, "Optimizer grid seed");

  SelftestArgs self;
  auto* self_cmd = app.add_subcommand("selftest", "Run the acceptance checks");
  self_cmd->add_flag("--quick", self.quick, "Smaller corpora and a 21x21 sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }
  c.late = late_mode == "global" ? LateSegment::global : LateSegment::carry;

  return run_guarded(
      [&] {
        if (*overlap_cmd) return cmd_overlap(overlap, std::cout);
        if (*analyze_cmd) return cmd_analyze(analyze, std::cout);
        if (*sweep_cmd) return cmd_sweep(sweep_args, std::cerr);
        if (*traj_cmd) return cmd_trajectory(traj, std::cout);
        return cmd_selftest(self, std::cout);
      },
      std::cerr);
}
