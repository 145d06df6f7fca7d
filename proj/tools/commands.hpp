// commands.hpp: the swapcorr subcommands, separated from argument parsing so
// tests can drive them directly.

#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>

#include "swapcorr/selftest.hpp"
#include "swapcorr/swapcorr.hpp"

namespace swapcorr::cli {

enum ExitCode : int { ok = 0, usage = 1, invalid_input = 2, numerical_failure = 3 };

/// Largest register dimension accepted from matrix files.
inline constexpr std::size_t max_register_dim = 8;

struct RunManifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;

  nlohmann::json to_json() const {
    return {{"command", command},
            {"parameters", parameters},
            {"seed", seed},
            {"tool_version", version},
            {"timestamp", utc_timestamp()}};
  }

  static std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }
};

inline void write_manifest(const std::string& out_path, const RunManifest& manifest) {
  const std::string path = out_path + ".manifest.json";
  std::ofstream os(path);
  if (!os) throw InvalidInput("cannot write manifest '" + path + "'");
  os << manifest.to_json().dump(2) << '\n';
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw InvalidInput("cannot open output file '" + path + "'");
  return os;
}

inline DensityMatrix load_register(const std::string& path) {
  DensityMatrix rho = load_density(path);
  if (rho.dim() > max_register_dim)
    throw InvalidInput("'" + path + "': register dimension " + std::to_string(rho.dim()) +
                       " exceeds the limit of " + std::to_string(max_register_dim));
  return rho;
}

struct OverlapArgs {
  std::string state1, state2;
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
};

inline int cmd_overlap(const OverlapArgs& args, std::ostream& out) {
  const DensityMatrix rho1 = load_register(args.state1);
  const DensityMatrix rho2 = load_register(args.state2);
  const TripartiteState state = build_closed_form(rho1, rho2);
  const MeasurementStats stats = measure_stats(state);

  RunManifest manifest{"overlap", {{"state1", args.state1}, {"state2", args.state2}}, args.seed};
  nlohmann::json j = {{"overlap", stats.overlap}, {"p_plus", stats.p_plus}, {"p_minus", stats.p_minus}};
  if (args.shots) {
    manifest.parameters["shots"] = *args.shots;
    const ShotEstimate est = sample_shots(state, *args.shots, args.seed);
    j["sampled"] = {{"estimate", est.estimate},
                    {"standard_error", est.standard_error},
                    {"shots", est.n_shots},
                    {"plus_count", est.n_plus}};
  }
  j["manifest"] = manifest.to_json();
  out << j.dump(2) << '\n';
  return ok;
}

struct AnalyzeArgs {
  std::string state1, state2;
  std::uint64_t seed = 0;
};

inline int cmd_analyze(const AnalyzeArgs& args, std::ostream& out) {
  const DensityMatrix rho1 = load_register(args.state1);
  const DensityMatrix rho2 = load_register(args.state2);
  const TripartiteState state = build_closed_form(rho1, rho2);

  DiscordOptions opt;
  opt.seed = args.seed;
  const CorrelationReport report = classify(state, opt);
  const MeasurementStats stats = measure_stats(state);

  nlohmann::json j;
  j["report"] = to_json(report);
  j["overlap"] = stats.overlap;
  j["classical_quantum"] = to_json(is_classical_quantum(state, opt));
  if (report.classification == Classification::entangled) {
    try {
      j["witness"] = to_json(construct_witness(rho1, rho2));
    } catch (const Error& e) {
      j["witness_error"] = e.what();
    }
  }
  j["manifest"] = RunManifest{"analyze", {{"state1", args.state1}, {"state2", args.state2}}, args.seed}
                      .to_json();
  out << j.dump(2) << '\n';
  return ok;
}

struct SweepArgs {
  std::size_t resolution = 101;
  std::string out;
  std::uint64_t seed = 0;
};

inline int cmd_sweep(const SweepArgs& args, std::ostream& log) {
  DiscordOptions opt;
  opt.seed = args.seed;
  const auto rows = sweep(args.resolution, opt);
  {
    std::ofstream os = open_output(args.out);
    write_sweep_csv(os, rows);
    if (!os) throw InvalidInput("failed writing '" + args.out + "'");
  }
  write_manifest(args.out, {"sweep", {{"resolution", args.resolution}, {"out", args.out}}, args.seed});
  log << "wrote " << rows.size() << " rows to " << args.out << '\n';
  return ok;
}

struct TrajectoryArgs {
  TrajectoryConfig config;
  std::string out;
  std::uint64_t seed = 0;
};

inline int cmd_trajectory(const TrajectoryArgs& args, std::ostream& out) {
  DiscordOptions opt;
  opt.seed = args.seed;
  const TrajectoryResult traj = trajectory(args.config, opt);
  {
    std::ofstream os = open_output(args.out);
    write_trajectory_csv(os, traj);
    if (!os) throw InvalidInput("failed writing '" + args.out + "'");
  }
  const TrajectoryConfig& c = args.config;
  write_manifest(args.out, {"trajectory",
                            {{"gamma1_early", c.gamma1_early},
                             {"gamma2_early", c.gamma2_early},
                             {"gamma1_late", c.gamma1_late},
                             {"gamma2_late", c.gamma2_late},
                             {"a10", c.a10},
                             {"a20", c.a20},
                             {"t_switch", c.t_switch},
                             {"t_max", c.t_max},
                             {"steps", c.n_steps},
                             {"late_mode", c.late == LateSegment::carry ? "carry" : "global"},
                             {"out", args.out}},
                            args.seed});

  const auto show = [](const std::optional<double>& t) {
    return t ? detail::fmt12(*t) : std::string("none");
  };
  out << "death_time=" << show(traj.death_time) << '\n'
      << "discord_death_time=" << show(traj.discord_death_time) << '\n'
      << "negativity_death_time=" << show(traj.negativity_death_time) << '\n'
      << "discord_below_threshold_time=" << show(traj.discord_threshold_time) << '\n';
  return ok;
}

struct SelftestArgs {
  bool quick = false;
};

/// Runs the acceptance checks; exit code 3 if any fails.
inline int cmd_selftest(const SelftestArgs& args, std::ostream& out) {
  selftest::Config config;
  if (args.quick) {
    config.witness_pairs = 100;
    config.equal_pairs = 30;
    config.sweep_resolution = 21;
    config.shot_seeds = 10;
  }
  bool all = true;
  selftest::Suite(config).run_all([&](const selftest::CriterionResult& r) {
    out << selftest::format(r) << std::endl;
    all = all && r.passed;
  });
  return all ? ok : numerical_failure;
}

/// Maps library exceptions onto exit codes.
inline int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return invalid_input;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return invalid_input;
  }
}

}  // namespace swapcorr::cli
