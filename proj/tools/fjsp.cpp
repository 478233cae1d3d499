#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fjsp/errors.hpp"
#include "fjsp/gantt.hpp"
#include "fjsp/instances.hpp"
#include "fjsp/io.hpp"
#include "fjsp/mip.hpp"
#include "fjsp/rl.hpp"
#include "fjsp/solver.hpp"

namespace {

constexpr int kExitError = 4;

using namespace fjsp;

void print_violations(const Instance& instance, const std::vector<Violation>& violations) {
  (void)instance;
  for (const Violation& v : violations) std::cout << to_string(v.kind) << ": " << v.detail << "\n";
}

std::string normalize_newlines(std::string text) {
  text.erase(std::remove(text.begin(), text.end(), '\r'), text.end());
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flexible job-shop scheduling for robotic solar-panel assembly"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::string instance_path, schedule_path, out_path, lp_path, solution_path, qtable_path, curve_path;

  auto* validate_cmd = app.add_subcommand("validate", "Check a schedule against every constraint");
  bool strict = false;
  validate_cmd->add_option("instance", instance_path)->required();
  validate_cmd->add_option("schedule", schedule_path)->required();
  validate_cmd->add_flag("--strict", strict, "Reject jobs whose operations share a machine");
  validate_cmd->callback([&] {
    const Instance instance = load_instance(instance_path);
    const Schedule schedule = load_schedule(instance, schedule_path);
    const auto violations = validate(instance, schedule, {strict});
    print_violations(instance, violations);
    if (violations.empty()) std::cout << "feasible, makespan " << schedule.c_max.to_units_string() << "\n";
    exit_code = violations.empty() ? 0 : 1;
  });

  auto* solve_cmd = app.add_subcommand("solve", "Branch and bound for a minimum-makespan schedule");
  double max_seconds = std::numeric_limits<double>::infinity();
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
  solve_cmd->add_option("instance", instance_path)->required();
  solve_cmd->add_option("--max-seconds", max_seconds)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-nodes", max_nodes)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", out_path, "Write the best schedule as JSON");
  solve_cmd->callback([&] {
    const Instance instance = load_instance(instance_path);
    const SolveResult r = solve_exact(instance, {max_nodes, std::chrono::duration<double>(max_seconds)});
    if (r.infeasible) {
      std::cout << "infeasible\nnodes: " << r.nodes_explored << "\n";
      exit_code = 3;
      return;
    }
    if (r.best_schedule) {
      std::cout << "makespan: " << r.best_schedule->c_max.to_units_string() << "\n";
      if (!out_path.empty()) save_schedule(instance, *r.best_schedule, out_path);
    } else {
      std::cout << "makespan: none\n";
    }
    std::cout << "lower_bound: " << r.lower_bound.to_units_string() << "\n";
    std::cout << "proved_optimal: " << (r.proved_optimal ? "true" : "false") << "\n";
    if (auto gap = r.gap()) std::cout << "gap: " << *gap << "\n";
    std::cout << "nodes: " << r.nodes_explored << "\n";
    std::cerr << "wall time: " << r.wall_time.count() << " s\n";
    exit_code = r.proved_optimal ? 0 : 2;
  });

  auto* export_cmd = app.add_subcommand("export-mip", "Write the MIP model in LP format");
  bool printed_forms = false;
  export_cmd->add_option("instance", instance_path)->required();
  export_cmd->add_option("--out", out_path)->required();
  export_cmd->add_flag("--printed-assignment-forms", printed_forms,
                       "Emit the aggregated assignment rows (single-operation plans only)");
  export_cmd->callback([&] {
    const Instance instance = load_instance(instance_path);
    std::ostringstream os;
    export_lp(build_mip(instance, {printed_forms}), os);
    write_text(out_path, os.str());
  });

  auto* import_cmd = app.add_subcommand("import-solution", "Rebuild a schedule from MIP variable values");
  import_cmd->add_option("instance", instance_path)->required();
  import_cmd->add_option("model", lp_path)->required();
  import_cmd->add_option("solution", solution_path)->required();
  import_cmd->add_option("--out", out_path);
  import_cmd->callback([&] {
    const Instance instance = load_instance(instance_path);
    const MipModel model = build_mip(instance);
    std::ostringstream expected;
    export_lp(model, expected);
    if (normalize_newlines(read_text(lp_path)) != expected.str())
      throw InvalidArgumentError(lp_path + " is not the model of " + instance_path);
    try {
      const Schedule schedule = import_solution(model, instance, read_text(solution_path));
      std::cout << "feasible, makespan " << schedule.c_max.to_units_string() << "\n";
      if (!out_path.empty()) save_schedule(instance, schedule, out_path);
    } catch (const InfeasibleSolutionError& e) {
      print_violations(instance, e.violations());
      exit_code = 1;
    }
  });

  auto* train_cmd = app.add_subcommand("train-rl", "Tabular Q-learning on the sequential environment");
  RlParams params;
  train_cmd->add_option("instance", instance_path)->required();
  train_cmd->add_option("--alpha", params.alpha);
  train_cmd->add_option("--gamma", params.gamma);
  train_cmd->add_option("--episodes", params.episodes);
  train_cmd->add_option("--seed", params.seed);
  train_cmd->add_option("--epsilon-start", params.epsilon_start);
  train_cmd->add_option("--epsilon-end", params.epsilon_end);
  train_cmd->add_option("--epsilon-decay", params.epsilon_decay_fraction, "Fraction of episodes spent decaying");
  train_cmd->add_option("--out", qtable_path)->required();
  train_cmd->add_option("--curve", curve_path);
  train_cmd->callback([&] {
    const Instance instance = load_instance(instance_path);
    const TrainResult r = train(instance, params);
    write_text(qtable_path, qtable_to_json(r.q, params));
    if (!curve_path.empty()) write_text(curve_path, curve_to_csv(r.curve));
    std::cout << "states: " << r.q.size() << "\nepisodes: " << r.curve.size() << "\n";
  });

  auto* rollout_cmd = app.add_subcommand("rollout", "Greedy schedule from a trained Q-table");
  rollout_cmd->add_option("instance", instance_path)->required();
  rollout_cmd->add_option("qtable", qtable_path)->required();
  rollout_cmd->add_option("--out", out_path);
  rollout_cmd->callback([&] {
    const Instance instance = load_instance(instance_path);
    const QTable q = qtable_from_json(read_text(qtable_path));
    const RolloutResult r = greedy_rollout(instance, q);
    const auto states = enumerate_states(instance);
    for (const auto& step : r.trace.steps) {
      const RlStateInfo& st = states[step.action];
      std::cout << instance.job(st.job).name << " [";
      const std::size_t nops = instance.job(st.job).plans.front().operations.size();
      for (std::size_t o = 0; o < nops; ++o) std::cout << (o ? ", " : "") << instance.machine(st.machines[o]).name;
      std::cout << "] reward " << step.reward << "\n";
    }
    std::cout << "total_reward: " << r.trace.total_reward << "\n";
    if (r.schedule) {
      std::cout << "feasible, makespan " << r.schedule->c_max.to_units_string() << "\n";
      if (!out_path.empty()) save_schedule(instance, *r.schedule, out_path);
    } else {
      std::cout << "infeasible rollout\n";
      exit_code = 1;
    }
  });

  auto* gantt_cmd = app.add_subcommand("gantt", "Render a schedule as SVG");
  gantt_cmd->add_option("instance", instance_path)->required();
  gantt_cmd->add_option("schedule", schedule_path)->required();
  gantt_cmd->add_option("--out", out_path)->required();
  gantt_cmd->callback([&] {
    const Instance instance = load_instance(instance_path);
    write_text(out_path, render_gantt(instance, load_schedule(instance, schedule_path)));
  });

  auto* gen_cmd = app.add_subcommand("gen", "Write the solar-panel benchmark instance");
  std::size_t panels = 1;
  int shift = 100;
  bool reduced = false;
  gen_cmd->add_option("--panels", panels);
  gen_cmd->add_option("--shift", shift);
  gen_cmd->add_flag("--reduced", reduced, "The five-job RL subset instead");
  gen_cmd->add_option("--out", out_path)->required();
  gen_cmd->callback([&] {
    if (reduced)
      save_instance(reduced_rl_instance(), out_path);
    else if (panels == 1 && shift >= 0)
      save_instance(solar_panel_instance(), out_path);
    else
      save_instance(gen_multi_panel(panels, shift), out_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return exit_code;
}
