#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "fjsp/instance.hpp"
#include "fjsp/schedule.hpp"
#include "fjsp/solver.hpp"

namespace fjsp::testing {

/// Small random instance: up to max_jobs jobs, max_machines machines, up to
/// two plans per job with one or two operations, random DAG (arcs follow a
/// random job order) and sometimes one holding arc.
inline Instance random_tiny_instance(std::mt19937_64& rng, std::size_t max_jobs = 4, std::size_t max_machines = 3) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  InstanceData d;
  d.operation_types = {"a", "b", "move"};
  d.locomotion_type = OperationTypeId(2);
  const auto nm = static_cast<std::size_t>(uniform(1, static_cast<int>(max_machines)));
  const auto nj = static_cast<std::size_t>(uniform(1, static_cast<int>(max_jobs)));
  for (std::size_t r = 0; r < nm; ++r) {
    d.robot_types.push_back("r" + std::to_string(r));
    d.efficiency.push_back({uniform(1, 5), uniform(1, 5), uniform(1, 4)});
    d.machines.push_back({"m" + std::to_string(r), RobotTypeId(r), uniform(0, 1) ? 30 : 25, std::nullopt});
  }
  for (std::size_t j = 0; j < nj; ++j) {
    Job job{"j" + std::to_string(j), {}};
    const int plans = uniform(1, 2);
    for (int p = 0; p < plans; ++p) {
      ProcessPlan plan;
      const int ops = uniform(1, 2);
      for (int o = 0; o < ops; ++o) plan.operations.push_back({OperationTypeId(static_cast<std::size_t>(uniform(0, 2)))});
      job.plans.push_back(plan);
    }
    d.jobs.push_back(job);
  }
  d.distances.assign(nj, std::vector<int>(nj, 0));
  for (std::size_t a = 0; a < nj; ++a)
    for (std::size_t b = 0; b < nj; ++b)
      if (a != b) d.distances[a][b] = uniform(0, 12);
  std::vector<std::size_t> order(nj);
  for (std::size_t j = 0; j < nj; ++j) order[j] = j;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t x = 0; x < nj; ++x)
    for (std::size_t y = x + 1; y < nj; ++y)
      if (uniform(0, 99) < 35) d.dag.push_back({JobId(order[x]), JobId(order[y])});
  if (!d.dag.empty() && uniform(0, 99) < 40) {
    const PrecedenceArc arc = d.dag[static_cast<std::size_t>(uniform(0, static_cast<int>(d.dag.size()) - 1))];
    d.holding.push_back({arc.from, arc.to, {{0, 0}}});
  }
  return Instance(std::move(d));
}

/// Feasible schedule from a random sequence of allowed dispatch moves, or
/// nullopt when the walk runs into a dead end.
inline std::optional<Schedule> random_dispatch_walk(const Instance& instance, std::mt19937_64& rng) {
  SearchNode node = SearchNode::root(instance);
  while (!node.complete()) {
    std::vector<SearchNode> moves;
    for (std::size_t j = 0; j < instance.num_jobs(); ++j) {
      const Job& job = instance.job(JobId(j));
      for (std::size_t p = 0; p < job.plans.size(); ++p) {
        const std::size_t nops = job.plans[p].operations.size();
        std::vector<std::size_t> digits(nops, 0);
        while (true) {
          JobAssignment a{p, {}};
          for (std::size_t m : digits) a.op_machines.push_back(MachineId(m));
          if (auto child = dispatch(instance, node, JobId(j), a)) moves.push_back(std::move(*child));
          std::size_t k = 0;
          while (k < nops && ++digits[k] == instance.num_machines()) digits[k++] = 0;
          if (k == nops) break;
        }
      }
    }
    if (moves.empty()) return std::nullopt;
    node = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
  }
  Schedule s = node.to_schedule(instance);
  if (s.c_max > instance.horizon()) return std::nullopt;
  return s;
}

inline bool has_kind(const std::vector<Violation>& v, ViolationKind kind) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == kind; });
}

}  // namespace fjsp::testing
