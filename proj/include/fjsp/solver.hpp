#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "fjsp/instance.hpp"
#include "fjsp/schedule.hpp"

namespace fjsp {

/// Tightest schedule for fixed discrete decisions: every job starts as soon
/// as its precedence predecessors and its machines' previous jobs (plus
/// travel) allow, and lasts as long as its longest assigned operation.
/// Returns nullopt when precedence and routes together form a cycle.
/// Throws InvalidReferenceError for incomplete assignments.
std::optional<Schedule> forward_schedule(const Instance& instance, const std::vector<JobAssignment>& assignment,
                                         const std::vector<std::vector<JobId>>& routes);

/// Partial solution in the branch-and-bound tree. Jobs are dispatched one
/// at a time and appended to the routes of their machines, in
/// non-decreasing (start, job id) order.
struct SearchNode {
  std::vector<char> dispatched;
  std::vector<JobAssignment> assignment;
  std::vector<TimeTicks> start;
  std::vector<TimeTicks> completion;
  std::vector<std::vector<JobId>> routes;
  std::vector<TimeTicks> machine_free;
  /// Affix job that a holding machine must serve next.
  std::vector<std::optional<JobId>> reserved_for;
  std::size_t num_dispatched = 0;
  TimeTicks frontier_start;
  std::optional<JobId> frontier_job;
  TimeTicks partial_makespan;
  /// Best known makespan; bounds derived from it only hold for completions
  /// that would improve on it.
  TimeTicks incumbent{std::numeric_limits<std::int64_t>::max()};

  static SearchNode root(const Instance& instance);
  [[nodiscard]] bool complete() const { return num_dispatched == dispatched.size(); }
  /// Schedule of a complete node.
  [[nodiscard]] Schedule to_schedule(const Instance& instance) const;
};

/// Child of `node` with `job` dispatched under `choice`, or nullopt when the
/// move is not allowed (predecessor pending, holding rule broken, machine
/// reserved elsewhere, or start earlier than the frontier).
std::optional<SearchNode> dispatch(const Instance& instance, const SearchNode& node, JobId job,
                                   const JobAssignment& choice);

/// Admissible bound on the makespan of any completion of `node` that beats
/// node.incumbent: max of the partial makespan, head + critical tail per job,
/// machine workload, and one-machine bounds on machines forced by the
/// incumbent.
TimeTicks lower_bound(const Instance& instance, const SearchNode& node);

struct SolveBudget {
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
  std::chrono::duration<double> max_wall{std::numeric_limits<double>::infinity()};
};

struct SolveOptions {
  /// Called with every improving schedule, in order of acceptance.
  std::function<void(const Schedule&)> on_incumbent;
};

struct SolveResult {
  std::optional<Schedule> best_schedule;
  TimeTicks lower_bound;
  bool proved_optimal = false;
  bool infeasible = false;
  std::uint64_t nodes_explored = 0;
  std::chrono::duration<double> wall_time{0};

  /// (incumbent - lower_bound) / incumbent, or nullopt without incumbent.
  [[nodiscard]] std::optional<double> gap() const;
};

/// Depth-first branch and bound over dispatch order, plan choice and
/// operation-machine assignment.
SolveResult solve_exact(const Instance& instance, const SolveBudget& budget = {}, const SolveOptions& options = {});

/// Exhaustive oracle over plans, machine assignments and route orders.
/// Throws TooLargeError when the number of plan/machine combinations
/// exceeds `limit`.
SolveResult brute_force(const Instance& instance, std::uint64_t limit = 10'000'000);

}  // namespace fjsp
