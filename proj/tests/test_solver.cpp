#include <gtest/gtest.h>

#include "fjsp/errors.hpp"
#include "fjsp/instances.hpp"
#include "fjsp/solver.hpp"
#include "support.hpp"

namespace fjsp {
namespace {

/// Jobs with a single locomotion operation each, LSMS-like machines.
InstanceData moves(std::size_t jobs, std::size_t machines) {
  InstanceData d;
  d.operation_types = {"hold frame link", "hold sheet", "weld", "locomote"};
  d.robot_types = {"LSMS"};
  d.efficiency = {{10, 10, 10, 1}};
  d.locomotion_type = OperationTypeId(3);
  for (std::size_t m = 0; m < machines; ++m) d.machines.push_back({"L" + std::to_string(m), RobotTypeId(0), 30, {}});
  for (std::size_t j = 0; j < jobs; ++j) d.jobs.push_back({"j" + std::to_string(j), {{{{OperationTypeId(3)}}}}});
  d.distances.assign(jobs, std::vector<int>(jobs, 0));
  return d;
}

TEST(SolveExact, SingleJob) {
  const Instance in(moves(1, 1));
  const SolveResult r = solve_exact(in);
  ASSERT_TRUE(r.proved_optimal);
  EXPECT_EQ(r.best_schedule->c_max.count(), 150);
  EXPECT_EQ(r.lower_bound.count(), 150);
  const SolveResult bf = brute_force(in);
  EXPECT_EQ(bf.lower_bound.count(), 150);
}

TEST(SolveExact, IndependentJobsRunInParallel) {
  const Instance in(moves(2, 2));
  const SolveResult r = solve_exact(in);
  ASSERT_TRUE(r.proved_optimal);
  EXPECT_EQ(r.best_schedule->c_max.count(), 150);
  EXPECT_EQ(brute_force(in).lower_bound.count(), 150);
}

TEST(SolveExact, InfeasibleHoldingIsFlagged) {
  InstanceData d = moves(3, 2);
  d.dag = {{JobId(0), JobId(1)}, {JobId(0), JobId(2)}};
  d.holding = {{JobId(0), JobId(1), {{0, 0}}}, {JobId(0), JobId(2), {{0, 0}}}};
  const Instance in(d);
  const SolveResult r = solve_exact(in);
  EXPECT_TRUE(r.infeasible);
  EXPECT_FALSE(r.best_schedule);
  EXPECT_TRUE(brute_force(in).infeasible);
}

TEST(SolveExact, BenchmarkOptimumAndReducedOracle) {
  const Instance panel = solar_panel_instance();
  const SolveResult r = solve_exact(panel);
  ASSERT_TRUE(r.proved_optimal);
  EXPECT_EQ(r.lower_bound, r.best_schedule->c_max);
  EXPECT_TRUE(validate(panel, *r.best_schedule).empty());

  const Instance reduced = reduced_rl_instance();
  const SolveResult exact = solve_exact(reduced);
  const SolveResult bf = brute_force(reduced);
  ASSERT_TRUE(exact.proved_optimal);
  ASSERT_TRUE(bf.proved_optimal);
  EXPECT_EQ(exact.best_schedule->c_max, bf.best_schedule->c_max);
}

TEST(SolveExact, Deterministic) {
  const Instance in = solar_panel_instance();
  const SolveResult a = solve_exact(in);
  const SolveResult b = solve_exact(in);
  EXPECT_EQ(a.nodes_explored, b.nodes_explored);
  EXPECT_EQ(a.best_schedule, b.best_schedule);
  const Instance two = gen_multi_panel(2, 100);
  const SolveResult c = solve_exact(two, {20000, std::chrono::duration<double>(1e9)});
  const SolveResult e = solve_exact(two, {20000, std::chrono::duration<double>(1e9)});
  EXPECT_EQ(c.nodes_explored, e.nodes_explored);
  EXPECT_EQ(c.best_schedule, e.best_schedule);
  EXPECT_EQ(c.lower_bound, e.lower_bound);
}

TEST(SolveExact, EveryIncumbentIsFeasible) {
  for (const Instance& in : {solar_panel_instance(), gen_multi_panel(2, 100)}) {
    std::size_t seen = 0;
    SolveOptions options;
    TimeTicks last = in.horizon() + TimeTicks(1);
    options.on_incumbent = [&](const Schedule& s) {
      ++seen;
      EXPECT_TRUE(validate(in, s).empty());
      EXPECT_LT(s.c_max, last);
      last = s.c_max;
    };
    const SolveResult r = solve_exact(in, {50000, std::chrono::duration<double>(1e9)}, options);
    EXPECT_GE(seen, 1u);
    EXPECT_LE(r.lower_bound, r.best_schedule->c_max);
  }
}

TEST(SolveExact, BudgetLimitedResult) {
  const Instance two = gen_multi_panel(2, 100);
  const SolveResult r = solve_exact(two, {200, std::chrono::duration<double>(1e9)});
  EXPECT_FALSE(r.proved_optimal);
  EXPECT_FALSE(r.infeasible);
  EXPECT_LE(r.nodes_explored, 200u);
  if (r.best_schedule) {
    ASSERT_TRUE(r.gap());
    EXPECT_GE(*r.gap(), 0.0);
  }
  EXPECT_THROW(solve_exact(two, {0, std::chrono::duration<double>(1)}), InvalidArgumentError);
}

TEST(BruteForce, RefusesLargeInstances) {
  EXPECT_THROW(brute_force(solar_panel_instance()), TooLargeError);
}

TEST(ForwardSchedule, CycleThroughRoutesIsRejected) {
  InstanceData d = moves(2, 1);
  d.dag = {{JobId(0), JobId(1)}};
  const Instance in(d);
  const std::vector<JobAssignment> a(2, JobAssignment{0, {MachineId(0)}});
  EXPECT_FALSE(forward_schedule(in, a, {{JobId(1), JobId(0)}}));
  const auto s = forward_schedule(in, a, {{JobId(0), JobId(1)}});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->c_max.count(), 300);
  EXPECT_TRUE(validate(in, *s).empty());
}

// ---------------------------------------------------------------------------
// Bounds

TEST(LowerBound, CriticalPathOfChain) {
  InstanceData d = moves(3, 2);
  d.dag = {{JobId(0), JobId(1)}, {JobId(1), JobId(2)}};
  const Instance in(d);
  EXPECT_GE(lower_bound(in, SearchNode::root(in)).count(), 450);
}

TEST(LowerBound, CommittedMachineWork) {
  InstanceData d = moves(2, 1);
  d.efficiency = {{6, 10, 10, 1}};
  d.jobs[0].plans[0].operations[0].op_type = OperationTypeId(0);
  const Instance in(d);
  const auto node = dispatch(in, SearchNode::root(in), JobId(0), JobAssignment{0, {MachineId(0)}});
  ASSERT_TRUE(node);
  EXPECT_GE(lower_bound(in, *node).count(), 900);
}

TEST(LowerBound, AdmissibleOnTinyInstances) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 50; ++k) {
    const Instance in = testing::random_tiny_instance(rng);
    const SolveResult bf = brute_force(in);
    if (!bf.best_schedule) continue;
    const TimeTicks opt = bf.best_schedule->c_max;
    SearchNode root = SearchNode::root(in);
    EXPECT_LE(lower_bound(in, root), opt);
    root.incumbent = opt + TimeTicks(1);
    EXPECT_LE(lower_bound(in, root), opt);
    // Along a random dispatch walk each prefix has the walk as a completion.
    for (int w = 0; w < 5; ++w) {
      SearchNode node = SearchNode::root(in);
      std::optional<Schedule> done = testing::random_dispatch_walk(in, rng);
      if (!done) continue;
      // Replay the walk in (start, id) order.
      std::vector<std::size_t> order(in.num_jobs());
      for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::pair(done->jobs[a].start, a) < std::pair(done->jobs[b].start, b);
      });
      bool replayed = true;
      for (std::size_t j : order) {
        auto next = dispatch(in, node, JobId(j), done->jobs[j].assignment);
        if (!next) {
          replayed = false;
          break;
        }
        node = *next;
        EXPECT_LE(lower_bound(in, node), done->c_max);
      }
      EXPECT_TRUE(replayed);
    }
  }
}

// ---------------------------------------------------------------------------
// Oracle and properties

TEST(Oracle, ExactEqualsBruteForceOnTinyInstances) {
  std::mt19937_64 rng(1234);
  for (int k = 0; k < 50; ++k) {
    const Instance in = testing::random_tiny_instance(rng);
    const SolveResult bf = brute_force(in);
    const SolveResult ex = solve_exact(in);
    ASSERT_EQ(bf.infeasible, ex.infeasible) << "instance " << k;
    if (bf.infeasible) continue;
    ASSERT_TRUE(ex.proved_optimal);
    EXPECT_EQ(ex.best_schedule->c_max, bf.best_schedule->c_max) << "instance " << k;
    EXPECT_TRUE(validate(in, *ex.best_schedule).empty());
    EXPECT_TRUE(validate(in, *bf.best_schedule).empty());
  }
}

TEST(Property, ScalingDistancesNeverLowersOptimum) {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 5; ++k) {
    const Instance base = testing::random_tiny_instance(rng);
    std::optional<TimeTicks> previous;
    for (int scale : {1, 2, 3}) {
      InstanceData d = base.data();
      for (auto& row : d.distances)
        for (int& x : row) x *= scale;
      const SolveResult r = solve_exact(Instance(d));
      ASSERT_TRUE(r.proved_optimal);
      if (previous) EXPECT_GE(r.best_schedule->c_max, *previous);
      previous = r.best_schedule->c_max;
    }
  }
}

}  // namespace
}  // namespace fjsp
