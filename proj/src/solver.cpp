#include "fjsp/solver.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "fjsp/errors.hpp"

namespace fjsp {

namespace {

constexpr TimeTicks kInfinity{std::numeric_limits<std::int64_t>::max() / 4};

/// Distinct machines of an assignment, in first-use order.
std::vector<MachineId> distinct_machines(const JobAssignment& a) {
  std::vector<MachineId> out;
  for (const auto& m : a.op_machines)
    if (m && std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
  return out;
}

TimeTicks job_length(const Instance& instance, JobId j, const JobAssignment& a) {
  const ProcessPlan& plan = instance.job(j).plans.at(*a.plan);
  TimeTicks longest{0};
  for (std::size_t o = 0; o < plan.operations.size(); ++o)
    longest = std::max(longest, op_duration(instance, *a.op_machines.at(o), plan.operations[o].op_type));
  return longest;
}

ScheduledJob make_scheduled(const Instance& instance, JobId j, const JobAssignment& a, TimeTicks start) {
  ScheduledJob sj;
  sj.assignment = a;
  sj.start = start;
  const ProcessPlan& plan = instance.job(j).plans.at(*a.plan);
  TimeTicks done = start;
  for (std::size_t o = 0; o < plan.operations.size(); ++o) {
    const TimeTicks c = start + op_duration(instance, *a.op_machines[o], plan.operations[o].op_type);
    sj.op_completion.push_back(c);
    done = std::max(done, c);
  }
  sj.completion = done;
  return sj;
}

}  // namespace

std::optional<Schedule> forward_schedule(const Instance& instance, const std::vector<JobAssignment>& assignment,
                                         const std::vector<std::vector<JobId>>& routes) {
  const std::size_t nj = instance.num_jobs();
  if (assignment.size() != nj || routes.size() != instance.num_machines())
    throw InvalidReferenceError("forward_schedule needs one assignment per job and one route per machine");
  for (std::size_t j = 0; j < nj; ++j) {
    const JobAssignment& a = assignment[j];
    if (!a.plan || *a.plan >= instance.job(JobId(j)).plans.size() ||
        a.op_machines.size() != instance.job(JobId(j)).plans[*a.plan].operations.size() ||
        std::any_of(a.op_machines.begin(), a.op_machines.end(), [](const auto& m) { return !m; }))
      throw InvalidReferenceError("job '" + instance.job(JobId(j)).name + "' is not fully assigned");
  }

  // Incoming edges: (from job, machine or none for precedence).
  std::vector<std::vector<std::pair<JobId, std::optional<MachineId>>>> incoming(nj);
  std::vector<std::vector<JobId>> outgoing(nj);
  for (const PrecedenceArc& arc : instance.dag()) {
    incoming[arc.to.value].push_back({arc.from, std::nullopt});
    outgoing[arc.from.value].push_back(arc.to);
  }
  for (std::size_t m = 0; m < routes.size(); ++m)
    for (std::size_t k = 0; k + 1 < routes[m].size(); ++k) {
      incoming[routes[m][k + 1].value].push_back({routes[m][k], MachineId(m)});
      outgoing[routes[m][k].value].push_back(routes[m][k + 1]);
    }

  std::vector<std::size_t> pending(nj);
  for (std::size_t j = 0; j < nj; ++j) pending[j] = incoming[j].size();
  std::vector<std::size_t> ready;
  for (std::size_t j = nj; j-- > 0;)
    if (pending[j] == 0) ready.push_back(j);

  Schedule schedule;
  schedule.jobs.resize(nj);
  schedule.routes = routes;
  std::size_t done = 0;
  while (!ready.empty()) {
    const std::size_t j = ready.back();
    ready.pop_back();
    ++done;
    TimeTicks start{0};
    for (const auto& [from, machine] : incoming[j]) {
      TimeTicks t = schedule.jobs[from.value].completion;
      if (machine) t += travel_time(instance, *machine, from, JobId(j));
      start = std::max(start, t);
    }
    for (std::size_t m = 0; m < routes.size(); ++m) {
      const Machine& machine = instance.machine(MachineId(m));
      if (!routes[m].empty() && routes[m].front() == JobId(j) && machine.start_location)
        start = std::max(start, travel_time(instance, machine, *machine.start_location, JobId(j)));
    }
    schedule.jobs[j] = make_scheduled(instance, JobId(j), assignment[j], start);
    schedule.c_max = std::max(schedule.c_max, schedule.jobs[j].completion);
    for (JobId w : outgoing[j])
      if (--pending[w.value] == 0) ready.push_back(w.value);
  }
  if (done != nj) return std::nullopt;
  return schedule;
}

// ---------------------------------------------------------------------------
// Search nodes

SearchNode SearchNode::root(const Instance& instance) {
  const std::size_t nj = instance.num_jobs();
  const std::size_t nm = instance.num_machines();
  SearchNode node;
  node.dispatched.assign(nj, 0);
  node.assignment.assign(nj, {});
  node.start.assign(nj, TimeTicks{0});
  node.completion.assign(nj, TimeTicks{0});
  node.routes.assign(nm, {});
  node.machine_free.assign(nm, TimeTicks{0});
  node.reserved_for.assign(nm, std::nullopt);
  return node;
}

Schedule SearchNode::to_schedule(const Instance& instance) const {
  Schedule s;
  for (std::size_t j = 0; j < dispatched.size(); ++j)
    s.jobs.push_back(make_scheduled(instance, JobId(j), assignment[j], start[j]));
  s.routes = routes;
  s.c_max = partial_makespan;
  return s;
}

std::optional<SearchNode> dispatch(const Instance& instance, const SearchNode& node, JobId job,
                                   const JobAssignment& choice) {
  const std::size_t j = job.value;
  if (j >= instance.num_jobs()) throw InvalidReferenceError("dispatch of unknown job");
  if (node.dispatched[j]) return std::nullopt;
  for (JobId p : instance.predecessors(job))
    if (!node.dispatched[p.value]) return std::nullopt;
  const Job& target = instance.job(job);
  if (!choice.plan || *choice.plan >= target.plans.size()) throw InvalidReferenceError("dispatch with unknown plan");
  if (choice.op_machines.size() != target.plans[*choice.plan].operations.size())
    throw InvalidReferenceError("dispatch needs one machine per operation");
  for (const auto& m : choice.op_machines)
    if (!m || m->value >= instance.num_machines()) throw InvalidReferenceError("dispatch with unknown machine");

  // Holding: linked operations reuse the jig's machine, which comes straight from the jig.
  for (const HoldingArc& h : instance.holding()) {
    if (h.to_job != job) continue;
    for (const auto& [from_op, to_op] : h.op_links) {
      const auto& held_by = node.assignment[h.from_job.value].op_machines[from_op];
      if (choice.op_machines[to_op] != held_by) return std::nullopt;
      const auto& route = node.routes[held_by->value];
      if (route.empty() || route.back() != h.from_job) return std::nullopt;
    }
  }

  const auto machines = distinct_machines(choice);
  for (MachineId m : machines)
    if (node.reserved_for[m.value] && *node.reserved_for[m.value] != job) return std::nullopt;

  TimeTicks start{0};
  for (JobId p : instance.predecessors(job)) start = std::max(start, node.completion[p.value]);
  for (MachineId m : machines) {
    const Machine& machine = instance.machine(m);
    const auto& route = node.routes[m.value];
    TimeTicks ready{0};
    if (!route.empty())
      ready = node.machine_free[m.value] + travel_time(instance, machine, route.back(), job);
    else if (machine.start_location)
      ready = travel_time(instance, machine, *machine.start_location, job);
    start = std::max(start, ready);
  }
  if (node.frontier_job && std::pair(start, job) < std::pair(node.frontier_start, *node.frontier_job))
    return std::nullopt;

  SearchNode child = node;
  const TimeTicks done = start + job_length(instance, job, choice);
  child.dispatched[j] = 1;
  child.assignment[j] = choice;
  child.start[j] = start;
  child.completion[j] = done;
  ++child.num_dispatched;
  child.frontier_start = start;
  child.frontier_job = job;
  child.partial_makespan = std::max(node.partial_makespan, done);
  for (MachineId m : machines) {
    child.routes[m.value].push_back(job);
    child.machine_free[m.value] = done;
    child.reserved_for[m.value].reset();
  }
  for (const HoldingArc& h : instance.holding()) {
    if (h.from_job != job) continue;
    for (const auto& [from_op, to_op] : h.op_links) {
      auto& slot = child.reserved_for[choice.op_machines[from_op]->value];
      if (slot && *slot != h.to_job) return std::nullopt;
      slot = h.to_job;
    }
  }
  return child;
}

// ---------------------------------------------------------------------------
// Bounds

namespace {

/// Instance-level tables used by the bound; built once per solve.
struct BoundTables {
  std::vector<TimeTicks> min_length;               // shortest possible job length
  std::vector<TimeTicks> tail;                     // longest chain of min lengths from j, inclusive
  std::vector<std::vector<TimeTicks>> with_m;      // shortest length when machine m takes part
  std::vector<std::vector<TimeTicks>> without_m;   // shortest length when m does not take part
  std::vector<std::vector<std::pair<JobId, std::size_t>>> held_from;  // affix -> (jig, jig op)

  explicit BoundTables(const Instance& instance) {
    const std::size_t nj = instance.num_jobs();
    const std::size_t nm = instance.num_machines();
    min_length.assign(nj, kInfinity);
    tail.assign(nj, TimeTicks{0});
    with_m.assign(nj, std::vector<TimeTicks>(nm, kInfinity));
    without_m.assign(nj, std::vector<TimeTicks>(nm, kInfinity));
    held_from.assign(nj, {});
    for (std::size_t j = 0; j < nj; ++j) {
      for (const ProcessPlan& plan : instance.job(JobId(j)).plans) {
        std::vector<TimeTicks> best(plan.operations.size(), kInfinity);
        for (std::size_t o = 0; o < plan.operations.size(); ++o)
          for (std::size_t m = 0; m < nm; ++m)
            best[o] = std::min(best[o], op_duration(instance, MachineId(m), plan.operations[o].op_type));
        const TimeTicks fastest = *std::max_element(best.begin(), best.end());
        min_length[j] = std::min(min_length[j], fastest);
        for (std::size_t m = 0; m < nm; ++m) {
          TimeTicks excluded{0};
          for (std::size_t o = 0; o < plan.operations.size(); ++o) {
            TimeTicks alt = kInfinity;
            for (std::size_t k = 0; k < nm; ++k)
              if (k != m) alt = std::min(alt, op_duration(instance, MachineId(k), plan.operations[o].op_type));
            excluded = std::max(excluded, alt);
            // m takes operation o; the others run as fast as possible.
            TimeTicks with = op_duration(instance, MachineId(m), plan.operations[o].op_type);
            for (std::size_t k = 0; k < plan.operations.size(); ++k)
              if (k != o) with = std::max(with, best[k]);
            with_m[j][m] = std::min(with_m[j][m], with);
          }
          without_m[j][m] = std::min(without_m[j][m], excluded);
        }
      }
    }
    const auto& topo = instance.topological_order();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      TimeTicks after{0};
      for (JobId s : instance.successors(*it)) after = std::max(after, tail[s.value]);
      tail[it->value] = after + min_length[it->value];
    }
    for (const HoldingArc& h : instance.holding())
      for (const auto& [from_op, to_op] : h.op_links) held_from[h.to_job.value].push_back({h.from_job, from_op});
  }
};

/// Smallest T with sum over machines of max(0, T - ready_m) >= work.
TimeTicks workload_bound(std::vector<TimeTicks> ready, TimeTicks work) {
  if (work <= TimeTicks{0} || ready.empty()) return TimeTicks{0};
  std::sort(ready.begin(), ready.end());
  std::int64_t sum = 0;
  for (std::size_t k = 0; k < ready.size(); ++k) {
    sum += ready[k].count();
    const auto used = static_cast<std::int64_t>(k + 1);
    // T = ceil((work + sum) / used), valid if it does not exceed the next ready time.
    const std::int64_t t = (work.count() + sum + used - 1) / used;
    if (k + 1 == ready.size() || t <= ready[k + 1].count()) return TimeTicks(t);
  }
  return TimeTicks{0};
}

struct Forced {
  TimeTicks release;
  TimeTicks length;
  TimeTicks tail;
};

/// Jobs sharing one machine run one after another.
TimeTicks one_machine_bound(std::vector<Forced>& jobs) {
  TimeTicks best{0};
  if (jobs.empty()) return best;
  std::sort(jobs.begin(), jobs.end(), [](const Forced& a, const Forced& b) { return a.release < b.release; });
  TimeTicks total{0};
  TimeTicks min_tail = kInfinity;
  for (std::size_t k = jobs.size(); k-- > 0;) {
    total += jobs[k].length;
    min_tail = std::min(min_tail, jobs[k].tail);
    best = std::max(best, jobs[k].release + total + min_tail);
  }
  std::sort(jobs.begin(), jobs.end(), [](const Forced& a, const Forced& b) { return a.tail < b.tail; });
  total = TimeTicks{0};
  TimeTicks min_release = kInfinity;
  for (std::size_t k = jobs.size(); k-- > 0;) {
    total += jobs[k].length;
    min_release = std::min(min_release, jobs[k].release);
    best = std::max(best, min_release + total + jobs[k].tail);
  }
  return best;
}

TimeTicks bound(const Instance& instance, const BoundTables& tables, const SearchNode& node) {
  const std::size_t nm = instance.num_machines();
  TimeTicks lb = node.partial_makespan;
  if (node.complete()) return lb;

  std::vector<TimeTicks> head(instance.num_jobs(), TimeTicks{0});
  TimeTicks remaining_work{0};
  for (JobId j : instance.topological_order()) {
    if (node.dispatched[j.value]) continue;
    TimeTicks h = node.frontier_start;
    for (JobId p : instance.predecessors(j)) {
      const TimeTicks ready =
          node.dispatched[p.value] ? node.completion[p.value] : head[p.value] + tables.min_length[p.value];
      h = std::max(h, ready);
    }
    head[j.value] = h;
    lb = std::max(lb, h + tables.tail[j.value]);
    remaining_work += tables.min_length[j.value];
  }

  std::vector<TimeTicks> machine_ready(nm);
  for (std::size_t m = 0; m < nm; ++m) machine_ready[m] = std::max(node.machine_free[m], node.frontier_start);
  lb = std::max(lb, workload_bound(machine_ready, remaining_work));

  const bool have_incumbent = node.incumbent < kInfinity;
  std::vector<std::vector<Forced>> forced(nm);
  for (std::size_t j = 0; j < instance.num_jobs(); ++j) {
    if (node.dispatched[j]) continue;
    const TimeTicks after = tables.tail[j] - tables.min_length[j];
    std::vector<bool> must(nm, false);
    for (const auto& [jig, op] : tables.held_from[j])
      if (node.dispatched[jig.value]) must[node.assignment[jig.value].op_machines[op]->value] = true;
    if (have_incumbent)
      for (std::size_t m = 0; m < nm; ++m)
        if (head[j] + tables.without_m[j][m] + after >= node.incumbent) must[m] = true;
    for (std::size_t m = 0; m < nm; ++m)
      if (must[m]) forced[m].push_back({std::max(head[j], machine_ready[m]), tables.with_m[j][m], after});
  }
  for (auto& jobs : forced) lb = std::max(lb, one_machine_bound(jobs));
  return lb;
}

// ---------------------------------------------------------------------------
// Branch and bound

class BranchAndBound {
 public:
  BranchAndBound(const Instance& instance, const SolveBudget& budget, const SolveOptions& options)
      : in_(instance), tables_(instance), budget_(budget), options_(options) {}

  SolveResult run() {
    const auto t0 = std::chrono::steady_clock::now();
    start_time_ = t0;
    best_ = in_.horizon() + TimeTicks(1);
    SearchNode root = SearchNode::root(in_);
    root.incumbent = best_;
    const TimeTicks root_lb = bound(in_, tables_, root);
    if (root_lb < best_) explore(root, root_lb);

    SolveResult result;
    result.nodes_explored = nodes_;
    result.best_schedule = incumbent_;
    if (aborted_) {
      result.lower_bound = std::min(open_bound_, best_);
    } else if (incumbent_) {
      result.proved_optimal = true;
      result.lower_bound = best_;
    } else {
      result.infeasible = true;
      result.lower_bound = best_;
    }
    result.wall_time = std::chrono::steady_clock::now() - t0;
    return result;
  }

 private:
  struct Child {
    TimeTicks lb;
    TimeTicks completion;
    JobId job;
    JobAssignment choice;
    SearchNode node;
  };

  bool out_of_budget() {
    if (nodes_ >= budget_.max_nodes) return true;
    if ((nodes_ & 255) == 0 && std::chrono::steady_clock::now() - start_time_ > budget_.max_wall) return true;
    return false;
  }

  void explore(const SearchNode& node, TimeTicks node_lb) {
    if (aborted_) return;
    if (out_of_budget()) {
      aborted_ = true;
      open_bound_ = std::min(open_bound_, node_lb);
      return;
    }
    ++nodes_;
    if (node.complete()) {
      if (node.partial_makespan < best_) {
        best_ = node.partial_makespan;
        incumbent_ = node.to_schedule(in_);
        if (options_.on_incumbent) options_.on_incumbent(*incumbent_);
      }
      return;
    }

    std::vector<Child> children;
    for (std::size_t j = 0; j < in_.num_jobs(); ++j) {
      if (node.dispatched[j]) continue;
      const JobId job(j);
      const auto& preds = in_.predecessors(job);
      if (std::any_of(preds.begin(), preds.end(), [&](JobId p) { return !node.dispatched[p.value]; })) continue;
      const Job& target = in_.job(job);
      for (std::size_t p = 0; p < target.plans.size(); ++p) enumerate(node, job, p, children);
    }
    std::sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
      if (a.lb != b.lb) return a.lb < b.lb;
      if (a.completion != b.completion) return a.completion < b.completion;
      if (a.job != b.job) return a.job < b.job;
      if (a.choice.plan != b.choice.plan) return a.choice.plan < b.choice.plan;
      return a.choice.op_machines < b.choice.op_machines;
    });
    for (Child& c : children) {
      if (c.lb >= best_) continue;  // the incumbent may have improved since
      c.node.incumbent = best_;
      explore(c.node, c.lb);
      if (aborted_) {
        open_bound_ = std::min(open_bound_, node_lb);
        return;
      }
    }
  }

  void enumerate(const SearchNode& node, JobId job, std::size_t plan, std::vector<Child>& out) {
    const std::size_t nops = in_.job(job).plans[plan].operations.size();
    std::vector<std::optional<MachineId>> fixed(nops);
    for (const HoldingArc& h : in_.holding()) {
      if (h.to_job != job) continue;
      for (const auto& [from_op, to_op] : h.op_links) fixed[to_op] = node.assignment[h.from_job.value].op_machines[from_op];
    }
    JobAssignment choice{plan, std::vector<std::optional<MachineId>>(nops)};
    const std::size_t nm = in_.num_machines();
    auto rec = [&](auto& self, std::size_t o) -> void {
      if (o == nops) {
        auto child = dispatch(in_, node, job, choice);
        if (!child) return;
        child->incumbent = best_;
        const TimeTicks lb = bound(in_, tables_, *child);
        if (lb >= best_) return;
        out.push_back({lb, child->completion[job.value], job, choice, std::move(*child)});
        return;
      }
      if (fixed[o]) {
        choice.op_machines[o] = fixed[o];
        self(self, o + 1);
        return;
      }
      for (std::size_t m = 0; m < nm; ++m) {
        choice.op_machines[o] = MachineId(m);
        self(self, o + 1);
      }
    };
    rec(rec, 0);
  }

  const Instance& in_;
  BoundTables tables_;
  SolveBudget budget_;
  const SolveOptions& options_;
  std::chrono::steady_clock::time_point start_time_;
  TimeTicks best_;
  std::optional<Schedule> incumbent_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  TimeTicks open_bound_ = kInfinity;
};

}  // namespace

TimeTicks lower_bound(const Instance& instance, const SearchNode& node) {
  const BoundTables tables(instance);
  return bound(instance, tables, node);
}

std::optional<double> SolveResult::gap() const {
  if (!best_schedule) return std::nullopt;
  const double inc = static_cast<double>(best_schedule->c_max.count());
  if (inc <= 0) return 0.0;
  return (inc - static_cast<double>(lower_bound.count())) / inc;
}

SolveResult solve_exact(const Instance& instance, const SolveBudget& budget, const SolveOptions& options) {
  if (budget.max_nodes == 0 || !(budget.max_wall.count() > 0)) throw InvalidArgumentError("solve budget must be positive");
  return BranchAndBound(instance, budget, options).run();
}

// ---------------------------------------------------------------------------
// Brute force

namespace {

/// Earliest-start times for fixed decisions, computed independently of
/// forward_schedule: repeated relaxation over all arcs until stable.
std::optional<std::vector<std::int64_t>> relax_times(const Instance& instance, const std::vector<std::int64_t>& length,
                                                     const std::vector<std::vector<JobId>>& routes) {
  const std::size_t nj = instance.num_jobs();
  std::vector<std::int64_t> start(nj, 0);
  for (std::size_t m = 0; m < routes.size(); ++m) {
    const Machine& machine = instance.machine(MachineId(m));
    if (!routes[m].empty() && machine.start_location)
      start[routes[m].front().value] =
          std::max(start[routes[m].front().value],
                   travel_time(instance, machine, *machine.start_location, routes[m].front()).count());
  }
  // A longest path visits each job once, so more than nj rounds of change means a cycle.
  for (std::size_t round = 0; round <= nj; ++round) {
    bool changed = false;
    for (const PrecedenceArc& arc : instance.dag()) {
      const std::int64_t t = start[arc.from.value] + length[arc.from.value];
      if (t > start[arc.to.value]) {
        start[arc.to.value] = t;
        changed = true;
      }
    }
    for (std::size_t m = 0; m < routes.size(); ++m)
      for (std::size_t k = 0; k + 1 < routes[m].size(); ++k) {
        const JobId a = routes[m][k];
        const JobId b = routes[m][k + 1];
        const std::int64_t t = start[a.value] + length[a.value] + travel_time(instance, MachineId(m), a, b).count();
        if (t > start[b.value]) {
          start[b.value] = t;
          changed = true;
        }
      }
    if (!changed) return start;
  }
  return std::nullopt;
}

}  // namespace

SolveResult brute_force(const Instance& instance, std::uint64_t limit) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t nj = instance.num_jobs();
  const std::size_t nm = instance.num_machines();

  // Options per job: every (plan, machine tuple).
  std::vector<std::vector<JobAssignment>> options(nj);
  long double combos = 1;
  for (std::size_t j = 0; j < nj; ++j) {
    long double per_job = 0;
    for (const ProcessPlan& plan : instance.job(JobId(j)).plans) {
      long double c = 1;
      for (std::size_t o = 0; o < plan.operations.size(); ++o) c *= static_cast<long double>(nm);
      per_job += c;
    }
    combos *= per_job;
  }
  if (combos > static_cast<long double>(limit))
    throw TooLargeError("brute force would enumerate " + std::to_string(static_cast<double>(combos)) +
                        " assignments (limit " + std::to_string(limit) + ")");
  for (std::size_t j = 0; j < nj; ++j) {
    const auto& plans = instance.job(JobId(j)).plans;
    for (std::size_t p = 0; p < plans.size(); ++p) {
      const std::size_t nops = plans[p].operations.size();
      std::vector<std::size_t> digits(nops, 0);
      while (true) {
        JobAssignment a{p, {}};
        for (std::size_t d : digits) a.op_machines.push_back(MachineId(d));
        options[j].push_back(std::move(a));
        std::size_t k = 0;
        while (k < nops && ++digits[k] == nm) digits[k++] = 0;
        if (k == nops) break;
      }
    }
  }

  SolveResult result;
  std::optional<std::int64_t> best;
  std::vector<JobAssignment> current(nj);
  std::vector<std::size_t> pick(nj, 0);
  bool exhausted = nj > 0 && nm == 0;
  for (std::size_t j = 0; j < nj; ++j)
    if (options[j].empty()) exhausted = true;

  while (!exhausted) {
    for (std::size_t j = 0; j < nj; ++j) current[j] = options[j][pick[j]];

    bool holding_ok = true;
    for (const HoldingArc& h : instance.holding())
      for (const auto& [a, b] : h.op_links)
        if (current[h.from_job.value].op_machines[a] != current[h.to_job.value].op_machines[b]) holding_ok = false;

    if (holding_ok) {
      std::vector<std::int64_t> length(nj, 0);
      std::vector<std::vector<JobId>> routes(nm);
      for (std::size_t j = 0; j < nj; ++j) {
        const ProcessPlan& plan = instance.job(JobId(j)).plans[*current[j].plan];
        for (std::size_t o = 0; o < plan.operations.size(); ++o) {
          const MachineId m = *current[j].op_machines[o];
          length[j] = std::max(length[j], op_duration(instance, m, plan.operations[o].op_type).count());
          if (std::find(routes[m.value].begin(), routes[m.value].end(), JobId(j)) == routes[m.value].end())
            routes[m.value].push_back(JobId(j));
        }
      }
      // Every combination of route permutations (routes start sorted by job id).
      while (true) {
        ++result.nodes_explored;
        bool next_ok = true;
        for (const HoldingArc& h : instance.holding())
          for (const auto& [a, b] : h.op_links) {
            const auto& r = routes[current[h.from_job.value].op_machines[a]->value];
            bool direct = false;
            for (std::size_t k = 0; k + 1 < r.size(); ++k)
              if (r[k] == h.from_job && r[k + 1] == h.to_job) direct = true;
            if (!direct) next_ok = false;
          }
        if (next_ok) {
          if (auto start = relax_times(instance, length, routes)) {
            std::int64_t span = 0;
            for (std::size_t j = 0; j < nj; ++j) span = std::max(span, (*start)[j] + length[j]);
            if (span <= instance.horizon().count() && (!best || span < *best)) {
              best = span;
              Schedule s;
              for (std::size_t j = 0; j < nj; ++j)
                s.jobs.push_back(make_scheduled(instance, JobId(j), current[j], TimeTicks((*start)[j])));
              s.routes = routes;
              s.c_max = TimeTicks(span);
              result.best_schedule = std::move(s);
            }
          }
        }
        std::size_t m = 0;
        while (m < nm && !std::next_permutation(routes[m].begin(), routes[m].end())) ++m;
        if (m == nm) break;
      }
    }

    std::size_t k = 0;
    while (k < nj && ++pick[k] == options[k].size()) pick[k++] = 0;
    if (k == nj) break;
  }

  if (best) {
    result.proved_optimal = true;
    result.lower_bound = TimeTicks(*best);
  } else {
    result.infeasible = true;
    result.lower_bound = instance.horizon() + TimeTicks(1);
  }
  result.wall_time = std::chrono::steady_clock::now() - t0;
  return result;
}

}  // namespace fjsp
