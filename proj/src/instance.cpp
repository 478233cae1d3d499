#include "fjsp/instance.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <sstream>

#include "fjsp/errors.hpp"

namespace fjsp {

namespace {

std::int64_t duration_ticks(const InstanceData& d, const Machine& m, OperationTypeId q) {
  return static_cast<std::int64_t>(d.efficiency[m.robot_type.value][q.value]) * TimeTicks::kPerUnit;
}

/// Numerator of the travel time before division by the locomotion divisor.
std::int64_t travel_numerator(const InstanceData& d, const Machine& m, JobId from, JobId to) {
  return static_cast<std::int64_t>(d.distances[from.value][to.value]) *
         d.efficiency[m.robot_type.value][d.locomotion_type.value] * TimeTicks::kPerUnit;
}

std::int64_t horizon_ticks(const InstanceData& d) {
  std::int64_t work = 0;
  for (const Job& job : d.jobs) {
    std::int64_t longest = 0;
    for (const ProcessPlan& plan : job.plans)
      for (const Operation& op : plan.operations)
        for (const Machine& m : d.machines) longest = std::max(longest, duration_ticks(d, m, op.op_type));
    work += longest;
  }
  std::int64_t travel = 0;
  for (const Machine& m : d.machines)
    for (std::size_t a = 0; a < d.jobs.size(); ++a)
      for (std::size_t b = 0; b < d.jobs.size(); ++b)
        travel = std::max(travel, travel_numerator(d, m, JobId(a), JobId(b)) / m.locomotion_divisor);
  return work + static_cast<std::int64_t>(d.jobs.size()) * travel;
}

std::string describe_cycle(const InstanceData& d, const std::vector<std::vector<JobId>>& succs) {
  const std::size_t n = d.jobs.size();
  std::vector<int> color(n, 0);
  std::vector<std::size_t> stack;
  std::string found;
  std::function<bool(std::size_t)> visit = [&](std::size_t v) {
    color[v] = 1;
    stack.push_back(v);
    for (JobId w : succs[v]) {
      if (color[w.value] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w.value);
        std::ostringstream os;
        for (; it != stack.end(); ++it) os << d.jobs[*it].name << " -> ";
        os << d.jobs[w.value].name;
        found = os.str();
        return true;
      }
      if (color[w.value] == 0 && visit(w.value)) return true;
    }
    color[v] = 2;
    stack.pop_back();
    return false;
  };
  for (std::size_t v = 0; v < n; ++v)
    if (color[v] == 0 && visit(v)) break;
  return found;
}

}  // namespace

Instance::Instance(InstanceData data) : data_(std::move(data)) {
  const InstanceData& d = data_;
  const std::size_t nq = d.operation_types.size();
  const std::size_t nr = d.robot_types.size();
  const std::size_t nj = d.jobs.size();

  if (d.efficiency.size() != nr) throw InvariantError("efficiency matrix must have one row per robot type");
  for (std::size_t r = 0; r < nr; ++r) {
    if (d.efficiency[r].size() != nq)
      throw InvariantError("efficiency row for robot type '" + d.robot_types[r] +
                           "' must have one entry per operation type");
    for (std::size_t q = 0; q < nq; ++q)
      if (d.efficiency[r][q] < 1)
        throw InvariantError("efficiency entry [" + d.robot_types[r] + "][" + d.operation_types[q] +
                             "] must be >= 1");
  }
  if (d.locomotion_type.value >= nq) throw InvalidReferenceError("locomotion operation type out of range");

  std::set<std::string> names;
  for (const Machine& m : d.machines) {
    if (!names.insert(m.name).second) throw InvariantError("duplicate machine name '" + m.name + "'");
    if (m.robot_type.value >= nr) throw InvalidReferenceError("machine '" + m.name + "' has unknown robot type");
    if (m.locomotion_divisor <= 0) throw InvariantError("machine '" + m.name + "' needs a positive divisor");
    if (m.start_location && m.start_location->value >= nj)
      throw InvalidReferenceError("machine '" + m.name + "' starts at an unknown job");
  }
  names.clear();
  for (const Job& job : d.jobs) {
    if (!names.insert(job.name).second) throw InvariantError("duplicate job name '" + job.name + "'");
    if (job.plans.empty()) throw InvariantError("job '" + job.name + "' has no process plan");
    for (const ProcessPlan& plan : job.plans) {
      if (plan.operations.empty()) throw InvariantError("job '" + job.name + "' has an empty process plan");
      for (const Operation& op : plan.operations)
        if (op.op_type.value >= nq)
          throw InvalidReferenceError("job '" + job.name + "' uses unknown operation type " +
                                      std::to_string(op.op_type.value));
    }
  }

  if (d.distances.size() != nj) throw InvariantError("distance matrix must have one row per job");
  for (std::size_t a = 0; a < nj; ++a) {
    if (d.distances[a].size() != nj) throw InvariantError("distance matrix must be square");
    if (d.distances[a][a] != 0) throw InvariantError("distance matrix diagonal must be zero");
    for (std::size_t b = 0; b < nj; ++b) {
      if (d.distances[a][b] < 0) throw InvariantError("distances must be non-negative");
      for (const Machine& m : d.machines)
        if (travel_numerator(d, m, JobId(a), JobId(b)) % m.locomotion_divisor != 0)
          throw InvariantError("travel time of '" + m.name + "' from '" + d.jobs[a].name + "' to '" +
                               d.jobs[b].name + "' is not a whole number of ticks");
    }
  }

  preds_.assign(nj, {});
  succs_.assign(nj, {});
  std::set<PrecedenceArc> seen;
  for (const PrecedenceArc& arc : d.dag) {
    if (arc.from.value >= nj || arc.to.value >= nj) throw InvalidReferenceError("precedence arc references unknown job");
    if (arc.from == arc.to) throw InvariantError("precedence self-loop on '" + d.jobs[arc.from.value].name + "'");
    if (!seen.insert(arc).second)
      throw InvariantError("duplicate precedence arc " + d.jobs[arc.from.value].name + " -> " +
                           d.jobs[arc.to.value].name);
    preds_[arc.to.value].push_back(arc.from);
    succs_[arc.from.value].push_back(arc.to);
  }

  std::vector<std::size_t> indegree(nj);
  for (std::size_t j = 0; j < nj; ++j) indegree[j] = preds_[j].size();
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t j = 0; j < nj; ++j)
    if (indegree[j] == 0) ready.push(j);
  while (!ready.empty()) {
    std::size_t v = ready.top();
    ready.pop();
    topo_.push_back(JobId(v));
    for (JobId w : succs_[v])
      if (--indegree[w.value] == 0) ready.push(w.value);
  }
  if (topo_.size() != nj) throw InvariantError("precedence arcs contain a cycle: " + describe_cycle(d, succs_));

  std::set<std::pair<std::size_t, std::size_t>> held;
  for (const HoldingArc& h : d.holding) {
    if (h.from_job.value >= nj || h.to_job.value >= nj) throw InvalidReferenceError("holding arc references unknown job");
    const std::string label = d.jobs[h.from_job.value].name + " -> " + d.jobs[h.to_job.value].name;
    if (!seen.count(PrecedenceArc{h.from_job, h.to_job}))
      throw InvariantError("holding arc " + label + " is not a precedence arc");
    if (!held.insert({h.from_job.value, h.to_job.value}).second) throw InvariantError("duplicate holding arc " + label);
    for (const auto& [from_op, to_op] : h.op_links) {
      for (const ProcessPlan& p : d.jobs[h.from_job.value].plans)
        if (from_op >= p.operations.size())
          throw InvalidReferenceError("holding arc " + label + " links a missing jig operation");
      for (const ProcessPlan& p : d.jobs[h.to_job.value].plans)
        if (to_op >= p.operations.size())
          throw InvalidReferenceError("holding arc " + label + " links a missing affix operation");
    }
  }

  const std::int64_t minimum = horizon_ticks(d);
  if (d.horizon && d.horizon->count() < minimum)
    throw InvariantError("horizon L is below the safe bound of " + std::to_string(minimum) + " ticks");
  horizon_ = d.horizon.value_or(TimeTicks(minimum));
}

std::optional<JobId> Instance::find_job(const std::string& name) const {
  for (std::size_t j = 0; j < data_.jobs.size(); ++j)
    if (data_.jobs[j].name == name) return JobId(j);
  return std::nullopt;
}

std::optional<MachineId> Instance::find_machine(const std::string& name) const {
  for (std::size_t m = 0; m < data_.machines.size(); ++m)
    if (data_.machines[m].name == name) return MachineId(m);
  return std::nullopt;
}

TimeTicks op_duration(const Instance& instance, const Machine& machine, OperationTypeId op_type) {
  const InstanceData& d = instance.data();
  if (op_type.value >= d.operation_types.size()) throw InvalidReferenceError("unknown operation type");
  if (machine.robot_type.value >= d.robot_types.size()) throw InvalidReferenceError("unknown robot type");
  return TimeTicks(duration_ticks(d, machine, op_type));
}

TimeTicks op_duration(const Instance& instance, MachineId machine, OperationTypeId op_type) {
  if (machine.value >= instance.num_machines()) throw InvalidReferenceError("unknown machine");
  return op_duration(instance, instance.machine(machine), op_type);
}

TimeTicks travel_time(const Instance& instance, const Machine& machine, JobId from, JobId to) {
  const InstanceData& d = instance.data();
  if (from.value >= d.jobs.size() || to.value >= d.jobs.size()) throw InvalidReferenceError("unknown job");
  if (machine.robot_type.value >= d.robot_types.size()) throw InvalidReferenceError("unknown robot type");
  return TimeTicks(travel_numerator(d, machine, from, to) / machine.locomotion_divisor);
}

TimeTicks travel_time(const Instance& instance, MachineId machine, JobId from, JobId to) {
  if (machine.value >= instance.num_machines()) throw InvalidReferenceError("unknown machine");
  return travel_time(instance, instance.machine(machine), from, to);
}

TimeTicks horizon_L(const Instance& instance) { return TimeTicks(horizon_ticks(instance.data())); }

}  // namespace fjsp
