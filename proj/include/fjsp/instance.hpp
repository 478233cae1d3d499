#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fjsp/time.hpp"

namespace fjsp {

/// Index newtype; the tag keeps job, machine and type indices apart.
template <typename Tag>
struct Id {
  std::size_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::size_t v) : value(v) {}
  friend constexpr auto operator<=>(Id, Id) = default;
};

using JobId = Id<struct JobTag>;
using MachineId = Id<struct MachineTag>;
using OperationTypeId = Id<struct OperationTypeTag>;
using RobotTypeId = Id<struct RobotTypeTag>;

/// |R| x |Q| grid of time units; rows are robot types.
using EfficiencyMatrix = std::vector<std::vector<int>>;

/// |J| x |J| grid of spatial distance units, read as d[from][to].
using DistanceMatrix = std::vector<std::vector<int>>;

struct Machine {
  std::string name;
  RobotTypeId robot_type;
  int locomotion_divisor = 30;
  std::optional<JobId> start_location;  // absent = free start

  friend bool operator==(const Machine&, const Machine&) = default;
};

struct Operation {
  OperationTypeId op_type;
  friend bool operator==(const Operation&, const Operation&) = default;
};

struct ProcessPlan {
  std::vector<Operation> operations;
  friend bool operator==(const ProcessPlan&, const ProcessPlan&) = default;
};

struct Job {
  std::string name;
  std::vector<ProcessPlan> plans;
  friend bool operator==(const Job&, const Job&) = default;
};

struct PrecedenceArc {
  JobId from;
  JobId to;
  friend auto operator<=>(const PrecedenceArc&, const PrecedenceArc&) = default;
};

/// Operation index in the jig job's plan paired with the index in the affix
/// job's plan; both operations must run on the same machine.
using OpLink = std::pair<std::size_t, std::size_t>;

struct HoldingArc {
  JobId from_job;
  JobId to_job;
  std::vector<OpLink> op_links;
  friend bool operator==(const HoldingArc&, const HoldingArc&) = default;
};

/// Plain description of an instance. Instance validates it on construction.
struct InstanceData {
  std::vector<std::string> operation_types;
  std::vector<std::string> robot_types;
  EfficiencyMatrix efficiency;
  OperationTypeId locomotion_type;
  std::vector<Machine> machines;
  std::vector<Job> jobs;
  std::vector<PrecedenceArc> dag;
  std::vector<HoldingArc> holding;
  DistanceMatrix distances;
  std::optional<TimeTicks> horizon;  // absent = horizon_L of the instance

  friend bool operator==(const InstanceData&, const InstanceData&) = default;
};

/// Immutable, validated flexible job-shop instance.
class Instance {
 public:
  /// Throws InvariantError (or InvalidReferenceError for dangling ids) when
  /// the data is inconsistent, including cyclic precedence arcs.
  explicit Instance(InstanceData data);

  [[nodiscard]] const InstanceData& data() const { return data_; }
  [[nodiscard]] std::size_t num_jobs() const { return data_.jobs.size(); }
  [[nodiscard]] std::size_t num_machines() const { return data_.machines.size(); }
  [[nodiscard]] const Job& job(JobId j) const { return data_.jobs.at(j.value); }
  [[nodiscard]] const Machine& machine(MachineId m) const { return data_.machines.at(m.value); }
  [[nodiscard]] const std::vector<Job>& jobs() const { return data_.jobs; }
  [[nodiscard]] const std::vector<Machine>& machines() const { return data_.machines; }
  [[nodiscard]] const std::vector<PrecedenceArc>& dag() const { return data_.dag; }
  [[nodiscard]] const std::vector<HoldingArc>& holding() const { return data_.holding; }
  [[nodiscard]] const DistanceMatrix& distances() const { return data_.distances; }

  [[nodiscard]] const std::vector<JobId>& predecessors(JobId j) const { return preds_.at(j.value); }
  [[nodiscard]] const std::vector<JobId>& successors(JobId j) const { return succs_.at(j.value); }
  /// Kahn order, smallest ready id first.
  [[nodiscard]] const std::vector<JobId>& topological_order() const { return topo_; }

  /// Effective big-L: the explicit horizon if given, else horizon_L.
  [[nodiscard]] TimeTicks horizon() const { return horizon_; }

  [[nodiscard]] std::optional<JobId> find_job(const std::string& name) const;
  [[nodiscard]] std::optional<MachineId> find_machine(const std::string& name) const;

  friend bool operator==(const Instance& a, const Instance& b) { return a.data_ == b.data_; }

 private:
  InstanceData data_;
  std::vector<std::vector<JobId>> preds_;
  std::vector<std::vector<JobId>> succs_;
  std::vector<JobId> topo_;
  TimeTicks horizon_;
};

/// E[robot_type][op_type] time units, in ticks.
TimeTicks op_duration(const Instance& instance, const Machine& machine, OperationTypeId op_type);
TimeTicks op_duration(const Instance& instance, MachineId machine, OperationTypeId op_type);

/// d[from][to] * E[robot_type][locomote] / divisor time units, exact in ticks.
TimeTicks travel_time(const Instance& instance, const Machine& machine, JobId from, JobId to);
TimeTicks travel_time(const Instance& instance, MachineId machine, JobId from, JobId to);

/// Sum over jobs of their longest possible operation plus |J| times the
/// longest possible travel. Never below an optimal makespan.
TimeTicks horizon_L(const Instance& instance);

}  // namespace fjsp
