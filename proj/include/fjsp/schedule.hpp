#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fjsp/instance.hpp"
#include "fjsp/time.hpp"

namespace fjsp {

/// Plan choice for one job and the machine serving each operation of it.
struct JobAssignment {
  std::optional<std::size_t> plan;
  std::vector<std::optional<MachineId>> op_machines;

  friend bool operator==(const JobAssignment&, const JobAssignment&) = default;
};

struct ScheduledJob {
  JobAssignment assignment;
  TimeTicks start;
  TimeTicks completion;
  std::vector<TimeTicks> op_completion;  // one per operation of the chosen plan

  friend bool operator==(const ScheduledJob&, const ScheduledJob&) = default;
};

/// A complete candidate solution. jobs[j] belongs to JobId(j); routes[m] is
/// the visiting order of MachineId(m) and holds exactly the jobs on which
/// that machine performs an operation.
struct Schedule {
  std::vector<ScheduledJob> jobs;
  std::vector<std::vector<JobId>> routes;
  TimeTicks c_max;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

enum class ViolationKind {
  kPlanCount,
  kOpAssignment,
  kPrecedence,
  kHoldingMachine,
  kHoldingNext,
  kRouteStructure,
  kTimingDuration,
  kTimingTravel,
  kMakespan,
};

/// Upper-case name, e.g. "HOLDING_NEXT".
const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidateOptions {
  /// Reject a job whose operations share a machine.
  bool strict_distinct_machines = false;
};

/// Checks every scheduling constraint and returns all violations found (an
/// empty list means feasible). Dangling references throw
/// InvalidReferenceError instead of being reported as violations.
std::vector<Violation> validate(const Instance& instance, const Schedule& schedule,
                                const ValidateOptions& options = {});

/// Latest job completion. Throws EmptyInputError for a schedule without jobs.
TimeTicks makespan(const Schedule& schedule);

}  // namespace fjsp
