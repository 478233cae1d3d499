#include "fjsp/schedule.hpp"

#include <algorithm>
#include <sstream>

#include "fjsp/errors.hpp"

namespace fjsp {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kPlanCount: return "PLAN_COUNT";
    case ViolationKind::kOpAssignment: return "OP_ASSIGNMENT";
    case ViolationKind::kPrecedence: return "PRECEDENCE";
    case ViolationKind::kHoldingMachine: return "HOLDING_MACHINE";
    case ViolationKind::kHoldingNext: return "HOLDING_NEXT";
    case ViolationKind::kRouteStructure: return "ROUTE_STRUCTURE";
    case ViolationKind::kTimingDuration: return "TIMING_DURATION";
    case ViolationKind::kTimingTravel: return "TIMING_TRAVEL";
    case ViolationKind::kMakespan: return "MAKESPAN";
  }
  return "UNKNOWN";
}

namespace {

class Checker {
 public:
  Checker(const Instance& instance, const Schedule& schedule, const ValidateOptions& options)
      : in_(instance), s_(schedule), opt_(options) {}

  std::vector<Violation> run() {
    check_references();
    check_assignment();
    check_precedence();
    check_durations();
    check_routes();
    check_holding();
    check_makespan();
    return std::move(out_);
  }

 private:
  const std::string& job_name(JobId j) const { return in_.job(j).name; }
  const std::string& machine_name(MachineId m) const { return in_.machine(m).name; }

  template <typename... Parts>
  void report(ViolationKind kind, const Parts&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    out_.push_back({kind, os.str()});
  }

  static std::string t(TimeTicks ticks) { return std::to_string(ticks.count()); }

  void check_references() const {
    if (s_.jobs.size() != in_.num_jobs())
      throw InvalidReferenceError("schedule has " + std::to_string(s_.jobs.size()) + " jobs, instance has " +
                                  std::to_string(in_.num_jobs()));
    if (s_.routes.size() != in_.num_machines())
      throw InvalidReferenceError("schedule has " + std::to_string(s_.routes.size()) + " routes, instance has " +
                                  std::to_string(in_.num_machines()) + " machines");
    for (std::size_t j = 0; j < s_.jobs.size(); ++j) {
      const ScheduledJob& sj = s_.jobs[j];
      const Job& job = in_.job(JobId(j));
      if (!sj.assignment.plan) continue;
      if (*sj.assignment.plan >= job.plans.size())
        throw InvalidReferenceError("job '" + job.name + "' chooses unknown plan " +
                                    std::to_string(*sj.assignment.plan));
      const std::size_t nops = job.plans[*sj.assignment.plan].operations.size();
      if (sj.assignment.op_machines.size() > nops)
        throw InvalidReferenceError("job '" + job.name + "' assigns machines to operations beyond its plan");
      if (sj.op_completion.size() != nops)
        throw InvalidReferenceError("job '" + job.name + "' needs one operation completion per operation");
      for (const auto& m : sj.assignment.op_machines)
        if (m && m->value >= in_.num_machines())
          throw InvalidReferenceError("job '" + job.name + "' uses unknown machine " + std::to_string(m->value));
    }
    for (const auto& route : s_.routes)
      for (JobId j : route)
        if (j.value >= in_.num_jobs()) throw InvalidReferenceError("route visits unknown job " + std::to_string(j.value));
  }

  /// Machine of operation `op` of job j, if the plan exists and op is assigned.
  std::optional<MachineId> machine_of(JobId j, std::size_t op) const {
    const JobAssignment& a = s_.jobs[j.value].assignment;
    if (!a.plan || op >= a.op_machines.size()) return std::nullopt;
    return a.op_machines[op];
  }

  bool works_on(MachineId m, JobId j) const {
    const JobAssignment& a = s_.jobs[j.value].assignment;
    if (!a.plan) return false;
    return std::any_of(a.op_machines.begin(), a.op_machines.end(), [&](const auto& x) { return x == m; });
  }

  void check_assignment() {
    for (std::size_t j = 0; j < s_.jobs.size(); ++j) {
      const JobAssignment& a = s_.jobs[j].assignment;
      const JobId id(j);
      if (!a.plan) {
        report(ViolationKind::kPlanCount, "job ", job_name(id), " has no process plan chosen");
        continue;
      }
      const std::size_t nops = in_.job(id).plans[*a.plan].operations.size();
      for (std::size_t o = 0; o < nops; ++o)
        if (o >= a.op_machines.size() || !a.op_machines[o])
          report(ViolationKind::kOpAssignment, "job ", job_name(id), " operation ", o, " has no machine");
      if (opt_.strict_distinct_machines) {
        for (std::size_t o = 0; o < a.op_machines.size(); ++o)
          for (std::size_t k = o + 1; k < a.op_machines.size(); ++k)
            if (a.op_machines[o] && a.op_machines[o] == a.op_machines[k])
              report(ViolationKind::kOpAssignment, "job ", job_name(id), " operations ", o, " and ", k,
                     " share machine ", machine_name(*a.op_machines[o]));
      }
    }
  }

  void check_precedence() {
    for (const PrecedenceArc& arc : in_.dag()) {
      const TimeTicks before = s_.jobs[arc.from.value].completion;
      const TimeTicks start = s_.jobs[arc.to.value].start;
      if (start < before)
        report(ViolationKind::kPrecedence, "job ", job_name(arc.to), " starts at ", t(start), " before ",
               job_name(arc.from), " completes at ", t(before));
    }
  }

  void check_durations() {
    for (std::size_t j = 0; j < s_.jobs.size(); ++j) {
      const ScheduledJob& sj = s_.jobs[j];
      const JobId id(j);
      if (!sj.assignment.plan) continue;
      const ProcessPlan& plan = in_.job(id).plans[*sj.assignment.plan];
      for (std::size_t o = 0; o < plan.operations.size(); ++o) {
        const TimeTicks done = sj.op_completion[o];
        if (auto m = machine_of(id, o)) {
          const TimeTicks need = sj.start + op_duration(in_, *m, plan.operations[o].op_type);
          if (done < need)
            report(ViolationKind::kTimingDuration, "job ", job_name(id), " operation ", o, " on ", machine_name(*m),
                   " completes at ", t(done), ", needs ", t(need));
        }
        if (sj.completion < done)
          report(ViolationKind::kTimingDuration, "job ", job_name(id), " completes at ", t(sj.completion),
                 " before its operation ", o, " at ", t(done));
      }
    }
  }

  void check_routes() {
    for (std::size_t mi = 0; mi < s_.routes.size(); ++mi) {
      const MachineId m(mi);
      const Machine& machine = in_.machine(m);
      const auto& route = s_.routes[mi];
      std::vector<int> visits(in_.num_jobs(), 0);
      for (JobId j : route) ++visits[j.value];
      for (std::size_t j = 0; j < visits.size(); ++j) {
        const bool works = works_on(m, JobId(j));
        if (visits[j] > 1)
          report(ViolationKind::kRouteStructure, "machine ", machine.name, " visits job ", job_name(JobId(j)), " ",
                 visits[j], " times");
        if (works && visits[j] == 0)
          report(ViolationKind::kRouteStructure, "machine ", machine.name, " works on job ", job_name(JobId(j)),
                 " but its route skips it");
        if (!works && visits[j] > 0)
          report(ViolationKind::kRouteStructure, "machine ", machine.name, " visits job ", job_name(JobId(j)),
                 " without an operation there");
      }
      if (!route.empty() && machine.start_location) {
        const TimeTicks need = travel_time(in_, machine, *machine.start_location, route.front());
        const TimeTicks start = s_.jobs[route.front().value].start;
        if (start < need)
          report(ViolationKind::kTimingTravel, "machine ", machine.name, " cannot reach ", job_name(route.front()),
                 " from its start location before ", t(need), " (job starts at ", t(start), ")");
      }
      for (std::size_t k = 0; k + 1 < route.size(); ++k) {
        const JobId from = route[k];
        const JobId to = route[k + 1];
        const TimeTicks arrive = s_.jobs[from.value].completion + travel_time(in_, machine, from, to);
        const TimeTicks start = s_.jobs[to.value].start;
        if (start < arrive)
          report(ViolationKind::kTimingTravel, "machine ", machine.name, " reaches ", job_name(to), " from ",
                 job_name(from), " at ", t(arrive), " but the job starts at ", t(start));
      }
    }
  }

  void check_holding() {
    for (const HoldingArc& h : in_.holding()) {
      for (const auto& [from_op, to_op] : h.op_links) {
        const auto m_from = machine_of(h.from_job, from_op);
        const auto m_to = machine_of(h.to_job, to_op);
        if (m_from != m_to) {
          auto label = [&](const std::optional<MachineId>& m) { return m ? machine_name(*m) : std::string("none"); };
          report(ViolationKind::kHoldingMachine, "holding ", job_name(h.from_job), "[", from_op, "] on ",
                 label(m_from), " but ", job_name(h.to_job), "[", to_op, "] on ", label(m_to));
        }
        if (!m_from) continue;
        const auto& route = s_.routes[m_from->value];
        bool direct = false;
        for (std::size_t k = 0; k + 1 < route.size(); ++k)
          if (route[k] == h.from_job && route[k + 1] == h.to_job) direct = true;
        if (!direct)
          report(ViolationKind::kHoldingNext, "machine ", machine_name(*m_from), " must move from ",
                 job_name(h.from_job), " directly to ", job_name(h.to_job));
      }
    }
  }

  void check_makespan() {
    TimeTicks latest{0};
    for (const ScheduledJob& sj : s_.jobs) latest = std::max(latest, sj.completion);
    if (s_.c_max != latest)
      report(ViolationKind::kMakespan, "c_max is ", t(s_.c_max), " but the latest completion is ", t(latest));
    if (s_.c_max > in_.horizon())
      report(ViolationKind::kMakespan, "c_max ", t(s_.c_max), " exceeds the horizon ", t(in_.horizon()));
  }

  const Instance& in_;
  const Schedule& s_;
  const ValidateOptions& opt_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate(const Instance& instance, const Schedule& schedule, const ValidateOptions& options) {
  return Checker(instance, schedule, options).run();
}

TimeTicks makespan(const Schedule& schedule) {
  if (schedule.jobs.empty()) throw EmptyInputError("makespan of an empty schedule");
  TimeTicks latest{0};
  for (const ScheduledJob& sj : schedule.jobs) latest = std::max(latest, sj.completion);
  return latest;
}

}  // namespace fjsp
