#include "fjsp/rl.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "fjsp/errors.hpp"
#include "fjsp/solver.hpp"

namespace fjsp {

void RlParams::check() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgumentError("alpha must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw InvalidArgumentError("gamma must lie in [0, 1)");
  if (!(epsilon_start >= 0.0 && epsilon_start <= 1.0 && epsilon_end >= 0.0 && epsilon_end <= 1.0))
    throw InvalidArgumentError("epsilon values must lie in [0, 1]");
  if (!(epsilon_decay_fraction >= 0.0 && epsilon_decay_fraction <= 1.0))
    throw InvalidArgumentError("epsilon_decay_fraction must lie in [0, 1]");
  if (!(step_penalty < 0.0) || !(violation_penalty < 0.0)) throw InvalidArgumentError("penalties must be negative");
}

std::vector<RlStateInfo> enumerate_states(const Instance& instance) {
  const std::size_t nm = instance.num_machines();
  for (const Job& job : instance.jobs())
    if (job.plans.front().operations.size() > nm)
      throw InvariantError("job '" + job.name + "' has more operations than there are machines");
  std::vector<RlStateInfo> states;
  for (std::size_t j = 0; j < instance.num_jobs(); ++j) {
    std::vector<MachineId> perm;
    for (std::size_t m = 0; m < nm; ++m) perm.push_back(MachineId(m));
    do {
      states.push_back({JobId(j), perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return states;
}

// ---------------------------------------------------------------------------
// QTable

QTable::QTable(std::size_t states)
    : n_(states), values_(states * states, 0.0), start_values_(states, 0.0), visits_(states * states, 0),
      start_visits_(states, 0) {}

std::size_t QTable::slot(std::size_t s, std::size_t a) const {
  if (a >= n_ || (s != kStartState && s >= n_)) throw InvalidArgumentError("Q-table index out of range");
  return s == kStartState ? a : s * n_ + a;
}

double& QTable::at(std::size_t s, std::size_t a) {
  const std::size_t k = slot(s, a);
  return s == kStartState ? start_values_[k] : values_[k];
}
double QTable::at(std::size_t s, std::size_t a) const {
  const std::size_t k = slot(s, a);
  return s == kStartState ? start_values_[k] : values_[k];
}
std::uint64_t& QTable::visits(std::size_t s, std::size_t a) {
  const std::size_t k = slot(s, a);
  return s == kStartState ? start_visits_[k] : visits_[k];
}
std::uint64_t QTable::visits(std::size_t s, std::size_t a) const {
  const std::size_t k = slot(s, a);
  return s == kStartState ? start_visits_[k] : visits_[k];
}

double QTable::max_value(std::size_t s) const { return at(s, argmax(s)); }

std::size_t QTable::argmax(std::size_t s) const {
  if (n_ == 0) throw InvalidArgumentError("empty Q-table");
  std::size_t best = 0;
  for (std::size_t a = 1; a < n_; ++a)
    if (at(s, a) > at(s, best)) best = a;
  return best;
}

double q_update(QTable& q, std::size_t s, std::size_t a, double reward, std::optional<std::size_t> s_next,
                const RlParams& params) {
  const double future = s_next ? q.max_value(*s_next) : 0.0;
  double& entry = q.at(s, a);
  entry += params.alpha * (reward + params.gamma * future - entry);
  ++q.visits(s, a);
  return entry;
}

// ---------------------------------------------------------------------------
// Environment

RlEnv::RlEnv(const Instance& instance, const RlParams& params)
    : instance_(instance), params_(params), states_(enumerate_states(instance)) {
  for (const RlStateInfo& st : states_) {
    const std::size_t nops = instance.job(st.job).plans.front().operations.size();
    state_machines_.emplace_back(st.machines.begin(), st.machines.begin() + static_cast<std::ptrdiff_t>(nops));
  }
  reset();
}

void RlEnv::reset() {
  completed_.assign(instance_.num_jobs(), 0);
  last_job_.assign(instance_.num_machines(), std::nullopt);
  assigned_.assign(instance_.num_jobs(), {});
  reserved_for_.assign(instance_.num_machines(), std::nullopt);
  history_.clear();
  completed_count_ = 0;
  steps_ = 0;
  state_ = kStartState;
  done_ = instance_.num_jobs() == 0;
}

RlEnv::Step RlEnv::step(std::size_t action) {
  if (action >= states_.size()) throw InvalidArgumentError("action " + std::to_string(action) + " out of range");
  if (done_) throw InvalidArgumentError("step after the episode ended");
  ++steps_;
  history_.push_back(action);
  const JobId job = states_[action].job;
  const std::vector<MachineId>& machines = state_machines_[action];

  auto violate = [&](std::string reason) {
    done_ = true;
    return Step{std::nullopt, params_.violation_penalty, true, true, std::move(reason)};
  };
  const std::string& name = instance_.job(job).name;
  if (completed_[job.value]) return violate("job " + name + " already completed");
  for (JobId p : instance_.predecessors(job))
    if (!completed_[p.value]) return violate("job " + name + " before its predecessor " + instance_.job(p).name);
  for (const HoldingArc& h : instance_.holding()) {
    if (h.to_job != job) continue;
    for (const auto& [from_op, to_op] : h.op_links) {
      const MachineId held = assigned_[h.from_job.value].at(from_op);
      if (machines.at(to_op) != held || last_job_[held.value] != h.from_job)
        return violate("job " + name + " breaks holding continuity with " + instance_.job(h.from_job).name);
    }
  }
  for (MachineId m : machines)
    if (reserved_for_[m.value] && *reserved_for_[m.value] != job)
      return violate("machine " + instance_.machine(m).name + " is holding for " +
                     instance_.job(*reserved_for_[m.value]).name);

  TimeTicks travel{0};
  TimeTicks work{0};
  const auto& ops = instance_.job(job).plans.front().operations;
  for (std::size_t o = 0; o < ops.size(); ++o) {
    const MachineId m = machines[o];
    const Machine& machine = instance_.machine(m);
    work = std::max(work, op_duration(instance_, m, ops[o].op_type));
    if (last_job_[m.value])
      travel = std::max(travel, travel_time(instance_, machine, *last_job_[m.value], job));
    else if (machine.start_location)
      travel = std::max(travel, travel_time(instance_, machine, *machine.start_location, job));
  }
  const std::int64_t elapsed = (travel + work).count();
  const auto units = (elapsed + TimeTicks::kPerUnit - 1) / TimeTicks::kPerUnit;

  completed_[job.value] = 1;
  ++completed_count_;
  assigned_[job.value] = machines;
  for (MachineId m : machines) {
    last_job_[m.value] = job;
    reserved_for_[m.value].reset();
  }
  for (const HoldingArc& h : instance_.holding())
    if (h.from_job == job)
      for (const auto& [from_op, to_op] : h.op_links) reserved_for_[machines.at(from_op).value] = h.to_job;

  state_ = action;
  const std::size_t limit = params_.max_episode_length ? params_.max_episode_length : instance_.num_jobs();
  done_ = completed_count_ == instance_.num_jobs() || steps_ >= limit;
  return Step{action, params_.step_penalty * static_cast<double>(units), done_, false, {}};
}

// ---------------------------------------------------------------------------
// Training and rollout

TrainResult train(const Instance& instance, const RlParams& params) {
  params.check();
  RlEnv env(instance, params);
  const std::size_t n = env.states().size();
  TrainResult result{QTable(n), {}};
  result.curve.reserve(params.episodes);
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, n == 0 ? 0 : n - 1);
  const double decay_episodes = params.epsilon_decay_fraction * static_cast<double>(params.episodes);

  for (std::uint64_t e = 0; e < params.episodes && n > 0; ++e) {
    double epsilon = params.epsilon_end;
    if (static_cast<double>(e) < decay_episodes)
      epsilon = params.epsilon_start +
                (params.epsilon_end - params.epsilon_start) * static_cast<double>(e) / decay_episodes;
    env.reset();
    double total = 0.0;
    while (!env.done()) {
      const std::size_t s = env.state();
      const std::size_t a = coin(rng) < epsilon ? pick(rng) : result.q.argmax(s);
      const RlEnv::Step step = env.step(a);
      total += step.reward;
      q_update(result.q, s, a, step.reward, step.done ? std::nullopt : step.next_state, params);
    }
    result.curve.push_back(total);
  }
  return result;
}

RolloutResult greedy_rollout(const Instance& instance, const QTable& q, const RlParams& params) {
  RlEnv env(instance, params);
  if (q.size() != env.states().size())
    throw InvalidArgumentError("Q-table has " + std::to_string(q.size()) + " states, instance has " +
                               std::to_string(env.states().size()));
  RolloutResult out;
  bool violated = false;
  while (!env.done()) {
    const std::size_t s = env.state();
    const std::size_t a = q.argmax(s);
    const RlEnv::Step step = env.step(a);
    out.trace.steps.push_back({s, a, step.reward});
    out.trace.total_reward += step.reward;
    violated = violated || step.violation;
  }
  if (violated || env.completed_count() != instance.num_jobs()) return out;

  std::vector<JobAssignment> assignment(instance.num_jobs());
  std::vector<std::vector<JobId>> routes(instance.num_machines());
  for (std::size_t a : env.history()) {
    const RlStateInfo& st = env.states()[a];
    const std::size_t nops = instance.job(st.job).plans.front().operations.size();
    JobAssignment& ja = assignment[st.job.value];
    ja.plan = 0;
    for (std::size_t o = 0; o < nops; ++o) {
      ja.op_machines.push_back(st.machines[o]);
      routes[st.machines[o].value].push_back(st.job);
    }
  }
  out.schedule = forward_schedule(instance, assignment, routes);
  out.trace.feasible = out.schedule.has_value();
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

std::string qtable_to_json(const QTable& q, const RlParams& params) {
  nlohmann::ordered_json doc;
  doc["format_version"] = 1;
  doc["states"] = q.size();
  doc["values"] = q.grid();
  doc["start_values"] = q.start_row();
  std::vector<std::uint64_t> visits, start_visits;
  for (std::size_t s = 0; s < q.size(); ++s)
    for (std::size_t a = 0; a < q.size(); ++a) visits.push_back(q.visits(s, a));
  for (std::size_t a = 0; a < q.size(); ++a) start_visits.push_back(q.visits(kStartState, a));
  doc["visits"] = visits;
  doc["start_visits"] = start_visits;
  doc["params"] = {{"alpha", params.alpha},
                   {"gamma", params.gamma},
                   {"epsilon_start", params.epsilon_start},
                   {"epsilon_end", params.epsilon_end},
                   {"epsilon_decay_fraction", params.epsilon_decay_fraction},
                   {"step_penalty", params.step_penalty},
                   {"violation_penalty", params.violation_penalty},
                   {"episodes", params.episodes}};
  doc["seed"] = params.seed;
  return doc.dump() + "\n";
}

QTable qtable_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
    if (doc.at("format_version").get<int>() != 1) throw ParseError("unsupported Q-table format_version");
    const auto n = doc.at("states").get<std::size_t>();
    const auto values = doc.at("values").get<std::vector<double>>();
    const auto start_values = doc.at("start_values").get<std::vector<double>>();
    const auto visits = doc.at("visits").get<std::vector<std::uint64_t>>();
    const auto start_visits = doc.at("start_visits").get<std::vector<std::uint64_t>>();
    if (values.size() != n * n || visits.size() != n * n || start_values.size() != n || start_visits.size() != n)
      throw ParseError("Q-table arrays do not match its dimensions");
    QTable q(n);
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t a = 0; a < n; ++a) {
        q.at(s, a) = values[s * n + a];
        q.visits(s, a) = visits[s * n + a];
      }
    for (std::size_t a = 0; a < n; ++a) {
      q.at(kStartState, a) = start_values[a];
      q.visits(kStartState, a) = start_visits[a];
    }
    return q;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("Q-table: ") + e.what());
  }
}

std::string curve_to_csv(const std::vector<double>& curve) {
  std::ostringstream os;
  os << "episode,total_reward\n";
  for (std::size_t e = 0; e < curve.size(); ++e) os << e << ',' << curve[e] << '\n';
  return os.str();
}

}  // namespace fjsp
