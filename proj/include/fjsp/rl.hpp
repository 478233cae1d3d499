#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fjsp/instance.hpp"
#include "fjsp/schedule.hpp"

namespace fjsp {

struct RlParams {
  double alpha = 0.5;
  double gamma = 0.4;
  /// Exploration rate decays linearly from epsilon_start to epsilon_end over
  /// the first epsilon_decay_fraction of the episodes, then stays there.
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double epsilon_decay_fraction = 0.8;
  double step_penalty = -1.0;  // per whole time unit
  double violation_penalty = -1e4;
  /// 0 means one step per job.
  std::size_t max_episode_length = 0;
  std::uint64_t episodes = 0;
  std::uint64_t seed = 0;

  /// Throws InvalidArgumentError for values outside their ranges.
  void check() const;
};

/// One job together with a machine ordering; operation i of the job's first
/// plan is served by machines[i].
struct RlStateInfo {
  JobId job;
  std::vector<MachineId> machines;
};

/// Jobs (by id) times all machine permutations (lexicographic).
/// Throws InvariantError when a job's plan has more operations than there
/// are machines.
std::vector<RlStateInfo> enumerate_states(const Instance& instance);

/// Row index of the episode start, before any job was chosen.
inline constexpr std::size_t kStartState = std::numeric_limits<std::size_t>::max();

/// Action-value table: values[s][a] estimates choosing state a after s. The
/// start state has its own row.
class QTable {
 public:
  explicit QTable(std::size_t states = 0);

  [[nodiscard]] std::size_t size() const { return n_; }
  double& at(std::size_t s, std::size_t a);
  [[nodiscard]] double at(std::size_t s, std::size_t a) const;
  std::uint64_t& visits(std::size_t s, std::size_t a);
  [[nodiscard]] std::uint64_t visits(std::size_t s, std::size_t a) const;
  /// Largest value in row s.
  [[nodiscard]] double max_value(std::size_t s) const;
  /// Index of the largest value in row s, lowest index on ties.
  [[nodiscard]] std::size_t argmax(std::size_t s) const;

  /// Row-major n x n grid (the start row is kept apart).
  [[nodiscard]] const std::vector<double>& grid() const { return values_; }
  [[nodiscard]] const std::vector<double>& start_row() const { return start_values_; }

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  [[nodiscard]] std::size_t slot(std::size_t s, std::size_t a) const;

  std::size_t n_ = 0;
  std::vector<double> values_;
  std::vector<double> start_values_;
  std::vector<std::uint64_t> visits_;
  std::vector<std::uint64_t> start_visits_;
};

/// Q[s][a] += alpha * (r + gamma * max Q[s_next] - Q[s][a]); a terminal
/// s_next (nullopt) contributes 0. Returns the new value.
double q_update(QTable& q, std::size_t s, std::size_t a, double reward, std::optional<std::size_t> s_next,
                const RlParams& params);

/// Sequential environment: each step executes one whole job.
class RlEnv {
 public:
  struct Step {
    std::optional<std::size_t> next_state;  // nullopt after a violation
    double reward = 0.0;
    bool done = false;
    bool violation = false;
    std::string reason;  // set for violations
  };

  RlEnv(const Instance& instance, const RlParams& params);

  void reset();
  /// Throws InvalidArgumentError for an action outside the state list or a
  /// step after the episode ended.
  Step step(std::size_t action);

  [[nodiscard]] const std::vector<RlStateInfo>& states() const { return states_; }
  [[nodiscard]] std::size_t state() const { return state_; }
  [[nodiscard]] bool done() const { return done_; }
  [[nodiscard]] std::size_t completed_count() const { return completed_count_; }
  /// Chosen actions of the episode so far, in order.
  [[nodiscard]] const std::vector<std::size_t>& history() const { return history_; }

 private:
  const Instance& instance_;
  RlParams params_;
  std::vector<RlStateInfo> states_;
  std::vector<char> completed_;
  std::vector<std::optional<JobId>> last_job_;
  std::vector<std::vector<MachineId>> state_machines_;  // machines serving each state's operations
  std::vector<std::vector<MachineId>> assigned_;       // per completed job
  std::vector<std::optional<JobId>> reserved_for_;     // holding machine waiting for its affix job
  std::vector<std::size_t> history_;
  std::size_t completed_count_ = 0;
  std::size_t steps_ = 0;
  std::size_t state_ = kStartState;
  bool done_ = false;
};

struct EpisodeTrace {
  struct Entry {
    std::size_t state;
    std::size_t action;
    double reward;
  };
  std::vector<Entry> steps;
  double total_reward = 0.0;
  bool feasible = false;
};

struct TrainResult {
  QTable q;
  std::vector<double> curve;  // total reward per episode
};

TrainResult train(const Instance& instance, const RlParams& params);

struct RolloutResult {
  std::optional<Schedule> schedule;  // nullopt on failure
  EpisodeTrace trace;
};

/// Follows argmax actions from the start state and schedules the visited
/// jobs with forward_schedule.
RolloutResult greedy_rollout(const Instance& instance, const QTable& q, const RlParams& params = {});

/// JSON with dimensions, row-major values, the start row, visit counts,
/// params and seed.
std::string qtable_to_json(const QTable& q, const RlParams& params);
QTable qtable_from_json(std::string_view text);

/// "episode,total_reward" lines after a header.
std::string curve_to_csv(const std::vector<double>& curve);

}  // namespace fjsp
