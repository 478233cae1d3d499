#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fjsp/errors.hpp"
#include "fjsp/instance.hpp"
#include "fjsp/rational.hpp"
#include "fjsp/schedule.hpp"

namespace fjsp {

enum class VarKind { kContinuous, kBinary };

struct MipVariable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  /// Optional upper bound (lower bound is always 0).
  std::optional<Rational> upper;
};

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Term {
  Rational coeff;
  std::size_t var = 0;  // index into MipModel::variables
};

struct LinearConstraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::kGreaterEqual;
  Rational rhs;
};

/// Solver-neutral linear model: minimize one variable subject to rows.
class MipModel {
 public:
  /// Declares a variable; throws InvariantError on a duplicate name.
  std::size_t add_variable(std::string name, VarKind kind, std::optional<Rational> upper = std::nullopt);
  /// Terms on the same variable are merged and zero coefficients dropped.
  /// Unknown variable names throw InvalidReferenceError.
  void add_constraint(std::string name, const std::vector<std::pair<Rational, std::string_view>>& terms, Sense sense,
                      Rational rhs);
  void set_objective(std::string_view var);

  [[nodiscard]] const std::vector<MipVariable>& variables() const { return variables_; }
  [[nodiscard]] const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  [[nodiscard]] std::size_t objective() const { return objective_; }
  [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;
  [[nodiscard]] const Rational& big_l() const { return big_l_; }
  void set_big_l(Rational l) { big_l_ = l; }

 private:
  std::vector<MipVariable> variables_;
  std::vector<LinearConstraint> constraints_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::size_t objective_ = 0;
  Rational big_l_;
};

struct MipOptions {
  /// Emit the assignment rows exactly as printed (sum over operations and
  /// machines per plan; sum over plans and operations per machine) instead
  /// of the per-operation forms. For study only: the printed forms admit
  /// only single-operation plans.
  bool printed_assignment_forms = false;
};

/// Builds the makespan MIP of the instance. Times are in time units and
/// big-L is the instance horizon. Throws EmptyInputError for an instance
/// without jobs or machines.
MipModel build_mip(const Instance& instance, const MipOptions& options = {});

/// Writes the model in LP format (Minimize / Subject To / Bounds / Binary /
/// End), one constraint per line, variables in canonical name order.
void export_lp(const MipModel& model, std::ostream& sink);

/// Parsed form of an LP file as written by export_lp. Coefficients are kept
/// as doubles because non-terminating decimals are rounded on export.
struct LpFile {
  struct Row {
    std::string name;
    std::vector<std::pair<double, std::string>> terms;
    Sense sense = Sense::kGreaterEqual;
    double rhs = 0.0;
  };
  std::string objective;
  std::vector<Row> rows;
  std::map<std::string, std::pair<double, std::optional<double>>> bounds;
  std::vector<std::string> binaries;
};

/// Minimal reader for the export_lp dialect. Throws ParseError with a line number.
LpFile parse_lp(std::string_view text);

/// Variable values induced by a schedule, aligned with model.variables().
std::vector<Rational> induced_values(const MipModel& model, const Schedule& schedule);

/// Substitutes the schedule's induced values into every row, every bound
/// and every binary domain; returns the names of those that fail. Binary
/// domain failures are reported as "binary:<var>", bound failures as
/// "bound:<var>".
std::vector<std::string> check_solution_against_model(const MipModel& model, const Schedule& schedule);

/// "name value" lines for every variable, values exact where terminating.
std::string export_solution(const MipModel& model, const Schedule& schedule);

/// Thrown by import_solution for a value that is neither (near) binary nor
/// within 1e-6 time units of a tick.
class MalformedSolutionError : public Error {
 public:
  using Error::Error;
};

/// Thrown by import_solution when the reconstructed schedule is infeasible.
class InfeasibleSolutionError : public Error {
 public:
  InfeasibleSolutionError(std::string what, std::vector<Violation> violations)
      : Error(std::move(what)), violations_(std::move(violations)) {}
  [[nodiscard]] const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Reads "name value" lines ('#' comments allowed) and rebuilds a feasible
/// schedule. Unknown names raise ParseError.
Schedule import_solution(const MipModel& model, const Instance& instance, std::string_view solution_text);

}  // namespace fjsp
