#include "fjsp/mip.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "fjsp/errors.hpp"

namespace fjsp {

// ---------------------------------------------------------------------------
// MipModel

std::size_t MipModel::add_variable(std::string name, VarKind kind, std::optional<Rational> upper) {
  if (index_.count(name)) throw InvariantError("duplicate variable '" + name + "'");
  const std::size_t id = variables_.size();
  index_.emplace(name, id);
  variables_.push_back({std::move(name), kind, upper});
  return id;
}

void MipModel::add_constraint(std::string name, const std::vector<std::pair<Rational, std::string_view>>& terms,
                              Sense sense, Rational rhs) {
  LinearConstraint row{std::move(name), {}, sense, rhs};
  std::map<std::size_t, Rational> merged;
  for (const auto& [coeff, var] : terms) {
    auto id = find(var);
    if (!id) throw InvalidReferenceError("constraint '" + row.name + "' uses undeclared variable '" + std::string(var) + "'");
    merged[*id] += coeff;
  }
  for (const auto& [id, coeff] : merged)
    if (coeff != Rational(0)) row.terms.push_back({coeff, id});
  std::sort(row.terms.begin(), row.terms.end(),
            [&](const Term& a, const Term& b) { return variables_[a.var].name < variables_[b.var].name; });
  constraints_.push_back(std::move(row));
}

void MipModel::set_objective(std::string_view var) {
  auto id = find(var);
  if (!id) throw InvalidReferenceError("objective variable '" + std::string(var) + "' is not declared");
  objective_ = *id;
}

std::optional<std::size_t> MipModel::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// build_mip

namespace {

template <typename... Idx>
std::string vname(const char* prefix, Idx... idx) {
  std::string out = prefix;
  out.push_back('_');
  bool first = true;
  ((out += (first ? "" : "."), out += std::to_string(idx), first = false), ...);
  return out;
}

using Terms = std::vector<std::pair<Rational, std::string_view>>;

}  // namespace

MipModel build_mip(const Instance& instance, const MipOptions& options) {
  const std::size_t nj = instance.num_jobs();
  const std::size_t nm = instance.num_machines();
  if (nj == 0 || nm == 0) throw EmptyInputError("cannot build a model without jobs and machines");

  MipModel model;
  const Rational big_l = Rational::from_ticks(instance.horizon());
  model.set_big_l(big_l);
  const auto& jobs = instance.jobs();

  // Names are materialized first so constraint terms can hold string_views.
  std::vector<std::string> s(nj), c(nj);
  for (std::size_t j = 0; j < nj; ++j) {
    s[j] = vname("s", j);
    c[j] = vname("c", j);
  }
  const std::string cmax = "cmax";

  for (std::size_t j = 0; j < nj; ++j) {
    model.add_variable(s[j], VarKind::kContinuous);
    model.add_variable(c[j], VarKind::kContinuous);
  }
  model.add_variable(cmax, VarKind::kContinuous, big_l);
  for (std::size_t j = 0; j < nj; ++j)
    for (std::size_t p = 0; p < jobs[j].plans.size(); ++p)
      for (std::size_t o = 0; o < jobs[j].plans[p].operations.size(); ++o)
        model.add_variable(vname("co", j, p, o), VarKind::kContinuous);
  for (std::size_t j = 0; j < nj; ++j)
    for (std::size_t m = 0; m < nm; ++m) model.add_variable(vname("cm", j, m), VarKind::kContinuous);

  for (std::size_t j = 0; j < nj; ++j)
    for (std::size_t p = 0; p < jobs[j].plans.size(); ++p) model.add_variable(vname("xp", j, p), VarKind::kBinary);
  for (std::size_t j = 0; j < nj; ++j)
    for (std::size_t m = 0; m < nm; ++m) {
      model.add_variable(vname("xm", j, m), VarKind::kBinary);
      model.add_variable(vname("xs", j, m), VarKind::kBinary);
      model.add_variable(vname("xe", j, m), VarKind::kBinary);
    }
  for (std::size_t a = 0; a < nj; ++a)
    for (std::size_t b = 0; b < nj; ++b)
      if (a != b)
        for (std::size_t m = 0; m < nm; ++m) model.add_variable(vname("xr", a, b, m), VarKind::kBinary);
  for (std::size_t j = 0; j < nj; ++j)
    for (std::size_t p = 0; p < jobs[j].plans.size(); ++p)
      for (std::size_t o = 0; o < jobs[j].plans[p].operations.size(); ++o)
        for (std::size_t m = 0; m < nm; ++m) model.add_variable(vname("xo", j, p, o, m), VarKind::kBinary);

  model.set_objective(cmax);

  const Rational one(1);
  const Rational minus(-1);

  // Completion: makespan bounds every job, jobs bound their operations.
  for (std::size_t j = 0; j < nj; ++j) model.add_constraint(vname("makespan", j), {{one, cmax}, {minus, c[j]}}, Sense::kGreaterEqual, 0);
  for (std::size_t j = 0; j < nj; ++j)
    for (std::size_t p = 0; p < jobs[j].plans.size(); ++p)
      for (std::size_t o = 0; o < jobs[j].plans[p].operations.size(); ++o) {
        const std::string co = vname("co", j, p, o);
        model.add_constraint(vname("jobop", j, p, o), {{one, c[j]}, {minus, co}}, Sense::kGreaterEqual, 0);
      }

  for (const PrecedenceArc& arc : instance.dag())
    model.add_constraint(vname("prec", arc.from.value, arc.to.value), {{one, s[arc.to.value]}, {minus, c[arc.from.value]}},
                         Sense::kGreaterEqual, 0);

  // Travel with big-L: moving from a to b forces s_b >= c_a + S.
  for (std::size_t a = 0; a < nj; ++a)
    for (std::size_t b = 0; b < nj; ++b) {
      if (a == b) continue;
      for (std::size_t m = 0; m < nm; ++m) {
        const Rational setup = Rational::from_ticks(travel_time(instance, MachineId(m), JobId(a), JobId(b)));
        const std::string xr = vname("xr", a, b, m);
        model.add_constraint(vname("travel", a, b, m), {{one, s[b]}, {minus, c[a]}, {-(setup + big_l), xr}},
                             Sense::kGreaterEqual, -big_l);
      }
    }

  // Operation durations bound both the job and the operation completion.
  for (std::size_t j = 0; j < nj; ++j)
    for (std::size_t p = 0; p < jobs[j].plans.size(); ++p)
      for (std::size_t o = 0; o < jobs[j].plans[p].operations.size(); ++o) {
        const std::string co = vname("co", j, p, o);
        for (std::size_t m = 0; m < nm; ++m) {
          const Rational dur =
              Rational::from_ticks(op_duration(instance, MachineId(m), jobs[j].plans[p].operations[o].op_type));
          const std::string xo = vname("xo", j, p, o, m);
          model.add_constraint(vname("opdur", j, p, o, m), {{one, c[j]}, {minus, s[j]}, {-dur, xo}},
                               Sense::kGreaterEqual, 0);
          model.add_constraint(vname("opdone", j, p, o, m), {{one, co}, {minus, s[j]}, {-dur, xo}},
                               Sense::kGreaterEqual, 0);
        }
      }

  // Assignment.
  for (std::size_t j = 0; j < nj; ++j) {
    std::vector<std::string> xp;
    for (std::size_t p = 0; p < jobs[j].plans.size(); ++p) xp.push_back(vname("xp", j, p));
    Terms terms;
    for (const auto& v : xp) terms.emplace_back(one, v);
    model.add_constraint(vname("oneplan", j), terms, Sense::kEqual, 1);
  }
  for (std::size_t j = 0; j < nj; ++j)
    for (std::size_t p = 0; p < jobs[j].plans.size(); ++p) {
      const std::string xp = vname("xp", j, p);
      for (std::size_t o = 0; o < jobs[j].plans[p].operations.size(); ++o)
        for (std::size_t m = 0; m < nm; ++m) {
          const std::string xo = vname("xo", j, p, o, m);
          model.add_constraint(vname("planop", j, p, o, m), {{one, xo}, {minus, xp}}, Sense::kLessEqual, 0);
        }
    }
  for (std::size_t j = 0; j < nj; ++j)
    for (std::size_t p = 0; p < jobs[j].plans.size(); ++p) {
      const std::string xp = vname("xp", j, p);
      const std::size_t nops = jobs[j].plans[p].operations.size();
      if (options.printed_assignment_forms) {
        std::vector<std::string> xo;
        for (std::size_t o = 0; o < nops; ++o)
          for (std::size_t m = 0; m < nm; ++m) xo.push_back(vname("xo", j, p, o, m));
        Terms terms{{minus, xp}};
        for (const auto& v : xo) terms.emplace_back(one, v);
        model.add_constraint(vname("opmach", j, p), terms, Sense::kEqual, 0);
        continue;
      }
      for (std::size_t o = 0; o < nops; ++o) {
        std::vector<std::string> xo;
        for (std::size_t m = 0; m < nm; ++m) xo.push_back(vname("xo", j, p, o, m));
        Terms terms{{minus, xp}};
        for (const auto& v : xo) terms.emplace_back(one, v);
        model.add_constraint(vname("opmach", j, p, o), terms, Sense::kEqual, 0);
      }
    }
  for (std::size_t j = 0; j < nj; ++j)
    for (std::size_t m = 0; m < nm; ++m) {
      const std::string xm = vname("xm", j, m);
      std::vector<std::string> all_xo;
      for (std::size_t p = 0; p < jobs[j].plans.size(); ++p)
        for (std::size_t o = 0; o < jobs[j].plans[p].operations.size(); ++o) all_xo.push_back(vname("xo", j, p, o, m));
      if (options.printed_assignment_forms) {
        Terms terms{{minus, xm}};
        for (const auto& v : all_xo) terms.emplace_back(one, v);
        model.add_constraint(vname("jobmach", j, m), terms, Sense::kLessEqual, 0);
      } else {
        std::size_t k = 0;
        for (std::size_t p = 0; p < jobs[j].plans.size(); ++p)
          for (std::size_t o = 0; o < jobs[j].plans[p].operations.size(); ++o, ++k)
            model.add_constraint(vname("jobmach", j, p, o, m), {{one, all_xo[k]}, {minus, xm}}, Sense::kLessEqual, 0);
      }
      Terms presence{{one, xm}};
      for (const auto& v : all_xo) presence.emplace_back(minus, v);
      model.add_constraint(vname("presence", j, m), presence, Sense::kLessEqual, 0);
    }

  // Routes: each visited job has one way in and one way out.
  for (std::size_t j = 0; j < nj; ++j)
    for (std::size_t m = 0; m < nm; ++m) {
      const std::string xm = vname("xm", j, m);
      const std::string xs = vname("xs", j, m);
      const std::string xe = vname("xe", j, m);
      std::vector<std::string> out_arcs, in_arcs;
      for (std::size_t k = 0; k < nj; ++k) {
        if (k == j) continue;
        out_arcs.push_back(vname("xr", j, k, m));
        in_arcs.push_back(vname("xr", k, j, m));
      }
      Terms out{{one, xm}, {minus, xe}};
      for (const auto& v : out_arcs) out.emplace_back(minus, v);
      model.add_constraint(vname("outdeg", j, m), out, Sense::kEqual, 0);
      Terms in{{one, xm}, {minus, xs}};
      for (const auto& v : in_arcs) in.emplace_back(minus, v);
      model.add_constraint(vname("indeg", j, m), in, Sense::kEqual, 0);
    }
  for (std::size_t m = 0; m < nm; ++m) {
    std::vector<std::string> xs, xe;
    for (std::size_t j = 0; j < nj; ++j) {
      xs.push_back(vname("xs", j, m));
      xe.push_back(vname("xe", j, m));
    }
    Terms balance, once;
    for (const auto& v : xs) {
      balance.emplace_back(one, v);
      once.emplace_back(one, v);
    }
    for (const auto& v : xe) balance.emplace_back(minus, v);
    model.add_constraint(vname("pathbal", m), balance, Sense::kEqual, 0);
    model.add_constraint(vname("pathone", m), once, Sense::kLessEqual, 1);
  }

  // Holding continuity.
  for (const HoldingArc& h : instance.holding()) {
    const std::size_t a = h.from_job.value;
    const std::size_t b = h.to_job.value;
    for (std::size_t k = 0; k < h.op_links.size(); ++k) {
      const auto [from_op, to_op] = h.op_links[k];
      for (std::size_t m = 0; m < nm; ++m) {
        std::vector<std::string> jig, affix;
        for (std::size_t p = 0; p < jobs[a].plans.size(); ++p) jig.push_back(vname("xo", a, p, from_op, m));
        for (std::size_t p = 0; p < jobs[b].plans.size(); ++p) affix.push_back(vname("xo", b, p, to_op, m));
        Terms same;
        for (const auto& v : jig) same.emplace_back(one, v);
        for (const auto& v : affix) same.emplace_back(minus, v);
        model.add_constraint(vname("holdmach", a, b, k, m), same, Sense::kEqual, 0);
        const std::string xr = vname("xr", a, b, m);
        Terms next{{one, xr}};
        for (const auto& v : jig) next.emplace_back(minus, v);
        model.add_constraint(vname("holdnext", a, b, k, m), next, Sense::kGreaterEqual, 0);
      }
    }
  }

  // Fixed start locations.
  for (std::size_t m = 0; m < nm; ++m) {
    const Machine& machine = instance.machine(MachineId(m));
    if (!machine.start_location) continue;
    for (std::size_t j = 0; j < nj; ++j) {
      const Rational setup = Rational::from_ticks(travel_time(instance, machine, *machine.start_location, JobId(j)));
      const std::string xs = vname("xs", j, m);
      model.add_constraint(vname("startpos", j, m), {{one, s[j]}, {-setup, xs}}, Sense::kGreaterEqual, 0);
    }
  }
  return model;
}

// ---------------------------------------------------------------------------
// LP text

namespace {

const char* sense_text(Sense s) {
  switch (s) {
    case Sense::kLessEqual: return "<=";
    case Sense::kGreaterEqual: return ">=";
    case Sense::kEqual: return "=";
  }
  return "=";
}

std::vector<std::size_t> canonical_order(const MipModel& model) {
  std::vector<std::size_t> order(model.variables().size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return model.variables()[a].name < model.variables()[b].name; });
  return order;
}

void write_terms(std::ostream& os, const MipModel& model, const std::vector<Term>& terms) {
  bool first = true;
  for (const Term& t : terms) {
    const bool negative = t.coeff < Rational(0);
    const Rational mag = negative ? -t.coeff : t.coeff;
    if (first) {
      if (negative) os << "- ";
    } else {
      os << (negative ? " - " : " + ");
    }
    if (mag != Rational(1)) os << mag.to_decimal() << ' ';
    os << model.variables()[t.var].name;
    first = false;
  }
  if (first) os << "0 " << model.variables()[model.objective()].name;
}

}  // namespace

void export_lp(const MipModel& model, std::ostream& sink) {
  std::ostringstream os;
  os << "Minimize\n obj: " << model.variables().at(model.objective()).name << "\nSubject To\n";
  for (const LinearConstraint& row : model.constraints()) {
    os << ' ' << row.name << ": ";
    write_terms(os, model, row.terms);
    os << ' ' << sense_text(row.sense) << ' ' << row.rhs.to_decimal() << '\n';
  }
  const auto order = canonical_order(model);
  os << "Bounds\n";
  for (std::size_t id : order) {
    const MipVariable& v = model.variables()[id];
    if (v.kind != VarKind::kContinuous) continue;
    if (v.upper)
      os << " 0 <= " << v.name << " <= " << v.upper->to_decimal() << '\n';
    else
      os << ' ' << v.name << " >= 0\n";
  }
  bool any_binary = false;
  for (std::size_t id : order) {
    const MipVariable& v = model.variables()[id];
    if (v.kind != VarKind::kBinary) continue;
    if (!any_binary) os << "Binary\n";
    any_binary = true;
    os << ' ' << v.name << '\n';
  }
  os << "End\n";
  sink << os.str();
  if (!sink) throw Error("failed to write LP output");
}

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

bool parse_number(const std::string& tok, double& value) {
  if (tok.empty()) return false;
  char* end = nullptr;
  value = std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size();
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

}  // namespace

LpFile parse_lp(std::string_view text) {
  enum class Section { kNone, kObjective, kRows, kBounds, kBinary, kEnd };
  LpFile lp;
  Section section = Section::kNone;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("LP line " + std::to_string(line_no) + ": " + what);
  };
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto pos = line.find('\\'); pos != std::string::npos) line.erase(pos);
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    const std::string head = lower(toks.size() == 2 ? toks[0] + " " + toks[1] : toks[0]);
    if (head == "minimize") { section = Section::kObjective; continue; }
    if (head == "subject to") { section = Section::kRows; continue; }
    if (head == "bounds") { section = Section::kBounds; continue; }
    if (head == "binary" || head == "binaries") { section = Section::kBinary; continue; }
    if (head == "end") { section = Section::kEnd; continue; }

    switch (section) {
      case Section::kObjective: {
        if (toks.size() != 2 || toks[0].back() != ':') fail("expected 'obj: <variable>'");
        lp.objective = toks[1];
        break;
      }
      case Section::kRows: {
        if (toks[0].back() != ':') fail("constraint without a name");
        LpFile::Row row;
        row.name = toks[0].substr(0, toks[0].size() - 1);
        std::size_t i = 1;
        double sign = 1.0;
        double coeff = 1.0;
        bool have_coeff = false;
        for (; i < toks.size(); ++i) {
          const std::string& t = toks[i];
          if (t == "<=" || t == ">=" || t == "=") break;
          double num = 0;
          if (t == "+") { sign = 1.0; continue; }
          if (t == "-") { sign = -1.0; continue; }
          if (parse_number(t, num)) {
            coeff = num;
            have_coeff = true;
            continue;
          }
          row.terms.emplace_back(sign * (have_coeff ? coeff : 1.0), t);
          sign = 1.0;
          coeff = 1.0;
          have_coeff = false;
        }
        if (i + 2 != toks.size()) fail("expected '<sense> <rhs>' at end of constraint");
        row.sense = toks[i] == "<=" ? Sense::kLessEqual : toks[i] == ">=" ? Sense::kGreaterEqual : Sense::kEqual;
        if (!parse_number(toks[i + 1], row.rhs)) fail("bad right-hand side '" + toks[i + 1] + "'");
        lp.rows.push_back(std::move(row));
        break;
      }
      case Section::kBounds: {
        double lo = 0, hi = 0;
        if (toks.size() == 5 && parse_number(toks[0], lo) && toks[1] == "<=" && toks[3] == "<=" &&
            parse_number(toks[4], hi)) {
          lp.bounds[toks[2]] = {lo, hi};
        } else if (toks.size() == 3 && toks[1] == ">=" && parse_number(toks[2], lo)) {
          lp.bounds[toks[0]] = {lo, std::nullopt};
        } else {
          fail("unsupported bound line");
        }
        break;
      }
      case Section::kBinary:
        for (const auto& t : toks) lp.binaries.push_back(t);
        break;
      case Section::kNone:
      case Section::kEnd:
        fail("text outside of a section");
    }
  }
  if (section != Section::kEnd) throw ParseError("LP text has no End section");
  return lp;
}

// ---------------------------------------------------------------------------
// Solution substitution

namespace {

struct ParsedName {
  std::string prefix;
  std::vector<std::size_t> idx;
};

ParsedName parse_name(const std::string& name) {
  ParsedName out;
  const auto us = name.find('_');
  out.prefix = name.substr(0, us);
  if (us == std::string::npos) return out;
  std::string rest = name.substr(us + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    auto dot = rest.find('.', pos);
    if (dot == std::string::npos) dot = rest.size();
    out.idx.push_back(std::stoul(rest.substr(pos, dot - pos)));
    pos = dot + 1;
  }
  return out;
}

bool works_on(const Schedule& s, std::size_t j, std::size_t m) {
  const JobAssignment& a = s.jobs[j].assignment;
  return a.plan && std::any_of(a.op_machines.begin(), a.op_machines.end(),
                               [&](const auto& x) { return x && x->value == m; });
}

}  // namespace

std::vector<Rational> induced_values(const MipModel& model, const Schedule& schedule) {
  std::vector<Rational> values;
  values.reserve(model.variables().size());
  auto job = [&](std::size_t j) -> const ScheduledJob& {
    if (j >= schedule.jobs.size()) throw InvalidReferenceError("model references job " + std::to_string(j) + " missing from schedule");
    return schedule.jobs[j];
  };
  auto route = [&](std::size_t m) -> const std::vector<JobId>& {
    if (m >= schedule.routes.size()) throw InvalidReferenceError("model references machine " + std::to_string(m) + " missing from schedule");
    return schedule.routes[m];
  };
  for (const MipVariable& v : model.variables()) {
    const ParsedName n = parse_name(v.name);
    const auto& i = n.idx;
    Rational val(0);
    if (n.prefix == "cmax") {
      val = Rational::from_ticks(schedule.c_max);
    } else if (n.prefix == "s") {
      val = Rational::from_ticks(job(i.at(0)).start);
    } else if (n.prefix == "c") {
      val = Rational::from_ticks(job(i.at(0)).completion);
    } else if (n.prefix == "co") {
      const ScheduledJob& sj = job(i.at(0));
      const bool chosen = sj.assignment.plan == i.at(1) && i.at(2) < sj.op_completion.size();
      val = Rational::from_ticks(chosen ? sj.op_completion[i[2]] : sj.start);
    } else if (n.prefix == "cm") {
      val = works_on(schedule, i.at(0), i.at(1)) ? Rational::from_ticks(job(i[0]).completion) : Rational(0);
    } else if (n.prefix == "xp") {
      val = job(i.at(0)).assignment.plan == i.at(1) ? 1 : 0;
    } else if (n.prefix == "xo") {
      const JobAssignment& a = job(i.at(0)).assignment;
      const bool on = a.plan == i.at(1) && i.at(2) < a.op_machines.size() && a.op_machines[i[2]] &&
                      a.op_machines[i[2]]->value == i.at(3);
      val = on ? 1 : 0;
    } else if (n.prefix == "xm") {
      const auto& r = route(i.at(1));
      val = static_cast<std::int64_t>(std::count(r.begin(), r.end(), JobId(i.at(0))));
    } else if (n.prefix == "xs") {
      const auto& r = route(i.at(1));
      val = (!r.empty() && r.front().value == i.at(0)) ? 1 : 0;
    } else if (n.prefix == "xe") {
      const auto& r = route(i.at(1));
      val = (!r.empty() && r.back().value == i.at(0)) ? 1 : 0;
    } else if (n.prefix == "xr") {
      const auto& r = route(i.at(2));
      std::int64_t count = 0;
      for (std::size_t k = 0; k + 1 < r.size(); ++k)
        if (r[k].value == i.at(0) && r[k + 1].value == i.at(1)) ++count;
      val = count;
    } else {
      throw InvalidReferenceError("variable '" + v.name + "' has no schedule counterpart");
    }
    values.push_back(val);
  }
  return values;
}

std::vector<std::string> check_solution_against_model(const MipModel& model, const Schedule& schedule) {
  const std::vector<Rational> values = induced_values(model, schedule);
  std::vector<std::string> failed;
  for (const LinearConstraint& row : model.constraints()) {
    Rational lhs(0);
    for (const Term& t : row.terms) lhs += t.coeff * values[t.var];
    const bool ok = row.sense == Sense::kLessEqual      ? lhs <= row.rhs
                    : row.sense == Sense::kGreaterEqual ? lhs >= row.rhs
                                                        : lhs == row.rhs;
    if (!ok) failed.push_back(row.name);
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    const MipVariable& v = model.variables()[k];
    if (v.kind == VarKind::kBinary && values[k] != Rational(0) && values[k] != Rational(1))
      failed.push_back("binary:" + v.name);
    if (values[k] < Rational(0) || (v.upper && values[k] > *v.upper)) failed.push_back("bound:" + v.name);
  }
  return failed;
}

std::string export_solution(const MipModel& model, const Schedule& schedule) {
  const std::vector<Rational> values = induced_values(model, schedule);
  std::ostringstream os;
  for (std::size_t id : canonical_order(model)) os << model.variables()[id].name << ' ' << values[id].to_decimal() << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// import_solution

Schedule import_solution(const MipModel& model, const Instance& instance, std::string_view solution_text) {
  constexpr long double kTol = 1e-6L;
  std::vector<long double> raw(model.variables().size(), 0.0L);
  std::istringstream in{std::string(solution_text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() != 2) throw ParseError("solution line " + std::to_string(line_no) + ": expected 'name value'");
    auto id = model.find(toks[0]);
    if (!id) throw ParseError("solution line " + std::to_string(line_no) + ": unknown variable '" + toks[0] + "'");
    char* end = nullptr;
    raw[*id] = std::strtold(toks[1].c_str(), &end);
    if (end != toks[1].c_str() + toks[1].size())
      throw ParseError("solution line " + std::to_string(line_no) + ": bad value '" + toks[1] + "'");
  }

  auto binary = [&](const std::string& name) -> bool {
    auto id = model.find(name);
    if (!id) throw MalformedSolutionError("model lacks variable '" + name + "'");
    const long double v = raw[*id];
    if (std::fabs(v - std::round(v)) > kTol || v < -kTol || v > 1 + kTol)
      throw MalformedSolutionError("variable '" + name + "' is not binary: " + std::to_string(static_cast<double>(v)));
    return v >= 0.5L;
  };
  auto ticks = [&](const std::string& name) -> TimeTicks {
    auto id = model.find(name);
    if (!id) throw MalformedSolutionError("model lacks variable '" + name + "'");
    const long double scaled = raw[*id] * TimeTicks::kPerUnit;
    const long double nearest = std::round(scaled);
    if (std::fabs(scaled - nearest) > kTol * TimeTicks::kPerUnit)
      throw MalformedSolutionError("time '" + name + "' is not within 1e-6 of a tick");
    if (nearest < 0) throw MalformedSolutionError("time '" + name + "' is negative");
    return TimeTicks(static_cast<std::int64_t>(nearest));
  };

  const std::size_t nj = instance.num_jobs();
  const std::size_t nm = instance.num_machines();
  Schedule schedule;
  schedule.jobs.resize(nj);
  schedule.routes.resize(nm);
  std::vector<Violation> structural;
  for (std::size_t j = 0; j < nj; ++j) {
    const Job& job = instance.job(JobId(j));
    ScheduledJob& sj = schedule.jobs[j];
    for (std::size_t p = 0; p < job.plans.size(); ++p) {
      if (!binary(vname("xp", j, p))) continue;
      if (sj.assignment.plan)
        structural.push_back({ViolationKind::kPlanCount, "job " + job.name + " selects more than one plan"});
      else
        sj.assignment.plan = p;
    }
    sj.start = ticks(vname("s", j));
    sj.completion = ticks(vname("c", j));
    if (!sj.assignment.plan) continue;
    const std::size_t p = *sj.assignment.plan;
    const std::size_t nops = job.plans[p].operations.size();
    sj.assignment.op_machines.assign(nops, std::nullopt);
    for (std::size_t o = 0; o < nops; ++o) {
      sj.op_completion.push_back(ticks(vname("co", j, p, o)));
      for (std::size_t m = 0; m < nm; ++m) {
        if (!binary(vname("xo", j, p, o, m))) continue;
        if (sj.assignment.op_machines[o])
          structural.push_back({ViolationKind::kOpAssignment,
                                "job " + job.name + " operation " + std::to_string(o) + " has several machines"});
        else
          sj.assignment.op_machines[o] = MachineId(m);
      }
    }
  }
  for (std::size_t m = 0; m < nm; ++m) {
    std::optional<std::size_t> cur;
    for (std::size_t j = 0; j < nj && !cur; ++j)
      if (binary(vname("xs", j, m))) cur = j;
    std::vector<bool> seen(nj, false);
    while (cur && !seen[*cur]) {
      seen[*cur] = true;
      schedule.routes[m].push_back(JobId(*cur));
      if (binary(vname("xe", *cur, m))) break;
      std::optional<std::size_t> next;
      for (std::size_t k = 0; k < nj && !next; ++k)
        if (k != *cur && binary(vname("xr", *cur, k, m))) next = k;
      cur = next;
    }
  }
  schedule.c_max = ticks("cmax");

  std::vector<Violation> violations = validate(instance, schedule);
  violations.insert(violations.begin(), structural.begin(), structural.end());
  if (!violations.empty())
    throw InfeasibleSolutionError("imported solution is infeasible (" + std::to_string(violations.size()) + " violations)",
                                  std::move(violations));
  return schedule;
}

}  // namespace fjsp
