#include "fjsp/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fjsp/errors.hpp"

namespace fjsp {

using Json = nlohmann::ordered_json;

namespace {

constexpr int kFormatVersion = 1;

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
}

/// Read-only view of a JSON value that remembers its path for diagnostics.
class Field {
 public:
  Field(const Json& value, std::string path) : v_(value), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& message) const { throw ParseError("field " + path_ + ": " + message); }

  Field at(const std::string& key) const {
    if (!v_.is_object()) fail("expected an object");
    auto it = v_.find(key);
    if (it == v_.end()) fail("missing key '" + key + "'");
    return {*it, path_ + "." + key};
  }
  std::optional<Field> maybe(const std::string& key) const {
    if (!v_.is_object()) fail("expected an object");
    auto it = v_.find(key);
    if (it == v_.end() || it->is_null()) return std::nullopt;
    return Field(*it, path_ + "." + key);
  }
  std::vector<Field> items() const {
    if (!v_.is_array()) fail("expected an array");
    std::vector<Field> out;
    for (std::size_t i = 0; i < v_.size(); ++i) out.emplace_back(v_[i], path_ + "[" + std::to_string(i) + "]");
    return out;
  }
  std::int64_t integer() const {
    if (!v_.is_number_integer()) fail("expected an integer");
    return v_.get<std::int64_t>();
  }
  std::size_t index() const {
    const std::int64_t i = integer();
    if (i < 0) fail("expected a non-negative integer");
    return static_cast<std::size_t>(i);
  }
  int small_int() const {
    const std::int64_t i = integer();
    if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max()) fail("integer out of range");
    return static_cast<int>(i);
  }
  std::string string() const {
    if (!v_.is_string()) fail("expected a string");
    return v_.get<std::string>();
  }
  bool is_null() const { return v_.is_null(); }

 private:
  const Json& v_;
  std::string path_;
};

std::size_t lookup(const std::vector<std::string>& names, const Field& f, const char* what) {
  const std::string name = f.string();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) f.fail(std::string("unknown ") + what + " '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

void check_version(const Field& root) {
  const auto v = root.at("format_version").integer();
  if (v != kFormatVersion) root.at("format_version").fail("unsupported format_version " + std::to_string(v));
}

std::string units(TimeTicks t) { return t.to_units_string(); }

}  // namespace

std::string instance_to_json(const Instance& instance) {
  const InstanceData& d = instance.data();
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["operation_types"] = d.operation_types;
  doc["robot_types"] = d.robot_types;
  doc["efficiency"] = d.efficiency;
  doc["locomotion_op_type"] = d.locomotion_type.value;
  Json machines = Json::array();
  for (const Machine& m : d.machines) {
    Json jm;
    jm["name"] = m.name;
    jm["robot_type"] = d.robot_types[m.robot_type.value];
    jm["locomotion_divisor"] = m.locomotion_divisor;
    jm["start_location"] = m.start_location ? Json(d.jobs[m.start_location->value].name) : Json(nullptr);
    machines.push_back(std::move(jm));
  }
  doc["machines"] = std::move(machines);
  Json jobs = Json::array();
  for (const Job& job : d.jobs) {
    Json plans = Json::array();
    for (const ProcessPlan& plan : job.plans) {
      Json ops = Json::array();
      for (const Operation& op : plan.operations) ops.push_back(op.op_type.value);
      plans.push_back(std::move(ops));
    }
    jobs.push_back({{"name", job.name}, {"plans", std::move(plans)}});
  }
  doc["jobs"] = std::move(jobs);
  Json dag = Json::array();
  for (const PrecedenceArc& arc : d.dag) dag.push_back({d.jobs[arc.from.value].name, d.jobs[arc.to.value].name});
  doc["dag"] = std::move(dag);
  Json holding = Json::array();
  for (const HoldingArc& h : d.holding) {
    Json links = Json::array();
    for (const auto& [a, b] : h.op_links) links.push_back({a, b});
    holding.push_back(
        {{"from", d.jobs[h.from_job.value].name}, {"to", d.jobs[h.to_job.value].name}, {"op_links", std::move(links)}});
  }
  doc["holding"] = std::move(holding);
  doc["distances"] = d.distances;
  if (d.horizon) doc["horizon_ticks"] = d.horizon->count();
  return doc.dump(2) + "\n";
}

Instance instance_from_json(std::string_view text) {
  const Json doc = parse_document(text);
  const Field root(doc, "$");
  check_version(root);
  InstanceData d;
  for (const Field& f : root.at("operation_types").items()) d.operation_types.push_back(f.string());
  for (const Field& f : root.at("robot_types").items()) d.robot_types.push_back(f.string());
  for (const Field& row : root.at("efficiency").items()) {
    std::vector<int> values;
    for (const Field& f : row.items()) values.push_back(f.small_int());
    d.efficiency.push_back(std::move(values));
  }
  d.locomotion_type = OperationTypeId(root.at("locomotion_op_type").index());

  // Job names first: machines and arcs refer to them.
  std::vector<std::string> job_names;
  for (const Field& fj : root.at("jobs").items()) {
    Job job;
    job.name = fj.at("name").string();
    for (const Field& fp : fj.at("plans").items()) {
      ProcessPlan plan;
      for (const Field& fo : fp.items()) plan.operations.push_back({OperationTypeId(fo.index())});
      job.plans.push_back(std::move(plan));
    }
    job_names.push_back(job.name);
    d.jobs.push_back(std::move(job));
  }
  for (const Field& fm : root.at("machines").items()) {
    Machine m;
    m.name = fm.at("name").string();
    m.robot_type = RobotTypeId(lookup(d.robot_types, fm.at("robot_type"), "robot type"));
    if (auto div = fm.maybe("locomotion_divisor")) m.locomotion_divisor = div->small_int();
    if (auto start = fm.maybe("start_location")) m.start_location = JobId(lookup(job_names, *start, "job"));
    d.machines.push_back(std::move(m));
  }
  for (const Field& fa : root.at("dag").items()) {
    const auto ends = fa.items();
    if (ends.size() != 2) fa.fail("expected [from, to]");
    d.dag.push_back({JobId(lookup(job_names, ends[0], "job")), JobId(lookup(job_names, ends[1], "job"))});
  }
  for (const Field& fh : root.at("holding").items()) {
    HoldingArc h;
    h.from_job = JobId(lookup(job_names, fh.at("from"), "job"));
    h.to_job = JobId(lookup(job_names, fh.at("to"), "job"));
    for (const Field& fl : fh.at("op_links").items()) {
      const auto pair = fl.items();
      if (pair.size() != 2) fl.fail("expected [jig op, affix op]");
      h.op_links.emplace_back(pair[0].index(), pair[1].index());
    }
    d.holding.push_back(std::move(h));
  }
  for (const Field& row : root.at("distances").items()) {
    std::vector<int> values;
    for (const Field& f : row.items()) values.push_back(f.small_int());
    d.distances.push_back(std::move(values));
  }
  if (auto h = root.maybe("horizon_ticks")) d.horizon = TimeTicks(h->integer());
  return Instance(std::move(d));
}

Instance load_instance(const std::filesystem::path& path) {
  try {
    return instance_from_json(read_text(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  write_text(path, instance_to_json(instance));
}

std::string schedule_to_json(const Instance& instance, const Schedule& schedule) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["c_max_ticks"] = schedule.c_max.count();
  doc["c_max"] = units(schedule.c_max);
  Json jobs = Json::array();
  for (std::size_t j = 0; j < schedule.jobs.size(); ++j) {
    const ScheduledJob& sj = schedule.jobs[j];
    Json jj;
    jj["job"] = j < instance.num_jobs() ? instance.job(JobId(j)).name : std::to_string(j);
    jj["plan"] = sj.assignment.plan ? Json(*sj.assignment.plan) : Json(nullptr);
    Json machines = Json::array();
    for (const auto& m : sj.assignment.op_machines)
      machines.push_back(m ? Json(instance.machine(*m).name) : Json(nullptr));
    jj["machines"] = std::move(machines);
    jj["start_ticks"] = sj.start.count();
    jj["start"] = units(sj.start);
    jj["completion_ticks"] = sj.completion.count();
    jj["completion"] = units(sj.completion);
    Json ops = Json::array();
    for (TimeTicks t : sj.op_completion) ops.push_back(t.count());
    jj["op_completion_ticks"] = std::move(ops);
    jobs.push_back(std::move(jj));
  }
  doc["jobs"] = std::move(jobs);
  Json routes = Json::array();
  for (std::size_t m = 0; m < schedule.routes.size(); ++m) {
    Json visits = Json::array();
    for (JobId j : schedule.routes[m]) visits.push_back(instance.job(j).name);
    routes.push_back({{"machine", instance.machine(MachineId(m)).name}, {"jobs", std::move(visits)}});
  }
  doc["routes"] = std::move(routes);
  return doc.dump(2) + "\n";
}

Schedule schedule_from_json(const Instance& instance, std::string_view text) {
  const Json doc = parse_document(text);
  const Field root(doc, "$");
  check_version(root);
  std::vector<std::string> job_names, machine_names;
  for (const Job& j : instance.jobs()) job_names.push_back(j.name);
  for (const Machine& m : instance.machines()) machine_names.push_back(m.name);

  Schedule s;
  s.c_max = TimeTicks(root.at("c_max_ticks").integer());
  s.jobs.resize(instance.num_jobs());
  std::vector<bool> seen(instance.num_jobs(), false);
  for (const Field& fj : root.at("jobs").items()) {
    const std::size_t j = lookup(job_names, fj.at("job"), "job");
    if (seen[j]) fj.fail("job listed twice");
    seen[j] = true;
    ScheduledJob& sj = s.jobs[j];
    if (auto plan = fj.maybe("plan")) sj.assignment.plan = plan->index();
    for (const Field& fm : fj.at("machines").items()) {
      if (fm.is_null())
        sj.assignment.op_machines.push_back(std::nullopt);
      else
        sj.assignment.op_machines.push_back(MachineId(lookup(machine_names, fm, "machine")));
    }
    sj.start = TimeTicks(fj.at("start_ticks").integer());
    sj.completion = TimeTicks(fj.at("completion_ticks").integer());
    for (const Field& f : fj.at("op_completion_ticks").items()) sj.op_completion.push_back(TimeTicks(f.integer()));
  }
  for (std::size_t j = 0; j < seen.size(); ++j)
    if (!seen[j]) root.at("jobs").fail("missing job '" + job_names[j] + "'");
  s.routes.resize(instance.num_machines());
  std::vector<bool> route_seen(instance.num_machines(), false);
  for (const Field& fr : root.at("routes").items()) {
    const std::size_t m = lookup(machine_names, fr.at("machine"), "machine");
    if (route_seen[m]) fr.fail("machine listed twice");
    route_seen[m] = true;
    for (const Field& f : fr.at("jobs").items()) s.routes[m].push_back(JobId(lookup(job_names, f, "job")));
  }
  return s;
}

Schedule load_schedule(const Instance& instance, const std::filesystem::path& path) {
  try {
    return schedule_from_json(instance, read_text(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_schedule(const Instance& instance, const Schedule& schedule, const std::filesystem::path& path) {
  write_text(path, schedule_to_json(instance, schedule));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace fjsp
