#include "fjsp/instances.hpp"

#include <algorithm>
#include <map>

#include "fjsp/errors.hpp"

namespace fjsp {

namespace {

constexpr int kHoldLink = 0;
constexpr int kHoldSheet = 1;
constexpr int kWeld = 2;
constexpr int kLocomote = 3;

const char* const kJobNames[] = {"M1", "M2", "Ja", "Jb", "Aa", "Ab", "M3", "Jc", "Ac", "Md", "Jd", "Ad"};

const std::vector<std::vector<int>> kPlans = {
    {kLocomote},            // M1
    {kLocomote},            // M2
    {kHoldLink, kHoldLink}, // Ja
    {kHoldLink, kHoldLink}, // Jb
    {kHoldLink, kHoldLink, kWeld},  // Aa
    {kHoldLink, kHoldLink, kWeld},  // Ab
    {kLocomote},            // M3
    {kHoldSheet},           // Jc
    {kHoldSheet, kWeld},    // Ac
    {kLocomote},            // Md
    {kHoldLink, kHoldSheet},  // Jd
    {kHoldSheet, kWeld},    // Ad
};

const DistanceMatrix kDistances = {
    {0, 0, 43, 50, 38, 55, 0, 36, 35, 0, 56, 55},
    {0, 0, 41, 50, 36, 55, 0, 35, 35, 0, 55, 55},
    {43, 41, 0, 0, 0, 0, 40, 0, 0, 40, 0, 0},
    {50, 50, 0, 0, 0, 0, 52, 0, 0, 53, 0, 0},
    {38, 36, 0, 0, 0, 0, 35, 0, 0, 35, 0, 0},
    {55, 55, 0, 0, 0, 0, 57, 0, 0, 58, 0, 0},
    {0, 0, 40, 52, 35, 57, 0, 35, 35, 0, 55, 55},
    {36, 35, 0, 0, 0, 0, 35, 0, 0, 35, 0, 0},
    {35, 35, 0, 0, 0, 0, 35, 0, 0, 35, 0, 0},
    {0, 0, 40, 53, 35, 58, 0, 35, 35, 0, 55, 55},
    {56, 55, 0, 0, 0, 0, 55, 0, 0, 55, 0, 0},
    {55, 55, 0, 0, 0, 0, 55, 0, 0, 55, 0, 0},
};

const std::pair<const char*, const char*> kArcs[] = {
    {"M1", "Ja"}, {"M2", "Ja"}, {"M1", "Jb"}, {"M2", "Jb"}, {"Ja", "Aa"}, {"Jb", "Ab"}, {"Aa", "M3"},
    {"Ab", "M3"}, {"M3", "Jc"}, {"Jc", "Ac"}, {"Ac", "Md"}, {"Md", "Jd"}, {"Jd", "Ad"},
};

const std::pair<const char*, const char*> kHolding[] = {{"Ja", "Aa"}, {"Jb", "Ab"}, {"Jc", "Ac"}, {"Jd", "Ad"}};

std::size_t index_of(const char* name) {
  for (std::size_t i = 0; i < std::size(kJobNames); ++i)
    if (std::string_view(kJobNames[i]) == name) return i;
  throw InvalidReferenceError(std::string("unknown benchmark job ") + name);
}

/// The i-th hold operation of each hold type in the jig links to the i-th
/// one of the same type in the affix.
std::vector<OpLink> pair_hold_ops(const std::vector<int>& jig, const std::vector<int>& affix) {
  std::vector<OpLink> links;
  for (int type : {kHoldLink, kHoldSheet}) {
    std::vector<std::size_t> a, b;
    for (std::size_t o = 0; o < jig.size(); ++o)
      if (jig[o] == type) a.push_back(o);
    for (std::size_t o = 0; o < affix.size(); ++o)
      if (affix[o] == type) b.push_back(o);
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) links.emplace_back(a[i], b[i]);
  }
  std::sort(links.begin(), links.end());
  return links;
}

InstanceData panel_data() {
  InstanceData d;
  d.operation_types = {"hold frame link", "hold sheet", "weld", "locomote"};
  d.robot_types = {"Assembler", "MARC", "LSMS"};
  d.efficiency = {{1, 1, 5, 100}, {5, 5, 1, 5}, {10, 10, 10, 1}};
  d.locomotion_type = OperationTypeId(kLocomote);
  d.machines = {
      {"Assembler", RobotTypeId(0), 30, std::nullopt},
      {"MARC 1", RobotTypeId(1), 30, std::nullopt},
      {"MARC 2", RobotTypeId(1), 25, std::nullopt},
      {"LSMS", RobotTypeId(2), 30, std::nullopt},
  };
  for (std::size_t j = 0; j < std::size(kJobNames); ++j) {
    ProcessPlan plan;
    for (int q : kPlans[j]) plan.operations.push_back({OperationTypeId(static_cast<std::size_t>(q))});
    d.jobs.push_back({kJobNames[j], {plan}});
  }
  for (const auto& [a, b] : kArcs) d.dag.push_back({JobId(index_of(a)), JobId(index_of(b))});
  for (const auto& [a, b] : kHolding) {
    const std::size_t ja = index_of(a);
    const std::size_t jb = index_of(b);
    d.holding.push_back({JobId(ja), JobId(jb), pair_hold_ops(kPlans[ja], kPlans[jb])});
  }
  d.distances = kDistances;
  return d;
}

}  // namespace

Instance solar_panel_instance() { return Instance(panel_data()); }

Instance reduced_rl_instance() {
  const Instance full = solar_panel_instance();
  std::vector<JobId> keep;
  for (const char* name : {"M2", "Ja", "Aa", "Jb", "Ab"}) keep.push_back(JobId(index_of(name)));
  return restrict_instance(full, keep);
}

Instance restrict_instance(const Instance& instance, const std::vector<JobId>& keep) {
  const InstanceData& src = instance.data();
  std::map<std::size_t, std::size_t> remap;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i].value >= src.jobs.size()) throw InvalidReferenceError("restriction keeps an unknown job");
    if (!remap.emplace(keep[i].value, i).second) throw InvalidArgumentError("restriction keeps a job twice");
  }
  auto mapped = [&](JobId j) -> std::optional<JobId> {
    auto it = remap.find(j.value);
    if (it == remap.end()) return std::nullopt;
    return JobId(it->second);
  };

  InstanceData d;
  d.operation_types = src.operation_types;
  d.robot_types = src.robot_types;
  d.efficiency = src.efficiency;
  d.locomotion_type = src.locomotion_type;
  d.machines = src.machines;
  for (Machine& m : d.machines)
    if (m.start_location) m.start_location = mapped(*m.start_location);
  for (JobId j : keep) d.jobs.push_back(src.jobs[j.value]);
  for (const PrecedenceArc& arc : src.dag) {
    auto a = mapped(arc.from);
    auto b = mapped(arc.to);
    if (a && b) d.dag.push_back({*a, *b});
  }
  for (const HoldingArc& h : src.holding) {
    auto a = mapped(h.from_job);
    auto b = mapped(h.to_job);
    if (a && b) d.holding.push_back({*a, *b, h.op_links});
  }
  d.distances.assign(keep.size(), std::vector<int>(keep.size(), 0));
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b) d.distances[a][b] = src.distances[keep[a].value][keep[b].value];
  return Instance(std::move(d));
}

Instance gen_multi_panel(std::size_t panels, int shift) {
  if (panels == 0) throw InvalidArgumentError("panel count must be at least 1");
  if (shift < 0) throw InvalidArgumentError("panel shift must be non-negative");
  const InstanceData one = panel_data();
  const std::size_t n = one.jobs.size();
  const std::size_t anchor = index_of("M1");

  InstanceData d;
  d.operation_types = one.operation_types;
  d.robot_types = one.robot_types;
  d.efficiency = one.efficiency;
  d.locomotion_type = one.locomotion_type;
  d.machines = one.machines;
  for (std::size_t p = 0; p < panels; ++p) {
    const std::string suffix = "_" + std::to_string(p + 1);
    const std::size_t base = p * n;
    for (const Job& job : one.jobs) d.jobs.push_back({job.name + suffix, job.plans});
    for (const PrecedenceArc& arc : one.dag) d.dag.push_back({JobId(arc.from.value + base), JobId(arc.to.value + base)});
    for (const HoldingArc& h : one.holding)
      d.holding.push_back({JobId(h.from_job.value + base), JobId(h.to_job.value + base), h.op_links});
  }
  d.distances.assign(panels * n, std::vector<int>(panels * n, 0));
  for (std::size_t p = 0; p < panels; ++p)
    for (std::size_t q = 0; q < panels; ++q)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          int value = one.distances[a][b];
          if (p != q) {
            const auto gap = static_cast<int>(p > q ? p - q : q - p);
            value = shift * gap + std::max(one.distances[anchor][a], one.distances[anchor][b]);
          }
          d.distances[p * n + a][q * n + b] = value;
        }
  return Instance(std::move(d));
}

}  // namespace fjsp
