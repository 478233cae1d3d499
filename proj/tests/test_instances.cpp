#include <gtest/gtest.h>

#include <filesystem>

#include "fjsp/errors.hpp"
#include "fjsp/instances.hpp"
#include "fjsp/io.hpp"
#include "fjsp/solver.hpp"

namespace fjsp {
namespace {

// Benchmark tables, typed in again row by row.
const char* const kNames[12] = {"M1", "M2", "Ja", "Jb", "Aa", "Ab", "M3", "Jc", "Ac", "Md", "Jd", "Ad"};
const int kTable3[12][12] = {
    /* M1 */ {0, 0, 43, 50, 38, 55, 0, 36, 35, 0, 56, 55},
    /* M2 */ {0, 0, 41, 50, 36, 55, 0, 35, 35, 0, 55, 55},
    /* Ja */ {43, 41, 0, 0, 0, 0, 40, 0, 0, 40, 0, 0},
    /* Jb */ {50, 50, 0, 0, 0, 0, 52, 0, 0, 53, 0, 0},
    /* Aa */ {38, 36, 0, 0, 0, 0, 35, 0, 0, 35, 0, 0},
    /* Ab */ {55, 55, 0, 0, 0, 0, 57, 0, 0, 58, 0, 0},
    /* M3 */ {0, 0, 40, 52, 35, 57, 0, 35, 35, 0, 55, 55},
    /* Jc */ {36, 35, 0, 0, 0, 0, 35, 0, 0, 35, 0, 0},
    /* Ac */ {35, 35, 0, 0, 0, 0, 35, 0, 0, 35, 0, 0},
    /* Md */ {0, 0, 40, 53, 35, 58, 0, 35, 35, 0, 55, 55},
    /* Jd */ {56, 55, 0, 0, 0, 0, 55, 0, 0, 55, 0, 0},
    /* Ad */ {55, 55, 0, 0, 0, 0, 55, 0, 0, 55, 0, 0},
};
// columns: hold frame link, hold sheet, weld, locomote
const int kTable1[3][4] = {{1, 1, 5, 100}, {5, 5, 1, 5}, {10, 10, 10, 1}};
const std::vector<std::vector<int>> kTable2 = {{3}, {3}, {0, 0}, {0, 0}, {0, 0, 2}, {0, 0, 2},
                                               {3}, {1}, {1, 2},  {3},    {0, 1},    {1, 2}};

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fjsp_test_" + name);
}

TEST(SolarPanel, TablesCellForCell) {
  const Instance in = solar_panel_instance();
  ASSERT_EQ(in.num_jobs(), 12u);
  ASSERT_EQ(in.num_machines(), 4u);
  for (std::size_t j = 0; j < 12; ++j) {
    EXPECT_EQ(in.job(JobId(j)).name, kNames[j]);
    ASSERT_EQ(in.job(JobId(j)).plans.size(), 1u);
    std::vector<int> ops;
    for (const Operation& op : in.job(JobId(j)).plans[0].operations) ops.push_back(static_cast<int>(op.op_type.value));
    EXPECT_EQ(ops, kTable2[j]) << kNames[j];
    for (std::size_t k = 0; k < 12; ++k) EXPECT_EQ(in.distances()[j][k], kTable3[j][k]) << kNames[j] << "," << kNames[k];
  }
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t q = 0; q < 4; ++q) EXPECT_EQ(in.data().efficiency[r][q], kTable1[r][q]);
  const char* machines[4] = {"Assembler", "MARC 1", "MARC 2", "LSMS"};
  const int robot[4] = {0, 1, 1, 2};
  const int divisor[4] = {30, 30, 25, 30};
  for (std::size_t m = 0; m < 4; ++m) {
    EXPECT_EQ(in.machine(MachineId(m)).name, machines[m]);
    EXPECT_EQ(in.machine(MachineId(m)).robot_type.value, static_cast<std::size_t>(robot[m]));
    EXPECT_EQ(in.machine(MachineId(m)).locomotion_divisor, divisor[m]);
    EXPECT_FALSE(in.machine(MachineId(m)).start_location);
  }
}

TEST(SolarPanel, SpotValues) {
  const Instance in = solar_panel_instance();
  const Job& aa = in.job(*in.find_job("Aa"));
  ASSERT_EQ(aa.plans[0].operations.size(), 3u);
  EXPECT_EQ(aa.plans[0].operations[2].op_type.value, 2u);
  EXPECT_EQ(in.distances()[in.find_job("M1")->value][in.find_job("Jb")->value], 50);
  EXPECT_EQ(in.data().efficiency[1][2], 1);
}

TEST(SolarPanel, ArcsAndHolding) {
  const Instance in = solar_panel_instance();
  auto id = [&](const char* n) { return *in.find_job(n); };
  std::vector<PrecedenceArc> expected = {
      {id("M1"), id("Ja")}, {id("M2"), id("Ja")}, {id("M1"), id("Jb")}, {id("M2"), id("Jb")}, {id("Ja"), id("Aa")},
      {id("Jb"), id("Ab")}, {id("Aa"), id("M3")}, {id("Ab"), id("M3")}, {id("M3"), id("Jc")}, {id("Jc"), id("Ac")},
      {id("Ac"), id("Md")}, {id("Md"), id("Jd")}, {id("Jd"), id("Ad")}};
  auto arcs = in.dag();
  std::sort(arcs.begin(), arcs.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(arcs, expected);
  const std::vector<HoldingArc> holding = {{id("Ja"), id("Aa"), {{0, 0}, {1, 1}}},
                                           {id("Jb"), id("Ab"), {{0, 0}, {1, 1}}},
                                           {id("Jc"), id("Ac"), {{0, 0}}},
                                           {id("Jd"), id("Ad"), {{1, 0}}}};
  EXPECT_EQ(in.holding(), holding);
}

TEST(Reduced, MatchesHandBuiltSubset) {
  const Instance r = reduced_rl_instance();
  ASSERT_EQ(r.num_jobs(), 5u);
  const char* names[5] = {"M2", "Ja", "Aa", "Jb", "Ab"};
  for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(r.job(JobId(j)).name, names[j]);
  const std::vector<std::vector<int>> d = {
      {0, 41, 36, 50, 55}, {41, 0, 0, 0, 0}, {36, 0, 0, 0, 0}, {50, 0, 0, 0, 0}, {55, 0, 0, 0, 0}};
  EXPECT_EQ(r.distances(), d);
  std::vector<PrecedenceArc> arcs = r.dag();
  std::sort(arcs.begin(), arcs.end());
  std::vector<PrecedenceArc> expected = {
      {JobId(0), JobId(1)}, {JobId(0), JobId(3)}, {JobId(1), JobId(2)}, {JobId(3), JobId(4)}};
  EXPECT_EQ(arcs, expected);
  const std::vector<HoldingArc> holding = {{JobId(1), JobId(2), {{0, 0}, {1, 1}}},
                                           {JobId(3), JobId(4), {{0, 0}, {1, 1}}}};
  EXPECT_EQ(r.holding(), holding);
  EXPECT_EQ(r.distances()[0][1], 41);
}

TEST(MultiPanel, Shapes) {
  EXPECT_THROW(gen_multi_panel(0), InvalidArgumentError);
  EXPECT_THROW(gen_multi_panel(1, -1), InvalidArgumentError);
  const Instance two = gen_multi_panel(2, 100);
  EXPECT_EQ(two.num_jobs(), 24u);
  EXPECT_EQ(two.dag().size(), 26u);
  EXPECT_EQ(two.holding().size(), 8u);
  const JobId a = *two.find_job("M1_1");
  const JobId b = *two.find_job("M1_2");
  EXPECT_EQ(two.distances()[a.value][b.value], 100);
  // shift + max(d(M1, Jb), d(M1, Ja))
  EXPECT_EQ(two.distances()[two.find_job("Jb_1")->value][two.find_job("Ja_2")->value], 150);
  EXPECT_EQ(two.distances()[two.find_job("Ja_2")->value][two.find_job("Aa_2")->value], 0);
  for (const PrecedenceArc& arc : two.dag()) EXPECT_EQ(arc.from.value / 12, arc.to.value / 12);
}

TEST(MultiPanel, OnePanelIsTheBenchmark) {
  const Instance panel = solar_panel_instance();
  for (int shift : {0, 100, 7}) {
    InstanceData one = gen_multi_panel(1, shift).data();
    for (Job& job : one.jobs) job.name = job.name.substr(0, job.name.size() - 2);
    EXPECT_EQ(Instance(one), panel);
  }
}

TEST(Restrict, KeepsInducedStructure) {
  const Instance panel = solar_panel_instance();
  const Instance sub = restrict_instance(panel, {JobId(0), JobId(2)});
  EXPECT_EQ(sub.dag(), (std::vector<PrecedenceArc>{{JobId(0), JobId(1)}}));
  EXPECT_TRUE(sub.holding().empty());
  EXPECT_THROW(restrict_instance(panel, {JobId(0), JobId(0)}), InvalidArgumentError);
}

TEST(InstanceFile, SaveLoadRoundTrip) {
  for (const Instance& in : {solar_panel_instance(), reduced_rl_instance(), gen_multi_panel(2, 100)}) {
    const auto path = temp_file("roundtrip.json");
    save_instance(in, path);
    EXPECT_EQ(load_instance(path), in);
    EXPECT_EQ(instance_to_json(load_instance(path)), instance_to_json(in));
  }
  InstanceData d = solar_panel_instance().data();
  d.machines[1].start_location = JobId(3);
  d.horizon = TimeTicks(1'000'000);
  const Instance custom(d);
  EXPECT_EQ(instance_from_json(instance_to_json(custom)), custom);
}

std::string benchmark_text() { return instance_to_json(solar_panel_instance()); }

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return text.replace(at, from.size(), to);
}

TEST(InstanceFile, CyclicDagNamesTheCycle) {
  const std::string text = replace(benchmark_text(), "\"dag\": [", "\"dag\": [\n    [\"Ad\", \"M1\"],");
  try {
    instance_from_json(text);
    FAIL() << "cycle accepted";
  } catch (const InvariantError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("cycle"), std::string::npos);
    EXPECT_NE(what.find("Ad -> M1"), std::string::npos) << what;
  }
}

TEST(InstanceFile, ZeroEfficiencyIsInvariantError) {
  EXPECT_THROW(instance_from_json(replace(benchmark_text(), "100", "0")), InvariantError);
}

TEST(InstanceFile, Diagnostics) {
  try {
    instance_from_json("{\n  \"format_version\": 1,\n  \"jobs\": [,]\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  try {
    instance_from_json(replace(benchmark_text(), "\"robot_type\": \"LSMS\"", "\"robot_type\": \"Drone\""));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("$.machines[3].robot_type"), std::string::npos) << e.what();
  }
  try {
    instance_from_json(replace(benchmark_text(), "\"format_version\": 1", "\"format_version\": 2"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("format_version"), std::string::npos);
  }
  EXPECT_THROW(load_instance(temp_file("does_not_exist.json")), Error);
}

TEST(ScheduleFile, RoundTrip) {
  const Instance in = solar_panel_instance();
  const Schedule best = *solve_exact(in).best_schedule;
  const auto path = temp_file("schedule.json");
  save_schedule(in, best, path);
  EXPECT_EQ(load_schedule(in, path), best);
  const std::string text = schedule_to_json(in, best);
  EXPECT_NE(text.find("\"c_max\": \"12\""), std::string::npos);
  EXPECT_THROW(schedule_from_json(in, replace(text, "\"job\": \"M1\"", "\"job\": \"Q9\"")), ParseError);
}

}  // namespace
}  // namespace fjsp
