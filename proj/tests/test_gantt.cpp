#include <gtest/gtest.h>

#include <map>
#include <regex>
#include <sstream>

#include "fjsp/gantt.hpp"
#include "fjsp/instances.hpp"
#include "fjsp/io.hpp"
#include "fjsp/mip.hpp"
#include "fjsp/solver.hpp"

namespace fjsp {
namespace {

std::vector<std::string> lines_with(const std::string& svg, const std::string& needle) {
  std::vector<std::string> out;
  std::istringstream is(svg);
  for (std::string line; std::getline(is, line);)
    if (line.find(needle) != std::string::npos) out.push_back(line);
  return out;
}

double attr(const std::string& line, const std::string& name) {
  const std::regex re(" " + name + "=\"([0-9.]+)\"");
  std::smatch m;
  EXPECT_TRUE(std::regex_search(line, m, re)) << line;
  return std::stod(m[1]);
}

Instance single_job() {
  InstanceData d;
  d.operation_types = {"move"};
  d.robot_types = {"bot"};
  d.efficiency = {{1}};
  d.machines = {{"L", RobotTypeId(0), 30, {}}};
  d.jobs = {{"j", {{{{OperationTypeId(0)}}}}}};
  d.distances = {{0}};
  return Instance(d);
}

TEST(Gantt, EmptyScheduleIsAxisOnly) {
  const Instance in = single_job();
  Schedule empty;
  const std::string svg = render_gantt(in, empty);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_TRUE(lines_with(svg, "class=\"work\"").empty());
  EXPECT_TRUE(lines_with(svg, "class=\"travel\"").empty());
}

TEST(Gantt, OneUnitJobIsTenPixels) {
  const Instance in = single_job();
  const Schedule s = *solve_exact(in).best_schedule;
  const auto rects = lines_with(render_gantt(in, s), "class=\"work\"");
  ASSERT_EQ(rects.size(), 1u);
  EXPECT_EQ(attr(rects[0], "width"), 10.0);
  EXPECT_NE(rects[0].find("j@L"), std::string::npos);
}

TEST(Gantt, WidthsMatchScheduleTimes) {
  for (const Instance& in : {solar_panel_instance(), gen_multi_panel(2, 100)}) {
    const Schedule s = *solve_exact(in, {3000, std::chrono::duration<double>(1e9)}).best_schedule;
    const std::string svg = render_gantt(in, s);
    const auto rects = lines_with(svg, "class=\"work\"");
    std::size_t visits = 0;
    for (const auto& route : s.routes) visits += route.size();
    ASSERT_EQ(rects.size(), visits);
    std::size_t k = 0;
    for (std::size_t m = 0; m < s.routes.size(); ++m)
      for (JobId j : s.routes[m]) {
        const ScheduledJob& sj = s.jobs[j.value];
        EXPECT_NEAR(attr(rects[k], "x"), static_cast<double>(sj.start.count()) / 15.0, 5e-4);
        EXPECT_NEAR(attr(rects[k], "width"), static_cast<double>((sj.completion - sj.start).count()) / 15.0, 5e-4);
        EXPECT_NE(rects[k].find(in.job(j).name + "@" + in.machine(MachineId(m)).name), std::string::npos);
        ++k;
      }
    // Travel per machine lane: lanes are told apart by their y coordinate.
    std::map<double, double> drawn;
    for (const auto& line : lines_with(svg, "class=\"travel\"")) drawn[attr(line, "y1")] += attr(line, "x2") - attr(line, "x1");
    std::map<double, double> expected;
    for (std::size_t m = 0; m < s.routes.size(); ++m) {
      std::int64_t total = 0;
      for (std::size_t i = 0; i + 1 < s.routes[m].size(); ++i)
        total += travel_time(in, MachineId(m), s.routes[m][i], s.routes[m][i + 1]).count();
      if (total > 0) expected[static_cast<double>(40 + 40 * m + 37)] = static_cast<double>(total) / 15.0;
    }
    ASSERT_EQ(drawn.size(), expected.size());
    for (const auto& [y, width] : expected) EXPECT_NEAR(drawn[y], width, 1e-2);
  }
}

TEST(Gantt, InfeasibleScheduleGetsBanner) {
  const Instance in = solar_panel_instance();
  Schedule s = *solve_exact(in).best_schedule;
  EXPECT_EQ(render_gantt(in, s).find("warning"), std::string::npos);
  s.jobs[5].start = TimeTicks(0);
  EXPECT_NE(render_gantt(in, s).find("warning: infeasible schedule"), std::string::npos);
}

// ---------------------------------------------------------------------------
// Frozen outputs

std::string golden(const std::string& name) { return read_text(std::string(FJSP_GOLDEN_DIR) + "/" + name); }

TEST(Golden, SinglePanelLp) {
  std::ostringstream a, b;
  export_lp(build_mip(solar_panel_instance()), a);
  export_lp(build_mip(solar_panel_instance()), b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str(), golden("single_panel.lp"));
}

TEST(Golden, SinglePanelGantt) {
  const Instance in = solar_panel_instance();
  const std::string a = render_gantt(in, *solve_exact(in).best_schedule);
  const std::string b = render_gantt(in, *solve_exact(in).best_schedule);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, golden("single_panel.svg"));
}

}  // namespace
}  // namespace fjsp
