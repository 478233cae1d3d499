#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

#include "fjsp/instances.hpp"
#include "fjsp/io.hpp"
#include "fjsp/mip.hpp"
#include "fjsp/solver.hpp"

namespace fjsp {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fjsp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  CliRun run(const std::string& args) const {
    const std::string cmd =
        std::string(FJSP_CLI) + " " + args + " > " + path("stdout.txt") + " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_text(path("stdout.txt")), read_text(path("stderr.txt"))};
  }

  fs::path dir_;
};

TEST_F(Cli, SolveShippedInstance) {
  ASSERT_EQ(run("gen --out " + path("panel.json")).code, 0);
  const CliRun r = run("solve " + path("panel.json") + " --out " + path("best.json"));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("proved_optimal: true"), std::string::npos);
  const Instance in = load_instance(path("panel.json"));
  const Schedule s = load_schedule(in, path("best.json"));
  EXPECT_TRUE(validate(in, s).empty());
  EXPECT_NE(r.out.find("makespan: " + s.c_max.to_units_string() + "\n"), std::string::npos);
  EXPECT_EQ(run("validate " + path("panel.json") + " " + path("best.json")).code, 0);
}

TEST_F(Cli, SolveBudgetLimitedAndInfeasible) {
  ASSERT_EQ(run("gen --panels 2 --shift 100 --out " + path("two.json")).code, 0);
  const CliRun r = run("solve " + path("two.json") + " --max-nodes 300");
  EXPECT_EQ(r.code, 2) << r.out << r.err;
  EXPECT_NE(r.out.find("proved_optimal: false"), std::string::npos);

  InstanceData d;
  d.operation_types = {"move"};
  d.robot_types = {"bot"};
  d.efficiency = {{1}};
  d.machines = {{"m", RobotTypeId(0), 30, {}}};
  d.jobs = {{"a", {{{{OperationTypeId(0)}}}}}, {"b", {{{{OperationTypeId(0)}}}}}, {"c", {{{{OperationTypeId(0)}}}}}};
  d.distances.assign(3, std::vector<int>(3, 0));
  d.dag = {{JobId(0), JobId(1)}, {JobId(0), JobId(2)}};
  d.holding = {{JobId(0), JobId(1), {{0, 0}}}, {JobId(0), JobId(2), {{0, 0}}}};
  save_instance(Instance(d), path("stuck.json"));
  EXPECT_EQ(run("solve " + path("stuck.json")).code, 3);
}

TEST_F(Cli, TamperedScheduleFailsValidation) {
  const Instance in = solar_panel_instance();
  save_instance(in, path("panel.json"));
  Schedule s = *solve_exact(in).best_schedule;
  const JobId ja = *in.find_job("Ja");
  s.jobs[ja.value].start = s.jobs[ja.value].start - TimeTicks(1);
  save_schedule(in, s, path("tampered.json"));
  const CliRun r = run("validate " + path("panel.json") + " " + path("tampered.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("PRECEDENCE: "), std::string::npos) << r.out;
}

TEST_F(Cli, GanttIsByteIdentical) {
  const Instance in = solar_panel_instance();
  save_instance(in, path("panel.json"));
  save_schedule(in, *solve_exact(in).best_schedule, path("best.json"));
  ASSERT_EQ(run("gantt " + path("panel.json") + " " + path("best.json") + " --out " + path("a.svg")).code, 0);
  ASSERT_EQ(run("gantt " + path("panel.json") + " " + path("best.json") + " --out " + path("b.svg")).code, 0);
  EXPECT_EQ(read_text(path("a.svg")), read_text(path("b.svg")));
  EXPECT_EQ(read_text(path("a.svg")), read_text(std::string(FJSP_GOLDEN_DIR) + "/single_panel.svg"));
}

TEST_F(Cli, ExportAndImportSolution) {
  const Instance in = solar_panel_instance();
  save_instance(in, path("panel.json"));
  ASSERT_EQ(run("export-mip " + path("panel.json") + " --out " + path("model.lp")).code, 0);
  EXPECT_EQ(read_text(path("model.lp")), read_text(std::string(FJSP_GOLDEN_DIR) + "/single_panel.lp"));
  const Schedule best = *solve_exact(in).best_schedule;
  write_text(path("sol.txt"), export_solution(build_mip(in), best));
  const CliRun r = run("import-solution " + path("panel.json") + " " + path("model.lp") + " " + path("sol.txt") +
                    " --out " + path("back.json"));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(load_schedule(in, path("back.json")), best);
  save_instance(reduced_rl_instance(), path("reduced.json"));
  const CliRun mismatch = run("import-solution " + path("reduced.json") + " " + path("model.lp") + " " + path("sol.txt"));
  EXPECT_EQ(mismatch.code, 4);
}

TEST_F(Cli, TrainAndRollout) {
  ASSERT_EQ(run("gen --reduced --out " + path("reduced.json")).code, 0);
  const std::string train = "train-rl " + path("reduced.json") + " --episodes 20000 --seed 2 --out ";
  ASSERT_EQ(run(train + path("q1.json") + " --curve " + path("c1.csv")).code, 0);
  ASSERT_EQ(run(train + path("q2.json") + " --curve " + path("c2.csv")).code, 0);
  EXPECT_EQ(read_text(path("q1.json")), read_text(path("q2.json")));
  EXPECT_EQ(read_text(path("c1.csv")).rfind("episode,total_reward\n0,", 0), 0u);
  const CliRun r = run("rollout " + path("reduced.json") + " " + path("q1.json") + " --out " + path("rl.json"));
  EXPECT_TRUE(r.code == 0 || r.code == 1) << r.err;
  EXPECT_NE(r.out.find("total_reward: "), std::string::npos);
  if (r.code == 0) EXPECT_EQ(run("validate " + path("reduced.json") + " " + path("rl.json")).code, 0);
}

TEST_F(Cli, ErrorsUsePrefixAndExitCode) {
  CliRun r = run("solve " + path("missing.json"));
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(r.err.rfind("error: ", 0), 0u) << r.err;
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
  r = run("frobnicate");
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(r.err.rfind("error: ", 0), 0u);
  write_text(path("bad.json"), "{\"format_version\": 1,\n \"jobs\": [}\n");
  r = run("solve " + path("bad.json"));
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  r = run("gen --panels 0 --out " + path("none.json"));
  EXPECT_EQ(r.code, 4);
}

}  // namespace
}  // namespace fjsp
