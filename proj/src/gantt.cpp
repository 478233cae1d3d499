#include "fjsp/gantt.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "fjsp/errors.hpp"

namespace fjsp {

namespace {

const char* const kPalette[12] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
                                  "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295"};

constexpr int kLeft = 110;
constexpr int kTop = 40;
constexpr int kLane = 40;
constexpr int kBar = 24;
constexpr int kRight = 20;
constexpr int kAxis = 30;

/// Ticks to pixels.
std::string px(std::int64_t ticks) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f",
                static_cast<double>(ticks) * kGanttScale / static_cast<double>(TimeTicks::kPerUnit));
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_gantt(const Instance& instance, const Schedule& schedule) {
  std::size_t violations = 0;
  bool broken = false;
  try {
    violations = validate(instance, schedule).size();
  } catch (const InvalidReferenceError&) {
    broken = true;
  }
  const std::size_t nm = instance.num_machines();
  const bool draw_jobs = !broken && !schedule.jobs.empty();

  std::int64_t end = 0;
  if (draw_jobs) {
    for (const ScheduledJob& sj : schedule.jobs) end = std::max(end, sj.completion.count());
    end = std::max(end, schedule.c_max.count());
  }
  const std::int64_t units = (end + TimeTicks::kPerUnit - 1) / TimeTicks::kPerUnit;
  const std::int64_t width = kLeft + units * kGanttScale + kRight;
  const std::int64_t axis_y = kTop + static_cast<std::int64_t>(nm) * kLane;
  const std::int64_t height = axis_y + kAxis;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  if (broken || violations > 0) {
    os << "<text class=\"warning\" x=\"4\" y=\"16\" fill=\"#c00000\" font-size=\"12\">warning: infeasible schedule";
    if (!broken) os << " (" << violations << " violation" << (violations == 1 ? "" : "s") << ")";
    os << "</text>\n";
  }

  for (std::size_t m = 0; m < nm; ++m) {
    const std::int64_t y = kTop + static_cast<std::int64_t>(m) * kLane;
    os << "<text x=\"4\" y=\"" << y + kLane / 2 + 4 << "\">" << escape(instance.machine(MachineId(m)).name)
       << "</text>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << y + kLane << "\" x2=\"" << width - kRight << "\" y2=\"" << y + kLane
       << "\" stroke=\"#dddddd\"/>\n";
  }

  os << "<line x1=\"" << kLeft << "\" y1=\"" << axis_y << "\" x2=\"" << width - kRight << "\" y2=\"" << axis_y
     << "\" stroke=\"black\"/>\n";
  for (std::int64_t u = 0; u <= units; ++u) {
    const std::int64_t x = kLeft + u * kGanttScale;
    os << "<line x1=\"" << x << "\" y1=\"" << axis_y << "\" x2=\"" << x << "\" y2=\"" << axis_y + (u % 5 == 0 ? 6 : 3)
       << "\" stroke=\"black\"/>\n";
    if (u % 5 == 0)
      os << "<text x=\"" << x << "\" y=\"" << axis_y + 18 << "\" text-anchor=\"middle\">" << u << "</text>\n";
  }

  if (draw_jobs) {
    os << "<g transform=\"translate(" << kLeft << ",0)\">\n";
    for (std::size_t m = 0; m < nm && m < schedule.routes.size(); ++m) {
      const Machine& machine = instance.machine(MachineId(m));
      const std::int64_t lane = kTop + static_cast<std::int64_t>(m) * kLane;
      const std::int64_t y = lane + (kLane - kBar) / 2;
      const auto& route = schedule.routes[m];
      for (JobId j : route) {
        const ScheduledJob& sj = schedule.jobs[j.value];
        const std::int64_t s = sj.start.count();
        const std::int64_t c = sj.completion.count();
        os << "<rect class=\"work\" x=\"" << px(s) << "\" y=\"" << y << "\" width=\"" << px(c - s)
           << "\" height=\"" << kBar << "\" fill=\"" << kPalette[j.value % 12] << "\" stroke=\"black\" stroke-width=\"0.5\">"
           << "<title>" << escape(instance.job(j).name) << "@" << escape(machine.name) << " " << sj.start.to_units_string()
           << "-" << sj.completion.to_units_string() << "</title></rect>\n";
        os << "<text x=\"" << px(s) << "\" y=\"" << y - 2 << "\" font-size=\"8\">" << escape(instance.job(j).name)
           << "@" << escape(machine.name) << "</text>\n";
      }
      const std::int64_t ty = lane + kLane - 3;
      auto segment = [&](std::int64_t from, std::int64_t length) {
        if (length <= 0) return;
        os << "<line class=\"travel\" x1=\"" << px(from) << "\" y1=\"" << ty << "\" x2=\"" << px(from + length)
           << "\" y2=\"" << ty << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
      };
      if (!route.empty() && machine.start_location)
        segment(0, travel_time(instance, machine, *machine.start_location, route.front()).count());
      for (std::size_t k = 0; k + 1 < route.size(); ++k)
        segment(schedule.jobs[route[k].value].completion.count(),
                travel_time(instance, machine, route[k], route[k + 1]).count());
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace fjsp
