#pragma once

#include <string>

#include "fjsp/instance.hpp"
#include "fjsp/schedule.hpp"

namespace fjsp {

/// Pixels per time unit.
inline constexpr int kGanttScale = 10;

/// SVG chart: one lane per machine (by id, top to bottom), one rectangle per
/// (job, machine) visit colored by job index, black segments for travel.
/// Infeasible schedules are drawn under a warning banner.
std::string render_gantt(const Instance& instance, const Schedule& schedule);

}  // namespace fjsp
