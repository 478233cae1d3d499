#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fjsp/instance.hpp"
#include "fjsp/schedule.hpp"

namespace fjsp {

/// Instance file text ("format_version": 1). Jobs are referenced by name in
/// arcs, holding links and start locations; robot types by name.
std::string instance_to_json(const Instance& instance);
/// Throws ParseError (with line or field path) for malformed documents and
/// the core-model errors for data that breaks an invariant.
Instance instance_from_json(std::string_view text);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

/// Schedule file text ("format_version": 1). Times are integer ticks, with a
/// decimal time-unit copy that is ignored on load.
std::string schedule_to_json(const Instance& instance, const Schedule& schedule);
Schedule schedule_from_json(const Instance& instance, std::string_view text);

Schedule load_schedule(const Instance& instance, const std::filesystem::path& path);
void save_schedule(const Instance& instance, const Schedule& schedule, const std::filesystem::path& path);

/// Whole-file helpers; throw Error on I/O failure.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace fjsp
