#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cohort/ip_model.hpp"

namespace cohort {

/// Writes `model` in CPLEX LP text format: Minimize, Subject To, Bounds,
/// Binaries, End. Section order and number formatting are fixed, so equal
/// models produce identical bytes.
void write_lp(const IpModel& model, std::ostream& out);
std::string to_lp_string(const IpModel& model);

/// Throws InputError when the file cannot be written.
void export_lp(const IpModel& model, const std::filesystem::path& path);

}  // namespace cohort
