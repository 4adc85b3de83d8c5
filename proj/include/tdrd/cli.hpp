#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace tdrd {

/// Exit codes: 0 success, 1 config/validation error, 2 parabolicity
/// violated where required, 3 numerical failure (including a failed
/// verify-example row).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Checks an emitted report against the schema of its "command" field.
/// Throws ConfigError naming the offending key.
void validate_report(const nlohmann::json& report);

/// CSV with header t,x,c1..cm, one row per (t, x); x is empty in 0D.
struct Trajectory;
void write_trajectory_csv(std::ostream& os, const Trajectory& t);

}  // namespace tdrd
