#pragma once

#include <json.hpp>
#include <string>

#include "cohen/asymptotics.hpp"
#include "cohen/expansions.hpp"

namespace cohen {

// Bumped whenever a field is renamed or removed.
inline constexpr int kReportSchema = 1;

nlohmann::json to_json(const ExpansionReport& report);
nlohmann::json to_json(const AsymptoticReport& report);

// One checkpoint per row: Q,partial_sum,abs_error
std::string to_csv(const ExpansionReport& report);
// One checkpoint per row: N,lhs,N_rhs,ratio
std::string to_csv(const AsymptoticReport& report);
// Two whitespace-separated columns, N and ratio, for external plotting.
std::string plot_data(const AsymptoticReport& report);

}  // namespace cohen
