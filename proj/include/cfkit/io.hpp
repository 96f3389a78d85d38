#pragma once

// Machine-readable output: JSON mirrors of every public type and the fixed
// CSV trace formats. Rationals and exact integers serialize as decimal
// strings; schedules carry both exact values (when present) and logs.

#include "cfkit/diagnostics.hpp"
#include "cfkit/dimension.hpp"

#include <json.hpp>

#include <string>

namespace cfkit {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

json json_of(const basic_interval& iv);
json json_of(const expansion& e);
json json_of(const exponent_estimate& est);
json json_of(const ratio_trace& tr);
json json_of(const std::vector<std::pair<long, double>>& levy);
json json_of(const approximation_rate& r);
json json_of(const construction_params& p);
json json_of(const schedule& s);
json json_of(const membership_report_t& rep);
json json_of(const std::vector<measure_probe>& probes);

// "n,ratio,running_sup" / "n,levy" rows.
std::string csv_of(const ratio_trace& tr);
std::string csv_of(const std::vector<std::pair<long, double>>& levy);

// Temp-then-rename so rerun outputs are either absent or complete.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace cfkit
