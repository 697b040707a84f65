// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "mamimo/harness.hpp"

namespace mamimo {

// Curve series rendered as CSV: header "x,estimate,ci_low,ci_high,series",
// one row per point, '.' decimal, LF line endings, %.10g values. The
// rendering is locale-independent so identical inputs give identical bytes.
std::string format_curves_csv(std::span<const CurveSeries> series);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

nlohmann::json thresholds_to_json(const Thresholds& th);
Thresholds thresholds_from_json(const nlohmann::json& j);

}  // namespace mamimo
