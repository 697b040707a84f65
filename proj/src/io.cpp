// SPDX-License-Identifier: Apache-2.0
#include "mamimo/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mamimo {

namespace {
std::string format_value(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.10g", v);
  return buffer;
}
}  // namespace

std::string format_curves_csv(std::span<const CurveSeries> series) {
  std::string out = "x,estimate,ci_low,ci_high,series\n";
  for (const CurveSeries& s : series) {
    for (const CurvePoint& p : s.points) {
      out += format_value(p.x);
      out += ',';
      out += format_value(p.estimate);
      out += ',';
      out += format_value(p.ci_low);
      out += ',';
      out += format_value(p.ci_high);
      out += ',';
      out += s.label;
      out += '\n';
    }
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream stream(path, std::ios::binary | std::ios::trunc);
  if (!stream) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  stream << content;
  if (!stream) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    throw std::runtime_error("cannot open for reading: " + path.string());
  }
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

nlohmann::json thresholds_to_json(const Thresholds& th) {
  return nlohmann::json{
      {"phase_delta", th.phase_delta}, {"gamma1", th.gamma1},
      {"gamma2", th.gamma2},           {"eig_ratio", th.eig_ratio},
      {"coop_floor", th.coop_floor},   {"energy_cap", th.energy_cap},
  };
}

Thresholds thresholds_from_json(const nlohmann::json& j) {
  Thresholds th;
  j.at("phase_delta").get_to(th.phase_delta);
  j.at("gamma1").get_to(th.gamma1);
  j.at("gamma2").get_to(th.gamma2);
  j.at("eig_ratio").get_to(th.eig_ratio);
  j.at("coop_floor").get_to(th.coop_floor);
  j.at("energy_cap").get_to(th.energy_cap);
  th.validate();
  return th;
}

}  // namespace mamimo
