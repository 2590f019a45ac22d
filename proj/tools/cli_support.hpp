#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "hullscope/point_set.hpp"

namespace hullscope::cli {

/// Expands `2:1024:x2` (geometric), `1:10` or `0:100:+5` (arithmetic) and comma lists of those.
std::vector<std::size_t> parse_grid(const std::string& text);

/// Comma-separated reals.
std::vector<double> parse_reals(const std::string& text);

/// Numeric CSV: one point per line, blank lines and lines starting with '#' ignored.
PointSet read_points_csv(const std::filesystem::path& path);
PointSet parse_points_csv(const std::string& text, const std::string& origin);

std::string format_double(double v);

/// Provenance record attached to every output.
class Manifest {
public:
    Manifest(std::string subcommand, std::uint64_t seed);
    nlohmann::json& params() { return params_; }
    void finish();
    nlohmann::json to_json() const;

private:
    std::string subcommand_;
    std::uint64_t seed_;
    nlohmann::json params_ = nlohmann::json::object();
    std::string started_;
    std::string finished_;
};

std::string utc_timestamp();

}  // namespace hullscope::cli
