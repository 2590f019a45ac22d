#include "cli_support.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "hullscope/errors.hpp"

namespace hullscope::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::size_t parse_count(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
        throw InvalidInput("'" + text + "' is not a nonnegative integer");
    }
    errno = 0;
    const unsigned long long v = std::strtoull(t.c_str(), nullptr, 10);
    if (errno == ERANGE) throw InvalidInput("'" + text + "' is out of range");
    return static_cast<std::size_t>(v);
}

double parse_real(const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
        throw InvalidInput("'" + text + "' is not a finite number");
    }
    return v;
}

}  // namespace

std::vector<std::size_t> parse_grid(const std::string& text) {
    std::vector<std::size_t> out;
    for (const std::string& item : split(text, ',')) {
        const std::vector<std::string> parts = split(item, ':');
        if (parts.size() == 1) {
            out.push_back(parse_count(parts[0]));
            continue;
        }
        if (parts.size() > 3) throw InvalidInput("bad grid item '" + item + "'");
        const std::size_t start = parse_count(parts[0]);
        const std::size_t end = parse_count(parts[1]);
        if (start > end) throw InvalidInput("grid '" + item + "' runs backwards");
        std::string step = parts.size() == 3 ? trim(parts[2]) : "+1";
        if (!step.empty() && step[0] == 'x') {
            const std::size_t factor = parse_count(step.substr(1));
            if (factor < 2 || start == 0) throw InvalidInput("geometric grid needs factor >= 2 and start >= 1");
            for (std::size_t v = start; v <= end; v *= factor) {
                out.push_back(v);
                if (v > end / factor) break;
            }
        } else {
            if (!step.empty() && step[0] == '+') step = step.substr(1);
            const std::size_t inc = parse_count(step);
            if (inc == 0) throw InvalidInput("grid step must be positive");
            for (std::size_t v = start; v <= end; v += inc) out.push_back(v);
        }
    }
    if (out.empty()) throw InvalidInput("empty grid");
    return out;
}

std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> out;
    for (const std::string& item : split(text, ',')) out.push_back(parse_real(item));
    if (out.empty()) throw InvalidInput("empty list");
    return out;
}

PointSet parse_points_csv(const std::string& text, const std::string& origin) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        try {
            rows.push_back(parse_reals(t));
        } catch (const InvalidInput& e) {
            throw InvalidInput(origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (rows.back().size() != rows.front().size()) {
            throw InvalidInput(origin + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(rows.front().size()) + " columns");
        }
    }
    if (rows.empty()) throw InvalidInput(origin + ": no data rows");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return PointSet(std::move(m));
}

PointSet read_points_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_points_csv(buf.str(), path.string());
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Manifest::Manifest(std::string subcommand, std::uint64_t seed)
    : subcommand_(std::move(subcommand)), seed_(seed), started_(utc_timestamp()) {}

void Manifest::finish() { finished_ = utc_timestamp(); }

nlohmann::json Manifest::to_json() const {
    return {{"subcommand", subcommand_},
            {"params", params_},
            {"seed", seed_},
            {"tool_version", HULLSCOPE_VERSION},
            {"started", started_},
            {"finished", finished_.empty() ? utc_timestamp() : finished_}};
}

}  // namespace hullscope::cli
