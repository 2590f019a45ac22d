#include "schema_check.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace schema {

namespace {

using nlohmann::json;

json load(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open schema " + p.string());
    return json::parse(in);
}

bool has_type(const json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    if (t == "integer") return v.is_number_integer() || (v.is_number_float() && v.get<double>() == static_cast<long long>(v.get<double>()));
    if (t == "number") return v.is_number();
    return false;
}

void check(const json& v, const json& s, const std::filesystem::path& dir, const std::string& where,
           std::vector<std::string>& errors) {
    if (s.contains("$ref")) {
        check(v, load(dir / s["$ref"].get<std::string>()), dir, where, errors);
        return;
    }
    if (s.contains("type")) {
        bool ok = false;
        if (s["type"].is_array()) {
            for (const auto& t : s["type"]) ok = ok || has_type(v, t.get<std::string>());
        } else {
            ok = has_type(v, s["type"].get<std::string>());
        }
        if (!ok) {
            errors.push_back(where + ": wrong type " + std::string(v.type_name()));
            return;
        }
    }
    if (s.contains("enum")) {
        bool found = false;
        for (const auto& e : s["enum"]) found = found || e == v;
        if (!found) errors.push_back(where + ": value " + v.dump() + " not in enum");
    }
    if (v.is_number()) {
        if (s.contains("minimum") && v.get<double>() < s["minimum"].get<double>()) errors.push_back(where + ": below minimum");
        if (s.contains("maximum") && v.get<double>() > s["maximum"].get<double>()) errors.push_back(where + ": above maximum");
    }
    if (v.is_object()) {
        for (const auto& r : s.value("required", json::array())) {
            if (!v.contains(r.get<std::string>())) errors.push_back(where + ": missing " + r.get<std::string>());
        }
        const json props = s.value("properties", json::object());
        for (const auto& [key, val] : v.items()) {
            if (props.contains(key)) {
                check(val, props[key], dir, where + "." + key, errors);
            } else if (s.contains("additionalProperties") && s["additionalProperties"] == false) {
                errors.push_back(where + ": unexpected property " + key);
            }
        }
    }
    if (v.is_array() && s.contains("items")) {
        for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s["items"], dir, where + "[" + std::to_string(i) + "]", errors);
    }
}

// Splits one CSV line, honouring double-quoted fields.
std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    return out;
}

json cell_value(const std::string& text, const std::string& type) {
    if (type == "string") return text;
    char* end = nullptr;
    if (type == "integer") {
        const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
        if (text.empty() || *end != '\0' || text[0] == '-') return nullptr;
        return v;
    }
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || *end != '\0') return nullptr;
    return v;
}

}  // namespace

std::vector<std::string> validate(const nlohmann::json& doc, const std::filesystem::path& schema_file) {
    std::vector<std::string> errors;
    check(doc, load(schema_file), schema_file.parent_path(), "$", errors);
    return errors;
}

std::vector<std::string> validate_csv(const std::string& csv, const std::filesystem::path& schema_file) {
    const json s = load(schema_file);
    const json& cols = s["columns"];
    std::vector<std::string> errors;
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) return {"empty CSV"};
    const auto header = fields(line);
    if (header.size() != cols.size()) errors.push_back("header has " + std::to_string(header.size()) + " columns");
    for (std::size_t j = 0; j < std::min(header.size(), cols.size()); ++j) {
        if (header[j] != cols[j]["name"]) errors.push_back("header column " + std::to_string(j) + " is " + header[j]);
    }
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const auto f = fields(line);
        if (f.size() != cols.size()) {
            errors.push_back("row " + std::to_string(row) + " has " + std::to_string(f.size()) + " fields");
            continue;
        }
        for (std::size_t j = 0; j < f.size(); ++j) {
            const std::string type = cols[j]["type"];
            const json v = cell_value(f[j], type);
            const std::string where = "row " + std::to_string(row) + " " + cols[j]["name"].get<std::string>();
            if (v.is_null()) {
                errors.push_back(where + ": not a " + type);
                continue;
            }
            json cell_schema = cols[j];
            cell_schema.erase("name");
            check(v, cell_schema, schema_file.parent_path(), where, errors);
        }
    }
    return errors;
}

}  // namespace schema
