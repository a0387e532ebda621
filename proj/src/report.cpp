#include "uq2/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace uq2 {

Json Report::to_json() const {
    Json j = Json::object();
    j["subcommand"] = subcommand;
    j["config"] = config;
    j["results"] = results;
    j["warnings"] = warnings;
    j["timings"] = timings;
    return j;
}

std::string format_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("non-finite value in report");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    // keep the value recognisably floating point
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

namespace {

std::string scalar_text(const Json& v) {
    switch (v.type()) {
        case Json::value_t::number_float: return format_double(v.get<double>());
        case Json::value_t::number_integer: return std::to_string(v.get<long long>());
        case Json::value_t::number_unsigned: return std::to_string(v.get<unsigned long long>());
        case Json::value_t::boolean: return v.get<bool>() ? "true" : "false";
        case Json::value_t::null: return "null";
        default: return v.dump();
    }
}

void write_json(const Json& v, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(2 * depth), ' ');
    if (v.is_object()) {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad + Json(it.key()).dump() + ": ";
            write_json(it.value(), depth + 1, out);
        }
        out += "\n" + close + "}";
    } else if (v.is_array()) {
        if (v.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ",\n";
            out += pad;
            write_json(v[i], depth + 1, out);
        }
        out += "\n" + close + "]";
    } else {
        out += scalar_text(v);
    }
}

void flatten(const Json& v, const std::string& path, std::string& out) {
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it)
            flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i)
            flatten(v[i], path.empty() ? std::to_string(i) : path + "." + std::to_string(i), out);
    } else {
        const std::string value = v.is_string() ? v.get<std::string>() : scalar_text(v);
        out += csv_field(path) + "," + csv_field(value) + "\r\n";
    }
}

}  // namespace

std::string emit_json(const Json& value) {
    std::string out;
    write_json(value, 0, out);
    out += "\n";
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string emit_csv(const Json& results) {
    std::string out = "path,value\r\n";
    flatten(results, "", out);
    return out;
}

std::string emit_report(const Report& report, OutputFormat format) {
    return format == OutputFormat::json ? emit_json(report.to_json()) : emit_csv(report.results);
}

}  // namespace uq2
