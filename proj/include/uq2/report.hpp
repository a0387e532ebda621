#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace uq2 {

using Json = nlohmann::ordered_json;

enum class OutputFormat { json, csv };

struct Report {
    std::string subcommand;
    Json config = Json::object();
    Json results = Json::object();
    std::vector<std::string> warnings;
    Json timings = Json::object();

    Json to_json() const;
};

// Pretty JSON, keys in insertion order, floating values printed with %.17g.
// Throws std::domain_error on a non-finite number; callers that need to
// report one store it as a string, which is how a value gets flagged.
std::string emit_json(const Json& value);

// path,value rows for every scalar under `results`, header first.  Paths are
// dot-joined object keys and array indices.
std::string emit_csv(const Json& results);

std::string emit_report(const Report& report, OutputFormat format);

// RFC-4180 field quoting: wrap in quotes when the field holds a comma, quote,
// CR or LF, doubling embedded quotes.
std::string csv_field(const std::string& s);

std::string format_double(double v);

}  // namespace uq2
