#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "json.hpp"

#include "dpmeans/config.hpp"

namespace dpmeans::cli {

using json = nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";

enum class Format { Csv, Json };

// Shortest text that round-trips: 17 significant digits.
std::string fmt(double v);

// LO:HI:N, N equally spaced points including both ends.
std::vector<double> parse_grid(const std::string& text);

// Writes through a temporary file in the same directory and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

struct Manifest {
    std::string command;
    std::vector<std::string> argv;
    std::string measure_path;
    std::string measure_fingerprint;
    json config = json::object();
    json extra = json::object();
    std::vector<double> point_errors;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    json to_json() const;
};

json config_json(const QuadratureConfig& cfg);

// CSV text or JSON document for a table with named columns; cells are preformatted strings,
// and "FAILED" or "NaN" cells become JSON nulls with the sentinel kept in "status".
std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                         Format format, const Manifest& manifest);

// Emits the table to `out` (stdout when empty); CSV output gets `out`.manifest.json alongside.
void emit(const std::string& out, Format format, const std::vector<std::string>& header,
          const std::vector<std::vector<std::string>>& rows, const Manifest& manifest);

}  // namespace dpmeans::cli
