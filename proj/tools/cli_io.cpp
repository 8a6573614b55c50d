#include "cli_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include <boost/version.hpp>

#include "dpmeans/errors.hpp"
#include "dpmeans/mc_oracle.hpp"
#include "dpmeans/parallel.hpp"

namespace dpmeans::cli {

std::string fmt(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() != 3) throw InvalidArgument("grid must be LO:HI:N");
    double lo, hi;
    long n;
    try {
        std::size_t k1, k2, k3;
        lo = std::stod(parts[0], &k1);
        hi = std::stod(parts[1], &k2);
        n = std::stol(parts[2], &k3);
        if (k1 != parts[0].size() || k2 != parts[1].size() || k3 != parts[2].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw InvalidArgument("grid must be LO:HI:N with numeric fields");
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw InvalidArgument("grid ends must be finite");
    if (n < 1 || n > 10000000) throw InvalidArgument("grid size must be between 1 and 1e7");
    if (n == 1) return {lo};
    if (!(hi > lo)) throw InvalidArgument("grid needs LO < HI");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) g[i] = i == n - 1 ? hi : lo + (hi - lo) * double(i) / double(n - 1);
    return g;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
        if (!o) throw Error("cannot write '" + tmp.string() + "'");
        o << content;
        o.flush();
        if (!o) {
            o.close();
            fs::remove(tmp);
            throw Error("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("cannot move output into '" + path + "': " + ec.message());
    }
}

json config_json(const QuadratureConfig& cfg) {
    return {{"abs_tol", cfg.abs_tol},
            {"rel_tol", cfg.rel_tol},
            {"max_subdivisions", cfg.max_subdivisions},
            {"eps_schedule", cfg.eps_schedule},
            {"limit_tol", cfg.limit_tol},
            {"limit_fail_tol", cfg.limit_fail_tol},
            {"loop_eps", cfg.loop_eps},
            {"loop_tau", cfg.loop_tau},
            {"pv_R_schedule_size", cfg.pv_R_schedule.size()},
            {"truncation_tol", cfg.truncation_tol},
            {"truncation_max_level", cfg.truncation_max_level},
            {"grid_level", cfg.grid_level}};
}

json Manifest::to_json() const {
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json j;
    j["command"] = command;
    j["argv"] = argv;
    if (!measure_path.empty()) {
        j["measure_file"] = measure_path;
        j["measure_fingerprint"] = "fnv1a64:" + measure_fingerprint;
    }
    j["config"] = config;
    j["versions"] = {{"dpmeans", kVersion},
                     {"compiler", __VERSION__},
                     {"boost", BOOST_LIB_VERSION},
                     {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
    j["threads"] = thread_count();
    j["wall_time_s"] = wall;
    json errs = json::array();
    for (double e : point_errors) errs.push_back(std::isfinite(e) ? json(e) : json("FAILED"));
    j["point_errors"] = errs;
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    return j;
}

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                         Format format, const Manifest& manifest) {
    std::ostringstream out;
    if (format == Format::Csv) {
        for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
        out << '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
            out << '\n';
        }
        return out.str();
    }
    json arr = json::array();
    for (const auto& r : rows) {
        json o = json::object();
        for (std::size_t i = 0; i < header.size() && i < r.size(); ++i) {
            const std::string& cell = r[i];
            if (cell == "FAILED" || cell == "NaN") {
                o[header[i]] = nullptr;
                o["status"] = "FAILED";
                continue;
            }
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end && *end == '\0' && !cell.empty()) o[header[i]] = v;
            else o[header[i]] = cell;
        }
        arr.push_back(o);
    }
    json doc = {{"columns", header}, {"rows", arr}, {"manifest", manifest.to_json()}};
    return doc.dump(2) + "\n";
}

void emit(const std::string& out, Format format, const std::vector<std::string>& header,
          const std::vector<std::vector<std::string>>& rows, const Manifest& manifest) {
    const std::string body = render_table(header, rows, format, manifest);
    if (out.empty()) {
        std::cout << body;
        if (format == Format::Csv) std::cerr << manifest.to_json().dump() << '\n';
        return;
    }
    if (format == Format::Csv) write_atomic(out + ".manifest.json", manifest.to_json().dump(2) + "\n");
    write_atomic(out, body);
}

}  // namespace dpmeans::cli
