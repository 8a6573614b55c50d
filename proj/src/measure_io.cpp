#include "dpmeans/measure_io.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dpmeans {

namespace {

using json = nlohmann::json;

double number(const json& j, const std::string& what) {
    if (!j.is_number()) throw ParseError(what + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(what + " must be finite");
    return v;
}

const json& member(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string("missing key '") + key + "'");
    return *it;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) throw ParseError("unexpected key '" + it.key() + "' in " + where);
    }
}

void check_total(const json& doc, double actual) {
    auto it = doc.find("total_mass");
    if (it == doc.end()) return;
    const double declared = number(*it, "total_mass");
    if (std::abs(declared - actual) > 1e-9 * std::max(1.0, std::abs(actual)))
        throw ParseError("total_mass does not match the measure");
}

ParameterMeasure build(const json& doc) {
    if (!doc.is_object()) throw ParseError("measure definition must be a JSON object");
    check_keys(doc, {"kind", "total_mass", "atoms", "params", "density_table"}, "measure definition");
    const json& kind_j = member(doc, "kind");
    if (!kind_j.is_string()) throw ParseError("kind must be a string");
    const std::string kind = kind_j.get<std::string>();

    if (kind == "discrete") {
        const json& arr = member(doc, "atoms");
        if (!arr.is_array() || arr.empty()) throw ParseError("atoms must be a non-empty array");
        std::vector<Atom> atoms;
        std::set<double> seen;
        for (const json& a : arr) {
            if (!a.is_object()) throw ParseError("each atom must be an object");
            check_keys(a, {"x", "mass"}, "atom");
            const double x = number(member(a, "x"), "atom x");
            const double m = number(member(a, "mass"), "atom mass");
            if (!(m > 0.0)) throw ParseError("atom mass must be positive");
            if (!seen.insert(x).second) throw ParseError("atom locations must be distinct");
            atoms.push_back({x, m});
        }
        ParameterMeasure pm = ParameterMeasure::discrete(std::move(atoms));
        check_total(doc, pm.total_mass());
        return pm;
    }
    if (kind == "cauchy") {
        const json& p = member(doc, "params");
        if (!p.is_object()) throw ParseError("params must be an object");
        check_keys(p, {"theta", "sigma"}, "params");
        const double theta = number(member(p, "theta"), "theta");
        const json& sj = member(p, "sigma");
        double sigma;
        if (sj.is_string()) {
            if (sj.get<std::string>() != "inf") throw ParseError("sigma must be a number or \"inf\"");
            sigma = std::numeric_limits<double>::infinity();
        } else {
            sigma = number(sj, "sigma");
            if (!(sigma > 0.0)) throw ParseError("sigma must be positive");
        }
        if (doc.contains("total_mass") && number(doc["total_mass"], "total_mass") != 1.0)
            throw ParseError("a cauchy measure has total_mass 1");
        return ParameterMeasure::cauchy(theta, sigma);
    }
    if (kind == "gaussian") {
        const double mass = number(member(doc, "total_mass"), "total_mass");
        const json& p = member(doc, "params");
        if (!p.is_object()) throw ParseError("params must be an object");
        check_keys(p, {"theta", "sigma"}, "params");
        const double theta = number(member(p, "theta"), "theta");
        const double sd = number(member(p, "sigma"), "sigma");
        if (!(mass > 0.0) || !(sd > 0.0)) throw ParseError("gaussian needs total_mass > 0 and sigma > 0");
        return ParameterMeasure::gaussian(mass, theta, sd);
    }
    if (kind == "uniform01") {
        const double mass = number(member(doc, "total_mass"), "total_mass");
        if (!(mass > 0.0)) throw ParseError("total_mass must be positive");
        return ParameterMeasure::uniform01(mass);
    }
    if (kind == "density-table") {
        const double mass = number(member(doc, "total_mass"), "total_mass");
        if (!(mass > 0.0)) throw ParseError("total_mass must be positive");
        const json& arr = member(doc, "density_table");
        if (!arr.is_array() || arr.size() < 2) throw ParseError("density_table needs at least two rows");
        std::vector<double> x, pdf;
        for (const json& row : arr) {
            if (!row.is_array() || row.size() != 2) throw ParseError("density_table rows must be [x, pdf] pairs");
            x.push_back(number(row[0], "density_table x"));
            pdf.push_back(number(row[1], "density_table pdf"));
        }
        try {
            return ParameterMeasure::density_table(std::move(x), std::move(pdf), mass);
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what());
        }
    }
    throw ParseError("unknown measure kind '" + kind + "'");
}

}  // namespace

ParameterMeasure parse_measure_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        return build(doc);
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
}

ParameterMeasure load_measure_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open measure file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_measure_json(ss.str());
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

}  // namespace dpmeans
