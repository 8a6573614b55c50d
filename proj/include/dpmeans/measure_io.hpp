#pragma once

#include <string>
#include <string_view>

#include "dpmeans/measure.hpp"

namespace dpmeans {

// Parses the JSON measure definition. Throws ParseError on any malformed input.
ParameterMeasure parse_measure_json(std::string_view text);
ParameterMeasure load_measure_file(const std::string& path);

// 64-bit FNV-1a digest, used as the fingerprint of a definition file.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace dpmeans
