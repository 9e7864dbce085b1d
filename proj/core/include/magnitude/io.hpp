#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "magnitude/engine.hpp"

namespace magnitude::io {

/// Square matrix from CSV or whitespace-separated rows; blank lines and lines
/// starting with '#' are skipped. Throws InvalidInput or NotSquare.
Matrix read_matrix_csv(std::istream& in);
Matrix read_matrix_csv_file(const std::string& path);

/// Comma-separated numbers, e.g. "0,1,3".
std::vector<double> parse_number_list(std::string_view text);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

nlohmann::json to_json(const WeightingResult& w);
nlohmann::json to_json(const MagnitudeFunctionSample& s);
nlohmann::json to_json(const MagnitudeFunction& f);
nlohmann::json to_json(const DefinitenessReport& r);
nlohmann::json to_json(const std::vector<ApproximationStep>& steps);

/// Renders an array of flat JSON objects as CSV. The header is the union of
/// keys in first-seen order; nested values are written as quoted JSON, nulls
/// as empty fields.
std::string csv_from_records(const nlohmann::json& records);

}  // namespace magnitude::io
