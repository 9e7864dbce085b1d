#include "magnitude/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "magnitude/error.hpp"

namespace magnitude::io {
namespace {

double parse_double(std::string_view tok) {
  while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
  while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t' || tok.back() == '\r')) tok.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw Error(ErrorCode::InvalidInput, "not a number: '" + std::string(tok) + "'");
  return v;
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

std::string csv_field(const nlohmann::json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_structured()) return csv_field(nlohmann::json(v.dump()));
  return v.dump();
}

}  // namespace

Matrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    for (char& c : line)
      if (c == '\t' || c == ';') c = ' ';
    std::vector<double> row;
    std::string_view rest(line);
    const bool commas = rest.find(',') != std::string_view::npos;
    while (!rest.empty()) {
      const auto cut = commas ? rest.find(',') : rest.find(' ');
      const auto tok = rest.substr(0, cut);
      if (tok.find_first_not_of(" \r") != std::string_view::npos) row.push_back(parse_double(tok));
      else if (commas) throw Error(ErrorCode::InvalidInput, "empty field in matrix row");
      if (cut == std::string_view::npos) break;
      rest.remove_prefix(cut + 1);
    }
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) throw Error(ErrorCode::InvalidInput, "empty matrix");
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n)
      throw Error(ErrorCode::NotSquare, "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                            " entries, expected " + std::to_string(n));
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix read_matrix_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  return read_matrix_csv(in);
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto cut = text.find(',');
    out.push_back(parse_double(text.substr(0, cut)));
    if (cut == std::string_view::npos) break;
    text.remove_prefix(cut + 1);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidInput, "empty number list");
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << value;
  return s.str();
}

nlohmann::json to_json(const WeightingResult& w) {
  nlohmann::json j;
  j["status"] = to_string(w.status);
  j["magnitude"] = number_or_null(w.magnitude);
  j["weighting"] = w.defined() ? nlohmann::json(std::vector<double>(w.weighting.data(), w.weighting.data() + w.weighting.size()))
                               : nlohmann::json();
  j["rcond"] = number_or_null(w.rcond);
  j["residual"] = number_or_null(w.residual);
  if (!w.diagnostic.empty()) j["diagnostic"] = w.diagnostic;
  return j;
}

nlohmann::json to_json(const MagnitudeFunctionSample& s) {
  nlohmann::json j{{"t", s.t},
                   {"magnitude", s.magnitude ? nlohmann::json(*s.magnitude) : nlohmann::json()},
                   {"status", to_string(s.status)},
                   {"positive_definite", s.positive_definite},
                   {"residual", number_or_null(s.residual)}};
  if (!s.failure_reason.empty()) j["failure_reason"] = s.failure_reason;
  return j;
}

nlohmann::json to_json(const MagnitudeFunction& f) {
  auto samples = nlohmann::json::array();
  for (const auto& s : f.samples) samples.push_back(to_json(s));
  return {{"samples", samples}, {"tail_differences", f.tail_differences}};
}

nlohmann::json to_json(const DefinitenessReport& r) {
  auto pd = nlohmann::json::array();
  for (bool b : r.positive_definite_at) pd.push_back(b);
  return {{"is_positive_definite", r.is_positive_definite},
          {"t_samples", r.t_samples},
          {"positive_definite_at", pd},
          {"negative_type", to_string(r.negative_type_verdict)},
          {"cnd_max_eigenvalue", r.cnd_max_eigenvalue},
          {"distance_norm", r.distance_norm},
          {"scattered_bound_holds", r.scattered_bound_holds}};
}

nlohmann::json to_json(const std::vector<ApproximationStep>& steps) {
  auto arr = nlohmann::json::array();
  for (const auto& s : steps)
    arr.push_back({{"level", s.level},
                   {"points", s.points},
                   {"magnitude", s.magnitude ? nlohmann::json(*s.magnitude) : nlohmann::json()},
                   {"increment", number_or_null(s.increment)}});
  return arr;
}

std::string csv_from_records(const nlohmann::json& records) {
  std::vector<std::string> keys;
  const auto rows = records.is_array() ? records : nlohmann::json::array({records});
  for (const auto& r : rows)
    for (const auto& [k, _] : r.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  std::string out;
  for (std::size_t i = 0; i < keys.size(); ++i) out += (i ? "," : "") + keys[i];
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i) out += ",";
      if (r.contains(keys[i])) out += csv_field(r.at(keys[i]));
    }
    out += "\n";
  }
  return out;
}

}  // namespace magnitude::io
