#include "magnitude/rational.hpp"

#include <cctype>
#include <utility>

#include "magnitude/error.hpp"

namespace magnitude {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational out;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw Error(ErrorCode::InvalidInput, "not a rational: " + original);
    mpz_class d{std::string(den)};
    if (d == 0) throw Error(ErrorCode::InvalidInput, "zero denominator: " + original);
    out = Rational(mpz_class{std::string(num)}, d);
  } else {
    const auto dot = text.find('.');
    const auto whole = text.substr(0, dot);
    const auto frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)) || (dot != std::string_view::npos && frac.empty() && whole.empty()))
      throw Error(ErrorCode::InvalidInput, "not a rational: " + original);
    mpz_class num{whole.empty() ? std::string("0") : std::string(whole)};
    mpz_class den = 1;
    for (char c : frac) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
    out = Rational(num, den);
  }
  out.canonicalize();
  if (negative) out = -out;
  return out;
}

std::string to_string(const Rational& value) { return value.get_str(); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational out = 1;
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

std::vector<Rational> solve_vandermonde(const std::vector<Rational>& nodes, const std::vector<Rational>& values) {
  const std::size_t m = nodes.size();
  if (values.size() != m || m == 0) throw Error(ErrorCode::InvalidInput, "node/value count mismatch");
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
  for (std::size_t r = 0; r < m; ++r) {
    Rational p = 1;
    for (std::size_t c = 0; c < m; ++c) {
      a[r][c] = p;
      p *= nodes[r];
    }
    a[r][m] = values[r];
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && a[pivot][col] == 0) ++pivot;
    if (pivot == m) throw Error(ErrorCode::InvalidInput, "repeated Vandermonde node");
    std::swap(a[pivot], a[col]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<Rational> out(m);
  for (std::size_t r = 0; r < m; ++r) out[r] = a[r][m] / a[r][r];
  return out;
}

Rational evaluate_polynomial(const std::vector<Rational>& coefficients, const Rational& x) {
  Rational acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace magnitude
