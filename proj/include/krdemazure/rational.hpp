#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace krd {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

inline bool is_integer(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

// Exact conversion; throws when the value is not an integer or does not fit.
inline long long to_integer(const Rational& r) {
  if (!is_integer(r)) throw std::domain_error("rational is not an integer: " + r.str());
  const BigInt n = boost::multiprecision::numerator(r);
  if (n > BigInt(INT64_MAX) || n < BigInt(INT64_MIN))
    throw std::overflow_error("integer does not fit in 64 bits");
  return n.convert_to<long long>();
}

// Text form "p" or "p/q" with q > 0.
inline std::string to_string(const Rational& r) {
  const BigInt n = boost::multiprecision::numerator(r);
  const BigInt d = boost::multiprecision::denominator(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational: " + text);
  }
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / boost::multiprecision::gcd(a, b) * b);
}

using RationalMatrix = std::vector<std::vector<Rational>>;

// Solves M x = b exactly by Gauss-Jordan elimination; M must be square and invertible.
inline std::vector<Rational> solve_linear(RationalMatrix m, std::vector<Rational> b) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::domain_error("singular matrix in solve_linear");
    std::swap(m[pivot], m[col]);
    std::swap(b[pivot], b[col]);
    const Rational inv = 1 / m[col][col];
    for (std::size_t k = col; k < n; ++k) m[col][k] *= inv;
    b[col] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational factor = m[row][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] -= factor * m[col][k];
      b[row] -= factor * b[col];
    }
  }
  return b;
}

inline RationalMatrix invert(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix result(n, std::vector<Rational>(n));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> e(n, Rational(0));
    e[j] = 1;
    const auto col = solve_linear(m, e);
    for (std::size_t i = 0; i < n; ++i) result[i][j] = col[i];
  }
  return result;
}

}  // namespace krd
