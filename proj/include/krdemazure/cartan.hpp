#pragma once

// Affine Cartan data for the nonexceptional affine types, the weight lattice P
// and its classical quotient, the invariant form and the standard pairings.

#include "rational.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace krd {

enum class AffineType {
  A1,      // A_n^(1)
  B1,      // B_n^(1)
  C1,      // C_n^(1)
  D1,      // D_n^(1)
  A2Odd,   // A_{2n-1}^(2)
  A2Even,  // A_{2n}^(2)
  D2       // D_{n+1}^(2)
};

inline std::string type_label(AffineType t, int n) {
  const std::string ns = std::to_string(n);
  switch (t) {
    case AffineType::A1: return "A_" + ns + "^(1)";
    case AffineType::B1: return "B_" + ns + "^(1)";
    case AffineType::C1: return "C_" + ns + "^(1)";
    case AffineType::D1: return "D_" + ns + "^(1)";
    case AffineType::A2Odd: return "A_" + std::to_string(2 * n - 1) + "^(2)";
    case AffineType::A2Even: return "A_" + std::to_string(2 * n) + "^(2)";
    case AffineType::D2: return "D_" + std::to_string(n + 1) + "^(2)";
  }
  return "?";
}

// Accepts the short names used on the command line (A, B, C, D, A2odd, A2even, D2)
// as well as the untwisted names with an explicit "^(1)" suffix.
inline AffineType parse_type(const std::string& text) {
  static const std::map<std::string, AffineType> names = {
      {"A", AffineType::A1},        {"A1", AffineType::A1},         {"B", AffineType::B1},
      {"B1", AffineType::B1},       {"C", AffineType::C1},          {"C1", AffineType::C1},
      {"D", AffineType::D1},        {"D1", AffineType::D1},         {"A2odd", AffineType::A2Odd},
      {"A2even", AffineType::A2Even}, {"D2", AffineType::D2}};
  auto it = names.find(text);
  if (it == names.end()) throw std::invalid_argument("unknown affine type label: " + text);
  return it->second;
}

inline int min_rank(AffineType t) {
  switch (t) {
    case AffineType::A1: return 1;
    case AffineType::B1: return 3;
    case AffineType::C1: return 2;
    case AffineType::D1: return 4;
    case AffineType::A2Odd: return 3;
    case AffineType::A2Even: return 1;
    case AffineType::D2: return 2;
  }
  return 1;
}

// Element of P written as sum_i lambda[i] * aff(cl(Lambda_i)) + (delta / a_0) * delta_root.
// The lifts aff(cl(Lambda_i)) pair to zero with d, so `delta` is exactly <lambda, d>.
struct AffineWeight {
  std::vector<long long> lambda;
  Rational delta{0};

  bool operator==(const AffineWeight&) const = default;
  bool operator<(const AffineWeight& o) const {
    if (lambda != o.lambda) return lambda < o.lambda;
    return delta < o.delta;
  }
  AffineWeight& operator+=(const AffineWeight& o) {
    for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] += o.lambda[i];
    delta += o.delta;
    return *this;
  }
  AffineWeight& operator-=(const AffineWeight& o) {
    for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] -= o.lambda[i];
    delta -= o.delta;
    return *this;
  }
  friend AffineWeight operator+(AffineWeight a, const AffineWeight& b) { return a += b; }
  friend AffineWeight operator-(AffineWeight a, const AffineWeight& b) { return a -= b; }
  friend AffineWeight operator*(long long k, AffineWeight a) {
    for (auto& x : a.lambda) x *= k;
    a.delta *= k;
    return a;
  }
};

// Element of P_cl: the Lambda-coefficients only.
struct ClassicalWeight {
  std::vector<long long> lambda;

  bool operator==(const ClassicalWeight&) const = default;
  auto operator<=>(const ClassicalWeight&) const = default;
  ClassicalWeight& operator+=(const ClassicalWeight& o) {
    for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] += o.lambda[i];
    return *this;
  }
  ClassicalWeight& operator-=(const ClassicalWeight& o) {
    for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] -= o.lambda[i];
    return *this;
  }
  friend ClassicalWeight operator+(ClassicalWeight a, const ClassicalWeight& b) { return a += b; }
  friend ClassicalWeight operator-(ClassicalWeight a, const ClassicalWeight& b) { return a -= b; }
  friend ClassicalWeight operator*(long long k, ClassicalWeight a) {
    for (auto& x : a.lambda) x *= k;
    return a;
  }
};

inline std::string to_string(const ClassicalWeight& w) {
  std::string s = "Λ[";
  for (std::size_t i = 0; i < w.lambda.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w.lambda[i]);
  }
  return s + "]";
}

// Dynkin diagram automorphism stored as the permutation i -> perm[i].
struct DynkinAuto {
  std::vector<int> perm;

  static DynkinAuto identity(int size) {
    DynkinAuto t;
    t.perm.resize(size);
    std::iota(t.perm.begin(), t.perm.end(), 0);
    return t;
  }
  int operator()(int i) const { return perm.at(i); }
  bool is_identity() const {
    for (std::size_t i = 0; i < perm.size(); ++i)
      if (perm[i] != static_cast<int>(i)) return false;
    return true;
  }
  DynkinAuto inverse() const {
    DynkinAuto t;
    t.perm.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) t.perm[perm[i]] = static_cast<int>(i);
    return t;
  }
  // (this * o)(i) = this(o(i))
  DynkinAuto operator*(const DynkinAuto& o) const {
    DynkinAuto t;
    t.perm.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) t.perm[i] = perm[o.perm[i]];
    return t;
  }
  bool operator==(const DynkinAuto&) const = default;
  auto operator<=>(const DynkinAuto&) const = default;
};

class CartanData {
 public:
  AffineType type{AffineType::A1};
  int rank = 1;
  std::vector<std::vector<int>> a;      // a[i][j] = <alpha_j, alpha_i^vee>
  std::vector<int> marks;               // a_i
  std::vector<int> comarks;             // a_i^vee
  std::vector<int> c;                   // c_i = max(1, a_i / a_i^vee); c[0] is set to 1
  std::vector<int> special;             // I^s, sorted
  std::vector<DynkinAuto> tau;          // tau[k] = tau^{special[k]}
  std::vector<Rational> kappa;          // <Lambda_i, d> under the Sigma-compatible normalization
  long long N = 1;
  RationalMatrix gram;                  // basis alpha_0..alpha_n, Lambda_0
  RationalMatrix finite_inverse;        // inverse of (a_ij), i,j in I_0

  int size() const { return rank + 1; }
  std::string label() const { return type_label(type, rank); }

  // ---- distinguished weights ----
  AffineWeight zero() const { return AffineWeight{std::vector<long long>(size(), 0), Rational(0)}; }
  ClassicalWeight classical_zero() const { return ClassicalWeight{std::vector<long long>(size(), 0)}; }

  // Lambda_i with <Lambda_i, d> = kappa_i, so that tau(Lambda_j) = Lambda_{tau(j)} for tau in Sigma.
  AffineWeight fundamental(int i) const {
    AffineWeight w = zero();
    w.lambda.at(i) = 1;
    w.delta = kappa.at(i);
    return w;
  }
  AffineWeight alpha(int j) const {
    AffineWeight w = zero();
    for (int i = 0; i < size(); ++i) w.lambda[i] = a[i][j];
    w.delta = (j == 0) ? Rational(1) : Rational(0);
    return w;
  }
  AffineWeight null_root() const {
    AffineWeight w = zero();
    w.delta = marks[0];
    return w;
  }
  ClassicalWeight classical_fundamental(int i) const {
    ClassicalWeight w = classical_zero();
    w.lambda.at(i) = 1;
    return w;
  }
  ClassicalWeight classical_alpha(int j) const {
    ClassicalWeight w = classical_zero();
    for (int i = 0; i < size(); ++i) w.lambda[i] = a[i][j];
    return w;
  }
  // varpi_i = cl(Lambda_i) - a_i^vee cl(Lambda_0); varpi_0 = 0.
  ClassicalWeight varpi(int i) const {
    ClassicalWeight w = classical_zero();
    if (i == 0) return w;
    w.lambda.at(i) += 1;
    w.lambda[0] -= comarks[i];
    return w;
  }
  // Level-0 classical weight with the given finite Dynkin labels (m_1..m_n).
  ClassicalWeight from_finite_labels(const std::vector<long long>& labels) const {
    if (static_cast<int>(labels.size()) != rank) throw std::invalid_argument("expected rank many labels");
    ClassicalWeight w = classical_zero();
    for (int i = 1; i <= rank; ++i) w += labels[i - 1] * varpi(i);
    return w;
  }

  // ---- projections ----
  ClassicalWeight cl(const AffineWeight& w) const { return ClassicalWeight{w.lambda}; }
  AffineWeight aff(const ClassicalWeight& w) const { return AffineWeight{w.lambda, Rational(0)}; }

  // ---- pairings ----
  long long pair_coroot(const AffineWeight& w, int i) const { return w.lambda.at(i); }
  const Rational& pair_d(const AffineWeight& w) const { return w.delta; }
  long long level(const std::vector<long long>& lambda) const {
    long long s = 0;
    for (int i = 0; i < size(); ++i) s += static_cast<long long>(comarks[i]) * lambda[i];
    return s;
  }
  long long level(const AffineWeight& w) const { return level(w.lambda); }
  long long level(const ClassicalWeight& w) const { return level(w.lambda); }

  // Coordinates (x_0..x_n, y) with w = sum_j x_j alpha_j + y Lambda_0.
  std::pair<std::vector<Rational>, Rational> root_coordinates(const AffineWeight& w) const {
    std::vector<Rational> x(size());
    const Rational y = level(w);
    x[0] = w.delta;
    std::vector<Rational> rhs(rank);
    for (int i = 1; i <= rank; ++i) rhs[i - 1] = Rational(w.lambda[i]) - x[0] * a[i][0];
    for (int i = 1; i <= rank; ++i) {
      Rational s = 0;
      for (int j = 1; j <= rank; ++j) s += finite_inverse[i - 1][j - 1] * rhs[j - 1];
      x[i] = s;
    }
    return {x, y};
  }

  // <w, varpi_j^vee> for j in I (zero for j = 0).
  Rational pair_varpi_check(const AffineWeight& w, int j) const {
    if (j == 0) return 0;
    auto [x, y] = root_coordinates(w);
    return x[j] - x[0] * Rational(marks[j], marks[0]);
  }
  // Same pairing for a level-0 classical weight (well defined since <delta, varpi_j^vee> = 0).
  Rational pair_varpi_check(const ClassicalWeight& w, int j) const {
    return pair_varpi_check(aff(w), j);
  }

  Rational form(const AffineWeight& u, const AffineWeight& v) const {
    auto [x, y] = root_coordinates(u);
    auto [xp, yp] = root_coordinates(v);
    Rational s = 0;
    for (int i = 0; i < size(); ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < size(); ++j) s += x[i] * xp[j] * gram[i][j];
    }
    s += y * xp[0] / marks[0];
    s += yp * x[0] / marks[0];
    return s;
  }
  Rational form(const ClassicalWeight& u, const ClassicalWeight& v) const { return form(aff(u), aff(v)); }

  // Diagram automorphism acting on P by Lambda_i -> Lambda_{tau(i)}, delta -> delta.
  AffineWeight apply(const DynkinAuto& t, const AffineWeight& w) const {
    AffineWeight r = zero();
    r.delta = w.delta;
    for (int i = 0; i < size(); ++i) {
      r.lambda[t(i)] = w.lambda[i];
      r.delta += Rational(w.lambda[i]) * (kappa[t(i)] - kappa[i]);
    }
    return r;
  }
  ClassicalWeight apply(const DynkinAuto& t, const ClassicalWeight& w) const {
    ClassicalWeight r = classical_zero();
    for (int i = 0; i < size(); ++i) r.lambda[t(i)] = w.lambda[i];
    return r;
  }

  bool is_special(int i) const { return std::find(special.begin(), special.end(), i) != special.end(); }
  const DynkinAuto& tau_of(int i) const {
    for (std::size_t k = 0; k < special.size(); ++k)
      if (special[k] == i) return tau[k];
    throw std::invalid_argument("node " + std::to_string(i) + " is not special in " + label());
  }
  // The special node i with tau^i == t, or -1 if t is not in Sigma.
  int sigma_index(const DynkinAuto& t) const {
    for (std::size_t k = 0; k < special.size(); ++k)
      if (tau[k] == t) return special[k];
    return -1;
  }

  // ---- serialization ----
  std::string to_string(const AffineWeight& w) const {
    std::string s = "Λ[";
    for (std::size_t i = 0; i < w.lambda.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(w.lambda[i]);
    }
    return s + "] + (" + krd::to_string(w.delta / marks[0]) + ")δ";
  }
  AffineWeight parse_weight(const std::string& text) const;
};

namespace detail {

inline std::vector<std::vector<int>> affine_cartan_matrix(AffineType t, int n) {
  const int sz = n + 1;
  std::vector<std::vector<int>> a(sz, std::vector<int>(sz, 0));
  for (int i = 0; i < sz; ++i) a[i][i] = 2;
  auto link = [&](int i, int j, int aij, int aji) {
    a[i][j] = aij;
    a[j][i] = aji;
  };
  auto chain = [&](int from, int to) {
    for (int i = from; i < to; ++i) link(i, i + 1, -1, -1);
  };
  switch (t) {
    case AffineType::A1:
      if (n == 1) {
        link(0, 1, -2, -2);
      } else {
        chain(0, n);
        link(n, 0, -1, -1);
      }
      break;
    case AffineType::B1:
      chain(1, n - 1);
      link(n - 1, n, -1, -2);
      link(0, 2, -1, -1);
      break;
    case AffineType::C1:
      chain(1, n - 1);
      link(n - 1, n, -2, -1);
      link(0, 1, -1, -2);
      break;
    case AffineType::D1:
      chain(1, n - 2);
      link(n - 2, n - 1, -1, -1);
      link(n - 2, n, -1, -1);
      link(0, 2, -1, -1);
      break;
    case AffineType::A2Odd:
      chain(1, n - 1);
      link(n - 1, n, -2, -1);
      link(0, 2, -1, -1);
      break;
    case AffineType::A2Even:
      if (n == 1) {
        link(0, 1, -4, -1);
      } else {
        link(0, 1, -2, -1);
        chain(1, n - 1);
        link(n - 1, n, -2, -1);
      }
      break;
    case AffineType::D2:
      link(0, 1, -2, -1);
      chain(1, n - 1);
      link(n - 1, n, -1, -2);
      break;
  }
  return a;
}

// Primitive positive integer vector v with sum_j m[i][j] v[j] = 0 for all i.
inline std::vector<int> primitive_null_vector(const std::vector<std::vector<int>>& m) {
  const int sz = static_cast<int>(m.size());
  RationalMatrix sub(sz - 1, std::vector<Rational>(sz - 1));
  std::vector<Rational> rhs(sz - 1);
  for (int i = 1; i < sz; ++i) {
    for (int j = 1; j < sz; ++j) sub[i - 1][j - 1] = m[i][j];
    rhs[i - 1] = -m[i][0];
  }
  std::vector<Rational> x = solve_linear(sub, rhs);
  x.insert(x.begin(), Rational(1));
  BigInt den = 1;
  for (const auto& v : x) den = lcm(den, boost::multiprecision::denominator(v));
  std::vector<BigInt> ints;
  BigInt g = 0;
  for (const auto& v : x) {
    BigInt k = boost::multiprecision::numerator(Rational(v * den));
    ints.push_back(k);
    g = boost::multiprecision::gcd(g, k);
  }
  std::vector<int> out;
  for (const auto& k : ints) {
    const BigInt q = k / g;
    if (q <= 0) throw std::logic_error("null vector is not positive");
    out.push_back(q.convert_to<int>());
  }
  return out;
}

inline std::vector<int> special_nodes(AffineType t, int n) {
  switch (t) {
    case AffineType::A1: {
      std::vector<int> s(n + 1);
      std::iota(s.begin(), s.end(), 0);
      return s;
    }
    case AffineType::B1:
    case AffineType::A2Odd: return {0, 1};
    case AffineType::C1:
    case AffineType::D2: return {0, n};
    case AffineType::D1: return {0, 1, n - 1, n};
    case AffineType::A2Even: return {0};
  }
  return {0};
}

inline DynkinAuto special_auto(AffineType t, int n, int i) {
  DynkinAuto tau = DynkinAuto::identity(n + 1);
  if (i == 0) return tau;
  auto reflect = [&] {
    for (int j = 0; j <= n; ++j) tau.perm[j] = n - j;
  };
  switch (t) {
    case AffineType::A1:
      for (int j = 0; j <= n; ++j) tau.perm[j] = (j + i) % (n + 1);
      break;
    case AffineType::B1:
    case AffineType::A2Odd:
      std::swap(tau.perm[0], tau.perm[1]);
      break;
    case AffineType::C1:
    case AffineType::D2:
      reflect();
      break;
    case AffineType::D1: {
      const bool odd = (n % 2) == 1;
      if (i == 1) {
        std::swap(tau.perm[0], tau.perm[1]);
        std::swap(tau.perm[n - 1], tau.perm[n]);
        break;
      }
      reflect();
      std::vector<int> img;
      if (i == n - 1) img = odd ? std::vector<int>{n - 1, n, 1, 0} : std::vector<int>{n - 1, n, 0, 1};
      else img = odd ? std::vector<int>{n, n - 1, 0, 1} : std::vector<int>{n, n - 1, 1, 0};
      const int src[4] = {0, 1, n - 1, n};
      for (int k = 0; k < 4; ++k) tau.perm[src[k]] = img[k];
      break;
    }
    case AffineType::A2Even: break;
  }
  return tau;
}

}  // namespace detail

inline CartanData build_cartan_data(AffineType type, int rank) {
  if (rank < min_rank(type))
    throw std::invalid_argument("rank " + std::to_string(rank) + " out of range for " + type_label(type, rank));
  CartanData cd;
  cd.type = type;
  cd.rank = rank;
  cd.a = detail::affine_cartan_matrix(type, rank);
  const int sz = rank + 1;
  cd.marks = detail::primitive_null_vector(cd.a);
  std::vector<std::vector<int>> at(sz, std::vector<int>(sz));
  for (int i = 0; i < sz; ++i)
    for (int j = 0; j < sz; ++j) at[i][j] = cd.a[j][i];
  cd.comarks = detail::primitive_null_vector(at);
  cd.c.assign(sz, 1);
  for (int i = 1; i < sz; ++i) cd.c[i] = std::max(1, cd.marks[i] / cd.comarks[i]);

  RationalMatrix fin(rank, std::vector<Rational>(rank));
  for (int i = 1; i <= rank; ++i)
    for (int j = 1; j <= rank; ++j) fin[i - 1][j - 1] = cd.a[i][j];
  cd.finite_inverse = invert(fin);

  cd.gram.assign(sz + 1, std::vector<Rational>(sz + 1, Rational(0)));
  for (int i = 0; i < sz; ++i)
    for (int j = 0; j < sz; ++j) cd.gram[i][j] = Rational(cd.comarks[i] * cd.a[i][j], cd.marks[i]);
  cd.gram[0][sz] = cd.gram[sz][0] = Rational(1, cd.marks[0]);

  cd.special = detail::special_nodes(type, rank);
  for (int i : cd.special) cd.tau.push_back(detail::special_auto(type, rank, i));

  // kappa_i = <Lambda_i, d>: zero on one representative of each Sigma-orbit, then forced by
  // tau(Lambda_j) = Lambda_{tau(j)}.  For tau = tau^i one has tau(Lambda_0) = t_{varpi_i}(Lambda_0),
  // whose d-pairing is -a_0 (varpi_i, varpi_i) / 2.
  cd.kappa.assign(sz, Rational(0));
  cd.N = 1;  // provisional, so that form() can be used below
  std::vector<Rational> kappa_of_tau0(cd.tau.size());
  for (std::size_t k = 0; k < cd.tau.size(); ++k) {
    const int i = cd.special[k];
    kappa_of_tau0[k] = -Rational(cd.marks[0]) * cd.form(cd.varpi(i), cd.varpi(i)) / 2;
  }
  std::vector<bool> assigned(sz, false);
  for (int start = 0; start < sz; ++start) {
    if (assigned[start]) continue;
    assigned[start] = true;
    cd.kappa[start] = 0;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      const int j = stack.back();
      stack.pop_back();
      for (std::size_t k = 0; k < cd.tau.size(); ++k) {
        const DynkinAuto& t = cd.tau[k];
        const int back = t.inverse()(0);
        const Rational x = (j == 0 || back == 0) ? Rational(0) : cd.finite_inverse[back - 1][j - 1];
        const Rational value = cd.kappa[j] + Rational(cd.comarks[j]) * kappa_of_tau0[k] + x;
        const int target = t(j);
        if (!assigned[target]) {
          assigned[target] = true;
          cd.kappa[target] = value;
          stack.push_back(target);
        } else if (cd.kappa[target] != value) {
          throw std::logic_error("inconsistent normalization of fundamental weights for " + cd.label());
        }
      }
    }
  }

  // N: least positive integer with (lambda, lambda)/2 in N^{-1}Z for all lambda in M~,
  // i.e. for the basis vectors c_i varpi_i and all pairwise products between them.
  BigInt n_big = 1;
  for (int i = 1; i <= rank; ++i) {
    const ClassicalWeight vi = cd.c[i] * cd.varpi(i);
    n_big = lcm(n_big, boost::multiprecision::denominator(Rational(cd.form(vi, vi) / 2)));
    for (int j = i + 1; j <= rank; ++j) {
      const ClassicalWeight vj = cd.c[j] * cd.varpi(j);
      n_big = lcm(n_big, boost::multiprecision::denominator(cd.form(vi, vj)));
    }
  }
  for (const auto& k : cd.kappa) n_big = lcm(n_big, boost::multiprecision::denominator(k));
  cd.N = n_big.convert_to<long long>();
  return cd;
}

inline CartanData build_cartan_data(const std::string& type_text, int rank) {
  return build_cartan_data(parse_type(type_text), rank);
}

// Parses "Λ[m_0,...,m_n] + (p/q)δ" (the δ-term is optional; "L" may replace "Λ", "d" may replace "δ").
inline AffineWeight CartanData::parse_weight(const std::string& text) const {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 2, "Λ") == 0) {
      s += 'L';
      ++i;
    } else if (text.compare(i, 2, "δ") == 0) {
      s += 'd';
      ++i;
    } else if (text[i] != ' ') {
      s += text[i];
    }
  }
  if (s.size() < 3 || s[0] != 'L' || s[1] != '[') throw std::invalid_argument("malformed weight: " + text);
  const auto close = s.find(']');
  if (close == std::string::npos) throw std::invalid_argument("malformed weight: " + text);
  AffineWeight w = zero();
  std::stringstream coeffs(s.substr(2, close - 2));
  std::string item;
  int idx = 0;
  while (std::getline(coeffs, item, ',')) {
    if (idx >= size()) throw std::invalid_argument("too many coefficients in weight: " + text);
    w.lambda[idx++] = std::stoll(item);
  }
  if (idx != size()) throw std::invalid_argument("wrong number of coefficients in weight: " + text);
  std::string rest = s.substr(close + 1);
  if (!rest.empty()) {
    if (rest.size() < 2 || rest.back() != 'd') throw std::invalid_argument("malformed δ term: " + text);
    rest.pop_back();
    Rational sign = 1;
    if (rest[0] == '+') rest = rest.substr(1);
    else if (rest[0] == '-') {
      sign = -1;
      rest = rest.substr(1);
    }
    if (!rest.empty() && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
    w.delta = sign * parse_rational(rest.empty() ? "1" : rest) * marks[0];
  }
  return w;
}

}  // namespace krd
