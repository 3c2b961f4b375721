#pragma once

// Extended affine Weyl group acting on P, translations, reduced words, and the
// finite Weyl group acting on classical Dynkin labels.

#include "cartan.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <vector>

namespace krd {

// t_mu(lambda) = lambda + lev(lambda) mu - ((lambda, mu) + (mu, mu) lev(lambda) / 2) delta,
// for mu of level zero.
inline AffineWeight translate_weight(const CartanData& cd, const ClassicalWeight& mu, const AffineWeight& lambda) {
  if (cd.level(mu) != 0) throw std::invalid_argument("translation by a weight of nonzero level");
  const long long lev = cd.level(lambda);
  AffineWeight r = lambda;
  for (int i = 0; i < cd.size(); ++i) r.lambda[i] += lev * mu.lambda[i];
  const AffineWeight amu = cd.aff(mu);
  r.delta -= Rational(cd.marks[0]) * (cd.form(lambda, amu) + cd.form(amu, amu) * lev / 2);
  return r;
}

// Reduced expression w = s_{letters[0]} s_{letters[1]} ... s_{letters[k-1]} tau.
struct ReducedWord {
  std::vector<int> letters;
  DynkinAuto tail;
  int tail_index = 0;  // special node i with tau = tau^i, or -1 when tau is outside Sigma

  int length() const { return static_cast<int>(letters.size()); }
  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < letters.size(); ++k) {
      if (k) s += ".";
      s += "s" + std::to_string(letters[k]);
    }
    if (s.empty()) s = "e";
    if (tail_index > 0) s += " * tau" + std::to_string(tail_index);
    else if (tail_index < 0) s += " * tau?";
    return s;
  }
};

// An element of the extended affine Weyl group, stored by its images of the
// d-free fundamental weights aff(cl Lambda_i); delta is fixed.
struct WeylElement {
  std::vector<AffineWeight> images;

  bool operator==(const WeylElement&) const = default;
};

inline WeylElement weyl_identity(const CartanData& cd) {
  WeylElement w;
  for (int i = 0; i < cd.size(); ++i) w.images.push_back(cd.aff(cd.classical_fundamental(i)));
  return w;
}

inline AffineWeight weyl_apply(const CartanData& cd, const WeylElement& w, const AffineWeight& lambda) {
  AffineWeight r = cd.zero();
  r.delta = lambda.delta;
  for (int i = 0; i < cd.size(); ++i)
    if (lambda.lambda[i] != 0) r += lambda.lambda[i] * w.images[i];
  return r;
}

// Level-zero classical weights are acted on through their d-free lifts.
inline ClassicalWeight weyl_apply(const CartanData& cd, const WeylElement& w, const ClassicalWeight& lambda) {
  return cd.cl(weyl_apply(cd, w, cd.aff(lambda)));
}

// (u * v)(x) = u(v(x))
inline WeylElement weyl_multiply(const CartanData& cd, const WeylElement& u, const WeylElement& v) {
  WeylElement r;
  for (const auto& img : v.images) r.images.push_back(weyl_apply(cd, u, img));
  return r;
}

inline WeylElement simple_reflection(const CartanData& cd, int i) {
  WeylElement w = weyl_identity(cd);
  w.images.at(i) -= cd.alpha(i);
  return w;
}

inline WeylElement automorphism_element(const CartanData& cd, const DynkinAuto& t) {
  WeylElement w;
  for (int i = 0; i < cd.size(); ++i) w.images.push_back(cd.apply(t, cd.aff(cd.classical_fundamental(i))));
  return w;
}

inline WeylElement translation_element(const CartanData& cd, const ClassicalWeight& mu) {
  WeylElement w;
  for (int i = 0; i < cd.size(); ++i)
    w.images.push_back(translate_weight(cd, mu, cd.aff(cd.classical_fundamental(i))));
  return w;
}

// Product s_{letters[0]} ... s_{letters[k-1]} tau.
inline WeylElement word_element(const CartanData& cd, const std::vector<int>& letters, const DynkinAuto& tail) {
  WeylElement w = weyl_identity(cd);
  for (int i : letters) w = weyl_multiply(cd, w, simple_reflection(cd, i));
  return weyl_multiply(cd, w, automorphism_element(cd, tail));
}

inline WeylElement word_element(const CartanData& cd, const ReducedWord& rw) {
  return word_element(cd, rw.letters, rw.tail);
}

inline WeylElement weyl_inverse(const CartanData& cd, const WeylElement& w) {
  // Linear map on coordinates (m_0..m_n, d); invert exactly.
  const int sz = cd.size();
  RationalMatrix m(sz + 1, std::vector<Rational>(sz + 1, Rational(0)));
  for (int j = 0; j < sz; ++j) {
    for (int i = 0; i < sz; ++i) m[i][j] = w.images[j].lambda[i];
    m[sz][j] = w.images[j].delta;
  }
  m[sz][sz] = 1;
  const RationalMatrix inv = invert(m);
  WeylElement r;
  for (int j = 0; j < sz; ++j) {
    AffineWeight img = cd.zero();
    for (int i = 0; i < sz; ++i) img.lambda[i] = to_integer(inv[i][j]);
    img.delta = inv[sz][j];
    r.images.push_back(img);
  }
  return r;
}

inline bool is_negative_root(const CartanData& cd, const AffineWeight& root) {
  auto [x, y] = cd.root_coordinates(root);
  if (y != 0) throw std::logic_error("root of nonzero level");
  bool any = false;
  for (const auto& v : x) {
    if (v > 0) return false;
    if (v < 0) any = true;
  }
  return any;
}

// The translation part mu of w = t_mu v with v in the finite Weyl group.
inline ClassicalWeight translation_part(const CartanData& cd, const WeylElement& w) {
  const AffineWeight lam0 = cd.aff(cd.classical_fundamental(0));
  return cd.cl(weyl_apply(cd, w, lam0)) - cd.classical_fundamental(0);
}

inline ReducedWord reduced_word(const CartanData& cd, const WeylElement& w, int max_length = 100000) {
  WeylElement cur = w;
  WeylElement cur_inv = weyl_inverse(cd, w);
  ReducedWord rw;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int i = 0; i < cd.size(); ++i) {
      if (!is_negative_root(cd, weyl_apply(cd, cur_inv, cd.alpha(i)))) continue;
      const WeylElement s = simple_reflection(cd, i);
      cur = weyl_multiply(cd, s, cur);
      cur_inv = weyl_multiply(cd, cur_inv, s);
      rw.letters.push_back(i);
      if (rw.length() > max_length) throw std::runtime_error("reduced word search exceeded length bound");
      progress = true;
      break;
    }
  }
  DynkinAuto tail = DynkinAuto::identity(cd.size());
  for (int j = 0; j < cd.size(); ++j) {
    const AffineWeight img = weyl_apply(cd, cur, cd.alpha(j));
    int found = -1;
    for (int k = 0; k < cd.size(); ++k)
      if (img == cd.alpha(k)) found = k;
    if (found < 0) throw std::runtime_error("element does not lie in the extended affine Weyl group");
    tail.perm[j] = found;
  }
  if (!(automorphism_element(cd, tail) == cur))
    throw std::runtime_error("length-zero part is not a diagram automorphism of P");
  rw.tail = tail;
  rw.tail_index = cd.sigma_index(tail);
  return rw;
}

// The unique tau in Sigma with t_mu tau^{-1} in W, i.e. the tail of a reduced word of t_mu.
inline ReducedWord translation_word(const CartanData& cd, const ClassicalWeight& mu) {
  return reduced_word(cd, translation_element(cd, mu));
}

// ---------------------------------------------------------------------------
// Finite Weyl group acting on Dynkin labels (m_1..m_n) of classical weights.

struct FiniteWeylElement {
  std::vector<std::vector<long long>> matrix;  // new_labels = matrix * labels

  bool operator==(const FiniteWeylElement&) const = default;
  auto operator<=>(const FiniteWeylElement&) const = default;
};

inline FiniteWeylElement finite_identity(const CartanData& cd) {
  FiniteWeylElement w;
  w.matrix.assign(cd.rank, std::vector<long long>(cd.rank, 0));
  for (int i = 0; i < cd.rank; ++i) w.matrix[i][i] = 1;
  return w;
}

// s_j for j in I_0: m_i -> m_i - m_j a_ij.
inline FiniteWeylElement finite_reflection(const CartanData& cd, int j) {
  if (j < 1 || j > cd.rank) throw std::invalid_argument("finite reflection index out of range");
  FiniteWeylElement w = finite_identity(cd);
  for (int i = 1; i <= cd.rank; ++i) w.matrix[i - 1][j - 1] -= cd.a[i][j];
  return w;
}

inline FiniteWeylElement finite_multiply(const FiniteWeylElement& u, const FiniteWeylElement& v) {
  const std::size_t n = u.matrix.size();
  FiniteWeylElement r;
  r.matrix.assign(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (u.matrix[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) r.matrix[i][j] += u.matrix[i][k] * v.matrix[k][j];
  return r;
}

inline std::vector<long long> finite_apply(const FiniteWeylElement& w, const std::vector<long long>& labels) {
  std::vector<long long> r(labels.size(), 0);
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j) r[i] += w.matrix[i][j] * labels[j];
  return r;
}

// The finite Weyl group fixes delta and Lambda_0's d-pairing; the 0-th label is fixed by the level.
inline AffineWeight finite_apply(const CartanData& cd, const FiniteWeylElement& w, const AffineWeight& lambda) {
  std::vector<long long> labels(lambda.lambda.begin() + 1, lambda.lambda.end());
  labels = finite_apply(w, labels);
  AffineWeight r = lambda;
  const long long lev = cd.level(lambda);
  long long rest = 0;
  for (int i = 1; i <= cd.rank; ++i) {
    r.lambda[i] = labels[i - 1];
    rest += static_cast<long long>(cd.comarks[i]) * labels[i - 1];
  }
  r.lambda[0] = (lev - rest) / cd.comarks[0];
  return r;
}

// Finite part v of w = t_mu v.
inline FiniteWeylElement finite_part(const CartanData& cd, const WeylElement& w) {
  const WeylElement v = weyl_multiply(cd, translation_element(cd, -1 * translation_part(cd, w)), w);
  FiniteWeylElement f = finite_identity(cd);
  for (int j = 1; j <= cd.rank; ++j) {
    const ClassicalWeight img = weyl_apply(cd, v, cd.varpi(j));
    for (int i = 1; i <= cd.rank; ++i) f.matrix[i - 1][j - 1] = img.lambda[i];
  }
  return f;
}

// Reduced word (product order) of the longest element of the finite Weyl group.
inline std::vector<int> longest_word(const CartanData& cd) {
  std::vector<long long> labels(cd.rank, 1);
  std::vector<int> applied;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int j = 1; j <= cd.rank; ++j) {
      if (labels[j - 1] <= 0) continue;
      labels = finite_apply(finite_reflection(cd, j), labels);
      applied.push_back(j);
      progress = true;
      break;
    }
  }
  // rho was carried to -rho by s_{applied.back()} ... s_{applied.front()}.
  return std::vector<int>(applied.rbegin(), applied.rend());
}

inline FiniteWeylElement longest_element(const CartanData& cd) {
  FiniteWeylElement w = finite_identity(cd);
  for (int j : longest_word(cd)) w = finite_multiply(w, finite_reflection(cd, j));
  return w;
}

// c_r w_0(varpi_r), the translation attached to the KR crystals B^{r, c_r l}.
inline ClassicalWeight kr_translation(const CartanData& cd, int r) {
  if (r < 1 || r > cd.rank) throw std::invalid_argument("node out of range for a KR translation");
  std::vector<long long> labels(cd.rank, 0);
  labels[r - 1] = cd.c[r];
  return cd.from_finite_labels(finite_apply(longest_element(cd), labels));
}

// Inverse of ReducedWord::to_string: "s3.s1.s0 * tau2", "e", "e * tau1" or "s0s1" style letters
// separated by dots or spaces.  The word is not checked to be reduced.
inline ReducedWord parse_word(const CartanData& cd, const std::string& text) {
  std::string body = text, tail_text;
  if (const auto star = text.find('*'); star != std::string::npos) {
    body = text.substr(0, star);
    tail_text = text.substr(star + 1);
  }
  auto strip = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
    return s;
  };
  body = strip(body);
  tail_text = strip(tail_text);
  ReducedWord rw{{}, DynkinAuto::identity(cd.size()), 0};
  if (body != "e" && !body.empty()) {
    std::size_t pos = 0;
    while (pos < body.size()) {
      if (body[pos] == '.') {
        ++pos;
        continue;
      }
      if (body[pos] != 's') throw std::invalid_argument("malformed word: " + text);
      std::size_t end = pos + 1;
      while (end < body.size() && std::isdigit(static_cast<unsigned char>(body[end]))) ++end;
      if (end == pos + 1) throw std::invalid_argument("malformed word: " + text);
      const int i = std::stoi(body.substr(pos + 1, end - pos - 1));
      if (i < 0 || i >= cd.size()) throw std::invalid_argument("reflection index out of range in word: " + text);
      rw.letters.push_back(i);
      pos = end;
    }
  }
  if (!tail_text.empty()) {
    if (tail_text.rfind("tau", 0) != 0 || tail_text.size() == 3)
      throw std::invalid_argument("malformed automorphism in word: " + text);
    const int i = std::stoi(tail_text.substr(3));
    if (std::find(cd.special.begin(), cd.special.end(), i) == cd.special.end())
      throw std::invalid_argument("tau" + std::to_string(i) + " is not a special node automorphism");
    rw.tail = cd.tau_of(i);
    rw.tail_index = i;
  }
  return rw;
}

}  // namespace krd
