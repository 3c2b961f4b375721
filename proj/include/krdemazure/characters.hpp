#pragma once

// The group algebra Z[P], Demazure operators, weight sums and classical characters.

#include "highest_weight.hpp"

#include <map>

namespace krd {

class CharacterPoly {
 public:
  using Terms = std::map<AffineWeight, long long>;

  CharacterPoly() = default;
  static CharacterPoly monomial(const AffineWeight& w, long long c = 1) {
    CharacterPoly p;
    p.add(w, c);
    return p;
  }

  void add(const AffineWeight& w, long long c) {
    if (c == 0) return;
    auto [it, added] = terms_.emplace(w, c);
    if (!added) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  CharacterPoly& operator+=(const CharacterPoly& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  CharacterPoly& operator-=(const CharacterPoly& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend CharacterPoly operator+(CharacterPoly a, const CharacterPoly& b) { return a += b; }
  friend CharacterPoly operator-(CharacterPoly a, const CharacterPoly& b) { return a -= b; }
  friend CharacterPoly operator*(const CharacterPoly& a, const CharacterPoly& b) {
    CharacterPoly r;
    for (const auto& [w1, c1] : a.terms_)
      for (const auto& [w2, c2] : b.terms_) r.add(w1 + w2, c1 * c2);
    return r;
  }
  // e^shift * this
  CharacterPoly shifted(const AffineWeight& shift) const {
    CharacterPoly r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w + shift, c);
    return r;
  }

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  long long coefficient(const AffineWeight& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? 0 : it->second;
  }
  long long coefficient_sum() const {
    long long s = 0;
    for (const auto& [w, c] : terms_) s += c;
    return s;
  }
  bool operator==(const CharacterPoly&) const = default;

 private:
  Terms terms_;
};

inline std::string to_string(const CartanData& cd, const CharacterPoly& p) {
  if (p.empty()) return "0";
  std::string s;
  for (const auto& [w, c] : p.terms()) {
    if (!s.empty()) s += "\n";
    s += (c < 0 ? "-" : "+") + std::to_string(c < 0 ? -c : c) + " * " + cd.to_string(w);
  }
  return s;
}

// s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i
inline AffineWeight reflect_weight(const CartanData& cd, int i, const AffineWeight& w) {
  return w - w.lambda[i] * cd.alpha(i);
}

inline CharacterPoly apply_auto(const CartanData& cd, const DynkinAuto& tau, const CharacterPoly& f) {
  CharacterPoly r;
  for (const auto& [w, c] : f.terms()) r.add(cd.apply(tau, w), c);
  return r;
}

// D_i by the per-monomial closed form.
inline CharacterPoly demazure_operator(const CartanData& cd, const CharacterPoly& f, int i) {
  const AffineWeight a = cd.alpha(i);
  CharacterPoly r;
  for (const auto& [w, c] : f.terms()) {
    const long long m = w.lambda[i];
    if (m >= 0) {
      AffineWeight x = w;
      for (long long k = 0; k <= m; ++k) {
        r.add(x, c);
        x -= a;
      }
    } else if (m <= -2) {
      AffineWeight x = w;
      for (long long k = 1; k <= -m - 1; ++k) {
        x += a;
        r.add(x, -c);
      }
    }
  }
  return r;
}

// D_i as the quotient (f - e^{-alpha_i} s_i f) / (1 - e^{-alpha_i}), computed by exact division
// along alpha_i-strings.  Throws if the quotient is not a polynomial (it always is).
inline CharacterPoly demazure_operator_fraction(const CartanData& cd, const CharacterPoly& f, int i) {
  const AffineWeight a = cd.alpha(i);
  CharacterPoly num = f;
  for (const auto& [w, c] : f.terms()) num.add(reflect_weight(cd, i, w) - a, -c);
  // Group by string: representative w - q alpha_i with q = floor(<w, alpha_i^vee> / 2).
  std::map<AffineWeight, std::map<long long, long long>> strings;
  for (const auto& [w, c] : num.terms()) {
    const long long m = w.lambda[i];
    const long long q = (m >= 0) ? m / 2 : -((-m + 1) / 2);
    strings[w - q * a][q] += c;
  }
  // h - e^{-alpha} h = g  gives  h_k - h_{k+1} = g_k  (position k along the string), so h_k = sum_{j >= k} g_j.
  CharacterPoly r;
  for (const auto& [rep, coeffs] : strings) {
    long long run = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      const long long top = it->first;
      auto next = std::next(it);
      run += it->second;
      const long long bottom = (next == coeffs.rend()) ? top : next->first + 1;
      for (long long k = top; k >= bottom; --k) r.add(rep + k * a, run);
    }
    if (run != 0) throw std::logic_error("Demazure quotient is not a polynomial");
  }
  return r;
}

// D_{w tau} = D_w ∘ tau with D_w = D_{letters[0]} ∘ ... ∘ D_{letters[k-1]}.
inline CharacterPoly demazure_word(const CartanData& cd, const CharacterPoly& f, const std::vector<int>& letters,
                                   const DynkinAuto& tail) {
  CharacterPoly r = apply_auto(cd, tail, f);
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) r = demazure_operator(cd, r, *it);
  return r;
}

inline CharacterPoly demazure_word(const CartanData& cd, const CharacterPoly& f, const ReducedWord& w) {
  return demazure_word(cd, f, w.letters, w.tail);
}

inline CharacterPoly demazure_word(const CartanData& cd, const CharacterPoly& f, const WeylElement& w) {
  return demazure_word(cd, f, reduced_word(cd, w));
}

// Sum of e^{wt(b)} over a set of elements of an affine-weighted crystal.
inline CharacterPoly weight_sum(const Crystal& c, const std::vector<Element>& elements) {
  if (!c.affine()) throw std::invalid_argument("weight_sum needs degrees: " + c.describe() + " is not graded");
  CharacterPoly r;
  for (const auto& b : elements) r.add(c.weight(b), 1);
  return r;
}

inline CharacterPoly weight_sum(const Crystal& c, const ElementSet& s) { return weight_sum(c, s.items()); }

// Character of the irreducible finite-dimensional module of highest weight mu (a dominant level-zero
// classical weight), embedded in Z[P] through aff.
inline CharacterPoly classical_character(const CartanData& cd, const ClassicalWeight& mu) {
  if (cd.level(mu) != 0) throw std::invalid_argument("classical_character: weight of nonzero level");
  for (int i = 1; i <= cd.rank; ++i)
    if (mu.lambda[i] < 0) throw std::invalid_argument("classical_character: weight is not dominant");
  return demazure_word(cd, CharacterPoly::monomial(cd.aff(mu)), longest_word(cd), DynkinAuto::identity(cd.size()));
}

// D_{t_{mu_p}}( e^{l^p Lambda_0} ... D_{t_{mu_2}}( e^{l^2 Lambda_0} D_{t_{mu_1}}(e^{l^1 Lambda_0}) ) ... )
inline CharacterPoly nested_demazure_character(const CartanData& cd, const std::vector<long long>& ell,
                                               const std::vector<ClassicalWeight>& mus) {
  CharacterPoly f = CharacterPoly::monomial(cd.zero());
  for (std::size_t k = 0; k < ell.size(); ++k) {
    const long long diff = ell[k] - (k ? ell[k - 1] : 0);
    f = f.shifted(diff * cd.fundamental(0));
    f = demazure_word(cd, f, translation_word(cd, mus[k]));
  }
  return f;
}

// Collapse along cl with q = e^{-delta}: classical weight -> (exponent of q -> coefficient).
using QCharacter = std::map<ClassicalWeight, std::map<Rational, long long>>;

inline QCharacter q_collapse(const CartanData& cd, const CharacterPoly& f) {
  QCharacter r;
  for (const auto& [w, c] : f.terms()) {
    auto& slot = r[cd.cl(w)][-w.delta / cd.marks[0]];
    slot += c;
    if (slot == 0) {
      r[cd.cl(w)].erase(-w.delta / cd.marks[0]);
      if (r[cd.cl(w)].empty()) r.erase(cd.cl(w));
    }
  }
  return r;
}

}  // namespace krd
