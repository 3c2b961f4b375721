#pragma once

// Highest-weight crystals B(l Lambda_x) as Kyoto paths over a perfect carrier, Demazure
// crystals, extremal elements, and the nested sets on the right-hand side of the
// Demazure realization of tensor products of KR crystals.

#include "kr_type_a.hpp"

namespace krd {

// B(Lambda) for Lambda = l Lambda_x, realized inside B(Lambda^(m)) ⊗ B^{⊗m}: an element
// u_{Lambda^(m)} ⊗ b_m ⊗ ... ⊗ b_1 is stored as the list [b_m, ..., b_1] together with its
// degree <wt, d>.  Leading ground-state factors are absorbed into u, so the highest element
// is the empty list.
class PathCrystal : public Crystal {
 public:
  PathCrystal(CrystalPtr carrier, int level, int x)
      : Crystal(carrier->cartan_ptr()), carrier_(std::move(carrier)), level_(level), x_(x) {
    if (level <= 0) throw std::invalid_argument("path crystals need a positive level");
    build_ground();
  }

  int level() const { return level_; }
  int node() const { return x_; }
  const CrystalPtr& carrier() const { return carrier_; }
  std::size_t ground_period() const { return ground_.size(); }
  // g_k for k >= 1
  int ground(std::size_t k) const { return ground_[(k - 1) % ground_.size()]; }
  // Lambda^(k) (classical), Lambda^(0) = cl(Lambda)
  const ClassicalWeight& ground_weight(std::size_t k) const { return lams_[k % lams_.size()]; }

  Element highest() const {
    Element b;
    b.kind = Element::Kind::Path;
    b.degree = Rational(level_) * cartan().kappa[x_];
    return b;
  }
  AffineWeight highest_weight() const { return level_ * cartan().fundamental(x_); }

  std::optional<Element> e(int i, const Element& b) const override {
    const int pos = acting(i, b, true);
    if (pos == 0) return std::nullopt;
    auto moved = carrier_->e(i, Element::atom(b.path[pos - 1]));
    if (!moved) return std::nullopt;
    Element r = b;
    r.path[pos - 1] = moved->index;
    if (i == 0) r.degree += 1;
    canonicalize(r);
    return r;
  }
  std::optional<Element> f(int i, const Element& b) const override {
    Element r = b;
    int pos = acting(i, r, false);
    if (pos == 0) {
      r.path.insert(r.path.begin(), ground(r.path.size() + 1));
      pos = acting(i, r, false);
      if (pos == 0) throw std::logic_error("path extension did not stabilize");
    }
    auto moved = carrier_->f(i, Element::atom(r.path[pos - 1]));
    if (!moved) return std::nullopt;
    r.path[pos - 1] = moved->index;
    if (i == 0) r.degree -= 1;
    canonicalize(r);
    return r;
  }
  int epsilon(int i, const Element& b) const override {
    int run_eps = 0, run_phi = static_cast<int>(ground_weight(b.path.size()).lambda[i]);
    for (int idx : b.path) {
      const Element a = Element::atom(idx);
      const int ek = carrier_->epsilon(i, a), pk = carrier_->phi(i, a);
      run_eps += std::max(0, ek - run_phi);
      run_phi = pk + std::max(0, run_phi - ek);
    }
    return run_eps;
  }
  int phi(int i, const Element& b) const override {
    int run_phi = static_cast<int>(ground_weight(b.path.size()).lambda[i]);
    for (int idx : b.path) {
      const Element a = Element::atom(idx);
      const int ek = carrier_->epsilon(i, a), pk = carrier_->phi(i, a);
      run_phi = pk + std::max(0, run_phi - ek);
    }
    return run_phi;
  }
  AffineWeight weight(const Element& b) const override {
    ClassicalWeight w = ground_weight(b.path.size());
    for (int idx : b.path) w += carrier_->classical_weight(Element::atom(idx));
    AffineWeight a = cartan().aff(w);
    a.delta = b.degree;
    return a;
  }
  bool affine() const override { return true; }
  std::string format(const Element& b) const override {
    std::string s = "u";
    for (int idx : b.path) s += " ⊗ " + carrier_->format(Element::atom(idx));
    return s;
  }
  std::string describe() const override {
    return "B(" + std::to_string(level_) + "Λ" + std::to_string(x_) + ")";
  }

 private:
  void build_ground() {
    const CartanData& cd = cartan();
    ClassicalWeight lam = cd.classical_zero();
    lam.lambda[x_] = level_;
    const auto elems = carrier_->elements();
    lams_.push_back(lam);
    while (true) {
      int found = -1;
      for (const auto& b : elems) {
        if (cd.level(carrier_->eps_weight(b)) != level_) continue;
        if (carrier_->phi_weight(b) != lams_.back()) continue;
        if (found >= 0) throw std::logic_error("ground state is not unique in " + carrier_->describe());
        found = b.index;
      }
      if (found < 0) throw std::logic_error("no ground state in " + carrier_->describe());
      ground_.push_back(found);
      const ClassicalWeight next = carrier_->eps_weight(Element::atom(found));
      if (next == lams_.front()) break;
      lams_.push_back(next);
      if (lams_.size() > static_cast<std::size_t>(cd.size()) + 1)
        throw std::logic_error("ground path is not periodic within the expected bound");
    }
  }

  // 0 for the u-prefix, k >= 1 for path[k-1].
  int acting(int i, const Element& b, bool raise) const {
    const int m = static_cast<int>(b.path.size());
    std::vector<int> prefix_phi(m + 1), eps(m + 1, 0);
    int run_phi = static_cast<int>(ground_weight(m).lambda[i]);
    for (int k = 1; k <= m; ++k) {
      const Element a = Element::atom(b.path[k - 1]);
      eps[k] = carrier_->epsilon(i, a);
      prefix_phi[k] = run_phi;
      run_phi = carrier_->phi(i, a) + std::max(0, run_phi - eps[k]);
    }
    for (int k = m; k >= 1; --k) {
      const bool left = raise ? prefix_phi[k] >= eps[k] : prefix_phi[k] > eps[k];
      if (!left) return k;
    }
    return 0;
  }

  void canonicalize(Element& b) const {
    while (!b.path.empty() && b.path.front() == ground(b.path.size())) b.path.erase(b.path.begin());
  }

  CrystalPtr carrier_;
  int level_;
  int x_;
  std::vector<int> ground_;
  std::vector<ClassicalWeight> lams_;
};

// B(l Lambda_x) over the carrier B^{1,l}; the trivial crystal when l = 0.
inline CrystalPtr highest_weight_crystal(const CartanPtr& cd, int level, int x) {
  if (level == 0) return std::make_shared<TrivialCrystal>(cd);
  return std::make_shared<PathCrystal>(make_kr(cd, 1, level), level, x);
}

inline Element highest_element(const Crystal& c) {
  if (auto p = dynamic_cast<const PathCrystal*>(&c)) return p->highest();
  if (dynamic_cast<const TrivialCrystal*>(&c)) return Element::trivial();
  throw std::invalid_argument("not a highest-weight crystal: " + c.describe());
}

struct DemazureSet {
  CrystalPtr crystal;
  ElementSet elements;
};

// B_{w tau}(l Lambda_x) = F_w { u_{tau(l Lambda_x)} } inside B(l Lambda_{tau(x)}).
inline DemazureSet demazure_set(const CartanPtr& cd, int level, int x, const ReducedWord& w,
                                std::size_t cap = 200000) {
  DemazureSet d;
  d.crystal = highest_weight_crystal(cd, level, w.tail(x));
  d.elements = f_closure_word(*d.crystal, {highest_element(*d.crystal)}, w.letters, cap);
  return d;
}

// u_{w tau(Lambda)} = S_w(u_{tau(Lambda)}) inside B(l Lambda_{tau(x)}).
inline Element extremal_element(const Crystal& c, const ReducedWord& w) {
  return weyl_action(c, w.letters, highest_element(c));
}

// ---------------------------------------------------------------------------
// Nested right-hand side
//   F_{t_{mu_p}}( u_{l^p Lambda_0} ⊗ ... ⊗ F_{t_{mu_2}}( u_{l^2 Lambda_0} ⊗ F_{t_{mu_1}}(u_{l^1 Lambda_0}) ) ... )
// realized as C_k = tau~_k( B(l^k Lambda_0) ⊗ C_{k-1} ) with t_{mu_k} = w_k tau_k, and
// S_k = F_{w_k}( tau~_k( u ⊗ S_{k-1} ) ).  Factors with l^k = 0 are omitted.

struct NestedRhs {
  CartanPtr cd;
  std::vector<long long> ell_diff;          // l^1, ..., l^p
  std::vector<ReducedWord> words;           // reduced words of t_{mu_1}, ..., t_{mu_p}
  std::vector<CrystalPtr> paths;            // B(l^k Lambda_0) (null when l^k = 0)
  std::vector<CrystalPtr> levels;           // C_1, ..., C_p
  CrystalPtr ambient;                       // C_p
  ElementSet set;                           // S_p
  Element extremal;                         // u_{t_{mu_p}(l^p Lambda_0)} ⊗ ... ⊗ u_{t_{mu_p+...+mu_1}(l^1 Lambda_0)}

  int depth() const { return static_cast<int>(levels.size()); }

  // Weights of the factors (outermost first, k = p, ..., 1), with all enclosing twists applied;
  // zero for omitted factors.
  std::vector<AffineWeight> factor_weights(const Element& b) const {
    std::vector<AffineWeight> out;
    std::vector<const DynkinAuto*> twists;
    const Element* cur = &b;
    for (int k = depth() - 1; k >= 0; --k) {
      const auto* tw = static_cast<const TwistedCrystal*>(levels[k].get());
      twists.push_back(&tw->tau());
      const Element& inner = cur->inner();
      const Element* rest = &inner;
      AffineWeight w = cd->zero();
      if (paths[k]) {
        const Element* factor = (k == 0) ? &inner : &inner.parts[0];
        w = paths[k]->weight(*factor);
        if (k > 0) rest = &inner.parts[1];
      }
      for (auto it = twists.rbegin(); it != twists.rend(); ++it) w = cd->apply(**it, w);
      out.push_back(w);
      cur = rest;
    }
    return out;
  }
};

// ell = (l_1, ..., l_p) nondecreasing, mus = (mu_1, ..., mu_p).
inline NestedRhs build_rhs(const CartanPtr& cd, const std::vector<long long>& ell, const std::vector<ClassicalWeight>& mus,
                           std::size_t cap = 200000) {
  if (ell.empty() || ell.size() != mus.size()) throw std::invalid_argument("build_rhs: malformed instance");
  NestedRhs rhs;
  rhs.cd = cd;
  std::vector<Element> seeds;
  Element extremal;
  for (std::size_t k = 0; k < ell.size(); ++k) {
    const long long diff = ell[k] - (k ? ell[k - 1] : 0);
    if (diff < 0) throw std::invalid_argument("build_rhs: levels must be nondecreasing");
    if (k == 0 && diff == 0) throw std::invalid_argument("build_rhs: the innermost level must be positive");
    rhs.ell_diff.push_back(diff);
    const ReducedWord w = translation_word(*cd, mus[k]);
    rhs.words.push_back(w);
    CrystalPtr path = diff > 0 ? highest_weight_crystal(cd, static_cast<int>(diff), 0) : nullptr;
    rhs.paths.push_back(path);
    CrystalPtr inner;
    if (k == 0) inner = path;
    else if (path) inner = tensor({path, rhs.levels.back()});
    else inner = rhs.levels.back();
    auto level = std::make_shared<TwistedCrystal>(w.tail, inner);
    rhs.levels.push_back(level);

    auto lift = [&](const Element& prev) {
      if (k == 0) return level->wrap(highest_element(*path));
      if (path) return level->wrap(Element::tensor({highest_element(*path), prev}));
      return level->wrap(prev);
    };
    std::vector<Element> next_seeds;
    if (k == 0) next_seeds.push_back(lift(Element{}));
    else
      for (const auto& s : seeds) next_seeds.push_back(lift(s));
    extremal = weyl_action(*level, w.letters, lift(extremal));
    seeds = f_closure_word(*level, next_seeds, w.letters, cap).items();
  }
  rhs.ambient = rhs.levels.back();
  for (const auto& s : seeds) rhs.set.insert(s);
  rhs.extremal = extremal;
  return rhs;
}

}  // namespace krd
