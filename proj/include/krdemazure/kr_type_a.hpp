#pragma once

// Kirillov-Reshetikhin crystals B^{r,s} of type A_n^(1) on r x s semistandard tableaux,
// with e_0 and f_0 obtained by conjugating e_1 and f_1 through promotion.

#include "crystal.hpp"

#include <map>
#include <mutex>

namespace krd {

using Tableau = std::vector<int>;  // row-major, r * s entries in 1..n+1

namespace detail {

inline std::vector<Tableau> enumerate_ssyt(int r, int s, int max_entry) {
  std::vector<Tableau> out;
  Tableau t(static_cast<std::size_t>(r) * s, 0);
  std::function<void(int)> fill = [&](int cell) {
    if (cell == r * s) {
      out.push_back(t);
      return;
    }
    const int row = cell / s, col = cell % s;
    int lo = 1;
    if (col > 0) lo = std::max(lo, t[cell - 1]);
    if (row > 0) lo = std::max(lo, t[cell - s] + 1);
    const int hi = max_entry - (r - 1 - row);  // room for the rows below
    for (int v = lo; v <= hi; ++v) {
      t[cell] = v;
      fill(cell + 1);
    }
  };
  fill(0);
  return out;
}

}  // namespace detail

class KRCrystal : public Crystal {
 public:
  // Builds B^{r,s}; 1 <= r <= n, s >= 1, type A_n^(1) only.
  KRCrystal(CartanPtr cd, int r, int s) : Crystal(cd), r_(r), s_(s) {
    if (cd->type != AffineType::A1)
      throw std::invalid_argument("tableau KR crystals are only realized for type A_n^(1)");
    if (r < 1 || r > cd->rank) throw std::invalid_argument("KR row index r out of range");
    if (s < 1) throw std::invalid_argument("KR column count s must be positive");
    build();
  }

  int r() const { return r_; }
  int s() const { return s_; }
  int size() const { return static_cast<int>(tabs_.size()); }
  const Tableau& tableau(int idx) const { return tabs_.at(idx); }
  const Tableau& tableau(const Element& b) const { return tabs_.at(b.index); }
  int index_of(const Tableau& t) const {
    auto it = by_tab_.find(t);
    return it == by_tab_.end() ? -1 : it->second;
  }
  int promotion_index(int idx) const { return pr_.at(idx); }
  int promotion_inverse_index(int idx) const { return pr_inv_.at(idx); }

  // Distinguished elements.
  int level() const { return lev_; }
  Element u() const { return Element::atom(u_); }
  Element m() const { return Element::atom(m_); }
  Element m_prime() const { return Element::atom(m_prime_); }
  // c_r w_0(varpi_r), the translation attached to this factor.
  const ClassicalWeight& mu() const { return mu_; }

  std::optional<Element> e(int i, const Element& b) const override { return step(e_, i, b); }
  std::optional<Element> f(int i, const Element& b) const override { return step(f_, i, b); }
  int epsilon(int i, const Element& b) const override { return eps_[i][b.index]; }
  int phi(int i, const Element& b) const override { return phi_[i][b.index]; }
  AffineWeight weight(const Element& b) const override { return cartan().aff(wts_[b.index]); }
  std::string format(const Element& b) const override { return labels_[b.index]; }
  std::string describe() const override { return "B^{" + std::to_string(r_) + "," + std::to_string(s_) + "}"; }
  bool finite() const override { return true; }
  std::vector<Element> elements() const override {
    std::vector<Element> out;
    for (int k = 0; k < size(); ++k) out.push_back(Element::atom(k));
    return out;
  }
  std::optional<Element> parse(const std::string& label) const {
    for (int k = 0; k < size(); ++k)
      if (labels_[k] == label) return Element::atom(k);
    return std::nullopt;
  }

  // Promotion on a single tableau: remove the entries n+1, add 1 to the rest, slide the
  // vacated cells to the top-left by reverse jeu de taquin, and fill them with 1.
  Tableau promotion(const Tableau& t) const {
    const int top = cartan().rank + 1;
    Tableau x = t;
    std::vector<int> holes;
    for (int c = 0; c < s_; ++c) {
      int& v = x[(r_ - 1) * s_ + c];
      if (v == top) {
        v = 0;
        holes.push_back(c);
      }
    }
    for (int& v : x)
      if (v != 0) v += 1;
    for (int c : holes) {
      int row = r_ - 1, col = c;
      while (true) {
        const int up = row > 0 ? x[(row - 1) * s_ + col] : 0;
        const int left = col > 0 ? x[row * s_ + col - 1] : 0;
        if (up == 0 && left == 0) break;
        if (up >= left) {
          x[row * s_ + col] = up;
          x[(row - 1) * s_ + col] = 0;
          --row;
        } else {
          x[row * s_ + col] = left;
          x[row * s_ + col - 1] = 0;
          --col;
        }
      }
    }
    for (int& v : x)
      if (v == 0) v = 1;
    return x;
  }

  std::string label_of(const Tableau& t) const {
    const bool wide = cartan().rank + 1 >= 10;
    std::string s;
    for (int row = 0; row < r_; ++row) {
      if (row) s += "/";
      for (int col = 0; col < s_; ++col) {
        if (wide && col) s += ",";
        s += std::to_string(t[row * s_ + col]);
      }
    }
    return s;
  }

 private:
  // Column reading word: columns left to right, each read bottom to top.
  std::vector<int> reading_cells() const {
    std::vector<int> cells;
    for (int col = 0; col < s_; ++col)
      for (int row = r_ - 1; row >= 0; --row) cells.push_back(row * s_ + col);
    return cells;
  }

  // Bracketing for color i in I_0: an i+1 followed later by an i cancel.  Returns the unmatched
  // positions of i (left to right) and of i+1 (left to right).
  std::pair<std::vector<int>, std::vector<int>> signature(const Tableau& t, int i) const {
    std::vector<int> open_plus, free_i;
    for (int cell : cells_) {
      if (t[cell] == i + 1) {
        open_plus.push_back(cell);
      } else if (t[cell] == i) {
        if (!open_plus.empty()) open_plus.pop_back();
        else free_i.push_back(cell);
      }
    }
    return {free_i, open_plus};
  }

  void build() {
    const CartanData& cd = cartan();
    const int n = cd.rank, sz = cd.size();
    tabs_ = detail::enumerate_ssyt(r_, s_, n + 1);
    for (int k = 0; k < size(); ++k) {
      by_tab_.emplace(tabs_[k], k);
      labels_.push_back(label_of(tabs_[k]));
    }
    cells_ = reading_cells();
    e_.assign(sz, std::vector<int>(size(), -1));
    f_.assign(sz, std::vector<int>(size(), -1));
    eps_.assign(sz, std::vector<int>(size(), 0));
    phi_.assign(sz, std::vector<int>(size(), 0));
    for (int k = 0; k < size(); ++k) {
      const Tableau& t = tabs_[k];
      for (int i = 1; i <= n; ++i) {
        auto [free_i, free_plus] = signature(t, i);
        eps_[i][k] = static_cast<int>(free_plus.size());
        phi_[i][k] = static_cast<int>(free_i.size());
        if (!free_i.empty()) {
          Tableau x = t;
          x[free_i.back()] = i + 1;
          f_[i][k] = by_tab_.at(x);
        }
        if (!free_plus.empty()) {
          Tableau x = t;
          x[free_plus.front()] = i;
          e_[i][k] = by_tab_.at(x);
        }
      }
      std::vector<long long> cnt(n + 2, 0);
      for (int v : t) ++cnt[v];
      ClassicalWeight w = cd.classical_zero();
      for (int i = 1; i <= n; ++i) w.lambda[i] = cnt[i] - cnt[i + 1];
      w.lambda[0] = cnt[n + 1] - cnt[1];
      wts_.push_back(w);
    }
    pr_.resize(size());
    pr_inv_.resize(size());
    for (int k = 0; k < size(); ++k) {
      pr_[k] = by_tab_.at(promotion(tabs_[k]));
      pr_inv_[pr_[k]] = k;
    }
    // e_0 = pr^{-1} e_1 pr
    for (int k = 0; k < size(); ++k) {
      const int p = pr_[k];
      e_[0][k] = e_[1][p] < 0 ? -1 : pr_inv_[e_[1][p]];
      f_[0][k] = f_[1][p] < 0 ? -1 : pr_inv_[f_[1][p]];
      eps_[0][k] = eps_[1][p];
      phi_[0][k] = phi_[1][p];
    }
    find_distinguished();
  }

  void find_distinguished() {
    const CartanData& cd = cartan();
    lev_ = -1;
    for (int k = 0; k < size(); ++k) {
      long long l = 0;
      for (int i = 0; i < cd.size(); ++i) l += static_cast<long long>(cd.comarks[i]) * eps_[i][k];
      if (lev_ < 0 || l < lev_) lev_ = static_cast<int>(l);
    }
    mu_ = kr_translation(cd, r_);
    const ClassicalWeight u_weight = (s_ / cd.c[r_]) * mu_;
    ClassicalWeight lev_lambda0 = cd.classical_zero();
    lev_lambda0.lambda[0] = lev_;
    u_ = m_ = m_prime_ = -1;
    auto claim = [&](int& slot, int k, const char* what) {
      if (slot >= 0) throw std::logic_error(std::string("distinguished element ") + what + " is not unique in " + describe());
      slot = k;
    };
    for (int k = 0; k < size(); ++k) {
      if (wts_[k] == u_weight) claim(u_, k, "u");
      ClassicalWeight ev = cd.classical_zero(), pv = cd.classical_zero();
      for (int i = 0; i < cd.size(); ++i) {
        ev.lambda[i] = eps_[i][k];
        pv.lambda[i] = phi_[i][k];
      }
      if (ev == lev_lambda0) claim(m_, k, "m");
      if (pv == lev_lambda0) claim(m_prime_, k, "m'");
    }
    if (u_ < 0 || m_ < 0 || m_prime_ < 0)
      throw std::logic_error("distinguished element missing in " + describe());
  }

  static std::optional<Element> step(const std::vector<std::vector<int>>& table, int i, const Element& b) {
    const int t = table[i][b.index];
    if (t < 0) return std::nullopt;
    return Element::atom(t);
  }

  int r_, s_;
  std::vector<Tableau> tabs_;
  std::map<Tableau, int> by_tab_;
  std::vector<std::string> labels_;
  std::vector<int> cells_;
  std::vector<std::vector<int>> e_, f_, eps_, phi_;
  std::vector<ClassicalWeight> wts_;
  std::vector<int> pr_, pr_inv_;
  int lev_ = 0;
  int u_ = -1, m_ = -1, m_prime_ = -1;
  ClassicalWeight mu_;
};

using KRPtr = std::shared_ptr<const KRCrystal>;

inline KRPtr make_kr(const CartanPtr& cd, int r, int s) { return std::make_shared<KRCrystal>(cd, r, s); }

// ---------------------------------------------------------------------------
// Perfectness.

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct PerfectnessReport {
  int level = 0;
  std::size_t min_count = 0;
  std::size_t dominant_count = 0;
  std::vector<CheckResult> checks;
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
  }
};

// Dominant classical weights of the given level.
inline std::vector<ClassicalWeight> dominant_weights_of_level(const CartanData& cd, long long level) {
  std::vector<ClassicalWeight> out;
  ClassicalWeight w = cd.classical_zero();
  std::function<void(int, long long)> rec = [&](int i, long long left) {
    if (i == cd.size()) {
      if (left == 0) out.push_back(w);
      return;
    }
    for (long long m = 0; m * cd.comarks[i] <= left; ++m) {
      w.lambda[i] = m;
      rec(i + 1, left - m * cd.comarks[i]);
    }
    w.lambda[i] = 0;
  };
  rec(0, level);
  return out;
}

// Coordinates of a level-zero classical weight in the basis alpha_1..alpha_n (modulo delta).
inline std::vector<Rational> finite_root_coordinates(const CartanData& cd, const ClassicalWeight& w) {
  std::vector<Rational> x(cd.rank);
  for (int i = 0; i < cd.rank; ++i)
    for (int j = 0; j < cd.rank; ++j) x[i] += cd.finite_inverse[i][j] * w.lambda[j + 1];
  return x;
}

inline PerfectnessReport perfectness_report(const CrystalPtr& b, int level, const DynkinAuto& expected_auto) {
  const CartanData& cd = b->cartan();
  PerfectnessReport rep;
  rep.level = level;
  const auto elems = b->elements();

  rep.checks.push_back({"(i) crystal of a finite-dimensional module", true, "assumed by construction"});

  {
    const auto bb = tensor({b, b});
    const auto g = explore(bb, {Element::tensor({elems[0], elems[0]})}, Closure::Both);
    const bool ok = static_cast<std::size_t>(g.size()) == elems.size() * elems.size();
    rep.checks.push_back({"(ii) B ⊗ B connected", ok,
                          std::to_string(g.size()) + " of " + std::to_string(elems.size() * elems.size())});
  }
  {
    // Unique maximal weight lambda_0 with every weight in lambda_0 - Q_0^+ and multiplicity one.
    std::map<ClassicalWeight, int> mult;
    for (const auto& x : elems) ++mult[b->classical_weight(x)];
    auto below = [&](const ClassicalWeight& lo, const ClassicalWeight& hi) {
      for (const auto& v : finite_root_coordinates(cd, hi - lo))
        if (v < 0 || !is_integer(v)) return false;
      return true;
    };
    std::vector<ClassicalWeight> tops;
    for (const auto& [w, _] : mult) {
      bool all_below = true;
      for (const auto& [v, __] : mult)
        if (!below(v, w)) {
          all_below = false;
          break;
        }
      if (all_below) tops.push_back(w);
    }
    const bool ok = tops.size() == 1 && mult[tops[0]] == 1;
    rep.checks.push_back({"(iii) unique extremal weight of multiplicity one", ok,
                          ok ? to_string(tops[0]) : std::to_string(tops.size()) + " candidates"});
  }
  std::vector<Element> minimal;
  {
    bool ok = true;
    for (const auto& x : elems) {
      const long long l = cd.level(b->eps_weight(x));
      if (l < level) ok = false;
      if (l == level) minimal.push_back(x);
    }
    rep.checks.push_back({"(iv) <c, eps(b)> >= level", ok, ""});
  }
  const auto dominant = dominant_weights_of_level(cd, level);
  rep.min_count = minimal.size();
  rep.dominant_count = dominant.size();
  std::map<ClassicalWeight, Element> by_phi;
  {
    std::set<ClassicalWeight> eps_img, phi_img;
    for (const auto& x : minimal) {
      eps_img.insert(b->eps_weight(x));
      phi_img.insert(b->phi_weight(x));
      by_phi.emplace(b->phi_weight(x), x);
    }
    const std::set<ClassicalWeight> dom(dominant.begin(), dominant.end());
    const bool ok = minimal.size() == dominant.size() && eps_img == dom && phi_img == dom;
    rep.checks.push_back({"(v) eps and phi biject B_min onto level-l dominant weights", ok,
                          std::to_string(minimal.size()) + " minimal, " + std::to_string(dominant.size()) + " dominant"});
  }
  {
    bool ok = by_phi.size() == dominant.size();
    for (const auto& lam : dominant) {
      auto it = by_phi.find(lam);
      if (it == by_phi.end() || b->eps_weight(it->second) != cd.apply(expected_auto, lam)) ok = false;
    }
    rep.checks.push_back({"associated automorphism eps ∘ phi^{-1} equals the expected one", ok, ""});
  }
  return rep;
}

inline PerfectnessReport perfectness_report(const KRPtr& b) {
  const CartanData& cd = b->cartan();
  return perfectness_report(b, b->level(), cd.tau_of(b->r()).inverse());
}

// ---------------------------------------------------------------------------
// Finite crystal utilities shared by the tensor-product machinery.

// The unique element of the given classical weight in a finite connected crystal graph.
inline int unique_node_of_weight(const CrystalGraph& g, const ClassicalWeight& w) {
  int found = -1;
  for (int v = 0; v < g.size(); ++v)
    if (g.classical_weight(v) == w) {
      if (found >= 0) throw std::logic_error("weight " + to_string(w) + " is not simple in " + g.crystal->describe());
      found = v;
    }
  if (found < 0) throw std::logic_error("weight " + to_string(w) + " does not occur in " + g.crystal->describe());
  return found;
}

// BFS matching of two crystal graphs along colored edges, with colors on the target side relabeled
// by `color_map` (target color = color_map(source color)).  Returns the node map or throws on conflict.
inline std::vector<int> match_graphs(const CrystalGraph& from, const CrystalGraph& to, int seed_from, int seed_to,
                                     const DynkinAuto& color_map) {
  std::vector<int> map(from.size(), -1), back(to.size(), -1);
  std::deque<int> queue;
  auto bind = [&](int x, int y) {
    if (map[x] == y && back[y] == x) return;
    if (map[x] >= 0 || back[y] >= 0) throw std::logic_error("crystal matching conflict");
    map[x] = y;
    back[y] = x;
    queue.push_back(x);
  };
  bind(seed_from, seed_to);
  const int sz = from.crystal->cartan().size();
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    const int y = map[x];
    for (int i = 0; i < sz; ++i) {
      const int j = color_map(i);
      for (int pass = 0; pass < 2; ++pass) {
        const int a = pass ? from.e_to[x][i] : from.f_to[x][i];
        const int c = pass ? to.e_to[y][j] : to.f_to[y][j];
        if ((a < 0) != (c < 0)) throw std::logic_error("crystal matching: edge present on one side only");
        if (a >= 0) bind(a, c);
      }
    }
  }
  for (int x = 0; x < from.size(); ++x)
    if (map[x] < 0) throw std::logic_error("crystal matching did not reach every element");
  return map;
}

// The Sigma-action b -> tau(b) on a finite crystal B in C (characterized by tau e_i = e_{tau(i)} tau),
// as a map on the nodes of the full graph of B.
inline std::vector<int> sigma_action(const CrystalGraph& g, const DynkinAuto& tau, int u_node) {
  const CartanData& cd = g.crystal->cartan();
  const int target = unique_node_of_weight(g, cd.apply(tau, g.classical_weight(u_node)));
  return match_graphs(g, g, u_node, target, tau);
}

}  // namespace krd
