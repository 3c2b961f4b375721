#pragma once

// Abstract crystals, tensor products, twisted crystals, the Weyl group action on
// regular crystals, F-closures and finite graph exploration.

#include "weyl.hpp"

#include "json.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <future>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace krd {

// A crystal element.  The meaning of the payload depends on the crystal that owns it.
struct Element {
  enum class Kind : unsigned char { Atom, Tensor, Twisted, Path, Trivial };

  Kind kind = Kind::Trivial;
  int index = 0;               // Atom: position in the owning finite crystal
  std::vector<Element> parts;  // Tensor: factors left to right; Twisted: the single inner element
  std::vector<int> path;       // Path: carrier indices b_m, ..., b_1 (leftmost first)
  Rational degree{0};          // Path: <wt, d>

  static Element atom(int i) {
    Element e;
    e.kind = Kind::Atom;
    e.index = i;
    return e;
  }
  static Element tensor(std::vector<Element> factors) {
    if (factors.empty()) throw std::invalid_argument("empty tensor element");
    Element e;
    e.kind = Kind::Tensor;
    e.parts = std::move(factors);
    return e;
  }
  static Element twisted(Element inner) {
    Element e;
    e.kind = Kind::Twisted;
    e.parts.push_back(std::move(inner));
    return e;
  }
  static Element trivial() { return Element{}; }

  const Element& inner() const { return parts.at(0); }

  // Canonical identity string.  Path degrees are a function of the path and are excluded.
  std::string key() const {
    std::string s;
    append_key(s);
    return s;
  }
  void append_key(std::string& s) const {
    switch (kind) {
      case Kind::Atom: s += std::to_string(index); break;
      case Kind::Tensor:
        s += '(';
        for (std::size_t k = 0; k < parts.size(); ++k) {
          if (k) s += '|';
          parts[k].append_key(s);
        }
        s += ')';
        break;
      case Kind::Twisted:
        s += 't';
        parts[0].append_key(s);
        break;
      case Kind::Path:
        s += 'p';
        for (std::size_t k = 0; k < path.size(); ++k) {
          s += (k ? ',' : '[');
          s += std::to_string(path[k]);
        }
        s += ']';
        break;
      case Kind::Trivial: s += '*'; break;
    }
  }

  bool operator==(const Element&) const = default;
};

class Crystal;
using CrystalPtr = std::shared_ptr<const Crystal>;
using CartanPtr = std::shared_ptr<const CartanData>;

class Crystal {
 public:
  explicit Crystal(CartanPtr cd) : cd_(std::move(cd)) {}
  virtual ~Crystal() = default;

  const CartanData& cartan() const { return *cd_; }
  const CartanPtr& cartan_ptr() const { return cd_; }

  virtual std::optional<Element> e(int i, const Element& b) const = 0;
  virtual std::optional<Element> f(int i, const Element& b) const = 0;
  virtual int epsilon(int i, const Element& b) const = 0;
  virtual int phi(int i, const Element& b) const = 0;
  // Weight in P.  The d-pairing is meaningful only when affine() is true; otherwise it is zero.
  virtual AffineWeight weight(const Element& b) const = 0;
  virtual bool affine() const { return false; }
  virtual std::string format(const Element& b) const = 0;
  virtual std::string describe() const = 0;
  // Finite crystals list their elements; infinite ones throw.
  virtual bool finite() const { return false; }
  virtual std::vector<Element> elements() const {
    throw std::logic_error("crystal " + describe() + " is not finite");
  }

  ClassicalWeight classical_weight(const Element& b) const { return cd_->cl(weight(b)); }
  std::vector<long long> eps_vector(const Element& b) const {
    std::vector<long long> v(cd_->size());
    for (int i = 0; i < cd_->size(); ++i) v[i] = epsilon(i, b);
    return v;
  }
  std::vector<long long> phi_vector(const Element& b) const {
    std::vector<long long> v(cd_->size());
    for (int i = 0; i < cd_->size(); ++i) v[i] = phi(i, b);
    return v;
  }
  ClassicalWeight eps_weight(const Element& b) const { return ClassicalWeight{eps_vector(b)}; }
  ClassicalWeight phi_weight(const Element& b) const { return ClassicalWeight{phi_vector(b)}; }

  std::optional<Element> e_power(int i, Element b, int k) const {
    for (int t = 0; t < k; ++t) {
      auto n = e(i, b);
      if (!n) return std::nullopt;
      b = std::move(*n);
    }
    return b;
  }
  std::optional<Element> f_power(int i, Element b, int k) const {
    for (int t = 0; t < k; ++t) {
      auto n = f(i, b);
      if (!n) return std::nullopt;
      b = std::move(*n);
    }
    return b;
  }

 private:
  CartanPtr cd_;
};

// ---------------------------------------------------------------------------
// Finite crystal given by explicit operator tables; elements are Atom(index).

class TableCrystal : public Crystal {
 public:
  struct Tables {
    std::vector<std::vector<int>> e, f;  // [i][index] -> index or -1
    std::vector<std::vector<int>> eps, phi;
    std::vector<ClassicalWeight> weights;
    std::vector<std::string> labels;
  };

  TableCrystal(CartanPtr cd, Tables t, std::string name)
      : Crystal(std::move(cd)), t_(std::move(t)), name_(std::move(name)) {
    for (std::size_t k = 0; k < t_.labels.size(); ++k) by_label_.emplace(t_.labels[k], static_cast<int>(k));
  }

  int size() const { return static_cast<int>(t_.weights.size()); }
  const Tables& tables() const { return t_; }

  std::optional<Element> e(int i, const Element& b) const override { return step(t_.e, i, b); }
  std::optional<Element> f(int i, const Element& b) const override { return step(t_.f, i, b); }
  int epsilon(int i, const Element& b) const override { return t_.eps.at(i).at(b.index); }
  int phi(int i, const Element& b) const override { return t_.phi.at(i).at(b.index); }
  AffineWeight weight(const Element& b) const override { return cartan().aff(t_.weights.at(b.index)); }
  std::string format(const Element& b) const override { return t_.labels.at(b.index); }
  std::string describe() const override { return name_; }
  bool finite() const override { return true; }
  std::vector<Element> elements() const override {
    std::vector<Element> out;
    for (int k = 0; k < size(); ++k) out.push_back(Element::atom(k));
    return out;
  }
  std::optional<Element> parse(const std::string& label) const {
    auto it = by_label_.find(label);
    if (it == by_label_.end()) return std::nullopt;
    return Element::atom(it->second);
  }

 private:
  static std::optional<Element> step(const std::vector<std::vector<int>>& table, int i, const Element& b) {
    const int r = table.at(i).at(b.index);
    if (r < 0) return std::nullopt;
    return Element::atom(r);
  }

  Tables t_;
  std::string name_;
  std::unordered_map<std::string, int> by_label_;
};

// ---------------------------------------------------------------------------
// The one-element crystal of weight zero.

class TrivialCrystal : public Crystal {
 public:
  using Crystal::Crystal;
  std::optional<Element> e(int, const Element&) const override { return std::nullopt; }
  std::optional<Element> f(int, const Element&) const override { return std::nullopt; }
  int epsilon(int, const Element&) const override { return 0; }
  int phi(int, const Element&) const override { return 0; }
  AffineWeight weight(const Element&) const override { return cartan().zero(); }
  bool affine() const override { return true; }
  std::string format(const Element&) const override { return "1"; }
  std::string describe() const override { return "T"; }
  bool finite() const override { return true; }
  std::vector<Element> elements() const override { return {Element::trivial()}; }
};

// ---------------------------------------------------------------------------
// Tensor product B_1 ⊗ ... ⊗ B_p.  With two factors:
//   e_i(b1 ⊗ b2) = e_i b1 ⊗ b2 if phi_i(b1) >= eps_i(b2), else b1 ⊗ e_i b2;
//   f_i(b1 ⊗ b2) = f_i b1 ⊗ b2 if phi_i(b1) >  eps_i(b2), else b1 ⊗ f_i b2.
// More factors are handled as the left-nested product ((B_1 ⊗ B_2) ⊗ ...) ⊗ B_p.

class TensorCrystal : public Crystal {
 public:
  explicit TensorCrystal(std::vector<CrystalPtr> factors)
      : Crystal(check(factors)), factors_(std::move(factors)) {
    for (const auto& c : factors_) affine_ = affine_ || c->affine();
  }

  const std::vector<CrystalPtr>& factors() const { return factors_; }
  int arity() const { return static_cast<int>(factors_.size()); }

  // Factor index acted on by e_i (raise = true) or f_i, or -1 when the result is Null.
  int acting_factor(int i, const Element& b, bool raise) const {
    const int p = arity();
    std::vector<int> prefix_phi(p), eps(p);
    int run_phi = 0;
    for (int k = 0; k < p; ++k) {
      eps[k] = factors_[k]->epsilon(i, b.parts[k]);
      const int ph = factors_[k]->phi(i, b.parts[k]);
      prefix_phi[k] = run_phi;  // Phi of the first k factors
      run_phi = (k == 0) ? ph : ph + std::max(0, run_phi - eps[k]);
    }
    for (int k = p - 1; k >= 1; --k) {
      const bool left = raise ? prefix_phi[k] >= eps[k] : prefix_phi[k] > eps[k];
      if (!left) return k;
    }
    return 0;
  }

  std::optional<Element> e(int i, const Element& b) const override { return act(i, b, true); }
  std::optional<Element> f(int i, const Element& b) const override { return act(i, b, false); }

  int epsilon(int i, const Element& b) const override {
    int run_eps = 0, run_phi = 0;
    for (int k = 0; k < arity(); ++k) {
      const int ek = factors_[k]->epsilon(i, b.parts[k]);
      const int pk = factors_[k]->phi(i, b.parts[k]);
      if (k == 0) {
        run_eps = ek;
        run_phi = pk;
      } else {
        run_eps += std::max(0, ek - run_phi);
        run_phi = pk + std::max(0, run_phi - ek);
      }
    }
    return run_eps;
  }
  int phi(int i, const Element& b) const override {
    int run_phi = 0;
    for (int k = 0; k < arity(); ++k) {
      const int ek = factors_[k]->epsilon(i, b.parts[k]);
      const int pk = factors_[k]->phi(i, b.parts[k]);
      run_phi = (k == 0) ? pk : pk + std::max(0, run_phi - ek);
    }
    return run_phi;
  }
  AffineWeight weight(const Element& b) const override {
    AffineWeight w = cartan().zero();
    for (int k = 0; k < arity(); ++k) w += factors_[k]->weight(b.parts[k]);
    return w;
  }
  bool affine() const override { return affine_; }
  std::string format(const Element& b) const override {
    std::string s;
    for (int k = 0; k < arity(); ++k) {
      if (k) s += " ⊗ ";
      const bool paren = b.parts[k].kind == Element::Kind::Tensor;
      s += paren ? "(" + factors_[k]->format(b.parts[k]) + ")" : factors_[k]->format(b.parts[k]);
    }
    return s;
  }
  std::string describe() const override {
    std::string s;
    for (int k = 0; k < arity(); ++k) {
      if (k) s += " ⊗ ";
      const bool paren = dynamic_cast<const TensorCrystal*>(factors_[k].get()) != nullptr;
      s += paren ? "(" + factors_[k]->describe() + ")" : factors_[k]->describe();
    }
    return s;
  }
  bool finite() const override {
    return std::all_of(factors_.begin(), factors_.end(), [](const CrystalPtr& c) { return c->finite(); });
  }
  std::vector<Element> elements() const override {
    std::vector<std::vector<Element>> lists;
    for (const auto& c : factors_) lists.push_back(c->elements());
    std::vector<Element> out;
    std::vector<Element> cur(arity());
    std::function<void(int)> rec = [&](int k) {
      if (k == arity()) {
        out.push_back(Element::tensor(cur));
        return;
      }
      for (const auto& x : lists[k]) {
        cur[k] = x;
        rec(k + 1);
      }
    };
    rec(0);
    return out;
  }

 private:
  static CartanPtr check(const std::vector<CrystalPtr>& factors) {
    if (factors.empty()) throw std::invalid_argument("tensor product of no crystals");
    for (const auto& c : factors)
      if (c->cartan_ptr().get() != factors[0]->cartan_ptr().get() &&
          c->cartan().a != factors[0]->cartan().a)
        throw std::invalid_argument("tensor factors over different Cartan data");
    return factors[0]->cartan_ptr();
  }

  std::optional<Element> act(int i, const Element& b, bool raise) const {
    const int k = acting_factor(i, b, raise);
    auto moved = raise ? factors_[k]->e(i, b.parts[k]) : factors_[k]->f(i, b.parts[k]);
    if (!moved) return std::nullopt;
    Element r = b;
    r.parts[k] = std::move(*moved);
    return r;
  }

  std::vector<CrystalPtr> factors_;
  bool affine_ = false;
};

inline CrystalPtr tensor(std::vector<CrystalPtr> factors) {
  if (factors.size() == 1) return factors[0];
  return std::make_shared<TensorCrystal>(std::move(factors));
}

// ---------------------------------------------------------------------------
// Twisted crystal tau~(B): same underlying set, e_i tau~(b) = tau~(e_{tau^{-1}(i)} b),
// wt(tau~(b)) = tau(wt(b)).

class TwistedCrystal : public Crystal {
 public:
  TwistedCrystal(DynkinAuto tau, CrystalPtr inner)
      : Crystal(inner->cartan_ptr()), tau_(std::move(tau)), inv_(tau_.inverse()), inner_(std::move(inner)) {}

  const DynkinAuto& tau() const { return tau_; }
  const CrystalPtr& inner() const { return inner_; }

  Element wrap(Element b) const { return Element::twisted(std::move(b)); }

  std::optional<Element> e(int i, const Element& b) const override {
    auto r = inner_->e(inv_(i), b.inner());
    if (!r) return std::nullopt;
    return wrap(std::move(*r));
  }
  std::optional<Element> f(int i, const Element& b) const override {
    auto r = inner_->f(inv_(i), b.inner());
    if (!r) return std::nullopt;
    return wrap(std::move(*r));
  }
  int epsilon(int i, const Element& b) const override { return inner_->epsilon(inv_(i), b.inner()); }
  int phi(int i, const Element& b) const override { return inner_->phi(inv_(i), b.inner()); }
  AffineWeight weight(const Element& b) const override {
    const AffineWeight w = inner_->weight(b.inner());
    if (!inner_->affine()) return cartan().aff(cartan().apply(tau_, cartan().cl(w)));
    return cartan().apply(tau_, w);
  }
  bool affine() const override { return inner_->affine(); }
  std::string format(const Element& b) const override {
    return "τ" + perm_text() + "(" + inner_->format(b.inner()) + ")";
  }
  std::string describe() const override { return "τ" + perm_text() + "(" + inner_->describe() + ")"; }
  bool finite() const override { return inner_->finite(); }
  std::vector<Element> elements() const override {
    std::vector<Element> out;
    for (auto& x : inner_->elements()) out.push_back(wrap(x));
    return out;
  }

 private:
  std::string perm_text() const {
    const int idx = cartan().sigma_index(tau_);
    if (idx >= 0) return std::to_string(idx);
    std::string s = "[";
    for (std::size_t k = 0; k < tau_.perm.size(); ++k) s += (k ? "," : "") + std::to_string(tau_.perm[k]);
    return s + "]";
  }

  DynkinAuto tau_;
  DynkinAuto inv_;
  CrystalPtr inner_;
};

// ---------------------------------------------------------------------------
// Weyl group action on regular crystals.

inline Element weyl_reflect(const Crystal& c, int i, const Element& b) {
  const int k = c.phi(i, b) - c.epsilon(i, b);
  std::optional<Element> r = (k >= 0) ? c.f_power(i, b, k) : c.e_power(i, b, -k);
  if (!r) throw std::logic_error("Weyl group action met Null: crystal is not regular");
  return *r;
}

// S_w for w = s_{word[0]} ... s_{word[k-1]}; the rightmost reflection acts first.
inline Element weyl_action(const Crystal& c, const std::vector<int>& word, Element b) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) b = weyl_reflect(c, *it, b);
  return b;
}

// ---------------------------------------------------------------------------
// Closures and graphs.

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegreeConflict : std::logic_error {
  using std::logic_error::logic_error;
};

class ElementSet {
 public:
  bool insert(const Element& b) {
    auto [it, added] = index_.emplace(b.key(), static_cast<int>(items_.size()));
    if (added) {
      items_.push_back(b);
      return true;
    }
    if (!(items_[it->second] == b))
      throw DegreeConflict("element reached with two different degrees: " + b.key());
    return false;
  }
  bool contains(const Element& b) const { return index_.count(b.key()) != 0; }
  int find(const Element& b) const {
    auto it = index_.find(b.key());
    return it == index_.end() ? -1 : it->second;
  }
  const std::vector<Element>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

 private:
  std::vector<Element> items_;
  std::unordered_map<std::string, int> index_;
};

// F_i S = { f_i^k b | b in S, k >= 0 } \ {0}.
inline ElementSet f_closure_step(const Crystal& c, const ElementSet& s, int i, std::size_t cap) {
  ElementSet out;
  for (const auto& b : s.items()) {
    std::optional<Element> cur = b;
    while (cur) {
      out.insert(*cur);
      if (out.size() > cap) throw CapExceeded("F-closure exceeded node cap of " + std::to_string(cap));
      cur = c.f(i, *cur);
    }
  }
  return out;
}

// Applies F_{order[0]} first, then F_{order[1]}, and so on.
inline ElementSet f_closure(const Crystal& c, const std::vector<Element>& seeds, const std::vector<int>& order,
                            std::size_t cap = 200000) {
  ElementSet s;
  for (const auto& b : seeds) s.insert(b);
  for (int i : order) s = f_closure_step(c, s, i, cap);
  return s;
}

// F_w S for w = s_{letters[0]} ... s_{letters[k-1]} (the seeds must already be twisted as needed).
inline ElementSet f_closure_word(const Crystal& c, const std::vector<Element>& seeds, const std::vector<int>& letters,
                                 std::size_t cap = 200000) {
  return f_closure(c, seeds, std::vector<int>(letters.rbegin(), letters.rend()), cap);
}

enum class Closure { None, E, F, Both };

struct ExploreOptions {
  std::size_t node_cap = 200000;
  bool canonical_order = true;
  int threads = 1;
};

inline constexpr int kNull = -1;
inline constexpr int kOutside = -2;

// Finite edge-colored graph; e/f targets are node indices, kNull for the crystal's 0,
// or kOutside for an element outside the node set.
struct CrystalGraph {
  CrystalPtr crystal;
  std::vector<Element> nodes;
  std::unordered_map<std::string, int> index;
  std::vector<std::vector<int>> e_to, f_to;  // [node][color]
  std::vector<std::vector<int>> eps, phi;    // [node][color]
  std::vector<AffineWeight> weights;

  int size() const { return static_cast<int>(nodes.size()); }
  int find(const Element& b) const {
    auto it = index.find(b.key());
    return it == index.end() ? -1 : it->second;
  }
  bool contains(const Element& b) const { return find(b) >= 0; }
  ClassicalWeight classical_weight(int v) const { return crystal->cartan().cl(weights[v]); }
  const Rational& degree(int v) const { return weights[v].delta; }
  // Classical-highest-weight test (e_i b = 0 for i in I_0).
  bool classically_highest(int v) const {
    for (std::size_t i = 1; i < eps[v].size(); ++i)
      if (eps[v][i] != 0) return false;
    return true;
  }
};

namespace detail {

struct NodeInfo {
  std::vector<std::optional<Element>> e, f;
  std::vector<int> eps, phi;
  AffineWeight weight;
};

inline NodeInfo node_info(const Crystal& c, const Element& b) {
  const int sz = c.cartan().size();
  NodeInfo info;
  info.e.resize(sz);
  info.f.resize(sz);
  info.eps.resize(sz);
  info.phi.resize(sz);
  for (int i = 0; i < sz; ++i) {
    info.e[i] = c.e(i, b);
    info.f[i] = c.f(i, b);
    info.eps[i] = c.epsilon(i, b);
    info.phi[i] = c.phi(i, b);
  }
  info.weight = c.weight(b);
  return info;
}

inline std::vector<NodeInfo> node_infos(const Crystal& c, const std::vector<Element>& batch, int threads) {
  std::vector<NodeInfo> out(batch.size());
  if (threads <= 1 || batch.size() < 64) {
    for (std::size_t k = 0; k < batch.size(); ++k) out[k] = node_info(c, batch[k]);
    return out;
  }
  std::vector<std::future<void>> jobs;
  const std::size_t chunk = (batch.size() + threads - 1) / threads;
  for (std::size_t start = 0; start < batch.size(); start += chunk) {
    const std::size_t stop = std::min(batch.size(), start + chunk);
    jobs.push_back(std::async(std::launch::async, [&, start, stop] {
      for (std::size_t k = start; k < stop; ++k) out[k] = node_info(c, batch[k]);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

}  // namespace detail

// Breadth-first closure of the seeds under the chosen operators, with every edge recorded.
// With Closure::None the graph is the induced subgraph on the seeds themselves.
inline CrystalGraph explore(const CrystalPtr& crystal, const std::vector<Element>& seeds, Closure closure,
                            const ExploreOptions& opt = {}) {
  const int sz = crystal->cartan().size();
  ElementSet set;
  std::vector<detail::NodeInfo> infos;
  std::vector<Element> frontier;
  for (const auto& b : seeds)
    if (set.insert(b)) frontier.push_back(b);
  if (set.size() > opt.node_cap) throw CapExceeded("exploration exceeded node cap of " + std::to_string(opt.node_cap));
  while (!frontier.empty()) {
    auto batch = detail::node_infos(*crystal, frontier, opt.threads);
    std::vector<Element> next;
    for (auto& info : batch) {
      auto visit = [&](const std::optional<Element>& t) {
        if (!t) return;
        if (set.insert(*t)) {
          next.push_back(*t);
          if (set.size() > opt.node_cap)
            throw CapExceeded("exploration exceeded node cap of " + std::to_string(opt.node_cap));
        }
      };
      for (int i = 0; i < sz; ++i) {
        if (closure == Closure::E || closure == Closure::Both) visit(info.e[i]);
        if (closure == Closure::F || closure == Closure::Both) visit(info.f[i]);
      }
      infos.push_back(std::move(info));
    }
    frontier = std::move(next);
  }

  const auto& items = set.items();
  std::vector<int> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::string> keys;
  keys.reserve(items.size());
  for (const auto& b : items) keys.push_back(b.key());
  if (opt.canonical_order)
    std::sort(order.begin(), order.end(), [&](int x, int y) { return keys[x] < keys[y]; });

  CrystalGraph g;
  g.crystal = crystal;
  for (int old : order) {
    g.index.emplace(keys[old], static_cast<int>(g.nodes.size()));
    g.nodes.push_back(items[old]);
  }
  g.e_to.assign(g.size(), std::vector<int>(sz));
  g.f_to.assign(g.size(), std::vector<int>(sz));
  g.eps.assign(g.size(), {});
  g.phi.assign(g.size(), {});
  g.weights.assign(g.size(), crystal->cartan().zero());
  auto target = [&](const std::optional<Element>& t) {
    if (!t) return kNull;
    const int v = g.find(*t);
    if (v < 0) return kOutside;
    if (!(g.nodes[v] == *t)) throw DegreeConflict("element reached with two different degrees: " + t->key());
    return v;
  };
  for (int nv = 0; nv < g.size(); ++nv) {
    auto& info = infos[order[nv]];
    for (int i = 0; i < sz; ++i) {
      g.e_to[nv][i] = target(info.e[i]);
      g.f_to[nv][i] = target(info.f[i]);
    }
    g.eps[nv] = std::move(info.eps);
    g.phi[nv] = std::move(info.phi);
    g.weights[nv] = std::move(info.weight);
  }
  return g;
}

inline CrystalGraph explore_all(const CrystalPtr& crystal, const ExploreOptions& opt = {}) {
  return explore(crystal, crystal->elements(), Closure::None, opt);
}

// Violations of the crystal axioms on the edges of a graph (at most `limit` messages).  Checks that
// e_i and f_i are mutually inverse, that eps/phi shift by one along edges, phi_i - eps_i = <wt, alpha_i^vee>,
// that weights move by alpha_i (including the degree for graded crystals), and regularity
// eps_i(b) = max{k | e_i^k b != 0} along strings that stay inside the graph.
inline std::vector<std::string> axiom_violations(const CrystalGraph& g, std::size_t limit = 20) {
  const CartanData& cd = g.crystal->cartan();
  const bool graded = g.crystal->affine();
  std::vector<std::string> out;
  auto report = [&](int v, int i, const std::string& what) {
    if (out.size() < limit) out.push_back(g.crystal->format(g.nodes[v]) + " color " + std::to_string(i) + ": " + what);
  };
  for (int v = 0; v < g.size(); ++v) {
    for (int i = 0; i < cd.size(); ++i) {
      if (g.phi[v][i] - g.eps[v][i] != g.weights[v].lambda[i]) report(v, i, "phi - eps differs from the weight");
      if (g.eps[v][i] < 0 || g.phi[v][i] < 0) report(v, i, "negative eps or phi");
      const int up = g.e_to[v][i];
      if (up >= 0) {
        if (g.f_to[up][i] != v) report(v, i, "f does not undo e");
        if (g.eps[up][i] != g.eps[v][i] - 1 || g.phi[up][i] != g.phi[v][i] + 1) report(v, i, "eps/phi not shifted by e");
        AffineWeight expect = g.weights[v] + cd.alpha(i);
        if (!graded) expect.delta = g.weights[up].delta;
        if (!(g.weights[up] == expect)) report(v, i, "e does not add alpha");
      }
      const int down = g.f_to[v][i];
      if (down >= 0 && g.e_to[down][i] != v) report(v, i, "e does not undo f");
      if ((up == kNull) != (g.eps[v][i] == 0)) report(v, i, "e vanishes exactly when eps does not");
      if ((down == kNull) != (g.phi[v][i] == 0)) report(v, i, "f vanishes exactly when phi does not");
      int steps = 0, cur = v;
      while (cur >= 0 && g.e_to[cur][i] >= 0) {
        cur = g.e_to[cur][i];
        ++steps;
      }
      if (cur >= 0 && g.e_to[cur][i] == kNull && steps != g.eps[v][i]) report(v, i, "eps is not the string length");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Export.

inline std::string to_dot(const CrystalGraph& g, const std::string& name = "crystal") {
  const CartanData& cd = g.crystal->cartan();
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (int v = 0; v < g.size(); ++v) {
    std::string label = g.crystal->format(g.nodes[v]) + "\\n" +
                        (g.crystal->affine() ? cd.to_string(g.weights[v]) : to_string(g.classical_weight(v)));
    std::string escaped;
    for (char ch : label) {
      if (ch == '"') escaped += '\\';
      escaped += ch;
    }
    out << "  n" << v << " [label=\"" << escaped << "\"];\n";
  }
  for (int v = 0; v < g.size(); ++v)
    for (int i = 0; i < cd.size(); ++i)
      if (g.f_to[v][i] >= 0) out << "  n" << v << " -> n" << g.f_to[v][i] << " [label=\"" << i << "\"];\n";
  out << "}\n";
  return out.str();
}

// JSON adjacency: {"crystal", "cartan", "nodes": [{"id","element","weight","eps","phi","f":[...],"e":[...]}]}
// with edge targets given as node ids, null for the crystal's 0, and "outside" for elements not in the graph.
inline nlohmann::json to_json(const CrystalGraph& g) {
  const CartanData& cd = g.crystal->cartan();
  nlohmann::json nodes = nlohmann::json::array();
  auto edge = [](int t) -> nlohmann::json {
    if (t == kNull) return nullptr;
    if (t == kOutside) return "outside";
    return t;
  };
  for (int v = 0; v < g.size(); ++v) {
    nlohmann::json n;
    n["id"] = v;
    n["element"] = g.crystal->format(g.nodes[v]);
    n["weight"] = g.crystal->affine() ? cd.to_string(g.weights[v]) : to_string(g.classical_weight(v));
    n["eps"] = g.eps[v];
    n["phi"] = g.phi[v];
    nlohmann::json fe = nlohmann::json::array(), ee = nlohmann::json::array();
    for (int i = 0; i < cd.size(); ++i) {
      fe.push_back(edge(g.f_to[v][i]));
      ee.push_back(edge(g.e_to[v][i]));
    }
    n["f"] = fe;
    n["e"] = ee;
    nodes.push_back(n);
  }
  return {{"crystal", g.crystal->describe()}, {"cartan", cd.label()}, {"nodes", nodes}};
}

}  // namespace krd
