#pragma once

// Combinatorial R-matrices, local energy functions, the energy function D and
// one-dimensional sums, all computed by propagation over finite crystal graphs.

#include "kr_type_a.hpp"

#include <map>

namespace krd {

// sigma: B1 ⊗ B2 -> B2 ⊗ B1 and H = H_{B1,B2}, for finite crystals in the class C.
struct LocalEnergy {
  CrystalPtr left, right;
  CrystalGraph g;       // all of left ⊗ right
  CrystalGraph g_swap;  // all of right ⊗ left
  std::vector<int> sigma;
  std::vector<long long> H;
  int u_node = -1;

  int node(const Element& b1, const Element& b2) const {
    const int v = g.find(Element::tensor({b1, b2}));
    if (v < 0) throw std::invalid_argument("element not in the tensor product");
    return v;
  }
  long long h(const Element& b1, const Element& b2) const { return H[node(b1, b2)]; }
  // sigma(b1 ⊗ b2) = b~2 ⊗ b~1, returned as (b~2, b~1).
  std::pair<Element, Element> r(const Element& b1, const Element& b2) const {
    const Element& img = g_swap.nodes[sigma[node(b1, b2)]];
    return {img.parts[0], img.parts[1]};
  }
};

struct EnergyError : std::logic_error {
  using std::logic_error::logic_error;
};

namespace detail {

// +1 / -1 / 0 increment of H along e_0 at node v (left-left, right-right, otherwise).
inline int h_step(const LocalEnergy& le, int v) {
  const auto& t = static_cast<const TensorCrystal&>(*le.g.crystal);
  const auto& ts = static_cast<const TensorCrystal&>(*le.g_swap.crystal);
  const bool left = t.acting_factor(0, le.g.nodes[v], true) == 0;
  const bool left_swap = ts.acting_factor(0, le.g_swap.nodes[le.sigma[v]], true) == 0;
  if (left && left_swap) return 1;
  if (!left && !left_swap) return -1;
  return 0;
}

}  // namespace detail

inline LocalEnergy local_energy(const CrystalPtr& b1, const Element& u1, const CrystalPtr& b2, const Element& u2,
                                const ExploreOptions& opt = {}) {
  LocalEnergy le;
  le.left = b1;
  le.right = b2;
  le.g = explore_all(tensor({b1, b2}), opt);
  le.g_swap = explore_all(tensor({b2, b1}), opt);
  const int sz = b1->cartan().size();
  le.u_node = le.g.find(Element::tensor({u1, u2}));
  const int u_swap = le.g_swap.find(Element::tensor({u2, u1}));
  try {
    le.sigma = match_graphs(le.g, le.g_swap, le.u_node, u_swap, DynkinAuto::identity(sz));
  } catch (const std::logic_error& err) {
    throw EnergyError(std::string("combinatorial R-matrix: ") + err.what() + " for " + b1->describe() + " ⊗ " +
                      b2->describe());
  }

  const long long unset = std::numeric_limits<long long>::min();
  le.H.assign(le.g.size(), unset);
  std::deque<int> queue{le.u_node};
  le.H[le.u_node] = 0;
  auto assign = [&](int v, long long value) {
    if (le.H[v] == unset) {
      le.H[v] = value;
      queue.push_back(v);
    }
  };
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int i = 0; i < sz; ++i) {
      const int up = le.g.e_to[v][i];
      if (up >= 0) assign(up, le.H[v] + (i == 0 ? detail::h_step(le, v) : 0));
      const int down = le.g.f_to[v][i];
      if (down >= 0) assign(down, le.H[v] - (i == 0 ? detail::h_step(le, down) : 0));
    }
  }
  for (int v = 0; v < le.g.size(); ++v) {
    if (le.H[v] == unset) throw EnergyError("local energy: tensor product is not connected");
    for (int i = 0; i < sz; ++i) {
      const int up = le.g.e_to[v][i];
      if (up < 0) continue;
      const long long expected = le.H[v] + (i == 0 ? detail::h_step(le, v) : 0);
      if (le.H[up] != expected)
        throw EnergyError("local energy inconsistent on the " + std::to_string(i) + "-edge from " +
                          le.g.crystal->format(le.g.nodes[v]) + " to " + le.g.crystal->format(le.g.nodes[up]));
    }
  }
  return le;
}

// ---------------------------------------------------------------------------
// Bracketings of a tensor product of KR crystals.

struct Bracketing {
  int leaf = -1;  // factor position for leaves
  std::vector<Bracketing> kids;  // exactly two for inner nodes

  bool is_leaf() const { return leaf >= 0; }
  std::vector<int> leaves() const {
    if (is_leaf()) return {leaf};
    auto a = kids[0].leaves();
    auto b = kids[1].leaves();
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }
  std::string to_string() const {
    if (is_leaf()) return std::to_string(leaf);
    return "(" + kids[0].to_string() + "," + kids[1].to_string() + ")";
  }

  static Bracketing single(int k) {
    Bracketing b;
    b.leaf = k;
    return b;
  }
  static Bracketing pair(Bracketing a, Bracketing c) {
    Bracketing b;
    b.kids = {std::move(a), std::move(c)};
    return b;
  }
  // ((0,1),2),...
  static Bracketing left_nested(int p) {
    Bracketing b = single(0);
    for (int k = 1; k < p; ++k) b = pair(std::move(b), single(k));
    return b;
  }
  // 0,(1,(2,...))
  static Bracketing right_nested(int p) {
    Bracketing b = single(p - 1);
    for (int k = p - 2; k >= 0; --k) b = pair(single(k), std::move(b));
    return b;
  }
};

// Energy function over a bracketing; elements are nested accordingly.
struct EnergyNode {
  CrystalPtr crystal;
  Element u;
  KRPtr leaf;  // set for single KR crystals
  std::shared_ptr<const EnergyNode> left, right;
  std::shared_ptr<const LocalEnergy> local;  // H_{B,B} for leaves, H_{L,R} for inner nodes
  std::unordered_map<std::string, long long> D;

  long long energy(const Element& b) const {
    auto it = D.find(b.key());
    if (it == D.end()) throw std::invalid_argument("element not in " + crystal->describe());
    return it->second;
  }
};

using EnergyNodePtr = std::shared_ptr<const EnergyNode>;

inline EnergyNodePtr build_energy(const std::vector<KRPtr>& factors, const Bracketing& br,
                                  const ExploreOptions& opt = {}) {
  auto node = std::make_shared<EnergyNode>();
  if (br.is_leaf()) {
    const KRPtr& b = factors.at(br.leaf);
    node->crystal = b;
    node->leaf = b;
    node->u = b->u();
    node->local = std::make_shared<LocalEnergy>(local_energy(b, b->u(), b, b->u(), opt));
    const long long base = node->local->h(b->m_prime(), b->u());
    for (const auto& x : b->elements()) node->D.emplace(x.key(), node->local->h(b->m_prime(), x) - base);
    return node;
  }
  node->left = build_energy(factors, br.kids[0], opt);
  node->right = build_energy(factors, br.kids[1], opt);
  node->crystal = tensor({node->left->crystal, node->right->crystal});
  node->u = Element::tensor({node->left->u, node->right->u});
  node->local = std::make_shared<LocalEnergy>(
      local_energy(node->left->crystal, node->left->u, node->right->crystal, node->right->u, opt));
  const LocalEnergy& le = *node->local;
  for (int v = 0; v < le.g.size(); ++v) {
    const Element& b = le.g.nodes[v];
    const Element& swapped = le.g_swap.nodes[le.sigma[v]];
    const long long d = node->left->energy(b.parts[0]) + node->right->energy(swapped.parts[0]) + le.H[v];
    node->D.emplace(b.key(), d);
  }
  return node;
}

// Flattens a (possibly nested) tensor element of KR crystals to factor indices, left to right.
inline void flatten_into(const Element& b, std::vector<int>& out) {
  if (b.kind == Element::Kind::Tensor) {
    for (const auto& p : b.parts) flatten_into(p, out);
  } else if (b.kind == Element::Kind::Atom) {
    out.push_back(b.index);
  } else {
    throw std::invalid_argument("flatten: element is not a tensor of finite crystal elements");
  }
}

inline std::vector<int> flatten(const Element& b) {
  std::vector<int> out;
  flatten_into(b, out);
  return out;
}

inline std::map<std::vector<int>, long long> flat_energy(const EnergyNode& node) {
  std::map<std::vector<int>, long long> out;
  for (const auto& x : node.crystal->elements()) out.emplace(flatten(x), node.energy(x));
  return out;
}

// ---------------------------------------------------------------------------
// Closed formula with pulled-left factors:
//   D(b_1 ⊗ ... ⊗ b_p) = sum_j D_{B_j}(b_j^{(1)}) + sum_{j<k} H_{B_j,B_k}(b_j ⊗ b_k^{(j+1)}).

class PairwiseEnergy {
 public:
  explicit PairwiseEnergy(std::vector<KRPtr> factors, const ExploreOptions& opt = {}) : factors_(std::move(factors)) {
    const int p = static_cast<int>(factors_.size());
    pairs_.resize(p, std::vector<std::shared_ptr<const LocalEnergy>>(p));
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b)
        pairs_[a][b] = std::make_shared<LocalEnergy>(
            local_energy(factors_[a], factors_[a]->u(), factors_[b], factors_[b]->u(), opt));
    for (int a = 0; a < p; ++a) {
      const auto& le = *pairs_[a][a];
      const auto& kr = factors_[a];
      const long long base = le.h(kr->m_prime(), kr->u());
      std::vector<long long> d(kr->size());
      for (int x = 0; x < kr->size(); ++x) d[x] = le.h(kr->m_prime(), Element::atom(x)) - base;
      single_.push_back(std::move(d));
    }
  }

  int arity() const { return static_cast<int>(factors_.size()); }
  const std::vector<KRPtr>& factors() const { return factors_; }
  const LocalEnergy& pair(int a, int b) const { return *pairs_.at(a).at(b); }
  long long single(int a, int x) const { return single_.at(a).at(x); }

  // b_j^{(i)} (0-based, i <= j): move factor j to position i by adjacent R-matrices.
  int pull_left(const std::vector<int>& b, int i, int j) const {
    int moving = b.at(j);
    for (int k = j - 1; k >= i; --k) {
      auto [front, back] = pair(k, j).r(Element::atom(b[k]), Element::atom(moving));
      moving = front.index;
      (void)back;
    }
    return moving;
  }

  long long energy(const std::vector<int>& b) const {
    const int p = arity();
    long long d = 0;
    for (int j = 0; j < p; ++j) d += single(j, pull_left(b, 0, j));
    for (int j = 0; j < p; ++j)
      for (int k = j + 1; k < p; ++k)
        d += pair(j, k).h(Element::atom(b[j]), Element::atom(pull_left(b, j + 1, k)));
    return d;
  }

 private:
  std::vector<KRPtr> factors_;
  std::vector<std::vector<std::shared_ptr<const LocalEnergy>>> pairs_;
  std::vector<std::vector<long long>> single_;
};

// ---------------------------------------------------------------------------
// One-dimensional sums.

using LaurentPoly = std::map<long long, long long>;  // exponent of q -> coefficient

inline std::string to_string(const LaurentPoly& p) {
  std::string s;
  for (const auto& [e, c] : p) {
    if (c == 0) continue;
    std::string term;
    const long long mag = c < 0 ? -c : c;
    if (e == 0) term = std::to_string(mag);
    else {
      if (mag != 1) term = std::to_string(mag) + "*";
      term += (e == 1) ? "q" : "q^" + std::to_string(e);
    }
    if (s.empty()) s = (c < 0 ? "-" : "") + term;
    else s += (c < 0 ? " - " : " + ") + term;
  }
  return s.empty() ? "0" : s;
}

// hw^{<= l}_{I_0}(B): classically highest elements with eps_0 <= l.
inline std::vector<int> hw_bounded(const CrystalGraph& g, int l) {
  std::vector<int> out;
  for (int v = 0; v < g.size(); ++v)
    if (g.classically_highest(v) && g.eps[v][0] <= l) out.push_back(v);
  return out;
}

// X(B, mu, q) over the graph of B with energies indexed by node.
inline LaurentPoly one_dim_sum(const CrystalGraph& g, const std::vector<long long>& energy, const ClassicalWeight& mu) {
  LaurentPoly x;
  for (int v = 0; v < g.size(); ++v)
    if (g.classically_highest(v) && g.classical_weight(v) == mu) {
      if (++x[energy[v]] == 0) x.erase(energy[v]);
    }
  return x;
}

}  // namespace krd
