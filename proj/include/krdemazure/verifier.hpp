#pragma once

// Mechanical verification of the Demazure realization of u_{l_p Lambda_0} ⊗ B_p ⊗ ... ⊗ B_1:
// construction of Psi_B by full-subgraph matching, the grading identity with the constant C_B,
// the character and one-dimensional-sum identities, and the commuting-diagram check.

#include "characters.hpp"
#include "energy.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

namespace krd {

// B^{r, c_r l}: the KR crystal of level l attached to node r.
struct KRFactor {
  int r = 1;
  int level = 1;
  bool operator==(const KRFactor&) const = default;
};

// "r,l;r,l;..." (left to right).
inline std::vector<KRFactor> parse_factors(const std::string& text) {
  std::vector<KRFactor> out;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }), item.end());
    if (item.empty()) continue;
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("factor '" + item + "' is not of the form r,l");
    try {
      std::size_t used_r = 0, used_l = 0;
      const std::string rs = item.substr(0, comma), ls = item.substr(comma + 1);
      KRFactor f{std::stoi(rs, &used_r), std::stoi(ls, &used_l)};
      if (used_r != rs.size() || used_l != ls.size()) throw std::invalid_argument("trailing characters");
      out.push_back(f);
    } catch (const std::exception&) {
      throw std::invalid_argument("factor '" + item + "' is not of the form r,l with integers r and l");
    }
  }
  return out;
}

inline std::string to_string(const std::vector<KRFactor>& fs) {
  std::string s;
  for (const auto& f : fs) s += (s.empty() ? "" : ";") + std::to_string(f.r) + "," + std::to_string(f.level);
  return s;
}

// B = B_p ⊗ ... ⊗ B_1 with factors listed left to right and l_1 <= ... <= l_p.
struct Instance {
  CartanPtr cd;
  std::vector<KRFactor> factors;

  int arity() const { return static_cast<int>(factors.size()); }
  const KRFactor& outer() const { return factors.front(); }
  int columns(const KRFactor& f) const { return cd->c[f.r] * f.level; }
  // l_1, ..., l_p
  std::vector<long long> levels_ascending() const {
    std::vector<long long> out;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) out.push_back(it->level);
    return out;
  }
  // mu_1, ..., mu_p
  std::vector<ClassicalWeight> mus_ascending() const {
    std::vector<ClassicalWeight> out;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) out.push_back(kr_translation(*cd, it->r));
    return out;
  }
  std::vector<KRPtr> crystals() const {
    std::vector<KRPtr> out;
    for (const auto& f : factors) out.push_back(make_kr(cd, f.r, columns(f)));
    return out;
  }
  // B_{p-1} ⊗ ... ⊗ B_1
  Instance inner() const {
    if (arity() < 2) throw std::invalid_argument("a single factor has no inner instance");
    return Instance{cd, std::vector<KRFactor>(factors.begin() + 1, factors.end())};
  }
  std::string describe() const {
    std::string s;
    for (const auto& f : factors)
      s += (s.empty() ? "" : " ⊗ ") + std::string("B^{") + std::to_string(f.r) + "," + std::to_string(columns(f)) + "}";
    return s;
  }
};

// Validates the factor list.  With `ordered`, the levels must be nonincreasing from left to right.
inline Instance make_instance(const CartanPtr& cd, std::vector<KRFactor> factors, bool ordered = true) {
  if (factors.empty()) throw std::invalid_argument("an instance needs at least one KR factor");
  for (const auto& f : factors) {
    if (f.r < 1 || f.r > cd->rank)
      throw std::invalid_argument("factor node " + std::to_string(f.r) + " is not in I_0 of " + cd->label());
    if (f.level < 1) throw std::invalid_argument("factor levels must be positive");
  }
  if (ordered)
    for (std::size_t k = 1; k < factors.size(); ++k)
      if (factors[k].level > factors[k - 1].level)
        throw std::invalid_argument("levels must satisfy l_1 <= ... <= l_p, i.e. be nonincreasing from left to right");
  return Instance{cd, std::move(factors)};
}

// C_B = sum_j l^j <t_{mu_p + ... + mu_j}(Lambda_0), d>.
inline Rational c_constant(const Instance& inst) {
  const CartanData& cd = *inst.cd;
  const auto ell = inst.levels_ascending();
  const auto mus = inst.mus_ascending();
  const int p = inst.arity();
  Rational total = 0;
  for (int j = 0; j < p; ++j) {
    const long long diff = ell[j] - (j ? ell[j - 1] : 0);
    if (diff == 0) continue;
    ClassicalWeight sum = cd.classical_zero();
    for (int k = j; k < p; ++k) sum += mus[k];
    total += Rational(diff) * translate_weight(cd, sum, cd.fundamental(0)).delta;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Full-subgraph matching.

struct MatchWitness {
  int lhs_node = -1;
  int rhs_node = -1;
  int color = -1;
  std::string reason;
};

struct FullSubgraphMatch {
  std::vector<int> map;  // lhs node -> rhs node
  std::optional<MatchWitness> failure;
  bool ok() const { return !failure.has_value(); }
};

inline std::string describe(const CrystalGraph& lhs, const CrystalGraph& rhs, const MatchWitness& w) {
  std::string s = w.reason;
  if (w.lhs_node >= 0) s += "; lhs " + lhs.crystal->format(lhs.nodes[w.lhs_node]);
  if (w.rhs_node >= 0) s += "; rhs " + rhs.crystal->format(rhs.nodes[w.rhs_node]);
  if (w.color >= 0) s += "; color " + std::to_string(w.color);
  return s;
}

// Incremental BFS matching of two graphs as full subgraphs.  Each seed pair is bound and propagated
// along colored edges in both directions; edges to kNull or kOutside must agree on both sides, and
// classical weights must agree at every matched pair.  Seeds that are already matched consistently
// are accepted silently, so several seeds may be offered for the same component.
class FullSubgraphMatcher {
 public:
  FullSubgraphMatcher(const CrystalGraph& lhs, const CrystalGraph& rhs)
      : lhs_(lhs), rhs_(rhs), back_(rhs.size(), -1) {
    result_.map.assign(lhs.size(), -1);
  }

  // Returns true if the seed started a new component; check failed() afterwards.
  bool seed(int x, int y) {
    if (failed()) return false;
    if (x < 0 || y < 0) {
      fail(x, y, -1, "missing seed");
      return false;
    }
    if (result_.map[x] == y) return false;
    if (!bind(x, y, -1)) return false;
    ++components_;
    drain();
    return true;
  }
  bool failed() const { return result_.failure.has_value(); }
  bool covers_lhs() const { return std::find(result_.map.begin(), result_.map.end(), -1) == result_.map.end(); }
  int components() const { return components_; }

  // Requires a bijection and returns the result.
  FullSubgraphMatch finish() {
    if (!failed()) {
      for (int x = 0; x < lhs_.size(); ++x)
        if (result_.map[x] < 0) {
          fail(x, -1, -1, "lhs element not reached from any seed");
          break;
        }
    }
    if (!failed()) {
      for (int y = 0; y < rhs_.size(); ++y)
        if (back_[y] < 0) {
          fail(-1, y, -1, "rhs element not reached from any seed");
          break;
        }
    }
    return result_;
  }

 private:
  void fail(int x, int y, int i, std::string why) {
    if (!failed()) result_.failure = MatchWitness{x, y, i, std::move(why)};
  }
  bool bind(int x, int y, int i) {
    if (result_.map[x] == y) return true;
    if (result_.map[x] >= 0 || back_[y] >= 0) {
      fail(x, y, i, "matching conflict");
      return false;
    }
    if (!(lhs_.classical_weight(x) == rhs_.classical_weight(y))) {
      fail(x, y, i, "classical weights differ");
      return false;
    }
    result_.map[x] = y;
    back_[y] = x;
    queue_.push_back(x);
    return true;
  }
  void drain() {
    const int sz = lhs_.crystal->cartan().size();
    while (!queue_.empty() && !failed()) {
      const int x = queue_.front();
      queue_.pop_front();
      const int y = result_.map[x];
      for (int i = 0; i < sz && !failed(); ++i)
        for (int pass = 0; pass < 2 && !failed(); ++pass) {
          const int a = pass ? lhs_.e_to[x][i] : lhs_.f_to[x][i];
          const int c = pass ? rhs_.e_to[y][i] : rhs_.f_to[y][i];
          if ((a >= 0) != (c >= 0) || (a < 0 && a != c)) {
            auto kind = [](int t) { return t == kNull ? "0" : t == kOutside ? "outside" : "inside"; };
            fail(x, y, i,
                 std::string(pass ? "e" : "f") + "-edge goes " + kind(a) + " on the left but " + kind(c) +
                     " on the right");
          } else if (a >= 0) {
            bind(a, c, i);
          }
        }
    }
    queue_.clear();
  }

  const CrystalGraph& lhs_;
  const CrystalGraph& rhs_;
  FullSubgraphMatch result_;
  std::vector<int> back_;
  std::deque<int> queue_;
  int components_ = 0;
};

inline FullSubgraphMatch match_full_subgraph(const CrystalGraph& lhs, const CrystalGraph& rhs,
                                             const std::vector<std::pair<int, int>>& seeds) {
  FullSubgraphMatcher m(lhs, rhs);
  for (const auto& [x, y] : seeds) m.seed(x, y);
  return m.finish();
}

inline FullSubgraphMatch match_full_subgraph(const CrystalGraph& lhs, const CrystalGraph& rhs, int seed_lhs,
                                             int seed_rhs) {
  return match_full_subgraph(lhs, rhs, {{seed_lhs, seed_rhs}});
}

// ---------------------------------------------------------------------------
// Reports.

struct VerificationReport {
  std::string type;
  std::string instance;
  std::string factors;
  std::size_t size_b = 0;
  std::size_t size_rhs = 0;
  int components = 0;  // BFS trees needed to match u ⊗ B
  Rational c_b = 0;
  Rational c_fit = 0;
  bool seed_ok = false;
  bool isomorphism_ok = false;
  bool energy_ok = false;
  bool grading_ok = false;
  bool c_fit_ok = false;
  std::optional<bool> character_identity_ok;
  std::optional<bool> onedim_sum_identity_ok;
  std::optional<bool> permutation_ok;
  std::optional<bool> commuting_diagram_ok;
  std::vector<std::string> mismatches;
  double seconds = 0;

  bool ok() const {
    auto opt = [](const std::optional<bool>& f) { return !f.has_value() || *f; };
    return seed_ok && isomorphism_ok && energy_ok && grading_ok && c_fit_ok && opt(character_identity_ok) &&
           opt(onedim_sum_identity_ok) && opt(permutation_ok) && opt(commuting_diagram_ok) && mismatches.empty();
  }
};

inline constexpr const char* kReportSchema = "krdemazure.verification/1";
inline constexpr const char* kNormalization =
    "<Lambda_0,d> = 0 and <tau(Lambda_j),d> = <Lambda_{tau(j)},d> for tau in Sigma; aff has zero d-pairing";

inline nlohmann::json to_json(const VerificationReport& r, bool with_timing = true) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["type"] = r.type;
  j["instance"] = r.instance;
  j["factors"] = r.factors;
  j["normalization"] = kNormalization;
  j["size_B"] = r.size_b;
  j["size_rhs"] = r.size_rhs;
  j["components"] = r.components;
  j["C_B"] = to_string(r.c_b);
  j["C_fit"] = to_string(r.c_fit);
  j["seed_ok"] = r.seed_ok;
  j["isomorphism_ok"] = r.isomorphism_ok;
  j["energy_ok"] = r.energy_ok;
  j["grading_ok"] = r.grading_ok;
  j["c_fit_ok"] = r.c_fit_ok;
  auto opt = [](const std::optional<bool>& f) -> nlohmann::json {
    if (!f) return nullptr;
    return *f;
  };
  j["character_identity_ok"] = opt(r.character_identity_ok);
  j["onedim_sum_identity_ok"] = opt(r.onedim_sum_identity_ok);
  j["permutation_ok"] = opt(r.permutation_ok);
  j["commuting_diagram_ok"] = opt(r.commuting_diagram_ok);
  j["mismatches"] = r.mismatches;
  j["ok"] = r.ok();
  if (with_timing) j["seconds"] = r.seconds;
  return j;
}

struct VerifyOptions {
  ExploreOptions explore;
  bool corollaries = true;
  bool permutations = true;
  bool commuting = true;
  std::size_t mismatch_limit = 10;
};

// Everything produced while verifying one instance.
struct MainRun {
  Instance inst;
  std::vector<KRPtr> krs;
  CrystalPtr path;            // B(l_p Lambda_0)
  CrystalGraph lhs;           // u ⊗ B
  NestedRhs rhs;
  CrystalGraph rhs_graph;     // the nested set
  std::vector<int> psi;       // lhs node -> rhs node (empty if matching failed)
  CrystalGraph b_graph;       // all of B
  std::vector<long long> energy;  // D by node of b_graph
  std::shared_ptr<const MainRun> inner;  // the run for B^{p-1}, when it was needed
  VerificationReport report;
};

// u ⊗ b as a flat tensor element.
inline Element lhs_element(const Element& u, const Element& b) {
  std::vector<Element> parts{u};
  if (b.kind == Element::Kind::Tensor) parts.insert(parts.end(), b.parts.begin(), b.parts.end());
  else parts.push_back(b);
  return Element::tensor(std::move(parts));
}

// b_p ⊗ ... ⊗ b_1 from factor indices (an atom when p = 1).
inline Element product_element(const std::vector<int>& idx) {
  if (idx.size() == 1) return Element::atom(idx[0]);
  std::vector<Element> parts;
  for (int x : idx) parts.push_back(Element::atom(x));
  return Element::tensor(std::move(parts));
}

inline std::vector<int> lhs_indices(const Element& x) {
  std::vector<int> idx;
  for (std::size_t k = 1; k < x.parts.size(); ++k) idx.push_back(x.parts[k].index);
  return idx;
}

inline std::size_t product_size(const std::vector<KRPtr>& krs) {
  std::size_t n = 1;
  for (const auto& k : krs) {
    n *= static_cast<std::size_t>(k->size());
    if (n > (std::size_t{1} << 40)) break;
  }
  return n;
}

namespace detail {

inline void note(VerificationReport& r, std::size_t limit, std::string msg) {
  if (r.mismatches.size() < limit) r.mismatches.push_back(std::move(msg));
}

// D on all of B computed three ways (left-nested, right-nested, closed formula); returns D by flat index.
inline std::map<std::vector<int>, long long> energies(const std::vector<KRPtr>& krs, const ExploreOptions& opt,
                                                      VerificationReport* rep, std::size_t limit, bool& agree) {
  const int p = static_cast<int>(krs.size());
  auto left = flat_energy(*build_energy(krs, Bracketing::left_nested(p), opt));
  agree = true;
  if (p >= 2) {
    const auto right = flat_energy(*build_energy(krs, Bracketing::right_nested(p), opt));
    const PairwiseEnergy closed(krs, opt);
    for (const auto& [b, d] : left) {
      const long long dr = right.at(b), dc = closed.energy(b);
      if (d != dr || d != dc) {
        agree = false;
        if (rep) {
          std::string s;
          for (int k = 0; k < p; ++k) s += (k ? " ⊗ " : "") + krs[k]->format(Element::atom(b[k]));
          note(*rep, limit,
               "energy disagreement at " + s + ": left-nested " + std::to_string(d) + ", right-nested " +
                   std::to_string(dr) + ", closed formula " + std::to_string(dc));
        }
      }
    }
  }
  return left;
}

inline std::string first_terms(const CartanData& cd, const CharacterPoly& diff, std::size_t k = 3) {
  std::string s;
  std::size_t n = 0;
  for (const auto& [w, c] : diff.terms()) {
    if (n++ == k) break;
    s += (s.empty() ? "" : ", ") + std::to_string(c) + "*" + cd.to_string(w);
  }
  return s;
}

inline void add_q(QCharacter& q, const ClassicalWeight& w, const Rational& e, long long c) {
  auto& slot = q[w][e];
  slot += c;
  if (slot == 0) {
    q[w].erase(e);
    if (q[w].empty()) q.erase(w);
  }
}

}  // namespace detail

// sum_b e^{l Lambda_0 + C delta + aff wt(b) - D(b) delta} over a graph of B with energies by node.
inline CharacterPoly energy_character(const CartanData& cd, const CrystalGraph& b_graph,
                                      const std::vector<long long>& energy, long long level, const Rational& c) {
  CharacterPoly out;
  const AffineWeight base = level * cd.fundamental(0);
  for (int v = 0; v < b_graph.size(); ++v) {
    AffineWeight w = base + cd.aff(b_graph.classical_weight(v));
    w.delta += (c - Rational(energy[v])) * cd.null_root().delta;
    out.add(w, 1);
  }
  return out;
}

// All one-dimensional sums X(B, mu, q), keyed by mu.
inline std::map<ClassicalWeight, LaurentPoly> all_onedim_sums(const CrystalGraph& b_graph,
                                                              const std::vector<long long>& energy) {
  std::map<ClassicalWeight, LaurentPoly> out;
  for (int v = 0; v < b_graph.size(); ++v)
    if (b_graph.classically_highest(v)) {
      auto& x = out[b_graph.classical_weight(v)];
      if (++x[energy[v]] == 0) x.erase(energy[v]);
    }
  return out;
}

// q^{-C} sum_mu X(B, mu, q) ch V(mu), with q = e^{-delta}.
inline QCharacter onedim_character(const CartanData& cd, const std::map<ClassicalWeight, LaurentPoly>& sums,
                                   const Rational& c) {
  QCharacter out;
  for (const auto& [mu, x] : sums) {
    const CharacterPoly ch = classical_character(cd, mu);
    for (const auto& [w, k] : ch.terms())
      for (const auto& [e, n] : x) detail::add_q(out, cd.cl(w), Rational(e) - c, k * n);
  }
  return out;
}

// The graph of all of B together with D on it.
inline std::pair<CrystalGraph, std::vector<long long>> energy_graph(const std::vector<KRPtr>& krs,
                                                                    const ExploreOptions& opt,
                                                                    VerificationReport* rep = nullptr,
                                                                    std::size_t limit = 10, bool* agree = nullptr) {
  bool ok = true;
  const auto flat = detail::energies(krs, opt, rep, limit, ok);
  if (agree) *agree = ok;
  std::vector<CrystalPtr> cs(krs.begin(), krs.end());
  CrystalGraph g = explore_all(tensor(cs), opt);
  std::vector<long long> d(g.size());
  for (int v = 0; v < g.size(); ++v) d[v] = flat.at(flatten(g.nodes[v]));
  return {std::move(g), std::move(d)};
}

inline MainRun verify_main(const Instance& inst, const VerifyOptions& vo = {});

namespace detail {

inline void check_corollaries(MainRun& run, const VerifyOptions& vo) {
  const CartanData& cd = *run.inst.cd;
  VerificationReport& rep = run.report;
  const long long lp = run.inst.outer().level;
  const auto ell = run.inst.levels_ascending();
  const auto mus = run.inst.mus_ascending();

  const CharacterPoly nested = nested_demazure_character(cd, ell, mus);
  const CharacterPoly lhs = energy_character(cd, run.b_graph, run.energy, lp, rep.c_b);
  rep.character_identity_ok = (lhs == nested);
  if (!*rep.character_identity_ok)
    note(rep, vo.mismatch_limit, "character identity fails; difference starts " + first_terms(cd, lhs - nested));

  const auto sums = all_onedim_sums(run.b_graph, run.energy);
  const QCharacter left = onedim_character(cd, sums, rep.c_b);
  const QCharacter right = q_collapse(cd, nested.shifted(-lp * cd.fundamental(0)));
  rep.onedim_sum_identity_ok = (left == right);
  if (!*rep.onedim_sum_identity_ok) note(rep, vo.mismatch_limit, "one-dimensional sum identity fails");

  if (!vo.permutations) return;
  bool perm_ok = true;
  std::vector<int> order(run.inst.arity());
  std::iota(order.begin(), order.end(), 0);
  auto key = [](const std::vector<KRFactor>& fs) {
    std::vector<std::pair<int, int>> k;
    for (const auto& f : fs) k.emplace_back(f.r, f.level);
    return k;
  };
  std::set<std::vector<std::pair<int, int>>> seen{key(run.inst.factors)};
  while (std::next_permutation(order.begin(), order.end())) {
    std::vector<KRFactor> fs;
    std::vector<KRPtr> krs;
    for (int k : order) {
      fs.push_back(run.inst.factors[k]);
      krs.push_back(run.krs[k]);
    }
    if (!seen.insert(key(fs)).second) continue;
    auto [g, d] = energy_graph(krs, vo.explore);
    if (!(energy_character(cd, g, d, lp, rep.c_b) == lhs)) {
      perm_ok = false;
      note(rep, vo.mismatch_limit, "character left side changes under the permutation " + to_string(fs));
    }
    if (all_onedim_sums(g, d) != sums) {
      perm_ok = false;
      note(rep, vo.mismatch_limit, "one-dimensional sums change under the permutation " + to_string(fs));
    }
  }
  rep.permutation_ok = perm_ok;
}

// The two vertical maps of the commuting square, evaluated on u ⊗ B^{p-1}:
//   phi(u ⊗ b) = u ⊗ m(B_p) ⊗ tau(b)            as a node of run.lhs (or -1),
//   psi(Psi_{B^{p-1}}(u ⊗ b)) = tau~(u_{l^p Lambda_0} ⊗ Psi_{B^{p-1}}(u ⊗ b))  as an element,
// with tau = tau^{r_p}.
struct DiagramImages {
  std::vector<int> phi;
  std::vector<Element> psi;
  std::vector<std::string> problems;
};

inline DiagramImages diagram_images(const MainRun& run, const MainRun& sub) {
  DiagramImages out;
  const CartanData& cd = *run.inst.cd;
  const DynkinAuto& tau = cd.tau_of(run.inst.outer().r);
  const auto* outer_level = static_cast<const TwistedCrystal*>(run.rhs.levels.back().get());
  if (!(outer_level->tau() == tau)) out.problems.push_back("the outer twist is not tau^{r_p}");
  if (sub.psi.empty()) out.problems.push_back("the isomorphism for B^{p-1} is missing");
  if (!out.problems.empty()) return out;
  std::vector<int> u_idx;
  for (const auto& k : sub.krs) u_idx.push_back(k->u().index);
  const std::vector<int> sigma = sigma_action(sub.b_graph, tau, sub.b_graph.find(product_element(u_idx)));
  const Element u_outer = highest_element(*run.path);
  const Element m_outer = run.krs[0]->m();
  const long long top = run.rhs.ell_diff.back();
  const Element u_top = top > 0 ? highest_element(*run.rhs.paths.back()) : Element{};
  for (int x = 0; x < sub.lhs.size(); ++x) {
    const Element b = product_element(lhs_indices(sub.lhs.nodes[x]));
    const Element& tb = sub.b_graph.nodes[sigma[sub.b_graph.find(b)]];
    std::vector<Element> parts{u_outer, m_outer};
    if (tb.kind == Element::Kind::Tensor) parts.insert(parts.end(), tb.parts.begin(), tb.parts.end());
    else parts.push_back(tb);
    out.phi.push_back(run.lhs.find(Element::tensor(std::move(parts))));
    const Element& y = sub.rhs_graph.nodes[sub.psi[x]];
    out.psi.push_back(outer_level->wrap(top > 0 ? Element::tensor({u_top, y}) : y));
  }
  return out;
}

inline void check_commuting_diagram(MainRun& run, const DiagramImages& img, const VerifyOptions& vo) {
  VerificationReport& rep = run.report;
  bool ok = img.problems.empty() && !run.psi.empty();
  for (const auto& p : img.problems) note(rep, vo.mismatch_limit, "commuting diagram: " + p);
  if (run.psi.empty()) note(rep, vo.mismatch_limit, "commuting diagram: the isomorphism for B is missing");
  if (!ok) {
    rep.commuting_diagram_ok = false;
    return;
  }
  const MainRun& sub = *run.inner;
  for (std::size_t x = 0; x < img.phi.size(); ++x) {
    const std::string at = sub.lhs.crystal->format(sub.lhs.nodes[x]);
    if (img.phi[x] < 0) {
      ok = false;
      note(rep, vo.mismatch_limit, "commuting diagram: phi leaves u ⊗ B at " + at);
      continue;
    }
    const Element& via_big = run.rhs_graph.nodes[run.psi[img.phi[x]]];
    if (!(via_big == img.psi[x])) {
      ok = false;
      note(rep, vo.mismatch_limit,
           "commuting diagram: mismatch at " + at + ": " + run.rhs_graph.crystal->format(via_big) + " versus " +
               run.rhs_graph.crystal->format(img.psi[x]));
    }
  }
  rep.commuting_diagram_ok = ok;
}

}  // namespace detail

inline MainRun verify_main(const Instance& inst, const VerifyOptions& vo) {
  const auto start = std::chrono::steady_clock::now();
  MainRun run;
  run.inst = inst;
  const CartanData& cd = *inst.cd;
  VerificationReport& rep = run.report;
  rep.type = cd.label();
  rep.instance = inst.describe();
  rep.factors = to_string(inst.factors);
  rep.c_b = c_constant(inst);
  const std::size_t limit = vo.mismatch_limit;

  run.krs = inst.crystals();
  const std::size_t total = product_size(run.krs);
  if (total > vo.explore.node_cap)
    throw CapExceeded("B has " + std::to_string(total) + " elements, above the node cap of " +
                      std::to_string(vo.explore.node_cap) + "; raise --node-cap or choose a smaller instance");

  // Left-hand side u_{l_p Lambda_0} ⊗ B.
  const int lp = inst.outer().level;
  run.path = highest_weight_crystal(inst.cd, lp, 0);
  std::vector<CrystalPtr> lhs_factors{run.path};
  lhs_factors.insert(lhs_factors.end(), run.krs.begin(), run.krs.end());
  const CrystalPtr lhs_crystal = std::make_shared<TensorCrystal>(lhs_factors);
  bool energy_agree = true;
  std::tie(run.b_graph, run.energy) = energy_graph(run.krs, vo.explore, &rep, limit, &energy_agree);
  rep.energy_ok = energy_agree;
  const Element u = highest_element(*run.path);
  std::vector<Element> seeds;
  seeds.reserve(run.b_graph.size());
  for (const auto& b : run.b_graph.nodes) seeds.push_back(lhs_element(u, b));
  run.lhs = explore(lhs_crystal, seeds, Closure::None, vo.explore);
  rep.size_b = run.lhs.size();

  // Right-hand side.
  run.rhs = build_rhs(inst.cd, inst.levels_ascending(), inst.mus_ascending(), vo.explore.node_cap);
  run.rhs_graph = explore(run.rhs.ambient, run.rhs.set.items(), Closure::None, vo.explore);
  rep.size_rhs = run.rhs_graph.size();

  // Seeds: u ⊗ u(B) and the unique rhs element of the same classical weight; the latter must turn out
  // to be the tensor product of extremal elements.
  std::vector<int> u_idx;
  for (const auto& k : run.krs) u_idx.push_back(k->u().index);
  const int seed_lhs = run.lhs.find(lhs_element(u, product_element(u_idx)));
  int seed_rhs = -1, candidates = 0;
  for (int y = 0; y < run.rhs_graph.size(); ++y)
    if (run.rhs_graph.classical_weight(y) == run.lhs.classical_weight(seed_lhs)) {
      seed_rhs = y;
      ++candidates;
    }
  if (candidates != 1) {
    detail::note(rep, limit, "the weight of u ⊗ u(B) occurs " + std::to_string(candidates) + " times on the right");
    seed_rhs = run.rhs_graph.find(run.rhs.extremal);
  }
  rep.seed_ok = candidates == 1 && seed_rhs == run.rhs_graph.find(run.rhs.extremal);
  {
    const auto got = run.rhs.factor_weights(run.rhs.extremal);
    const auto ell = inst.levels_ascending();
    const auto mus = inst.mus_ascending();
    const int p = inst.arity();
    for (int k = p - 1, pos = 0; k >= 0; --k, ++pos) {
      ClassicalWeight sum = cd.classical_zero();
      for (int j = k; j < p; ++j) sum += mus[j];
      const long long diff = ell[k] - (k ? ell[k - 1] : 0);
      const AffineWeight want = translate_weight(cd, sum, diff * cd.fundamental(0));
      if (!(got[pos] == want)) {
        rep.seed_ok = false;
        detail::note(rep, limit,
                     "extremal factor " + std::to_string(k + 1) + " has weight " + cd.to_string(got[pos]) +
                         " instead of " + cd.to_string(want));
      }
    }
  }

  // Psi_B: propagate from the extremal seed.  When u ⊗ B is disconnected, the remaining components are
  // seeded from the recursive construction phi(u ⊗ b) -> psi(Psi_{B^{p-1}}(u ⊗ b)).
  FullSubgraphMatcher matcher(run.lhs, run.rhs_graph);
  matcher.seed(seed_lhs, seed_rhs);
  const bool need_inner = inst.arity() >= 2 && ((!matcher.failed() && !matcher.covers_lhs()) || vo.commuting);
  detail::DiagramImages images;
  if (need_inner) {
    VerifyOptions sub_opt = vo;
    sub_opt.corollaries = false;
    sub_opt.commuting = false;
    run.inner = std::make_shared<const MainRun>(verify_main(inst.inner(), sub_opt));
    images = detail::diagram_images(run, *run.inner);
  }
  if (!matcher.failed() && !matcher.covers_lhs() && images.problems.empty())
    for (std::size_t x = 0; x < images.phi.size(); ++x) {
      if (images.phi[x] < 0) continue;
      matcher.seed(images.phi[x], run.rhs_graph.find(images.psi[x]));
    }
  rep.components = matcher.components();
  const FullSubgraphMatch match = matcher.finish();
  rep.isomorphism_ok = match.ok() && rep.size_b == rep.size_rhs;
  if (!match.ok()) detail::note(rep, limit, "isomorphism: " + describe(run.lhs, run.rhs_graph, *match.failure));
  if (match.ok()) run.psi = match.map;

  // Grading identity D(b) + <wt Psi_B(u ⊗ b), d> = C_B and the full weight of the image.
  rep.grading_ok = match.ok();
  if (match.ok()) {
    for (int x = 0; x < run.lhs.size(); ++x) {
      const Element b = product_element(lhs_indices(run.lhs.nodes[x]));
      const long long d = run.energy[run.b_graph.find(b)];
      const int y = run.psi[x];
      const Rational dbar = Rational(d) + run.rhs_graph.degree(y);
      AffineWeight want = run.lhs.weights[x];
      want.delta += (rep.c_b - Rational(d)) * cd.null_root().delta;
      if (dbar != rep.c_b || !(run.rhs_graph.weights[y] == want)) {
        rep.grading_ok = false;
        detail::note(rep, limit,
                     "grading at " + run.lhs.crystal->format(run.lhs.nodes[x]) + ": D = " + std::to_string(d) +
                         ", image weight " + cd.to_string(run.rhs_graph.weights[y]));
      }
    }
    // C_B from the right-hand side alone: the degree of the image of u ⊗ u(B), where D vanishes.
    rep.c_fit = run.rhs_graph.degree(run.psi[seed_lhs]);
  } else {
    rep.c_fit = run.rhs_graph.degree(seed_rhs);
  }
  rep.c_fit_ok = rep.c_fit == rep.c_b;
  if (!rep.c_fit_ok)
    detail::note(rep, limit, "C_B from translations is " + to_string(rep.c_b) + " but the rhs gives " +
                                 to_string(rep.c_fit));

  if (vo.corollaries) detail::check_corollaries(run, vo);
  if (vo.commuting && inst.arity() >= 2) detail::check_commuting_diagram(run, images, vo);

  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace krd
