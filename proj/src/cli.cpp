#include "krdemazure/cli.hpp"

#include "krdemazure/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>

namespace krd::cli {
namespace {

struct Common {
  std::string type = "A";
  int rank = 1;
  std::string format;
  std::string output;
  std::size_t node_cap = 200000;
  int threads = 1;
  bool timing = true;

  ExploreOptions explore() const {
    ExploreOptions o;
    o.node_cap = node_cap;
    o.threads = std::max(1, threads);
    return o;
  }
  CartanPtr cartan() const { return std::make_shared<const CartanData>(build_cartan_data(type, rank)); }
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// All subcommands share one Common; the format default depends on the subcommand and is filled in after parsing.
void add_common(CLI::App* sub, Common& c, const std::string& default_format, const std::string& formats) {
  sub->add_option("--type", c.type, "affine type (A, B, C, D, A2odd, A2even, D2)")->capture_default_str();
  sub->add_option("--rank", c.rank, "rank n")->capture_default_str();
  sub->add_option("--format", c.format, "output format: " + formats + " (default " + default_format + ")");
  sub->add_option("--output,-o", c.output, "write the result to this file instead of stdout");
  sub->add_option("--node-cap", c.node_cap, "abort when an exploration exceeds this many elements")
      ->capture_default_str();
  sub->add_option("--threads", c.threads, "worker threads for explorations and suites")->capture_default_str();
}

void require_format(const Common& c, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (c.format == f) return;
  throw UsageError("unsupported --format '" + c.format + "' for this subcommand");
}

std::vector<KRFactor> read_factors(const std::string& text, bool ascending) {
  auto fs = parse_factors(text);
  if (fs.empty()) throw UsageError("--factors is empty");
  if (ascending) std::reverse(fs.begin(), fs.end());
  return fs;
}

ClassicalWeight read_mu(const CartanData& cd, const std::string& text) {
  std::vector<long long> labels;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      labels.push_back(std::stoll(item, &used));
      if (item.find_first_not_of(' ', used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--mu expects comma-separated integers, got '" + text + "'");
    }
  }
  if (static_cast<int>(labels.size()) != cd.rank)
    throw UsageError("--mu needs " + std::to_string(cd.rank) + " finite Dynkin labels");
  return cd.from_finite_labels(labels);
}

// Classical components (colors 1..n) numbered by first node.
std::vector<int> classical_components(const CrystalGraph& g) {
  const int n = g.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int v = 0; v < n; ++v)
    for (int i = 1; i < g.crystal->cartan().size(); ++i)
      if (g.f_to[v][i] >= 0) parent[std::max(root(v), root(g.f_to[v][i]))] = std::min(root(v), root(g.f_to[v][i]));
  std::map<int, int> ids;
  std::vector<int> out(n);
  for (int v = 0; v < n; ++v) out[v] = ids.emplace(root(v), static_cast<int>(ids.size())).first->second;
  return out;
}

// ---------------------------------------------------------------------------

std::string cmd_kr_graph(const Common& c, int r, int s) {
  require_format(c, {"dot", "json", "text"});
  auto cd = c.cartan();
  const KRPtr kr = make_kr(cd, r, s);
  const CrystalGraph g = explore_all(kr, c.explore());
  if (c.format == "dot") return to_dot(g, "B_" + std::to_string(r) + "_" + std::to_string(s));
  if (c.format == "json") return to_json(g).dump(2) + "\n";
  std::ostringstream out;
  out << kr->describe() << " of " << cd->label() << ": " << g.size() << " elements\n";
  for (int v = 0; v < g.size(); ++v) out << g.crystal->format(g.nodes[v]) << "\t" << to_string(g.classical_weight(v)) << "\n";
  return out.str();
}

std::string cmd_energy(const Common& c, const std::vector<KRFactor>& fs) {
  require_format(c, {"json", "text"});
  const Instance inst = make_instance(c.cartan(), fs, false);
  auto [g, d] = energy_graph(inst.crystals(), c.explore());
  const auto comp = classical_components(g);
  if (c.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (int v = 0; v < g.size(); ++v)
      rows.push_back({{"element", g.crystal->format(g.nodes[v])},
                      {"weight", to_string(g.classical_weight(v))},
                      {"component", comp[v]},
                      {"D", d[v]}});
    return nlohmann::json{{"B", inst.describe()}, {"cartan", inst.cd->label()}, {"elements", rows}}.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "# " << inst.describe() << " of " << inst.cd->label() << "\n# element\tweight\tcomponent\tD\n";
  for (int v = 0; v < g.size(); ++v)
    out << g.crystal->format(g.nodes[v]) << "\t" << to_string(g.classical_weight(v)) << "\t" << comp[v] << "\t" << d[v]
        << "\n";
  return out.str();
}

std::string cmd_rmatrix(const Common& c, const std::vector<KRFactor>& fs) {
  require_format(c, {"json", "text"});
  if (fs.size() != 2) throw UsageError("rmatrix needs exactly two factors");
  const Instance inst = make_instance(c.cartan(), fs, false);
  const auto krs = inst.crystals();
  const LocalEnergy le = local_energy(krs[0], krs[0]->u(), krs[1], krs[1]->u(), c.explore());
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream out;
  out << "# b1 ⊗ b2\tsigma(b1 ⊗ b2)\tH\n";
  for (int v = 0; v < le.g.size(); ++v) {
    const std::string from = le.g.crystal->format(le.g.nodes[v]);
    const std::string to = le.g_swap.crystal->format(le.g_swap.nodes[le.sigma[v]]);
    rows.push_back({{"element", from}, {"image", to}, {"H", le.H[v]}});
    out << from << "\t" << to << "\t" << le.H[v] << "\n";
  }
  if (c.format == "json")
    return nlohmann::json{{"B", inst.describe()}, {"cartan", inst.cd->label()}, {"rmatrix", rows}}.dump(2) + "\n";
  return out.str();
}

std::string cmd_demazure_char(const Common& c, const std::string& word, int level, int node, bool check, bool& ok) {
  require_format(c, {"json", "text"});
  auto cd = c.cartan();
  if (node < 0 || node >= cd->size()) throw UsageError("--node out of range");
  if (level < 1) throw UsageError("--level must be positive");
  const ReducedWord rw = parse_word(*cd, word);
  const CharacterPoly ch = demazure_word(*cd, CharacterPoly::monomial(level * cd->fundamental(node)), rw);
  std::optional<bool> agrees;
  if (check) {
    const DemazureSet d = demazure_set(cd, level, node, rw, c.node_cap);
    agrees = weight_sum(*d.crystal, d.elements) == ch;
    ok = *agrees;
  }
  if (c.format == "json") {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [w, k] : ch.terms()) terms.push_back({{"weight", cd->to_string(w)}, {"coefficient", k}});
    nlohmann::json j{{"cartan", cd->label()}, {"word", rw.to_string()}, {"highest_weight", cd->to_string(level * cd->fundamental(node))},
                     {"terms", terms}, {"dimension", ch.coefficient_sum()}};
    if (agrees) j["crystal_agrees"] = *agrees;
    return j.dump(2) + "\n";
  }
  std::string s = to_string(*cd, ch) + "\n";
  if (agrees) s += std::string("# crystal weight sum ") + (*agrees ? "agrees" : "DIFFERS") + "\n";
  return s;
}

std::string cmd_onedim_sum(const Common& c, const std::vector<KRFactor>& fs, const std::string& mu_text) {
  require_format(c, {"json", "text"});
  const Instance inst = make_instance(c.cartan(), fs, false);
  auto [g, d] = energy_graph(inst.crystals(), c.explore());
  if (!mu_text.empty()) {
    const ClassicalWeight mu = read_mu(*inst.cd, mu_text);
    const LaurentPoly x = one_dim_sum(g, d, mu);
    if (c.format == "json") return nlohmann::json{{"mu", to_string(mu)}, {"X", to_string(x)}}.dump(2) + "\n";
    return to_string(x) + "\n";
  }
  const auto sums = all_onedim_sums(g, d);
  if (c.format == "json") {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [mu, x] : sums) j[to_string(mu)] = to_string(x);
    return nlohmann::json{{"B", inst.describe()}, {"sums", j}}.dump(2) + "\n";
  }
  std::ostringstream out;
  for (const auto& [mu, x] : sums) out << to_string(mu) << "\t" << to_string(x) << "\n";
  return out.str();
}

std::string cmd_verify_main(const Common& c, const std::vector<KRFactor>& fs, bool corollaries, bool commuting,
                            bool& ok) {
  require_format(c, {"json", "text"});
  VerifyOptions vo;
  vo.explore = c.explore();
  vo.corollaries = corollaries;
  vo.permutations = corollaries;
  vo.commuting = commuting;
  const MainRun run = verify_main(make_instance(c.cartan(), fs), vo);
  ok = run.report.ok();
  const nlohmann::json j = to_json(run.report, c.timing);
  if (c.format == "json") return j.dump(2) + "\n";
  std::ostringstream out;
  out << j["type"].get<std::string>() << "  " << j["instance"].get<std::string>() << "\n";
  out << "  |B| = " << run.report.size_b << ", components = " << run.report.components
      << ", C_B = " << j["C_B"].get<std::string>() << ", C_fit = " << j["C_fit"].get<std::string>() << "\n";
  for (const auto& [k, v] : j.items())
    if (k.size() > 3 && k.ends_with("_ok")) out << "  " << k << ": " << v.dump() << "\n";
  for (const auto& m : run.report.mismatches) out << "  mismatch: " << m << "\n";
  out << (ok ? "OK" : "FAILED") << "\n";
  return out.str();
}

std::string cmd_suite(const Common& c, const SuiteConfig& cfg, const std::vector<std::string>& names, bool& ok) {
  require_format(c, {"json", "text"});
  const auto results = property_suites(cfg, names, c.threads);
  ok = std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.ok; });
  if (c.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : results) j.push_back(to_json(r, c.timing));
    return nlohmann::json{{"ok", ok}, {"suites", j}}.dump(2) + "\n";
  }
  std::ostringstream out;
  for (const auto& r : results) {
    out << (r.ok ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases";
    if (c.timing) out << ", " << std::fixed << std::setprecision(2) << r.seconds << " s";
    out << ")\n";
    for (const auto& w : r.witnesses) out << "    witness: " << w << "\n";
  }
  return out.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact affine crystal computations: KR crystals, energies, Demazure characters"};
  app.name("kr-demazure");
  app.require_subcommand(1);

  Common common;
  int r = 1, s = 1, level = 1, node = 0;
  std::string factors, mu, word;
  bool ascending = false, check = false, no_corollaries = false, no_commuting = false;
  SuiteConfig cfg;
  std::vector<std::string> suite_names;

  auto* kr_graph = app.add_subcommand("kr-graph", "export the crystal graph of B^{r,s}");
  add_common(kr_graph, common, "dot", "dot|json|text");
  kr_graph->add_option("-r", r, "row count r")->required();
  kr_graph->add_option("-s", s, "column count s")->required();

  auto add_factors = [&](CLI::App* sub) {
    sub->add_option("--factors", factors, "KR factors r,l;r,l;... listed left to right")->required();
    sub->add_flag("--ascending", ascending, "factors are listed in order of increasing level instead");
  };

  auto* energy = app.add_subcommand("energy", "energy D on every element of a tensor product");
  add_common(energy, common, "text", "json|text");
  add_factors(energy);

  auto* rmatrix = app.add_subcommand("rmatrix", "combinatorial R-matrix and local energy of B1 ⊗ B2");
  add_common(rmatrix, common, "text", "json|text");
  add_factors(rmatrix);

  auto* demazure = app.add_subcommand("demazure-char", "Demazure character D_w(e^{l Lambda_x}) by Demazure operators");
  add_common(demazure, common, "text", "json|text");
  demazure->add_option("--word", word, "word such as \"s1.s0 * tau1\"")->required();
  demazure->add_option("--level", level, "level l")->capture_default_str();
  demazure->add_option("--node", node, "node x of Lambda_x")->capture_default_str();
  demazure->add_flag("--check", check, "also sum weights over the Demazure crystal and compare (type A)");

  auto* onedim = app.add_subcommand("onedim-sum", "one-dimensional sums X(B, mu, q)");
  add_common(onedim, common, "text", "json|text");
  add_factors(onedim);
  onedim->add_option("--mu", mu, "finite Dynkin labels of mu, comma-separated; all mu when omitted");

  auto* verify = app.add_subcommand("verify-main", "verify the Demazure realization of a tensor product of KR crystals");
  add_common(verify, common, "json", "json|text");
  add_factors(verify);
  verify->add_flag("--no-corollaries", no_corollaries, "skip the character and one-dimensional-sum identities");
  verify->add_flag("--no-commuting", no_commuting, "skip the commuting-square check");
  verify->add_flag("!--no-timing", common.timing, "omit the timing field");

  auto* suite = app.add_subcommand("suite", "run the property and lemma suites");
  add_common(suite, common, "text", "json|text");
  suite->add_option("--name", suite_names, "run only these suites (repeatable)");
  suite->add_option("--max-rank", cfg.max_rank, "largest rank n")->capture_default_str();
  suite->add_option("--max-columns", cfg.max_columns, "largest column count s")->capture_default_str();
  suite->add_option("--triple-max-rank", cfg.triple_max_rank, "largest rank for three-factor checks")
      ->capture_default_str();
  suite->add_option("--seed", cfg.seed, "seed for random raising sequences")->capture_default_str();
  suite->add_flag("!--no-timing", common.timing, "omit timings");
  suite->add_flag("--list", [&](std::int64_t) {
    for (const auto& [name, fn] : registered_suites()) out << name << "\n";
    throw CLI::Success();
  }, "list suite names");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg, help;
    const int code = app.exit(e, help, msg);
    out << help.str();
    err << msg.str();
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (common.type != "A" && common.type != "A1" && !demazure->parsed())
      throw UsageError("KR crystals are realized for type A only; --type " + common.type +
                       " is accepted by demazure-char");
    if (common.format.empty()) common.format = kr_graph->parsed() ? "dot" : verify->parsed() ? "json" : "text";
    cfg.explore = common.explore();
    std::string text;
    bool ok = true;
    if (kr_graph->parsed()) text = cmd_kr_graph(common, r, s);
    else if (energy->parsed()) text = cmd_energy(common, read_factors(factors, ascending));
    else if (rmatrix->parsed()) text = cmd_rmatrix(common, read_factors(factors, ascending));
    else if (demazure->parsed()) text = cmd_demazure_char(common, word, level, node, check, ok);
    else if (onedim->parsed()) text = cmd_onedim_sum(common, read_factors(factors, ascending), mu);
    else if (verify->parsed())
      text = cmd_verify_main(common, read_factors(factors, ascending), !no_corollaries, !no_commuting, ok);
    else if (suite->parsed()) text = cmd_suite(common, cfg, suite_names, ok);

    if (common.output.empty()) {
      out << text;
    } else {
      std::ofstream file(common.output, std::ios::binary);
      if (!file) throw UsageError("cannot write " + common.output);
      file << text;
    }
    return ok ? kOk : kVerificationFailed;
  } catch (const CapExceeded& e) {
    err << "kr-demazure: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const std::invalid_argument& e) {
    err << "kr-demazure: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace krd::cli
