#include <catch_amalgamated.hpp>

#include "krdemazure.hpp"

using namespace krd;

namespace {

CartanPtr type_a(int n) { return std::make_shared<const CartanData>(build_cartan_data(AffineType::A1, n)); }

Rational varpi_form(int n, int i, int j) { return Rational(std::min(i, j) * (n + 1 - std::max(i, j)), n + 1); }

// Closed form of C_B in type A: mu_r = -varpi_{n+1-r}, and <t_mu(Lambda_0), d> = -(mu, mu)/2.
Rational c_closed_form(int n, const std::vector<KRFactor>& left_to_right) {
  std::vector<KRFactor> asc(left_to_right.rbegin(), left_to_right.rend());
  Rational total = 0;
  for (std::size_t j = 0; j < asc.size(); ++j) {
    const long long diff = asc[j].level - (j ? asc[j - 1].level : 0);
    Rational norm = 0;
    for (std::size_t a = j; a < asc.size(); ++a)
      for (std::size_t b = j; b < asc.size(); ++b)
        norm += varpi_form(n, n + 1 - asc[a].r, n + 1 - asc[b].r);
    total -= Rational(diff) * norm / 2;
  }
  return total;
}

MainRun verify(int n, const std::string& factors, VerifyOptions vo = {}) {
  return verify_main(make_instance(type_a(n), parse_factors(factors)), vo);
}

}  // namespace

TEST_CASE("factor lists parse and validate", "[verifier]") {
  CHECK(parse_factors("1,2; 2,1") == std::vector<KRFactor>{{1, 2}, {2, 1}});
  CHECK(to_string(parse_factors("1,2;2,1")) == "1,2;2,1");
  CHECK_THROWS_AS(parse_factors("1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_factors("1,x"), std::invalid_argument);
  const auto cd = type_a(2);
  CHECK_THROWS_AS(make_instance(cd, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_instance(cd, {{3, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(make_instance(cd, {{1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_instance(cd, {{1, 1}, {1, 2}}), std::invalid_argument);
  CHECK_NOTHROW(make_instance(cd, {{1, 1}, {1, 2}}, false));
  CHECK(make_instance(cd, {{1, 2}, {2, 1}}).describe() == "B^{1,2} ⊗ B^{2,1}");
}

TEST_CASE("C_B agrees with the closed form of the translation pairing", "[verifier]") {
  for (const auto& [n, text] : std::vector<std::pair<int, std::string>>{
           {1, "1,1"}, {1, "1,1;1,1"}, {1, "1,3;1,2;1,1"}, {2, "1,2;2,1"}, {2, "1,2;2,2;1,1"}, {3, "2,2;1,1;3,1"}}) {
    const auto fs = parse_factors(text);
    INFO(text);
    CHECK(c_constant(make_instance(type_a(n), fs)) == c_closed_form(n, fs));
  }
  CHECK(c_constant(make_instance(type_a(1), {{1, 1}})) == Rational(-1, 4));
}

TEST_CASE("single B^{1,1} of A_1: two elements on each side", "[verifier]") {
  const MainRun run = verify(1, "1,1");
  CHECK(run.report.ok());
  CHECK(run.report.size_b == 2);
  CHECK(run.report.size_rhs == 2);
  CHECK(run.report.c_b == Rational(-1, 4));
  CHECK(run.report.c_fit == Rational(-1, 4));
}

TEST_CASE("B^{1,1} tensor B^{1,1} of A_1", "[verifier]") {
  const MainRun run = verify(1, "1,1;1,1");
  INFO(to_json(run.report).dump(2));
  CHECK(run.report.ok());
  CHECK(run.report.size_b == 4);
  CHECK(run.report.size_rhs == 4);
  CHECK(run.report.c_b == Rational(-1));
  CHECK(run.report.c_fit == Rational(-1));
  CHECK(run.report.character_identity_ok == true);
  CHECK(run.report.onedim_sum_identity_ok == true);
  CHECK(run.psi.size() == 4);
}

TEST_CASE("unequal levels on A_2", "[verifier]") {
  const MainRun run = verify(2, "1,2;2,1");
  INFO(to_json(run.report).dump(2));
  CHECK(run.report.ok());
  CHECK(run.report.size_b == 18);
  CHECK(run.report.c_b == run.report.c_fit);
  CHECK(run.report.c_b == Rational(-4, 3));
}

TEST_CASE("disconnected u tensor B is matched component by component", "[verifier]") {
  const MainRun run = verify(3, "2,2;1,1;3,1");
  INFO(to_json(run.report).dump(2));
  CHECK(run.report.ok());
  CHECK(run.report.components == 2);
}

TEST_CASE("reports do not depend on the thread count", "[verifier]") {
  VerifyOptions one, three;
  three.explore.threads = 3;
  const auto a = verify(2, "1,2;2,2;1,1", one), b = verify(2, "1,2;2,2;1,1", three);
  CHECK(to_json(a.report, false).dump() == to_json(b.report, false).dump());
  CHECK(a.psi == b.psi);
}

TEST_CASE("a corrupted right-hand edge breaks the isomorphism", "[verifier]") {
  const MainRun run = verify(1, "1,1;1,1");
  REQUIRE(run.report.ok());
  CrystalGraph broken = run.rhs_graph;
  bool corrupted = false;
  for (int y = 0; y < broken.size() && !corrupted; ++y)
    for (int i = 0; i < static_cast<int>(broken.f_to[y].size()) && !corrupted; ++i)
      if (broken.f_to[y][i] >= 0) {
        broken.e_to[broken.f_to[y][i]][i] = kOutside;
        broken.f_to[y][i] = kOutside;
        corrupted = true;
      }
  REQUIRE(corrupted);
  const FullSubgraphMatch m = match_full_subgraph(run.lhs, broken, 0, run.psi[0]);
  CHECK_FALSE(m.ok());
  REQUIRE(m.failure.has_value());
  CHECK_FALSE(describe(run.lhs, broken, *m.failure).empty());
  CHECK(match_full_subgraph(run.lhs, run.rhs_graph, 0, run.psi[0]).ok());
}

TEST_CASE("instances above the node cap are refused", "[verifier]") {
  VerifyOptions vo;
  vo.explore.node_cap = 20;
  CHECK_THROWS_AS(verify(2, "1,2;2,2;1,1", vo), CapExceeded);
}

TEST_CASE("report JSON carries the schema and the normalization", "[verifier]") {
  const MainRun run = verify(1, "1,1;1,1");
  const auto j = to_json(run.report, false);
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["C_B"] == "-1");
  CHECK(j["normalization"].get<std::string>().find("Lambda_0") != std::string::npos);
  CHECK_FALSE(j.contains("seconds"));
  CHECK(to_json(run.report, true).contains("seconds"));
}

TEST_CASE("all property suites pass up to rank 2", "[suites]") {
  SuiteConfig cfg;
  cfg.max_rank = 2;
  for (const auto& r : property_suites(cfg)) {
    INFO(r.name << ": " << (r.witnesses.empty() ? std::string() : r.witnesses.front()));
    CHECK(r.ok);
    CHECK(r.cases > 0);
  }
}

TEST_CASE("suites report witnesses for a corrupted local energy", "[suites]") {
  SuiteConfig cfg;
  cfg.max_rank = 2;
  Catalogs cats = build_catalogs(cfg);
  auto& cat = cats[1];
  auto bad = std::make_shared<LocalEnergy>(cat.pair(0, 2));
  bad->H[bad->H.size() - 1] += 1;
  cat.pairs[0][2] = bad;
  for (const auto& r : {suite_local_energy(cats, cfg), suite_twist_identity(cats, cfg)}) {
    INFO(r.name);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.witnesses.empty());
  }
}

TEST_CASE("unknown suite names are rejected", "[suites]") {
  CHECK_THROWS_AS(property_suites(SuiteConfig{}, {"nope"}), std::invalid_argument);
}

TEST_CASE("enumerated Weyl group elements are distinct and reduced", "[suites]") {
  const auto cd = type_a(2);
  const auto words = weyl_elements_up_to(*cd, 4);
  CHECK(words.size() == 31);  // 1 + 3 + 6 + 9 + 12 from the Poincare series of the affine A_2 group
  for (const auto& w : words) CHECK(reduced_word(*cd, word_element(*cd, w)).length() == w.length());
}
