// Acceptance checks: one PASS/FAIL line per criterion, exit status 0 only if all pass.

#include "krdemazure.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace krd;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

CartanPtr type_a(int n) { return std::make_shared<const CartanData>(build_cartan_data(AffineType::A1, n)); }

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

int failures = 0;

void criterion(int number, const std::string& title, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = since(start);
  o.require(secs < limit_seconds, "took longer than " + std::to_string(limit_seconds) + " s");
  if (!o.ok) ++failures;
  std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", number, title.c_str(), secs,
              o.detail.empty() ? "" : " -- ", o.detail.c_str());
  std::fflush(stdout);
}

void require_suite(Outcome& o, const SuiteResult& r) {
  o.require(r.ok, r.name + (r.witnesses.empty() ? "" : ": " + r.witnesses.front()));
  o.require(r.cases > 0, r.name + " ran no cases");
}

std::string brief(const VerificationReport& r) {
  return r.type + " " + r.instance + " |B|=" + std::to_string(r.size_b) + " C_B=" + to_string(r.c_b);
}

}  // namespace

int main() {
  std::shared_ptr<const MainRun> a1, a2, a2_triple;

  criterion(1, "main theorem, equal levels: A_1^(1) B^{1,1} ⊗ B^{1,1}", 5, [&](Outcome& o) {
    a1 = std::make_shared<MainRun>(verify_main(make_instance(type_a(1), parse_factors("1,1;1,1"))));
    const auto& r = a1->report;
    o.require(r.isomorphism_ok && r.size_b == 4 && r.size_rhs == 4, "isomorphism over 4 elements");
    o.require(r.grading_ok && r.energy_ok, "grading identity");
    o.require(r.c_b == Rational(-1), "C_B = -1, got " + to_string(r.c_b));
    o.require(r.ok(), "report: " + (r.mismatches.empty() ? std::string("flag") : r.mismatches.front()));
  });

  criterion(2, "main theorem, unequal levels: A_2^(1) B^{1,2} ⊗ B^{2,1} and B^{1,2} ⊗ B^{2,2} ⊗ B^{1,1}", 600,
            [&](Outcome& o) {
              const auto start = Clock::now();
              a2 = std::make_shared<MainRun>(verify_main(make_instance(type_a(2), parse_factors("1,2;2,1"))));
              o.require(since(start) < 60, "two-factor instance over 60 s");
              const auto& r = a2->report;
              o.require(r.isomorphism_ok && r.size_b == 18, "isomorphism over 18 elements");
              o.require(r.grading_ok, "grading identity");
              o.require(r.c_fit_ok && r.c_b == r.c_fit, "C_B from translation formula vs right-hand degree fit");
              o.require(r.ok(), "report: " + brief(r));
              a2_triple =
                  std::make_shared<MainRun>(verify_main(make_instance(type_a(2), parse_factors("1,2;2,2;1,1"))));
              const auto& t = a2_triple->report;
              o.require(t.ok() && t.c_b == t.c_fit, "three-factor instance: " + brief(t));
            });

  criterion(3, "corollary identities (character and one-dimensional sums) for both instances", 600, [&](Outcome& o) {
    o.require(a2 && a2_triple, "instances of criterion 2 unavailable");
    if (!a2 || !a2_triple) return;
    for (const auto* run : {a2.get(), a2_triple.get()}) {
      o.require(run->report.character_identity_ok == true, "character identity: " + brief(run->report));
      o.require(run->report.onedim_sum_identity_ok == true, "one-dimensional sum identity: " + brief(run->report));
    }
  });

  SuiteConfig cfg;  // rank <= 3, s <= 2
  const auto catalog_start = Clock::now();
  const Catalogs cats = build_catalogs(cfg);
  const double catalog_seconds = since(catalog_start);

  criterion(4, "Demazure character formula for all w of length <= 4 in A_1^(1), A_2^(1)", 60, [&](Outcome& o) {
    const SuiteResult r = suite_demazure_characters(cats, cfg);
    require_suite(o, r);
    o.require(r.cases >= 25, "only " + std::to_string(r.cases) + " cases");
  });

  criterion(5, "energy well-definedness on (B^{1,1})^3 and B^{1,2} ⊗ B^{2,1} ⊗ B^{1,1} of A_2^(1)", 120,
            [&](Outcome& o) {
              const auto cd = type_a(2);
              for (const char* text : {"1,1;1,1;1,1", "1,2;2,1;1,1"}) {
                const auto krs = make_instance(cd, parse_factors(text), false).crystals();
                const auto left = flat_energy(*build_energy(krs, Bracketing::left_nested(3)));
                const auto right = flat_energy(*build_energy(krs, Bracketing::right_nested(3)));
                const PairwiseEnergy closed(krs);
                std::size_t bad = 0;
                for (const auto& [b, d] : left)
                  if (right.at(b) != d || closed.energy(b) != d) ++bad;
                o.require(bad == 0 && left.size() == right.size(),
                          std::string(text) + ": " + std::to_string(bad) + " disagreements");
              }
              require_suite(o, suite_energy_well_defined(cats, cfg));
            });

  criterion(6, "perfectness of B^{r,s}, n <= 3, s <= 2, with automorphism (tau^r)^{-1}", 60,
            [&](Outcome& o) { require_suite(o, suite_perfectness(cats, cfg)); });

  criterion(7, "proof-lemma suites (twist, constancy, R-matrix form, energy drop and companions)", 600,
            [&](Outcome& o) {
              for (const auto& r : {suite_twist_identity(cats, cfg), suite_h_constancy(cats, cfg),
                                    suite_d_constancy(cats, cfg), suite_rmatrix_form(cats, cfg),
                                    suite_energy_drop(cats, cfg), suite_h_sequences(cats, cfg),
                                    suite_elementary_raising(cats, cfg), suite_tensor_lemmas(cats, cfg)})
                require_suite(o, r);
            });

  criterion(8, "structural suites (axioms, R-matrix, H consistency, reduced words, degrees)", 600 - catalog_seconds,
            [&](Outcome& o) {
              for (const auto& r : {suite_crystal_axioms(cats, cfg), suite_rmatrix(cats, cfg),
                                    suite_local_energy(cats, cfg), suite_reduced_words(cats, cfg),
                                    suite_degrees(cats, cfg)})
                require_suite(o, r);
            });

  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
