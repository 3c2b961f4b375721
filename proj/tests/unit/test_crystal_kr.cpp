#include <catch_amalgamated.hpp>

#include "krdemazure.hpp"

using namespace krd;

namespace {

CartanPtr type_a(int n) { return std::make_shared<const CartanData>(build_cartan_data(AffineType::A1, n)); }

// Number of semistandard r x s tableaux with entries <= m, by the hook-content formula.
long long hook_content(int r, int s, int m) {
  Rational count = 1;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < s; ++j) count *= Rational(m + j - i, (s - j - 1) + (r - i - 1) + 1);
  return static_cast<long long>(boost::multiprecision::numerator(count));
}

long long binomial(long long n, long long k) {
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Signature rule written independently of TensorCrystal: list the factors left to right, each contributing
// eps_i minus signs followed by phi_i plus signs, cancel adjacent (+,-) pairs; f_i acts on the factor of the
// leftmost surviving +, e_i on the factor of the rightmost surviving -.
std::optional<std::vector<int>> signature_act(const std::vector<KRPtr>& krs, std::vector<int> b, int i, bool raise) {
  std::vector<std::pair<char, int>> stack;  // reduced word, cancellation done on the fly
  for (std::size_t k = 0; k < krs.size(); ++k) {
    const Element x = Element::atom(b[k]);
    for (int t = 0; t < krs[k]->epsilon(i, x); ++t) {
      if (!stack.empty() && stack.back().first == '+') stack.pop_back();
      else stack.emplace_back('-', static_cast<int>(k));
    }
    for (int t = 0; t < krs[k]->phi(i, x); ++t) stack.emplace_back('+', static_cast<int>(k));
  }
  int target = -1;
  if (raise) {
    for (const auto& [sign, k] : stack)
      if (sign == '-') target = k;
  } else {
    for (const auto& [sign, k] : stack)
      if (sign == '+') {
        target = k;
        break;
      }
  }
  if (target < 0) return std::nullopt;
  const Element x = Element::atom(b[target]);
  const auto moved = raise ? krs[target]->e(i, x) : krs[target]->f(i, x);
  REQUIRE(moved.has_value());
  b[target] = moved->index;
  return b;
}

}  // namespace

TEST_CASE("KR crystals have the hook-content number of elements", "[kr]") {
  for (int n = 1; n <= 4; ++n) {
    const auto cd = type_a(n);
    for (int r = 1; r <= n; ++r)
      for (int s = 1; s <= 3; ++s) CHECK(make_kr(cd, r, s)->size() == hook_content(r, s, n + 1));
  }
}

TEST_CASE("B^{1,1} is the cycle 1 -> 2 -> ... -> n+1 -> 1", "[kr]") {
  for (int n = 1; n <= 4; ++n) {
    const auto kr = make_kr(type_a(n), 1, 1);
    for (int i = 1; i <= n; ++i) {
      const auto b = kr->parse(std::to_string(i));
      REQUIRE(b);
      const auto fb = kr->f(i, *b);
      REQUIRE(fb);
      CHECK(kr->format(*fb) == std::to_string(i + 1));
    }
    const auto last = kr->parse(std::to_string(n + 1));
    REQUIRE(last);
    const auto f0 = kr->f(0, *last);
    REQUIRE(f0);
    CHECK(kr->format(*f0) == "1");
  }
}

TEST_CASE("KR crystals satisfy the crystal axioms", "[kr][crystal]") {
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= n; ++r)
      for (int s = 1; s <= 2; ++s) {
        const CrystalGraph g = explore_all(make_kr(type_a(n), r, s));
        INFO(g.crystal->describe() << " of A_" << n);
        CHECK(axiom_violations(g).empty());
      }
}

TEST_CASE("promotion intertwines e_i and e_{i+1} and has order n+1", "[kr]") {
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= n; ++r) {
      const auto kr = make_kr(type_a(n), r, 2);
      for (int idx = 0; idx < kr->size(); ++idx) {
        int x = idx;
        for (int k = 0; k <= n; ++k) x = kr->promotion_index(x);
        CHECK(x == idx);
        CHECK(kr->promotion_inverse_index(kr->promotion_index(idx)) == idx);
        for (int i = 0; i <= n; ++i) {
          const auto up = kr->e(i, Element::atom(idx));
          const auto shifted = kr->e((i + 1) % (n + 1), Element::atom(kr->promotion_index(idx)));
          CHECK(up.has_value() == shifted.has_value());
          if (up && shifted) CHECK(kr->promotion_index(up->index) == shifted->index);
        }
      }
    }
}

TEST_CASE("KR crystals are perfect with the expected number of minimal elements", "[kr]") {
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= n; ++r)
      for (int s = 1; s <= 2; ++s) {
        const auto rep = perfectness_report(make_kr(type_a(n), r, s));
        INFO("A_" << n << " B^{" << r << "," << s << "}");
        for (const auto& c : rep.checks) {
          INFO(c.name << ": " << c.detail);
          CHECK(c.ok);
        }
        CHECK(static_cast<long long>(rep.min_count) == binomial(n + s, n));
        CHECK(rep.min_count == rep.dominant_count);
      }
}

TEST_CASE("u(B^{r,s}) is the classically lowest element of weight s w_0(varpi_r)", "[kr]") {
  for (int n = 1; n <= 3; ++n) {
    const auto cd = type_a(n);
    for (int r = 1; r <= n; ++r)
      for (int s = 1; s <= 2; ++s) {
        const auto kr = make_kr(cd, r, s);
        std::vector<long long> labels(n, 0);
        labels[n - r] = -s;  // w_0(varpi_r) = -varpi_{n+1-r}
        CHECK(kr->classical_weight(kr->u()) == cd->from_finite_labels(labels));
        for (int i = 1; i <= n; ++i) CHECK_FALSE(kr->f(i, kr->u()).has_value());
        CHECK(kr->level() == s);
      }
  }
}

TEST_CASE("tensor products follow the signature rule", "[crystal]") {
  const std::vector<std::pair<int, std::vector<std::pair<int, int>>>> cases = {
      {1, {{1, 1}, {1, 2}, {1, 1}}}, {2, {{1, 1}, {1, 2}, {2, 1}}}, {2, {{2, 2}, {1, 1}}}, {3, {{2, 1}, {1, 1}, {3, 1}}}};
  for (const auto& [n, factors] : cases) {
    const auto cd = type_a(n);
    std::vector<KRPtr> krs;
    std::vector<CrystalPtr> cs;
    for (const auto& [r, s] : factors) {
      krs.push_back(make_kr(cd, r, s));
      cs.push_back(krs.back());
    }
    const CrystalPtr t = tensor(cs);
    for (const auto& x : t->elements()) {
      const std::vector<int> flat = flatten(x);
      for (int i = 0; i <= n; ++i)
        for (bool raise : {true, false}) {
          const auto got = raise ? t->e(i, x) : t->f(i, x);
          const auto want = signature_act(krs, flat, i, raise);
          REQUIRE(got.has_value() == want.has_value());
          if (got) CHECK(flatten(*got) == *want);
        }
    }
  }
}

TEST_CASE("axiom checker reports a corrupted crystal", "[crystal]") {
  const auto cd = type_a(1);
  // Two-element B^{1,1} with the f_1 arrow deliberately missing.
  TableCrystal::Tables t;
  t.e = {{1, -1}, {-1, 0}};
  t.f = {{-1, 0}, {-1, -1}};
  t.eps = {{1, 0}, {0, 1}};
  t.phi = {{0, 1}, {1, 0}};
  t.weights = {cd->classical_fundamental(1) - cd->classical_fundamental(0),
               cd->classical_fundamental(0) - cd->classical_fundamental(1)};
  t.labels = {"1", "2"};
  const auto broken = std::make_shared<TableCrystal>(cd, t, "broken");
  const auto bad = axiom_violations(explore_all(broken));
  CHECK_FALSE(bad.empty());
}

TEST_CASE("Weyl group action on crystals reflects weights", "[crystal]") {
  const auto cd = type_a(2);
  const auto kr = make_kr(cd, 1, 2);
  for (const auto& b : kr->elements())
    for (int i = 0; i <= 2; ++i) {
      const Element r = weyl_reflect(*kr, i, b);
      const ClassicalWeight w = kr->classical_weight(b);
      CHECK(kr->classical_weight(r) == w - w.lambda[i] * cd->classical_alpha(i));
      CHECK(weyl_reflect(*kr, i, r) == b);
    }
}

TEST_CASE("exploration does not depend on the thread count", "[crystal]") {
  const auto cd = type_a(2);
  const CrystalPtr t = tensor({make_kr(cd, 1, 2), make_kr(cd, 2, 2), make_kr(cd, 1, 1)});
  ExploreOptions one, four;
  four.threads = 4;
  const CrystalGraph a = explore_all(t, one), b = explore_all(t, four);
  CHECK(a.nodes == b.nodes);
  CHECK(a.f_to == b.f_to);
  CHECK(a.e_to == b.e_to);
}

TEST_CASE("exploration honours the node cap", "[crystal]") {
  ExploreOptions tight;
  tight.node_cap = 10;
  CHECK_THROWS_AS(explore_all(tensor({make_kr(type_a(2), 1, 2), make_kr(type_a(2), 2, 2)}), tight), CapExceeded);
}

TEST_CASE("Sigma acts on KR graphs by twisted automorphisms", "[kr]") {
  for (int n = 1; n <= 3; ++n) {
    const auto cd = type_a(n);
    for (int r = 1; r <= n; ++r) {
      const auto kr = make_kr(cd, r, 2);
      const CrystalGraph g = explore_all(kr);
      for (int t : cd->special) {
        const DynkinAuto& tau = cd->tau_of(t);
        const auto sig = sigma_action(g, tau, g.find(kr->u()));
        for (int v = 0; v < g.size(); ++v) {
          CHECK(g.classical_weight(sig[v]) == cd->apply(tau, g.classical_weight(v)));
          for (int i = 0; i <= n; ++i) {
            const int up = g.e_to[v][i];
            const int up_img = g.e_to[sig[v]][tau(i)];
            CHECK((up >= 0 ? sig[up] : up) == up_img);
          }
        }
      }
    }
  }
}
