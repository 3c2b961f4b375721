#include <catch_amalgamated.hpp>

#include "krdemazure.hpp"

#include <numeric>
#include <random>

using namespace krd;

namespace {

CartanPtr type_a(int n) { return std::make_shared<const CartanData>(build_cartan_data(AffineType::A1, n)); }

// (varpi_i, varpi_j) for sl_{n+1}: min(i,j)(n+1-max(i,j))/(n+1).
Rational varpi_form(int n, int i, int j) {
  return Rational(std::min(i, j) * (n + 1 - std::max(i, j)), n + 1);
}

// Sum over positive roots alpha_i + ... + alpha_j of |<lambda, alpha^vee>|, lambda given by finite labels.
long long translation_length(const std::vector<long long>& labels) {
  long long total = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    long long pairing = 0;
    for (std::size_t j = i; j < labels.size(); ++j) {
      pairing += labels[j];
      total += pairing < 0 ? -pairing : pairing;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("type A Cartan matrices, marks and special nodes", "[cartan]") {
  for (int n = 1; n <= 4; ++n) {
    const auto cd = type_a(n);
    REQUIRE(cd->size() == n + 1);
    for (int i = 0; i <= n; ++i) {
      CHECK(cd->marks[i] == 1);
      CHECK(cd->comarks[i] == 1);
      for (int j = 0; j <= n; ++j) {
        const int dist = std::min((i - j + n + 1) % (n + 1), (j - i + n + 1) % (n + 1));
        int expected = (i == j) ? 2 : (dist == 1 ? -1 : 0);
        if (n == 1 && i != j) expected = -2;
        CHECK(cd->a[i][j] == expected);
      }
    }
    std::vector<int> all(n + 1);
    std::iota(all.begin(), all.end(), 0);
    CHECK(cd->special == all);
  }
}

TEST_CASE("special automorphisms are the rotations of the cycle", "[cartan]") {
  for (int n = 1; n <= 4; ++n) {
    const auto cd = type_a(n);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) CHECK(cd->tau_of(i)(j) == (i + j) % (n + 1));
  }
}

TEST_CASE("d-pairings of fundamental weights are compatible with Sigma", "[cartan]") {
  for (int n = 1; n <= 4; ++n) {
    const auto cd = type_a(n);
    CHECK(cd->kappa[0] == 0);
    for (int i = 1; i <= n; ++i) CHECK(cd->kappa[i] == -varpi_form(n, i, i) / 2);
    for (int t : cd->special)
      for (int j = 0; j <= n; ++j)
        CHECK(cd->apply(cd->tau_of(t), cd->fundamental(j)) == cd->fundamental(cd->tau_of(t)(j)));
  }
}

TEST_CASE("denominator N clears every pairing of the lattice", "[cartan]") {
  for (int n = 1; n <= 4; ++n) {
    const auto cd = type_a(n);
    boost::multiprecision::cpp_int expected = 1;
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j)
        expected = boost::multiprecision::lcm(expected, boost::multiprecision::denominator(varpi_form(n, i, j)));
      expected = boost::multiprecision::lcm(expected, boost::multiprecision::denominator(Rational(varpi_form(n, i, i) / 2)));
    }
    CHECK(cd->N == static_cast<long long>(expected));
  }
}

TEST_CASE("form on classical weights matches the sl_{n+1} Gram matrix", "[cartan]") {
  for (int n = 1; n <= 4; ++n) {
    const auto cd = type_a(n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) CHECK(cd->form(cd->varpi(i), cd->varpi(j)) == varpi_form(n, i, j));
  }
}

TEST_CASE("weights parse back from their printed form", "[cartan]") {
  const auto cd = type_a(2);
  const AffineWeight w = 2 * cd->fundamental(1) - cd->alpha(0) + 3 * cd->null_root();
  CHECK(cd->parse_weight(cd->to_string(w)) == w);
  CHECK_THROWS_AS(cd->parse_weight("Lambda"), std::invalid_argument);
  CHECK_THROWS_AS(parse_type("E"), std::invalid_argument);
}

TEST_CASE("translations compose additively and have the root-count length", "[weyl]") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 3; ++n) {
    const auto cd = type_a(n);
    auto random_labels = [&] {
      std::vector<long long> l(n);
      for (auto& x : l) x = static_cast<long long>(rng() % 7) - 3;
      return l;
    };
    for (int trial = 0; trial < 50; ++trial) {
      const auto la = random_labels(), lb = random_labels();
      const ClassicalWeight a = cd->from_finite_labels(la), b = cd->from_finite_labels(lb);
      const WeylElement prod = weyl_multiply(*cd, translation_element(*cd, a), translation_element(*cd, b));
      CHECK(prod == translation_element(*cd, a + b));
      CHECK(translation_word(*cd, a).length() == translation_length(la));
    }
  }
}

TEST_CASE("lengths of translations by KR weights add up", "[weyl]") {
  for (int n = 1; n <= 3; ++n) {
    const auto cd = type_a(n);
    for (int r1 = 1; r1 <= n; ++r1)
      for (int r2 = 1; r2 <= n; ++r2) {
        const auto m1 = kr_translation(*cd, r1), m2 = kr_translation(*cd, r2);
        CHECK(translation_word(*cd, m1 + m2).length() ==
              translation_word(*cd, m1).length() + translation_word(*cd, m2).length());
      }
  }
}

TEST_CASE("longest element and KR translations", "[weyl]") {
  for (int n = 1; n <= 4; ++n) {
    const auto cd = type_a(n);
    CHECK(static_cast<int>(longest_word(*cd).size()) == n * (n + 1) / 2);
    for (int r = 1; r <= n; ++r) {
      std::vector<long long> expected(n, 0);
      expected[n - r] = -1;  // w_0(varpi_r) = -varpi_{n+1-r}
      CHECK(kr_translation(*cd, r) == cd->from_finite_labels(expected));
    }
  }
  CHECK_THROWS_AS(kr_translation(*type_a(2), 3), std::invalid_argument);
}

TEST_CASE("reduced words multiply back and never get longer", "[weyl]") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 3; ++n) {
    const auto cd = type_a(n);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<int> letters;
      const int len = static_cast<int>(rng() % 10);
      for (int k = 0; k < len; ++k) letters.push_back(static_cast<int>(rng() % cd->size()));
      const DynkinAuto tail = cd->tau[rng() % cd->tau.size()];
      const WeylElement w = word_element(*cd, letters, tail);
      const ReducedWord rw = reduced_word(*cd, w);
      CHECK(word_element(*cd, rw) == w);
      CHECK(rw.length() <= len);
      CHECK(rw.tail == tail);
    }
  }
}

TEST_CASE("tail of t_{varpi_i} is tau^i", "[weyl]") {
  for (int n = 1; n <= 4; ++n) {
    const auto cd = type_a(n);
    for (int i = 1; i <= n; ++i) CHECK(translation_word(*cd, cd->varpi(i)).tail_index == i);
  }
}

TEST_CASE("words parse from and print to the same text", "[weyl]") {
  const auto cd = type_a(3);
  const ReducedWord rw = parse_word(*cd, "s3.s1.s0 * tau2");
  CHECK(rw.letters == std::vector<int>{3, 1, 0});
  CHECK(rw.tail_index == 2);
  CHECK(rw.to_string() == "s3.s1.s0 * tau2");
  CHECK(parse_word(*cd, "e").length() == 0);
  CHECK(parse_word(*cd, "e * tau1").tail == cd->tau_of(1));
  CHECK_THROWS_AS(parse_word(*cd, "s4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word(*cd, "s1.x2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word(*cd, "s1 * rho"), std::invalid_argument);
}
