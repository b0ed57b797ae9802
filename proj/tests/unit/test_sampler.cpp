#include <doctest.h>

#include <cmath>
#include <map>

#include "otter/limitdist.hpp"
#include "otter/sampler.hpp"

using namespace otter;

TEST_CASE("degenerate sizes") {
  auto tab = TreeTables::compute(10);
  RngStream rng(1);
  CHECK(sample_profile(0, tab, rng).parts.empty());
  for (int i = 0; i < 5; ++i) {
    auto p = sample_profile(1, tab, rng);
    CHECK(p.parts == std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}});
    CHECK(p.trees() == 1);
    CHECK(p.largest() == 1);
  }
}

TEST_CASE("n = 3 profiles are uniform") {
  auto tab = TreeTables::compute(3);
  ForestSampler sampler(tab);
  RngStream rng(7);
  std::map<std::vector<std::pair<std::size_t, std::size_t>>, int> freq;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) ++freq[sampler.sample(3, rng).parts];
  CHECK(freq.size() == 3);
  const double se = std::sqrt(samples * (1.0 / 3) * (2.0 / 3));
  for (const auto& [parts, count] : freq) CHECK(std::abs(count - samples / 3.0) < 5 * se);
}

TEST_CASE("exact profile weights") {
  auto tab = TreeTables::compute(12);
  auto w = exact_profile_weights(tab, 4);
  CHECK(w.size() == 5);
  CHECK(w.at({{4, 1}}) == Rational(1, 3));
  for (std::size_t n = 1; n <= 12; ++n) {
    auto weights = exact_profile_weights(tab, n);
    Rational total = 0;
    std::map<std::size_t, Rational> by_trees;
    for (const auto& [parts, p] : weights) {
      total += p;
      std::size_t k = 0;
      for (const auto& [size, count] : parts) k += count;
      by_trees[k] += p;
    }
    CHECK(total == 1);
    auto law = exact_component_pmf(n, tab.trees);
    for (std::size_t k = 1; k <= n; ++k) CHECK(by_trees[k] == law.exact[k - 1]);
  }
}

TEST_CASE("reproducibility and table/walk agreement") {
  auto tab = TreeTables::compute(300);
  ForestSampler with_tables(tab, 300), walking(tab, 0);
  RngStream a(42), b(42), c(42, 1);
  bool stream_differs = false;
  for (int i = 0; i < 200; ++i) {
    auto p = with_tables.sample(300, a);
    auto q = walking.sample(300, b);
    CHECK(p == q);
    stream_differs = stream_differs || !(with_tables.sample(300, c) == p);
  }
  CHECK(stream_differs);
}

TEST_CASE("uniform_below stays in range and covers it") {
  RngStream rng(3);
  BigInt bound("340282366920938463463374607431768211457");  // 2^128 + 1
  for (int i = 0; i < 1000; ++i) {
    BigInt u = rng.uniform_below(bound);
    CHECK(u >= 0);
    CHECK(u < bound);
  }
  std::vector<int> hits(6, 0);
  for (int i = 0; i < 6000; ++i) ++hits[rng.uniform_below(BigInt(6)).get_ui()];
  for (int h : hits) CHECK(h > 800);
}

TEST_CASE("chi-square test") {
  ChiSquare perfect = chi_square_test({250, 250, 250, 250}, {0.25, 0.25, 0.25, 0.25});
  CHECK(perfect.statistic == doctest::Approx(0));
  CHECK(perfect.dof == 3);
  CHECK(perfect.p_value == doctest::Approx(1));
  ChiSquare off = chi_square_test({400, 200, 200, 200}, {0.25, 0.25, 0.25, 0.25});
  CHECK(off.statistic == doctest::Approx(120));
  CHECK(off.p_value < 1e-10);
  // Cells with tiny expectation are pooled.
  ChiSquare pooled = chi_square_test({100, 0, 0}, {0.999, 0.0005, 0.0005});
  CHECK(pooled.cells == 1);
}

TEST_CASE("empirical report") {
  auto tab = TreeTables::compute(100);
  auto r8 = empirical_report(tab, 8, 100000, 1);
  CHECK(r8.max_profile_z <= 5);
  CHECK(r8.profiles.size() == 22);
  auto r100 = empirical_report(tab, 100, 100000, 2);
  CHECK(r100.chi.p_value > 1e-3);
  CHECK(std::abs(r100.mean - r100.exact_mean) < 5 * r100.mean_se);
  CHECK_THROWS_AS(empirical_report(tab, 8, 999, 0), PreconditionError);
}
