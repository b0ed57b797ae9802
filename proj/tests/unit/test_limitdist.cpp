#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>

#include "fixture.hpp"
#include "otter/limitdist.hpp"

using namespace otter;
using otter::test::near;
using otter::test::series30;
using otter::test::tables5000;

namespace {

BigInt binom(const BigInt& top, unsigned long k) {
  // C(top + k - 1, k) for a big top.
  BigInt num = 1, den = 1;
  for (unsigned long i = 0; i < k; ++i) {
    num *= top + i;
    den *= i + 1;
  }
  return num / den;
}

// Walks all partitions of n and tallies prod_m C(t_m + c_m - 1, c_m) by number of parts.
std::map<std::size_t, BigInt> by_partitions(std::size_t n, const IntegerSequence& t) {
  std::map<std::size_t, BigInt> out;
  std::function<void(std::size_t, std::size_t, std::size_t, BigInt)> walk = [&](std::size_t left, std::size_t max_part,
                                                                                std::size_t parts, BigInt weight) {
    if (left == 0) {
      out[parts] += weight;
      return;
    }
    for (std::size_t m = std::min(left, max_part); m >= 1; --m)
      for (unsigned long c = 1; c * m <= left; ++c) walk(left - c * m, m - 1, parts + c, weight * binom(t[m], c));
  };
  walk(n, n, 0, BigInt(1));
  return out;
}

}  // namespace

TEST_CASE("component counts by hand") {
  auto t = free_trees(10);
  CHECK(exact_component_counts(3, t).counts == std::vector<BigInt>{1, 1, 1});
  CHECK(exact_component_counts(4, t).counts == std::vector<BigInt>{2, 2, 1, 1});
}

TEST_CASE("component counts against partition enumeration") {
  auto t = free_trees(14);
  ComponentCounts counts(t, 14);
  auto f = forests(14);
  for (std::size_t n = 1; n <= 14; ++n) {
    auto table = counts.table(n);
    auto brute = by_partitions(n, t);
    CAPTURE(n);
    CHECK(table.total() == f[n]);
    for (std::size_t k = 1; k <= n; ++k) CHECK(table.at(k) == brute[k]);
  }
}

TEST_CASE("exact pmf") {
  auto t = free_trees(10);
  Pmf one = exact_component_pmf(1, t);
  CHECK(one.offset == 1);
  CHECK(one.exact == std::vector<Rational>{1});
  Pmf four = exact_component_pmf(4, t);
  CHECK(four.exact == std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(1, 6), Rational(1, 6)});
  CHECK(four.exact_mean() == Rational(13, 6));
  Pmf zero = exact_component_pmf(0, t);
  CHECK(zero.offset == 0);
  CHECK(zero.exact == std::vector<Rational>{1});
}

TEST_CASE("largest tree") {
  const auto& tab = tables5000();
  auto pmf = largest_tree_pmf(tab, 10);
  Rational total = 0;
  for (const auto& p : pmf) total += p;
  CHECK(total == 1);
  // Forests on 4 vertices: {4}x2, {3,1}, {2,2}, {2,1,1}, {1,1,1,1}.
  auto four = largest_tree_pmf(tab, 4);
  CHECK(four[4] == Rational(1, 3));
  CHECK(four[1] == Rational(1, 6));
  CHECK(largest_tree_at_least(tab, 4, 3) == Rational(1, 2));
  CHECK(forests_with_trees_below(tab.trees, 4, 3) == 3);
  double p200 = largest_tree_at_least(tab, 200, 170).get_d();
  CHECK(near(p200, 0.995784, 1e-6));
  CHECK(largest_tree_at_least(tab, 100, 80).get_d() > 0.99);
}

TEST_CASE("limit law") {
  const auto& s = series30();
  ScopedPrecision guard(s.digits());
  RhoLambda rl = rho_and_lambda(s);
  Pmf gamma = limit_pmf(s, 60, rl);
  CHECK(gamma.at(0).overlaps(rl.rho));
  CHECK(gamma.at(1).overlaps(rl.rho * s.tree_gf_power(1)));
  CHECK(gamma.total().contains(Float(1)));
  CHECK(gamma.tail_mass < Float("1e-12"));
  CumulantVector cum = limit_cumulants(s, 2);
  CHECK((gamma.mean() + RealValue(1L)).overlaps(cum.mean));
  CHECK(near(gamma.mean().to_double() + 1, 1.755, 1e-3));
  Pmf m0 = limit_pmf(s, 0);
  CHECK(m0.size() == 1);
  CHECK(m0.at(0).overlaps(rl.rho));
}

TEST_CASE("Otter's distribution and its family") {
  const auto& s = series30();
  ScopedPrecision guard(s.digits());
  HatPResult at_alpha = hat_p_family(s, s.alpha(), 5000);
  CHECK(abs(at_alpha.pmf.total().value() - 1) < Float("1e-6"));
  CHECK(at_alpha.pmf.total().contains(Float(1)));
  CHECK(at_alpha.atoms_nonnegative);
  CHECK(at_alpha.atoms_match);
  HatPResult half = hat_p_family(s, s.alpha() / 2L, 200);
  CHECK(abs(half.pmf.total().value() - 1) + half.pmf.total().radius() < Float("1e-10"));
  CHECK(half.pmf.at(0).overlaps(half.p0));
  CHECK_THROWS_AS(hat_p_family(s, s.alpha() * RealValue(Float("1.01")), 100), PreconditionError);
}

TEST_CASE("convergence report") {
  const auto& s = series30();
  ComponentCounts counts(tables5000().trees, 400);
  auto rep = convergence_report(s, counts, {1, 50, 100, 200, 400});
  const auto& tv = rep.find("tv");
  CHECK(tv.at(1) > tv.at(100));
  const auto& mean = rep.find("mean");
  // E(T_n) at n = 50..400 decreases toward the limit mean from above.
  CHECK(mean.at(50) > mean.at(100));
  CHECK(mean.at(400) > 1.7555);
  CHECK(mean.at(400) - 1.7555 < mean.at(50) - 1.7555);
  auto ui = uniform_integrability_witness(counts, {50, 100, 200, 400});
  CHECK(ui.at(400) <= ui.at(100));
}

TEST_CASE("levy ratios") {
  const auto& s = series30();
  auto rep = levy_ratio_diagnostics(s, 2000);
  RhoLambda rl = rho_and_lambda(s);
  CHECK(near(rep.find("p_over_tau").at(1), rl.rho.to_double(), 1e-12));
  CHECK(near(rep.find("p_over_tau").extrapolated, 1, 1e-3));
  CHECK(near(rep.find("mu_conv_over_2mu").extrapolated, 1, 1e-3));
}

TEST_CASE("generalized cycle-index asymptotics") {
  ScopedPrecision guard(30);
  std::vector<RealValue> nu;
  for (std::size_t k = 1; k <= 2000; ++k) nu.push_back(RealValue(pow(Float(k), Float("-2.5"))));
  auto rep = generalized_asymptotics(WeightSequence::real(nu), Envelope::polynomial(1, 2.5), 2000);
  CHECK(near(rep.find("ratio").extrapolated, 1, 1e-3));
  CHECK_THROWS(generalized_asymptotics(WeightSequence::real(std::vector<RealValue>(5, RealValue(0L))),
                                       Envelope::finite(), 5));
  auto tree = tree_cycle_index_asymptotics(series30(), 2000);
  CHECK(near(tree.find("ratio").extrapolated, 1, 1e-3));
}
