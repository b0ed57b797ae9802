#include <doctest.h>

#include <cmath>
#include <random>

#include "otter/sequences.hpp"
#include "otter/transforms.hpp"

using namespace otter;

namespace {

// prod_k (1 - x^k)^(-w_k) by multiplying in one geometric factor per copy.
std::vector<BigInt> euler_naive(const std::vector<BigInt>& w, std::size_t n_max) {
  std::vector<BigInt> F(n_max + 1);
  F[0] = 1;
  for (std::size_t k = 1; k <= w.size() && k <= n_max; ++k)
    for (unsigned long copy = 0; copy < w[k - 1].get_ui(); ++copy)
      for (std::size_t n = k; n <= n_max; ++n) F[n] += F[n - k];
  return F;
}

std::vector<BigInt> ones(std::size_t n) { return std::vector<BigInt>(n, BigInt(1)); }

bool near_equal(double a, double b) { return std::abs(a - b) <= 1e-15 * std::abs(b); }

}  // namespace

TEST_CASE("divisor log coefficients") {
  auto t = WeightSequence::exact(free_trees(10));
  auto c = divisor_log_coefficients(t, 6);
  CHECK(c[3] == Rational(11, 4));
  CHECK(c[0] == 1);
  auto u = divisor_log_coefficients(WeightSequence::exact(ones(6)), 6);
  CHECK(u[5] == 2);
  CHECK(divisor_sums(ones(12), 12)[12] == 28);
}

TEST_CASE("multiset transform") {
  auto t = WeightSequence::exact(free_trees(20));
  CHECK(multiset_transform(t, 5)[5] == 10);
  CHECK(multiset_transform(t, 20) == forests(20));
  CHECK(multiset_transform(WeightSequence::exact(ones(6)), 6)[6] == 11);
  auto z = multiset_transform(WeightSequence::exact(std::vector<BigInt>(5, BigInt(0))), 5);
  CHECK(z[0] == 1);
  for (std::size_t n = 1; n <= 5; ++n) CHECK(z[n] == 0);
}

TEST_CASE("multiset transform matches repeated geometric factors") {
  std::mt19937 gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<BigInt> w(30);
    for (std::size_t k = 0; k < 15; ++k) w[k] = gen() % 4;
    auto fast = multiset_transform(WeightSequence::exact(w), 30);
    auto slow = euler_naive(w, 30);
    CHECK(fast.values() == slow);
  }
}

TEST_CASE("inverse multiset transform round trips") {
  auto back = inverse_multiset_transform(forests(10), 10);
  CHECK(back.exact_values() == free_trees(10).values());
  auto from_p = inverse_multiset_transform(partition_numbers(50), 50);
  CHECK(from_p.exact_values() == ones(50));
  auto trivial = inverse_multiset_transform(IntegerSequence(0, {1, 0, 0}), 2);
  CHECK(trivial.exact_values() == std::vector<BigInt>{0, 0});
  // 1 + 2x + x^2 would need a negative weight at k = 2.
  CHECK_THROWS_AS(inverse_multiset_transform(IntegerSequence(0, {1, 2, 1}), 2), PreconditionError);
}

TEST_CASE("levy measure of a single unit weight is -log(1 - a)") {
  ScopedPrecision guard(40);
  std::vector<BigInt> w(60, BigInt(0));
  w[0] = 1;
  auto half = RealValue::from_rational(Rational(1, 2));
  auto lm = levy_measure(WeightSequence::exact(w), half, 60, Envelope::finite());
  for (std::size_t n = 1; n <= 10; ++n) CHECK(near_equal(lm.atom(n).to_double(), std::pow(0.5, n) / n));
  CHECK(lm.total.contains(Float(log(Float(2)))));
  CHECK(lm.total.overlaps(lm.total_rearranged));
}

TEST_CASE("cycle index") {
  ScopedPrecision guard(30);
  CHECK(cycle_index_eval({}).contains(Float(1)));
  RealValue x1(Float("0.3")), x2(Float("0.7"));
  CHECK(cycle_index_eval({x1, x2}).overlaps((x1 * x1 + x2) / 2L));
  std::vector<RealValue> twos(3, RealValue(2L));
  CHECK(cycle_index_eval(twos).contains(Float(4)));
  // Z(S_n; m, ..., m) = C(m + n - 1, n).
  for (long m = 1; m <= 4; ++m)
    for (std::size_t n = 1; n <= 4; ++n) {
      BigInt binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m + static_cast<long>(n) - 1), n);
      std::vector<RealValue> x(n, RealValue(m));
      CHECK(cycle_index_eval(x).contains(to_float(binom)));
    }
  auto seq = cycle_index_sequence(twos);
  REQUIRE(seq.size() == 4);
  CHECK(seq[2].contains(Float(3)));
}

TEST_CASE("weight sequences") {
  auto e = WeightSequence::exact(std::vector<BigInt>{3, 4});
  CHECK(e.is_exact());
  CHECK(e.size() == 2);
  CHECK(e.exact_at(2) == 4);
  auto r = WeightSequence::real({RealValue(Float("0.5"))});
  CHECK_FALSE(r.is_exact());
  CHECK_THROWS(r.exact_at(1));
  CHECK(r.real_at(1).contains(Float("0.5")));
}
