#include "otter/sequences.hpp"

#include "otter/error.hpp"
#include "otter/series.hpp"
#include "otter/transforms.hpp"

namespace otter {

IntegerSequence rooted_trees(std::size_t n_max) {
  if (n_max < 1) throw PreconditionError("rooted_trees: N must be >= 1");
  // s_k = sum_{d|k} d r_d, filled by a sieve as each r_d becomes known.
  std::vector<BigInt> s(n_max + 1), r(n_max + 1);
  series::online_convolve(s, r, n_max, [&](std::size_t m, BigInt& acc) {
    if (m == 0) return;
    if (m == 1) {
      r[1] = 1;
    } else {
      mpz_divexact_ui(r[m].get_mpz_t(), acc.get_mpz_t(), m - 1);
    }
    BigInt contribution = r[m] * static_cast<unsigned long>(m);
    for (std::size_t q = m; q <= n_max; q += m) s[q] += contribution;
  });
  return IntegerSequence(1, std::vector<BigInt>(r.begin() + 1, r.end()));
}

IntegerSequence free_trees(const IntegerSequence& rooted) {
  if (rooted.empty() || rooted.offset() != 1) throw PreconditionError("free_trees: rooted sequence must start at 1");
  const std::size_t n_max = rooted.last_index();
  std::vector<BigInt> r(n_max + 1);
  for (std::size_t n = 1; n <= n_max; ++n) r[n] = rooted[n];
  auto square = series::multiply(r, r, n_max + 1);
  std::vector<BigInt> t(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    BigInt pairs = square[n];
    if (n % 2 == 0) pairs -= r[n / 2];
    mpz_divexact_ui(pairs.get_mpz_t(), pairs.get_mpz_t(), 2);
    t[n - 1] = r[n] - pairs;
  }
  return IntegerSequence(1, std::move(t));
}

IntegerSequence free_trees(std::size_t n_max) { return free_trees(rooted_trees(n_max)); }

IntegerSequence forests_from_trees(const IntegerSequence& trees) {
  return multiset_transform(WeightSequence::exact(trees), trees.last_index());
}

IntegerSequence forests(std::size_t n_max) {
  if (n_max == 0) return IntegerSequence(0, {BigInt(1)});
  return forests_from_trees(free_trees(n_max));
}

IntegerSequence partition_numbers(std::size_t n_max) {
  std::vector<BigInt> p(n_max + 1);
  p[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    BigInt sum = 0;
    for (std::size_t k = 1;; ++k) {
      std::size_t g1 = k * (3 * k - 1) / 2;
      if (g1 > n) break;
      std::size_t g2 = k * (3 * k + 1) / 2;
      BigInt term = p[n - g1];
      if (g2 <= n) term += p[n - g2];
      if (k % 2 == 1)
        sum += term;
      else
        sum -= term;
    }
    p[n] = std::move(sum);
  }
  return IntegerSequence(0, std::move(p));
}

TreeTables TreeTables::compute(std::size_t k_max) {
  TreeTables tables;
  tables.rooted = rooted_trees(k_max);
  tables.trees = free_trees(tables.rooted);
  tables.forest = forests_from_trees(tables.trees);
  return tables;
}

}  // namespace otter
