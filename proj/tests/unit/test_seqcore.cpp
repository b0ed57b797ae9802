#include <doctest.h>

#include <vector>

#include "otter/oracle.hpp"
#include "otter/sequences.hpp"

using namespace otter;

namespace {

std::vector<BigInt> as_vector(const IntegerSequence& s) { return s.values(); }

std::vector<BigInt> ints(std::initializer_list<long> v) {
  std::vector<BigInt> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

// Direct O(N^2) recurrence, independent of the online convolution.
std::vector<BigInt> rooted_quadratic(std::size_t n_max) {
  std::vector<BigInt> r(n_max + 1), s(n_max + 1);  // s_k = sum_{d|k} d r_d
  r[1] = 1;
  for (std::size_t n = 1; n < n_max; ++n) {
    for (std::size_t d = 1; d <= n; ++d)
      if (n % d == 0) s[n] += BigInt(static_cast<unsigned long>(d)) * r[d];
    BigInt acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += s[k] * r[n + 1 - k];
    r[n + 1] = acc / static_cast<unsigned long>(n);
  }
  return r;
}

// Coin-change count of partitions.
std::vector<BigInt> partitions_dp(std::size_t n_max) {
  std::vector<BigInt> p(n_max + 1);
  p[0] = 1;
  for (std::size_t part = 1; part <= n_max; ++part)
    for (std::size_t n = part; n <= n_max; ++n) p[n] += p[n - part];
  return p;
}

}  // namespace

TEST_CASE("rooted trees: base case and small values") {
  CHECK(as_vector(rooted_trees(1)) == ints({1}));
  CHECK(as_vector(rooted_trees(10)) == ints({1, 1, 2, 4, 9, 20, 48, 115, 286, 719}));
  CHECK(rooted_trees(4)[4] == 4);
  CHECK(rooted_trees(10).offset() == 1);
}

TEST_CASE("free trees: base case and small values") {
  CHECK(as_vector(free_trees(1)) == ints({1}));
  CHECK(as_vector(free_trees(10)) == ints({1, 1, 1, 2, 3, 6, 11, 23, 47, 106}));
  CHECK(free_trees(7)[7] == 11);
}

TEST_CASE("forests start at f_0 = 1") {
  auto f = forests(10);
  CHECK(f.offset() == 0);
  CHECK(as_vector(f) == ints({1, 1, 2, 3, 6, 10, 20, 37, 76, 153, 329}));
  CHECK(as_vector(forests(0)) == ints({1}));
}

TEST_CASE("partition numbers") {
  CHECK(partition_numbers(0)[0] == 1);
  CHECK(as_vector(partition_numbers(6)) == ints({1, 1, 2, 3, 5, 7, 11}));
  CHECK(as_vector(partition_numbers(400)) == partitions_dp(400));
  CHECK(partition_numbers(100)[100] == BigInt("190569292"));
}

TEST_CASE("brute-force oracle agrees with the recurrences for n <= 10") {
  CHECK(oracle::brute_force_count(oracle::TreeKind::Rooted, 3) == 2);
  CHECK(oracle::brute_force_count(oracle::TreeKind::Free, 4) == 2);
  CHECK(oracle::brute_force_count(oracle::TreeKind::Forest, 3) == 3);
  auto r = rooted_trees(10);
  auto t = free_trees(10);
  auto f = forests(10);
  for (std::size_t n = 1; n <= 10; ++n) {
    CAPTURE(n);
    CHECK(oracle::brute_force_count(oracle::TreeKind::Rooted, n) == r[n]);
    CHECK(oracle::brute_force_count(oracle::TreeKind::Free, n) == t[n]);
    CHECK(oracle::brute_force_count(oracle::TreeKind::Forest, n) == f[n]);
  }
  CHECK(oracle::brute_force_count(oracle::TreeKind::Forest, 0) == 1);
  CHECK_THROWS_AS(oracle::brute_force_count(oracle::TreeKind::Free, 13), PreconditionError);
}

TEST_CASE("online convolution matches the quadratic recurrence") {
  auto fast = rooted_trees(300);
  auto slow = rooted_quadratic(300);
  for (std::size_t n = 1; n <= 300; ++n) REQUIRE(fast[n] == slow[n]);
}

TEST_CASE("large values against published counts") {
  // r_30 and t_30 (A000081, A000055).
  CHECK(rooted_trees(30)[30] == BigInt("354426847597"));
  CHECK(free_trees(30)[30] == BigInt("14830871802"));
}

TEST_CASE("tree tables are consistent prefixes") {
  auto tab = TreeTables::compute(200);
  CHECK(tab.size() == 200);
  CHECK(tab.rooted == rooted_trees(200));
  CHECK(tab.trees == free_trees(200));
  CHECK(tab.forest == forests(200));
  CHECK(tab.trees.prefix(10) == free_trees(10));
}

TEST_CASE("context validation") {
  CHECK_THROWS_AS(PrecisionContext::make(0, 30, 100), PreconditionError);
  CHECK_THROWS_AS(PrecisionContext::make(10, 14, 100), PreconditionError);
  CHECK_THROWS_AS(PrecisionContext::make(200, 30, 100), PreconditionError);
  CHECK(rooted_trees(PrecisionContext::make(5, 30, 100)).size() == 5);
}
