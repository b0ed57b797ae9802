#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "otter/bigint.hpp"
#include "otter/sequences.hpp"

namespace otter {

/// Deterministic 64-bit generator keyed by (seed, stream). The engine and the
/// seed_seq mixing are fully specified by the C++ standard, so draws are
/// identical across platforms.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);
  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound), by rejection on whole 64-bit words.
  BigInt uniform_below(const BigInt& bound);
  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_, stream_;
};

/// Component-size multiset of a forest: (size, number of trees of that size),
/// sizes in decreasing order.
struct ForestProfile {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> parts;

  std::size_t trees() const;
  std::size_t largest() const { return parts.empty() ? 0 : parts.front().first; }
  bool operator==(const ForestProfile&) const = default;
};

/// Uniform unlabeled forests on n vertices, recorded by their size profile.
///
/// Each step draws (d, j) with probability d t_d f_{n-dj} / (n f_n), adds j
/// copies of one tree type of size d and continues with n - dj. The pairs are
/// scanned in (d ascending, j ascending) order against a single uniform big
/// integer below n f_n; small sizes use precomputed cumulative sums, larger ones
/// walk the same order on the fly, so both paths return the same draw.
class ForestSampler {
 public:
  explicit ForestSampler(const TreeTables& tables, std::size_t table_limit = 256);
  ForestProfile sample(std::size_t n, RngStream& rng) const;
  std::size_t max_size() const { return tables_->size(); }

 private:
  struct Choice {
    std::size_t d, j;
  };
  Choice choose(std::size_t n, const BigInt& u) const;
  Choice choose_walk(std::size_t n, const BigInt& u) const;

  const TreeTables* tables_;
  std::vector<std::vector<BigInt>> cumulative_;  // per n <= table_limit
  std::vector<std::vector<Choice>> choices_;
};

ForestProfile sample_profile(std::size_t n, const TreeTables& tables, RngStream& rng);

/// All profiles of forests on n vertices with their exact probabilities
/// prod_m C(t_m + c_m - 1, c_m) / f_n.
std::map<std::vector<std::pair<std::size_t, std::size_t>>, Rational> exact_profile_weights(const TreeTables& tables,
                                                                                              std::size_t n);

struct ChiSquare {
  double statistic = 0;
  std::size_t dof = 0;
  double p_value = 1;
  std::size_t cells = 0;
};

/// Pearson statistic after pooling adjacent cells (in index order) until each
/// expected count is at least 5.
ChiSquare chi_square_test(const std::vector<std::size_t>& observed, const std::vector<double>& probabilities);

struct EmpiricalReport {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> tree_counts;     // index = number of trees
  std::vector<double> tree_expected;        // exact law of T_n, same index
  ChiSquare chi;
  std::vector<std::size_t> largest_counts;  // index = largest tree size
  std::vector<double> largest_expected;
  double mean = 0, mean_se = 0;
  double variance = 0, variance_se = 0;
  double exact_mean = 0, exact_variance = 0;
  // Profile frequencies (only when n <= 12): observed vs exact, with z-scores.
  struct ProfileCell {
    std::vector<std::pair<std::size_t, std::size_t>> parts;
    std::size_t observed = 0;
    double expected = 0;
    double z = 0;
  };
  std::vector<ProfileCell> profiles;
  double max_profile_z = 0;
};

inline constexpr std::size_t kMinChiSquareSamples = 1000;

/// Draws `samples` profiles from stream (seed, 0) and compares them with the
/// exact laws. Rejects samples < 1000.
EmpiricalReport empirical_report(const TreeTables& tables, std::size_t n, std::size_t samples, std::uint64_t seed);

}  // namespace otter
