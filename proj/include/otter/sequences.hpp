#pragma once

#include <cstddef>

#include "otter/bigint.hpp"
#include "otter/context.hpp"

namespace otter {

/// r_1..r_N, unlabeled rooted trees, from n r_{n+1} = sum_k (sum_{d|k} d r_d) r_{n+1-k}.
IntegerSequence rooted_trees(std::size_t n_max);
inline IntegerSequence rooted_trees(const PrecisionContext& ctx) { return rooted_trees(ctx.max_index); }

/// t_1..t_N, unlabeled free trees, via t(x) = r(x) - (r(x)^2 - r(x^2)) / 2.
IntegerSequence free_trees(const IntegerSequence& rooted);
IntegerSequence free_trees(std::size_t n_max);
inline IntegerSequence free_trees(const PrecisionContext& ctx) { return free_trees(ctx.max_index); }

/// f_0..f_N, unlabeled forests (f_0 = 1): the multiset transform of the free trees.
IntegerSequence forests_from_trees(const IntegerSequence& trees);
IntegerSequence forests(std::size_t n_max);
inline IntegerSequence forests(const PrecisionContext& ctx) { return forests(ctx.max_index); }

/// p(0)..p(N), integer partitions, by Euler's pentagonal-number recurrence.
IntegerSequence partition_numbers(std::size_t n_max);
inline IntegerSequence partition_numbers(const PrecisionContext& ctx) { return partition_numbers(ctx.max_index); }

/// The three tree sequences up to a common truncation, computed once and shared read-only.
struct TreeTables {
  IntegerSequence rooted;  // r_1..r_K
  IntegerSequence trees;   // t_1..t_K
  IntegerSequence forest;  // f_0..f_K

  std::size_t size() const { return trees.empty() ? 0 : trees.last_index(); }
  static TreeTables compute(std::size_t k_max);
};

}  // namespace otter
