#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "otter/bigint.hpp"

namespace otter::oracle {

enum class TreeKind { Rooted, Free, Forest };

/// Hard cap for exhaustive enumeration.
inline constexpr std::size_t kMaxOracleSize = 12;

/// Counts by explicit enumeration of canonical representatives:
/// level sequences (rooted), centroid-rooted canonical strings (free), and
/// sorted multisets of canonical free trees (forests). n > 12 is rejected.
BigInt brute_force_count(TreeKind kind, std::size_t n);

/// All canonical level sequences of rooted trees on n vertices (root at level 1).
std::vector<std::vector<int>> rooted_level_sequences(std::size_t n);

/// Canonical strings of all free trees on n vertices, sorted.
std::vector<std::string> free_tree_codes(std::size_t n);

TreeKind parse_kind(const std::string& name);

}  // namespace otter::oracle
