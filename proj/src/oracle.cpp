#include "otter/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "otter/error.hpp"

namespace otter::oracle {

namespace {

struct Tree {
  std::vector<std::vector<int>> adjacency;  // 0-based vertices
};

Tree tree_from_levels(const std::vector<int>& levels) {
  const int n = static_cast<int>(levels.size());
  Tree t;
  t.adjacency.resize(n);
  for (int i = 1; i < n; ++i) {
    int parent = i - 1;
    while (levels[parent] != levels[i] - 1) --parent;
    t.adjacency[i].push_back(parent);
    t.adjacency[parent].push_back(i);
  }
  return t;
}

std::string encode(const Tree& t, int v, int parent) {
  std::vector<std::string> children;
  for (int w : t.adjacency[v])
    if (w != parent) children.push_back(encode(t, w, v));
  std::sort(children.begin(), children.end());
  std::string out = "(";
  for (const auto& c : children) out += c;
  out += ")";
  return out;
}

std::vector<int> centroids(const Tree& t) {
  const int n = static_cast<int>(t.adjacency.size());
  std::vector<int> size(n, 1), order, parent(n, -1);
  order.reserve(n);
  std::vector<int> stack{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int w : t.adjacency[v])
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = v;
        stack.push_back(w);
      }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (parent[*it] >= 0) size[parent[*it]] += size[*it];
  std::vector<int> result;
  for (int v = 0; v < n; ++v) {
    int largest = n - size[v];
    for (int w : t.adjacency[v])
      if (w != parent[v]) largest = std::max(largest, size[w]);
    if (2 * largest <= n) result.push_back(v);
  }
  return result;
}

}  // namespace

std::vector<std::vector<int>> rooted_level_sequences(std::size_t n) {
  std::vector<std::vector<int>> out;
  if (n == 0) return out;
  // Beyer-Hedetniemi successor rule on 1-based level sequences.
  std::vector<int> level(n + 1);
  for (std::size_t i = 1; i <= n; ++i) level[i] = static_cast<int>(i);
  while (true) {
    out.emplace_back(level.begin() + 1, level.end());
    std::size_t p = n;
    while (p >= 1 && level[p] <= 2) --p;
    if (p == 0) break;
    std::size_t q = p - 1;
    while (level[q] != level[p] - 1) --q;
    for (std::size_t i = p; i <= n; ++i) level[i] = level[i - p + q];
  }
  return out;
}

std::vector<std::string> free_tree_codes(std::size_t n) {
  std::set<std::string> codes;
  for (const auto& levels : rooted_level_sequences(n)) {
    Tree t = tree_from_levels(levels);
    std::string best;
    for (int c : centroids(t)) {
      std::string code = encode(t, c, -1);
      if (best.empty() || code < best) best = std::move(code);
    }
    codes.insert(std::move(best));
  }
  return {codes.begin(), codes.end()};
}

BigInt brute_force_count(TreeKind kind, std::size_t n) {
  if (n > kMaxOracleSize)
    throw PreconditionError("brute_force_count: n = " + std::to_string(n) + " exceeds the oracle cap of 12");
  switch (kind) {
    case TreeKind::Rooted:
      return BigInt(static_cast<unsigned long>(rooted_level_sequences(n).size()));
    case TreeKind::Free:
      return BigInt(static_cast<unsigned long>(free_tree_codes(n).size()));
    case TreeKind::Forest:
      break;
  }
  // A forest is a non-increasing list of (size, type) pairs; enumerate them all.
  std::vector<std::size_t> types(n + 1, 0);
  for (std::size_t m = 1; m <= n; ++m) types[m] = free_tree_codes(m).size();
  unsigned long count = 0;
  std::function<void(std::size_t, std::size_t, std::size_t)> extend = [&](std::size_t remaining, std::size_t max_size,
                                                                          std::size_t max_type) {
    if (remaining == 0) {
      ++count;
      return;
    }
    for (std::size_t m = std::min(remaining, max_size); m >= 1; --m) {
      std::size_t top = (m == max_size) ? max_type : types[m] - 1;
      for (std::size_t i = 0; i <= top && i < types[m]; ++i) extend(remaining - m, m, i);
    }
  };
  extend(n, n, n == 0 ? 0 : types[n] - 1);
  return BigInt(count);
}

TreeKind parse_kind(const std::string& name) {
  if (name == "rooted") return TreeKind::Rooted;
  if (name == "free") return TreeKind::Free;
  if (name == "forest") return TreeKind::Forest;
  throw PreconditionError("unknown tree kind '" + name + "' (expected rooted|free|forest)");
}

}  // namespace otter::oracle
