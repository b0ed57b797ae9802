#pragma once

#include <cstddef>
#include <vector>

#include "otter/bigint.hpp"
#include "otter/constants.hpp"
#include "otter/diagnostics.hpp"
#include "otter/real.hpp"
#include "otter/transforms.hpp"

namespace otter {

/// Probability vector on {offset, offset+1, ...}. Exact finite-n laws also
/// carry their rational entries and have zero tail.
struct Pmf {
  std::size_t offset = 0;
  std::vector<RealValue> probs;
  std::vector<Rational> exact;
  Float tail_mass = 0;
  // When positive, P(X = k) <= tail_constant * tail_ratio^k for every k beyond the stored range.
  Float tail_constant = 0;
  Float tail_ratio = 0;

  bool is_exact() const { return !exact.empty(); }
  std::size_t size() const { return probs.size(); }
  std::size_t last_index() const { return offset + probs.size() - 1; }
  /// P(X = k) for a stored k, zero outside.
  RealValue at(std::size_t k) const;
  /// Sum of the stored masses widened by the tail.
  RealValue total() const;
  /// E[X^r], with the geometric tail bound included when one is declared.
  RealValue moment(unsigned r) const;
  RealValue mean() const { return moment(1); }
  RealValue variance() const;
  /// Exact E[X] and Var[X] for exact laws.
  Rational exact_mean() const;
  Rational exact_variance() const;
};

/// F(n,k) for k = 1..n: unlabeled forests on n vertices with exactly k trees.
struct ComponentCountTable {
  std::size_t n = 0;
  std::vector<BigInt> counts;  // counts[k-1] = F(n,k)
  const BigInt& at(std::size_t k) const { return counts.at(k - 1); }
  BigInt total() const;
};

/// The whole triangle F(m,k), m <= n_max, from prod_m (1 - y x^m)^(-t_m): size
/// classes are added one at a time with weight C(t_m + j - 1, j) for j trees
/// of size m.
class ComponentCounts {
 public:
  ComponentCounts(const IntegerSequence& trees, std::size_t n_max);
  std::size_t max_size() const { return rows_.size() - 1; }
  ComponentCountTable table(std::size_t n) const;
  /// Exact law of the number of trees in a uniform forest on n vertices.
  Pmf pmf(std::size_t n) const;

 private:
  std::vector<std::vector<BigInt>> rows_;  // rows_[m][k]
};

ComponentCountTable exact_component_counts(std::size_t n, const IntegerSequence& trees);
Pmf exact_component_pmf(std::size_t n, const IntegerSequence& trees);

/// Number of forests on n vertices whose trees all have fewer than `bound` vertices.
BigInt forests_with_trees_below(const IntegerSequence& trees, std::size_t n, std::size_t bound);

/// Exact probability that a uniform forest on n vertices has a tree with >= L vertices.
Rational largest_tree_at_least(const TreeTables& tables, std::size_t n, std::size_t L);

/// Exact law of the largest tree size in a uniform forest on n vertices (index = size).
std::vector<Rational> largest_tree_pmf(const TreeTables& tables, std::size_t n);

/// Law of the compound Poisson limit P on {0..M}: gamma_k = rho * zeta_k with
/// zeta_k = Z(S_k; t(alpha), ..., t(alpha^k)) and zeta_0 = 1. The tail beyond M
/// is bounded by a Chernoff estimate at exponent (1/2) log(1/alpha).
/// Throws ConsistencyError when the masses plus tail miss 1.
Pmf limit_pmf(const OtterSeries& series, std::size_t max_k, const RhoLambda& rl);
Pmf limit_pmf(const OtterSeries& series, std::size_t max_k);

struct HatPResult {
  Pmf pmf;                                // p-hat_0..p-hat_N
  RealValue p0;                           // prod_k (1 - a^k)^(t_k)
  LevyMeasure levy;                       // tau_n(a) = (a^n/n) sum_{d|n} d t_d
  std::vector<RealValue> recovered;       // atoms recovered from the pmf
  bool atoms_nonnegative = false;
  bool atoms_match = false;
};

/// p-hat_n = a^n f_n prod_k (1 - a^k)^(t_k) for 0 < a <= alpha, n = 0..N. At
/// a = alpha (the same enclosure) this is Otter's distribution rho alpha^n f_n
/// with the polynomial tail; below alpha the tail is geometric. The Levy atoms
/// are recovered from the first `check_atoms` masses by inverting
/// n p_n = sum_i i nu_i p_{n-i} and compared against tau(a).
HatPResult hat_p_family(const OtterSeries& series, const RealValue& a_hat, std::size_t n_max,
                        std::size_t check_atoms = 200);

/// TV distance between the exact law of T_n - 1 and P (truncated at M, tail
/// charged to the distance), plus E(T_n) and Var(T_n), for each n.
/// Series labels: "tv", "mean", "variance".
DiagnosticsReport convergence_report(const OtterSeries& series, const ComponentCounts& counts,
                                     const std::vector<std::size_t>& n_list, std::size_t max_k = 60);

/// sup_{k <= n} k^(3/2) P(T_n > k) for each n; series label "ui_witness".
RatioSeries uniform_integrability_witness(const ComponentCounts& counts, const std::vector<std::size_t>& n_list);

/// Series: "p_over_tau" (rho alpha^n f_n / tau_n, n = 1..N), "mu_conv_over_2mu",
/// "mu_next_over_mu" (mu = tau / lambda), "pi_conv_over_2pi", "pi_next_over_pi"
/// (pi_n = rho alpha^n f_n). Extrapolations are dyadic Aitken from N down to N/16.
DiagnosticsReport levy_ratio_diagnostics(const OtterSeries& series, std::size_t n_max);

/// Z_n = Z(S_n; nu_1, 2 nu_2, ..., n nu_n), i.e. n Z_n = sum_i i nu_i Z_{n-i},
/// and the ratio Z_n / (e^lambda nu_n) for n = 1..N (series "ratio"). The
/// envelope bounds sum_{k>N} nu_k. Rejects non-positive or non-summable weights.
DiagnosticsReport generalized_asymptotics(const WeightSequence& nu, const Envelope& envelope, std::size_t n_max);

/// The tree instance: zeta_n / (e^xi alpha^n) for n = 1..N (series "ratio").
DiagnosticsReport tree_cycle_index_asymptotics(const OtterSeries& series, std::size_t n_max);

}  // namespace otter
