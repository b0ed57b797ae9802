#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "otter/bigint.hpp"
#include "otter/real.hpp"

namespace otter {

/// Nonnegative component weights w_1, w_2, ... (index 1 first), either all
/// exact integers or all real enclosures.
class WeightSequence {
 public:
  WeightSequence() = default;
  static WeightSequence exact(std::vector<BigInt> w);
  static WeightSequence exact(const IntegerSequence& seq);  // offset must be 1
  static WeightSequence real(std::vector<RealValue> w);

  bool is_exact() const { return std::holds_alternative<std::vector<BigInt>>(values_); }
  std::size_t size() const;
  /// w_k for 1 <= k <= size(); throws when the weights are real.
  const BigInt& exact_at(std::size_t k) const;
  const std::vector<BigInt>& exact_values() const;
  /// w_k as an enclosure at the current precision.
  RealValue real_at(std::size_t k) const;

 private:
  std::variant<std::vector<BigInt>, std::vector<RealValue>> values_;
};

/// Declared bound on the normalized terms u_k = w_k a^k beyond the stored range.
///
///   Polynomial: u_k <= constant * k^(-exponent), exponent > 1
///   Geometric:  u_k <= constant * ratio^k,      ratio < 1
///   Finite:     u_k = 0 beyond the stored range
struct Envelope {
  enum class Kind { Polynomial, Geometric, Finite };
  Kind kind = Kind::Finite;
  Float constant = 0;
  Float exponent = 0;
  Float ratio = 0;

  static Envelope polynomial(Float constant, Float exponent);
  static Envelope geometric(Float constant, Float ratio);
  static Envelope finite() { return {}; }
  /// constant = max_{k_min <= k <= K} u_k k^s over the stored terms (upper ends).
  static Envelope fit_polynomial(const std::vector<RealValue>& u, std::size_t k_min, const Float& exponent);

  /// Upper bound on sum_{k > K} u_k.
  Float tail_sum(std::size_t k) const;
  /// Upper bound on a single u_k (k beyond the stored range).
  Float term_bound(std::size_t k) const;
};

/// Atoms nu_1..nu_K >= 0 of a measure on the positive integers together with its total mass.
struct LevyMeasure {
  std::vector<RealValue> atoms;  // atoms[k-1] = nu_k
  RealValue total;               // lambda, enclosing the infinite sum
  Float tail_bound = 0;          // sum_{k > K} nu_k <= tail_bound
  RealValue total_rearranged;    // lambda by the order-interchanged route (when available)

  const RealValue& atom(std::size_t k) const { return atoms.at(k - 1); }
  std::size_t size() const { return atoms.size(); }
};

/// c_n = (1/n) sum_{d|n} d w_d for n = 1..N, exact.
std::vector<Rational> divisor_log_coefficients(const WeightSequence& w, std::size_t n_max);

/// B_n = sum_{d|n} d w_d for n = 0..N (B_0 = 0), by a sieve over multiples.
std::vector<BigInt> divisor_sums(const std::vector<BigInt>& w, std::size_t n_max);

/// F_0..F_N, coefficients of exp(sum_k w(x^k)/k) = prod_k (1 - x^k)^(-w_k).
IntegerSequence multiset_transform(const WeightSequence& w, std::size_t n_max);

/// The unique nonnegative integer weights w with multiset_transform(w) = F up to N.
/// Throws PreconditionError when F is not such a transform.
WeightSequence inverse_multiset_transform(const IntegerSequence& F, std::size_t n_max);

/// tau_n = (a^n / n) sum_{d|n} d w_d for n <= K, with lambda computed both as the
/// sum of the atoms and as -sum_k w_k log(1 - a^k). The two routes must agree
/// within their combined radii plus the envelope tails, else ConsistencyError.
LevyMeasure levy_measure(const WeightSequence& w, const RealValue& a, std::size_t k_max, const Envelope& envelope);

/// Z(S_k; x_1..x_k) by k Z_k = sum_{i=1}^k x_i Z_{k-i}, Z_0 = 1.
RealValue cycle_index_eval(const std::vector<RealValue>& x);

/// Z_0..Z_k for the same arguments.
std::vector<RealValue> cycle_index_sequence(const std::vector<RealValue>& x);

}  // namespace otter
