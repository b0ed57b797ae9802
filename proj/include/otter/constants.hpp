#pragma once

#include <cstddef>
#include <vector>

#include "otter/context.hpp"
#include "otter/real.hpp"
#include "otter/sequences.hpp"
#include "otter/transforms.hpp"

namespace otter {

/// Decimal digits carried by a Float.
unsigned digits_of(const Float& x);

/// Otter's alpha: the root of 1 + log a + sum_{i>=2} r(a^i)/i = 0, which is the
/// infinite product a = prod_k (1 - a^k)^(r_k) after interchanging the order of
/// summation (the i = 1 inner series equals 1 at the singularity). Found by
/// bisection with certified series tails (r_k <= 4^(k-1)). The returned radius
/// is below 10^-(digits+1). Throws CertificationError when the tables are too
/// short to certify the tails at this precision.
RealValue otter_alpha(const TreeTables& tables, unsigned digits);

/// Cross-checks of alpha against the original product form.
struct AlphaReport {
  RealValue alpha;
  /// |a - prod_{k>=1}(1 - a^k)^(r_k)| at the certified lower end a of alpha's
  /// enclosure, with the i = 1 inner series r(a) recovered through Lambert W.
  Float residual_at_lower;
  /// prod_{k<=K}(1 - alpha^k)^(r_k); the infinite product lies in [partial*exp(-tail), partial].
  RealValue truncated_product;
  Float product_log_tail = 0;
  /// sum_{k<=K} r_k alpha^k; the full series equals 1, and 1 - partial is at most series_tail.
  RealValue rooted_partial;
  Float rooted_tail = 0;
  bool product_brackets_alpha = false;
  bool rooted_series_consistent = false;
};

AlphaReport alpha_report(const TreeTables& tables, const RealValue& alpha);

/// Normalized coefficients at alpha, u_k = t_k alpha^k (and rooted / forest
/// analogues) with polynomial envelopes fitted over k >= 50. Every infinite
/// series in this module is evaluated through it.
class OtterSeries {
 public:
  OtterSeries(const TreeTables& tables, RealValue alpha);

  const RealValue& alpha() const { return alpha_; }
  const TreeTables& tables() const { return *tables_; }
  std::size_t truncation() const { return tree_terms_.size(); }
  unsigned digits() const { return digits_; }

  /// u_k = t_k alpha^k for k = 1..K (index k-1).
  const std::vector<RealValue>& tree_terms() const { return tree_terms_; }
  const std::vector<RealValue>& rooted_terms() const { return rooted_terms_; }
  /// f_n alpha^n for n = 0..K.
  const std::vector<RealValue>& forest_terms() const { return forest_terms_; }
  const std::vector<RealValue>& alpha_powers() const { return powers_; }  // alpha^0..alpha^K

  const Envelope& tree_envelope() const { return tree_env_; }
  const Envelope& rooted_envelope() const { return rooted_env_; }
  const Envelope& forest_envelope() const { return forest_env_; }

  /// t(x) = sum_{n>=1} t_n x^n for 0 < x < alpha (strictly, with margin) or x = alpha.
  RealValue tree_gf(const RealValue& x) const;
  /// t(alpha^i), i >= 1.
  RealValue tree_gf_power(std::size_t i) const;
  /// f(alpha) = sum_{n>=1} f_n alpha^n.
  RealValue forest_gf_at_alpha() const;
  /// Upper bound on t(alpha^i) valid for all i >= 2 without evaluation.
  Float tree_gf_power_bound(std::size_t i) const;

  /// max_k u_k over the stored range; with the envelope it bounds every u_k.
  const Float& tree_max_term() const { return tree_umax_; }

  /// Stopping tolerance for truncated geometric series.
  const Float& epsilon() const { return eps_; }

 private:
  const TreeTables* tables_;
  RealValue alpha_;
  unsigned digits_;
  Float eps_;
  std::vector<RealValue> powers_;
  std::vector<RealValue> tree_terms_, rooted_terms_, forest_terms_;
  Envelope tree_env_, rooted_env_, forest_env_;
  Float tree_umax_;
};

/// Envelope constant B = max_{k_min<=k<=K} u_k k^s, after checking that u_k k^s
/// is non-increasing over the second half of the stored range.
Envelope fit_validated_envelope(const std::vector<RealValue>& u, std::size_t k_min, const Float& exponent);

struct BetaEstimate {
  RealValue beta;           // extrapolated alpha^n n^(5/2) t_n, heuristic radius
  double from_ratio = 0;    // sqrt(L^3 / (2 pi)), L = lim n t_n / r_n
  double ratio_limit = 0;   // L
  double last_raw = 0;      // alpha^N N^(5/2) t_N
  double spread = 0;        // change between the last two extrapolation orders
};

/// Richardson extrapolation in 1/n over n = N, N/2, ..., N/16. Needs N >= 200.
/// Throws CertificationError when successive orders do not contract.
BetaEstimate otter_beta(const OtterSeries& series, std::size_t n_max);

struct RhoLambda {
  RealValue rho;              // e^-lambda
  RealValue lambda;           // -sum_k t_k log(1 - alpha^k), order interchanged
  RealValue lambda_atoms;     // sum_n tau_n
  RealValue rho_product;      // prod_{k<=K}(1-alpha^k)^(t_k) widened by its certified tail
};

RhoLambda rho_and_lambda(const OtterSeries& series);

struct XiConstant {
  RealValue xi;          // sum_k (1/k)(t(alpha^k)/alpha^k - 1)
  RealValue e_xi;        // exp(xi)
  RealValue e_xi_product;  // prod_{k>=2}(1 - alpha^(k-1))^(-t_k)
};

XiConstant xi_constant(const OtterSeries& series);

/// Limit law of the number of trees T in a large random forest: T - 1 is
/// compound Poisson with Levy measure nu_i = t(alpha^i)/i, so its cumulants are
/// kappa_m = sum_i i^m nu_i = sum_k t_k sum_i i^(m-1) alpha^(ki).
struct CumulantVector {
  RealValue mean;                // E(T) = 1 + kappa_1
  RealValue variance;            // kappa_2
  std::vector<RealValue> kappa;  // kappa[m-1] = kappa_m, m = 1..M
  RealValue mean_via_gf;         // 1 + sum_i t(alpha^i)
};

/// Both the per-tree route and the per-jump-size route are computed; their
/// disagreement beyond radii throws ConsistencyError. Needs M >= 2.
CumulantVector limit_cumulants(const OtterSeries& series, std::size_t max_order);

/// sum_{k<=cutoff} k^(m-1) t_k / (alpha^-k - 1). For m = 1 this converges to
/// E(T) - 1. For m >= 2 it is the (m-1)-th moment sum_n n^(m-1) tau_n of the
/// measure tau rather than a cumulant of T, and it diverges for m >= 3.
RealValue divisor_weighted_series(const OtterSeries& series, unsigned m, std::size_t cutoff);

struct OtterConstants {
  RealValue alpha, beta, rho, lambda, xi, e_xi;
  RealValue mean, variance;
};

/// Everything above for one context (tables are computed to ctx.truncation).
OtterConstants compute_constants(const TreeTables& tables, const PrecisionContext& ctx);

}  // namespace otter
