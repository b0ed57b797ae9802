#include "otter/constants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/lambert_w.hpp>

#include "otter/error.hpp"

namespace otter {

namespace {

Float pow10(int e) { return pow(Float(10), Float(e)); }

// Smallest k0 with (4x)^(k0+1) / (4(1-4x)) <= eps, for 0 < 4x < 1.
std::size_t crude_rooted_cutoff(double x, double log_eps) {
  double q = 4 * x;
  double need = (log_eps + std::log(4 * (1 - q))) / std::log(q) - 1;
  return need < 1 ? 1 : static_cast<std::size_t>(std::ceil(need));
}

struct AlphaEquation {
  std::vector<RealValue> r;  // r[k] = r_k, k = 1..k_cap
  Float eps;
  double log_eps;
  Float a_cap;               // every point evaluated is below this
  std::size_t i_max;         // inner series i = 2..i_max
  std::vector<std::size_t> cutoffs;  // per i

  // h(a) = 1 + log a + sum_{i>=2} r(a^i)/i, every truncation certified.
  RealValue inner_sum(const Float& a) const {
    RealValue av(a, Float(0));
    RealValue total(0L);
    RealValue x = av;
    for (std::size_t i = 2; i <= i_max; ++i) {
      x *= av;
      std::size_t k0 = cutoffs[i];
      RealValue acc(0L);
      for (std::size_t k = k0; k >= 1; --k) acc = (acc + r[k]) * x;  // Horner
      Float xu = x.upper();
      acc.add_tail(pow(4 * xu, Float(k0 + 1)) / (4 * (1 - 4 * xu)));
      total += acc / static_cast<long>(i);
    }
    Float ac = pow(a_cap, Float(i_max + 1));
    total.add_tail(ac / ((1 - a_cap) * (1 - 4 * ac) * Float(i_max + 1)));
    return total;
  }

  RealValue h(const Float& a) const { return RealValue(1L) + log(RealValue(a, Float(0))) + inner_sum(a); }
};

AlphaEquation make_equation(const TreeTables& tables, unsigned digits, const Float& a_cap) {
  AlphaEquation eq;
  eq.eps = pow10(-static_cast<int>(digits) - 10);
  eq.log_eps = -(static_cast<double>(digits) + 10) * std::log(10.0);
  eq.a_cap = a_cap;
  double ac = a_cap.convert_to<double>();
  // Smallest I with the i > I remainder below eps.
  std::size_t i_max = 2;
  while (true) {
    double t = std::pow(ac, static_cast<double>(i_max + 1));
    double bound = t / ((1 - ac) * (1 - 4 * t) * static_cast<double>(i_max + 1));
    if (std::log(bound) < eq.log_eps) break;
    ++i_max;
  }
  eq.i_max = i_max;
  eq.cutoffs.assign(i_max + 1, 0);
  double per_term = eq.log_eps - std::log(static_cast<double>(i_max));
  std::size_t needed = 0;
  for (std::size_t i = 2; i <= i_max; ++i) {
    eq.cutoffs[i] = crude_rooted_cutoff(std::pow(ac, static_cast<double>(i)), per_term);
    needed = std::max(needed, eq.cutoffs[i]);
  }
  if (needed > tables.rooted.size())
    throw CertificationError("otter_alpha: truncation K = " + std::to_string(tables.rooted.size()) +
                             " is below the " + std::to_string(needed) + " terms needed to certify " +
                             std::to_string(digits) + " digits");
  eq.r.resize(needed + 1);
  for (std::size_t k = 1; k <= needed; ++k) eq.r[k] = RealValue::from_integer(tables.rooted[k]);
  return eq;
}

std::vector<RealValue> normalized(const IntegerSequence& seq, const std::vector<RealValue>& powers,
                                  std::size_t first, std::size_t last) {
  std::vector<RealValue> out;
  out.reserve(last - first + 1);
  for (std::size_t k = first; k <= last; ++k) out.push_back(RealValue::from_integer(seq[k]) * powers[k]);
  return out;
}

bool same(const RealValue& a, const RealValue& b) { return a.value() == b.value() && a.radius() == b.radius(); }

// Neville extrapolation of samples y_j taken at h_j = 1/n_j to h = 0; returns the diagonal.
std::vector<Float> neville_diagonal(const std::vector<Float>& h, const std::vector<Float>& y) {
  std::vector<Float> p = y, diag{y[0]};
  for (std::size_t k = 1; k < y.size(); ++k) {
    for (std::size_t j = y.size() - 1; j >= k; --j) p[j] = (h[j - k] * p[j] - h[j] * p[j - 1]) / (h[j - k] - h[j]);
    diag.push_back(p[k]);
  }
  return diag;
}

std::vector<std::vector<unsigned long>> eulerian_numbers(std::size_t n_max) {
  std::vector<std::vector<unsigned long>> a(n_max + 1);
  a[0] = {1};
  for (std::size_t n = 1; n <= n_max; ++n) {
    a[n].assign(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      unsigned long v = 0;
      if (j < a[n - 1].size()) v += (j + 1) * a[n - 1][j];
      if (j >= 1 && j - 1 < a[n - 1].size()) v += (n - j) * a[n - 1][j - 1];
      a[n][j] = v;
    }
  }
  return a;
}

}  // namespace

unsigned digits_of(const Float& x) { return x.precision(); }

RealValue otter_alpha(const TreeTables& tables, unsigned digits) {
  if (digits < 1) throw PreconditionError("otter_alpha: digits must be >= 1");
  ScopedPrecision guard(working_digits(digits));
  Float lo("0.30"), hi("0.36");
  AlphaEquation eq = make_equation(tables, digits, hi);
  if (!(eq.h(lo).upper() < 0) || !(eq.h(hi).lower() > 0))
    throw CertificationError("otter_alpha: initial bracket [0.30, 0.36] could not be certified");
  Float target = pow10(-static_cast<int>(digits) - 8);
  while (hi - lo > target) {
    Float mid = (lo + hi) / 2;
    RealValue v = eq.h(mid);
    if (v.lower() > 0)
      hi = mid;
    else if (v.upper() < 0)
      lo = mid;
    else
      break;
  }
  if (hi - lo > pow10(-static_cast<int>(digits) - 2))
    throw CertificationError("otter_alpha: bisection stalled at width " + Float(hi - lo).str(3));
  return RealValue::from_bounds(lo, hi);
}

AlphaReport alpha_report(const TreeTables& tables, const RealValue& alpha) {
  ScopedPrecision guard(digits_of(alpha.value()));
  AlphaReport rep;
  rep.alpha = alpha;
  const std::size_t k_max = tables.rooted.size();

  unsigned out_digits = digits_of(alpha.value()) > 12 ? digits_of(alpha.value()) - 12 : 1;
  AlphaEquation eq = make_equation(tables, out_digits, alpha.upper());
  Float a = alpha.lower();
  Float s = eq.inner_sum(a).value();
  Float e = exp(s);
  Float c = a * e;
  if (c * exp(Float(1)) >= 1) {
    rep.residual_at_lower = Float(1);
  } else {
    Float r1 = -boost::math::lambert_w0(Float(-c));
    rep.residual_at_lower = abs(a - exp(-r1) / e);
  }

  std::vector<RealValue> powers(k_max + 1);
  powers[0] = RealValue(1L);
  for (std::size_t k = 1; k <= k_max; ++k) powers[k] = powers[k - 1] * alpha;
  auto u = normalized(tables.rooted, powers, 1, k_max);
  Envelope env = fit_validated_envelope(u, 50, Float("1.5"));

  RealValue log_partial(0L), partial(0L);
  for (std::size_t k = 1; k <= k_max; ++k) {
    log_partial += u[k - 1] * (log1p(-powers[k]) / powers[k]);
    partial += u[k - 1];
  }
  rep.truncated_product = exp(log_partial);
  rep.product_log_tail = env.tail_sum(k_max) / (1 - pow(alpha.upper(), Float(k_max + 1)));
  rep.rooted_partial = partial;
  rep.rooted_tail = env.tail_sum(k_max);

  Float prod_lo = rep.truncated_product.lower() * exp(-rep.product_log_tail);
  Float prod_hi = rep.truncated_product.upper();
  rep.product_brackets_alpha = alpha.upper() >= prod_lo && alpha.lower() <= prod_hi;
  rep.rooted_series_consistent = partial.lower() <= 1 && partial.upper() + rep.rooted_tail >= 1;
  return rep;
}

Envelope fit_validated_envelope(const std::vector<RealValue>& u, std::size_t k_min, const Float& exponent) {
  const std::size_t k_max = u.size();
  if (k_max < 2 * k_min)
    throw CertificationError("envelope: need at least " + std::to_string(2 * k_min) + " terms, have " +
                             std::to_string(k_max));
  Float prev = u[k_max / 2 - 1].value() * pow(Float(k_max / 2), exponent);
  for (std::size_t k = k_max / 2 + 1; k <= k_max; ++k) {
    Float cur = u[k - 1].value() * pow(Float(k), exponent);
    if (cur > prev + u[k - 1].radius() * pow(Float(k), exponent) * 2)
      throw CertificationError("envelope: u_k k^s increases at k = " + std::to_string(k) +
                               ", the fitted constant would not bound the tail");
    prev = cur;
  }
  return Envelope::fit_polynomial(u, k_min, exponent);
}

OtterSeries::OtterSeries(const TreeTables& tables, RealValue alpha) : tables_(&tables), alpha_(std::move(alpha)) {
  digits_ = digits_of(alpha_.value());
  ScopedPrecision guard(digits_);
  if (!alpha_.is_positive() || alpha_.upper() >= 1) throw PreconditionError("OtterSeries: alpha must lie in (0,1)");
  eps_ = pow10(-static_cast<int>(digits_));
  const std::size_t k_max = tables.size();
  if (k_max < 100) throw PreconditionError("OtterSeries: truncation K must be >= 100");
  powers_.resize(k_max + 1);
  powers_[0] = RealValue(1L);
  for (std::size_t k = 1; k <= k_max; ++k) powers_[k] = powers_[k - 1] * alpha_;
  tree_terms_ = normalized(tables.trees, powers_, 1, k_max);
  rooted_terms_ = normalized(tables.rooted, powers_, 1, k_max);
  forest_terms_ = normalized(tables.forest, powers_, 0, k_max);
  tree_env_ = fit_validated_envelope(tree_terms_, 50, Float("2.5"));
  rooted_env_ = fit_validated_envelope(rooted_terms_, 50, Float("1.5"));
  std::vector<RealValue> f1(forest_terms_.begin() + 1, forest_terms_.end());
  forest_env_ = fit_validated_envelope(f1, 50, Float("2.5"));
  tree_umax_ = 0;
  for (const auto& u : tree_terms_) tree_umax_ = std::max(tree_umax_, Float(u.upper()));
}

RealValue OtterSeries::tree_gf(const RealValue& x) const {
  ScopedPrecision guard(digits_);
  const std::size_t k_max = truncation();
  if (same(x, alpha_)) {
    RealValue sum(0L);
    for (const auto& u : tree_terms_) sum += u;
    sum.add_tail(tree_env_.tail_sum(k_max));
    return sum;
  }
  if (!x.is_positive()) throw PreconditionError("tree_gf: x must be positive");
  if (!(x.upper() < alpha_.lower()))
    throw PreconditionError("tree_gf: x = " + x.to_string(8) + " is not inside the disc of convergence |x| < alpha");
  RealValue y = x / alpha_;
  Float yu = y.upper();
  RealValue sum(0L), yk(1L);
  std::size_t k = 1;
  for (; k <= k_max; ++k) {
    yk *= y;
    sum += tree_terms_[k - 1] * yk;
    if (tree_umax_ * pow(yu, Float(k + 1)) / (1 - yu) < eps_) break;
  }
  std::size_t stop = std::min(k, k_max);
  Float tail = tree_umax_ * pow(yu, Float(stop + 1)) / (1 - yu);
  if (stop == k_max) tail = std::min(tail, Float(tree_env_.tail_sum(k_max)));
  sum.add_tail(tail);
  return sum;
}

RealValue OtterSeries::tree_gf_power(std::size_t i) const {
  if (i == 0) throw PreconditionError("tree_gf_power: i must be >= 1");
  if (i == 1) return tree_gf(alpha_);
  ScopedPrecision guard(digits_);
  return tree_gf(i < powers_.size() ? powers_[i] : pow(alpha_, static_cast<unsigned long>(i)));
}

Float OtterSeries::tree_gf_power_bound(std::size_t i) const {
  ScopedPrecision guard(digits_);
  Float x = pow(alpha_.upper(), Float(i));
  return x / (1 - 4 * x);
}

RealValue OtterSeries::forest_gf_at_alpha() const {
  ScopedPrecision guard(digits_);
  RealValue sum(0L);
  for (std::size_t n = 1; n < forest_terms_.size(); ++n) sum += forest_terms_[n];
  sum.add_tail(forest_env_.tail_sum(truncation()));
  return sum;
}

BetaEstimate otter_beta(const OtterSeries& series, std::size_t n_max) {
  if (n_max < 200) throw PreconditionError("otter_beta: extrapolation depth N must be >= 200");
  if (n_max > series.truncation())
    throw PreconditionError("otter_beta: N = " + std::to_string(n_max) + " exceeds the truncation K");
  ScopedPrecision guard(series.digits());
  const auto& tables = series.tables();
  constexpr int kLevels = 5;
  std::vector<Float> h, u, ratio;
  for (int j = kLevels - 1; j >= 0; --j) {
    std::size_t n = n_max >> j;
    Float nf(n);
    h.push_back(1 / nf);
    u.push_back(series.tree_terms()[n - 1].value() * pow(nf, Float("2.5")));
    ratio.push_back(nf * to_float(tables.trees[n]) / to_float(tables.rooted[n]));
  }
  auto diag = neville_diagonal(h, u);
  auto diag_ratio = neville_diagonal(h, ratio);
  // Successive orders must contract for the extrapolation to be trusted.
  for (std::size_t k = 2; k < diag.size(); ++k) {
    if (abs(diag[k] - diag[k - 1]) > abs(diag[k - 1] - diag[k - 2]))
      throw CertificationError("otter_beta: extrapolation is not settling (order " + std::to_string(k) + ")");
  }
  Float a = diag.back();
  Float spread = abs(diag.back() - diag[diag.size() - 2]);
  Float L = diag_ratio.back();
  Float b = sqrt(L * L * L / (2 * boost::math::constants::pi<Float>()));
  Float raw = u.back();
  Float radius = std::max({Float(abs(a - b)), Float(abs(a - raw)), spread});

  BetaEstimate est;
  est.beta = RealValue(a, radius);
  est.from_ratio = b.convert_to<double>();
  est.ratio_limit = L.convert_to<double>();
  est.last_raw = raw.convert_to<double>();
  est.spread = spread.convert_to<double>();
  return est;
}

RhoLambda rho_and_lambda(const OtterSeries& series) {
  ScopedPrecision guard(series.digits());
  const std::size_t k_max = series.truncation();
  auto lm = levy_measure(WeightSequence::exact(series.tables().trees.prefix(k_max)), series.alpha(), k_max,
                         series.tree_envelope());
  RhoLambda out;
  out.lambda = lm.total_rearranged;
  out.lambda_atoms = lm.total;
  out.rho = exp(-out.lambda);

  const auto& p = series.alpha_powers();
  RealValue log_partial(0L);
  for (std::size_t k = 1; k <= k_max; ++k) log_partial += series.tree_terms()[k - 1] * (log1p(-p[k]) / p[k]);
  RealValue partial = exp(log_partial);
  Float tail = series.tree_envelope().tail_sum(k_max) / (1 - p[k_max].upper() * series.alpha().upper());
  out.rho_product = RealValue::from_bounds(partial.lower() * exp(-tail), partial.upper());
  if (!out.rho.overlaps(out.rho_product))
    throw ConsistencyError("rho_and_lambda: exp(-lambda) = " + out.rho.to_string() +
                           " disagrees with the truncated product " + out.rho_product.to_string());
  return out;
}

XiConstant xi_constant(const OtterSeries& series) {
  ScopedPrecision guard(series.digits());
  const std::size_t k_max = series.truncation();
  const auto& p = series.alpha_powers();
  const auto& u = series.tree_terms();
  const Float& eps = series.epsilon();
  Float au = series.alpha().upper();

  // k = 1 needs the whole of t(alpha); for k >= 2 the bracket is sum_{n>=2} t_n alpha^(k(n-1)).
  RealValue xi = series.tree_gf(series.alpha()) / series.alpha() - RealValue(1L);
  std::size_t k = 2;
  for (;; ++k) {
    Float ak = pow(au, Float(k + 1));
    Float rest = 4 * ak / ((1 - 4 * ak) * (1 - au) * Float(k + 1));
    const RealValue& y = p[k - 1];
    Float yu = y.upper();
    RealValue s(0L), yn = y;
    std::size_t n = 2;
    for (; n <= k_max; ++n) {
      yn *= y;
      s += u[n - 1] * yn;
      if (pow(yu, Float(n + 1)) / (1 - yu) < eps) break;
    }
    s.add_tail(pow(yu, Float(std::min(n, k_max) + 1)) / (1 - yu));
    xi += s / p[k] / static_cast<long>(k);
    if (rest < eps || k + 1 >= k_max) {
      xi.add_tail(rest);
      break;
    }
  }

  RealValue log_prod(0L);
  for (std::size_t j = 2; j <= k_max; ++j) log_prod += u[j - 1] * (-log1p(-p[j - 1]) / p[j]);
  log_prod.add_tail(series.tree_envelope().tail_sum(k_max) / (series.alpha().lower() * (1 - p[k_max].upper())));

  XiConstant out;
  out.xi = xi;
  out.e_xi = exp(xi);
  out.e_xi_product = exp(log_prod);
  if (!out.e_xi.overlaps(out.e_xi_product))
    throw ConsistencyError("xi_constant: exp(series) = " + out.e_xi.to_string() + " disagrees with the product " +
                           out.e_xi_product.to_string());
  return out;
}

CumulantVector limit_cumulants(const OtterSeries& series, std::size_t max_order) {
  if (max_order < 2) throw PreconditionError("limit_cumulants: M must be >= 2");
  if (max_order > 20) throw PreconditionError("limit_cumulants: M must be <= 20");
  ScopedPrecision guard(series.digits());
  const std::size_t k_max = series.truncation();
  const auto& p = series.alpha_powers();
  const auto& u = series.tree_terms();
  auto euler = eulerian_numbers(max_order - 1);

  auto g = [&](std::size_t m, const RealValue& x) {
    const auto& coeffs = euler[m - 1];
    RealValue poly(0L);
    for (std::size_t j = coeffs.size(); j-- > 0;) poly = poly * x + RealValue(static_cast<long>(coeffs[j]));
    return poly / pow(RealValue(1L) - x, static_cast<unsigned long>(m));
  };

  CumulantVector out;
  out.kappa.resize(max_order);
  for (std::size_t m = 1; m <= max_order; ++m) {
    RealValue sum(0L);
    for (std::size_t k = 1; k <= k_max; ++k) sum += u[k - 1] * g(m, p[k]);
    RealValue g_tail = g(m, p[k_max] * series.alpha());
    sum.add_tail(series.tree_envelope().tail_sum(k_max) * g_tail.upper());
    out.kappa[m - 1] = sum;
  }

  // Second route: kappa_m = sum_i i^(m-1) t(alpha^i).
  std::vector<RealValue> by_jump(max_order, RealValue(0L));
  const Float& eps = series.epsilon();
  Float au = series.alpha().upper();
  for (std::size_t i = 1;; ++i) {
    RealValue t = series.tree_gf_power(i);
    Float ipow = 1;
    for (std::size_t m = 1; m <= max_order; ++m) {
      by_jump[m - 1] += t * RealValue(ipow, Float(0));
      ipow *= Float(i);
    }
    if (i >= 2) {
      // Remainder over j > i: terms j^(M-1) alpha^j / (1 - 4 alpha^j), with ratio below q.
      Float ai = pow(au, Float(i + 1));
      Float q = pow(Float(i + 2) / Float(i + 1), Float(max_order - 1)) * au;
      if (q < 1) {
        Float rest = pow(Float(i + 1), Float(max_order - 1)) * ai / ((1 - 4 * ai) * (1 - q));
        if (rest < eps) {
          for (auto& b : by_jump) b.add_tail(rest);
          break;
        }
      }
    }
  }
  for (std::size_t m = 1; m <= max_order; ++m)
    if (!out.kappa[m - 1].overlaps(by_jump[m - 1]))
      throw ConsistencyError("limit_cumulants: kappa_" + std::to_string(m) + " routes disagree: " +
                             out.kappa[m - 1].to_string() + " vs " + by_jump[m - 1].to_string());

  out.mean = RealValue(1L) + out.kappa[0];
  out.variance = out.kappa[1];
  out.mean_via_gf = RealValue(1L) + by_jump[0];
  return out;
}

RealValue divisor_weighted_series(const OtterSeries& series, unsigned m, std::size_t cutoff) {
  if (m < 1) throw PreconditionError("divisor_weighted_series: m must be >= 1");
  if (cutoff > series.truncation()) throw PreconditionError("divisor_weighted_series: cutoff exceeds K");
  ScopedPrecision guard(series.digits());
  const auto& p = series.alpha_powers();
  RealValue sum(0L);
  for (std::size_t k = 1; k <= cutoff; ++k) {
    RealValue term = series.tree_terms()[k - 1] / (RealValue(1L) - p[k]);
    sum += term * RealValue(pow(Float(k), Float(m - 1)), Float(0));
  }
  return sum;
}

OtterConstants compute_constants(const TreeTables& tables, const PrecisionContext& ctx) {
  ctx.validate();
  OtterConstants c;
  c.alpha = otter_alpha(tables, ctx.digits);
  OtterSeries series(tables, c.alpha);
  c.beta = otter_beta(series, std::min<std::size_t>(series.truncation(), 2000)).beta;
  auto rl = rho_and_lambda(series);
  c.rho = rl.rho;
  c.lambda = rl.lambda;
  auto xi = xi_constant(series);
  c.xi = xi.xi;
  c.e_xi = xi.e_xi;
  auto cum = limit_cumulants(series, 2);
  c.mean = cum.mean;
  c.variance = cum.variance;
  return c;
}

}  // namespace otter
