#include "otter/limitdist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "otter/error.hpp"

namespace otter {

namespace {

double to_double(const Rational& q) { return mpq_get_d(q.get_mpq_t()); }

bool same(const RealValue& a, const RealValue& b) { return a.value() == b.value() && a.radius() == b.radius(); }

// sum_{k > m} k^r q^k for 0 < q < 1.
Float power_geometric_tail(unsigned r, std::size_t m, const Float& q) {
  Float sum = 0;
  std::size_t k = m + 1;
  Float term = pow(Float(k), Float(r)) * pow(q, Float(k));
  while (true) {
    sum += term;
    Float next = pow(Float(k + 1), Float(r)) * pow(q, Float(k + 1));
    Float ratio_bound = pow(Float(k + 2) / Float(k + 1), Float(r)) * q;
    if (ratio_bound < 1 && next / (1 - ratio_bound) < sum * Float("1e-30")) {
      sum += next / (1 - ratio_bound);
      return sum;
    }
    term = next;
    ++k;
  }
}

// c_j = C(t + j - 1, j), j = 0..j_max.
std::vector<BigInt> multiset_weights(const BigInt& t, std::size_t j_max) {
  std::vector<BigInt> c(j_max + 1);
  c[0] = 1;
  for (std::size_t j = 1; j <= j_max; ++j) {
    c[j] = c[j - 1] * (t + static_cast<unsigned long>(j - 1));
    mpz_divexact_ui(c[j].get_mpz_t(), c[j].get_mpz_t(), j);
  }
  return c;
}

// In place: g <- g * (1 - x^m)^(-t), truncated at the length of g.
void add_size_class(std::vector<BigInt>& g, std::size_t m, const BigInt& t) {
  const std::size_t n = g.size() - 1;
  if (m > n || sgn(t) == 0) return;
  auto c = multiset_weights(t, n / m);
  for (std::size_t s = n; s >= m; --s)
    for (std::size_t j = 1; j * m <= s; ++j) mpz_addmul(g[s].get_mpz_t(), c[j].get_mpz_t(), g[s - j * m].get_mpz_t());
}

Pmf exact_pmf_from_counts(std::size_t offset, const std::vector<BigInt>& counts) {
  Pmf pmf;
  pmf.offset = offset;
  BigInt total = 0;
  for (const auto& c : counts) total += c;
  for (const auto& c : counts) {
    Rational q(c, total);
    q.canonicalize();
    pmf.exact.push_back(q);
    pmf.probs.push_back(RealValue::from_rational(q));
  }
  return pmf;
}

}  // namespace

RealValue Pmf::at(std::size_t k) const {
  if (k < offset || k > last_index()) return RealValue(0L);
  return probs[k - offset];
}

RealValue Pmf::total() const {
  RealValue s(0L);
  for (const auto& p : probs) s += p;
  s.add_tail(tail_mass);
  return s;
}

RealValue Pmf::moment(unsigned r) const {
  RealValue s(0L);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    Float k(offset + i);
    s += probs[i] * RealValue(pow(k, Float(r)), Float(0));
  }
  if (tail_mass > 0) {
    if (r == 0) {
      s.add_tail(tail_mass);
    } else if (tail_constant > 0 && tail_ratio > 0 && tail_ratio < 1) {
      s.add_tail(tail_constant * power_geometric_tail(r, last_index(), tail_ratio));
    } else {
      throw CertificationError("Pmf::moment: the tail has no declared decay, moments cannot be bounded");
    }
  }
  return s;
}

RealValue Pmf::variance() const {
  RealValue m1 = moment(1);
  return moment(2) - m1 * m1;
}

Rational Pmf::exact_mean() const {
  if (!is_exact()) throw PreconditionError("exact_mean: pmf is not exact");
  Rational s = 0;
  for (std::size_t i = 0; i < exact.size(); ++i) s += exact[i] * static_cast<unsigned long>(offset + i);
  return s;
}

Rational Pmf::exact_variance() const {
  if (!is_exact()) throw PreconditionError("exact_variance: pmf is not exact");
  Rational s2 = 0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    unsigned long k = offset + i;
    s2 += exact[i] * (k * k);
  }
  Rational m = exact_mean();
  return s2 - m * m;
}

BigInt ComponentCountTable::total() const {
  BigInt s = 0;
  for (const auto& c : counts) s += c;
  return s;
}

ComponentCounts::ComponentCounts(const IntegerSequence& trees, std::size_t n_max) {
  if (n_max > 0 && (trees.empty() || trees.last_index() < n_max))
    throw PreconditionError("ComponentCounts: tree counts needed up to n = " + std::to_string(n_max));
  rows_.resize(n_max + 1);
  for (std::size_t s = 0; s <= n_max; ++s) rows_[s].assign(s + 1, BigInt(0));
  rows_[0][0] = 1;
  for (std::size_t m = 1; m <= n_max; ++m) {
    auto c = multiset_weights(trees[m], n_max / m);
    // Descending s keeps every source row at its pre-class value.
    for (std::size_t s = n_max; s >= m; --s) {
      auto& row = rows_[s];
      for (std::size_t j = 1; j * m <= s; ++j) {
        const auto& src = rows_[s - j * m];
        for (std::size_t k = 0; k < src.size(); ++k) {
          if (sgn(src[k]) == 0) continue;
          mpz_addmul(row[k + j].get_mpz_t(), c[j].get_mpz_t(), src[k].get_mpz_t());
        }
      }
    }
  }
}

ComponentCountTable ComponentCounts::table(std::size_t n) const {
  if (n > max_size()) throw PreconditionError("ComponentCounts: n exceeds the computed range");
  ComponentCountTable t;
  t.n = n;
  t.counts.assign(rows_[n].begin() + 1, rows_[n].end());
  return t;
}

Pmf ComponentCounts::pmf(std::size_t n) const {
  if (n > max_size()) throw PreconditionError("ComponentCounts: n exceeds the computed range");
  if (n == 0) return exact_pmf_from_counts(0, {BigInt(1)});
  return exact_pmf_from_counts(1, table(n).counts);
}

ComponentCountTable exact_component_counts(std::size_t n, const IntegerSequence& trees) {
  if (n < 1) throw PreconditionError("exact_component_counts: n must be >= 1");
  return ComponentCounts(trees, n).table(n);
}

Pmf exact_component_pmf(std::size_t n, const IntegerSequence& trees) { return ComponentCounts(trees, n).pmf(n); }

BigInt forests_with_trees_below(const IntegerSequence& trees, std::size_t n, std::size_t bound) {
  std::vector<BigInt> g(n + 1);
  g[0] = 1;
  for (std::size_t m = 1; m < bound && m <= n; ++m) add_size_class(g, m, trees[m]);
  return g[n];
}

Rational largest_tree_at_least(const TreeTables& tables, std::size_t n, std::size_t L) {
  if (n > tables.size()) throw PreconditionError("largest_tree_at_least: n exceeds the tables");
  if (L == 0) return Rational(1);
  if (L > n) return Rational(0);
  BigInt below = forests_with_trees_below(tables.trees, n, L);
  Rational q(tables.forest[n] - below, tables.forest[n]);
  q.canonicalize();
  return q;
}

std::vector<Rational> largest_tree_pmf(const TreeTables& tables, std::size_t n) {
  if (n > tables.size()) throw PreconditionError("largest_tree_pmf: n exceeds the tables");
  std::vector<Rational> out(n + 1);
  if (n == 0) {
    out[0] = 1;
    return out;
  }
  std::vector<BigInt> g(n + 1);
  g[0] = 1;
  BigInt prev = 0;  // forests on n vertices with every tree below size m
  for (std::size_t m = 1; m <= n; ++m) {
    add_size_class(g, m, tables.trees[m]);
    Rational q(g[n] - prev, tables.forest[n]);
    q.canonicalize();
    out[m] = q;
    prev = g[n];
  }
  return out;
}

Pmf limit_pmf(const OtterSeries& series, std::size_t max_k) { return limit_pmf(series, max_k, rho_and_lambda(series)); }

Pmf limit_pmf(const OtterSeries& series, std::size_t max_k, const RhoLambda& rl) {
  ScopedPrecision guard(series.digits());
  std::vector<RealValue> x;
  x.reserve(max_k);
  for (std::size_t i = 1; i <= max_k; ++i) x.push_back(series.tree_gf_power(i));
  auto zeta = cycle_index_sequence(x);

  Pmf pmf;
  pmf.offset = 0;
  for (const auto& z : zeta) pmf.probs.push_back(rl.rho * z);

  // Chernoff: P(P >= k) <= exp(Lambda(theta)) e^(-theta k), theta = log(1/alpha)/2,
  // Lambda(theta) = sum_i t(alpha^i) (alpha^(-i/2) - 1) / i.
  const RealValue& a = series.alpha();
  RealValue half = sqrt(a);
  RealValue lambda_theta(0L);
  Float au = a.upper();
  Float eps = series.epsilon();
  for (std::size_t i = 1;; ++i) {
    RealValue t = i <= max_k ? x[i - 1] : series.tree_gf_power(i);
    RealValue grow = RealValue(1L) / pow(half, static_cast<unsigned long>(i)) - RealValue(1L);
    lambda_theta += t * grow / static_cast<long>(i);
    if (i >= 2) {
      Float next = pow(au, Float(i + 1));
      Float rest = sqrt(next) / ((1 - sqrt(au)) * (1 - 4 * next) * Float(i + 1));
      if (rest < eps) {
        lambda_theta.add_tail(rest);
        break;
      }
    }
  }
  pmf.tail_constant = exp(lambda_theta.upper());
  pmf.tail_ratio = half.upper();
  pmf.tail_mass = pmf.tail_constant * pow(pmf.tail_ratio, Float(max_k + 1));

  RealValue total = pmf.total();
  if (!total.contains(Float(1)))
    throw ConsistencyError("limit_pmf: masses sum to " + total.to_string() + ", not 1");
  return pmf;
}

HatPResult hat_p_family(const OtterSeries& series, const RealValue& a_hat, std::size_t n_max,
                        std::size_t check_atoms) {
  ScopedPrecision guard(series.digits());
  const RealValue& alpha = series.alpha();
  if (!a_hat.is_positive()) throw PreconditionError("hat_p_family: a must be positive");
  if (n_max > series.truncation()) throw PreconditionError("hat_p_family: N exceeds the truncation K");
  const bool at_alpha = same(a_hat, alpha);
  if (!at_alpha && !(a_hat.upper() < alpha.lower()))
    throw PreconditionError("hat_p_family: a = " + a_hat.to_string(8) + " exceeds alpha, the series diverges");

  const auto& trees = series.tables().trees;
  const auto& fterms = series.forest_terms();
  HatPResult out;
  Pmf& pmf = out.pmf;
  pmf.offset = 0;
  if (at_alpha) {
    const std::size_t k_max = series.truncation();
    out.levy = levy_measure(WeightSequence::exact(trees.prefix(k_max)), alpha, k_max, series.tree_envelope());
    out.p0 = exp(-out.levy.total_rearranged);
    for (std::size_t n = 0; n <= n_max; ++n) pmf.probs.push_back(out.p0 * fterms[n]);
    pmf.tail_mass = out.p0.upper() * series.forest_envelope().tail_sum(n_max);
  } else {
    RealValue y = a_hat / alpha;
    Float yu = y.upper();
    Envelope env = Envelope::geometric(series.tree_max_term(), yu);
    std::size_t k_levy = std::max<std::size_t>(n_max, 1);
    out.levy = levy_measure(WeightSequence::exact(trees.prefix(k_levy)), a_hat, k_levy, env);
    out.p0 = exp(-out.levy.total_rearranged);
    RealValue yn(1L);
    Float fmax = series.forest_envelope().term_bound(n_max + 1);
    for (const auto& f : fterms) fmax = std::max(fmax, Float(f.upper()));
    for (std::size_t n = 0; n <= n_max; ++n) {
      pmf.probs.push_back(out.p0 * fterms[n] * yn);
      yn *= y;
    }
    pmf.tail_constant = out.p0.upper() * fmax;
    pmf.tail_ratio = yu;
    pmf.tail_mass = pmf.tail_constant * pow(yu, Float(n_max + 1)) / (1 - yu);
  }

  // Infinite divisibility at the testable level: the log-coefficients of the
  // stored masses are the Levy atoms, and they must be nonnegative.
  std::size_t c = std::min({check_atoms, n_max, out.levy.size()});
  const auto& p = pmf.probs;
  out.recovered.resize(c);
  out.atoms_nonnegative = true;
  out.atoms_match = true;
  for (std::size_t n = 1; n <= c; ++n) {
    RealValue acc = p[n] * static_cast<long>(n);
    for (std::size_t i = 1; i < n; ++i) acc -= out.recovered[i - 1] * p[n - i] * static_cast<long>(i);
    out.recovered[n - 1] = acc / (p[0] * static_cast<long>(n));
    if (out.recovered[n - 1].upper() < 0) out.atoms_nonnegative = false;
    if (!out.recovered[n - 1].overlaps(out.levy.atom(n))) out.atoms_match = false;
  }
  return out;
}

DiagnosticsReport convergence_report(const OtterSeries& series, const ComponentCounts& counts,
                                     const std::vector<std::size_t>& n_list, std::size_t max_k) {
  DiagnosticsReport rep;
  rep.title = "convergence";
  Pmf gamma = limit_pmf(series, max_k);
  double gamma_radius = 0;
  for (const auto& g : gamma.probs) gamma_radius += g.radius_double();
  double gamma_tail = gamma.tail_mass.convert_to<double>();

  auto& tv = rep.add("tv");
  auto& mean = rep.add("mean");
  auto& var = rep.add("variance");
  for (std::size_t n : n_list) {
    Pmf p = counts.pmf(n);
    double dist = 0, beyond = 0;
    for (std::size_t k = 0; k <= max_k; ++k) dist += std::abs(p.at(k + 1).to_double() - gamma.probs[k].to_double());
    for (std::size_t k = max_k + 2; k <= n; ++k) beyond += p.at(k).to_double();
    tv.push(n, 0.5 * (dist + beyond + gamma_tail));
    mean.push(n, to_double(p.exact_mean()));
    var.push(n, to_double(p.exact_variance()));
  }
  for (auto* s : {&tv, &mean, &var}) {
    s->finish();
    auto e = aitken_sequence(s->ratio);
    s->extrapolated = e.value;
    s->radius = e.radius;
  }
  RealValue m = gamma.mean();
  rep.scalars["limit_mean"] = 1 + m.to_double();
  rep.scalars["limit_mean_radius"] = m.radius_double();
  RealValue v = gamma.variance();
  rep.scalars["limit_variance"] = v.to_double();
  rep.scalars["limit_variance_radius"] = v.radius_double();
  rep.scalars["tv_limit_radius"] = 0.5 * gamma_radius;
  return rep;
}

RatioSeries uniform_integrability_witness(const ComponentCounts& counts, const std::vector<std::size_t>& n_list) {
  RatioSeries s;
  s.label = "ui_witness";
  for (std::size_t n : n_list) {
    Pmf p = counts.pmf(n);
    // Survival P(T_n > k) summed from the top so small masses are not lost.
    std::vector<double> survival(n + 2, 0.0);
    for (std::size_t k = n; k >= 1; --k) survival[k - 1] = survival[k] + p.at(k).to_double();
    double sup = 0;
    for (std::size_t k = 1; k <= n; ++k) sup = std::max(sup, std::pow(static_cast<double>(k), 1.5) * survival[k]);
    s.push(n, sup);
  }
  s.finish();
  return s;
}

DiagnosticsReport levy_ratio_diagnostics(const OtterSeries& series, std::size_t n_max) {
  if (n_max < 16 || n_max > series.truncation())
    throw PreconditionError("levy_ratio_diagnostics: need 16 <= N <= K");
  ScopedPrecision guard(series.digits());
  const std::size_t k_max = series.truncation();
  auto lm = levy_measure(WeightSequence::exact(series.tables().trees.prefix(k_max)), series.alpha(), k_max,
                         series.tree_envelope());
  RealValue rho = exp(-lm.total_rearranged);
  double lambda = lm.total_rearranged.to_double();

  std::vector<double> tau(n_max + 1, 0.0), pi(n_max + 1, 0.0), mu(n_max + 1, 0.0);
  for (std::size_t n = 1; n <= n_max; ++n) {
    tau[n] = lm.atom(n).to_double();
    mu[n] = tau[n] / lambda;
  }
  for (std::size_t n = 0; n <= n_max; ++n) pi[n] = (rho * series.forest_terms()[n]).to_double();

  DiagnosticsReport rep;
  rep.title = "levy_ratios";
  rep.scalars["rho"] = rho.to_double();
  rep.scalars["lambda"] = lambda;

  auto extrapolate = [&](RatioSeries& s) {
    auto e = aitken_dyadic([&](std::size_t n) { return s.at(n); }, n_max, n_max / 16);
    s.extrapolated = e.value;
    s.radius = e.radius;
  };

  auto& hj = rep.add("p_over_tau");
  for (std::size_t n = 1; n <= n_max; ++n) hj.push(n, pi[n] / tau[n]);

  auto& mconv = rep.add("mu_conv_over_2mu");
  auto& mnext = rep.add("mu_next_over_mu");
  auto& pconv = rep.add("pi_conv_over_2pi");
  auto& pnext = rep.add("pi_next_over_pi");
  for (std::size_t n = 1; n <= n_max; ++n) {
    double cm = 0, cp = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      cm += mu[k] * mu[n - k];
      cp += pi[k] * pi[n - k];
    }
    if (n >= 2) mconv.push(n, cm / (2 * mu[n]));
    pconv.push(n, cp / (2 * pi[n]));
    if (n < n_max) {
      mnext.push(n, mu[n + 1] / mu[n]);
      pnext.push(n, pi[n + 1] / pi[n]);
    }
  }
  for (auto* s : {&hj, &mconv, &pconv}) {
    s->finish(n_max / 20);
    extrapolate(*s);
  }
  for (auto* s : {&mnext, &pnext}) {
    s->finish(n_max / 20);
    auto e = aitken_dyadic([&](std::size_t n) { return s->at(n); }, n_max - 1, (n_max - 1) / 16);
    s->extrapolated = e.value;
    s->radius = e.radius;
  }
  return rep;
}

DiagnosticsReport generalized_asymptotics(const WeightSequence& nu, const Envelope& envelope, std::size_t n_max) {
  if (n_max < 1) throw PreconditionError("generalized_asymptotics: N must be >= 1");
  if (nu.size() < n_max) throw PreconditionError("generalized_asymptotics: weights not defined up to N");
  if (envelope.kind == Envelope::Kind::Polynomial && envelope.exponent <= 1)
    throw PreconditionError("generalized_asymptotics: weights are not summable");
  std::vector<double> v(n_max + 1, 0.0);
  RealValue lambda(0L);
  bool any = false;
  for (std::size_t k = 1; k <= nu.size(); ++k) {
    RealValue w = nu.real_at(k);
    if (w.is_negative()) throw PreconditionError("generalized_asymptotics: negative weight at k = " + std::to_string(k));
    lambda += w;
    if (k <= n_max) v[k] = w.to_double();
    if (w.is_positive()) any = true;
  }
  if (!any) throw PreconditionError("generalized_asymptotics: all weights are zero");
  lambda.add_tail(envelope.tail_sum(nu.size()));
  double e_lambda = std::exp(lambda.to_double());

  std::vector<double> z(n_max + 1, 0.0);
  z[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    double acc = 0;
    for (std::size_t i = 1; i <= n; ++i) acc += static_cast<double>(i) * v[i] * z[n - i];
    z[n] = acc / static_cast<double>(n);
  }

  DiagnosticsReport rep;
  rep.title = "generalized_asymptotics";
  rep.scalars["lambda"] = lambda.to_double();
  rep.scalars["lambda_radius"] = lambda.radius_double();
  auto& zs = rep.add("z");
  for (std::size_t n = 0; n <= n_max; ++n) zs.push(n, z[n]);
  zs.finish();
  auto& ratio = rep.add("ratio");
  for (std::size_t n = 1; n <= n_max; ++n)
    if (v[n] > 0) ratio.push(n, z[n] / (e_lambda * v[n]));
  ratio.finish(n_max / 16);
  if (n_max >= 16 && ratio.n.size() == n_max) {
    auto e = aitken_dyadic([&](std::size_t n) { return ratio.at(n); }, n_max, n_max / 16);
    ratio.extrapolated = e.value;
    ratio.radius = e.radius;
  } else {
    ratio.extrapolated = ratio.last;
  }
  return rep;
}

DiagnosticsReport tree_cycle_index_asymptotics(const OtterSeries& series, std::size_t n_max) {
  if (n_max < 16) throw PreconditionError("tree_cycle_index_asymptotics: N must be >= 16");
  ScopedPrecision guard(series.digits());
  XiConstant xi = xi_constant(series);
  // Normalized: b_n = alpha^-n zeta_n solves n b_n = sum_i a_i b_{n-i}, a_i = t(alpha^i) / alpha^i.
  std::vector<double> a(n_max + 1, 0.0), b(n_max + 1, 0.0);
  for (std::size_t i = 1; i <= n_max; ++i) {
    RealValue x = i < series.alpha_powers().size() ? series.alpha_powers()[i]
                                                   : pow(series.alpha(), static_cast<unsigned long>(i));
    a[i] = (series.tree_gf_power(i) / x).to_double();
  }
  b[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    double acc = 0;
    for (std::size_t i = 1; i <= n; ++i) acc += a[i] * b[n - i];
    b[n] = acc / static_cast<double>(n);
  }
  double e_xi = xi.e_xi.to_double();
  DiagnosticsReport rep;
  rep.title = "tree_cycle_index";
  rep.scalars["xi"] = xi.xi.to_double();
  rep.scalars["e_xi"] = e_xi;
  rep.scalars["e_xi_radius"] = xi.e_xi.radius_double();
  auto& ratio = rep.add("ratio");
  for (std::size_t n = 1; n <= n_max; ++n) ratio.push(n, b[n] / e_xi);
  ratio.finish(n_max / 16);
  auto e = aitken_dyadic([&](std::size_t n) { return ratio.at(n); }, n_max, n_max / 16);
  ratio.extrapolated = e.value;
  ratio.radius = e.radius;
  return rep;
}

}  // namespace otter
