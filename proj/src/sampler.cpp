#include "otter/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "otter/error.hpp"
#include "otter/limitdist.hpp"

namespace otter {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

BigInt RngStream::uniform_below(const BigInt& bound) {
  if (sgn(bound) <= 0) throw PreconditionError("uniform_below: bound must be positive");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const unsigned top_bits = static_cast<unsigned>(bits - 64 * (words - 1));
  const std::uint64_t mask = top_bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
  std::vector<std::uint64_t> buf(words);
  BigInt z;
  while (true) {
    for (auto& w : buf) w = engine_();
    buf.back() &= mask;
    mpz_import(z.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    if (z < bound) return z;
  }
}

std::size_t ForestProfile::trees() const {
  std::size_t s = 0;
  for (const auto& [size, count] : parts) s += count;
  return s;
}

ForestSampler::ForestSampler(const TreeTables& tables, std::size_t table_limit) : tables_(&tables) {
  const std::size_t limit = std::min(table_limit, tables.size());
  cumulative_.resize(limit + 1);
  choices_.resize(limit + 1);
  for (std::size_t n = 1; n <= limit; ++n) {
    BigInt acc = 0;
    for (std::size_t d = 1; d <= n; ++d) {
      BigInt dt = tables.trees[d] * static_cast<unsigned long>(d);
      for (std::size_t j = 1; d * j <= n; ++j) {
        acc += dt * tables.forest[n - d * j];
        cumulative_[n].push_back(acc);
        choices_[n].push_back({d, j});
      }
    }
    if (acc != tables.forest[n] * static_cast<unsigned long>(n))
      throw ConsistencyError("ForestSampler: weights do not sum to n f_n at n = " + std::to_string(n));
  }
}

ForestSampler::Choice ForestSampler::choose_walk(std::size_t n, const BigInt& u) const {
  BigInt acc = 0;
  for (std::size_t d = 1; d <= n; ++d) {
    BigInt dt = tables_->trees[d] * static_cast<unsigned long>(d);
    for (std::size_t j = 1; d * j <= n; ++j) {
      acc += dt * tables_->forest[n - d * j];
      if (u < acc) return {d, j};
    }
  }
  throw ConsistencyError("ForestSampler: draw exceeded n f_n at n = " + std::to_string(n));
}

ForestSampler::Choice ForestSampler::choose(std::size_t n, const BigInt& u) const {
  if (n >= cumulative_.size()) return choose_walk(n, u);
  const auto& cum = cumulative_[n];
  auto it = std::upper_bound(cum.begin(), cum.end(), u);
  return choices_[n][static_cast<std::size_t>(it - cum.begin())];
}

ForestProfile ForestSampler::sample(std::size_t n, RngStream& rng) const {
  if (n > tables_->size()) throw PreconditionError("sample: n exceeds the precomputed tables");
  std::map<std::size_t, std::size_t, std::greater<>> counts;
  std::size_t rest = n;
  while (rest > 0) {
    BigInt u = rng.uniform_below(tables_->forest[rest] * static_cast<unsigned long>(rest));
    Choice c = choose(rest, u);
    counts[c.d] += c.j;
    rest -= c.d * c.j;
  }
  ForestProfile p;
  p.n = n;
  p.parts.assign(counts.begin(), counts.end());
  return p;
}

ForestProfile sample_profile(std::size_t n, const TreeTables& tables, RngStream& rng) {
  return ForestSampler(tables, 0).sample(n, rng);
}

std::map<std::vector<std::pair<std::size_t, std::size_t>>, Rational> exact_profile_weights(const TreeTables& tables,
                                                                                              std::size_t n) {
  if (n > tables.size()) throw PreconditionError("exact_profile_weights: n exceeds the tables");
  std::map<std::vector<std::pair<std::size_t, std::size_t>>, Rational> out;
  std::vector<std::pair<std::size_t, std::size_t>> parts;
  std::function<void(std::size_t, std::size_t, BigInt)> rec = [&](std::size_t rest, std::size_t max_size, BigInt w) {
    if (rest == 0) {
      Rational q(w, tables.forest[n]);
      q.canonicalize();
      out[parts] = q;
      return;
    }
    for (std::size_t m = std::min(rest, max_size); m >= 1; --m) {
      const BigInt& t = tables.trees[m];
      BigInt c = 1;
      for (std::size_t j = 1; j * m <= rest; ++j) {
        c *= t + static_cast<unsigned long>(j - 1);
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), j);
        parts.emplace_back(m, j);
        rec(rest - j * m, m - 1, w * c);
        parts.pop_back();
      }
    }
  };
  rec(n, n, BigInt(1));
  return out;
}

ChiSquare chi_square_test(const std::vector<std::size_t>& observed, const std::vector<double>& probabilities) {
  if (observed.size() != probabilities.size()) throw PreconditionError("chi_square_test: size mismatch");
  double total = 0;
  for (auto o : observed) total += static_cast<double>(o);
  std::vector<double> obs, exp;
  double o_acc = 0, e_acc = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    o_acc += static_cast<double>(observed[i]);
    e_acc += probabilities[i] * total;
    if (e_acc >= 5) {
      obs.push_back(o_acc);
      exp.push_back(e_acc);
      o_acc = e_acc = 0;
    }
  }
  if (o_acc > 0 || e_acc > 0) {
    if (obs.empty()) {
      obs.push_back(o_acc);
      exp.push_back(e_acc);
    } else {
      obs.back() += o_acc;
      exp.back() += e_acc;
    }
  }
  ChiSquare c;
  c.cells = obs.size();
  for (std::size_t i = 0; i < obs.size(); ++i) c.statistic += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
  c.dof = c.cells > 1 ? c.cells - 1 : 0;
  if (c.dof > 0) {
    boost::math::chi_squared dist(static_cast<double>(c.dof));
    c.p_value = boost::math::cdf(boost::math::complement(dist, c.statistic));
  }
  return c;
}

EmpiricalReport empirical_report(const TreeTables& tables, std::size_t n, std::size_t samples, std::uint64_t seed) {
  if (samples < kMinChiSquareSamples)
    throw PreconditionError("empirical_report: samples = " + std::to_string(samples) +
                            " is below the chi-square minimum of 1000");
  if (n > tables.size()) throw PreconditionError("empirical_report: n exceeds the tables");
  EmpiricalReport rep;
  rep.n = n;
  rep.samples = samples;
  rep.seed = seed;
  rep.tree_counts.assign(n + 1, 0);
  rep.largest_counts.assign(n + 1, 0);

  ForestSampler sampler(tables, std::min<std::size_t>(n, 256));
  RngStream rng(seed, 0);
  std::map<std::vector<std::pair<std::size_t, std::size_t>>, std::size_t> profile_counts;
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    ForestProfile p = sampler.sample(n, rng);
    std::size_t k = p.trees();
    ++rep.tree_counts[k];
    ++rep.largest_counts[p.largest()];
    if (n <= 12) ++profile_counts[p.parts];
    double x = static_cast<double>(k);
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
    s4 += x * x * x * x;
  }
  double N = static_cast<double>(samples);
  rep.mean = s1 / N;
  double m2 = s2 / N - rep.mean * rep.mean;
  rep.variance = m2 * N / (N - 1);
  rep.mean_se = std::sqrt(rep.variance / N);
  double c4 = s4 / N - 4 * rep.mean * s3 / N + 6 * rep.mean * rep.mean * s2 / N - 3 * std::pow(rep.mean, 4);
  rep.variance_se = std::sqrt(std::max(0.0, c4 - m2 * m2) / N);

  Pmf exact = exact_component_pmf(n, tables.trees);
  rep.tree_expected.assign(n + 1, 0.0);
  for (std::size_t k = 0; k <= n; ++k) rep.tree_expected[k] = exact.at(k).to_double();
  rep.exact_mean = mpq_get_d(exact.exact_mean().get_mpq_t());
  rep.exact_variance = mpq_get_d(exact.exact_variance().get_mpq_t());
  rep.chi = chi_square_test(rep.tree_counts, rep.tree_expected);

  auto largest = largest_tree_pmf(tables, n);
  rep.largest_expected.assign(n + 1, 0.0);
  for (std::size_t m = 0; m <= n; ++m) rep.largest_expected[m] = mpq_get_d(largest[m].get_mpq_t());

  if (n <= 12) {
    for (const auto& [parts, w] : exact_profile_weights(tables, n)) {
      EmpiricalReport::ProfileCell cell;
      cell.parts = parts;
      auto it = profile_counts.find(parts);
      cell.observed = it == profile_counts.end() ? 0 : it->second;
      cell.expected = mpq_get_d(w.get_mpq_t());
      double se = std::sqrt(cell.expected * (1 - cell.expected) / N);
      cell.z = se > 0 ? (static_cast<double>(cell.observed) / N - cell.expected) / se : 0;
      rep.max_profile_z = std::max(rep.max_profile_z, std::abs(cell.z));
      rep.profiles.push_back(std::move(cell));
    }
  }
  return rep;
}

}  // namespace otter
