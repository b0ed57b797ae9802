#include "otter/transforms.hpp"

#include <string>

#include "otter/error.hpp"
#include "otter/series.hpp"

namespace otter {

WeightSequence WeightSequence::exact(std::vector<BigInt> w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (sgn(w[i]) < 0) throw PreconditionError("negative weight at index " + std::to_string(i + 1));
  WeightSequence s;
  s.values_ = std::move(w);
  return s;
}

WeightSequence WeightSequence::exact(const IntegerSequence& seq) {
  if (seq.offset() != 1) throw PreconditionError("weight sequences start at index 1");
  return exact(seq.values());
}

WeightSequence WeightSequence::real(std::vector<RealValue> w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i].is_negative()) throw PreconditionError("negative weight at index " + std::to_string(i + 1));
  WeightSequence s;
  s.values_ = std::move(w);
  return s;
}

std::size_t WeightSequence::size() const {
  return std::visit([](const auto& v) { return v.size(); }, values_);
}

const std::vector<BigInt>& WeightSequence::exact_values() const {
  if (!is_exact()) throw PreconditionError("weights are not exact integers");
  return std::get<std::vector<BigInt>>(values_);
}

const BigInt& WeightSequence::exact_at(std::size_t k) const { return exact_values().at(k - 1); }

RealValue WeightSequence::real_at(std::size_t k) const {
  if (is_exact()) return RealValue::from_integer(exact_at(k));
  return std::get<std::vector<RealValue>>(values_).at(k - 1);
}

Envelope Envelope::polynomial(Float constant, Float exponent) {
  if (exponent <= 1) throw PreconditionError("polynomial envelope needs exponent > 1");
  Envelope e;
  e.kind = Kind::Polynomial;
  e.constant = std::move(constant);
  e.exponent = std::move(exponent);
  return e;
}

Envelope Envelope::geometric(Float constant, Float ratio) {
  if (ratio <= 0 || ratio >= 1) throw PreconditionError("geometric envelope needs ratio in (0,1)");
  Envelope e;
  e.kind = Kind::Geometric;
  e.constant = std::move(constant);
  e.ratio = std::move(ratio);
  return e;
}

Envelope Envelope::fit_polynomial(const std::vector<RealValue>& u, std::size_t k_min, const Float& exponent) {
  if (u.empty()) return polynomial(0, exponent);
  if (k_min > u.size() || k_min == 0) k_min = 1;
  Float best = 0;
  for (std::size_t k = k_min; k <= u.size(); ++k) {
    Float scaled = u[k - 1].upper() * pow(Float(k), exponent);
    if (scaled > best) best = scaled;
  }
  return polynomial(best, exponent);
}

Float Envelope::tail_sum(std::size_t k) const {
  switch (kind) {
    case Kind::Polynomial:
      // sum_{j>k} j^-s <= integral_k^inf x^-s dx
      return constant * pow(Float(k), 1 - exponent) / (exponent - 1);
    case Kind::Geometric:
      return constant * pow(ratio, Float(k + 1)) / (1 - ratio);
    case Kind::Finite:
      break;
  }
  return 0;
}

Float Envelope::term_bound(std::size_t k) const {
  switch (kind) {
    case Kind::Polynomial:
      return constant * pow(Float(k), -exponent);
    case Kind::Geometric:
      return constant * pow(ratio, Float(k));
    case Kind::Finite:
      break;
  }
  return 0;
}

std::vector<BigInt> divisor_sums(const std::vector<BigInt>& w, std::size_t n_max) {
  std::vector<BigInt> b(n_max + 1);
  for (std::size_t d = 1; d <= n_max && d <= w.size(); ++d) {
    if (sgn(w[d - 1]) == 0) continue;
    BigInt dw = w[d - 1] * static_cast<unsigned long>(d);
    for (std::size_t n = d; n <= n_max; n += d) b[n] += dw;
  }
  return b;
}

std::vector<Rational> divisor_log_coefficients(const WeightSequence& w, std::size_t n_max) {
  if (w.size() < n_max) throw PreconditionError("weights not defined up to N");
  auto b = divisor_sums(w.exact_values(), n_max);
  std::vector<Rational> c(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    c[n - 1] = Rational(b[n], BigInt(static_cast<unsigned long>(n)));
    c[n - 1].canonicalize();
  }
  return c;
}

IntegerSequence multiset_transform(const WeightSequence& w, std::size_t n_max) {
  if (!w.is_exact()) throw PreconditionError("multiset_transform needs exact integer weights");
  if (w.size() < n_max) throw PreconditionError("weights not defined up to N");
  auto b = divisor_sums(w.exact_values(), n_max);
  std::vector<BigInt> f(n_max + 1);
  // n F_n = sum_{k=1}^n B_k F_{n-k}; the engine supplies every term except F_0 B_n.
  series::online_convolve(f, b, n_max, [&](std::size_t m, BigInt& acc) {
    if (m == 0) {
      f[0] = 1;
      return;
    }
    acc += b[m];
    mpz_divexact_ui(f[m].get_mpz_t(), acc.get_mpz_t(), m);
  });
  return IntegerSequence(0, std::move(f));
}

WeightSequence inverse_multiset_transform(const IntegerSequence& F, std::size_t n_max) {
  if (F.empty() || F.offset() != 0 || F[0] != 1) throw PreconditionError("inverse transform needs F_0 = 1");
  if (F.last_index() < n_max) throw PreconditionError("sequence not defined up to N");
  std::vector<BigInt> f(F.values().begin(), F.values().begin() + static_cast<std::ptrdiff_t>(n_max + 1));
  for (std::size_t n = 0; n <= n_max; ++n)
    if (sgn(f[n]) < 0) throw PreconditionError("negative entry at index " + std::to_string(n));
  std::vector<BigInt> b(n_max + 1);
  series::online_convolve(b, f, n_max, [&](std::size_t m, BigInt& acc) {
    if (m == 0) return;
    b[m] = f[m] * static_cast<unsigned long>(m) - acc;
    if (sgn(b[m]) < 0)
      throw PreconditionError("not a multiset transform: negative divisor sum at index " + std::to_string(m));
  });
  // Dirichlet inversion of B_n = sum_{d|n} d w_d, one index at a time.
  std::vector<BigInt> w(n_max + 1), partial(n_max + 1);
  for (std::size_t n = 1; n <= n_max; ++n) {
    BigInt rest = b[n] - partial[n];
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), n) || sgn(rest) < 0)
      throw PreconditionError("not a multiset transform of nonnegative integer weights (index " +
                              std::to_string(n) + ")");
    mpz_divexact_ui(w[n].get_mpz_t(), rest.get_mpz_t(), n);
    BigInt dw = w[n] * static_cast<unsigned long>(n);
    for (std::size_t q = 2 * n; q <= n_max; q += n) partial[q] += dw;
  }
  return WeightSequence::exact(std::vector<BigInt>(w.begin() + 1, w.end()));
}

LevyMeasure levy_measure(const WeightSequence& w, const RealValue& a, std::size_t k_max, const Envelope& envelope) {
  if (!a.is_positive() || !(a.upper() < 1)) throw PreconditionError("levy_measure needs 0 < a < 1 with margin");
  if (k_max < 1 || w.size() < k_max) throw PreconditionError("weights not defined up to K");

  std::vector<RealValue> powers(k_max + 1);
  powers[0] = RealValue(1L);
  for (std::size_t j = 1; j <= k_max; ++j) powers[j] = powers[j - 1] * a;

  // Normalized terms u_d = w_d a^d keep every quantity O(1).
  std::vector<RealValue> u(k_max + 1);
  std::vector<bool> zero(k_max + 1, false);
  for (std::size_t d = 1; d <= k_max; ++d) {
    if (w.is_exact() && sgn(w.exact_at(d)) == 0) {
      zero[d] = true;
      continue;
    }
    u[d] = w.real_at(d) * powers[d];
  }

  std::vector<RealValue> sums(k_max + 1);
  for (std::size_t d = 1; d <= k_max; ++d) {
    if (zero[d]) continue;
    RealValue du = u[d] * static_cast<long>(d);
    for (std::size_t n = d; n <= k_max; n += d) sums[n] += du * powers[n - d];
  }

  LevyMeasure out;
  out.atoms.resize(k_max);
  RealValue total(0L);
  for (std::size_t n = 1; n <= k_max; ++n) {
    out.atoms[n - 1] = sums[n] / static_cast<long>(n);
    total += out.atoms[n - 1];
  }

  // Beyond K: tau_n <= u_n + (1/n) sum_{d|n,d<n} d u_d a^(n-d) <= u_n + (n/4) umax a^(n/2).
  Float umax = envelope.term_bound(k_max + 1);
  for (std::size_t d = 1; d <= k_max; ++d)
    if (!zero[d] && u[d].upper() > umax) umax = u[d].upper();
  Float q = sqrt(a.upper());
  Float kk(k_max);
  Float geometric_part = umax / 4 * pow(q, kk + 1) * ((kk + 1) - kk * q) / ((1 - q) * (1 - q));
  out.tail_bound = envelope.tail_sum(k_max) + geometric_part;
  total.add_tail(out.tail_bound);
  out.total = total;

  // Rearranged: lambda = sum_k w_k (-log(1 - a^k)) = sum_k u_k (-log(1 - a^k) / a^k).
  RealValue rearranged(0L);
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (zero[k]) continue;
    RealValue factor = -log1p(-powers[k]) / powers[k];
    rearranged += u[k] * factor;
  }
  // -log(1-x)/x <= 1/(1-x), so the tail is at most the envelope tail over (1 - a^(K+1)).
  Float tail2 = envelope.tail_sum(k_max) / (1 - pow(a.upper(), Float(k_max + 1)));
  rearranged.add_tail(tail2);
  out.total_rearranged = rearranged;

  if (!out.total.overlaps(out.total_rearranged))
    throw ConsistencyError("levy_measure: sum of atoms " + out.total.to_string() +
                           " disagrees with rearranged total " + out.total_rearranged.to_string());
  return out;
}

std::vector<RealValue> cycle_index_sequence(const std::vector<RealValue>& x) {
  std::vector<RealValue> z(x.size() + 1);
  z[0] = RealValue(1L);
  for (std::size_t k = 1; k <= x.size(); ++k) {
    RealValue acc(0L);
    for (std::size_t i = 1; i <= k; ++i) acc += x[i - 1] * z[k - i];
    z[k] = acc / static_cast<long>(k);
  }
  return z;
}

RealValue cycle_index_eval(const std::vector<RealValue>& x) { return cycle_index_sequence(x).back(); }

}  // namespace otter
