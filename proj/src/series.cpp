#include "otter/series.hpp"

#include <algorithm>
#include <bit>

namespace otter::series {

namespace {

// Below this many terms in the shorter operand, packing costs more than it saves.
constexpr std::size_t kSchoolbookLength = 12;

std::size_t max_bits(std::span<const BigInt> a) {
  std::size_t best = 0;
  for (const auto& x : a)
    if (sgn(x) != 0) best = std::max(best, mpz_sizeinbase(x.get_mpz_t(), 2));
  return best;
}

// Places coefficient i at limb offset i * slot.
std::vector<mp_limb_t> pack(std::span<const BigInt> a, std::size_t slot) {
  std::vector<mp_limb_t> out(a.size() * slot, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto n = mpz_size(a[i].get_mpz_t());
    const mp_limb_t* p = mpz_limbs_read(a[i].get_mpz_t());
    std::copy(p, p + n, out.begin() + static_cast<std::ptrdiff_t>(i * slot));
  }
  return out;
}

void assign_limbs(BigInt& z, const mp_limb_t* p, std::size_t n) {
  while (n > 0 && p[n - 1] == 0) --n;
  if (n == 0) {
    z = 0;
    return;
  }
  mp_limb_t* w = mpz_limbs_write(z.get_mpz_t(), static_cast<mp_size_t>(n));
  std::copy(p, p + n, w);
  mpz_limbs_finish(z.get_mpz_t(), static_cast<mp_size_t>(n));
}

}  // namespace

std::vector<BigInt> multiply_naive(std::span<const BigInt> a, std::span<const BigInt> b, std::size_t out_len) {
  std::vector<BigInt> out(out_len);
  for (std::size_t i = 0; i < a.size() && i < out_len; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < out_len; ++j)
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return out;
}

std::vector<BigInt> multiply(std::span<const BigInt> a, std::span<const BigInt> b, std::size_t out_len) {
  if (a.size() > out_len) a = a.first(out_len);
  if (b.size() > out_len) b = b.first(out_len);
  if (a.empty() || b.empty()) return std::vector<BigInt>(out_len);
  if (std::min(a.size(), b.size()) <= kSchoolbookLength) return multiply_naive(a, b, out_len);

  // Each product coefficient is at most min(|a|,|b|) * max(a) * max(b).
  const std::size_t terms = std::min(a.size(), b.size());
  const std::size_t slot_bits =
      max_bits(a) + max_bits(b) + static_cast<std::size_t>(std::bit_width(terms)) + 1;
  const std::size_t slot = (slot_bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;

  auto pa = pack(a, slot);
  auto pb = pack(b, slot);
  mpz_t va, vb;
  BigInt prod;
  mpz_mul(prod.get_mpz_t(), mpz_roinit_n(va, pa.data(), static_cast<mp_size_t>(pa.size())),
          mpz_roinit_n(vb, pb.data(), static_cast<mp_size_t>(pb.size())));

  std::vector<BigInt> out(out_len);
  const std::size_t total = mpz_size(prod.get_mpz_t());
  const mp_limb_t* p = mpz_limbs_read(prod.get_mpz_t());
  for (std::size_t t = 0; t < out_len; ++t) {
    std::size_t begin = t * slot;
    if (begin >= total) break;
    std::size_t end = std::min(total, begin + slot);
    assign_limbs(out[t], p + begin, end - begin);
  }
  return out;
}

namespace {

struct OnlineSolver {
  std::vector<BigInt>& a;
  std::vector<BigInt>& b;
  std::size_t last;
  const Finalizer& finalize;
  std::vector<BigInt> acc;

  void solve(std::size_t l, std::size_t r) {
    if (l > last) return;
    if (r - l == 1) {
      finalize(l, acc[l]);
      return;
    }
    const std::size_t mid = l + (r - l) / 2;
    solve(l, mid);
    if (mid > last) return;
    const std::size_t hi = std::min(r, last + 1);
    std::span<const BigInt> sa(a), sb(b);
    if (l == 0) {
      auto p = multiply(sa.first(mid), sb.first(mid), hi);
      for (std::size_t m = mid; m < hi; ++m) acc[m] += p[m];
    } else {
      // Blocks are dyadic, so hi - l <= l and the partner range [0, hi - l) is final.
      const std::size_t len = hi - l;
      auto p1 = multiply(sa.subspan(l, mid - l), sb.first(len), len);
      auto p2 = multiply(sb.subspan(l, mid - l), sa.first(len), len);
      for (std::size_t m = mid; m < hi; ++m) {
        acc[m] += p1[m - l];
        acc[m] += p2[m - l];
      }
    }
    solve(mid, r);
  }
};

}  // namespace

void online_convolve(std::vector<BigInt>& a, std::vector<BigInt>& b, std::size_t last, const Finalizer& finalize) {
  if (a.size() <= last) a.resize(last + 1);
  if (b.size() <= last) b.resize(last + 1);
  OnlineSolver solver{a, b, last, finalize, std::vector<BigInt>(last + 1)};
  std::size_t size = std::bit_ceil(last + 1);
  solver.solve(0, size);
}

}  // namespace otter::series
