#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "otter/bigint.hpp"

namespace otter::series {

/// Coefficients 0..out_len-1 of the product of two nonnegative integer
/// polynomials. Large inputs go through a single Kronecker-packed GMP
/// multiplication; small ones use schoolbook accumulation.
std::vector<BigInt> multiply(std::span<const BigInt> a, std::span<const BigInt> b, std::size_t out_len);

/// Schoolbook reference for `multiply`, kept for testing.
std::vector<BigInt> multiply_naive(std::span<const BigInt> a, std::span<const BigInt> b, std::size_t out_len);

/// Called once per index m in increasing order with the completed sum
/// acc = sum_{i+j=m, i,j>=1} a_i b_j. It must store a[m] and b[m] before returning.
using Finalizer = std::function<void(std::size_t m, BigInt& acc)>;

/// Online (relaxed) convolution over indices 0..last, where a[m] and b[m]
/// become known only after the m-th convolution coefficient is complete.
/// Both vectors must have size > last and hold nonnegative values; entries not
/// yet finalized are never read. Divide and conquer over dyadic blocks gives
/// O(M(n) log n) cost instead of the quadratic direct recurrence.
void online_convolve(std::vector<BigInt>& a, std::vector<BigInt>& b, std::size_t last, const Finalizer& finalize);

}  // namespace otter::series
