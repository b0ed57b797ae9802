#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "otter/error.hpp"

namespace otter {

/// Sizes and precision shared by a run.
///
/// `max_index` is the largest sequence index a caller asks about, `digits` the
/// decimal precision of real arithmetic, and `truncation` the cutoff for
/// infinite sums and products (exact sequences are computed up to it).
struct PrecisionContext {
  std::size_t max_index = 100;
  unsigned digits = 30;
  std::size_t truncation = 5000;
  std::uint64_t seed = 0;

  void validate() const {
    if (max_index < 1) throw PreconditionError("max_index must be >= 1");
    if (digits < 15) throw PreconditionError("digits must be >= 15 (got " + std::to_string(digits) + ")");
    if (truncation < max_index)
      throw PreconditionError("truncation (" + std::to_string(truncation) + ") must be >= max_index (" +
                              std::to_string(max_index) + ")");
  }

  static PrecisionContext make(std::size_t n, unsigned p, std::size_t k, std::uint64_t seed = 0) {
    PrecisionContext ctx{n, p, k, seed};
    ctx.validate();
    return ctx;
  }
};

}  // namespace otter
