#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace otter {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Exact nonnegative integer sequence a_offset, a_offset+1, ..., indexed by n.
class IntegerSequence {
 public:
  IntegerSequence() = default;
  IntegerSequence(std::size_t offset, std::vector<BigInt> values)
      : offset_(offset), values_(std::move(values)) {}

  std::size_t offset() const { return offset_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  /// Largest stored index; only meaningful when non-empty.
  std::size_t last_index() const { return offset_ + values_.size() - 1; }
  bool contains(std::size_t n) const { return n >= offset_ && n - offset_ < values_.size(); }

  const BigInt& operator[](std::size_t n) const { return values_[n - offset_]; }
  const BigInt& at(std::size_t n) const {
    if (!contains(n)) throw std::out_of_range("sequence index " + std::to_string(n) + " not stored");
    return values_[n - offset_];
  }
  const std::vector<BigInt>& values() const { return values_; }

  /// Entries offset..last as a new sequence.
  IntegerSequence prefix(std::size_t last) const {
    if (last < offset_) return IntegerSequence(offset_, {});
    auto count = std::min(values_.size(), last - offset_ + 1);
    return IntegerSequence(offset_, std::vector<BigInt>(values_.begin(), values_.begin() + count));
  }

  friend bool operator==(const IntegerSequence& a, const IntegerSequence& b) {
    return a.offset_ == b.offset_ && a.values_ == b.values_;
  }

 private:
  std::size_t offset_ = 0;
  std::vector<BigInt> values_;
};

}  // namespace otter
