#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "otter/constants.hpp"
#include "otter/limitdist.hpp"
#include "otter/sequences.hpp"

namespace otter {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Shared, lazily built inputs of the acceptance criteria: tables to K, alpha
/// and the normalized series at P digits, the forest triangle to n = 400.
class VerifyContext {
 public:
  VerifyContext(unsigned digits = 30, std::size_t truncation = 5000, std::uint64_t seed = 0);

  unsigned digits() const { return digits_; }
  std::size_t truncation() const { return truncation_; }
  std::uint64_t seed() const { return seed_; }

  const TreeTables& tables();
  const OtterSeries& series();
  const ComponentCounts& counts();

 private:
  unsigned digits_;
  std::size_t truncation_;
  std::uint64_t seed_;
  std::optional<TreeTables> tables_;
  std::unique_ptr<OtterSeries> series_;
  std::unique_ptr<ComponentCounts> counts_;
};

inline constexpr int kCriterionCount = 12;

/// Runs one acceptance criterion (1..12) at the fixed tolerances.
CriterionResult run_criterion(int id, VerifyContext& ctx);

/// Criterion ids making up a named suite: sequences, identities, asymptotics, sampler, all.
std::vector<int> suite_criteria(const std::string& suite);

/// "PASS [3] name: detail (1.2 s)"
std::string format_result(const CriterionResult& r);

}  // namespace otter
