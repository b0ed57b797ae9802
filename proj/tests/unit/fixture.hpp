#pragma once

#include "otter/constants.hpp"
#include "otter/sequences.hpp"

namespace otter::test {

// Tables to K = 5000 and alpha at 30 digits, built once per test binary.
inline const TreeTables& tables5000() {
  static const TreeTables t = TreeTables::compute(5000);
  return t;
}

inline const OtterSeries& series30() {
  static const OtterSeries s(tables5000(), otter_alpha(tables5000(), 30));
  return s;
}

inline bool near(double a, double b, double tol) { return a - b <= tol && b - a <= tol; }

}  // namespace otter::test
