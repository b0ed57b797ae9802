#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <string>
#include <vector>

namespace otter {

enum class Trend { Increasing, Decreasing, Constant, Mixed };

std::string to_string(Trend t);

/// Direction of a finite sequence from its consecutive differences.
Trend classify_trend(const std::vector<double>& v);

struct Extrapolation {
  double value = 0;
  double radius = 0;  // heuristic: spread of the last two accelerants
  std::size_t points = 0;
};

/// Aitken delta-squared over the dyadic subsequence n_max, n_max/2, ...
/// (n >= n_min), taken in increasing n. Power-law corrections c n^-s become
/// geometric in the dyadic index, which is what the Aitken step removes.
/// `at(n)` must be defined for every n visited.
template <typename F>
Extrapolation aitken_dyadic(F&& at, std::size_t n_max, std::size_t n_min);

/// Aitken delta-squared over an explicit list of samples (increasing index).
Extrapolation aitken_sequence(const std::vector<double>& x);

/// One labelled sequence of values with its trend verdict.
struct RatioSeries {
  std::string label;
  std::vector<std::size_t> n;
  std::vector<double> ratio;
  Trend trend = Trend::Mixed;
  double last = 0;
  double extrapolated = 0;
  double radius = 0;

  void push(std::size_t index, double value) {
    n.push_back(index);
    ratio.push_back(value);
  }
  /// Fills trend (over indices >= from) and last.
  void finish(std::size_t from = 0);
  double at(std::size_t index) const;
};

struct DiagnosticsReport {
  std::string title;
  std::deque<RatioSeries> series;  // references from add() stay valid
  std::map<std::string, double> scalars;

  const RatioSeries& find(const std::string& label) const;
  RatioSeries& add(std::string label);
};

template <typename F>
Extrapolation aitken_dyadic(F&& at, std::size_t n_max, std::size_t n_min) {
  std::vector<std::size_t> idx;
  for (std::size_t n = n_max; n >= n_min && n >= 1; n /= 2) idx.insert(idx.begin(), n);
  std::vector<double> x;
  x.reserve(idx.size());
  for (std::size_t n : idx) x.push_back(at(n));
  return aitken_sequence(x);
}

}  // namespace otter
