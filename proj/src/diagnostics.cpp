#include "otter/diagnostics.hpp"

#include <cmath>

#include "otter/error.hpp"

namespace otter {

std::string to_string(Trend t) {
  switch (t) {
    case Trend::Increasing:
      return "increasing";
    case Trend::Decreasing:
      return "decreasing";
    case Trend::Constant:
      return "constant";
    case Trend::Mixed:
      break;
  }
  return "mixed";
}

Trend classify_trend(const std::vector<double>& v) {
  if (v.size() < 2) return Trend::Constant;
  bool up = false, down = false;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1]) up = true;
    if (v[i] < v[i - 1]) down = true;
  }
  if (up && down) return Trend::Mixed;
  if (up) return Trend::Increasing;
  if (down) return Trend::Decreasing;
  return Trend::Constant;
}

Extrapolation aitken_sequence(const std::vector<double>& x) {
  Extrapolation e;
  e.points = x.size();
  if (x.empty()) return e;
  if (x.size() < 3) {
    e.value = x.back();
    e.radius = x.size() == 2 ? std::abs(x[1] - x[0]) : 0;
    return e;
  }
  std::vector<double> acc;
  for (std::size_t i = 2; i < x.size(); ++i) {
    double d1 = x[i] - x[i - 1], d0 = x[i - 1] - x[i - 2];
    double denom = d1 - d0;
    // A vanishing second difference means the sequence is already flat.
    if (denom == 0 || std::abs(denom) < 1e-15 * std::abs(x[i]))
      acc.push_back(x[i]);
    else
      acc.push_back(x[i] - d1 * d1 / denom);
  }
  e.value = acc.back();
  e.radius = acc.size() >= 2 ? std::abs(acc.back() - acc[acc.size() - 2]) : std::abs(acc.back() - x.back());
  return e;
}

void RatioSeries::finish(std::size_t from) {
  std::vector<double> tail;
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] >= from) tail.push_back(ratio[i]);
  trend = classify_trend(tail);
  last = ratio.empty() ? 0 : ratio.back();
}

double RatioSeries::at(std::size_t index) const {
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] == index) return ratio[i];
  throw PreconditionError("series '" + label + "' has no entry at n = " + std::to_string(index));
}

const RatioSeries& DiagnosticsReport::find(const std::string& label) const {
  for (const auto& s : series)
    if (s.label == label) return s;
  throw PreconditionError("report '" + title + "' has no series '" + label + "'");
}

RatioSeries& DiagnosticsReport::add(std::string label) {
  series.emplace_back();
  series.back().label = std::move(label);
  return series.back();
}

}  // namespace otter
