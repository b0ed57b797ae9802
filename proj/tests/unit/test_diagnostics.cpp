#include <doctest.h>

#include <cmath>

#include "otter/diagnostics.hpp"

using namespace otter;

TEST_CASE("trend classification") {
  CHECK(classify_trend({1, 2, 3}) == Trend::Increasing);
  CHECK(classify_trend({3, 2, 1}) == Trend::Decreasing);
  CHECK(classify_trend({1, 1, 1}) == Trend::Constant);
  CHECK(classify_trend({1, 3, 2}) == Trend::Mixed);
  CHECK(to_string(Trend::Mixed) == "mixed");
}

TEST_CASE("dyadic Aitken removes a power-law correction") {
  auto at = [](std::size_t n) { return 2.0 + 3.0 / std::pow(static_cast<double>(n), 1.5); };
  Extrapolation e = aitken_dyadic(at, 2048, 64);
  CHECK(std::abs(e.value - 2.0) < 1e-9);
  CHECK(e.points >= 3);
}

TEST_CASE("Aitken on a geometric sequence is exact") {
  std::vector<double> x;
  for (int i = 0; i < 6; ++i) x.push_back(1.0 + std::pow(0.5, i));
  Extrapolation e = aitken_sequence(x);
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
  Extrapolation flat = aitken_sequence({4, 4, 4});
  CHECK(flat.value == 4);
}

TEST_CASE("reports keep references stable") {
  DiagnosticsReport rep;
  RatioSeries& a = rep.add("a");
  for (int i = 0; i < 50; ++i) rep.add("s" + std::to_string(i));
  a.push(1, 0.5);
  a.push(2, 0.25);
  a.finish();
  CHECK(rep.find("a").trend == Trend::Decreasing);
  CHECK(rep.find("a").last == 0.25);
  CHECK(rep.find("a").at(2) == 0.25);
  CHECK_THROWS(rep.find("missing"));
}
