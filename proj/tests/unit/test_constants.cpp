#include <doctest.h>

#include <cmath>

#include "fixture.hpp"
#include "otter/limitdist.hpp"

using namespace otter;
using otter::test::near;
using otter::test::series30;
using otter::test::tables5000;

namespace {

double log_ratio(const BigInt& a, const BigInt& b) {
  long ea = 0, eb = 0;
  double ma = mpz_get_d_2exp(&ea, a.get_mpz_t());
  double mb = mpz_get_d_2exp(&eb, b.get_mpz_t());
  return std::log(ma / mb) + static_cast<double>(ea - eb) * std::log(2.0);
}

}  // namespace

TEST_CASE("alpha to three and seven digits") {
  RealValue a15 = otter_alpha(tables5000(), 15);
  CHECK(near(a15.to_double(), 0.338, 5e-4));
  CHECK(near(a15.to_double(), 0.3383219, 5e-8));
  CHECK(a15.radius() < Float("1e-16"));
}

TEST_CASE("alpha agrees with published digits and the coefficient ratio") {
  const RealValue& a = series30().alpha();
  ScopedPrecision guard(40);
  // A051491
  CHECK(abs(a.value() - Float("0.3383218568992076951961126")) < Float("1e-24"));
  // r_n ~ c alpha^-n n^-3/2, so r_n / r_{n+1} (1 + 1/n)^(-3/2) -> alpha with O(n^-2) error.
  const auto& r = tables5000().rooted;
  std::size_t n = 4000;
  double est = std::exp(log_ratio(r[n], r[n + 1])) * std::pow(1.0 + 1.0 / n, -1.5);
  CHECK(near(est, a.to_double(), 1e-6));
}

TEST_CASE("alpha cross-checks in the product form") {
  AlphaReport rep = alpha_report(tables5000(), otter_alpha(tables5000(), 15));
  CHECK(rep.residual_at_lower < Float("1e-10"));
  CHECK(rep.product_brackets_alpha);
  CHECK(rep.rooted_series_consistent);
}

TEST_CASE("alpha refuses tables too short to certify") {
  auto small = TreeTables::compute(40);
  CHECK_THROWS_AS(otter_alpha(small, 30), CertificationError);
}

TEST_CASE("beta") {
  BetaEstimate b = otter_beta(series30(), 2000);
  CHECK(near(b.beta.to_double(), 0.534, 5e-3));
  // A086308
  CHECK(near(b.beta.to_double(), 0.5349496061, 1e-7));
  CHECK(near(std::cbrt(2 * M_PI * b.beta.to_double() * b.beta.to_double()), b.ratio_limit, 1e-2));
  CHECK_THROWS_AS(otter_beta(series30(), 199), PreconditionError);
}

TEST_CASE("tree generating function") {
  const auto& s = series30();
  ScopedPrecision guard(s.digits());
  RealValue tiny(Float("1e-8"));
  RealValue ratio = s.tree_gf(tiny) / tiny;
  CHECK(abs(ratio.value() - 1) < Float("1e-7"));
  RealValue t1 = s.tree_gf_power(1), t2 = s.tree_gf_power(2);
  CHECK(t2.upper() < t1.lower());
  CHECK(t1.upper() < 1);
  CHECK(s.tree_gf(s.alpha()).overlaps(t1));
  CHECK(t2.upper() <= s.tree_gf_power_bound(2));
  CHECK_THROWS(s.tree_gf(RealValue(Float("0.5"))));
}

TEST_CASE("rho and lambda") {
  const auto& s = series30();
  ScopedPrecision guard(s.digits());
  RhoLambda rl = rho_and_lambda(s);
  CHECK((rl.rho * exp(rl.lambda)).contains(Float(1)));
  CHECK(rl.rho.overlaps(rl.rho_product));
  CHECK(rl.lambda.overlaps(rl.lambda_atoms));
  CHECK((rl.rho * (RealValue(1L) + s.forest_gf_at_alpha())).contains(Float(1)));
  // gamma_0 = rho is the limit of t_n / f_n.
  const auto& tab = tables5000();
  double tf = std::exp(log_ratio(tab.trees[5000], tab.forest[5000]));
  CHECK(near(tf, rl.rho.to_double(), 1e-3));
  CumulantVector cum = limit_cumulants(s, 2);
  CHECK(rl.lambda.is_positive());
  CHECK(rl.lambda.upper() < (cum.mean - RealValue(1L)).lower());
}

TEST_CASE("xi and its product form") {
  const auto& s = series30();
  XiConstant xi = xi_constant(s);
  CHECK(xi.e_xi.overlaps(xi.e_xi_product));
  CHECK(xi.e_xi.lower() > 1);
  CHECK(near(xi.xi.to_double(), 0.755831517, 1e-5));
  // The product's certified polynomial tail dominates the radius.
  CHECK(xi.e_xi.radius() < Float("1e-5"));
}

TEST_CASE("limit cumulants") {
  const auto& s = series30();
  CumulantVector cum = limit_cumulants(s, 4);
  REQUIRE(cum.kappa.size() == 4);
  CHECK(near(cum.mean.to_double(), 1.755, 1e-3));
  CHECK(cum.mean.overlaps(cum.mean_via_gf));
  CHECK(cum.kappa[1].value() == cum.variance.value());
  CHECK((cum.kappa[0] + RealValue(1L)).overlaps(cum.mean));
  CHECK_THROWS_AS(limit_cumulants(s, 1), PreconditionError);
}

TEST_CASE("limit variance by pmf moments, and the k <= 100 divisor series") {
  const auto& s = series30();
  CumulantVector cum = limit_cumulants(s, 2);
  Pmf gamma = limit_pmf(s, 60);
  CHECK(cum.variance.overlaps(gamma.variance()));
  CHECK(near(cum.variance.to_double(), 1.0357057, 1e-6));
  // sum_{k<=100} k t_k / (alpha^-k - 1) reproduces the figure 1.471; it keeps
  // growing with the cutoff, so it is not the variance of the limit law.
  RealValue d100 = divisor_weighted_series(s, 2, 100);
  RealValue d1000 = divisor_weighted_series(s, 2, 1000);
  CHECK(near(d100.to_double(), 1.4717, 1e-3));
  CHECK(d1000.lower() > d100.upper() + Float("0.05"));
  RealValue m1 = divisor_weighted_series(s, 1, 5000);
  CHECK(near(m1.to_double() + 1, cum.mean.to_double(), 1e-5));
}

TEST_CASE("compute_constants bundles the same values") {
  auto ctx = PrecisionContext::make(100, 20, 5000);
  OtterConstants c = compute_constants(tables5000(), ctx);
  CHECK(c.alpha.overlaps(series30().alpha()));
  CHECK(near(c.rho.to_double(), 0.5228416819, 1e-8));
  CHECK(near(c.lambda.to_double(), 0.6484765722, 1e-8));
  CHECK(near(c.e_xi.to_double(), 2.1293814, 1e-5));
}
