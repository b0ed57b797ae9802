#include "otter/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "otter/error.hpp"
#include "otter/oracle.hpp"
#include "otter/sampler.hpp"
#include "otter/transforms.hpp"

namespace otter {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string g(double v) { return fmt("%.10g", v); }

// Monotone, and every step strictly closer to the target.
bool trends_toward(const std::vector<double>& v, double target) {
  Trend t = classify_trend(v);
  if (t != Trend::Increasing && t != Trend::Decreasing) return false;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(std::abs(v[i] - target) < std::abs(v[i - 1] - target))) return false;
  return true;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

CriterionResult oracle_equivalence(VerifyContext&) {
  CriterionResult r{1, "oracle equivalence", false, "", 0};
  auto t0 = std::chrono::steady_clock::now();
  auto rooted = rooted_trees(10);
  auto trees = free_trees(10);
  auto forest = forests(10);
  std::ostringstream bad;
  for (std::size_t n = 1; n <= 10; ++n) {
    if (rooted[n] != oracle::brute_force_count(oracle::TreeKind::Rooted, n)) bad << " rooted@" << n;
    if (trees[n] != oracle::brute_force_count(oracle::TreeKind::Free, n)) bad << " free@" << n;
  }
  for (std::size_t n = 0; n <= 10; ++n)
    if (forest[n] != oracle::brute_force_count(oracle::TreeKind::Forest, n)) bad << " forest@" << n;
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = bad.str().empty() && secs < 60;
  r.detail = bad.str().empty() ? "rooted, free, forest agree with enumeration for n <= 10" : "mismatch:" + bad.str();
  r.detail += ", " + fmt("%.2f", secs) + " s (limit 60 s)";
  return r;
}

CriterionResult transform_identities(VerifyContext& ctx) {
  CriterionResult r{2, "transform identities", false, "", 0};
  auto t0 = std::chrono::steady_clock::now();
  auto ones = WeightSequence::exact(std::vector<BigInt>(200, BigInt(1)));
  bool partitions_ok = multiset_transform(ones, 200) == partition_numbers(200);

  RngStream rng(ctx.seed(), 2);
  int round_trips = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng.next() % 60;
    std::vector<BigInt> w(n);
    for (auto& x : w) x = static_cast<unsigned long>(rng.next() % 101);
    auto back = inverse_multiset_transform(multiset_transform(WeightSequence::exact(w), n), n);
    if (back.exact_values() == w) ++round_trips;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = partitions_ok && round_trips == 100 && secs < 30;
  r.detail = std::string("partitions n<=200 ") + (partitions_ok ? "equal" : "DIFFER") + ", round trips " +
             std::to_string(round_trips) + "/100, " + fmt("%.2f", secs) + " s (limit 30 s)";
  return r;
}

CriterionResult alpha_criterion(VerifyContext& ctx) {
  CriterionResult r{3, "alpha and its fixed-point residual", false, "", 0};
  auto t0 = std::chrono::steady_clock::now();
  const auto& tables = ctx.tables();
  RealValue alpha = otter_alpha(tables, 15);
  AlphaReport rep = alpha_report(tables, alpha);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double a = alpha.to_double();
  double residual = rep.residual_at_lower.convert_to<double>();
  bool digits_ok = std::abs(a - 0.338) <= 5e-4 && std::abs(alpha.upper().convert_to<double>() - 0.338) <= 5e-4 &&
                   std::abs(alpha.lower().convert_to<double>() - 0.338) <= 5e-4;
  r.pass = digits_ok && residual < 1e-10 && secs < 120;
  r.detail = "alpha = " + alpha.to_string(20) + " (target 0.338 +- 5e-4), residual " + fmt("%.3e", residual) +
             " (limit 1e-10) at P=15 K=" + std::to_string(tables.size()) + ", " + fmt("%.2f", secs) +
             " s; truncated product brackets alpha: " + (rep.product_brackets_alpha ? "yes" : "no") +
             ", r(alpha) = 1 within tail: " + (rep.rooted_series_consistent ? "yes" : "no");
  return r;
}

CriterionResult beta_criterion(VerifyContext& ctx) {
  CriterionResult r{4, "beta extrapolation", false, "", 0};
  const auto& series = ctx.series();
  if (series.truncation() < 2000) {
    r.detail = "needs K >= 2000";
    return r;
  }
  BetaEstimate b = otter_beta(series, 2000);
  double beta = b.beta.to_double();
  double lhs = std::cbrt(2 * M_PI * beta * beta);
  r.pass = std::abs(beta - 0.534) <= 5e-3 && std::abs(lhs - b.ratio_limit) <= 1e-2;
  r.detail = "beta = " + g(beta) + " +- " + fmt("%.2e", b.beta.radius_double()) + " (target 0.534 +- 5e-3); (2 pi beta^2)^(1/3) = " +
             g(lhs) + " vs lim n t_n/r_n = " + g(b.ratio_limit) + " (diff " + fmt("%.2e", std::abs(lhs - b.ratio_limit)) +
             ", limit 1e-2)";
  return r;
}

CriterionResult moments_criterion(VerifyContext& ctx) {
  CriterionResult r{5, "limit mean and variance", false, "", 0};
  const auto& series = ctx.series();
  CumulantVector cum = limit_cumulants(series, 2);
  Pmf gamma = limit_pmf(series, 60);
  RealValue pmf_mean = gamma.mean() + RealValue(1L);
  RealValue pmf_var = gamma.variance();
  bool routes_agree = cum.mean.overlaps(pmf_mean) && cum.variance.overlaps(pmf_var);
  double mean = cum.mean.to_double(), var = cum.variance.to_double();
  bool mean_ok = std::abs(mean - 1.755) <= 1e-3 && std::abs(pmf_mean.to_double() - 1.755) <= 1e-3;
  bool var_ok = std::abs(var - 1.471) <= 1e-3 && std::abs(pmf_var.to_double() - 1.471) <= 1e-3;
  r.pass = mean_ok && var_ok && routes_agree;
  RealValue dws = divisor_weighted_series(series, 2, 100);
  r.detail = "mean " + cum.mean.to_string(10) + " (cumulants) / " + pmf_mean.to_string(10) +
             " (pmf) target 1.755: " + (mean_ok ? "ok" : "MISS") + "; variance " + cum.variance.to_string(10) +
             " (cumulants) / " + pmf_var.to_string(10) + " (pmf) target 1.471: " + (var_ok ? "ok" : "MISS") +
             "; routes agree: " + (routes_agree ? "yes" : "no") + "; sum_{k<=100} k t_k/(alpha^-k - 1) = " +
             dws.to_string(6);
  return r;
}

CriterionResult identity_criterion(VerifyContext& ctx) {
  CriterionResult r{6, "identity suite at P=30", false, "", 0};
  std::unique_ptr<OtterSeries> own;
  const OtterSeries* series = &ctx.series();
  if (ctx.digits() != 30) {
    own = std::make_unique<OtterSeries>(ctx.tables(), otter_alpha(ctx.tables(), 30));
    series = own.get();
  }
  ScopedPrecision guard(series->digits());
  RhoLambda rl = rho_and_lambda(*series);
  XiConstant xi = xi_constant(*series);
  RealValue one_a = rl.rho * exp(rl.lambda);
  RealValue one_b = rl.rho * (RealValue(1L) + series->forest_gf_at_alpha());
  bool a = one_a.contains(Float(1));
  bool b = one_b.contains(Float(1));
  bool c = xi.e_xi.overlaps(xi.e_xi_product);
  bool d = rl.lambda.overlaps(rl.lambda_atoms);
  r.pass = a && b && c && d;
  r.detail = std::string("rho e^lambda = ") + one_a.to_string(8) + (a ? " ok" : " FAIL") +
             "; rho (1 + f(alpha)) = " + one_b.to_string(8) + (b ? " ok" : " FAIL") + "; exp(xi) = " +
             xi.e_xi.to_string(10) + " vs product " + xi.e_xi_product.to_string(10) + (c ? " ok" : " FAIL") +
             "; lambda = " + rl.lambda.to_string(10) + " vs sum tau " + rl.lambda_atoms.to_string(10) +
             (d ? " ok" : " FAIL");
  return r;
}

CriterionResult otter_distribution_criterion(VerifyContext& ctx) {
  CriterionResult r{7, "Otter's distribution sums to 1", false, "", 0};
  const auto& series = ctx.series();
  if (series.truncation() < 5000) {
    r.detail = "needs K >= 5000";
    return r;
  }
  ScopedPrecision guard(series.digits());
  HatPResult at_alpha = hat_p_family(series, series.alpha(), 5000);
  RealValue partial(0L);
  for (const auto& p : at_alpha.pmf.probs) partial += p;
  bool in_window = partial.lower() >= 1 - Float("1e-4") && partial.upper() <= 1;
  RealValue with_tail = at_alpha.pmf.total();
  bool tail_closes = with_tail.contains(Float(1));

  HatPResult half = hat_p_family(series, series.alpha() / 2L, 200);
  RealValue total_half = half.pmf.total();
  Float dev = abs(total_half.value() - 1) + total_half.radius();
  bool half_ok = dev <= Float("1e-10");
  r.pass = in_window && tail_closes && half_ok;
  r.detail = "sum_{n<=5000} rho alpha^n f_n = " + partial.to_string(10) + (in_window ? " in" : " NOT in") +
             " [1-1e-4, 1]; with certified tail " + at_alpha.pmf.tail_mass.str(3) + ": " + with_tail.to_string(10) +
             (tail_closes ? " contains 1" : " misses 1") + "; a = alpha/2, N=200: |sum - 1| <= " +
             Float(dev).str(3) + (half_ok ? " ok" : " FAIL") + "; Levy atoms recovered from p nonnegative: " +
             (at_alpha.atoms_nonnegative && half.atoms_nonnegative ? "yes" : "no");
  return r;
}

CriterionResult hawkes_jenkins_criterion(VerifyContext& ctx) {
  CriterionResult r{8, "p_n / tau_n -> 1", false, "", 0};
  const auto& series = ctx.series();
  DiagnosticsReport rep = levy_ratio_diagnostics(series, 2000);
  const auto& s = rep.find("p_over_tau");
  std::vector<double> window;
  for (std::size_t n = 100; n <= 2000; ++n) window.push_back(s.at(n));
  Trend t = classify_trend(window);
  bool mono = t == Trend::Increasing || t == Trend::Decreasing;
  bool close = std::abs(s.extrapolated - 1) <= 1e-3;
  r.pass = mono && close;
  r.detail = "rho alpha^n f_n / tau_n over n in [100, 2000] is " + to_string(t) + " (" + g(s.at(100)) + " -> " +
             g(s.at(2000)) + "); Aitken limit " + g(s.extrapolated) + " +- " + fmt("%.1e", s.radius) +
             " (limit |x - 1| <= 1e-3)";
  return r;
}

CriterionResult convergence_criterion(VerifyContext& ctx) {
  CriterionResult r{9, "distributional convergence", false, "", 0};
  const std::vector<std::size_t> grid{50, 100, 200, 400};
  DiagnosticsReport rep = convergence_report(ctx.series(), ctx.counts(), grid);
  const auto& tv = rep.find("tv");
  const auto& mean = rep.find("mean");
  const auto& var = rep.find("variance");
  bool tv_ok = strictly_decreasing(tv.ratio) && tv.extrapolated < 1e-2;
  bool mean_ok = trends_toward(mean.ratio, 1.755);
  bool var_ok = trends_toward(var.ratio, 1.471);
  r.pass = tv_ok && mean_ok && var_ok;
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ", ") + fmt("%.5g", x);
    return s;
  };
  r.detail = "TV(n=50..400) = " + list(tv.ratio) + ", extrapolated " + fmt("%.2e", tv.extrapolated) +
             (tv_ok ? " ok" : " FAIL") + "; E(T_n) = " + list(mean.ratio) + " -> " + fmt("%.5g", mean.extrapolated) +
             (mean_ok ? " toward 1.755 ok" : " not toward 1.755") + "; Var(T_n) = " + list(var.ratio) + " -> " +
             fmt("%.5g", var.extrapolated) + (var_ok ? " toward 1.471 ok" : " not toward 1.471") +
             " (limit-law variance " + fmt("%.6g", rep.scalars.at("limit_variance")) + ")";
  return r;
}

CriterionResult ui_criterion(VerifyContext& ctx) {
  CriterionResult r{10, "uniform-integrability witness", false, "", 0};
  RatioSeries s = uniform_integrability_witness(ctx.counts(), {50, 100, 200, 400});
  bool finite = true;
  for (double v : s.ratio) finite = finite && std::isfinite(v);
  bool non_increasing = s.at(200) <= s.at(100) && s.at(400) <= s.at(200);
  r.pass = finite && non_increasing;
  r.detail = "sup_k k^(3/2) P(T_n > k) at n = 50, 100, 200, 400: " + g(s.ratio[0]) + ", " + g(s.ratio[1]) + ", " +
             g(s.ratio[2]) + ", " + g(s.ratio[3]) + (non_increasing ? " (non-increasing from 100)" : " (increases)");
  return r;
}

CriterionResult cycle_index_criterion(VerifyContext& ctx) {
  CriterionResult r{11, "cycle-index asymptotics", false, "", 0};
  DiagnosticsReport tree = tree_cycle_index_asymptotics(ctx.series(), 2000);
  const auto& zr = tree.find("ratio");
  std::vector<RealValue> nu;
  nu.reserve(2000);
  {
    ScopedPrecision guard(30);
    for (std::size_t k = 1; k <= 2000; ++k) nu.push_back(RealValue(pow(Float(k), Float("-2.5"))));
  }
  DiagnosticsReport gen = generalized_asymptotics(WeightSequence::real(std::move(nu)), Envelope::polynomial(1, 2.5), 2000);
  const auto& gr = gen.find("ratio");
  bool a = std::abs(zr.extrapolated - 1) <= 1e-3;
  bool b = std::abs(gr.extrapolated - 1) <= 1e-3;
  r.pass = a && b;
  r.detail = "zeta_n/(e^xi alpha^n): n=2000 " + g(zr.at(2000)) + ", Aitken " + g(zr.extrapolated) +
             (a ? " ok" : " FAIL") + "; nu_n = n^-5/2: Z_n/(e^lambda nu_n) n=2000 " + g(gr.at(2000)) + ", Aitken " +
             g(gr.extrapolated) + " +- " + fmt("%.1e", gr.radius) + (b ? " ok" : " FAIL");
  return r;
}

CriterionResult sampler_criterion(VerifyContext& ctx) {
  CriterionResult r{12, "sampler validation", false, "", 0};
  auto t0 = std::chrono::steady_clock::now();
  const auto& tables = ctx.tables();
  EmpiricalReport r3 = empirical_report(tables, 3, 100000, ctx.seed());
  EmpiricalReport r8 = empirical_report(tables, 8, 100000, ctx.seed() + 1);
  EmpiricalReport r100 = empirical_report(tables, 100, 100000, ctx.seed() + 2);

  auto draw = [&](std::uint64_t seed) {
    ForestSampler sampler(tables, 100);
    RngStream rng(seed, 0);
    std::ostringstream out;
    for (int i = 0; i < 2000; ++i) {
      ForestProfile p = sampler.sample(100, rng);
      out << p.n << ',' << p.trees() << ',' << p.largest() << '\n';
    }
    return out.str();
  };
  bool reproducible = draw(ctx.seed()) == draw(ctx.seed());
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool z_ok = r3.max_profile_z <= 5 && r8.max_profile_z <= 5;
  bool chi_ok = r100.chi.p_value > 1e-3;
  r.pass = z_ok && chi_ok && reproducible && secs < 120;
  r.detail = "max |z| over profiles: n=3 " + fmt("%.2f", r3.max_profile_z) + ", n=8 " + fmt("%.2f", r8.max_profile_z) +
             " (limit 5); n=100 chi-square " + fmt("%.2f", r100.chi.statistic) + " on " + std::to_string(r100.chi.dof) +
             " dof, p = " + fmt("%.4f", r100.chi.p_value) + " (limit > 0.001); same seed reproduces output: " +
             (reproducible ? "yes" : "no") + ", " + fmt("%.2f", secs) + " s (limit 120 s)";
  return r;
}

}  // namespace

VerifyContext::VerifyContext(unsigned digits, std::size_t truncation, std::uint64_t seed)
    : digits_(digits), truncation_(truncation), seed_(seed) {
  if (digits < 15) throw PreconditionError("verify: digits must be >= 15");
  if (truncation < 2000) throw PreconditionError("verify: truncation must be >= 2000");
}

const TreeTables& VerifyContext::tables() {
  if (!tables_) tables_ = TreeTables::compute(truncation_);
  return *tables_;
}

const OtterSeries& VerifyContext::series() {
  if (!series_) series_ = std::make_unique<OtterSeries>(tables(), otter_alpha(tables(), digits_));
  return *series_;
}

const ComponentCounts& VerifyContext::counts() {
  if (!counts_) counts_ = std::make_unique<ComponentCounts>(tables().trees, 400);
  return *counts_;
}

CriterionResult run_criterion(int id, VerifyContext& ctx) {
  static const std::vector<std::function<CriterionResult(VerifyContext&)>> table{
      oracle_equivalence,       transform_identities,   alpha_criterion,       beta_criterion,
      moments_criterion,        identity_criterion,     otter_distribution_criterion,
      hawkes_jenkins_criterion, convergence_criterion,  ui_criterion,          cycle_index_criterion,
      sampler_criterion};
  if (id < 1 || id > kCriterionCount) throw PreconditionError("no criterion " + std::to_string(id));
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = table[static_cast<std::size_t>(id - 1)](ctx);
  } catch (const std::exception& e) {
    static const char* const names[kCriterionCount] = {
        "oracle equivalence",        "transform identities",         "alpha and its fixed-point residual",
        "beta extrapolation",        "limit mean and variance",      "identity suite at P=30",
        "Otter's distribution sums to 1", "p_n / tau_n -> 1",        "distributional convergence",
        "uniform-integrability witness",  "cycle-index asymptotics", "sampler validation"};
    r.id = id;
    r.name = names[id - 1];
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "sequences") return {1, 2};
  if (suite == "identities") return {3, 4, 6, 7};
  if (suite == "asymptotics") return {5, 8, 9, 10, 11};
  if (suite == "sampler") return {12};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  throw PreconditionError("unknown suite '" + suite + "' (expected sequences|identities|asymptotics|sampler|all)");
}

std::string format_result(const CriterionResult& r) {
  return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " + r.detail +
         " (" + fmt("%.2f", r.seconds) + " s)";
}

}  // namespace otter
