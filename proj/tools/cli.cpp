#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "otter/constants.hpp"
#include "otter/error.hpp"
#include "otter/limitdist.hpp"
#include "otter/sampler.hpp"
#include "otter/sequences.hpp"
#include "otter/verify.hpp"
#include "otter/weights_io.hpp"

namespace otter::cli {

namespace {

using nlohmann::json;

// Thrown for invalid flag values detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::size_t n = 0;
  bool n_given = false;
  unsigned digits = 30;
  std::size_t truncation = 5000;
  std::uint64_t seed = 0;
  std::string format;
  std::string kind;
  std::string suite = "all";
  std::string weights;
  std::string builtin;
  bool limit = false;
  std::size_t max_k = 60;
  std::size_t count = 0;
  bool raw = false;
  double envelope_exponent = 2.5;
  bool finite_support = false;
};

std::optional<std::uint64_t> env_number(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  std::string s(v);
  if (!std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw UsageError(std::string(name) + "='" + s + "' is not a nonnegative integer");
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw UsageError(std::string(name) + "='" + s + "' is out of range");
  }
}

json real_json(const RealValue& x, int digits) {
  return json{{"value", x.value().str(digits)}, {"radius", Float(x.radius()).str(3)}};
}

json report_json(const DiagnosticsReport& rep) {
  json out{{"title", rep.title}, {"scalars", json::object()}, {"series", json::array()}};
  for (const auto& [k, v] : rep.scalars) out["scalars"][k] = v;
  for (const auto& s : rep.series) {
    json rows = json::array();
    for (std::size_t i = 0; i < s.n.size(); ++i) rows.push_back({{"n", s.n[i]}, {"ratio", s.ratio[i]}});
    out["series"].push_back({{"label", s.label},
                             {"trend", to_string(s.trend)},
                             {"last", s.last},
                             {"extrapolated", s.extrapolated},
                             {"radius", s.radius},
                             {"rows", rows}});
  }
  return out;
}

std::string fixed(double v, int prec = 10) {
  std::ostringstream o;
  o << std::setprecision(prec) << v;
  return o.str();
}

void check_format(const RunConfig& c, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (c.format == a) return;
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
  throw UsageError("--format " + c.format + " is not supported by '" + c.command + "' (expected " + list + ")");
}

void check_precision(const RunConfig& c) {
  if (c.digits < 15) throw UsageError("--digits must be >= 15 (got " + std::to_string(c.digits) + ")");
  if (c.truncation < 200) throw UsageError("--truncation must be >= 200 (got " + std::to_string(c.truncation) + ")");
}

int cmd_seq(const RunConfig& c, std::ostream& out) {
  check_format(c, {"csv", "json", "text"});
  static const std::vector<std::string> kinds{"rooted", "free", "forest", "partition"};
  if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end())
    throw UsageError("--kind '" + c.kind + "' is not one of rooted|free|forest|partition");
  const bool from_zero = c.kind == "forest" || c.kind == "partition";
  if (!from_zero && c.n < 1) throw UsageError("--n must be >= 1 for kind " + c.kind);
  IntegerSequence seq;
  if (c.kind == "rooted") seq = rooted_trees(c.n);
  if (c.kind == "free") seq = free_trees(c.n);
  if (c.kind == "forest") seq = forests(c.n);
  if (c.kind == "partition") seq = partition_numbers(c.n);
  if (c.format == "json") {
    json rows = json::array();
    for (std::size_t k = seq.offset(); k <= seq.last_index(); ++k) rows.push_back({{"n", k}, {"value", seq[k].get_str()}});
    out << json{{"kind", c.kind}, {"rows", rows}}.dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "n,value\n";
    for (std::size_t k = seq.offset(); k <= seq.last_index(); ++k) out << k << ',' << seq[k].get_str() << '\n';
  } else {
    for (std::size_t k = seq.offset(); k <= seq.last_index(); ++k)
      out << std::setw(6) << k << "  " << seq[k].get_str() << '\n';
  }
  return kExitOk;
}

int cmd_constants(const RunConfig& c, std::ostream& out) {
  check_format(c, {"json", "csv", "text"});
  check_precision(c);
  auto tables = TreeTables::compute(c.truncation);
  RealValue alpha = otter_alpha(tables, c.digits);
  OtterSeries series(tables, alpha);
  BetaEstimate beta = otter_beta(series, std::min<std::size_t>(series.truncation(), 2000));
  RhoLambda rl = rho_and_lambda(series);
  XiConstant xi = xi_constant(series);
  CumulantVector cum = limit_cumulants(series, 4);
  const int d = static_cast<int>(c.digits);
  std::vector<std::pair<std::string, RealValue>> rows{
      {"alpha", alpha},   {"beta", beta.beta},      {"rho", rl.rho},     {"lambda", rl.lambda},
      {"xi", xi.xi},      {"e_xi", xi.e_xi},        {"mean", cum.mean},  {"variance", cum.variance},
      {"kappa_3", cum.kappa[2]}, {"kappa_4", cum.kappa[3]}};
  if (c.format == "json") {
    json j{{"digits", c.digits}, {"truncation", c.truncation}};
    for (const auto& [name, v] : rows) j[name] = real_json(v, d);
    j["beta_cross_check"] = {{"ratio_limit", beta.ratio_limit}, {"from_ratio", beta.from_ratio},
                             {"last_raw", beta.last_raw}};
    out << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "name,value,radius\n";
    for (const auto& [name, v] : rows) out << name << ',' << v.value().str(d) << ',' << Float(v.radius()).str(3) << '\n';
  } else {
    for (const auto& [name, v] : rows) out << std::left << std::setw(10) << name << v.to_string(d) << '\n';
  }
  return kExitOk;
}

int cmd_dist(const RunConfig& c, std::ostream& out) {
  check_format(c, {"csv", "json", "text"});
  std::vector<std::pair<std::size_t, std::string>> rows;
  std::vector<std::string> exact, radii;
  std::string tail = "0";
  if (c.limit) {
    if (c.n_given) throw UsageError("--limit and --n are mutually exclusive");
    check_precision(c);
    auto tables = TreeTables::compute(c.truncation);
    OtterSeries series(tables, otter_alpha(tables, c.digits));
    Pmf gamma = limit_pmf(series, c.max_k);
    // Rows are numbers of trees, 1 + P.
    for (std::size_t j = 0; j < gamma.size(); ++j) {
      rows.emplace_back(j + 1, gamma.probs[j].value().str(20));
      radii.push_back(Float(gamma.probs[j].radius()).str(3));
    }
    tail = gamma.tail_mass.str(3);
  } else {
    if (!c.n_given) throw UsageError("dist needs --n or --limit");
    auto trees = free_trees(std::max<std::size_t>(c.n, 1));
    Pmf p = exact_component_pmf(c.n, trees);
    for (std::size_t i = 0; i < p.size(); ++i) {
      rows.emplace_back(p.offset + i, p.probs[i].value().str(20));
      radii.push_back(Float(p.probs[i].radius()).str(3));
      exact.push_back(p.exact[i].get_str());
    }
  }
  if (c.format == "json") {
    json r = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      json row{{"k", rows[i].first}, {"probability", rows[i].second}, {"radius", radii[i]}};
      if (!exact.empty()) row["exact"] = exact[i];
      r.push_back(row);
    }
    out << json{{"law", c.limit ? "limit" : "exact"}, {"n", c.limit ? json(nullptr) : json(c.n)}, {"tail_mass", tail},
                {"rows", r}}
               .dump(2)
        << '\n';
  } else if (c.format == "csv") {
    out << "k,probability\n";
    for (const auto& [k, p] : rows) out << k << ',' << p << '\n';
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i)
      out << std::setw(6) << rows[i].first << "  " << rows[i].second << (exact.empty() ? "" : "  " + exact[i]) << '\n';
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  check_format(c, {"text", "json"});
  check_precision(c);
  auto ids = suite_criteria(c.suite);
  VerifyContext ctx(c.digits, c.truncation, c.seed);
  bool all = true;
  json results = json::array();
  for (int id : ids) {
    CriterionResult r = run_criterion(id, ctx);
    all = all && r.pass;
    if (c.format == "text") out << format_result(r) << std::endl;
    results.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
  }
  if (c.format == "json") out << json{{"suite", c.suite}, {"pass", all}, {"results", results}}.dump(2) << '\n';
  return all ? kExitOk : kExitFailure;
}

int cmd_asymptotics(const RunConfig& c, std::ostream& out) {
  check_format(c, {"csv", "json", "text"});
  if (c.builtin.empty() == c.weights.empty()) throw UsageError("asymptotics needs exactly one of --builtin or --weights");
  if (!c.builtin.empty() && c.builtin != "trees") throw UsageError("--builtin '" + c.builtin + "' is not 'trees'");
  DiagnosticsReport rep;
  if (!c.builtin.empty()) {
    check_precision(c);
    std::size_t n = c.n_given ? c.n : 2000;
    auto tables = TreeTables::compute(std::max(c.truncation, n));
    OtterSeries series(tables, otter_alpha(tables, c.digits));
    rep = tree_cycle_index_asymptotics(series, n);
  } else {
    ScopedPrecision guard(working_digits(c.digits));
    WeightSequence nu;
    try {
      nu = read_weight_file(c.weights);
    } catch (const ParseError& e) {
      throw UsageError(std::string("--weights ") + c.weights + ": " + e.what());
    }
    std::size_t n = c.n_given ? c.n : nu.size();
    if (n > nu.size())
      throw UsageError("--n " + std::to_string(n) + " exceeds the " + std::to_string(nu.size()) + " weights in the file");
    Envelope env = Envelope::finite();
    if (!c.finite_support) {
      if (c.envelope_exponent <= 1) throw UsageError("--envelope-exponent must be > 1 for a summable tail");
      std::vector<RealValue> u;
      for (std::size_t k = 1; k <= nu.size(); ++k) u.push_back(nu.real_at(k));
      env = Envelope::fit_polynomial(u, std::max<std::size_t>(1, nu.size() / 2), Float(c.envelope_exponent));
    }
    rep = generalized_asymptotics(nu, env, n);
  }
  const auto& ratio = rep.find("ratio");
  if (c.format == "json") {
    out << report_json(rep).dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "n,ratio\n";
    for (std::size_t i = 0; i < ratio.n.size(); ++i) out << ratio.n[i] << ',' << fixed(ratio.ratio[i], 17) << '\n';
  } else {
    out << rep.title << ": trend " << to_string(ratio.trend) << ", last " << fixed(ratio.last) << ", extrapolated "
        << fixed(ratio.extrapolated) << " +- " << fixed(ratio.radius, 3) << '\n';
    for (std::size_t i = 0; i < ratio.n.size(); ++i)
      out << std::setw(8) << ratio.n[i] << "  " << fixed(ratio.ratio[i], 15) << '\n';
  }
  return kExitOk;
}

int cmd_sample(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_format(c, {"csv", "json", "text"});
  if (!c.n_given) throw UsageError("sample needs --n");
  if (c.count < 1) throw UsageError("--count must be >= 1");
  // For n <= 1 there is a single profile, so no goodness-of-fit summary exists.
  const bool degenerate = c.n <= 1;
  if (c.count < kMinChiSquareSamples && !c.raw && !degenerate)
    throw UsageError("--count " + std::to_string(c.count) + " is below the chi-square minimum of 1000 (use --raw)");
  if (c.raw && c.format != "csv") throw UsageError("--raw emits rows only, use --format csv");
  auto tables = TreeTables::compute(std::max<std::size_t>(c.n, 1));
  if (c.format == "csv") {
    ForestSampler sampler(tables, std::min<std::size_t>(c.n, 256));
    RngStream rng(c.seed, 0);
    out << "n,trees,largest\n";
    for (std::size_t i = 0; i < c.count; ++i) {
      ForestProfile p = sampler.sample(c.n, rng);
      out << p.n << ',' << p.trees() << ',' << p.largest() << '\n';
    }
    if (c.raw || degenerate) return kExitOk;
  }
  if (degenerate) throw UsageError("--n " + std::to_string(c.n) + " has a single profile, use --format csv");
  EmpiricalReport rep = empirical_report(tables, c.n, c.count, c.seed);
  json j{{"n", rep.n},
         {"samples", rep.samples},
         {"seed", rep.seed},
         {"mean", rep.mean},
         {"mean_se", rep.mean_se},
         {"variance", rep.variance},
         {"variance_se", rep.variance_se},
         {"exact_mean", rep.exact_mean},
         {"exact_variance", rep.exact_variance},
         {"chi_square", {{"statistic", rep.chi.statistic}, {"dof", rep.chi.dof}, {"p_value", rep.chi.p_value}}},
         {"tree_counts", json::array()},
         {"largest", json::array()},
         {"profiles", json::array()}};
  for (std::size_t k = 0; k < rep.tree_counts.size(); ++k)
    if (rep.tree_counts[k] || rep.tree_expected[k] > 0)
      j["tree_counts"].push_back({{"k", k}, {"observed", rep.tree_counts[k]}, {"expected", rep.tree_expected[k]}});
  for (std::size_t m = 0; m < rep.largest_counts.size(); ++m)
    if (rep.largest_counts[m] || rep.largest_expected[m] > 0)
      j["largest"].push_back({{"size", m}, {"observed", rep.largest_counts[m]}, {"expected", rep.largest_expected[m]}});
  for (const auto& cell : rep.profiles) {
    json parts = json::array();
    for (const auto& [size, count] : cell.parts) parts.push_back({size, count});
    j["profiles"].push_back({{"parts", parts}, {"observed", cell.observed}, {"expected", cell.expected}, {"z", cell.z}});
  }
  if (c.format == "json") {
    out << j.dump(2) << '\n';
  } else {
    std::ostream& s = c.format == "csv" ? err : out;
    s << "n=" << rep.n << " samples=" << rep.samples << " seed=" << rep.seed << '\n'
      << "mean trees " << fixed(rep.mean, 6) << " +- " << fixed(rep.mean_se, 2) << " (exact " << fixed(rep.exact_mean, 6)
      << ")\n"
      << "variance " << fixed(rep.variance, 6) << " +- " << fixed(rep.variance_se, 2) << " (exact "
      << fixed(rep.exact_variance, 6) << ")\n"
      << "chi-square " << fixed(rep.chi.statistic, 5) << " on " << rep.chi.dof << " dof, p = " << fixed(rep.chi.p_value, 4)
      << '\n';
    double big = 0, big_exact = 0;
    std::size_t threshold = (4 * rep.n + 4) / 5;
    for (std::size_t m = threshold; m < rep.largest_counts.size(); ++m) {
      big += static_cast<double>(rep.largest_counts[m]) / static_cast<double>(rep.samples);
      big_exact += rep.largest_expected[m];
    }
    s << "P(largest >= " << threshold << ") empirical " << fixed(big, 6) << ", exact " << fixed(big_exact, 6) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Exact tree and forest enumeration, Otter constants and forest limit laws"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "otter 0.1.0");

  auto add_precision = [&](CLI::App* sub) {
    sub->add_option("--digits,-P", c.digits, "decimal digits for real arithmetic (env OTTER_DIGITS, default 30)");
    sub->add_option("--truncation,-K", c.truncation, "series truncation K (default 5000)");
  };
  auto add_format = [&](CLI::App* sub, const std::string& def) {
    sub->add_option("--format", c.format, "output format: json|csv|text (default " + def + ")")
        ->check(CLI::IsMember({"json", "csv", "text"}));
  };

  auto* seq = app.add_subcommand("seq", "exact sequences: rooted, free, forest, partition");
  seq->add_option("--kind", c.kind, "rooted|free|forest|partition")->required();
  seq->add_option("--n", c.n, "largest index N")->required();
  add_format(seq, "csv");

  auto* cons = app.add_subcommand("constants", "alpha, beta, rho, lambda, xi, e^xi and limit moments");
  add_precision(cons);
  add_format(cons, "json");

  auto* dist = app.add_subcommand("dist", "exact law of the number of trees, or its limit");
  dist->add_option("--n", c.n, "forest size");
  dist->add_flag("--limit", c.limit, "limit law (1 + compound Poisson)");
  dist->add_option("--m", c.max_k, "largest jump count M of the limit law (default 60)");
  add_precision(dist);
  add_format(dist, "csv");

  auto* ver = app.add_subcommand("verify", "acceptance suites with PASS/FAIL lines");
  ver->add_option("--suite", c.suite, "sequences|identities|asymptotics|sampler|all")
      ->check(CLI::IsMember({"sequences", "identities", "asymptotics", "sampler", "all"}));
  ver->add_option("--seed", c.seed, "seed for randomized checks (env OTTER_SEED, default 0)");
  add_precision(ver);
  add_format(ver, "text");

  auto* asy = app.add_subcommand("asymptotics", "cycle-index ratio Z_n / (e^lambda nu_n)");
  asy->add_option("--builtin", c.builtin, "built-in instance: trees");
  asy->add_option("--weights", c.weights, "weight file (CSV k,weight or JSON array)");
  asy->add_option("--n", c.n, "largest n");
  asy->add_option("--envelope-exponent", c.envelope_exponent, "tail envelope nu_k <= B k^-s (default 2.5)");
  asy->add_flag("--finite", c.finite_support, "weights vanish beyond the file");
  add_precision(asy);
  add_format(asy, "csv");

  auto* smp = app.add_subcommand("sample", "uniform random forests (size profiles)");
  smp->add_option("--n", c.n, "forest size");
  smp->add_option("--count", c.count, "number of samples")->required();
  smp->add_option("--seed", c.seed, "seed (env OTTER_SEED, default 0)");
  smp->add_flag("--raw", c.raw, "rows only; allows fewer than 1000 samples");
  add_format(smp, "csv");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    auto given = [&](const char* flag) {
      try {
        return sub->get_option(flag)->count() > 0;
      } catch (const CLI::OptionNotFound&) {
        return false;
      }
    };
    c.n_given = given("--n");
    if (!given("--digits"))
      if (auto v = env_number("OTTER_DIGITS")) c.digits = static_cast<unsigned>(*v);
    if (!given("--seed"))
      if (auto v = env_number("OTTER_SEED")) c.seed = *v;
    if (c.format.empty())
      c.format = c.command == "constants" ? "json" : (c.command == "verify" ? "text" : "csv");

    if (c.command == "seq") return cmd_seq(c, out);
    if (c.command == "constants") return cmd_constants(c, out);
    if (c.command == "dist") return cmd_dist(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "asymptotics") return cmd_asymptotics(c, out);
    if (c.command == "sample") return cmd_sample(c, out, err);
    err << "unknown command\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace otter::cli
