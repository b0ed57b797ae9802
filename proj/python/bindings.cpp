#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "otter/constants.hpp"
#include "otter/limitdist.hpp"
#include "otter/sampler.hpp"
#include "otter/sequences.hpp"
#include "otter/transforms.hpp"
#include "otter/verify.hpp"

namespace py = pybind11;

namespace {

// Big integers cross the boundary as decimal strings; the Python layer turns them into int.
std::vector<std::string> decimal_rows(const otter::IntegerSequence& s) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (const auto& v : s.values()) out.push_back(v.get_str());
  return out;
}

py::tuple real_tuple(const otter::RealValue& x, int digits) {
  return py::make_tuple(x.value().str(digits), otter::Float(x.radius()).str(3));
}

otter::IntegerSequence sequence_of(const std::string& kind, std::size_t n) {
  if (kind == "rooted") return otter::rooted_trees(n);
  if (kind == "free") return otter::free_trees(n);
  if (kind == "forest") return otter::forests(n);
  if (kind == "partition") return otter::partition_numbers(n);
  throw otter::PreconditionError("unknown kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact tree and forest enumeration, Otter constants and forest limit laws";

  py::register_exception<otter::PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<otter::CertificationError>(m, "CertificationError", PyExc_ArithmeticError);
  py::register_exception<otter::ConsistencyError>(m, "ConsistencyError", PyExc_ArithmeticError);
  py::register_exception<otter::ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "sequence",
      [](const std::string& kind, std::size_t n) {
        auto s = sequence_of(kind, n);
        return py::make_tuple(s.offset(), decimal_rows(s));
      },
      py::arg("kind"), py::arg("n"), "(offset, decimal strings) for rooted|free|forest|partition up to n");

  m.def(
      "multiset_transform",
      [](const std::vector<std::string>& weights, std::size_t n) {
        std::vector<otter::BigInt> w;
        for (const auto& x : weights) w.emplace_back(x);
        return decimal_rows(otter::multiset_transform(otter::WeightSequence::exact(std::move(w)), n));
      },
      py::arg("weights"), py::arg("n"));

  m.def(
      "constants",
      [](unsigned digits, std::size_t truncation) {
        auto ctx = otter::PrecisionContext::make(std::min<std::size_t>(truncation, 100), digits, truncation);
        auto tables = otter::TreeTables::compute(truncation);
        auto c = otter::compute_constants(tables, ctx);
        const int d = static_cast<int>(digits);
        py::dict out;
        out["alpha"] = real_tuple(c.alpha, d);
        out["beta"] = real_tuple(c.beta, d);
        out["rho"] = real_tuple(c.rho, d);
        out["lambda"] = real_tuple(c.lambda, d);
        out["xi"] = real_tuple(c.xi, d);
        out["e_xi"] = real_tuple(c.e_xi, d);
        out["mean"] = real_tuple(c.mean, d);
        out["variance"] = real_tuple(c.variance, d);
        return out;
      },
      py::arg("digits") = 30, py::arg("truncation") = 5000);

  m.def(
      "component_law",
      [](std::size_t n) {
        auto p = otter::exact_component_pmf(n, otter::free_trees(std::max<std::size_t>(n, 1)));
        std::vector<std::pair<std::size_t, std::string>> rows;
        for (std::size_t i = 0; i < p.size(); ++i) rows.emplace_back(p.offset + i, p.exact[i].get_str());
        return rows;
      },
      py::arg("n"), "exact law of the number of trees as (k, 'p/q') pairs");

  m.def(
      "sample_profiles",
      [](std::size_t n, std::size_t count, std::uint64_t seed) {
        auto tables = otter::TreeTables::compute(std::max<std::size_t>(n, 1));
        otter::ForestSampler sampler(tables, std::min<std::size_t>(n, 256));
        otter::RngStream rng(seed, 0);
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.sample(n, rng).parts);
        return out;
      },
      py::arg("n"), py::arg("count"), py::arg("seed") = 0);

  m.def(
      "run_criterion",
      [](int id, unsigned digits, std::size_t truncation, std::uint64_t seed) {
        otter::VerifyContext ctx(digits, truncation, seed);
        auto r = otter::run_criterion(id, ctx);
        return py::make_tuple(r.pass, otter::format_result(r));
      },
      py::arg("id"), py::arg("digits") = 30, py::arg("truncation") = 5000, py::arg("seed") = 0);

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = otter::cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "runs the command line in-process: (exit code, stdout, stderr)");
}
