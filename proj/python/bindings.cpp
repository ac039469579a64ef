#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cbtau/cli.hpp"
#include "cbtau/errors.hpp"
#include "cbtau/nekrasov.hpp"
#include "cbtau/skew.hpp"
#include "cbtau/tau.hpp"
#include "cbtau/whittaker.hpp"

namespace py = pybind11;
using namespace cbtau;

namespace {

using PointMap = std::map<std::string, std::string>;

ParameterPoint to_point(const PointMap& m) {
  ParameterPoint p;
  for (const auto& [k, v] : m) p.set(k, parse_rational(v));
  return p;
}

std::vector<std::string> strings(const std::vector<Rational>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

}  // namespace

PYBIND11_MODULE(_cbtau, m) {
  m.doc() = "Exact conformal block and tau function engine";

  py::register_exception<Error>(m, "CbtauError", PyExc_ValueError);
  py::register_exception<NonGenericPoint>(m, "NonGenericPoint", PyExc_ArithmeticError);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a command line invocation; returns (exit code, stdout, stderr).");

  m.def(
      "block_sum",
      [](const std::string& kind, const PointMap& point, int order, int threads) {
        return strings(block_sum(parse_nekrasov_kind(kind), to_point(point), order, threads));
      },
      py::arg("kind"), py::arg("point"), py::arg("order"), py::arg("threads") = 1);

  m.def(
      "icb_rank1",
      [](const std::string& theta, const std::string& beta, const std::string& theta_0, const std::string& theta_t,
         int order) {
        IcbSeries s = icb_rank1(parse_rational(theta), parse_rational(beta), parse_rational(theta_0),
                                parse_rational(theta_t), order);
        std::vector<std::string> out;
        for (const auto& c : s.coeffs) out.push_back(to_string(c.a()));
        return out;
      },
      py::arg("theta"), py::arg("beta"), py::arg("theta_0"), py::arg("theta_t"), py::arg("order"));

  m.def(
      "verify_ode",
      [](const std::string& family, const PointMap& point, int nmax, int order, bool exact, int digits,
         int threads) {
        TauFamily f = parse_tau_family(family);
        ParameterPoint p = to_point(point);
        py::gil_scoped_release release;
        if (exact) {
          auto tau = tau_series_normalized<Rational>(f, p, nmax, order, digits, threads);
          auto rep = ode_residual(f, p, tau, nmax, order, digits, threads);
          return std::make_pair(rep.pass, std::string("0"));
        }
        auto tau = tau_series<BigFloat>(f, p, nmax, order, digits, threads);
        auto rep = ode_residual(f, p, tau, nmax, order, digits, threads);
        return std::make_pair(rep.pass, rep.max_abs.to_string(6));
      },
      py::arg("family"), py::arg("point"), py::arg("nmax") = 1, py::arg("order") = 6, py::arg("exact") = true,
      py::arg("digits") = 60, py::arg("threads") = 1, "Returns (pass, max |residual| as a decimal string).");

  m.def(
      "solve_c",
      [](int k, std::uint64_t seed, bool symmetric, int threads) {
        SolveOptions opt;
        opt.seed = seed;
        opt.symmetric = symmetric;
        opt.threads = threads;
        CSolution s;
        {
          py::gil_scoped_release release;
          s = solve_c(k, opt);
        }
        py::dict out;
        for (size_t i = 0; i < s.unknowns.size(); ++i)
          out[py::str(s.unknowns[i].key())] = s.determined[i] ? py::object(py::str(to_string(s.particular[i])))
                                                              : py::object(py::none());
        return py::make_tuple(s.consistent, s.nullity(), out);
      },
      py::arg("order"), py::arg("seed") = 1, py::arg("symmetric") = true, py::arg("threads") = 1,
      "Returns (consistent, nullity, {term key: value or None}).");

  m.def("q_stat", [](const std::vector<int>& parts) { return q_stat(Partition(parts)); }, py::arg("parts"));
}
