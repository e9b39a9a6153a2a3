#include "netcfg/error.hpp"
#include "netcfg/experiments.hpp"
#include "netcfg/fis.hpp"
#include "netcfg/inequality.hpp"
#include "netcfg/quantum.hpp"
#include "netcfg/witness.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace netcfg;

namespace {

std::vector<std::string> render(const FractionalWeights& w) {
  std::vector<std::string> out;
  for (const auto& v : w.values) out.push_back(to_string(v));
  return out;
}

FractionalWeights weights_from(const std::vector<std::string>& values) {
  std::string joined;
  for (const auto& v : values) joined += v + ",";
  return parse_weights(joined);
}

py::dict report_dict(const ViolationReport& r) {
  py::dict d;
  d["max_margin"] = r.max_margin;
  d["violated"] = r.violated;
  d["argmax"] = r.argmax ? py::cast(*r.argmax) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<Error>(m, "NetcfgError", PyExc_ValueError);

  m.def(
      "fis",
      [](const std::string& network, const std::string& algorithm, int mm, int k, const std::string& variant,
         const std::string& facet) {
        const auto t = parse_network(network);
        if (algorithm == "greedy") return render(fis_greedy(t));
        if (algorithm == "optimal") return render(fis_optimal(t));
        Strategy s;
        s.kind = algorithm == "family" ? Strategy::Kind::family : Strategy::Kind::facet;
        if (algorithm != "family" && algorithm != "facet") fail(ErrorCategory::usage, "unknown algorithm '" + algorithm + "'");
        s.m = mm;
        s.k = k;
        s.variant = variant == "b" ? FamilyVariant::b : FamilyVariant::a;
        if (!facet.empty()) {
          s.facet = parse_facet_variant(facet);
          if (!s.facet) fail(ErrorCategory::usage, "unknown facet '" + facet + "'");
        }
        return render(weights_for(t, s));
      },
      py::arg("network"), py::arg("algorithm") = "greedy", py::arg("m") = 1000, py::arg("k") = 1,
      py::arg("variant") = "a", py::arg("facet") = "");

  m.def(
      "is_valid_fis",
      [](const std::string& network, const std::vector<std::string>& weights) {
        return is_valid_fis(parse_network(network), weights_from(weights));
      },
      py::arg("network"), py::arg("weights"));

  m.def(
      "simulate",
      [](const std::string& state, const std::string& basis) {
        const auto s = parse_state(state);
        const auto bases = basis.empty() ? std::vector<MeasurementBasis>{} : parse_bases(basis, s);
        return serialize_distribution(born_distribution(s, bases)).dump();
      },
      py::arg("state"), py::arg("basis") = "");

  m.def(
      "check",
      [](const std::string& dist, const std::vector<std::string>& weights, double tol) {
        return report_dict(check_config(parse_distribution(dist), weights_from(weights), tol));
      },
      py::arg("dist"), py::arg("weights"), py::arg("tol") = kDefaultTolerance);

  m.def(
      "chain_min_check",
      [](const std::string& dist, int mm, int k, double tol) {
        return report_dict(chain_min_check(parse_distribution(dist), mm, k, tol));
      },
      py::arg("dist"), py::arg("m"), py::arg("k") = 1, py::arg("tol") = kDefaultTolerance);

  m.def(
      "witness",
      [](const std::string& state, double tol) {
        const auto v = witness_entanglement(parse_state(state), {}, tol);
        py::list pairs;
        for (const auto& p : v.pairs) pairs.append(py::make_tuple(p.first + 1, p.second + 1, p.dependent, p.margin));
        py::dict d;
        d["entangled"] = v.overall == WitnessOverall::entangled;
        d["pairs"] = pairs;
        return d;
      },
      py::arg("state"), py::arg("tol") = kDefaultTolerance);

  m.def("visibility_threshold_ghz", &visibility_threshold_ghz, py::arg("theta"));

  m.def(
      "region_scan",
      [](const std::string& experiment, int theta_points, int v_points, int mm, const std::string& inequality) {
        const auto e = parse_experiment(experiment);
        const auto i = parse_inequality(inequality);
        if (!e) fail(ErrorCategory::usage, "unknown experiment '" + experiment + "'");
        if (!i) fail(ErrorCategory::usage, "unknown inequality '" + inequality + "'");
        std::vector<std::tuple<double, double, double, bool>> rows;
        for (const auto& r : region_scan(ExperimentSpec{*e}, theta_points, v_points, mm, *i).rows) {
          rows.emplace_back(r.theta, r.v, r.margin, r.violated);
        }
        return rows;
      },
      py::arg("experiment"), py::arg("theta_points") = 20, py::arg("v_points") = 20, py::arg("m") = 1000,
      py::arg("inequality") = "fin3");
}
