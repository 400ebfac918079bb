#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tandem/app/cli.hpp"
#include "tandem/burke.hpp"
#include "tandem/chain.hpp"
#include "tandem/errors.hpp"
#include "tandem/network.hpp"
#include "tandem/optimize.hpp"
#include "tandem/simulator.hpp"
#include "tandem/split.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace tandem;

namespace {

NetworkSpec make_network(const std::string& scenario, int hops, double mu, double lambda,
                         double p) {
  if (scenario == "chain") return NetworkSpec::chain(hops, mu, lambda);
  if (scenario == "split") return NetworkSpec::split(mu, lambda, p);
  if (scenario == "multi-ground") return NetworkSpec::equal_ground(hops, mu, lambda);
  throw InvalidArgument("scenario must be chain, split or multi-ground");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "AoI and delay of tandem M/M/1 relay chains";

  auto base = py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<UnstableNetwork>(m, "UnstableNetwork", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", PyExc_OverflowError);
  py::register_exception<NoDataError>(m, "NoDataError", PyExc_RuntimeError);

  // chain with ground traffic at node 1 only
  m.def("network_delay", [](int k, double mu, double lam) {
    return chain::network_delay(ChainParams(k, mu, lam));
  }, "hops"_a, "mu"_a, "lam"_a);
  m.def("average_aoi", [](int k, double mu, double lam) {
    return chain::average_aoi(ChainParams(k, mu, lam));
  }, "hops"_a, "mu"_a, "lam"_a, "Lower bound on the average AoI of a K-hop chain.");
  m.def("ewy_bound", [](int k, double mu, double lam) {
    return chain::ewy_bound(ChainParams(k, mu, lam));
  }, "hops"_a, "mu"_a, "lam"_a);
  m.def("sojourn_pdf", [](int k, double mu, double lam, double t) {
    return chain::sojourn_pdf(ChainParams(k, mu, lam), t);
  }, "hops"_a, "mu"_a, "lam"_a, "t"_a);
  m.def("mm1_average_aoi", &chain::mm1_average_aoi, "mu"_a, "lam"_a);

  // two nodes, node 1 carries p of the ground load
  m.def("split_network_delay", [](double mu, double lam, double p) {
    return split::network_delay_split(SplitParams(mu, lam, p));
  }, "mu"_a, "lam"_a, "p"_a);
  m.def("split_average_aoi", [](double mu, double lam, double p) {
    return split::aoi_mixture(SplitParams(mu, lam, p));
  }, "mu"_a, "lam"_a, "p"_a, "Load-weighted mixture of the node-1 and node-2 ages.");
  m.def("split_aoi_node1", [](double mu, double lam, double p) {
    return split::aoi_node1(SplitParams(mu, lam, p));
  }, "mu"_a, "lam"_a, "p"_a);
  m.def("split_aoi_node2", [](double mu, double lam, double p) {
    return split::aoi_node2(SplitParams(mu, lam, p));
  }, "mu"_a, "lam"_a, "p"_a);

  py::class_<opt::OptimizeResult>(m, "OptimizeResult")
      .def_readonly("rho_star", &opt::OptimizeResult::rho_star)
      .def_readonly("aoi_star", &opt::OptimizeResult::aoi_star)
      .def_readonly("evaluations", &opt::OptimizeResult::evaluations)
      .def("__repr__", [](const opt::OptimizeResult& r) {
        std::ostringstream os;
        os << "OptimizeResult(rho_star=" << r.rho_star << ", aoi_star=" << r.aoi_star << ")";
        return os.str();
      });
  m.def("minimize_aoi_chain", &opt::minimize_aoi_chain, "hops"_a, "mu"_a = 1.0, "tol"_a = 1e-3);
  m.def("minimize_aoi_split", &opt::minimize_aoi_split, "mu"_a, "p"_a, "tol"_a = 1e-3);

  py::class_<sim::Estimate>(m, "Estimate")
      .def_readonly("mean", &sim::Estimate::mean)
      .def_readonly("ci95", &sim::Estimate::ci95)
      .def("__repr__", [](const sim::Estimate& e) {
        std::ostringstream os;
        os << "Estimate(" << e.mean << " +/- " << e.ci95 << ")";
        return os.str();
      });
  py::class_<sim::SourceStats>(m, "SourceStats")
      .def_readonly("origin", &sim::SourceStats::origin)
      .def_readonly("departures", &sim::SourceStats::departures)
      .def_readonly("aoi", &sim::SourceStats::aoi)
      .def_readonly("delay", &sim::SourceStats::delay)
      .def_readonly("ewy", &sim::SourceStats::ewy);
  py::class_<sim::NodeStats>(m, "NodeStats")
      .def_readonly("utilization", &sim::NodeStats::utilization)
      .def_readonly("mean_in_system", &sim::NodeStats::mean_in_system)
      .def_readonly("mean_sojourn", &sim::NodeStats::mean_sojourn)
      .def_readonly("departures", &sim::NodeStats::departures);
  py::class_<sim::SimResult>(m, "SimResult")
      .def_readonly("aoi_system", &sim::SimResult::aoi_system)
      .def_readonly("aoi_mixture", &sim::SimResult::aoi_mixture)
      .def_readonly("sources", &sim::SimResult::sources)
      .def_readonly("delay", &sim::SimResult::delay)
      .def_readonly("wait", &sim::SimResult::wait)
      .def_readonly("ewy", &sim::SimResult::ewy)
      .def_readonly("nodes", &sim::SimResult::nodes)
      .def_readonly("n_departures", &sim::SimResult::n_departures)
      .def_readonly("seed", &sim::SimResult::seed)
      .def_readonly("horizon", &sim::SimResult::horizon)
      .def_readonly("warmup", &sim::SimResult::warmup);

  m.def("simulate",
        [](const std::string& scenario, int hops, double mu, double lam, double p,
           std::uint64_t seed, double horizon, std::optional<double> warmup) {
          sim::SimOptions opt;
          opt.seed = seed;
          opt.horizon = horizon;
          opt.warmup = warmup;
          const auto net = make_network(scenario, hops, mu, lam, p);
          py::gil_scoped_release release;
          return sim::run(net, opt);
        },
        "scenario"_a = "chain", "hops"_a = 1, "mu"_a = 1.0, "lam"_a = 0.5, "p"_a = 1.0,
        "seed"_a = 1, "horizon"_a = 1e6, "warmup"_a = py::none(),
        "Event-driven run; identical arguments give identical results.");

  py::class_<sim::BurkeReport>(m, "BurkeReport")
      .def_readonly("samples", &sim::BurkeReport::samples)
      .def_readonly("mean_interdeparture", &sim::BurkeReport::mean_interdeparture)
      .def_readonly("expected_mean", &sim::BurkeReport::expected_mean)
      .def_property_readonly("ks_statistic", [](const sim::BurkeReport& r) { return r.ks.statistic; })
      .def_property_readonly("ks_p_value", [](const sim::BurkeReport& r) { return r.ks.p_value; })
      .def_readonly("rejected", &sim::BurkeReport::rejected);
  m.def("validate_burke",
        [](int hops, double mu, double lam, std::uint64_t seed, double horizon) {
          const auto net = NetworkSpec::chain(hops, mu, lam);
          py::gil_scoped_release release;
          return sim::validate_burke(net, seed, horizon);
        },
        "hops"_a = 2, "mu"_a = 1.0, "lam"_a = 0.5, "seed"_a = 1, "horizon"_a = 1e6);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = app::run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, "args"_a, "Runs the command-line tool in process; returns (exit_code, stdout, stderr).");
}
