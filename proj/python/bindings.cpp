#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "d2dcache/cachedist.hpp"
#include "d2dcache/cli.hpp"
#include "d2dcache/errors.hpp"
#include "d2dcache/geometry.hpp"
#include "d2dcache/harmonic.hpp"
#include "d2dcache/simulator.hpp"
#include "d2dcache/theory.hpp"

namespace py = pybind11;
using namespace d2dcache;

namespace {

py::dict point_dict(const TradeoffPoint& p) {
  py::dict d;
  d["g_c"] = p.g_c;
  d["p_out"] = p.p_out;
  d["t_min_norm"] = p.t_min_norm;
  d["t_mean_norm"] = p.t_mean_norm;
  d["std_err_p"] = p.std_err_p;
  d["std_err_t"] = p.std_err_t;
  d["realizations"] = p.realizations;
  d["seed"] = p.seed;
  return d;
}

NetworkConfig network(int n, int M, double delta, double C) {
  NetworkConfig c;
  c.n = n;
  c.M = M;
  c.delta = delta;
  c.link_rate = C;
  c.validate();
  return c;
}

py::list curve_list(const std::vector<CurvePoint>& curve) {
  py::list out;
  for (const auto& p : curve) {
    py::dict d;
    d["p"] = p.p;
    d["feasible"] = p.feasible;
    d["t"] = p.t;
    d["regime"] = p.regime;
    d["g"] = p.g;
    d["t_finite"] = p.t_finite ? py::cast(*p.t_finite) : py::none();
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_d2dcache, m) {
  m.doc() = "Clustered D2D caching: caching distributions, Monte Carlo tradeoff points and bounds.";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("harmonic_sum", &harmonic_sum, py::arg("gamma"), py::arg("x"), py::arg("y"));
  m.def("harmonic_bounds", [](double g, long long x, long long y) {
    const auto b = harmonic_bounds(g, x, y);
    return py::make_tuple(b.lower, b.upper);
  }, py::arg("gamma"), py::arg("x"), py::arg("y"));
  m.def("zipf_pmf", [](double gamma, int m_) {
    const auto d = zipf_pmf(gamma, m_);
    return std::vector<double>(d.pmf().begin(), d.pmf().end());
  }, py::arg("gamma"), py::arg("m"));

  py::class_<CacheDistribution>(m, "CacheDistribution")
      .def_readonly("pc", &CacheDistribution::pc)
      .def_readonly("nu", &CacheDistribution::nu)
      .def_readonly("m_star", &CacheDistribution::m_star)
      .def_readonly("M", &CacheDistribution::M)
      .def_readonly("g_c", &CacheDistribution::g_c)
      .def("__repr__", [](const CacheDistribution& d) {
        std::ostringstream s;
        s << "CacheDistribution(m=" << d.m() << ", m_star=" << d.m_star << ", nu=" << d.nu << ")";
        return s.str();
      });

  m.def("optimal_cache_distribution", [](double gamma, int m_, int M, int g_c) {
    return optimal_cache_distribution(zipf_pmf(gamma, m_), M, g_c);
  }, py::arg("gamma"), py::arg("m"), py::arg("M"), py::arg("g_c"));
  m.def("hit_probability", [](double gamma, int m_, int M, int g_c, bool exclude_self) {
    const auto d = zipf_pmf(gamma, m_);
    return hit_probability(optimal_cache_distribution(d, M, g_c), d, exclude_self);
  }, py::arg("gamma"), py::arg("m"), py::arg("M"), py::arg("g_c"), py::arg("exclude_self") = true);
  m.def("paley_zygmund_lower_bound", [](double gamma, int m_, int M, int g_c) {
    const auto d = zipf_pmf(gamma, m_);
    return paley_zygmund_lower_bound(optimal_cache_distribution(d, M, g_c), d, g_c);
  }, py::arg("gamma"), py::arg("m"), py::arg("M"), py::arg("g_c"));

  m.def("reuse_factor", &reuse_factor, py::arg("delta"));
  m.def("feasible_cluster_sizes", &feasible_cluster_sizes, py::arg("n"));

  m.def("simulate", [](double gamma, int m_, int n, int M, int g_c, int K, double delta,
                       long long realizations, std::uint64_t seed, bool exclude_self, int workers) {
    const auto cfg = network(n, M, delta, 1.0);
    const auto d = zipf_pmf(gamma, m_);
    const auto layout = build_clusters(n, g_c, K > 0 ? K : reuse_factor(delta));
    const auto dist = cluster_cache_distribution(d, M, g_c);
    TradeoffPoint p;
    {
      py::gil_scoped_release release;
      p = estimate_tradeoff_point(cfg, layout, dist, d, realizations, seed,
                                  {exclude_self, workers});
    }
    return point_dict(p);
  }, py::arg("gamma"), py::arg("m"), py::arg("n"), py::arg("M") = 1, py::arg("g_c"),
     py::arg("K") = 0, py::arg("delta") = 0.5, py::arg("realizations") = 200,
     py::arg("seed") = 1, py::arg("exclude_self") = true, py::arg("workers") = 0);

  m.def("sweep", [](double gamma, int m_, int n, int M, std::vector<int> g_c, int K, double delta,
                    long long realizations, std::uint64_t seed) {
    const auto cfg = network(n, M, delta, 1.0);
    SweepResult res;
    {
      py::gil_scoped_release release;
      res = sweep_cluster_sizes(cfg, zipf_pmf(gamma, m_), g_c, realizations, seed, K);
    }
    py::list pts;
    for (const auto& p : res.points) pts.append(point_dict(p));
    return py::make_tuple(pts, res.warnings);
  }, py::arg("gamma"), py::arg("m"), py::arg("n"), py::arg("M") = 1, py::arg("g_c"),
     py::arg("K") = 0, py::arg("delta") = 0.5, py::arg("realizations") = 200, py::arg("seed") = 1);

  m.def("verify_schedules", [](double gamma, int m_, int n, int g_c, int K, double delta,
                               long long slots, std::uint64_t seed) {
    const auto cfg = network(n, 1, delta, 1.0);
    const auto d = zipf_pmf(gamma, m_);
    const auto layout = build_clusters(n, g_c, K > 0 ? K : reuse_factor(delta));
    const auto rep = check_protocol_model(cfg, layout, cluster_cache_distribution(d, 1, g_c), d,
                                          slots, seed);
    py::dict out;
    out["slots"] = rep.slots;
    out["links"] = rep.links;
    out["violations"] = rep.violations;
    return out;
  }, py::arg("gamma"), py::arg("m"), py::arg("n"), py::arg("g_c"), py::arg("K") = 0,
     py::arg("delta") = 0.5, py::arg("slots") = 1000, py::arg("seed") = 1);

  m.def("solve_fixed_point", &solve_fixed_point, py::arg("gamma"));
  m.def("achievable_constants", [](double gamma, int M) {
    const auto c = achievable_constants(gamma, M);
    py::dict d;
    d["a"] = c.a;
    d["b"] = c.b;
    d["A"] = c.A;
    d["D"] = c.D;
    return d;
  }, py::arg("gamma"), py::arg("M") = 1);
  m.def("rho_star", [](double gamma, int M, double delta) {
    return TheoryParams::make(gamma, M, delta).rho_star;
  }, py::arg("gamma"), py::arg("M") = 1, py::arg("delta") = 0.5);
  m.def("outer_bound_curve", [](double gamma, int m_, int n, int M, double delta, double C,
                                std::vector<double> p) {
    return curve_list(outer_bound_curve(TheoryParams::make(gamma, M, delta), C, m_, n, p));
  }, py::arg("gamma"), py::arg("m"), py::arg("n"), py::arg("M") = 1, py::arg("delta") = 0.5,
     py::arg("C") = 1.0, py::arg("p"));
  m.def("achievable_curve", [](double gamma, int m_, int n, int M, int K, double C,
                               std::vector<double> p) {
    return curve_list(achievable_curve(TheoryParams::make(gamma, M, 0.5), C, K, m_, n, p));
  }, py::arg("gamma"), py::arg("m"), py::arg("n"), py::arg("M") = 1, py::arg("K") = 4,
     py::arg("C") = 1.0, py::arg("p"));

  m.def("run_cli", [](std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
