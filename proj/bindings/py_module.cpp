#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "semilab/matrix_oracle.hpp"
#include "semilab/perturbed.hpp"
#include "semilab/runner.hpp"
#include "semilab/skorohod.hpp"

namespace py = pybind11;
using namespace semilab;

namespace {

SquareMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw std::invalid_argument("matrix rows must form a square");
        for (int j = 0; j < n; ++j)
            m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
}

std::vector<std::vector<double>> matrix_to_rows(const SquareMatrix& m) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.size()));
    for (int i = 0; i < m.size(); ++i) {
        rows[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(m.size()));
        for (int j = 0; j < m.size(); ++j)
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m.at(i, j);
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Measure evolution under the heat semigroup and its positive perturbations";

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<double, int>(), py::arg("half_width"), py::arg("n"))
        .def_property_readonly("half_width", &GridSpec::half_width)
        .def_property_readonly("size", &GridSpec::size)
        .def_property_readonly("spacing", &GridSpec::spacing)
        .def("node", &GridSpec::node)
        .def("__eq__", [](const GridSpec& a, const GridSpec& b) { return a == b; });

    py::class_<TestFunction>(m, "TestFunction")
        .def_property_readonly("name", &TestFunction::name)
        .def_property_readonly("sup_norm", &TestFunction::sup_norm)
        .def("__call__", [](const TestFunction& f, double x) { return f(x); });
    m.def("dictionary_fn", &dictionary_fn, py::return_value_policy::reference);
    m.def("dictionary_names", [] {
        std::vector<std::string> names;
        for (const TestFunction& f : dictionary()) names.push_back(f.name());
        return names;
    });

    py::class_<Measure>(m, "Measure")
        .def_static("zero", &Measure::zero)
        .def_static("dirac", &Measure::dirac, py::arg("grid"), py::arg("location"),
                    py::arg("weight") = 1.0)
        .def_static("gaussian", &Measure::gaussian)
        .def_static("from_samples",
                    [](const GridSpec& g, std::vector<double> d) {
                        return Measure::from_samples(g, std::move(d));
                    })
        .def_property_readonly("grid", &Measure::grid)
        .def_property_readonly("atoms",
                               [](const Measure& mu) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const Atom& a : mu.atoms())
                                       out.emplace_back(a.location, a.weight);
                                   return out;
                               })
        .def_property_readonly("density",
                               [](const Measure& mu) {
                                   return std::vector<double>(mu.density().begin(),
                                                              mu.density().end());
                               })
        .def_property_readonly("is_positive", [](const Measure& mu) { return mu.is_positive(); })
        .def_property_readonly("min_component", &Measure::min_component)
        .def("__add__", [](const Measure& a, const Measure& b) { return a + b; })
        .def("__sub__", [](const Measure& a, const Measure& b) { return a - b; })
        .def("__rmul__", [](const Measure& a, double c) { return c * a; });

    m.def("pairing", py::overload_cast<const TestFunction&, const Measure&>(&pairing));
    m.def("seminorm", &seminorm);
    m.def("tv_norm", &tv_norm);
    m.def("jordan", &jordan);
    m.def("check_al_max_gap",
          [](const Measure& a, const Measure& b) { return check_al(a, b).max_gap(); });

    m.def("apply_T", &apply_T, py::arg("t"), py::arg("mu"));
    m.def("apply_T_star", [](const GridSpec& g, double t, const TestFunction& f) {
        return apply_T_star(g, t, f).values;
    });
    m.def("duality_residual", &duality_residual);
    m.def("resolvent", &resolvent, py::arg("lam"), py::arg("mu"));
    m.def("laplace_residual", &laplace_residual);
    m.def("bicontinuity_probe",
          [](const Measure& mu, const TestFunction& f, const std::vector<double>& t_seq) {
              return bicontinuity_probe(mu, f, t_seq);
          });
    m.def(
        "equicontinuity_probe",
        [](const std::vector<Measure>& mu_seq, double t0, const TestFunction& f, int s_steps) {
            return equicontinuity_probe(mu_seq, t0, f, s_steps);
        },
        py::arg("mu_seq"), py::arg("t0"), py::arg("f"), py::arg("s_steps") = 8);
    m.def("min_density_time", &min_density_time);

    m.def("skorohod_derivative", &skorohod_derivative);
    m.def("laplacian", &laplacian);
    m.def("generator_apply", &generator_apply);
    m.def("quotient_residual", &quotient_residual);
    m.def("parts_residual", &parts_residual);

    py::class_<Potential>(m, "Potential")
        .def_static("zero", &Potential::zero)
        .def_static("exp_decay", &Potential::exp_decay)
        .def_static("sqrt_singular", &Potential::sqrt_singular)
        .def("point_value", &Potential::point_value)
        .def("cell_averages", &Potential::cell_averages)
        .def_property_readonly("l1_norm", &Potential::l1_norm)
        .def_property_readonly("name", &Potential::name);

    py::class_<PotentialPerturbation>(m, "PotentialPerturbation")
        .def(py::init<Potential>())
        .def_readonly("psi", &PotentialPerturbation::psi);
    py::class_<RankOnePerturbation>(m, "RankOnePerturbation")
        .def(py::init<TestFunction, Measure>(), py::arg("g"), py::arg("y"));

    m.def("apply_B", &apply_B);
    py::class_<NormEstimate>(m, "NormEstimate")
        .def_readonly("empirical", &NormEstimate::empirical)
        .def_readonly("analytic", &NormEstimate::analytic);
    m.def("composed_norm_estimate",
          [](const Perturbation& b, double lam, const std::vector<Measure>& probes) {
              return composed_norm_estimate(b, lam, probes);
          });
    m.def("mv_integral", &mv_integral);
    m.def("locality_probe",
          [](const Perturbation& b, double lam, const TestFunction& f, const TestFunction& q,
             double eps, const std::vector<Measure>& probes) {
              return locality_probe(b, lam, f, q, eps, probes);
          });
    m.def("lp_split", [](const std::vector<double>& psi, double cutoff) {
        const LpSplit s = lp_split(psi, cutoff);
        return std::make_pair(s.integrable, s.bounded);
    });

    py::class_<SeriesParams>(m, "SeriesParams")
        .def(py::init([](int levels, int quad_nodes) {
                 SeriesParams p{levels, quad_nodes};
                 p.validate();
                 return p;
             }),
             py::arg("levels") = 8, py::arg("quad_nodes") = 64)
        .def_readwrite("levels", &SeriesParams::levels)
        .def_readwrite("quad_nodes", &SeriesParams::quad_nodes);

    py::class_<DysonResult>(m, "DysonResult")
        .def_readonly("value", &DysonResult::value)
        .def_readonly("tail_tv", &DysonResult::tail_tv)
        .def_readonly("converged", &DysonResult::converged);
    m.def("dyson_apply", &dyson_apply, py::arg("b"), py::arg("t"), py::arg("mu"),
          py::arg("params") = SeriesParams{});
    m.def("trotter_apply", &trotter_apply, py::arg("b"), py::arg("t"), py::arg("mu"),
          py::arg("steps"));

    py::class_<NeumannResult>(m, "NeumannResult")
        .def_readonly("value", &NeumannResult::value)
        .def_readonly("tail_tv", &NeumannResult::tail_tv)
        .def_readonly("converged", &NeumannResult::converged);
    m.def("neumann_resolvent", &neumann_resolvent, py::arg("b"), py::arg("lam"), py::arg("mu"),
          py::arg("max_terms") = 30);

    py::class_<StageReport>(m, "StageReport")
        .def_readonly("stage_norms", &StageReport::stage_norms)
        .def_readonly("threshold", &StageReport::threshold)
        .def_readonly("all_pass", &StageReport::all_pass);
    m.def(
        "staged_bound_check",
        [](const Perturbation& b, double lam, int n_stages, double eta,
           const std::vector<Measure>& probes) {
            return staged_bound_check(b, lam, n_stages, eta, probes);
        },
        py::arg("b"), py::arg("lam"), py::arg("n_stages"), py::arg("eta"), py::arg("probes"));

    py::class_<VopResiduals>(m, "VopResiduals")
        .def_readonly("plus", &VopResiduals::plus)
        .def_readonly("minus", &VopResiduals::minus)
        .def("passing_sign", &VopResiduals::passing_sign);
    m.def("vop_residual", &vop_residual, py::arg("b"), py::arg("t"), py::arg("mu"),
          py::arg("params") = SeriesParams{});

    py::class_<GeneratorCheckReport>(m, "GeneratorCheckReport")
        .def_readonly("step_sizes", &GeneratorCheckReport::step_sizes)
        .def_readonly("errors", &GeneratorCheckReport::errors)
        .def_readonly("ratios", &GeneratorCheckReport::ratios);
    m.def(
        "generator_check",
        [](const Perturbation& b, const Measure& mu, const std::vector<double>& h_seq,
           SeriesParams params) { return generator_check(b, mu, h_seq, params); },
        py::arg("b"), py::arg("mu"), py::arg("h_seq"), py::arg("params") = SeriesParams{});
    m.def(
        "positivity_scan",
        [](const Perturbation& b, const Measure& mu, const std::vector<double>& t_grid,
           int trotter_steps) { return positivity_scan(b, mu, t_grid, trotter_steps); },
        py::arg("b"), py::arg("mu"), py::arg("t_grid"), py::arg("trotter_steps") = 256);
    m.def("laplace_consistency", &laplace_consistency, py::arg("b"), py::arg("lam"), py::arg("f"),
          py::arg("mu"), py::arg("horizon"), py::arg("steps"), py::arg("substeps") = 4,
          py::arg("neumann_terms") = 40);

    m.def("expm", [](const std::vector<std::vector<double>>& rows, double t) {
        return matrix_to_rows(expm(matrix_from_rows(rows), t));
    });
    m.def("neumann_vs_direct",
          [](const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b,
             double lam, int terms) {
              const auto cmp =
                  neumann_vs_direct(matrix_from_rows(a), matrix_from_rows(b), lam, terms);
              return std::make_tuple(cmp.difference, cmp.ratio, cmp.tail_bound);
          });
    m.def("dyson_vs_expm",
          [](const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b,
             double t, int levels, int quad_nodes) {
              return dyson_vs_expm(matrix_from_rows(a), matrix_from_rows(b), t, levels, quad_nodes);
          });
    m.def(
        "voigt_property_test",
        [](int trials, std::uint64_t seed, int dim) {
            const auto rep = voigt_property_test(trials, seed, dim);
            return std::make_pair(rep.trials, rep.failures);
        },
        py::arg("trials"), py::arg("seed"), py::arg("dim") = 4);
}
