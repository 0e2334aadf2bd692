#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <random>

#include "blf/benchmark.hpp"
#include "blf/dlm.hpp"
#include "blf/lattice.hpp"
#include "blf/selection.hpp"
#include "blf/simulate.hpp"
#include "blf/spectrum.hpp"
#include "blf/tvar.hpp"

namespace py = pybind11;
using namespace blf;

namespace {

using Vec = std::vector<double>;

NigPrior prior_or_default(const std::optional<NigPrior>& prior, const Vec& x)
{
    return prior ? *prior : default_prior(x);
}

SearchGrid grid_or_standard(const std::optional<SearchGrid>& grid)
{
    return grid ? *grid : SearchGrid::standard();
}

}  // namespace

PYBIND11_MODULE(_blf, m)
{
    m.doc() = "Bayesian lattice filter for time-varying autoregressions";

    py::class_<NigPrior>(m, "NigPrior")
        .def(py::init([](double mean, double scale, double dof, double kappa) {
                 NigPrior p{mean, scale, dof, kappa};
                 p.validate();
                 return p;
             }),
             py::arg("mean") = 0.0, py::arg("scale") = 1.0, py::arg("dof") = 1.0, py::arg("kappa") = 1.0)
        .def_readwrite("mean", &NigPrior::mean)
        .def_readwrite("scale", &NigPrior::scale)
        .def_readwrite("dof", &NigPrior::dof)
        .def_readwrite("kappa", &NigPrior::kappa)
        .def("__repr__", [](const NigPrior& p) {
            return "NigPrior(mean=" + std::to_string(p.mean) + ", scale=" + std::to_string(p.scale) +
                   ", dof=" + std::to_string(p.dof) + ", kappa=" + std::to_string(p.kappa) + ")";
        });

    py::class_<Discount>(m, "Discount")
        .def(py::init([](double gamma, double delta) {
                 Discount d{gamma, delta};
                 d.validate();
                 return d;
             }),
             py::arg("gamma"), py::arg("delta"))
        .def_readwrite("gamma", &Discount::gamma)
        .def_readwrite("delta", &Discount::delta)
        .def(py::self == py::self)
        .def("__repr__", [](const Discount& d) {
            return "Discount(gamma=" + std::to_string(d.gamma) + ", delta=" + std::to_string(d.delta) + ")";
        });

    py::class_<FilterState>(m, "FilterState")
        .def_readonly("mean", &FilterState::mean)
        .def_readonly("scale", &FilterState::scale)
        .def_readonly("dof", &FilterState::dof)
        .def_readonly("kappa", &FilterState::kappa)
        .def_readonly("s", &FilterState::s)
        .def_readonly("error", &FilterState::error)
        .def_readonly("q", &FilterState::q);

    py::class_<SmoothState>(m, "SmoothState")
        .def_readonly("mean", &SmoothState::mean)
        .def_readonly("scale", &SmoothState::scale)
        .def_readonly("dof", &SmoothState::dof)
        .def_readonly("s", &SmoothState::s)
        .def_readonly("kappa", &SmoothState::kappa);

    m.def("default_prior", [](const Vec& x) { return default_prior(x); }, py::arg("x"));
    m.def(
        "forward_filter",
        [](const Vec& y, const Vec& x, const NigPrior& prior, const Discount& d) {
            return forward_filter(y, x, prior, d);
        },
        py::arg("y"), py::arg("x"), py::arg("prior"), py::arg("discount"),
        "Discounted conjugate filter for y_t = theta_t x_t + noise.");
    m.def("backward_smooth", &backward_smooth, py::arg("state"), py::arg("discount"));
    m.def("predictive_loglik", &predictive_loglik, py::arg("state"));
    m.def(
        "backward_sample",
        [](const FilterState& fs, const Discount& d, std::uint64_t seed) {
            std::mt19937_64 rng(seed);
            const SampledPath p = backward_sample(fs, d, rng);
            return py::make_tuple(p.theta, p.sigma2);
        },
        py::arg("state"), py::arg("discount"), py::arg("seed") = 1,
        "One joint posterior draw; returns (theta, sigma2).");

    py::class_<SearchGrid>(m, "SearchGrid")
        .def_static("uniform", &SearchGrid::uniform, py::arg("lo"), py::arg("hi"), py::arg("step"),
                    py::arg("p_max"))
        .def_static("standard", &SearchGrid::standard)
        .def_static("single", &SearchGrid::single, py::arg("discount"), py::arg("p_max"))
        .def_readonly("gammas", &SearchGrid::gammas)
        .def_readonly("deltas", &SearchGrid::deltas)
        .def_readonly("p_max", &SearchGrid::p_max)
        .def("pairs", &SearchGrid::pairs);

    py::class_<SelectionReport>(m, "FitReport")
        .def_property_readonly("method", [](const SelectionReport& r) { return to_string(r.method); })
        .def_readonly("chosen_order", &SelectionReport::chosen_order)
        .def_readonly("saturated", &SelectionReport::saturated)
        .def_readonly("tau", &SelectionReport::tau)
        .def_readonly("scree", &SelectionReport::scree)
        .def_readonly("filtered_scree", &SelectionReport::filtered_scree)
        .def_readonly("discounts", &SelectionReport::per_stage_discounts)
        .def_property_readonly("coeffs", [](const SelectionReport& r) { return r.fit.coeffs; })
        .def_property_readonly("sigma2", [](const SelectionReport& r) { return r.fit.sigma2; })
        .def_property_readonly("prior", [](const SelectionReport& r) { return r.run.prior; })
        .def(
            "stage_parcor",
            [](const SelectionReport& r, int stage) {
                if (stage < 1 || stage > r.run.order()) throw py::index_error("stage out of range");
                const StageResult& s = r.run.stages[static_cast<std::size_t>(stage - 1)];
                return py::make_tuple(s.alpha, s.beta);
            },
            py::arg("stage"), "Smoothed (forward, backward) PARCOR paths of a lattice stage.")
        .def(
            "spectrum",
            [](const SelectionReport& r, const Vec& freqs) { return tvar_spectrum(r.fit, freqs); },
            py::arg("freqs"))
        .def(
            "spectrum_posterior",
            [](const SelectionReport& r, int draws, const Vec& freqs, std::uint64_t seed, int threads) {
                py::gil_scoped_release release;
                return spectrum_posterior(r.run, r.chosen_order, draws, freqs, seed, threads);
            },
            py::arg("draws"), py::arg("freqs"), py::arg("seed") = 1, py::arg("threads") = 1);

    m.def(
        "fit_blfdyn",
        [](const Vec& x, std::optional<SearchGrid> grid, std::optional<NigPrior> prior, double tau, int threads) {
            const NigPrior p = prior_or_default(prior, x);
            const SearchGrid g = grid_or_standard(grid);
            py::gil_scoped_release release;
            return fit_blfdyn(x, g, p, tau, threads);
        },
        py::arg("x"), py::arg("grid") = py::none(), py::arg("prior") = py::none(), py::arg("tau") = 0.5,
        py::arg("threads") = 1);
    m.def(
        "fit_blffix",
        [](const Vec& x, std::optional<SearchGrid> grid, std::optional<NigPrior> prior, double tau, int threads) {
            const NigPrior p = prior_or_default(prior, x);
            const SearchGrid g = grid_or_standard(grid);
            py::gil_scoped_release release;
            return fit_blffix(x, g, p, tau, threads);
        },
        py::arg("x"), py::arg("grid") = py::none(), py::arg("prior") = py::none(), py::arg("tau") = 0.5,
        py::arg("threads") = 1);
    m.def(
        "fit_fixed",
        [](const Vec& x, const Discount& d, int order, std::optional<NigPrior> prior) {
            return fit_fixed(x, d, order, prior_or_default(prior, x));
        },
        py::arg("x"), py::arg("discount"), py::arg("order"), py::arg("prior") = py::none());
    m.def(
        "select_order",
        [](const Vec& scree, double tau) {
            const OrderChoice c = select_order(scree, tau);
            return py::make_tuple(c.order, c.saturated);
        },
        py::arg("scree"), py::arg("tau") = 0.5, "Returns (order, saturated).");
    m.def(
        "parcor_to_tvar",
        [](const Grid& alpha, const Grid& beta) {
            const LevinsonResult r = parcor_to_tvar(alpha, beta);
            return py::make_tuple(r.forward, r.backward);
        },
        py::arg("alpha"), py::arg("beta"));

    py::class_<Spectrogram>(m, "Spectrogram")
        .def_readonly("times", &Spectrogram::times)
        .def_readonly("freqs", &Spectrogram::freqs)
        .def_readonly("values", &Spectrogram::values)
        .def("has_infinite", &Spectrogram::has_infinite);

    py::class_<SpectrumPosterior>(m, "SpectrumPosterior")
        .def_readonly("times", &SpectrumPosterior::times)
        .def_readonly("freqs", &SpectrumPosterior::freqs)
        .def_readonly("log_mean", &SpectrumPosterior::log_mean)
        .def_readonly("log_sd", &SpectrumPosterior::log_sd)
        .def_readonly("draws", &SpectrumPosterior::draws);

    m.def("frequency_grid", &frequency_grid, py::arg("step") = 0.005);
    m.def(
        "tvar_spectrum",
        [](const Grid& coeffs, const Vec& sigma2, const Vec& freqs) { return tvar_spectrum(coeffs, sigma2, freqs); },
        py::arg("coeffs"), py::arg("sigma2"), py::arg("freqs"));
    m.def("ase", &ase, py::arg("estimate"), py::arg("truth"));

    py::class_<SimulatedProcess>(m, "SimulatedProcess")
        .def_property_readonly("kind", [](const SimulatedProcess& p) { return to_string(p.kind); })
        .def_readonly("x", &SimulatedProcess::x)
        .def_readonly("true_coeffs", &SimulatedProcess::true_coeffs)
        .def_readonly("true_sigma2", &SimulatedProcess::true_sigma2)
        .def_readonly("root_angles", &SimulatedProcess::root_angles)
        .def(
            "spectrum", [](const SimulatedProcess& p, const Vec& freqs) { return true_spectrum(p, freqs); },
            py::arg("freqs"));

    m.def(
        "simulate",
        [](const std::string& process, int T, std::uint64_t seed) {
            return generate(process_from_string(process), T, seed);
        },
        py::arg("process"), py::arg("T") = 1024, py::arg("seed") = 1);
    m.def(
        "roots_to_coeffs", [](const Vec& moduli, const Vec& thetas) { return roots_to_coeffs(moduli, thetas); },
        py::arg("moduli"), py::arg("thetas"));

    m.def(
        "benchmark",
        [](const std::string& process, int replicates, int T, const std::vector<std::string>& methods,
           std::uint64_t seed, int threads, std::optional<SearchGrid> grid) {
            BenchmarkConfig cfg;
            cfg.process = process_from_string(process);
            cfg.replicates = replicates;
            cfg.T = T;
            cfg.methods.clear();
            for (const auto& name : methods) cfg.methods.push_back(method_from_string(name));
            cfg.seed = seed;
            cfg.threads = threads;
            cfg.grid = grid_or_standard(grid);
            BenchmarkResult r;
            {
                py::gil_scoped_release release;
                r = run_benchmark(cfg);
            }
            py::dict out;
            for (const MethodSummary& s : r.summaries) {
                py::dict d;
                d["mean_ase"] = s.mean_ase;
                d["sd_ase"] = s.sd_ase;
                d["succeeded"] = s.succeeded;
                d["failed"] = s.failed;
                d["orders"] = s.orders;
                out[py::str(s.method)] = d;
            }
            return out;
        },
        py::arg("process"), py::arg("replicates") = 20, py::arg("T") = 1024,
        py::arg("methods") = std::vector<std::string>{"blfdyn", "blffix"}, py::arg("seed") = 1,
        py::arg("threads") = 1, py::arg("grid") = py::none(),
        "Monte Carlo comparison; returns {method: summary dict}.");
}
