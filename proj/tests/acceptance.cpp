// Acceptance checks.  One line per criterion: PASS or FAIL, the criterion,
// and the measured numbers.  The exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "blf/benchmark.hpp"
#include "blf/dlm.hpp"
#include "blf/simulate.hpp"
#include "blf/spectrum.hpp"
#include "blf/tvar.hpp"
#include "oracles.hpp"

using namespace blf;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(bool ok, int id, const std::string& what, const std::string& detail)
{
    std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

int worker_count() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

void conjugacy()
{
    const auto start = Clock::now();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_int_distribution<int> len(1, 50);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const int T = len(rng);
        std::vector<double> y(T), x(T);
        const double theta = u(rng);
        for (int t = 0; t < T; ++t) {
            x[t] = u(rng);
            y[t] = theta * x[t] + 0.5 * u(rng);
        }
        NigPrior prior;
        prior.mean = u(rng);
        prior.scale = 0.1 + std::abs(u(rng));
        prior.dof = 0.5 + std::abs(u(rng));
        prior.kappa = 0.1 + std::abs(u(rng));
        const FilterState fs = forward_filter(y, x, prior, Discount{1.0, 1.0});
        const auto ref = oracle::static_regression(y, x, prior.mean, prior.scale / prior.variance_estimate(),
                                                   prior.dof, prior.kappa);
        const std::size_t last = static_cast<std::size_t>(T - 1);
        worst = std::max({worst, oracle::rel_err(fs.mean[last], ref.m), oracle::rel_err(fs.dof[last], ref.n),
                          oracle::rel_err(fs.kappa[last], ref.d),
                          oracle::rel_err(fs.scale[last], ref.V * ref.d / ref.n)});
    }
    const double secs = seconds_since(start);
    report(worst < 1e-10 && secs < 1.0, 1, "conjugacy oracle, 100 instances",
           "max rel err " + fmt("%.3e", worst) + ", " + fmt("%.3f", secs) + " s");
}

void levinson()
{
    const auto start = Clock::now();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.99, 0.99);
    std::uniform_int_distribution<int> order(1, 10);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const int P = order(rng);
        std::vector<double> k(static_cast<std::size_t>(P));
        for (double& v : k) v = u(rng);
        Grid g(8, P);
        for (Eigen::Index t = 0; t < 8; ++t)
            for (int m = 0; m < P; ++m) g(t, m) = k[static_cast<std::size_t>(m)];
        const LevinsonResult r = parcor_to_tvar(g, g);
        const auto phi = oracle::levinson_step_up(k);
        for (Eigen::Index t = 0; t < 8; ++t)
            for (int m = 0; m < P; ++m) worst = std::max(worst, std::abs(r.forward(t, m) - phi[static_cast<std::size_t>(m)]));
    }
    const double secs = seconds_since(start);
    report(worst < 1e-12 && secs < 1.0, 2, "Levinson equivalence, 100 instances, P <= 10",
           "max abs err " + fmt("%.3e", worst) + ", " + fmt("%.3f", secs) + " s");
}

BenchmarkResult bench(ProcessKind kind, int n, std::vector<Method> methods)
{
    BenchmarkConfig cfg;
    cfg.process = kind;
    cfg.replicates = n;
    cfg.methods = std::move(methods);
    cfg.threads = worker_count();
    return run_benchmark(cfg);
}

int count_orders(const MethodSummary& s, std::initializer_list<int> allowed)
{
    return static_cast<int>(std::count_if(s.orders.begin(), s.orders.end(), [&](int o) {
        return std::find(allowed.begin(), allowed.end(), o) != allowed.end();
    }));
}

std::string orders_text(const MethodSummary& s)
{
    std::string out;
    for (int o : s.orders) out += std::to_string(o);
    return out;
}

void tvar2_benchmark()
{
    const auto start = Clock::now();
    const BenchmarkResult r = bench(ProcessKind::TVAR2, 20, {Method::BLFDyn, Method::BLFFix});
    const double secs = seconds_since(start);
    const auto& dyn = r.summary("blfdyn");
    const auto& fix = r.summary("blffix");
    const int order2 = count_orders(dyn, {2});
    const bool ok = dyn.failed == 0 && fix.failed == 0 && dyn.mean_ase >= 0.005 && dyn.mean_ase <= 0.040 &&
                    fix.mean_ase >= 0.012 && fix.mean_ase <= 0.050 && dyn.mean_ase < fix.mean_ase && order2 >= 18 &&
                    secs < 600.0;
    report(ok, 3, "TVAR2 benchmark, 20 replicates",
           "BLFDyn " + fmt("%.4f", dyn.mean_ase) + " (" + fmt("%.4f", dyn.sd_ase) + "), BLFFix " +
               fmt("%.4f", fix.mean_ase) + " (" + fmt("%.4f", fix.sd_ase) + "), order 2 in " +
               std::to_string(order2) + "/20 [" + orders_text(dyn) + "], " + fmt("%.1f", secs) + " s");
}

void tvar6_benchmark()
{
    const auto start = Clock::now();
    const BenchmarkResult r = bench(ProcessKind::TVAR6, 10, {Method::BLFDyn});
    const double secs = seconds_since(start);
    const auto& dyn = r.summary("blfdyn");
    const int order6 = count_orders(dyn, {6});
    const bool ok = dyn.failed == 0 && dyn.mean_ase >= 0.02 && dyn.mean_ase <= 0.12 && order6 >= 8 && secs < 900.0;
    report(ok, 4, "TVAR6 benchmark, 10 replicates",
           "BLFDyn " + fmt("%.4f", dyn.mean_ase) + " (" + fmt("%.4f", dyn.sd_ase) + "), order 6 in " +
               std::to_string(order6) + "/10 [" + orders_text(dyn) + "], " + fmt("%.1f", secs) + " s");
}

void piecewise_benchmark()
{
    const auto start = Clock::now();
    const BenchmarkResult r = bench(ProcessKind::PieceAR, 10, {Method::BLFFix});
    const double secs = seconds_since(start);
    const auto& fix = r.summary("blffix");
    const int in_set = count_orders(fix, {2, 3});
    const bool ok = fix.failed == 0 && fix.mean_ase >= 0.05 && fix.mean_ase <= 0.16 && in_set == 10 && secs < 600.0;
    report(ok, 5, "PieceAR benchmark, 10 replicates",
           "BLFFix " + fmt("%.4f", fix.mean_ase) + " (" + fmt("%.4f", fix.sd_ase) + "), order in {2,3} in " +
               std::to_string(in_set) + "/10 [" + orders_text(fix) + "], " + fmt("%.1f", secs) + " s");
}

void spectrum_identities()
{
    const auto freqs = frequency_grid();
    const Spectrogram flat = tvar_spectrum(Grid::Zero(16, 4), std::vector<double>(16, 1.0), freqs);
    const bool flat_ok = (flat.values.array() == 1.0).all();

    Grid ar1(1, 1);
    ar1 << 0.9;
    const double s0 = tvar_spectrum(ar1, std::vector<double>{1.0}, freqs).values(0, 0);
    const bool ar1_ok = std::abs(s0 - 100.0) < 1e-12;

    Grid a(3, 2);
    a << 1.2, -0.81, 0.4, -0.81, 0.9, -0.5;
    const Spectrogram s = tvar_spectrum(a, std::vector<double>{1.0, 0.5, 2.0}, freqs);
    const double self = ase(s, s);
    Spectrogram shifted = s;
    shifted.values = s.values * std::exp(1.0);
    const double one = ase(shifted, s);

    report(flat_ok && ar1_ok && self == 0.0 && std::abs(one - 1.0) < 1e-12, 6, "spectrum identities",
           std::string("flat ") + (flat_ok ? "exact" : "wrong") + ", AR(1) S(0) - 100 = " + fmt("%.2e", s0 - 100.0) +
               ", ASE(X,X) = " + fmt("%g", self) + ", ASE(eX,X) - 1 = " + fmt("%.2e", one - 1.0));
}

struct Moments {
    std::vector<double> s1, s2, s3, s4;
    explicit Moments(std::size_t n) : s1(n), s2(n), s3(n), s4(n) {}
    void add(std::size_t t, double v)
    {
        s1[t] += v;
        s2[t] += v * v;
        s3[t] += v * v * v;
        s4[t] += v * v * v * v;
    }
    double mean(std::size_t t, double n) const { return s1[t] / n; }
    double var(std::size_t t, double n) const { return s2[t] / n - mean(t, n) * mean(t, n); }
    // Standard error of the sample variance from the fourth central moment.
    double var_se(std::size_t t, double n) const
    {
        const double m = mean(t, n);
        const double m4 = s4[t] / n - 4 * m * s3[t] / n + 6 * m * m * s2[t] / n - 3 * m * m * m * m;
        const double v = var(t, n);
        return std::sqrt(std::max(m4 - v * v, 0.0) / n);
    }
};

void sampler_consistency()
{
    const auto start = Clock::now();
    const std::size_t T = 30;
    const int N = 10000;
    const auto x = oracle::white_noise(T, 101);
    const auto noise = oracle::white_noise(T, 102, 0.5);
    std::vector<double> y(T);
    for (std::size_t t = 0; t < T; ++t) y[t] = (0.4 + 0.02 * static_cast<double>(t)) * x[t] + noise[t];
    NigPrior prior;
    prior.dof = 3.0;
    prior.kappa = 0.75;

    double worst_mean = 0.0;
    double worst_var = 0.0;
    std::mt19937_64 rng(555);

    {
        const Discount d{0.9, 0.9};
        const FilterState fs = forward_filter(y, x, prior, d);
        const SmoothState sm = backward_smooth(fs, d);
        Moments th(T), pr(T);
        for (int i = 0; i < N; ++i) {
            const SampledPath p = backward_sample(fs, d, rng);
            for (std::size_t t = 0; t < T; ++t) {
                th.add(t, p.theta[t]);
                pr.add(t, 1.0 / p.sigma2[t]);
            }
        }
        for (std::size_t t = 0; t < T; ++t) {
            worst_mean = std::max(worst_mean, std::abs(th.mean(t, N) - sm.mean[t]) / std::sqrt(th.var(t, N) / N));
            worst_mean = std::max(worst_mean, std::abs(pr.mean(t, N) - 1.0 / sm.s[t]) / std::sqrt(pr.var(t, N) / N));
        }
    }
    {
        const Discount d{0.9, 1.0};
        const FilterState fs = forward_filter(y, x, prior, d);
        const SmoothState sm = backward_smooth(fs, d);
        Moments th(T), pr(T);
        for (int i = 0; i < N; ++i) {
            const SampledPath p = backward_sample(fs, d, rng);
            for (std::size_t t = 0; t < T; ++t) {
                th.add(t, p.theta[t]);
                pr.add(t, 1.0 / p.sigma2[t]);
            }
        }
        for (std::size_t t = 0; t < T; ++t) {
            const double v = sm.dof[t];
            worst_mean = std::max(worst_mean, std::abs(th.mean(t, N) - sm.mean[t]) / std::sqrt(th.var(t, N) / N));
            const double theta_var = sm.scale[t] * v / (v - 2.0);
            worst_var = std::max(worst_var, std::abs(th.var(t, N) - theta_var) / th.var_se(t, N));
            const double prec_var = 2.0 / (v * sm.s[t] * sm.s[t]);
            worst_var = std::max(worst_var, std::abs(pr.var(t, N) - prec_var) / pr.var_se(t, N));
        }
    }
    const double secs = seconds_since(start);
    report(worst_mean < 3.0 && worst_var < 3.0 && secs < 30.0, 7, "sampler consistency, 10000 draws, T = 30",
           "max |z| means " + fmt("%.2f", worst_mean) + ", variances " + fmt("%.2f", worst_var) + ", " +
               fmt("%.2f", secs) + " s");
}

void root_round_trip()
{
    const auto moduli = tvar6_moduli();
    double worst = 0.0;
    for (double t : {1.0, 256.0, 512.0, 768.0, 1024.0}) {
        const auto theta = tvar6_angles(t, 1024);
        const auto a = roots_to_coeffs(moduli, theta);
        std::vector<std::pair<double, double>> recovered;
        for (const auto& B : oracle::ar_roots(a)) {
            const double ang = std::arg(B) / (2.0 * std::numbers::pi);
            if (ang > 0.0) recovered.emplace_back(ang, std::abs(B));
        }
        std::sort(recovered.begin(), recovered.end());
        if (recovered.size() != 3) {
            worst = INFINITY;
            continue;
        }
        std::vector<std::pair<double, double>> expected;
        for (std::size_t j = 0; j < 3; ++j) expected.emplace_back(theta[j], moduli[j]);
        std::sort(expected.begin(), expected.end());
        for (std::size_t j = 0; j < 3; ++j) {
            worst = std::max(worst, std::abs(recovered[j].first - expected[j].first));
            worst = std::max(worst, std::abs(recovered[j].second - expected[j].second));
        }
    }
    report(worst < 1e-8, 8, "root round trip, A = (1.1, 1.12, 1.1)", "max error " + fmt("%.3e", worst));
}

}  // namespace

int main()
{
    conjugacy();
    levinson();
    tvar2_benchmark();
    tvar6_benchmark();
    piecewise_benchmark();
    spectrum_identities();
    sampler_consistency();
    root_round_trip();
    std::printf("%d of 8 criteria failed\n", failures);
    return failures;
}
