#include "blf/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "blf/io.hpp"
#include "blf/simulate.hpp"
#include "blf/spectrum.hpp"

namespace blf {

namespace fs = std::filesystem;

void RunConfig::validate() const
{
    if (T < 1) throw std::invalid_argument("--T must be positive");
    if (p_max < 1) throw std::invalid_argument("--pmax must be at least 1");
    if (!(tau > 0.0)) throw std::invalid_argument("--tau must be positive");
    if (!(grid_step > 0.0)) throw std::invalid_argument("--grid-step must be positive");
    if (!(grid_min > 0.0 && grid_min <= grid_max && grid_max <= 1.0))
        throw std::invalid_argument("grid bounds must satisfy 0 < grid-min <= grid-max <= 1");
    Discount{gamma, delta}.validate();
    if (order < 1) throw std::invalid_argument("--order must be at least 1");
    if (!(freq_step > 0.0 && freq_step <= 0.5)) throw std::invalid_argument("--freq-step must lie in (0, 0.5]");
    if (draws < 0 || draws == 1) throw std::invalid_argument("--draws must be 0 or at least 2");
    if (replicates < 1) throw std::invalid_argument("--n must be at least 1");
    if (threads < 1) throw std::invalid_argument("--threads must be at least 1");
    method_from_string(method);
    for (const auto& m : methods) {
        if (method_from_string(m) == Method::Fixed)
            throw std::invalid_argument("benchmark methods are blfdyn and blffix");
    }
    if (prior_scale && !(*prior_scale > 0.0)) throw std::invalid_argument("--prior-scale must be positive");
    if (prior_dof && !(*prior_dof > 0.0)) throw std::invalid_argument("--prior-dof must be positive");
    if (prior_kappa && !(*prior_kappa > 0.0)) throw std::invalid_argument("--prior-kappa must be positive");
}

SearchGrid RunConfig::grid() const { return SearchGrid::uniform(grid_min, grid_max, grid_step, p_max); }

NigPrior RunConfig::prior_for(const std::vector<double>& x) const
{
    NigPrior p = default_prior(x);
    if (prior_dof) {
        // Keep the variance estimate kappa / dof when only dof is overridden.
        p.kappa *= *prior_dof / p.dof;
        p.dof = *prior_dof;
    }
    if (prior_mean) p.mean = *prior_mean;
    if (prior_scale) p.scale = *prior_scale;
    if (prior_kappa) p.kappa = *prior_kappa;
    p.validate();
    return p;
}

namespace {

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());
}

}  // namespace

void cmd_simulate(const RunConfig& cfg)
{
    cfg.validate();
    const ProcessKind kind = process_from_string(cfg.process);
    const SimulatedProcess p = generate(kind, cfg.T, cfg.seed);
    ensure_dir(cfg.out_dir);
    write_series(cfg.out_dir / "series.csv", p.x);
    write_truth(cfg.out_dir / "truth.csv", p);
    write_spectrogram(cfg.out_dir / "truth_spectrogram.csv", true_spectrum(p, frequency_grid(cfg.freq_step)));
}

SelectionReport cmd_fit(const RunConfig& cfg)
{
    cfg.validate();
    if (cfg.input.empty()) throw std::invalid_argument("fit: an input CSV is required");
    const std::vector<double> x = read_series(cfg.input);
    const Method method = method_from_string(cfg.method);
    const int needed = (method == Method::Fixed ? cfg.order : cfg.p_max) + 2;
    if (x.size() < static_cast<std::size_t>(needed))
        throw std::invalid_argument("fit: series has " + std::to_string(x.size()) + " values, need at least " +
                                    std::to_string(needed));

    const NigPrior prior = cfg.prior_for(x);
    SelectionReport report;
    switch (method) {
    case Method::BLFDyn: report = fit_blfdyn(x, cfg.grid(), prior, cfg.tau, cfg.threads); break;
    case Method::BLFFix: report = fit_blffix(x, cfg.grid(), prior, cfg.tau, cfg.threads); break;
    case Method::Fixed: report = fit_fixed(x, Discount{cfg.gamma, cfg.delta}, cfg.order, prior); break;
    }

    const std::vector<double> freqs = frequency_grid(cfg.freq_step);
    ensure_dir(cfg.out_dir);
    KeyValues kv = report_entries(report);
    kv.emplace_back("input", cfg.input.string());
    kv.emplace_back("freq_step", format_double(cfg.freq_step));
    kv.emplace_back("draws", std::to_string(cfg.draws));
    kv.emplace_back("seed", std::to_string(cfg.seed));
    write_key_values(cfg.out_dir / "report.txt", kv);
    write_coefficients(cfg.out_dir / "coefficients.csv", report.fit);
    write_variance(cfg.out_dir / "variance.csv", report.fit);
    write_scree(cfg.out_dir / "scree.csv", scree_table(report));
    write_spectrogram(cfg.out_dir / "spectrogram.csv", tvar_spectrum(report.fit, freqs));

    if (cfg.draws > 0) {
        const SpectrumPosterior post =
            spectrum_posterior(report.run, report.chosen_order, cfg.draws, freqs, cfg.seed, cfg.threads);
        write_log_grid(cfg.out_dir / "posterior_mean.csv", post.times, post.freqs, post.log_mean);
        write_log_grid(cfg.out_dir / "posterior_sd.csv", post.times, post.freqs, post.log_sd);
    }
    return report;
}

BenchmarkResult cmd_benchmark(const RunConfig& cfg)
{
    cfg.validate();
    BenchmarkConfig bc;
    bc.process = process_from_string(cfg.process);
    bc.replicates = cfg.replicates;
    bc.T = cfg.T;
    bc.methods.clear();
    for (const auto& m : cfg.methods) bc.methods.push_back(method_from_string(m));
    bc.grid = cfg.grid();
    bc.tau = cfg.tau;
    bc.freq_step = cfg.freq_step;
    bc.seed = cfg.seed;
    bc.threads = cfg.threads;
    bc.self_test = cfg.self_test;

    BenchmarkResult result = run_benchmark(bc);

    ensure_dir(cfg.out_dir);
    {
        std::ofstream out(cfg.out_dir / "benchmark.csv");
        if (!out) throw std::runtime_error("cannot write benchmark.csv");
        out << "replicate,seed,method,order,saturated,ase,status\n";
        for (const auto& r : result.replicates) {
            std::string status = r.ok() ? "ok" : "error: " + r.error;
            for (char& c : status)
                if (c == ',' || c == '\n') c = ';';
            out << r.replicate << ',' << r.seed << ',' << r.method << ',' << r.order << ','
                << (r.saturated ? "true" : "false") << ',' << (r.ok() ? format_double(r.ase) : "") << ','
                << status << '\n';
        }
    }
    KeyValues kv;
    kv.emplace_back("process", to_string(bc.process));
    kv.emplace_back("replicates", std::to_string(bc.replicates));
    kv.emplace_back("T", std::to_string(bc.T));
    kv.emplace_back("seed", std::to_string(bc.seed));
    kv.emplace_back("seeding", "replicate i uses seed + i");
    for (const auto& s : result.summaries) {
        kv.emplace_back(s.method + ".mean_ase", format_double(s.mean_ase));
        kv.emplace_back(s.method + ".sd_ase", format_double(s.sd_ase));
        kv.emplace_back(s.method + ".succeeded", std::to_string(s.succeeded));
        kv.emplace_back(s.method + ".failed", std::to_string(s.failed));
        std::ostringstream orders;
        for (std::size_t i = 0; i < s.orders.size(); ++i) orders << (i ? " " : "") << s.orders[i];
        kv.emplace_back(s.method + ".orders", orders.str());
    }
    write_key_values(cfg.out_dir / "benchmark.txt", kv);
    return result;
}

int run_cli(int argc, char** argv)
{
    CLI::App app{"Bayesian lattice filter for time-varying autoregression"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "Random seed");
        sub->add_option("--out", cfg.out_dir, "Output directory");
        sub->add_option("--freq-step", cfg.freq_step, "Frequency grid spacing (cycles/sample)");
        sub->add_option("--threads", cfg.threads, "Worker threads");
    };
    auto add_grid = [&cfg](CLI::App* sub) {
        sub->add_option("--grid-min", cfg.grid_min, "Smallest discount factor in the search grid");
        sub->add_option("--grid-max", cfg.grid_max, "Largest discount factor in the search grid");
        sub->add_option("--grid-step", cfg.grid_step, "Search grid spacing");
        sub->add_option("--pmax", cfg.p_max, "Maximum lattice order");
        sub->add_option("--tau", cfg.tau, "Percent-change threshold for order selection");
    };

    CLI::App* sim = app.add_subcommand("simulate", "Generate a reference process and its true spectrum");
    sim->add_option("process", cfg.process, "tvar2 | tvar6 | piecewise | tvvar")->required();
    sim->add_option("--T", cfg.T, "Series length");
    add_common(sim);

    CLI::App* fit = app.add_subcommand("fit", "Fit a TVAR model to a single-column CSV");
    fit->add_option("input", cfg.input, "Input CSV")->required();
    fit->add_option("--method", cfg.method, "blfdyn | blffix | fixed");
    add_grid(fit);
    fit->add_option("--gamma", cfg.gamma, "Coefficient discount (fixed method)");
    fit->add_option("--delta", cfg.delta, "Variance discount (fixed method)");
    fit->add_option("--order", cfg.order, "Model order (fixed method)");
    fit->add_option("--prior-mean", cfg.prior_mean, "Prior PARCOR mean");
    fit->add_option("--prior-scale", cfg.prior_scale, "Prior PARCOR scale");
    fit->add_option("--prior-dof", cfg.prior_dof, "Prior degrees of freedom");
    fit->add_option("--prior-kappa", cfg.prior_kappa, "Prior precision scale");
    fit->add_option("--draws", cfg.draws, "Posterior draws for uncertainty surfaces (0 = none)");
    add_common(fit);

    CLI::App* bench = app.add_subcommand("benchmark", "Replicated average-squared-error experiment");
    bench->add_option("process", cfg.process, "tvar2 | tvar6 | piecewise | tvvar")->required();
    bench->add_option("--n", cfg.replicates, "Number of replicates");
    bench->add_option("--T", cfg.T, "Series length");
    bench->add_option("--method", cfg.methods, "Methods to score (blfdyn, blffix)")->delimiter(',');
    bench->add_flag("--self-test", cfg.self_test, "Score the true spectrum against itself");
    add_grid(bench);
    add_common(bench);

    CLI::App* version = app.add_subcommand("version", "Print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*version) {
            std::cout << "blf " << kVersion << '\n';
        } else if (*sim) {
            cmd_simulate(cfg);
            std::cout << "wrote " << (cfg.out_dir / "series.csv").string() << ", truth.csv, truth_spectrogram.csv\n";
        } else if (*fit) {
            const SelectionReport rep = cmd_fit(cfg);
            std::cout << "method " << to_string(rep.method) << ", order " << rep.chosen_order
                      << (rep.saturated ? " (saturated)" : "") << ", outputs in " << cfg.out_dir.string() << '\n';
        } else if (*bench) {
            const BenchmarkResult res = cmd_benchmark(cfg);
            for (const auto& s : res.summaries) {
                char line[160];
                std::snprintf(line, sizeof line, "%-10s %-7s n=%-4d mean ASE %.4f (%.4f)  failed=%d\n",
                              cfg.process.c_str(), s.method.c_str(), s.succeeded, s.mean_ase, s.sd_ase, s.failed);
                std::cout << line;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace blf
