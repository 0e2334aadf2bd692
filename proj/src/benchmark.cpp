#include "blf/benchmark.hpp"

#include <cmath>
#include <stdexcept>

#include "blf/parallel.hpp"
#include "blf/spectrum.hpp"

namespace blf {

const MethodSummary& BenchmarkResult::summary(const std::string& method) const
{
    for (const auto& s : summaries)
        if (s.method == method) return s;
    throw std::out_of_range("no benchmark summary for method '" + method + "'");
}

namespace {

SelectionReport fit_with(Method method, const std::vector<double>& x, const BenchmarkConfig& cfg)
{
    const NigPrior prior = default_prior(x);
    switch (method) {
    case Method::BLFDyn: return fit_blfdyn(x, cfg.grid, prior, cfg.tau);
    case Method::BLFFix: return fit_blffix(x, cfg.grid, prior, cfg.tau);
    case Method::Fixed: break;
    }
    throw std::invalid_argument("benchmark: method must be blfdyn or blffix");
}

}  // namespace

BenchmarkResult run_benchmark(const BenchmarkConfig& config)
{
    if (config.replicates < 1) throw std::invalid_argument("benchmark: need at least one replicate");
    if (!config.self_test && config.methods.empty()) throw std::invalid_argument("benchmark: no methods given");
    config.grid.validate();

    const std::vector<std::string> labels = [&] {
        std::vector<std::string> l;
        if (config.self_test) {
            l.emplace_back("self");
        } else {
            for (Method m : config.methods) l.push_back(to_string(m));
        }
        return l;
    }();
    const std::size_t per_rep = labels.size();
    const std::vector<double> freqs = frequency_grid(config.freq_step);

    BenchmarkResult result;
    result.config = config;
    result.replicates.resize(static_cast<std::size_t>(config.replicates) * per_rep);

    parallel_for(static_cast<std::size_t>(config.replicates), config.threads, [&](std::size_t i) {
        const std::uint64_t seed = config.seed + i;
        for (std::size_t k = 0; k < per_rep; ++k) {
            ReplicateResult& r = result.replicates[i * per_rep + k];
            r.replicate = static_cast<int>(i);
            r.seed = seed;
            r.method = labels[k];
        }
        try {
            const SimulatedProcess proc = generate(config.process, config.T, seed);
            const Spectrogram truth = true_spectrum(proc, freqs);
            for (std::size_t k = 0; k < per_rep; ++k) {
                ReplicateResult& r = result.replicates[i * per_rep + k];
                try {
                    if (config.self_test) {
                        r.order = static_cast<int>(proc.true_coeffs.cols());
                        r.ase = ase(truth, truth);
                    } else {
                        const SelectionReport rep = fit_with(config.methods[k], proc.x, config);
                        r.order = rep.chosen_order;
                        r.saturated = rep.saturated;
                        r.ase = ase(tvar_spectrum(rep.fit, freqs), truth);
                    }
                } catch (const std::exception& e) {
                    r.error = e.what();
                }
            }
        } catch (const std::exception& e) {
            for (std::size_t k = 0; k < per_rep; ++k) result.replicates[i * per_rep + k].error = e.what();
        }
    });

    for (const auto& label : labels) {
        MethodSummary s;
        s.method = label;
        double sum = 0.0;
        for (const auto& r : result.replicates) {
            if (r.method != label) continue;
            if (!r.ok()) {
                ++s.failed;
                continue;
            }
            ++s.succeeded;
            sum += r.ase;
            s.orders.push_back(r.order);
        }
        if (s.succeeded > 0) s.mean_ase = sum / s.succeeded;
        double ss = 0.0;
        for (const auto& r : result.replicates)
            if (r.method == label && r.ok()) ss += (r.ase - s.mean_ase) * (r.ase - s.mean_ase);
        s.sd_ase = s.succeeded > 1 ? std::sqrt(ss / (s.succeeded - 1)) : 0.0;
        result.summaries.push_back(std::move(s));
    }
    return result;
}

}  // namespace blf
