#ifndef BLF_CLI_HPP
#define BLF_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "blf/benchmark.hpp"
#include "blf/selection.hpp"

namespace blf {

inline constexpr const char* kVersion = "1.0.0";

struct RunConfig {
    // Data source: a generator name (simulate, benchmark) or an input CSV (fit).
    std::string process = "tvar2";
    std::filesystem::path input;
    int T = 1024;

    std::string method = "blfdyn";            // fit: blfdyn | blffix | fixed
    std::vector<std::string> methods{"blfdyn", "blffix"};  // benchmark
    double grid_min = 0.8;
    double grid_max = 1.0;
    double grid_step = 0.02;
    int p_max = 15;
    double tau = 0.5;

    // fixed-hyperparameter fit
    double gamma = 0.98;
    double delta = 0.98;
    int order = 2;

    // Prior overrides; unset fields take the data-driven defaults.
    std::optional<double> prior_mean;
    std::optional<double> prior_scale;
    std::optional<double> prior_dof;
    std::optional<double> prior_kappa;

    double freq_step = 0.005;
    int draws = 0;
    int replicates = 20;
    bool self_test = false;
    std::uint64_t seed = 1;
    int threads = 1;
    std::filesystem::path out_dir = ".";

    /// Throws std::invalid_argument describing the first bad field.
    void validate() const;
    SearchGrid grid() const;
    NigPrior prior_for(const std::vector<double>& x) const;
};

/// Writes series.csv, truth.csv and truth_spectrogram.csv.
void cmd_simulate(const RunConfig& cfg);
/// Writes report.txt, coefficients.csv, variance.csv, scree.csv and
/// spectrogram.csv, plus posterior_mean.csv / posterior_sd.csv when draws > 0.
SelectionReport cmd_fit(const RunConfig& cfg);
/// Writes benchmark.csv (per replicate) and benchmark.txt (summary).
BenchmarkResult cmd_benchmark(const RunConfig& cfg);

/// Full command-line entry point; returns the process exit status.
int run_cli(int argc, char** argv);

}  // namespace blf

#endif  // BLF_CLI_HPP
