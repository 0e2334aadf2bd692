#ifndef BLF_BENCHMARK_HPP
#define BLF_BENCHMARK_HPP

/** @file
 * Replicated simulate -> fit -> score experiments.  Replicate i uses seed
 * base_seed + i, so any single replicate can be reproduced in isolation.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "blf/selection.hpp"
#include "blf/simulate.hpp"

namespace blf {

struct BenchmarkConfig {
    ProcessKind process = ProcessKind::TVAR2;
    int replicates = 20;
    int T = 1024;
    std::vector<Method> methods{Method::BLFDyn, Method::BLFFix};
    SearchGrid grid = SearchGrid::standard();
    double tau = 0.5;
    double freq_step = 0.005;
    std::uint64_t seed = 1;
    int threads = 1;
    /// Scores the true spectrum against itself instead of fitting.
    bool self_test = false;
};

struct ReplicateResult {
    int replicate = 0;
    std::uint64_t seed = 0;
    std::string method;
    int order = 0;
    bool saturated = false;
    double ase = 0.0;
    std::string error;  // empty on success

    bool ok() const { return error.empty(); }
};

struct MethodSummary {
    std::string method;
    int succeeded = 0;
    int failed = 0;
    double mean_ase = 0.0;
    double sd_ase = 0.0;  // sample standard deviation
    std::vector<int> orders;
};

struct BenchmarkResult {
    BenchmarkConfig config;
    std::vector<ReplicateResult> replicates;  // replicate-major, method-minor
    std::vector<MethodSummary> summaries;

    const MethodSummary& summary(const std::string& method) const;
};

BenchmarkResult run_benchmark(const BenchmarkConfig& config);

}  // namespace blf

#endif  // BLF_BENCHMARK_HPP
