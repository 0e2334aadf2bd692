#ifndef BLF_SPECTRUM_HPP
#define BLF_SPECTRUM_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "blf/tvar.hpp"

namespace blf {

/// Time-varying spectral density S(t, omega) in linear power units.
/// Cells with a zero transfer-function denominator hold +infinity.
struct Spectrogram {
    std::vector<int> times;     // 1-based time index
    std::vector<double> freqs;  // cycles per sample, within [0, 1/2]
    Grid values;                // times.size() x freqs.size()

    bool has_infinite() const;
};

/// 0, step, 2 step, ... up to and including 1/2; the default step gives L = 101.
std::vector<double> frequency_grid(double step = 0.005);

Spectrogram tvar_spectrum(const Grid& coeffs, std::span<const double> sigma2,
                          std::span<const double> freqs);
Spectrogram tvar_spectrum(const TvarFit& fit, std::span<const double> freqs);

/// Mean over the grid of (log est - log truth)^2, natural log.
double ase(const Spectrogram& est, const Spectrogram& truth);

/// Pointwise posterior summary of the natural-log spectrum.
struct SpectrumPosterior {
    std::vector<int> times;
    std::vector<double> freqs;
    Grid log_mean;
    Grid log_sd;
    int draws = 0;
};

/**
 * Monte Carlo posterior of the log spectrum at @p order.  Each draw samples
 * every stage's forward and backward PARCOR paths (and the stage-P forward
 * variance path) from the smoothing distribution, maps them through the
 * Levinson recursion and evaluates the spectrum.  Draw i uses a generator
 * seeded from (seed, i), so results do not depend on @p threads.
 */
SpectrumPosterior spectrum_posterior(const LatticeRun& run, int order, int n_draws,
                                     std::span<const double> freqs, std::uint64_t seed,
                                     int threads = 1);

}  // namespace blf

#endif  // BLF_SPECTRUM_HPP
