#include "blf/spectrum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "blf/parallel.hpp"

namespace blf {

bool Spectrogram::has_infinite() const
{
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (std::isinf(values.data()[i])) return true;
    return false;
}

std::vector<double> frequency_grid(double step)
{
    if (!(step > 0.0) || step > 0.5) throw std::invalid_argument("frequency_grid: step must lie in (0, 0.5]");
    const auto intervals = static_cast<std::size_t>(std::floor(0.5 / step + 1e-9));
    const bool exact = std::abs(static_cast<double>(intervals) * step - 0.5) < 1e-9;
    std::vector<double> freqs(intervals + 1);
    for (std::size_t l = 0; l <= intervals; ++l) {
        freqs[l] = exact ? 0.5 * static_cast<double>(l) / static_cast<double>(intervals)
                         : static_cast<double>(l) * step;
    }
    return freqs;
}

namespace {

void validate_freqs(std::span<const double> freqs)
{
    if (freqs.empty()) throw std::invalid_argument("tvar_spectrum: empty frequency grid");
    for (std::size_t l = 0; l < freqs.size(); ++l) {
        if (!(freqs[l] >= 0.0 && freqs[l] <= 0.5))
            throw std::invalid_argument("tvar_spectrum: frequency outside [0, 1/2] at index " + std::to_string(l));
        if (l > 0 && !(freqs[l] > freqs[l - 1]))
            throw std::invalid_argument("tvar_spectrum: frequencies must be strictly increasing");
    }
}

void fill_spectrum(const Grid& coeffs, std::span<const double> sigma2,
                   std::span<const double> freqs, Grid& out)
{
    const Eigen::Index n = coeffs.rows();
    const Eigen::Index order = coeffs.cols();
    const auto nf = static_cast<Eigen::Index>(freqs.size());
    out.resize(n, nf);
    for (Eigen::Index l = 0; l < nf; ++l) {
        const double w = 2.0 * std::numbers::pi * freqs[static_cast<std::size_t>(l)];
        for (Eigen::Index t = 0; t < n; ++t) {
            double re = 1.0;
            double im = 0.0;
            for (Eigen::Index m = 1; m <= order; ++m) {
                const double a = coeffs(t, m - 1);
                re -= a * std::cos(w * static_cast<double>(m));
                im += a * std::sin(w * static_cast<double>(m));
            }
            const double denom = re * re + im * im;
            out(t, l) = denom == 0.0 ? std::numeric_limits<double>::infinity()
                                     : sigma2[static_cast<std::size_t>(t)] / denom;
        }
    }
}

std::vector<int> time_index(std::size_t n)
{
    std::vector<int> times(n);
    for (std::size_t t = 0; t < n; ++t) times[t] = static_cast<int>(t + 1);
    return times;
}

}  // namespace

Spectrogram tvar_spectrum(const Grid& coeffs, std::span<const double> sigma2,
                          std::span<const double> freqs)
{
    if (static_cast<std::size_t>(coeffs.rows()) != sigma2.size())
        throw std::invalid_argument("tvar_spectrum: coefficient rows and variance length differ");
    validate_freqs(freqs);
    for (std::size_t t = 0; t < sigma2.size(); ++t)
        if (!(sigma2[t] > 0.0) || !std::isfinite(sigma2[t]))
            throw std::invalid_argument("tvar_spectrum: innovation variance must be positive at t=" +
                                        std::to_string(t + 1));

    Spectrogram sp;
    sp.times = time_index(sigma2.size());
    sp.freqs.assign(freqs.begin(), freqs.end());
    fill_spectrum(coeffs, sigma2, freqs, sp.values);
    return sp;
}

Spectrogram tvar_spectrum(const TvarFit& fit, std::span<const double> freqs)
{
    return tvar_spectrum(fit.coeffs, fit.sigma2, freqs);
}

double ase(const Spectrogram& est, const Spectrogram& truth)
{
    if (est.values.rows() != truth.values.rows() || est.values.cols() != truth.values.cols() ||
        est.freqs != truth.freqs || est.times != truth.times)
        throw std::invalid_argument("ase: spectrogram grids do not match");
    if (est.values.size() == 0) throw std::invalid_argument("ase: empty spectrogram");

    double total = 0.0;
    for (Eigen::Index t = 0; t < est.values.rows(); ++t) {
        for (Eigen::Index l = 0; l < est.values.cols(); ++l) {
            const double a = est.values(t, l);
            const double b = truth.values(t, l);
            if (!std::isfinite(a) || !std::isfinite(b) || !(a > 0.0) || !(b > 0.0)) {
                throw std::domain_error("ase: non-finite or non-positive cell at t=" +
                                        std::to_string(est.times[static_cast<std::size_t>(t)]) +
                                        ", freq=" + std::to_string(est.freqs[static_cast<std::size_t>(l)]));
            }
            const double diff = std::log(a) - std::log(b);
            total += diff * diff;
        }
    }
    return total / static_cast<double>(est.values.size());
}

SpectrumPosterior spectrum_posterior(const LatticeRun& run, int order, int n_draws,
                                     std::span<const double> freqs, std::uint64_t seed, int threads)
{
    if (n_draws < 2) throw std::invalid_argument("spectrum_posterior: need at least two draws");
    if (order < 1 || order > run.order())
        throw std::invalid_argument("spectrum_posterior: order exceeds available stages");
    validate_freqs(freqs);

    const auto n = static_cast<Eigen::Index>(run.x.size());
    const auto nf = static_cast<Eigen::Index>(freqs.size());

    // Plug-in log spectrum as the accumulation origin, to avoid cancellation
    // when the posterior is tight.
    Grid origin;
    {
        const TvarFit fit = assemble_fit(run, order);
        fill_spectrum(fit.coeffs, fit.sigma2, freqs, origin);
        origin = origin.array().log().matrix();
    }

    // Fixed contiguous blocks combined in block order: results are
    // independent of the worker count.
    const auto blocks = static_cast<std::size_t>(std::min(n_draws, 8));
    std::vector<Grid> sum(blocks, Grid::Zero(n, nf));
    std::vector<Grid> sumsq(blocks, Grid::Zero(n, nf));

    auto draw_block = [&](std::size_t b) {
        const std::size_t begin = b * static_cast<std::size_t>(n_draws) / blocks;
        const std::size_t end = (b + 1) * static_cast<std::size_t>(n_draws) / blocks;
        Grid alpha(n, order), beta(n, order), spec;
        std::vector<double> sigma2;
        for (std::size_t i = begin; i < end; ++i) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(i)};
            std::mt19937_64 rng(seq);
            for (int m = 0; m < order; ++m) {
                const StageResult& st = run.stages[static_cast<std::size_t>(m)];
                SampledPath fwd = backward_sample(st.forward, st.discount_f, rng);
                const SampledPath bwd = backward_sample(st.backward, st.discount_b, rng);
                for (Eigen::Index t = 0; t < n; ++t) {
                    alpha(t, m) = fwd.theta[static_cast<std::size_t>(t)];
                    beta(t, m) = bwd.theta[static_cast<std::size_t>(t)];
                }
                if (m == order - 1) sigma2 = std::move(fwd.sigma2);
            }
            const Grid coeffs = parcor_to_tvar(alpha, beta).forward;
            fill_spectrum(coeffs, sigma2, freqs, spec);
            const Grid dev = spec.array().log().matrix() - origin;
            sum[b] += dev;
            sumsq[b] += dev.cwiseProduct(dev);
        }
    };
    parallel_for(blocks, threads, draw_block);

    Grid total = Grid::Zero(n, nf);
    Grid total_sq = Grid::Zero(n, nf);
    for (std::size_t b = 0; b < blocks; ++b) {
        total += sum[b];
        total_sq += sumsq[b];
    }

    const double k = static_cast<double>(n_draws);
    SpectrumPosterior post;
    post.times = time_index(run.x.size());
    post.freqs.assign(freqs.begin(), freqs.end());
    post.draws = n_draws;
    const Grid mean_dev = total / k;
    post.log_mean = origin + mean_dev;
    const Grid var = ((total_sq - k * mean_dev.cwiseProduct(mean_dev)) / (k - 1.0)).cwiseMax(0.0);
    post.log_sd = var.cwiseSqrt();
    return post;
}

}  // namespace blf
