#include "blf/simulate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blf {

namespace {

constexpr double kExplosion = 1e12;

std::vector<double> unit_variance(int T) { return std::vector<double>(static_cast<std::size_t>(T), 1.0); }

void require_length(int T, int minimum, const char* name)
{
    if (T < minimum)
        throw std::invalid_argument(std::string(name) + ": T must be at least " + std::to_string(minimum));
}

}  // namespace

std::string to_string(ProcessKind k)
{
    switch (k) {
    case ProcessKind::TVAR2: return "tvar2";
    case ProcessKind::TVAR6: return "tvar6";
    case ProcessKind::PieceAR: return "piecewise";
    case ProcessKind::TVVAR: return "tvvar";
    }
    return "unknown";
}

ProcessKind process_from_string(const std::string& name)
{
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "tvar2") return ProcessKind::TVAR2;
    if (lower == "tvar6") return ProcessKind::TVAR6;
    if (lower == "piecewise" || lower == "piecear") return ProcessKind::PieceAR;
    if (lower == "tvvar") return ProcessKind::TVVAR;
    throw std::invalid_argument("unknown process '" + name + "' (expected tvar2, tvar6, piecewise or tvvar)");
}

double tvar2_coefficient(double t)
{
    return 0.8 * (1.0 - 0.5 * std::cos(std::numbers::pi * t / 1024.0));
}

std::vector<double> tvar6_angles(double t, int T)
{
    const double slope = 0.1 / static_cast<double>(T - 1);
    return {0.05 + slope * t, 0.25, 0.45 - slope * t};
}

std::vector<double> tvar6_moduli() { return {1.1, 1.12, 1.1}; }

std::vector<double> roots_to_coeffs(std::span<const double> moduli, std::span<const double> thetas)
{
    if (moduli.size() != thetas.size())
        throw std::invalid_argument("roots_to_coeffs: moduli and angles differ in length");
    std::vector<double> poly{1.0};
    for (std::size_t j = 0; j < moduli.size(); ++j) {
        if (!std::isfinite(moduli[j]) || !std::isfinite(thetas[j]))
            throw std::invalid_argument("roots_to_coeffs: non-finite root parameter");
        if (!(moduli[j] > 0.0)) throw std::invalid_argument("roots_to_coeffs: modulus must be positive");
        // (1 - a B)(1 - conj(a) B) = 1 - 2 Re(a) B + |a|^2 B^2
        const double r = 1.0 / moduli[j];
        const double factor[3] = {1.0, -2.0 * r * std::cos(2.0 * std::numbers::pi * thetas[j]), r * r};
        std::vector<double> next(poly.size() + 2, 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (std::size_t k = 0; k < 3; ++k) next[i + k] += poly[i] * factor[k];
        poly = std::move(next);
    }
    std::vector<double> coeffs(poly.size() - 1);
    for (std::size_t k = 1; k < poly.size(); ++k) coeffs[k - 1] = -poly[k];
    return coeffs;
}

std::vector<double> simulate_tvar(const Grid& coeffs, std::span<const double> sigma2,
                                  std::mt19937_64& rng, int burn_in)
{
    const auto n = static_cast<std::size_t>(coeffs.rows());
    const auto order = static_cast<std::size_t>(coeffs.cols());
    if (sigma2.size() != n) throw std::invalid_argument("simulate_tvar: variance length differs from T");
    for (std::size_t t = 0; t < n; ++t)
        if (!(sigma2[t] > 0.0)) throw std::invalid_argument("simulate_tvar: variance must be positive");
    if (n == 0) return {};

    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t warm = static_cast<std::size_t>(std::max(burn_in, 0));
    std::vector<double> buf(warm + n, 0.0);
    for (std::size_t i = 0; i < warm + n; ++i) {
        const std::size_t row = i < warm ? 0 : i - warm;
        double v = std::sqrt(sigma2[row]) * normal(rng);
        for (std::size_t m = 1; m <= order && m <= i; ++m)
            v += coeffs(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(m - 1)) * buf[i - m];
        if (!(std::abs(v) <= kExplosion)) {
            throw std::runtime_error(i < warm ? "simulate_tvar: process exploded during warm-up"
                                              : "simulate_tvar: process exploded at t=" +
                                                    std::to_string(row + 1));
        }
        buf[i] = v;
    }
    return {buf.begin() + static_cast<std::ptrdiff_t>(warm), buf.end()};
}

SimulatedProcess gen_tvar2(int T, std::uint64_t seed)
{
    require_length(T, 3, "gen_tvar2");
    SimulatedProcess p;
    p.kind = ProcessKind::TVAR2;
    p.true_coeffs.resize(T, 2);
    for (int t = 0; t < T; ++t) {
        p.true_coeffs(t, 0) = tvar2_coefficient(static_cast<double>(t + 1));
        p.true_coeffs(t, 1) = -0.81;
    }
    p.true_sigma2 = unit_variance(T);
    std::mt19937_64 rng(seed);
    p.x = simulate_tvar(p.true_coeffs, p.true_sigma2, rng);
    return p;
}

SimulatedProcess gen_tvar6(int T, std::uint64_t seed)
{
    require_length(T, 7, "gen_tvar6");
    SimulatedProcess p;
    p.kind = ProcessKind::TVAR6;
    p.true_coeffs.resize(T, 6);
    p.root_angles.resize(T, 3);
    const std::vector<double> moduli = tvar6_moduli();
    for (int t = 0; t < T; ++t) {
        const std::vector<double> theta = tvar6_angles(static_cast<double>(t + 1), T);
        const std::vector<double> a = roots_to_coeffs(moduli, theta);
        for (int k = 0; k < 6; ++k) p.true_coeffs(t, k) = a[static_cast<std::size_t>(k)];
        for (int k = 0; k < 3; ++k) p.root_angles(t, k) = theta[static_cast<std::size_t>(k)];
    }
    p.true_sigma2 = unit_variance(T);
    std::mt19937_64 rng(seed);
    p.x = simulate_tvar(p.true_coeffs, p.true_sigma2, rng);
    return p;
}

SimulatedProcess gen_piecewise(int T, std::uint64_t seed)
{
    require_length(T, 4, "gen_piecewise");
    SimulatedProcess p;
    p.kind = ProcessKind::PieceAR;
    const int first_end = T / 2;       // 512 at T = 1024
    const int second_end = 3 * T / 4;  // 768 at T = 1024
    p.true_coeffs = Grid::Zero(T, 2);
    for (int t = 0; t < T; ++t) {
        if (t < first_end) {
            p.true_coeffs(t, 0) = 0.9;
        } else if (t < second_end) {
            p.true_coeffs(t, 0) = 1.69;
            p.true_coeffs(t, 1) = -0.81;
        } else {
            p.true_coeffs(t, 0) = 1.32;
            p.true_coeffs(t, 1) = -0.81;
        }
    }
    p.true_sigma2 = unit_variance(T);

    // Segments are mutually independent: each is simulated afresh with its own warm-up.
    std::mt19937_64 rng(seed);
    p.x.reserve(static_cast<std::size_t>(T));
    const int bounds[4] = {0, first_end, second_end, T};
    for (int s = 0; s < 3; ++s) {
        const int len = bounds[s + 1] - bounds[s];
        if (len == 0) continue;
        const Grid seg = p.true_coeffs.middleRows(bounds[s], len);
        const std::vector<double> var(static_cast<std::size_t>(len), 1.0);
        const std::vector<double> x = simulate_tvar(seg, var, rng);
        p.x.insert(p.x.end(), x.begin(), x.end());
    }
    return p;
}

SimulatedProcess gen_tvvar(int T, std::uint64_t seed, std::span<const double> variance_profile,
                           const Grid& coeff_profile)
{
    require_length(T, 1, "gen_tvvar");
    if (variance_profile.size() != static_cast<std::size_t>(T) || coeff_profile.rows() != T)
        throw std::invalid_argument("gen_tvvar: profiles must have T rows");
    SimulatedProcess p;
    p.kind = ProcessKind::TVVAR;
    p.true_coeffs = coeff_profile;
    p.true_sigma2.assign(variance_profile.begin(), variance_profile.end());
    std::mt19937_64 rng(seed);
    p.x = simulate_tvar(p.true_coeffs, p.true_sigma2, rng);
    return p;
}

SimulatedProcess generate(ProcessKind kind, int T, std::uint64_t seed)
{
    switch (kind) {
    case ProcessKind::TVAR2: return gen_tvar2(T, seed);
    case ProcessKind::TVAR6: return gen_tvar6(T, seed);
    case ProcessKind::PieceAR: return gen_piecewise(T, seed);
    case ProcessKind::TVVAR: {
        require_length(T, 3, "tvvar");
        Grid coeffs(T, 2);
        std::vector<double> var(static_cast<std::size_t>(T));
        const double modulus[1] = {1.15};
        for (int t = 0; t < T; ++t) {
            const double u = T > 1 ? static_cast<double>(t) / static_cast<double>(T - 1) : 0.0;
            const double theta[1] = {0.1 + 0.2 * u};
            const std::vector<double> a = roots_to_coeffs(modulus, theta);
            coeffs(t, 0) = a[0];
            coeffs(t, 1) = a[1];
            var[static_cast<std::size_t>(t)] =
                std::exp(std::sin(2.0 * std::numbers::pi * static_cast<double>(t + 1) / static_cast<double>(T)));
        }
        return gen_tvvar(T, seed, var, coeffs);
    }
    }
    throw std::invalid_argument("generate: unknown process kind");
}

Spectrogram true_spectrum(const SimulatedProcess& p, std::span<const double> freqs)
{
    return tvar_spectrum(p.true_coeffs, p.true_sigma2, freqs);
}

}  // namespace blf
