#ifndef BLF_SIMULATE_HPP
#define BLF_SIMULATE_HPP

/** @file
 * Reference nonstationary processes with known time-varying spectra.
 *
 * All generators discard 200 warm-up steps started from zero, run with the
 * coefficients and variance of the first retained step, so the retained
 * series begins close to its local stationary distribution.
 */

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "blf/spectrum.hpp"
#include "blf/tvar.hpp"

namespace blf {

enum class ProcessKind { TVAR2, TVAR6, PieceAR, TVVAR };

std::string to_string(ProcessKind k);
ProcessKind process_from_string(const std::string& name);

struct SimulatedProcess {
    ProcessKind kind = ProcessKind::TVAR2;
    std::vector<double> x;
    Grid true_coeffs;                 // T x P, x_t = sum_m a_{t,m} x_{t-m} + eps_t
    std::vector<double> true_sigma2;
    Grid root_angles;                 // TVAR6 only: T x 3 angles theta_{t,p}
};

inline constexpr int kBurnIn = 200;

/// a_t = 0.8 (1 - 0.5 cos(pi t / 1024)); the 1024 is fixed regardless of T.
double tvar2_coefficient(double t);

/// theta_{t,p}, p = 1..3, with t running 1..T in the linear terms.
std::vector<double> tvar6_angles(double t, int T);

/// Reciprocal-root moduli of the three TVAR6 root pairs.
std::vector<double> tvar6_moduli();

/**
 * Expands prod_j (1 - a_j B)(1 - conj(a_j) B), a_j = exp(2 pi i theta_j) / A_j,
 * and returns the AR coefficients (negated polynomial coefficients of
 * B^1..B^{2p}).
 */
std::vector<double> roots_to_coeffs(std::span<const double> moduli, std::span<const double> thetas);

SimulatedProcess gen_tvar2(int T, std::uint64_t seed);
SimulatedProcess gen_tvar6(int T, std::uint64_t seed);
/// Three independently simulated AR segments split at T/2 and 3T/4.
SimulatedProcess gen_piecewise(int T, std::uint64_t seed);
/// TVAR with caller-supplied coefficient and variance paths.
SimulatedProcess gen_tvvar(int T, std::uint64_t seed, std::span<const double> variance_profile,
                           const Grid& coeff_profile);

/// Simulates x_t = sum_m coeffs(t, m-1) x_{t-m} + eps_t with warm-up; throws
/// std::runtime_error naming t if |x_t| exceeds 1e12.
std::vector<double> simulate_tvar(const Grid& coeffs, std::span<const double> sigma2,
                                  std::mt19937_64& rng, int burn_in = kBurnIn);

/// Named generator.  TVVAR uses a default profile: one root pair of modulus
/// 1.15 whose angle sweeps 0.1 -> 0.3, variance exp(sin(2 pi t / T)).
SimulatedProcess generate(ProcessKind kind, int T, std::uint64_t seed);

Spectrogram true_spectrum(const SimulatedProcess& p, std::span<const double> freqs);

}  // namespace blf

#endif  // BLF_SIMULATE_HPP
