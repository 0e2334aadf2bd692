#ifndef BLF_DLM_HPP
#define BLF_DLM_HPP

/** @file
 * Scalar conjugate dynamic linear model with discount-factor evolution.
 *
 * Models a single time-varying regression
 * \f[
 *     y_t = \theta_t x_t + \epsilon_t, \qquad \epsilon_t \sim N(0, \sigma_t^2)
 * \f]
 * where \f$\theta_t\f$ follows a random walk whose evolution variance is set
 * by the coefficient discount \f$\gamma\f$ and the precision
 * \f$\sigma_t^{-2}\f$ follows a beta-gamma multiplicative walk set by the
 * variance discount \f$\delta\f$.  The joint posterior stays normal/gamma, so
 * filtering, smoothing and sampling are all closed form.
 *
 * Coefficient scales (c) are stored in data units, i.e. already multiplied
 * by the current variance point estimate s.
 */

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace blf {

/// Normal/inverse-gamma initial prior: theta_0 ~ T(mean, scale), sigma^-2 ~ G(dof/2, kappa/2).
struct NigPrior {
    double mean = 0.0;
    double scale = 1.0;
    double dof = 1.0;
    double kappa = 1.0;

    void validate() const;
    double variance_estimate() const { return kappa / dof; }
};

/// Discount factors for coefficient (gamma) and variance (delta) evolution.
/// Both lie in (0, 1]; the value 1 is the static limit.
struct Discount {
    double gamma = 1.0;
    double delta = 1.0;

    void validate() const;
    friend bool operator==(const Discount&, const Discount&) = default;
};

/// Half-open index window [begin, end) of time steps that carry an observation.
/// Steps outside the window carry the posterior forward unchanged.
struct ActiveRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    bool contains(std::size_t t) const { return t >= begin && t < end; }
};

struct FilterState {
    NigPrior prior;
    ActiveRange active;
    std::vector<double> mean;   // mu_t
    std::vector<double> scale;  // c_t
    std::vector<double> dof;    // v_t
    std::vector<double> kappa;  // kappa_t
    std::vector<double> s;      // kappa_t / v_t
    std::vector<double> error;  // one-step forecast error e_t
    std::vector<double> q;      // forecast scale q_t

    std::size_t size() const { return mean.size(); }

    // Quantities at time t-1, with the prior standing in for t = 0.
    double prev_mean(std::size_t t) const { return t == 0 ? prior.mean : mean[t - 1]; }
    double prev_scale(std::size_t t) const { return t == 0 ? prior.scale : scale[t - 1]; }
    double prev_dof(std::size_t t) const { return t == 0 ? prior.dof : dof[t - 1]; }
    double prev_kappa(std::size_t t) const { return t == 0 ? prior.kappa : kappa[t - 1]; }
    double prev_s(std::size_t t) const { return t == 0 ? prior.variance_estimate() : s[t - 1]; }
};

struct SmoothState {
    std::vector<double> mean;   // mu_{t|T}
    std::vector<double> scale;  // c_{t|T}
    std::vector<double> dof;    // v_{t|T}
    std::vector<double> s;      // s_{t|T}
    std::vector<double> kappa;  // kappa_{t|T}

    std::size_t size() const { return mean.size(); }
};

/// One joint posterior draw of the coefficient and innovation-variance paths.
struct SampledPath {
    std::vector<double> theta;
    std::vector<double> sigma2;
};

/**
 * Sequential updating over t = 0..T-1.
 *
 * Throws std::invalid_argument on length mismatch or empty input, and
 * std::domain_error naming the offending index when an input is not finite.
 * When @p active is omitted every step is observed.
 */
FilterState forward_filter(std::span<const double> y, std::span<const double> x,
                           const NigPrior& prior, Discount d);
FilterState forward_filter(std::span<const double> y, std::span<const double> x,
                           const NigPrior& prior, Discount d, ActiveRange active);

/**
 * Retrospective smoothing.  Transitions into unobserved steps are treated as
 * static (no evolution), so the smoothed values are copied back across them.
 */
SmoothState backward_smooth(const FilterState& fs, Discount d);

/// Sum over observed steps of the one-step Student-t predictive log density.
double predictive_loglik(const FilterState& fs);

/// Log density of a Student-t with @p dof degrees of freedom and scale @p q at @p e.
double student_t_logpdf(double e, double dof, double q);

/**
 * Draws one joint path from the smoothing distribution: a beta-gamma
 * backward pass for the precisions, then a normal backward pass for the
 * coefficients conditional on the sampled variances.
 */
SampledPath backward_sample(const FilterState& fs, Discount d, std::mt19937_64& rng);

}  // namespace blf

#endif  // BLF_DLM_HPP
