#include "blf/dlm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace blf {

namespace {

void require_finite(double value, const char* what, std::size_t t)
{
    if (!std::isfinite(value)) {
        throw std::domain_error(std::string("forward_filter: non-finite ") + what +
                                " at t=" + std::to_string(t));
    }
}

}  // namespace

void NigPrior::validate() const
{
    if (!std::isfinite(mean)) throw std::invalid_argument("NigPrior: mean must be finite");
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::invalid_argument("NigPrior: scale must be positive");
    if (!(dof > 0.0) || !std::isfinite(dof))
        throw std::invalid_argument("NigPrior: dof must be positive");
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("NigPrior: kappa must be positive");
}

void Discount::validate() const
{
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("Discount: gamma must lie in (0, 1], got " + std::to_string(gamma));
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("Discount: delta must lie in (0, 1], got " + std::to_string(delta));
}

FilterState forward_filter(std::span<const double> y, std::span<const double> x,
                           const NigPrior& prior, Discount d)
{
    return forward_filter(y, x, prior, d, ActiveRange{0, y.size()});
}

FilterState forward_filter(std::span<const double> y, std::span<const double> x,
                           const NigPrior& prior, Discount d, ActiveRange active)
{
    if (y.size() != x.size())
        throw std::invalid_argument("forward_filter: response and regressor lengths differ");
    if (y.empty()) throw std::invalid_argument("forward_filter: empty series");
    if (active.begin > active.end || active.end > y.size())
        throw std::invalid_argument("forward_filter: active range out of bounds");
    prior.validate();
    d.validate();

    const std::size_t n = y.size();
    FilterState fs;
    fs.prior = prior;
    fs.active = active;
    fs.mean.resize(n);
    fs.scale.resize(n);
    fs.dof.resize(n);
    fs.kappa.resize(n);
    fs.s.resize(n);
    fs.error.resize(n);
    fs.q.resize(n);

    for (std::size_t t = 0; t < n; ++t) {
        require_finite(y[t], "response", t);
        require_finite(x[t], "regressor", t);

        const double m_prev = fs.prev_mean(t);
        const double c_prev = fs.prev_scale(t);
        const double v_prev = fs.prev_dof(t);
        const double k_prev = fs.prev_kappa(t);
        const double s_prev = fs.prev_s(t);

        if (!active.contains(t)) {
            fs.mean[t] = m_prev;
            fs.scale[t] = c_prev;
            fs.dof[t] = v_prev;
            fs.kappa[t] = k_prev;
            fs.s[t] = s_prev;
            fs.error[t] = 0.0;
            fs.q[t] = s_prev;
            continue;
        }

        // r = c + w with w = c (1 - gamma) / gamma, reduced.
        const double r = c_prev / d.gamma;
        const double q = r * x[t] * x[t] + s_prev;
        const double e = y[t] - m_prev * x[t];
        const double z = r * x[t] / q;

        const double v = d.delta * v_prev + 1.0;
        const double k = d.delta * k_prev + s_prev * e * e / q;
        const double s = k / v;

        fs.mean[t] = m_prev + z * e;
        // r - z^2 q == r s_prev / q; the latter cannot cancel to a negative value.
        fs.scale[t] = (r * s_prev / q) * (s / s_prev);
        fs.dof[t] = v;
        fs.kappa[t] = k;
        fs.s[t] = s;
        fs.error[t] = e;
        fs.q[t] = q;

        require_finite(fs.mean[t], "posterior mean", t);
        require_finite(fs.scale[t], "posterior scale", t);
        require_finite(fs.kappa[t], "posterior kappa", t);
    }
    return fs;
}

SmoothState backward_smooth(const FilterState& fs, Discount d)
{
    d.validate();
    const std::size_t n = fs.size();
    SmoothState ss;
    ss.mean = fs.mean;
    ss.scale = fs.scale;
    ss.dof = fs.dof;
    ss.s = fs.s;
    ss.kappa = fs.kappa;
    if (n < 2) return ss;

    for (std::size_t t = n - 1; t-- > 0;) {
        const bool evolved = fs.active.contains(t + 1);
        const double g = evolved ? d.gamma : 1.0;
        const double dl = evolved ? d.delta : 1.0;

        ss.mean[t] = (1.0 - g) * fs.mean[t] + g * ss.mean[t + 1];
        ss.s[t] = 1.0 / ((1.0 - dl) / fs.s[t] + dl / ss.s[t + 1]);
        ss.dof[t] = (1.0 - dl) * fs.dof[t] + dl * ss.dof[t + 1];
        // Recursion on the variance-free scales c/s, rescaled by s_{t|T}.
        ss.scale[t] = ss.s[t] * ((1.0 - g) * fs.scale[t] / fs.s[t] +
                                 g * g * ss.scale[t + 1] / ss.s[t + 1]);
        ss.kappa[t] = ss.dof[t] * ss.s[t];

        if (!std::isfinite(ss.mean[t]) || !std::isfinite(ss.scale[t]) || !std::isfinite(ss.s[t]))
            throw std::domain_error("backward_smooth: non-finite value at t=" + std::to_string(t));
    }
    return ss;
}

double student_t_logpdf(double e, double dof, double q)
{
    return std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) -
           0.5 * std::log(dof * std::numbers::pi * q) -
           0.5 * (dof + 1.0) * std::log1p(e * e / (dof * q));
}

double predictive_loglik(const FilterState& fs)
{
    double total = 0.0;
    for (std::size_t t = fs.active.begin; t < fs.active.end; ++t) {
        const double v = fs.prev_dof(t);
        if (!(v > 0.0))
            throw std::domain_error("predictive_loglik: non-positive dof at t=" + std::to_string(t));
        total += student_t_logpdf(fs.error[t], v, fs.q[t]);
    }
    return total;
}

SampledPath backward_sample(const FilterState& fs, Discount d, std::mt19937_64& rng)
{
    d.validate();
    const std::size_t n = fs.size();
    SampledPath path;
    if (n == 0) return path;
    path.theta.resize(n);
    path.sigma2.resize(n);

    std::normal_distribution<double> normal(0.0, 1.0);
    auto draw_gamma = [&rng](double shape, double rate) {
        std::gamma_distribution<double> g(shape, 1.0 / rate);
        return g(rng);
    };

    // Precisions: phi_t = delta phi_{t+1} + G((1 - delta) v_t / 2, kappa_t / 2).
    std::vector<double> phi(n);
    phi[n - 1] = draw_gamma(0.5 * fs.dof[n - 1], 0.5 * fs.kappa[n - 1]);
    for (std::size_t t = n - 1; t-- > 0;) {
        const double dl = fs.active.contains(t + 1) ? d.delta : 1.0;
        phi[t] = dl * phi[t + 1];
        if (dl < 1.0) phi[t] += draw_gamma(0.5 * (1.0 - dl) * fs.dof[t], 0.5 * fs.kappa[t]);
    }
    for (std::size_t t = 0; t < n; ++t) path.sigma2[t] = 1.0 / phi[t];

    // Coefficients, conditional on the variance path.
    path.theta[n - 1] = fs.mean[n - 1] +
                        std::sqrt(fs.scale[n - 1] * path.sigma2[n - 1] / fs.s[n - 1]) * normal(rng);
    for (std::size_t t = n - 1; t-- > 0;) {
        const double g = fs.active.contains(t + 1) ? d.gamma : 1.0;
        const double centre = (1.0 - g) * fs.mean[t] + g * path.theta[t + 1];
        const double var = (1.0 - g) * fs.scale[t] * path.sigma2[t] / fs.s[t];
        path.theta[t] = centre + std::sqrt(var) * normal(rng);
    }
    return path;
}

}  // namespace blf
