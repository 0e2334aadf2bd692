#include "blf/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace blf {

namespace {

constexpr std::size_t kPriorSegment = 100;

void check_stage_inputs(std::span<const double> f_prev, std::span<const double> b_prev, int m)
{
    if (f_prev.size() != b_prev.size())
        throw std::invalid_argument("run_stage: forward and backward inputs differ in length");
    if (m < 1 || static_cast<std::size_t>(m) >= f_prev.size())
        throw std::invalid_argument("run_stage: stage " + std::to_string(m) +
                                    " requires 1 <= m < T (T=" + std::to_string(f_prev.size()) + ")");
}

}  // namespace

NigPrior default_prior(std::span<const double> x)
{
    const std::size_t n = std::min(x.size(), kPriorSegment);
    double var = 0.0;
    if (n >= 2) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += x[i];
        mean /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) var += (x[i] - mean) * (x[i] - mean);
        var /= static_cast<double>(n - 1);
    }
    if (!(var > 0.0) || !std::isfinite(var)) var = 1.0;

    NigPrior prior;
    prior.mean = 0.0;
    prior.scale = 1.0;
    prior.dof = 1.0;
    // E[sigma^-2] = dof / kappa matches the reciprocal sample variance.
    prior.kappa = prior.dof * var;
    return prior;
}

FilterState forward_stage_filter(std::span<const double> f_prev, std::span<const double> b_prev,
                                 int m, Discount d, const NigPrior& prior)
{
    check_stage_inputs(f_prev, b_prev, m);
    const std::size_t n = f_prev.size();
    const auto lag = static_cast<std::size_t>(m);
    std::vector<double> regressor(n, 0.0);
    for (std::size_t t = lag; t < n; ++t) regressor[t] = b_prev[t - lag];
    return forward_filter(f_prev, regressor, prior, d, ActiveRange{lag, n});
}

StageResult run_stage(std::span<const double> f_prev, std::span<const double> b_prev, int m,
                      Discount d_f, Discount d_b, const NigPrior& prior)
{
    check_stage_inputs(f_prev, b_prev, m);
    const std::size_t n = f_prev.size();
    const auto lag = static_cast<std::size_t>(m);

    StageResult st;
    st.m = m;
    st.discount_f = d_f;
    st.discount_b = d_b;

    st.forward = forward_stage_filter(f_prev, b_prev, m, d_f, prior);

    std::vector<double> lead(n, 0.0);
    for (std::size_t t = 0; t + lag < n; ++t) lead[t] = f_prev[t + lag];
    st.backward = forward_filter(b_prev, lead, prior, d_b, ActiveRange{0, n - lag});

    const SmoothState fwd = backward_smooth(st.forward, d_f);
    const SmoothState bwd = backward_smooth(st.backward, d_b);

    st.alpha = fwd.mean;
    st.alpha_var = fwd.scale;
    st.sf2 = fwd.s;
    st.beta = bwd.mean;
    st.beta_var = bwd.scale;
    st.sb2 = bwd.s;
    st.loglik = predictive_loglik(st.forward);

    st.f_next.assign(f_prev.begin(), f_prev.end());
    st.b_next.assign(b_prev.begin(), b_prev.end());
    for (std::size_t t = lag; t < n; ++t) st.f_next[t] = f_prev[t] - st.alpha[t] * b_prev[t - lag];
    for (std::size_t t = 0; t + lag < n; ++t) st.b_next[t] = b_prev[t] - st.beta[t] * f_prev[t + lag];

    for (std::size_t t = 0; t < n; ++t) {
        if (!std::isfinite(st.f_next[t]) || !std::isfinite(st.b_next[t]))
            throw std::domain_error("run_stage: non-finite residual at stage " + std::to_string(m) +
                                    ", t=" + std::to_string(t));
    }
    return st;
}

LatticeRun run_lattice(std::span<const double> x, int order,
                       std::span<const StageDiscounts> per_stage, const NigPrior& prior)
{
    if (order < 1 || static_cast<std::size_t>(order) >= x.size())
        throw std::invalid_argument("run_lattice: order must satisfy 1 <= P < T");
    if (per_stage.size() != static_cast<std::size_t>(order))
        throw std::invalid_argument("run_lattice: need one discount pair per stage");

    LatticeRun run;
    run.x.assign(x.begin(), x.end());
    run.prior = prior;
    run.stages.reserve(static_cast<std::size_t>(order));

    std::vector<double> f = run.x;
    std::vector<double> b = run.x;
    for (int m = 1; m <= order; ++m) {
        const auto& d = per_stage[static_cast<std::size_t>(m - 1)];
        run.stages.push_back(run_stage(f, b, m, d.forward, d.backward, prior));
        f = run.stages.back().f_next;
        b = run.stages.back().b_next;
    }
    return run;
}

LatticeRun run_lattice(std::span<const double> x, int order, Discount d, const NigPrior& prior)
{
    const std::vector<StageDiscounts> per_stage(static_cast<std::size_t>(std::max(order, 0)),
                                                StageDiscounts{d, d});
    return run_lattice(x, order, per_stage, prior);
}

std::vector<double> filtered_scree(std::span<const double> x, int order, Discount d, const NigPrior& prior)
{
    if (order < 1 || static_cast<std::size_t>(order) >= x.size())
        throw std::invalid_argument("filtered_scree: order must satisfy 1 <= P < T");
    const std::size_t n = x.size();
    std::vector<double> f(x.begin(), x.end());
    std::vector<double> b = f;
    std::vector<double> f_next(n), b_next(n), lead(n);
    std::vector<double> scree;
    scree.reserve(static_cast<std::size_t>(order));
    for (int m = 1; m <= order; ++m) {
        const auto lag = static_cast<std::size_t>(m);
        const FilterState fwd = forward_stage_filter(f, b, m, d, prior);
        scree.push_back(predictive_loglik(fwd));
        if (m == order) break;

        std::fill(lead.begin(), lead.end(), 0.0);
        for (std::size_t t = 0; t + lag < n; ++t) lead[t] = f[t + lag];
        const FilterState bwd = forward_filter(b, lead, prior, d, ActiveRange{0, n - lag});

        f_next = f;
        b_next = b;
        for (std::size_t t = lag; t < n; ++t) f_next[t] = f[t] - fwd.prev_mean(t) * b[t - lag];
        for (std::size_t t = 0; t + lag < n; ++t) b_next[t] = b[t] - bwd.prev_mean(t) * f[t + lag];
        f.swap(f_next);
        b.swap(b_next);
    }
    return scree;
}

}  // namespace blf
