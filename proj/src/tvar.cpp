#include "blf/tvar.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace blf {

LevinsonResult parcor_to_tvar(const Grid& alpha, const Grid& beta)
{
    if (alpha.rows() != beta.rows() || alpha.cols() != beta.cols())
        throw std::invalid_argument("parcor_to_tvar: forward and backward grids differ in shape");
    if (!alpha.allFinite() || !beta.allFinite())
        throw std::invalid_argument("parcor_to_tvar: non-finite PARCOR value");

    const Eigen::Index n = alpha.rows();
    const Eigen::Index order = alpha.cols();
    LevinsonResult out{Grid::Zero(n, order), Grid::Zero(n, order)};

    std::vector<double> a_prev(static_cast<std::size_t>(order));
    std::vector<double> d_prev(static_cast<std::size_t>(order));
    for (Eigen::Index t = 0; t < n; ++t) {
        auto a = out.forward.row(t);
        auto d = out.backward.row(t);
        for (Eigen::Index m = 1; m <= order; ++m) {
            for (Eigen::Index k = 0; k < m - 1; ++k) {
                a_prev[static_cast<std::size_t>(k)] = a(k);
                d_prev[static_cast<std::size_t>(k)] = d(k);
            }
            const double am = alpha(t, m - 1);
            const double dm = beta(t, m - 1);
            for (Eigen::Index k = 1; k < m; ++k) {
                a(k - 1) = a_prev[static_cast<std::size_t>(k - 1)] - am * d_prev[static_cast<std::size_t>(m - k - 1)];
                d(k - 1) = d_prev[static_cast<std::size_t>(k - 1)] - dm * a_prev[static_cast<std::size_t>(m - k - 1)];
            }
            a(m - 1) = am;
            d(m - 1) = dm;
        }
    }
    return out;
}

namespace {

Grid stack_paths(const LatticeRun& run, int order, bool forward)
{
    if (order < 1 || order > run.order())
        throw std::invalid_argument("requested order " + std::to_string(order) +
                                    " exceeds the " + std::to_string(run.order()) +
                                    " available lattice stages");
    const auto n = static_cast<Eigen::Index>(run.x.size());
    Grid g(n, order);
    for (int m = 0; m < order; ++m) {
        const auto& path = forward ? run.stages[static_cast<std::size_t>(m)].alpha
                                   : run.stages[static_cast<std::size_t>(m)].beta;
        for (Eigen::Index t = 0; t < n; ++t) g(t, m) = path[static_cast<std::size_t>(t)];
    }
    return g;
}

}  // namespace

Grid stage_alpha_grid(const LatticeRun& run, int order) { return stack_paths(run, order, true); }
Grid stage_beta_grid(const LatticeRun& run, int order) { return stack_paths(run, order, false); }

TvarFit assemble_fit(const LatticeRun& run, int order)
{
    TvarFit fit;
    fit.order = order;
    fit.coeffs = parcor_to_tvar(stage_alpha_grid(run, order), stage_beta_grid(run, order)).forward;
    fit.sigma2 = run.stages[static_cast<std::size_t>(order - 1)].sf2;
    fit.order_loglik.reserve(static_cast<std::size_t>(order));
    for (int m = 0; m < order; ++m) fit.order_loglik.push_back(run.stages[static_cast<std::size_t>(m)].loglik);
    return fit;
}

}  // namespace blf
