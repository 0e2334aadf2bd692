#ifndef BLF_TVAR_HPP
#define BLF_TVAR_HPP

#include <vector>

#include <Eigen/Core>

#include "blf/lattice.hpp"

namespace blf {

/// Time-by-lag grid, one row per time step.
using Grid = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Fitted TVAR(P): x_t = sum_m coeffs(t, m-1) x_{t-m} + eps_t, eps_t ~ N(0, sigma2[t]).
struct TvarFit {
    int order = 0;
    Grid coeffs;
    std::vector<double> sigma2;
    std::vector<double> order_loglik;
};

struct LevinsonResult {
    Grid forward;   // a_{t,k}^{(P)}
    Grid backward;  // d_{t,k}^{(P)}
};

/**
 * Time-varying Levinson recursion.  Column m-1 of @p alpha / @p beta holds the
 * stage-m forward / backward PARCOR path.  Each row is processed
 * independently:
 *
 *     a_k^(m) = a_k^(m-1) - alpha_m d_{m-k}^(m-1)
 *     d_k^(m) = d_k^(m-1) - beta_m  a_{m-k}^(m-1)
 */
LevinsonResult parcor_to_tvar(const Grid& alpha, const Grid& beta);

/// Stacks stage paths 1..P of @p run into PARCOR grids.
Grid stage_alpha_grid(const LatticeRun& run, int order);
Grid stage_beta_grid(const LatticeRun& run, int order);

TvarFit assemble_fit(const LatticeRun& run, int order);

}  // namespace blf

#endif  // BLF_TVAR_HPP
