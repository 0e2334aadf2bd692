#ifndef BLF_LATTICE_HPP
#define BLF_LATTICE_HPP

/** @file
 * Stage-wise Bayesian lattice filter.
 *
 * Stage m regresses the forward prediction error f^(m-1)_t on the lagged
 * backward error b^(m-1)_{t-m} (forward PARCOR alpha) and b^(m-1)_t on the
 * leading forward error f^(m-1)_{t+m} (backward PARCOR beta).  Each regression
 * is a discounted conjugate DLM; the smoothed PARCOR paths produce the next
 * stage's prediction errors.
 */

#include <span>
#include <vector>

#include "blf/dlm.hpp"

namespace blf {

struct StageResult {
    int m = 0;
    std::vector<double> alpha;      // smoothed forward PARCOR
    std::vector<double> beta;       // smoothed backward PARCOR
    std::vector<double> alpha_var;  // smoothed coefficient scale c_{t|T}, forward
    std::vector<double> beta_var;   // smoothed coefficient scale c_{t|T}, backward
    std::vector<double> sf2;        // smoothed forward innovation variance
    std::vector<double> sb2;        // smoothed backward innovation variance
    std::vector<double> f_next;
    std::vector<double> b_next;
    double loglik = 0.0;            // predictive log-likelihood of the forward regression
    Discount discount_f;
    Discount discount_b;

    // Filtering output kept for posterior sampling.
    FilterState forward;
    FilterState backward;
};

struct LatticeRun {
    std::vector<double> x;
    NigPrior prior;
    std::vector<StageResult> stages;

    int order() const { return static_cast<int>(stages.size()); }
};

/// Per-stage discount pair for the forward and backward regressions.
struct StageDiscounts {
    Discount forward;
    Discount backward;
};

/**
 * Default conjugate prior for a series: zero mean, unit scale, one degree of
 * freedom, and kappa matched to the sample variance of the first
 * min(T, 100) observations (falls back to 1 when that variance is zero).
 */
NigPrior default_prior(std::span<const double> x);

/// Forward-direction response/regressor setup; exposed for the grid search.
FilterState forward_stage_filter(std::span<const double> f_prev, std::span<const double> b_prev,
                                 int m, Discount d, const NigPrior& prior);

StageResult run_stage(std::span<const double> f_prev, std::span<const double> b_prev, int m,
                      Discount d_f, Discount d_b, const NigPrior& prior);

LatticeRun run_lattice(std::span<const double> x, int order,
                       std::span<const StageDiscounts> per_stage, const NigPrior& prior);

/// Convenience overload: the same pair at every stage and in both directions.
LatticeRun run_lattice(std::span<const double> x, int order, Discount d, const NigPrior& prior);

/**
 * Stage log-likelihoods L_1..L_order for one discount pair, with each stage's
 * residuals formed from the one-step-ahead PARCOR means.  No stage sees
 * data beyond the point it predicts.
 */
std::vector<double> filtered_scree(std::span<const double> x, int order, Discount d, const NigPrior& prior);

}  // namespace blf

#endif  // BLF_LATTICE_HPP
