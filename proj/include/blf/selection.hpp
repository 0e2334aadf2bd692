#ifndef BLF_SELECTION_HPP
#define BLF_SELECTION_HPP

/** @file
 * Discount-factor and order selection.
 *
 * BLFDyn picks (gamma_m, delta_m) greedily stage by stage, maximising the
 * forward predictive log-likelihood L_m on the residuals left by the stages
 * already chosen, and takes the order from the percent-change rule: the first
 * m - 1 for which L changes by less than tau percent going from m - 1 to m.
 *
 * BLFFix holds one pair across all stages.  Smoothed residuals make later
 * stages look better the faster the pair adapts, so the smoothed L_m cannot
 * rank pairs against each other.  BLFFix instead scores every (P, gamma,
 * delta) by the stage-P likelihood of filtered_scree() and keeps the best.
 */

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blf/lattice.hpp"
#include "blf/tvar.hpp"

namespace blf {

struct SearchGrid {
    std::vector<double> gammas;
    std::vector<double> deltas;
    int p_max = 15;

    /// lo, lo + step, ..., hi (inclusive up to rounding) for both discounts.
    static SearchGrid uniform(double lo, double hi, double step, int p_max);
    /// 0.80 to 1.00 in steps of 0.02, p_max = 15.
    static SearchGrid standard();
    static SearchGrid single(Discount d, int p_max);

    void validate() const;
    /// Pairs in tie-breaking order: gamma ascending, then delta ascending.
    std::vector<Discount> pairs() const;
};

enum class Method { BLFFix, BLFDyn, Fixed };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct OrderChoice {
    int order = 1;
    bool saturated = false;
};

struct SelectionReport {
    Method method = Method::BLFDyn;
    int chosen_order = 1;
    bool saturated = false;
    double tau = 0.5;
    std::vector<Discount> per_stage_discounts;  // one per evaluated stage
    std::vector<double> scree;                  // L_1..L_pmax
    std::vector<double> filtered_scree;         // BLFFix only: selection scores of the chosen pair
    TvarFit fit;
    LatticeRun run;
};

/**
 * Smallest m - 1 with |(L_m - L_{m-1}) / L_{m-1}| * 100 < tau.  When no m
 * satisfies the rule the full length is returned with saturated = true.
 * Throws std::invalid_argument for fewer than two entries, non-finite
 * entries, or a zero predecessor.
 */
OrderChoice select_order(std::span<const double> scree, double tau);

SelectionReport fit_blfdyn(std::span<const double> x, const SearchGrid& grid, const NigPrior& prior,
                           double tau, int threads = 1);
SelectionReport fit_blffix(std::span<const double> x, const SearchGrid& grid, const NigPrior& prior,
                           double tau, int threads = 1);
/// A single discount pair at a given order, no search.
SelectionReport fit_fixed(std::span<const double> x, Discount d, int order, const NigPrior& prior);

struct ScreeRow {
    int m = 0;
    double loglik = 0.0;
    std::optional<double> percent_change;  // undefined at m = 1
};

std::vector<ScreeRow> scree_table(const SelectionReport& report);

}  // namespace blf

#endif  // BLF_SELECTION_HPP
