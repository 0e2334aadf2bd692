#include "blf/selection.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "blf/parallel.hpp"

namespace blf {

namespace {

std::vector<double> ladder(double lo, double hi, double step)
{
    if (!(step > 0.0)) throw std::invalid_argument("SearchGrid: step must be positive");
    if (!(lo <= hi)) throw std::invalid_argument("SearchGrid: lower bound exceeds upper bound");
    std::vector<double> values;
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= count; ++i) {
        double v = lo + static_cast<double>(i) * step;
        // Keep round numbers round: 0.8 + 10 * 0.02 should be 1, not 0.99999...
        v = std::round(v * 1e12) / 1e12;
        values.push_back(std::min(v, hi));
    }
    return values;
}

double percent_change(double prev, double cur)
{
    return std::abs((cur - prev) / prev) * 100.0;
}

void check_series(std::span<const double> x, int p_max)
{
    if (x.size() < static_cast<std::size_t>(p_max) + 2)
        throw std::invalid_argument("series of length " + std::to_string(x.size()) +
                                    " is too short for p_max=" + std::to_string(p_max) +
                                    " (need at least p_max + 2)");
}

SelectionReport finish(Method method, LatticeRun run, std::vector<Discount> discounts, double tau)
{
    SelectionReport rep;
    rep.method = method;
    rep.tau = tau;
    rep.per_stage_discounts = std::move(discounts);
    for (const auto& st : run.stages) rep.scree.push_back(st.loglik);
    if (rep.scree.size() >= 2) {
        const OrderChoice choice = select_order(rep.scree, tau);
        rep.chosen_order = choice.order;
        rep.saturated = choice.saturated;
    } else {
        rep.chosen_order = static_cast<int>(rep.scree.size());
        rep.saturated = true;
    }
    rep.fit = assemble_fit(run, rep.chosen_order);
    rep.run = std::move(run);
    return rep;
}

}  // namespace

SearchGrid SearchGrid::uniform(double lo, double hi, double step, int p_max)
{
    SearchGrid g;
    g.gammas = ladder(lo, hi, step);
    g.deltas = g.gammas;
    g.p_max = p_max;
    g.validate();
    return g;
}

SearchGrid SearchGrid::standard() { return uniform(0.8, 1.0, 0.02, 15); }

SearchGrid SearchGrid::single(Discount d, int p_max)
{
    SearchGrid g;
    g.gammas = {d.gamma};
    g.deltas = {d.delta};
    g.p_max = p_max;
    g.validate();
    return g;
}

void SearchGrid::validate() const
{
    if (gammas.empty() || deltas.empty()) throw std::invalid_argument("SearchGrid: empty discount list");
    if (p_max < 1) throw std::invalid_argument("SearchGrid: p_max must be at least 1");
    for (double g : gammas) Discount{g, 1.0}.validate();
    for (double d : deltas) Discount{1.0, d}.validate();
}

std::vector<Discount> SearchGrid::pairs() const
{
    std::vector<double> gs = gammas;
    std::vector<double> ds = deltas;
    std::sort(gs.begin(), gs.end());
    std::sort(ds.begin(), ds.end());
    std::vector<Discount> out;
    out.reserve(gs.size() * ds.size());
    for (double g : gs)
        for (double d : ds) out.push_back({g, d});
    return out;
}

std::string to_string(Method m)
{
    switch (m) {
    case Method::BLFFix: return "blffix";
    case Method::BLFDyn: return "blfdyn";
    case Method::Fixed: return "fixed";
    }
    return "unknown";
}

Method method_from_string(const std::string& name)
{
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "blffix") return Method::BLFFix;
    if (lower == "blfdyn") return Method::BLFDyn;
    if (lower == "fixed") return Method::Fixed;
    throw std::invalid_argument("unknown method '" + name + "' (expected blfdyn, blffix or fixed)");
}

OrderChoice select_order(std::span<const double> scree, double tau)
{
    if (scree.size() < 2) throw std::invalid_argument("select_order: need at least two scree values");
    for (double v : scree)
        if (!std::isfinite(v)) throw std::invalid_argument("select_order: non-finite scree value");
    for (std::size_t m = 1; m < scree.size(); ++m) {
        if (scree[m - 1] == 0.0)
            throw std::invalid_argument("select_order: zero log-likelihood at stage " + std::to_string(m));
        if (percent_change(scree[m - 1], scree[m]) < tau) return {static_cast<int>(m), false};
    }
    return {static_cast<int>(scree.size()), true};
}

SelectionReport fit_blfdyn(std::span<const double> x, const SearchGrid& grid, const NigPrior& prior,
                           double tau, int threads)
{
    grid.validate();
    prior.validate();
    check_series(x, grid.p_max);
    const std::vector<Discount> candidates = grid.pairs();

    LatticeRun run;
    run.x.assign(x.begin(), x.end());
    run.prior = prior;
    std::vector<Discount> chosen;

    std::vector<double> f = run.x;
    std::vector<double> b = run.x;
    std::vector<double> score(candidates.size());
    for (int m = 1; m <= grid.p_max; ++m) {
        parallel_for(candidates.size(), threads, [&](std::size_t i) {
            score[i] = predictive_loglik(forward_stage_filter(f, b, m, candidates[i], prior));
        });
        // Strict comparison keeps the first maximiser.
        std::size_t best = 0;
        for (std::size_t i = 1; i < score.size(); ++i)
            if (score[i] > score[best]) best = i;

        const Discount d = candidates[best];
        chosen.push_back(d);
        run.stages.push_back(run_stage(f, b, m, d, d, prior));
        f = run.stages.back().f_next;
        b = run.stages.back().b_next;
    }
    return finish(Method::BLFDyn, std::move(run), std::move(chosen), tau);
}

SelectionReport fit_blffix(std::span<const double> x, const SearchGrid& grid, const NigPrior& prior,
                           double tau, int threads)
{
    grid.validate();
    prior.validate();
    check_series(x, grid.p_max);
    const std::vector<Discount> candidates = grid.pairs();

    std::vector<std::vector<double>> scores(candidates.size());
    parallel_for(candidates.size(), threads,
                 [&](std::size_t i) { scores[i] = filtered_scree(x, grid.p_max, candidates[i], prior); });

    // Pairs in grid order, orders ascending; strict comparison keeps the first maximiser.
    std::size_t best = 0;
    int best_order = 1;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (std::size_t m = 0; m < scores[i].size(); ++m) {
            if (scores[i][m] > scores[best][static_cast<std::size_t>(best_order - 1)]) {
                best = i;
                best_order = static_cast<int>(m + 1);
            }
        }
    }

    const Discount d = candidates[best];
    LatticeRun run = run_lattice(x, grid.p_max, d, prior);
    SelectionReport rep;
    rep.method = Method::BLFFix;
    rep.tau = tau;
    rep.chosen_order = best_order;
    rep.saturated = false;
    rep.per_stage_discounts.assign(static_cast<std::size_t>(grid.p_max), d);
    for (const auto& st : run.stages) rep.scree.push_back(st.loglik);
    rep.filtered_scree = std::move(scores[best]);
    rep.fit = assemble_fit(run, best_order);
    rep.run = std::move(run);
    return rep;
}

SelectionReport fit_fixed(std::span<const double> x, Discount d, int order, const NigPrior& prior)
{
    d.validate();
    prior.validate();
    if (order < 1) throw std::invalid_argument("fit_fixed: order must be at least 1");
    check_series(x, order);
    LatticeRun run = run_lattice(x, order, d, prior);
    SelectionReport rep;
    rep.method = Method::Fixed;
    rep.chosen_order = order;
    rep.tau = std::numeric_limits<double>::quiet_NaN();
    rep.per_stage_discounts.assign(static_cast<std::size_t>(order), d);
    for (const auto& st : run.stages) rep.scree.push_back(st.loglik);
    rep.fit = assemble_fit(run, order);
    rep.run = std::move(run);
    return rep;
}

std::vector<ScreeRow> scree_table(const SelectionReport& report)
{
    std::vector<ScreeRow> rows;
    rows.reserve(report.scree.size());
    for (std::size_t i = 0; i < report.scree.size(); ++i) {
        ScreeRow row;
        row.m = static_cast<int>(i + 1);
        row.loglik = report.scree[i];
        if (i > 0 && report.scree[i - 1] != 0.0)
            row.percent_change = percent_change(report.scree[i - 1], report.scree[i]);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace blf
