#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "blf/dlm.hpp"
#include "oracles.hpp"

using namespace blf;

namespace {

NigPrior make_prior(double mean, double scale, double dof, double kappa)
{
    NigPrior p;
    p.mean = mean;
    p.scale = scale;
    p.dof = dof;
    p.kappa = kappa;
    return p;
}

void check_against_static(const std::vector<double>& y, const std::vector<double>& x, const NigPrior& prior,
                          double tol)
{
    const FilterState fs = forward_filter(y, x, prior, Discount{1.0, 1.0});
    const double s0 = prior.kappa / prior.dof;
    const auto ref = oracle::static_regression(y, x, prior.mean, prior.scale / s0, prior.dof, prior.kappa);
    const std::size_t T = y.size() - 1;
    CHECK(oracle::rel_err(fs.mean[T], ref.m) < tol);
    CHECK(oracle::rel_err(fs.dof[T], ref.n) < tol);
    CHECK(oracle::rel_err(fs.kappa[T], ref.d) < tol);
    // c_T is the coefficient scale on the s_T scale: c_T = V_T * d_T / n_T.
    CHECK(oracle::rel_err(fs.scale[T], ref.V * ref.d / ref.n) < tol);
}

}  // namespace

TEST_CASE("static limit matches the closed-form conjugate posterior on a three-point series")
{
    const std::vector<double> y{1.0, 2.0, 1.5};
    const std::vector<double> x{1.0, 1.0, 1.0};
    check_against_static(y, x, make_prior(0.0, 1.0, 1.0, 1.0), 1e-12);
}

TEST_CASE("static limit matches the conjugate posterior on random regressions")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_int_distribution<int> len(1, 50);
    for (int rep = 0; rep < 25; ++rep) {
        const int T = len(rng);
        std::vector<double> y(T), x(T);
        for (int t = 0; t < T; ++t) {
            x[t] = u(rng);
            y[t] = 0.7 * x[t] + 0.3 * u(rng);
        }
        const NigPrior prior = make_prior(u(rng), 0.5 + std::abs(u(rng)), 1.0 + std::abs(u(rng)), 0.2 + std::abs(u(rng)));
        check_against_static(y, x, prior, 1e-10);
    }
}

TEST_CASE("a zero regressor leaves the coefficient unchanged")
{
    const std::vector<double> y{0.5, -1.2, 0.8, 2.0};
    const std::vector<double> x{1.0, 0.0, -0.5, 0.0};
    const FilterState fs = forward_filter(y, x, make_prior(0.2, 1.0, 2.0, 1.0), Discount{0.9, 0.95});
    for (std::size_t t : {std::size_t{1}, std::size_t{3}}) {
        CHECK(fs.mean[t] == fs.mean[t - 1]);
        CHECK(fs.q[t] == fs.s[t - 1]);
        CHECK(fs.error[t] == y[t]);
    }
}

TEST_CASE("filter state stays positive and keeps s = kappa / v")
{
    const auto x = oracle::white_noise(300, 5);
    std::vector<double> y(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) y[t] = std::sin(0.01 * static_cast<double>(t)) * x[t] + 0.1 * x[(t + 7) % x.size()];
    for (Discount d : {Discount{0.8, 0.8}, Discount{0.95, 1.0}, Discount{1.0, 0.85}}) {
        const FilterState fs = forward_filter(y, x, make_prior(0.0, 1.0, 1.0, 1.0), d);
        for (std::size_t t = 0; t < fs.size(); ++t) {
            REQUIRE(fs.scale[t] > 0.0);
            REQUIRE(fs.s[t] > 0.0);
            REQUIRE(fs.q[t] > 0.0);
            REQUIRE(fs.dof[t] > 0.0);
            REQUIRE(fs.s[t] == fs.kappa[t] / fs.dof[t]);
        }
    }
}

TEST_CASE("the reduced evolution scale equals c + w")
{
    const std::vector<double> y{0.3, -0.4, 1.1, 0.2, -0.7};
    const std::vector<double> x{1.0, 0.5, -0.8, 1.3, 0.4};
    const Discount d{0.93, 0.97};
    const FilterState fs = forward_filter(y, x, make_prior(0.0, 1.0, 1.0, 0.5), d);
    for (std::size_t t = 0; t < fs.size(); ++t) {
        const double c = fs.prev_scale(t);
        const double r_full = c + c * (1.0 - d.gamma) / d.gamma;
        const double q = r_full * x[t] * x[t] + fs.prev_s(t);
        CHECK(fs.q[t] == doctest::Approx(q).epsilon(1e-14));
    }
}

TEST_CASE("forward_filter rejects bad input")
{
    const NigPrior prior;
    const std::vector<double> two{1.0, 2.0};
    const std::vector<double> three{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(forward_filter(two, three, prior, Discount{}), std::invalid_argument);
    CHECK_THROWS_AS(forward_filter(std::vector<double>{}, std::vector<double>{}, prior, Discount{}),
                    std::invalid_argument);
    const std::vector<double> bad{1.0, std::numeric_limits<double>::quiet_NaN(), 3.0};
    try {
        forward_filter(bad, three, prior, Discount{});
        FAIL("expected a domain_error");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("t=1") != std::string::npos);
    }
    CHECK_THROWS_AS(Discount({0.0, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(Discount({1.0, 1.01}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_prior(0.0, 0.0, 1.0, 1.0).validate(), std::invalid_argument);
}

TEST_CASE("smoothing boundary and static limit")
{
    const std::vector<double> y{0.4, -1.0, 0.9, 1.7, -0.2, 0.6};
    const std::vector<double> x{1.0, 0.3, -0.7, 1.1, 0.9, -0.4};
    const NigPrior prior = make_prior(0.0, 1.0, 1.0, 1.0);

    SUBCASE("single observation")
    {
        const FilterState fs = forward_filter(std::vector<double>{1.3}, std::vector<double>{0.8}, prior, Discount{0.9, 0.9});
        const SmoothState sm = backward_smooth(fs, Discount{0.9, 0.9});
        CHECK(sm.mean[0] == fs.mean[0]);
        CHECK(sm.scale[0] == fs.scale[0]);
        CHECK(sm.s[0] == fs.s[0]);
        CHECK(sm.dof[0] == fs.dof[0]);
    }
    SUBCASE("final step copied exactly")
    {
        const Discount d{0.9, 0.95};
        const FilterState fs = forward_filter(y, x, prior, d);
        const SmoothState sm = backward_smooth(fs, d);
        const std::size_t T = y.size() - 1;
        CHECK(sm.mean[T] == fs.mean[T]);
        CHECK(sm.scale[T] == fs.scale[T]);
        CHECK(sm.s[T] == fs.s[T]);
        CHECK(sm.dof[T] == fs.dof[T]);
        CHECK(sm.kappa[T] == fs.kappa[T]);
    }
    SUBCASE("static discounts carry the final posterior back")
    {
        const FilterState fs = forward_filter(y, x, prior, Discount{1.0, 1.0});
        const SmoothState sm = backward_smooth(fs, Discount{1.0, 1.0});
        for (std::size_t t = 0; t < y.size(); ++t) {
            CHECK(sm.mean[t] == fs.mean.back());
            CHECK(sm.scale[t] == doctest::Approx(fs.scale.back()).epsilon(1e-13));
            CHECK(sm.s[t] == doctest::Approx(fs.s.back()).epsilon(1e-13));
        }
    }
}

TEST_CASE("smoothed coefficient scale is bounded by the filtered one in the interior")
{
    const auto x = oracle::white_noise(50, 21);
    std::vector<double> y(50);
    const auto noise = oracle::white_noise(50, 22, 0.5);
    for (std::size_t t = 0; t < 50; ++t) y[t] = (0.5 + 0.01 * static_cast<double>(t)) * x[t] + noise[t];
    const Discount d{0.9, 0.95};
    const FilterState fs = forward_filter(y, x, make_prior(0.0, 1.0, 1.0, 0.25), d);
    const SmoothState sm = backward_smooth(fs, d);
    double ratio = 0.0;
    for (std::size_t t = 0; t < 50; ++t) {
        CHECK(sm.scale[t] > 0.0);
        CHECK(sm.s[t] > 0.0);
        CHECK(sm.dof[t] > 0.0);
        CHECK(sm.scale[t] <= 10.0 * fs.scale[t]);
        if (t >= 5 && t < 45) ratio += sm.scale[t] / fs.scale[t] / 40.0;
    }
    CHECK(ratio < 1.0);
}

TEST_CASE("predictive log-likelihood")
{
    SUBCASE("standard Cauchy at its mode")
    {
        CHECK(student_t_logpdf(0.0, 1.0, 1.0) == doctest::Approx(std::log(1.0 / std::numbers::pi)).epsilon(1e-15));
        // One observation with e = 0, q = 1, v0 = 1: prior scale 0 is not allowed,
        // so use x = 0 and s0 = 1 which forces q = s0 = 1.
        const FilterState fs =
            forward_filter(std::vector<double>{0.0}, std::vector<double>{0.0}, make_prior(0.0, 1.0, 1.0, 1.0), Discount{});
        CHECK(predictive_loglik(fs) == doctest::Approx(std::log(1.0 / std::numbers::pi)).epsilon(1e-15));
    }
    SUBCASE("student-t density against direct formula")
    {
        const double v = 4.5, q = 2.3, e = -0.7;
        const double direct = std::lgamma((v + 1) / 2) - std::lgamma(v / 2) - 0.5 * std::log(v * std::numbers::pi * q) -
                              (v + 1) / 2 * std::log1p(e * e / (v * q));
        CHECK(student_t_logpdf(e, v, q) == doctest::Approx(direct).epsilon(1e-14));
    }
    SUBCASE("deterministic")
    {
        const auto x = oracle::white_noise(40, 1);
        const auto y = oracle::white_noise(40, 2);
        const double a = predictive_loglik(forward_filter(y, x, NigPrior{}, Discount{0.95, 0.95}));
        const double b = predictive_loglik(forward_filter(y, x, NigPrior{}, Discount{0.95, 0.95}));
        CHECK(a == b);
    }
    SUBCASE("true lag beats a useless regressor on AR(1) data")
    {
        const auto series = oracle::ar1(0.9, 201, 3);
        std::vector<double> y(series.begin() + 1, series.end());
        std::vector<double> lag(series.begin(), series.end() - 1);
        std::vector<double> zeros(200, 0.0);
        const NigPrior prior = make_prior(0.0, 1.0, 1.0, 5.0);
        const double good = predictive_loglik(forward_filter(y, lag, prior, Discount{0.99, 0.99}));
        const double bad = predictive_loglik(forward_filter(y, zeros, prior, Discount{0.99, 0.99}));
        CHECK(good > bad);
    }
}

TEST_CASE("inactive steps carry the posterior and drop out of the likelihood")
{
    const std::vector<double> y{0.5, 1.0, -0.3, 0.8, 0.1};
    const std::vector<double> x{9.0, 0.4, 1.2, -0.6, 7.0};
    const NigPrior prior = make_prior(0.0, 1.0, 1.0, 1.0);
    const Discount d{0.9, 0.9};
    const FilterState part = forward_filter(y, x, prior, d, ActiveRange{1, 4});
    CHECK(part.mean[0] == prior.mean);
    CHECK(part.scale[0] == prior.scale);
    CHECK(part.mean[4] == part.mean[3]);
    CHECK(part.dof[4] == part.dof[3]);

    const std::vector<double> ys(y.begin() + 1, y.begin() + 4);
    const std::vector<double> xs(x.begin() + 1, x.begin() + 4);
    const FilterState inner = forward_filter(ys, xs, prior, d);
    CHECK(predictive_loglik(part) == doctest::Approx(predictive_loglik(inner)).epsilon(1e-14));
    CHECK(part.mean[3] == inner.mean[2]);
}

TEST_CASE("backward sampler")
{
    const auto x = oracle::white_noise(20, 8);
    const auto noise = oracle::white_noise(20, 9, 0.4);
    std::vector<double> y(20);
    for (std::size_t t = 0; t < 20; ++t) y[t] = 0.6 * x[t] + noise[t];
    const NigPrior prior = make_prior(0.0, 1.0, 2.0, 0.4);

    SUBCASE("static discounts give constant paths")
    {
        const FilterState fs = forward_filter(y, x, prior, Discount{1.0, 1.0});
        std::mt19937_64 rng(4);
        for (int i = 0; i < 20; ++i) {
            const SampledPath p = backward_sample(fs, Discount{1.0, 1.0}, rng);
            for (std::size_t t = 1; t < 20; ++t) {
                CHECK(p.theta[t] == p.theta[0]);
                CHECK(p.sigma2[t] == p.sigma2[0]);
            }
        }
    }
    SUBCASE("same seed, same path")
    {
        const FilterState fs = forward_filter(y, x, prior, Discount{0.9, 0.9});
        std::mt19937_64 a(77), b(77);
        const SampledPath pa = backward_sample(fs, Discount{0.9, 0.9}, a);
        const SampledPath pb = backward_sample(fs, Discount{0.9, 0.9}, b);
        CHECK(pa.theta == pb.theta);
        CHECK(pa.sigma2 == pb.sigma2);
        for (double s : pa.sigma2) CHECK(s > 0.0);
    }
    SUBCASE("sample means follow the smoother")
    {
        const Discount d{0.9, 0.9};
        const FilterState fs = forward_filter(y, x, prior, d);
        const SmoothState sm = backward_smooth(fs, d);
        std::mt19937_64 rng(5);
        const int n = 4000;
        std::vector<double> s1(20), s2(20);
        for (int i = 0; i < n; ++i) {
            const SampledPath p = backward_sample(fs, d, rng);
            for (std::size_t t = 0; t < 20; ++t) {
                s1[t] += p.theta[t];
                s2[t] += p.theta[t] * p.theta[t];
            }
        }
        for (std::size_t t = 0; t < 20; ++t) {
            const double m = s1[t] / n;
            const double se = std::sqrt((s2[t] / n - m * m) / n);
            CHECK(std::abs(m - sm.mean[t]) < 4.0 * se);
        }
    }
}
