#include "ipdsaw/largedev.hpp"
#include "ipdsaw/steps.hpp"
#include "ipdsaw/wetting.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace ipdsaw;

namespace {

struct Point {
    double beta;
    double delta;
};

// 20 points in the collapsed phase, on both sides of the wetting threshold.
std::vector<Point> collapsed_grid()
{
    std::vector<Point> pts;
    for (double beta : {1.4, 2.0, 2.7, 3.5})
        for (double f : {0.0, 0.3, 0.6, 0.8, 0.95}) pts.push_back({beta, f * critical_curves(beta).delta_circ});
    return pts;
}

}  // namespace

TEST(Profile, StationaryMaximum)
{
    for (const auto& [beta, delta] : collapsed_grid()) {
        const auto prof = collapse_profile(beta, delta);
        EXPECT_GT(prof.a_tilde, 0.0);
        EXPECT_NEAR(phi_prime(beta, delta, prof.a_tilde), 0.0, 1e-9) << beta << " " << delta;
        EXPECT_LT(phi_second(beta, delta, prof.a_tilde), 0.0);
        EXPECT_NEAR(prof.phi_max, phi(beta, delta, prof.a_tilde), 1e-12);
        for (double s : {0.75, 0.9, 1.1, 2.0}) EXPECT_LE(phi(beta, delta, s * prof.a_tilde), prof.phi_max);
        EXPECT_LT(prof.phi_max, 0.0);
    }
}

TEST(Profile, PhiFromRateFunction)
{
    const double beta = 2.0, delta = 1.0;
    const double c = 2.0 * log_gamma_beta(beta) + wetting_free_energy(beta, delta);
    for (double a : {0.3, 0.7, 1.5, 4.0}) {
        const double q = 1.0 / (2.0 * a * a);
        EXPECT_NEAR(phi(beta, delta, a), a * (c - rate_g(q, 0.0, beta)), 1e-11);
        // g expanded through the tilt
        const auto h = tilt_inverse(q, 0.0, beta);
        EXPECT_NEAR(phi(beta, delta, a), a * (c - q * h.h0 + l_lambda(h)), 1e-10);
    }
    EXPECT_THROW(phi(beta, delta, 0.0), std::invalid_argument);
}

TEST(Profile, DerivativesMatchFiniteDifferences)
{
    for (double a : {0.35, 0.8, 2.0}) {
        const double e = 1e-5;
        const double d1 = (phi(2.0, 0.5, a + e) - phi(2.0, 0.5, a - e)) / (2 * e);
        const double d2 = (phi_prime(2.0, 0.5, a + e) - phi_prime(2.0, 0.5, a - e)) / (2 * e);
        EXPECT_NEAR(phi_prime(2.0, 0.5, a), d1, 1e-7 * std::max(1.0, std::abs(d1)));
        EXPECT_NEAR(phi_second(2.0, 0.5, a), d2, 1e-6 * std::max(1.0, std::abs(d2)));
    }
}

TEST(Profile, WettingRaisesMaximum)
{
    for (double beta : {1.6, 2.0, 3.0}) {
        const auto curves = critical_curves(beta);
        const double base = collapse_profile(beta, 0.0).phi_max;
        // Below the wetting threshold the wall reward has no effect.
        EXPECT_NEAR(collapse_profile(beta, 0.5 * curves.delta_tilde).phi_max, base, 1e-12);
        const double above = 0.5 * (curves.delta_tilde + curves.delta_circ);
        EXPECT_GT(collapse_profile(beta, above).phi_max, base);
        EXPECT_GT(dphi_ddelta(beta, above), 0.0);
        EXPECT_NEAR(dphi_ddelta(beta, 0.5 * curves.delta_tilde), 0.0, 1e-9);
    }
}

TEST(Profile, PsiOnlyWithoutWallReward)
{
    EXPECT_TRUE(collapse_profile(2.0, 0.0).psi.has_value());
    EXPECT_FALSE(collapse_profile(2.0, 0.3).psi.has_value());
}

TEST(Profile, DomainErrors)
{
    EXPECT_THROW(collapse_profile(1.0, 0.0), std::domain_error);
    EXPECT_THROW(collapse_profile(2.0, critical_curves(2.0).delta_circ + 0.01), std::domain_error);
    EXPECT_THROW(dphi_ddelta(2.0, 0.5, 0.0), std::invalid_argument);
}

TEST(Airy, MatchesBoost)
{
    for (double x = -5.0; x <= 5.0; x += 0.25) {
        const double ai = boost::math::airy_ai(x);
        const double aip = boost::math::airy_ai_prime(x);
        EXPECT_NEAR(airy_ai(x), ai, 1e-13) << x;
        EXPECT_NEAR(airy_ai_prime(x), aip, 1e-13) << x;
        if (x <= 3.0) {
            EXPECT_NEAR(airy_ai(x), ai, 1e-10 * std::abs(ai)) << x;
            EXPECT_NEAR(airy_ai_prime(x), aip, 1e-10 * std::abs(aip)) << x;
        }
    }
    EXPECT_THROW(airy_ai(5.5), std::domain_error);
    EXPECT_THROW(airy_ai_prime(-6.0), std::domain_error);
}

TEST(Airy, FirstZero)
{
    EXPECT_NEAR(airy_first_zero(), boost::math::airy_ai_zero<double>(1), 1e-12);
    EXPECT_NEAR(airy_first_zero(), -2.338107410460, 1e-11);
}

TEST(MeanderRate, ValuesAndScaling)
{
    EXPECT_NEAR(meander_rate(1.0), -1.85575, 1e-5);
    EXPECT_NEAR(meander_rate(8.0) / meander_rate(1.0), 4.0, 1e-12);
    EXPECT_THROW(meander_rate(0.0), std::invalid_argument);
    EXPECT_THROW(meander_rate(-1.0), std::invalid_argument);
}
