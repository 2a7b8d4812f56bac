#include "ipdsaw/exactz.hpp"
#include "ipdsaw/largedev.hpp"
#include "ipdsaw/numeric.hpp"
#include "ipdsaw/steps.hpp"
#include "ipdsaw/wetting.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

using namespace ipdsaw;

namespace {

// Area-penalized pinned walk weights by enumerating every path with heights in [0, H].
std::vector<double> enumerate_area_columns(int N, double gamma, double delta, double beta, int H)
{
    const StepLaw law(beta);
    std::vector<double> total(static_cast<std::size_t>(N) + 1, 0.0);
    std::function<void(int, int, double)> walk = [&](int k, int y, double w) {
        total[static_cast<std::size_t>(k)] += w;
        if (k == N) return;
        for (int z = 0; z <= H; ++z) {
            double v = w * step_pmf(law, z - y) * std::exp(-gamma * z / N);
            if (z == 0) v *= std::exp(delta);
            walk(k + 1, z, v);
        }
    };
    walk(0, 0, 1.0);
    return total;
}

}  // namespace

TEST(DCirc, SingleBeadIdentity)
{
    for (double beta : {1.5, 3.0})
        for (double delta : {-0.3, 1.0}) {
            const StepLaw law(beta);
            for (int L = 2; L <= 16; L += 2) {
                const double lhs = brute_force_Z(L, beta, delta, Variant::SingleBead);
                const double rhs = single_bead_walk_sum(L, beta, delta) + law.log_c_beta() + beta * L;
                if (std::isinf(lhs)) {
                    EXPECT_EQ(lhs, rhs);
                    continue;
                }
                EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::abs(lhs))) << beta << " " << delta << " " << L;
            }
            EXPECT_EQ(single_bead_walk_sum(9, beta, delta), kNegInf);
        }
}

TEST(DCirc, SingleStepHandCase)
{
    // N = 1: S = (a, 0), I = (0) with area a; weight p(a)^2 p(0) e^delta.
    const double beta = 1.2, delta = 0.4;
    const StepLaw law(beta);
    for (int a = 1; a <= 5; ++a) {
        const double expect = 2.0 * log_step_pmf(law, a) + log_step_pmf(law, 0) + delta;
        EXPECT_NEAR(d_circ(1, a, beta, delta), expect, 1e-13);
        EXPECT_NEAR(d_circ_area(1, a, beta, delta), expect, 1e-13);
    }
}

TEST(DCirc, LatticeAndFeasibility)
{
    EXPECT_THROW(d_circ(3, 0.1, 2.0, 0.0), std::invalid_argument);
    EXPECT_THROW(d_circ(3, -1.0, 2.0, 0.0), std::invalid_argument);
    EXPECT_THROW(d_circ(0, 1.0, 2.0, 0.0), std::invalid_argument);
    // Odd lattice index: the area difference would be a half-integer.
    EXPECT_EQ(d_circ(1, 0.5, 2.0, 0.0), kNegInf);
    // Each of the N pairs contributes at least 1 to the area.
    EXPECT_EQ(d_circ_area(4, 3, 2.0, 0.0), kNegInf);
    EXPECT_GT(d_circ_area(4, 4, 2.0, 0.0), kNegInf);
    // A cutoff can only remove mass.
    EXPECT_LE(d_circ_area(4, 12, 1.0, 0.5, 2), d_circ_area(4, 12, 1.0, 0.5));
}

TEST(ConstrainedWalks, Identity)
{
    for (double beta : {1.0, 2.5})
        for (double delta : {0.0, 1.5}) {
            const StepLaw law(beta);
            for (int L = 1; L <= 14; ++L) {
                const double lhs = brute_force_Z(L, beta, delta, Variant::ConstrainedEnd);
                const double rhs = constrained_walk_sum(L, beta, delta) + law.log_c_beta() + beta * L;
                EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::abs(lhs))) << beta << " " << delta << " " << L;
            }
        }
}

TEST(ConstrainedWalks, PaddingContactAddsDelta)
{
    for (int L : {3, 8, 12}) {
        const double a = constrained_walk_sum(L, 1.7, 0.9, false);
        const double b = constrained_walk_sum(L, 1.7, 0.9, true);
        EXPECT_NEAR(b - a, 0.9, 1e-10);
    }
}

TEST(AreaWettingDP, ColumnsMatchEnumeration)
{
    const int N = 5, H = 5;
    for (double gamma : {0.0, 0.8})
        for (double delta : {0.0, 0.7}) {
            const AreaWettingDP dp(N, gamma, delta, 1.3, H);
            const auto oracle = enumerate_area_columns(N, gamma, delta, 1.3, H);
            for (int k = 0; k <= N; ++k)
                EXPECT_NEAR(dp.log_column_total(k), std::log(oracle[static_cast<std::size_t>(k)]), 1e-12) << k;
        }
}

TEST(AreaWettingDP, ZeroTiltIsWetting)
{
    for (int N : {1, 10, 60}) {
        const AreaWettingDP dp(N, 0.0, 0.6, 2.0, default_area_cutoff(N));
        EXPECT_NEAR(dp.log_value(), zwet(2.0, 0.6, N), 1e-10 * std::max(1.0, std::abs(dp.log_value()))) << N;
    }
}

TEST(AreaWettingDP, RejectsBadArguments)
{
    EXPECT_THROW(AreaWettingDP(0, 1.0, 0.0, 2.0, 5), std::invalid_argument);
    EXPECT_THROW(AreaWettingDP(5, -1.0, 0.0, 2.0, 5), std::invalid_argument);
    EXPECT_THROW(AreaWettingDP(5, 1.0, 0.0, 2.0, 0), std::invalid_argument);
    const AreaWettingDP dp(5, 1.0, 0.0, 2.0, 5);
    EXPECT_THROW((void)dp.log_column_total(6), std::out_of_range);
}

TEST(ECirc, AllZeroLowerBound)
{
    for (int N : {5, 50, 300})
        for (double delta : {-0.5, 0.0, 1.0}) {
            const StepLaw law(2.0);
            EXPECT_GE(e_circ(N, 0.5, 2.0, delta), N * (delta - law.log_c_beta()) - 1e-9);
        }
    EXPECT_THROW(e_circ(10, 0.0, 2.0, 0.0), std::invalid_argument);
}

TEST(ENGamma, MonotoneInGamma)
{
    double prev = 0.0;
    bool first = true;
    for (double gamma : {0.01, 0.1, 0.5, 1.0, 3.0}) {
        const double v = e_n_gamma(200, gamma, 2.0);
        if (!first) EXPECT_LT(v, prev) << gamma;
        prev = v;
        first = false;
    }
    EXPECT_THROW(e_n_gamma(10, 0.0, 2.0), std::invalid_argument);
}

TEST(ENGamma, SmallGammaGivesPositiveBridge)
{
    for (int N : {10, 100, 400}) {
        const double bridge = log_positive_bridge(N, 0, 2.0);
        const double v = e_n_gamma(N, 1e-9, 2.0);
        EXPECT_LE(v, bridge + 1e-12);
        EXPECT_NEAR(v, bridge, 1e-6) << N;
    }
}

TEST(PositiveBridgeLog, HandCasesAndDecay)
{
    const StepLaw law(2.0);
    EXPECT_NEAR(log_positive_bridge(1, 0, 2.0), log_step_pmf(law, 0), 1e-14);
    EXPECT_NEAR(log_positive_bridge(1, 3, 2.0), log_step_pmf(law, -3), 1e-14);
    EXPECT_THROW(log_positive_bridge(5, -1, 2.0), std::invalid_argument);
    // n^{3/2} P stays in a bounded band.
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int n : {100, 200, 400, 800, 1600}) {
        const double r = std::exp(log_positive_bridge(n, 0, 2.0)) * std::pow(n, 1.5);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    EXPECT_LT(hi / lo, 1.1);
}

TEST(DCirc, RatioToECircStaysInBand)
{
    // N^2 D(N, q) e^{N g(q, 0)} / E(N, q) at q = 1/2 over moderate N.
    const double beta = 2.0, delta = 0.5, q = 0.5;
    const double g = rate_g(q, 0.0, beta);
    std::vector<double> ratios;
    for (int N : {4, 6, 8, 10, 12}) {
        const double d = d_circ(N, q, beta, delta);
        const double e = e_circ(N, q, beta, delta);
        ratios.push_back(2.0 * std::log(N) + d + N * g - e);
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    EXPECT_LT(*hi - *lo, std::log(4.0));
}
