#include "ipdsaw/numeric.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace ipdsaw;

TEST(LogAdd, MatchesDirectEvaluation)
{
    EXPECT_NEAR(log_add(std::log(2.0), std::log(3.0)), std::log(5.0), 1e-15);
    EXPECT_EQ(log_add(kNegInf, kNegInf), kNegInf);
    EXPECT_DOUBLE_EQ(log_add(kNegInf, 1.5), 1.5);
    EXPECT_NEAR(log_add(1000.0, 1000.0), 1000.0 + std::log(2.0), 1e-12);
}

TEST(LogSumExp, HandlesWideDynamicRange)
{
    LogSumExp acc;
    EXPECT_TRUE(acc.empty());
    EXPECT_EQ(acc.value(), kNegInf);
    for (int i = 0; i < 10000; ++i) acc.add(-700.0);
    EXPECT_NEAR(acc.value(), -700.0 + std::log(10000.0), 1e-12);
    acc.add(5.0);  // new maximum rescales the running sum
    EXPECT_NEAR(acc.value(), 5.0 + std::log1p(10000.0 * std::exp(-705.0)), 1e-12);
}

TEST(LogSumExp, CompensatesManySmallTerms)
{
    LogSumExp acc;
    acc.add(0.0);
    for (int i = 0; i < 1000000; ++i) acc.add(std::log(1e-10));
    EXPECT_NEAR(acc.value(), std::log1p(1e-4), 1e-15);
}

TEST(LogSumExp, RejectsNaN)
{
    LogSumExp acc;
    EXPECT_THROW(acc.add(std::nan("")), std::domain_error);
}

TEST(LogSumExp, SpanOverload)
{
    const std::vector<double> v{std::log(1.0), std::log(2.0), std::log(7.0)};
    EXPECT_NEAR(log_sum_exp(v), std::log(10.0), 1e-15);
}

TEST(KahanSum, AccumulatesTenthsExactly)
{
    KahanSum s;
    for (int i = 0; i < 1000000; ++i) s.add(0.1);
    EXPECT_NEAR(s.value(), 100000.0, 1e-9);
}

TEST(SolveBracketed, FindsFixedPointOfCosine)
{
    const double r = solve_bracketed([](double x) { return std::cos(x) - x; }, 0.0, 1.0, 1e-15);
    EXPECT_NEAR(r, 0.7390851332151607, 1e-14);
}

TEST(SolveBracketed, RejectsBracketWithoutSignChange)
{
    EXPECT_THROW(solve_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0), std::runtime_error);
}

TEST(SolveNewton, SquareRootOfTwo)
{
    const double r = solve_newton([](double x) { return std::make_pair(x * x - 2.0, 2.0 * x); }, 1.0, 0.0, 2.0);
    EXPECT_NEAR(r, std::sqrt(2.0), 1e-15);
}

TEST(GaussLegendre, WeightsSumToOneAndNodesInside)
{
    for (int order : {32, 64, 128, 256, 512}) {
        const auto rule = gauss_legendre_unit(order);
        ASSERT_EQ(rule.nodes.size(), static_cast<std::size_t>(order));
        double w = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            EXPECT_GT(rule.nodes[i], 0.0);
            EXPECT_LT(rule.nodes[i], 1.0);
            w += rule.weights[i];
        }
        EXPECT_NEAR(w, 1.0, 1e-14) << order;
    }
    EXPECT_THROW(gauss_legendre_unit(48), std::invalid_argument);
}

TEST(IntegrateUnit, PolynomialsAndExponential)
{
    EXPECT_NEAR(integrate_unit([](double u) { return std::pow(u, 5); }), 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(integrate_unit([](double u) { return std::exp(u); }), std::exp(1.0) - 1.0, 1e-14);
}

TEST(IntegrateUnit, NearbyLogSingularityNeedsBisection)
{
    // Singularity of log(a - u) sits 1e-9 beyond the right end.
    const double a = 1.0 + 1e-9;
    const double exact = a * std::log(a) - (a - 1.0) * std::log(a - 1.0) - 1.0;
    EXPECT_NEAR(integrate_unit([&](double u) { return std::log(a - u); }), exact, 1e-12);
}

TEST(IntegrateUnit, ComponentsShareTheRule)
{
    const auto m = integrate_unit_components(
        [](double u, std::span<double> out) {
            out[0] = 1.0;
            out[1] = u;
            out[2] = std::sin(u);
        },
        3);
    EXPECT_NEAR(m[0], 1.0, 1e-15);
    EXPECT_NEAR(m[1], 0.5, 1e-15);
    EXPECT_NEAR(m[2], 1.0 - std::cos(1.0), 1e-15);
}
