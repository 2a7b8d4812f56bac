#include "ipdsaw/steps.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <map>

using namespace ipdsaw;

namespace {

// Truncated direct sums, normalized by their own total rather than c_beta.
template <class F>
double oracle_mean(double beta, F f)
{
    const long K = static_cast<long>(std::ceil(80.0 / beta)) + 200;
    double z = 0.0, s = 0.0;
    for (long k = -K; k <= K; ++k) {
        const double w = std::exp(-0.5 * beta * std::abs(static_cast<double>(k)));
        z += w;
        s += w * f(static_cast<double>(k));
    }
    return s / z;
}

double oracle_c(double beta)
{
    const long K = static_cast<long>(std::ceil(80.0 / beta)) + 200;
    double z = 0.0;
    for (long k = -K; k <= K; ++k) z += std::exp(-0.5 * beta * std::abs(static_cast<double>(k)));
    return z;
}

}  // namespace

TEST(StepLaw, RejectsNonPositiveBeta)
{
    EXPECT_THROW(StepLaw(0.0), std::invalid_argument);
    EXPECT_THROW(StepLaw(-1.0), std::invalid_argument);
    EXPECT_THROW(StepLaw(std::nan("")), std::invalid_argument);
    EXPECT_THROW(StepLaw{std::numeric_limits<double>::infinity()}, std::invalid_argument);
}

TEST(StepLaw, ConstantsMatchDirectSums)
{
    for (double beta : {0.3, 1.0, 2.0, 3.5, 6.0}) {
        const StepLaw law(beta);
        EXPECT_NEAR(law.c_beta() / oracle_c(beta), 1.0, 1e-13) << beta;
        EXPECT_NEAR(law.gamma_beta(), law.c_beta() * std::exp(-beta), 1e-15 * law.c_beta());
        EXPECT_NEAR(gamma_beta(beta), law.gamma_beta(), 1e-14);
        EXPECT_NEAR(law.sigma2() / oracle_mean(beta, [](double k) { return k * k; }), 1.0, 1e-10) << beta;
        EXPECT_DOUBLE_EQ(law.x(), std::exp(-beta / 2));
    }
}

TEST(StepPmf, ValueAtBetaTwo)
{
    const StepLaw law(2.0);
    EXPECT_NEAR(step_pmf(law, 0), 0.46211715726000974, 1e-15);
    EXPECT_DOUBLE_EQ(step_pmf(law, 1), step_pmf(law, -1));
    double s = 0.0;
    for (long k = -50; k <= 50; ++k) s += step_pmf(law, k);
    EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(StepPmf, SymmetricTruncationTailBound)
{
    for (double beta : {0.5, 1.0, 2.0, 4.0}) {
        const StepLaw law(beta);
        for (long K : {0L, 1L, 5L, 20L}) {
            double s = 0.0;
            for (long k = -K; k <= K; ++k) s += step_pmf(law, k);
            const double bound = 2.0 * std::exp(-beta * (K + 1) / 2.0) / (law.c_beta() * (1.0 - law.x()));
            EXPECT_LE(std::abs(1.0 - s), bound + 1e-15) << beta << " " << K;
        }
    }
}

TEST(StepPmf, LogPmfStaysFiniteFarInTheTail)
{
    const StepLaw law(2.0);
    EXPECT_NEAR(log_step_pmf(law, 3), std::log(step_pmf(law, 3)), 1e-14);
    EXPECT_NEAR(log_step_pmf(law, -5000), -5000.0 - law.log_c_beta(), 1e-9);
}

TEST(BetaCritical, SolvesGammaEqualsOne)
{
    const double bc = beta_critical();
    // -2 log x for the real root of x^3 + x^2 + x = 1, at 30 digits.
    EXPECT_NEAR(bc, 1.21875572687201, 1e-8);
    EXPECT_NEAR(gamma_beta(bc), 1.0, 1e-10);
}

TEST(BetaCritical, GammaDecreasing)
{
    double prev = gamma_beta(0.5);
    for (double beta = 0.75; beta <= 5.0; beta += 0.25) {
        const double g = gamma_beta(beta);
        EXPECT_LT(g, prev) << beta;
        prev = g;
    }
}

TEST(LogMgf, ZeroSymmetricAndOracle)
{
    const StepLaw law(2.0);
    EXPECT_EQ(log_mgf(law, 0.0), 0.0);
    EXPECT_NEAR(log_mgf(law, 0.3), log_mgf(law, -0.3), 1e-15);
    const double oracle = std::log(oracle_mean(2.0, [](double k) { return std::exp(0.5 * k); }));
    EXPECT_NEAR(log_mgf(law, 0.5), oracle, 1e-10);
}

TEST(LogMgf, DomainIsOpenInterval)
{
    const StepLaw law(2.0);
    EXPECT_THROW(log_mgf(law, 1.0), std::domain_error);
    EXPECT_THROW(log_mgf(law, -1.0), std::domain_error);
    EXPECT_THROW(log_mgf_d1(law, 1.5), std::domain_error);
    EXPECT_THROW(log_mgf_d2(law, -2.0), std::domain_error);
    EXPECT_NO_THROW(log_mgf(law, 0.999999));
}

TEST(LogMgf, StrictlyConvex)
{
    const StepLaw law(2.0);
    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        const double h = -0.95 + 1.9 * rng.uniform();
        const double s = 1e-3;
        EXPECT_GT(log_mgf(law, h + s) - 2.0 * log_mgf(law, h) + log_mgf(law, h - s), 0.0) << h;
    }
}

TEST(LogMgf, DerivativesMatchFiniteDifferences)
{
    const StepLaw law(1.5);
    for (double h : {-0.6, -0.2, 0.0, 0.1, 0.5}) {
        const double s = 1e-5;
        const double d1 = (log_mgf(law, h + s) - log_mgf(law, h - s)) / (2 * s);
        const double d2 = (log_mgf_d1(law, h + s) - log_mgf_d1(law, h - s)) / (2 * s);
        EXPECT_NEAR(log_mgf_d1(law, h), d1, 1e-8 * std::max(1.0, std::abs(d1))) << h;
        EXPECT_NEAR(log_mgf_d2(law, h), d2, 1e-6 * std::max(1.0, std::abs(d2))) << h;
    }
}

TEST(LogMgf, DerivativesNearTheBoundaryMatchTiltedMoments)
{
    const StepLaw law(1.5);
    for (double h : {0.7, -0.72}) {
        // Mean and variance of the tilted law by direct summation; the tail
        // e^{(|h| - beta/2) K} is below 1e-40 at K = 4000.
        double z = 0.0, m1 = 0.0, m2 = 0.0;
        for (long k = -4000; k <= 4000; ++k) {
            const double w = std::exp(h * k - 0.75 * std::abs(static_cast<double>(k)));
            z += w;
            m1 += k * w;
            m2 += static_cast<double>(k) * k * w;
        }
        m1 /= z;
        m2 = m2 / z - m1 * m1;
        EXPECT_NEAR(log_mgf_d1(law, h) / m1, 1.0, 1e-12) << h;
        EXPECT_NEAR(log_mgf_d2(law, h) / m2, 1.0, 1e-11) << h;
    }
}

TEST(LogMgf, DerivativeInverseRoundTrip)
{
    const StepLaw law(2.0);
    double prev = -1.0;
    for (double y = -50.0; y <= 50.0; y += 0.5) {
        const double h = log_mgf_d1_inverse(law, y);
        EXPECT_GT(h, prev);
        EXPECT_LT(std::abs(h), 1.0);
        EXPECT_NEAR(log_mgf_d1(law, h), y, 1e-9 * std::max(1.0, std::abs(y))) << y;
        prev = h;
    }
    EXPECT_EQ(log_mgf_d1_inverse(law, 0.0), 0.0);
}

TEST(Variance, MatchesSecondDerivativeAndSums)
{
    const StepLaw law(2.0);
    EXPECT_NEAR(variance(law), oracle_mean(2.0, [](double k) { return k * k; }), 1e-10);
    const double s = 1e-4;
    const double fd = (log_mgf(law, s) - 2.0 * log_mgf(law, 0.0) + log_mgf(law, -s)) / (s * s);
    EXPECT_NEAR(fd / variance(law), 1.0, 1e-6);
    EXPECT_NEAR(log_mgf_d2(law, 0.0), variance(law), 1e-14);
    double prev = variance(StepLaw(1.0));
    for (double beta : {2.0, 3.0, 4.0}) {
        EXPECT_LT(variance(StepLaw(beta)), prev);
        prev = variance(StepLaw(beta));
    }
}

TEST(SampleStep, MomentsOverAMillionDraws)
{
    const StepLaw law(2.0);
    Rng rng(2024);
    const int n = 1000000;
    double s = 0.0, s2 = 0.0;
    std::map<long, long> hits;
    for (int i = 0; i < n; ++i) {
        const long k = sample_step(law, rng);
        s += k;
        s2 += static_cast<double>(k) * k;
        if (std::abs(k) <= 3) ++hits[k];
    }
    const double sd = std::sqrt(variance(law));
    EXPECT_NEAR(s / n, 0.0, 4.0 * sd / 1e3);
    EXPECT_NEAR(s2 / n / variance(law), 1.0, 0.02);
    for (long k = -3; k <= 3; ++k) {
        const double p = step_pmf(law, k);
        EXPECT_NEAR(hits[k] / static_cast<double>(n), p, 5.0 * std::sqrt(p * (1 - p) / n)) << k;
    }
}

TEST(SampleStep, Reproducible)
{
    const StepLaw law(1.0);
    Rng a(9), b(9);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(sample_step(law, a), sample_step(law, b));
}

TEST(SampleTiltedStep, MeanIsMgfDerivative)
{
    const StepLaw law(2.0);
    for (double theta : {-0.6, 0.0, 0.4, 0.9}) {
        Rng rng(5);
        const int n = 200000;
        double s = 0.0, s2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double k = static_cast<double>(sample_tilted_step(law, theta, rng));
            s += k;
            s2 += k * k;
        }
        const double se = std::sqrt(log_mgf_d2(law, theta) / n);
        EXPECT_NEAR(s / n, log_mgf_d1(law, theta), 5.0 * se) << theta;
        const double m2 = log_mgf_d2(law, theta) + std::pow(log_mgf_d1(law, theta), 2);
        EXPECT_NEAR(s2 / n / m2, 1.0, 0.03) << theta;
    }
    Rng rng(1);
    EXPECT_THROW(sample_tilted_step(law, 1.0, rng), std::domain_error);
}
