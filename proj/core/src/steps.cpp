#include "ipdsaw/steps.hpp"

#include "ipdsaw/numeric.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace ipdsaw {

namespace {

// 1 - e^{t} for t < 0, accurate near 0.
double one_minus_exp(double t) { return -std::expm1(t); }

void check_mgf_domain(const StepLaw& law, double h)
{
    if (!(std::abs(h) < 0.5 * law.beta()))
        throw std::domain_error("log_mgf: argument outside (-beta/2, beta/2)");
}

}  // namespace

StepLaw::StepLaw(double beta) : beta_(beta)
{
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("StepLaw: beta must be positive");
    x_ = std::exp(-0.5 * beta);
    const double one_minus_x = one_minus_exp(-0.5 * beta);
    c_beta_ = (1.0 + x_) / one_minus_x;
    log_c_beta_ = std::log1p(x_) - std::log(one_minus_x);
    gamma_beta_ = c_beta_ * std::exp(-beta);
    sigma2_ = 2.0 * x_ / (one_minus_x * one_minus_x);
}

double step_pmf(const StepLaw& law, long k)
{
    return std::exp(-0.5 * law.beta() * static_cast<double>(std::labs(k))) / law.c_beta();
}

double log_step_pmf(const StepLaw& law, long k)
{
    return -0.5 * law.beta() * static_cast<double>(std::labs(k)) - law.log_c_beta();
}

double log_gamma_beta(double beta)
{
    const double x = std::exp(-0.5 * beta);
    return std::log1p(x) - std::log(one_minus_exp(-0.5 * beta)) - beta;
}

double gamma_beta(double beta) { return std::exp(log_gamma_beta(beta)); }

double beta_critical()
{
    const double x = solve_bracketed([](double t) { return ((t + 1.0) * t + 1.0) * t - 1.0; }, 0.0, 1.0,
                                     1e-16);
    return -2.0 * std::log(x);
}

double log_mgf(const StepLaw& law, double h)
{
    check_mgf_domain(law, h);
    const double hb = 0.5 * law.beta();
    return 2.0 * std::log(one_minus_exp(-hb)) - std::log(one_minus_exp(h - hb)) -
           std::log(one_minus_exp(-h - hb));
}

double log_mgf_d1(const StepLaw& law, double h)
{
    check_mgf_domain(law, h);
    const double hb = 0.5 * law.beta();
    const double a = std::exp(h - hb);
    const double b = std::exp(-h - hb);
    return a / one_minus_exp(h - hb) - b / one_minus_exp(-h - hb);
}

double log_mgf_d2(const StepLaw& law, double h)
{
    check_mgf_domain(law, h);
    const double hb = 0.5 * law.beta();
    const double a = std::exp(h - hb);
    const double b = std::exp(-h - hb);
    const double da = one_minus_exp(h - hb);
    const double db = one_minus_exp(-h - hb);
    return a / (da * da) + b / (db * db);
}

double log_mgf_d1_inverse(const StepLaw& law, double y)
{
    // With u = e^h, L'(h) = y reduces to x(1+y)u^2 - y(1+x^2)u - x(1-y) = 0.
    const double x = law.x();
    const double b = y * (1.0 + x * x);
    const double om = one_minus_exp(-law.beta());
    const double disc = std::sqrt(y * y * om * om + 4.0 * x * x);
    const double u = b > 0.0 ? (b + disc) / (2.0 * x * (1.0 + y)) : 2.0 * x * (1.0 - y) / (disc - b);
    return std::log(u);
}

double variance(const StepLaw& law) { return law.sigma2(); }

long sample_step(const StepLaw& law, Rng& rng)
{
    if (rng.uniform() * law.c_beta() < 1.0) return 0;
    const long m = 1 + static_cast<long>(std::floor(std::log(rng.uniform()) / (-0.5 * law.beta())));
    return (rng.bits() >> 63) ? m : -m;
}

long sample_tilted_step(const StepLaw& law, double theta, Rng& rng)
{
    check_mgf_domain(law, theta);
    const double hb = 0.5 * law.beta();
    const double up = std::exp(theta - hb);
    const double down = std::exp(-theta - hb);
    const double w_up = up / one_minus_exp(theta - hb);
    const double w_down = down / one_minus_exp(-theta - hb);
    const double u = rng.uniform() * (1.0 + w_up + w_down);
    if (u < 1.0) return 0;
    const double log_ratio = u < 1.0 + w_up ? theta - hb : -theta - hb;
    const long m = 1 + static_cast<long>(std::floor(std::log(rng.uniform()) / log_ratio));
    return u < 1.0 + w_up ? m : -m;
}

}  // namespace ipdsaw
