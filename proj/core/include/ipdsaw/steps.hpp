#pragma once

#include "ipdsaw/random.hpp"

namespace ipdsaw {

// Discrete Laplace law P(k) = e^{-beta|k|/2} / c_beta on the integers.
class StepLaw {
public:
    explicit StepLaw(double beta);

    double beta() const { return beta_; }
    double c_beta() const { return c_beta_; }
    double gamma_beta() const { return gamma_beta_; }
    double sigma2() const { return sigma2_; }
    // x = e^{-beta/2}, the geometric ratio of the tails.
    double x() const { return x_; }
    double log_c_beta() const { return log_c_beta_; }

private:
    double beta_;
    double x_;
    double c_beta_;
    double log_c_beta_;
    double gamma_beta_;
    double sigma2_;
};

double step_pmf(const StepLaw& law, long k);
double log_step_pmf(const StepLaw& law, long k);

// Gamma_beta = c_beta e^{-beta}.
double gamma_beta(double beta);
double log_gamma_beta(double beta);

// Unique beta with gamma_beta(beta) = 1.
double beta_critical();

// Log moment generating function of one step, |h| < beta/2 (std::domain_error otherwise).
double log_mgf(const StepLaw& law, double h);
double log_mgf_d1(const StepLaw& law, double h);
double log_mgf_d2(const StepLaw& law, double h);
// Inverse of log_mgf_d1, which maps (-beta/2, beta/2) onto the real line.
double log_mgf_d1_inverse(const StepLaw& law, double y);

double variance(const StepLaw& law);

long sample_step(const StepLaw& law, Rng& rng);
// Step drawn from the law exponentially tilted by theta, |theta| < beta/2.
long sample_tilted_step(const StepLaw& law, double theta, Rng& rng);

}  // namespace ipdsaw
