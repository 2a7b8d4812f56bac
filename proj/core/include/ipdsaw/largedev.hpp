#pragma once

#include "ipdsaw/random.hpp"
#include "ipdsaw/wetting.hpp"

#include <array>
#include <optional>
#include <vector>

namespace ipdsaw {

// Dual variable of (area per step squared, endpoint per step).
struct TiltVector {
    double h0 = 0.0;
    double h1 = 0.0;
    double beta = 0.0;
};

// |h1| < beta/2 and |h0 + h1| < beta/2.
bool in_domain(const TiltVector& h);
// |h1| < beta/2 and |(1 - 1/n) h0 + h1| < beta/2.
bool in_finite_domain(const TiltVector& h, int n);

// Integral over [0, 1] of the step log-MGF along h0 x + h1. Throws std::domain_error outside the domain.
double l_lambda(const TiltVector& h);
std::array<double, 2> grad_l_lambda(const TiltVector& h);
// (d00, d01, d11)
std::array<double, 3> hessian_l_lambda(const TiltVector& h);

// Unique h with grad_l_lambda(h) = (q, p). Throws std::runtime_error if Newton fails.
TiltVector tilt_inverse(double q, double p, double beta);

// Legendre transform g(q, p) = h.(q, p) - l_lambda(h) at h = tilt_inverse(q, p).
double rate_g(double q, double p, double beta);

// (1/n) sum_{k=1..n} L((1 - k/n) h0 + h1) and its gradient and Hessian.
double mean_l_lambda_n(const TiltVector& h, int n);
std::array<double, 2> grad_mean_l_lambda_n(const TiltVector& h, int n);
std::array<double, 3> hessian_mean_l_lambda_n(const TiltVector& h, int n);

// Solution of grad[(1/n) L_{Lambda_n}](h) = (q, p) in the finite-n domain.
TiltVector finite_tilt(int n, double q, double p, double beta);

// Walk X_0 = 0, ..., X_n whose k-th increment is tilted by (1 - k/n) h0 + h1.
std::vector<long> tilted_sample(int n, const TiltVector& h, Rng& rng);

struct CollapseProfile {
    double beta = 0.0;
    double delta = 0.0;
    double a_tilde = 0.0;
    double phi_max = 0.0;
    std::optional<double> psi;  // only at delta = 0
    double h_wet = 0.0;
    CriticalCurves curves;
};

// phi(a) = a (2 log Gamma + h(delta) - g(1/(2a^2), 0)) and its first two derivatives.
double phi(double beta, double delta, double a);
double phi_prime(double beta, double delta, double a);
double phi_second(double beta, double delta, double a);

// Throws std::domain_error unless beta > beta_c and delta < delta_circ(beta).
CollapseProfile collapse_profile(double beta, double delta);
// Central difference of the profile maximum in delta.
double dphi_ddelta(double beta, double delta, double step = 1e-4);

// Maclaurin series, absolute error below 1e-13; std::domain_error for |x| > 5.
double airy_ai(double x);
double airy_ai_prime(double x);
// First zero of Ai, found on (-3, -2).
double airy_first_zero();
// J(gamma) = -2^{-1/3} |a_1| gamma^{2/3}; throws std::invalid_argument for gamma <= 0.
double meander_rate(double gamma);

}  // namespace ipdsaw
