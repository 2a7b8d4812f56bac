#include "ipdsaw/largedev.hpp"

#include "ipdsaw/numeric.hpp"
#include "ipdsaw/steps.hpp"

#include <cmath>
#include <stdexcept>

namespace ipdsaw {

namespace {

double constant_term(double beta, double delta)
{
    return 2.0 * log_gamma_beta(beta) + wetting_free_energy(beta, delta);
}

void check_positive(double a)
{
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("phi: a must be positive");
}

}  // namespace

double phi(double beta, double delta, double a)
{
    check_positive(a);
    return a * (constant_term(beta, delta) - rate_g(0.5 / (a * a), 0.0, beta));
}

double phi_prime(double beta, double delta, double a)
{
    check_positive(a);
    const double q = 0.5 / (a * a);
    const TiltVector h = tilt_inverse(q, 0.0, beta);
    return constant_term(beta, delta) + q * h.h0 + l_lambda(h);
}

double phi_second(double beta, double delta, double a)
{
    check_positive(a);
    (void)delta;
    const double q = 0.5 / (a * a);
    const TiltVector h = tilt_inverse(q, 0.0, beta);
    if (q == 0.0) return 0.0;
    const auto H = hessian_l_lambda(h);
    const double dh0_dq = H[2] / (H[0] * H[2] - H[1] * H[1]);
    return -(h.h0 + 2.0 * q * dh0_dq) / (a * a * a);
}

CollapseProfile collapse_profile(double beta, double delta)
{
    if (!(beta > beta_critical())) throw std::domain_error("collapse_profile: beta must exceed beta_c");
    const CriticalCurves curves = critical_curves(beta);
    if (!(delta < curves.delta_circ)) throw std::domain_error("collapse_profile: delta outside the collapsed phase");

    auto d1 = [&](double a) { return phi_prime(beta, delta, a); };
    // phi' is positive near 0 and tends to 2 log Gamma + h < 0 at infinity.
    double lo = 1.0;
    double hi = 1.0;
    if (d1(1.0) > 0.0) {
        for (int i = 0; d1(hi) > 0.0; ++i) {
            if (i > 60) throw std::runtime_error("collapse_profile: no upper bracket");
            lo = hi;
            hi *= 2.0;
        }
    } else {
        for (int i = 0; d1(lo) <= 0.0; ++i) {
            if (i > 20) throw std::runtime_error("collapse_profile: no lower bracket");
            hi = lo;
            lo *= 0.5;
        }
    }

    double a = solve_newton(
        [&](double v) { return std::make_pair(d1(v), phi_second(beta, delta, v)); }, std::sqrt(lo * hi), lo, hi);
    if (!(std::abs(d1(a)) < 1e-9)) a = solve_bracketed(d1, lo, hi, 1e-14);

    CollapseProfile out;
    out.beta = beta;
    out.delta = delta;
    out.a_tilde = a;
    out.phi_max = phi(beta, delta, a);
    out.h_wet = wetting_free_energy(beta, delta);
    out.curves = curves;
    if (delta == 0.0) {
        const StepLaw law(beta);
        const double h0 = tilt_inverse(0.5 / (a * a), 0.0, beta).h0;
        out.psi = -std::abs(airy_first_zero()) * std::cbrt(a * law.sigma2() * h0 * h0 / 2.0);
    }
    return out;
}

double dphi_ddelta(double beta, double delta, double step)
{
    if (!(step > 0.0)) throw std::invalid_argument("dphi_ddelta: step must be positive");
    return (collapse_profile(beta, delta + step).phi_max - collapse_profile(beta, delta - step).phi_max) /
           (2.0 * step);
}

}  // namespace ipdsaw
