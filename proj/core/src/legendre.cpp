#include "ipdsaw/largedev.hpp"

#include "ipdsaw/numeric.hpp"
#include "ipdsaw/steps.hpp"

#include <gsl/gsl_sf_dilog.h>

#include <cmath>
#include <functional>
#include <stdexcept>

namespace ipdsaw {

namespace {

constexpr double kSeriesThreshold = 1e-8;
constexpr double kClosedFormThreshold = 1e-3;
// The dilogarithm form of L_Lambda divides by h0; the gradient divides again.
constexpr double kDilogThreshold = 0.1;

void require_domain(const TiltVector& h)
{
    if (!in_domain(h)) throw std::domain_error("tilt outside the domain |h1| < beta/2, |h0 + h1| < beta/2");
}

// Integrals over [0, 1] of u^j f(h0 u + h1) for j = 0..2.
template <class F>
std::array<double, 3> moments(const TiltVector& h, F f)
{
    const auto m = integrate_unit_components(
        [&](double u, std::span<double> out) {
            const double v = f(h.h0 * u + h.h1);
            out[0] = v;
            out[1] = u * v;
            out[2] = u * u * v;
        },
        3, 1e-13);
    return {m[0], m[1], m[2]};
}

double norm2(double a, double b) { return std::hypot(a, b); }

// Integral over u in [0, 1] of log(1 - e^{-D(u)}) for D linear from d0 to d1,
// via d/dD Li2(e^{-D}) = log(1 - e^{-D}).
double log_edge_integral(double d0, double d1)
{
    return (gsl_sf_dilog(std::exp(-d1)) - gsl_sf_dilog(std::exp(-d0))) / (d1 - d0);
}

}  // namespace

bool in_domain(const TiltVector& h)
{
    const double hb = 0.5 * h.beta;
    return h.beta > 0.0 && std::abs(h.h1) < hb && std::abs(h.h0 + h.h1) < hb;
}

bool in_finite_domain(const TiltVector& h, int n)
{
    const double hb = 0.5 * h.beta;
    return h.beta > 0.0 && n >= 1 && std::abs(h.h1) < hb && std::abs((1.0 - 1.0 / n) * h.h0 + h.h1) < hb;
}

double l_lambda(const TiltVector& h)
{
    require_domain(h);
    const StepLaw law(h.beta);
    if (h.h0 == 0.0) return log_mgf(law, h.h1);
    if (std::abs(h.h0) < kDilogThreshold)
        return integrate_unit([&](double u) { return log_mgf(law, h.h0 * u + h.h1); }, 1e-13);
    // L(t) = 2 log(1 - x) - log(1 - e^{-(beta/2 - t)}) - log(1 - e^{-(beta/2 + t)})
    const double hb = 0.5 * h.beta;
    const double upper = log_edge_integral(hb - h.h1, hb - h.h1 - h.h0);
    const double lower = log_edge_integral(hb + h.h1, hb + h.h1 + h.h0);
    return 2.0 * std::log(-std::expm1(-hb)) - upper - lower;
}

std::array<double, 2> grad_l_lambda(const TiltVector& h)
{
    require_domain(h);
    const StepLaw law(h.beta);
    if (std::abs(h.h0) < kSeriesThreshold) {
        const double d1 = log_mgf_d1(law, h.h1);
        const double d2 = log_mgf_d2(law, h.h1);
        return {0.5 * d1 + h.h0 * d2 / 3.0, d1 + 0.5 * h.h0 * d2};
    }
    if (std::abs(h.h0) < kClosedFormThreshold) {
        // The closed form divides by h0; integrate the derivative instead.
        const auto m = moments(h, [&](double t) { return log_mgf_d1(law, t); });
        return {m[1], m[0]};
    }
    const double end = log_mgf(law, h.h0 + h.h1);
    return {(end - l_lambda(h)) / h.h0, (end - log_mgf(law, h.h1)) / h.h0};
}

std::array<double, 3> hessian_l_lambda(const TiltVector& h)
{
    require_domain(h);
    const StepLaw law(h.beta);
    if (std::abs(h.h0) < kClosedFormThreshold) {
        const auto m = moments(h, [&](double t) { return log_mgf_d2(law, t); });
        return {m[2], m[1], m[0]};
    }
    // Integration by parts; quadrature of L'' is unreliable near the domain edge.
    const double end = log_mgf_d1(law, h.h0 + h.h1);
    const auto g = grad_l_lambda(h);
    return {(end - 2.0 * g[0]) / h.h0, (end - g[1]) / h.h0, (end - log_mgf_d1(law, h.h1)) / h.h0};
}

namespace {

using Gradient = std::function<std::array<double, 2>(const TiltVector&)>;
using Hessian = std::function<std::array<double, 3>(const TiltVector&)>;
using Domain = std::function<bool(const TiltVector&)>;

// Damped Newton for grad(h) = target, backtracking to stay in the domain
// and to decrease the residual. Returns false on failure.
bool newton(TiltVector& h, double q, double p, double tol, const Gradient& grad, const Hessian& hess,
            const Domain& inside)
{
    auto g = grad(h);
    double res = norm2(g[0] - q, g[1] - p);
    for (int it = 0; it < 200; ++it) {
        if (res < tol) return true;
        const auto H = hess(h);
        const double det = H[0] * H[2] - H[1] * H[1];
        if (!(det > 0.0)) return false;
        const double r0 = g[0] - q;
        const double r1 = g[1] - p;
        const double d0 = -(H[2] * r0 - H[1] * r1) / det;
        const double d1 = -(-H[1] * r0 + H[0] * r1) / det;
        double alpha = 1.0;
        bool moved = false;
        while (alpha > 1e-14) {
            TiltVector cand{h.h0 + alpha * d0, h.h1 + alpha * d1, h.beta};
            if (inside(cand)) {
                const auto gc = grad(cand);
                const double rc = norm2(gc[0] - q, gc[1] - p);
                if (rc < (1.0 - 1e-4 * alpha) * res || rc < tol) {
                    h = cand;
                    g = gc;
                    res = rc;
                    moved = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if (!moved) return res < tol;
    }
    return res < tol;
}

// Continuation along the ray from (0, 0) to (q, p), subdividing a leg when Newton fails.
TiltVector solve_tilt(TiltVector h, double q, double p, const Gradient& grad, const Hessian& hess,
                      const Domain& inside)
{
    const double tol = 1e-10 * std::max(1.0, norm2(q, p));
    double t = 0.0;
    double dt = 1.0 / 8.0;
    int failures = 0;
    while (t < 1.0) {
        const double t2 = std::min(1.0, t + dt);
        TiltVector trial = h;
        const double leg_tol = t2 < 1.0 ? std::max(tol, 1e-8) : tol;
        if (newton(trial, t2 * q, t2 * p, leg_tol, grad, hess, inside)) {
            h = trial;
            t = t2;
        } else {
            dt *= 0.25;
            if (++failures > 40 || dt < 1e-12) throw std::runtime_error("tilt solver: Newton failed");
        }
    }
    return h;
}

}  // namespace

TiltVector tilt_inverse(double q, double p, double beta)
{
    if (!(beta > 0.0)) throw std::invalid_argument("tilt_inverse: beta must be positive");
    if (!std::isfinite(q) || !std::isfinite(p)) throw std::invalid_argument("tilt_inverse: non-finite target");
    TiltVector h{0.0, 0.0, beta};
    if (q == 0.0 && p == 0.0) return h;
    return solve_tilt(h, q, p, grad_l_lambda, hessian_l_lambda, in_domain);
}

double rate_g(double q, double p, double beta)
{
    const TiltVector h = tilt_inverse(q, p, beta);
    return h.h0 * q + h.h1 * p - l_lambda(h);
}

namespace {

void require_finite_domain(const TiltVector& h, int n)
{
    if (n < 2) throw std::invalid_argument("finite tilt: n must be >= 2");
    if (!in_finite_domain(h, n)) throw std::domain_error("tilt outside the finite-n domain");
}

}  // namespace

double mean_l_lambda_n(const TiltVector& h, int n)
{
    require_finite_domain(h, n);
    const StepLaw law(h.beta);
    KahanSum s;
    for (int k = 1; k <= n; ++k) s.add(log_mgf(law, (1.0 - static_cast<double>(k) / n) * h.h0 + h.h1));
    return s.value() / n;
}

std::array<double, 2> grad_mean_l_lambda_n(const TiltVector& h, int n)
{
    require_finite_domain(h, n);
    const StepLaw law(h.beta);
    KahanSum s0, s1;
    for (int k = 1; k <= n; ++k) {
        const double w = 1.0 - static_cast<double>(k) / n;
        const double d = log_mgf_d1(law, w * h.h0 + h.h1);
        s0.add(w * d);
        s1.add(d);
    }
    return {s0.value() / n, s1.value() / n};
}

std::array<double, 3> hessian_mean_l_lambda_n(const TiltVector& h, int n)
{
    require_finite_domain(h, n);
    const StepLaw law(h.beta);
    KahanSum s00, s01, s11;
    for (int k = 1; k <= n; ++k) {
        const double w = 1.0 - static_cast<double>(k) / n;
        const double d = log_mgf_d2(law, w * h.h0 + h.h1);
        s00.add(w * w * d);
        s01.add(w * d);
        s11.add(d);
    }
    return {s00.value() / n, s01.value() / n, s11.value() / n};
}

TiltVector finite_tilt(int n, double q, double p, double beta)
{
    if (n < 2) throw std::invalid_argument("finite_tilt: n must be >= 2");
    if (!(beta > 0.0)) throw std::invalid_argument("finite_tilt: beta must be positive");
    TiltVector h{0.0, 0.0, beta};
    if (q == 0.0 && p == 0.0) return h;
    auto grad = [n](const TiltVector& v) { return grad_mean_l_lambda_n(v, n); };
    auto hess = [n](const TiltVector& v) { return hessian_mean_l_lambda_n(v, n); };
    auto inside = [n](const TiltVector& v) { return in_finite_domain(v, n); };
    // The continuum solution lies in the finite-n domain and is within O(1/n).
    TiltVector seed = tilt_inverse(q, p, beta);
    if (newton(seed, q, p, 1e-12 * std::max(1.0, norm2(q, p)), grad, hess, inside)) return seed;
    return solve_tilt(h, q, p, grad, hess, inside);
}

}  // namespace ipdsaw
