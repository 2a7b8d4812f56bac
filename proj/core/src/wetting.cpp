#include "ipdsaw/wetting.hpp"

#include "ipdsaw/numeric.hpp"
#include "ipdsaw/steps.hpp"
#include "laplace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ipdsaw {

ReturnKernel return_kernel(double beta, int t_max)
{
    if (t_max < 1) throw std::invalid_argument("return_kernel: t_max must be >= 1");
    const StepLaw law(beta);
    const double x = law.x();
    const int H = static_cast<int>(std::ceil(12.0 * std::sqrt(t_max / beta))) + 64;

    ReturnKernel out;
    out.beta = beta;
    out.t_max = t_max;
    out.height_cutoff = H;
    out.k.assign(static_cast<std::size_t>(t_max), 0.0);
    out.k[0] = 1.0 / law.c_beta();

    // v(y), y = 1..H, stored at index y - 1; true mass is v * e^{log_scale}.
    std::vector<double> v(static_cast<std::size_t>(H));
    std::vector<double> full(v.size() + 1, 0.0), conv(full.size()), left(full.size()), right(full.size());
    for (int y = 1; y <= H; ++y) v[static_cast<std::size_t>(y - 1)] = step_pmf(law, y);
    double log_scale = 0.0;
    double dropped = std::pow(x, H + 1) / (law.c_beta() * (1.0 - x));

    for (int t = 2; t <= t_max; ++t) {
        // Mass landing exactly on 0 from height y is v(y) x^y / c.
        double acc = 0.0;
        for (int y = H; y >= 1; --y) acc = v[static_cast<std::size_t>(y - 1)] + x * acc;
        out.k[static_cast<std::size_t>(t - 1)] = x * acc / law.c_beta() * std::exp(log_scale);

        // Convolve on heights 0..H then discard height 0 and below.
        std::copy(v.begin(), v.end(), full.begin() + 1);
        const double escaped = detail::laplace_convolve(law, full, conv, left, right);
        dropped += escaped * std::exp(log_scale);
        double peak = 0.0;
        for (int y = 1; y <= H; ++y) peak = std::max(peak, conv[static_cast<std::size_t>(y)]);
        if (peak <= 0.0) break;
        for (int y = 1; y <= H; ++y) v[static_cast<std::size_t>(y - 1)] = conv[static_cast<std::size_t>(y)] / peak;
        log_scale += std::log(peak);
    }
    KahanSum alive;
    for (double m : v) alive.add(m);
    out.survival = alive.value() * std::exp(log_scale);
    out.truncation_bound = dropped;
    return out;
}

double kernel_tail_constant(const ReturnKernel& kernel)
{
    return kernel.at(kernel.t_max) * std::pow(static_cast<double>(kernel.t_max), 1.5);
}

std::vector<double> zwet_sequence(const ReturnKernel& kernel, double delta, int n_max)
{
    if (n_max < 0) throw std::invalid_argument("zwet: negative length");
    if (n_max > kernel.t_max) throw std::invalid_argument("zwet: kernel too short");
    // W(n) = Z(n) e^{-zeta n} stays of order one when zeta is the free energy.
    const double zeta = wetting_free_energy(kernel.beta, delta);
    std::vector<double> weight(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int t = 1; t <= n_max; ++t) weight[static_cast<std::size_t>(t)] = kernel.at(t) * std::exp(delta - zeta * t);
    std::vector<double> w(static_cast<std::size_t>(n_max) + 1, 0.0);
    w[0] = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        KahanSum s;
        for (int t = 1; t <= n; ++t) s.add(weight[static_cast<std::size_t>(t)] * w[static_cast<std::size_t>(n - t)]);
        w[static_cast<std::size_t>(n)] = s.value();
    }
    std::vector<double> out(w.size());
    for (int n = 0; n <= n_max; ++n) out[static_cast<std::size_t>(n)] = std::log(w[static_cast<std::size_t>(n)]) + zeta * n;
    return out;
}

std::vector<double> zwet_sequence(double beta, double delta, int n_max)
{
    return zwet_sequence(return_kernel(beta, std::max(n_max, 1)), delta, n_max);
}

double zwet(double beta, double delta, int n)
{
    if (n < 1) throw std::invalid_argument("zwet: N must be >= 1");
    return zwet_sequence(beta, delta, n).back();
}

double zwet_direct(double beta, double delta, int n, int height_cutoff)
{
    if (n < 1 || height_cutoff < 1) throw std::invalid_argument("zwet_direct: bad arguments");
    const StepLaw law(beta);
    const auto size = static_cast<std::size_t>(height_cutoff) + 1;
    std::vector<double> v(size, 0.0), next(size), left(size), right(size);
    v[0] = 1.0;
    double log_scale = 0.0;
    const double pin = std::exp(delta);
    for (int k = 1; k <= n; ++k) {
        detail::laplace_convolve(law, v, next, left, right);
        next[0] *= pin;
        const double peak = *std::max_element(next.begin(), next.end());
        for (std::size_t y = 0; y < size; ++y) v[y] = next[y] / peak;
        log_scale += std::log(peak);
    }
    return std::log(v[0]) + log_scale;
}

double delta_tilde(double beta)
{
    if (!(beta > 0.0)) throw std::invalid_argument("delta_tilde: beta must be positive");
    return -std::log(-std::expm1(-0.5 * beta));
}

double wetting_free_energy(double beta, double delta)
{
    if (!(beta > 0.0)) throw std::invalid_argument("wetting_free_energy: beta must be positive");
    if (delta <= delta_tilde(beta)) return 0.0;
    const double om = -std::expm1(-0.5 * beta);
    const double num = std::expm1(delta) * om * om;
    const double den = -std::expm1(-delta) - std::exp(-beta);
    return std::max(0.0, std::log(num / den));
}

double delta_c_closed_form(double beta)
{
    const double s = std::sinh(beta);
    return std::log((s + std::sqrt(s * s + 1.0 - std::exp(beta))) / -std::expm1(-beta));
}

namespace {

double root_in_delta(double beta, double multiplier)
{
    const double lg = log_gamma_beta(beta);
    const double lo = delta_tilde(beta) + 1e-9;
    auto f = [&](double d) { return multiplier * lg + wetting_free_energy(beta, d); };
    if (f(lo) >= 0.0) return delta_tilde(beta);
    return solve_bracketed(f, lo, delta_tilde(beta) + 50.0, 1e-14);
}

}  // namespace

CriticalCurves critical_curves(double beta)
{
    static const double bc = beta_critical();
    if (beta < bc) throw std::domain_error("critical_curves: beta below beta_c");
    CriticalCurves cc;
    cc.beta = beta;
    cc.delta_tilde = delta_tilde(beta);
    cc.delta_c = delta_c_closed_form(beta);
    cc.delta_c_root = root_in_delta(beta, 1.0);
    cc.delta_circ = root_in_delta(beta, 2.0);
    return cc;
}

namespace {

// sum_{t >= m} t r^t
double weighted_geometric_tail(double r, int m)
{
    return std::pow(r, m) * (m - (m - 1) * r) / ((1.0 - r) * (1.0 - r));
}

WettingConstant cwet_from_kernel(const ReturnKernel& kernel, double delta, double h)
{
    KahanSum s;
    for (int t = 1; t <= kernel.t_max; ++t) s.add(t * kernel.at(t) * std::exp(-h * t));
    // For t > t_max, K(t) <= P(tau > t_max).
    const double tail_prob = kernel.survival + kernel.truncation_bound;
    const double tail = tail_prob * weighted_geometric_tail(std::exp(-h), kernel.t_max + 1);
    WettingConstant out;
    out.value = 1.0 / (std::exp(delta) * s.value());
    out.relative_tail_bound = tail / s.value();
    out.t_max = kernel.t_max;
    return out;
}

void check_cwet_domain(double beta, double delta)
{
    if (delta <= delta_tilde(beta)) throw std::domain_error("cwet_constant: delta must exceed delta_tilde");
}

}  // namespace

WettingConstant cwet_constant(double beta, double delta, int t_max)
{
    check_cwet_domain(beta, delta);
    return cwet_from_kernel(return_kernel(beta, t_max), delta, wetting_free_energy(beta, delta));
}

WettingConstant cwet_constant(double beta, double delta)
{
    check_cwet_domain(beta, delta);
    const double h = wetting_free_energy(beta, delta);
    int t_max = std::max(64, static_cast<int>(std::ceil(40.0 / h)));
    for (; t_max <= (1 << 20); t_max *= 2) {
        const auto res = cwet_from_kernel(return_kernel(beta, t_max), delta, h);
        if (res.relative_tail_bound < 1e-13) return res;
    }
    throw std::runtime_error("cwet_constant: tail did not converge");
}

namespace diagnostics {

double penalized_wetting_rate(const ReturnKernel& kernel, double delta, double c1, int n)
{
    auto f = [&](double h) {
        KahanSum s;
        for (int t = 1; t <= kernel.t_max; ++t)
            s.add(kernel.at(t) * std::exp(delta - h * t - c1 * std::pow(t, 3.5) / n));
        return s.value() - 1.0;
    };
    const double hi = wetting_free_energy(kernel.beta, delta);
    double lo = hi - 1.0;
    while (f(lo) < 0.0) lo -= 1.0;
    if (f(hi) > 0.0) return hi;
    return solve_bracketed(f, lo, hi, 1e-14);
}

}  // namespace diagnostics

}  // namespace ipdsaw
