#include "ipdsaw/largedev.hpp"

#include "ipdsaw/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace ipdsaw {

namespace {

// Ai(0) and -Ai'(0).
const double kC1 = 1.0 / (std::cbrt(9.0) * std::tgamma(2.0 / 3.0));
const double kC2 = 1.0 / (std::cbrt(3.0) * std::tgamma(1.0 / 3.0));

void check_range(double x)
{
    // The Maclaurin series cancels badly for large |x|.
    if (!(std::abs(x) <= 5.0)) throw std::domain_error("airy: |x| must be at most 5");
}

}  // namespace

double airy_ai(double x)
{
    check_range(x);
    const double x3 = x * x * x;
    KahanSum f, g;
    double t = 1.0;
    double u = x;
    f.add(t);
    g.add(u);
    for (int k = 1; k < 200; ++k) {
        t *= x3 / ((3.0 * k - 1.0) * (3.0 * k));
        u *= x3 / ((3.0 * k) * (3.0 * k + 1.0));
        f.add(t);
        g.add(u);
        if (std::abs(t) + std::abs(u) < 1e-18 * (std::abs(f.value()) + std::abs(g.value()))) break;
    }
    return kC1 * f.value() - kC2 * g.value();
}

double airy_ai_prime(double x)
{
    check_range(x);
    const double x3 = x * x * x;
    // Derivatives of the two series, term by term.
    KahanSum fp, gp;
    gp.add(1.0);
    double t = x * x / 2.0;  // d/dx of x^3 / 6
    double u = x * x * x / 3.0;  // d/dx of x^4 / 12
    fp.add(t);
    gp.add(u);
    for (int k = 2; k < 200; ++k) {
        t *= x3 / ((3.0 * k - 3.0) * (3.0 * k - 1.0));
        u *= x3 / ((3.0 * k - 2.0) * (3.0 * k));
        fp.add(t);
        gp.add(u);
        if (std::abs(t) + std::abs(u) < 1e-18 * (std::abs(fp.value()) + std::abs(gp.value()))) break;
    }
    return kC1 * fp.value() - kC2 * gp.value();
}

double airy_first_zero()
{
    static const double root = solve_bracketed(airy_ai, -3.0, -2.0, 1e-15);
    return root;
}

double meander_rate(double gamma)
{
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("meander_rate: gamma must be positive");
    return -std::abs(airy_first_zero()) * std::cbrt(gamma * gamma) / std::cbrt(2.0);
}

}  // namespace ipdsaw
