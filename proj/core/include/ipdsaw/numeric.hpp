#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace ipdsaw {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(e^a + e^b) without overflow.
double log_add(double a, double b);

// Streaming log-sum-exp. The running sum is kept relative to the largest
// exponent seen so far and accumulated with Neumaier compensation.
// A NaN term throws std::domain_error.
class LogSumExp {
public:
    void add(double log_term);
    double value() const;
    bool empty() const { return max_ == kNegInf; }

private:
    double max_ = kNegInf;
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double log_sum_exp(std::span<const double> terms);

// Compensated summation of plain doubles.
class KahanSum {
public:
    void add(double v);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Root of f on [lo, hi]; f(lo) and f(hi) must differ in sign.
// Throws std::runtime_error when the bracket is invalid or iterations run out.
double solve_bracketed(const std::function<double(double)>& f, double lo, double hi,
                       double xtol = 1e-12);

// Newton iteration kept inside [lo, hi]; fdf returns (f(x), f'(x)).
double solve_newton(const std::function<std::pair<double, double>(double)>& fdf,
                    double guess, double lo, double hi);

// Gauss-Legendre rule mapped to [0, 1].
struct QuadratureRule {
    std::span<const double> nodes;
    std::span<const double> weights;
};

// Supported orders: 32, 64, 128, 256, 512.
QuadratureRule gauss_legendre_unit(int order);

// Integral of f over [0, 1]; order doubles from 32 until two successive
// estimates differ by less than tol (relative once the value exceeds the
// panel width). A panel where 512 nodes do not suffice
// is bisected, each half getting its share of tol. Throws past 48 levels.
double integrate_unit(const std::function<double(double)>& f, double tol = 1e-13);
// Same for the components of a vector-valued f, which writes dim values.
std::vector<double> integrate_unit_components(const std::function<void(double, std::span<double>)>& f,
                                              std::size_t dim, double tol = 1e-13);

}  // namespace ipdsaw
