#include "ipdsaw/numeric.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ipdsaw {

double log_add(double a, double b)
{
    if (a < b) std::swap(a, b);
    if (b == kNegInf) return a;
    return a + std::log1p(std::exp(b - a));
}

void LogSumExp::add(double log_term)
{
    if (log_term == kNegInf) return;
    if (std::isnan(log_term)) throw std::domain_error("LogSumExp: NaN term");
    if (log_term > max_) {
        const double scale = max_ == kNegInf ? 0.0 : std::exp(max_ - log_term);
        sum_ *= scale;
        comp_ *= scale;
        max_ = log_term;
    }
    const double v = std::exp(log_term - max_);
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
        comp_ += (sum_ - t) + v;
    else
        comp_ += (v - t) + sum_;
    sum_ = t;
}

double LogSumExp::value() const
{
    if (max_ == kNegInf) return kNegInf;
    return max_ + std::log(sum_ + comp_);
}

double log_sum_exp(std::span<const double> terms)
{
    LogSumExp acc;
    for (double t : terms) acc.add(t);
    return acc.value();
}

void KahanSum::add(double v)
{
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
        comp_ += (sum_ - t) + v;
    else
        comp_ += (v - t) + sum_;
    sum_ = t;
}

double solve_bracketed(const std::function<double(double)>& f, double lo, double hi, double xtol)
{
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0) == (fhi < 0)) throw std::runtime_error("solve_bracketed: root not bracketed");
    std::uintmax_t iters = 400;
    auto tol = [xtol](double a, double b) { return std::abs(b - a) <= xtol * std::max(1.0, std::abs(a)); };
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    if (iters >= 400) throw std::runtime_error("solve_bracketed: no convergence");
    return 0.5 * (a + b);
}

double solve_newton(const std::function<std::pair<double, double>(double)>& fdf, double guess,
                    double lo, double hi)
{
    std::uintmax_t iters = 200;
    auto wrapped = [&](double x) {
        auto [v, d] = fdf(x);
        return std::make_tuple(v, d);
    };
    const double x = boost::math::tools::newton_raphson_iterate(wrapped, guess, lo, hi, 50, iters);
    if (iters >= 200) throw std::runtime_error("solve_newton: no convergence");
    return x;
}

namespace {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

template <unsigned N>
Rule make_rule()
{
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& xs = G::abscissa();
    const auto& ws = G::weights();
    Rule r;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const double w = ws[i];
        if (x == 0.0) {
            r.nodes.push_back(0.5);
            r.weights.push_back(0.5 * w);
            continue;
        }
        r.nodes.push_back(0.5 * (1.0 - x));
        r.weights.push_back(0.5 * w);
        r.nodes.push_back(0.5 * (1.0 + x));
        r.weights.push_back(0.5 * w);
    }
    return r;
}

const Rule& rule_for(int order)
{
    static const Rule r32 = make_rule<32>();
    static const Rule r64 = make_rule<64>();
    static const Rule r128 = make_rule<128>();
    static const Rule r256 = make_rule<256>();
    static const Rule r512 = make_rule<512>();
    switch (order) {
    case 32: return r32;
    case 64: return r64;
    case 128: return r128;
    case 256: return r256;
    case 512: return r512;
    default: throw std::invalid_argument("gauss_legendre_unit: unsupported order");
    }
}

}  // namespace

QuadratureRule gauss_legendre_unit(int order)
{
    const Rule& r = rule_for(order);
    return {r.nodes, r.weights};
}

namespace {

// Panel [a, b] at tolerance tol * max(b - a, |value|); bisects when 512 nodes are not enough.
void integrate_panel(const std::function<void(double, std::span<double>)>& f, std::size_t dim, double a, double b,
                     double tol, int depth, std::vector<double>& total)
{
    std::vector<double> values(dim);
    auto apply = [&](int order) {
        const auto rule = gauss_legendre_unit(order);
        std::vector<KahanSum> s(dim);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            f(a + (b - a) * rule.nodes[i], values);
            for (std::size_t j = 0; j < dim; ++j) s[j].add(rule.weights[i] * values[j]);
        }
        std::vector<double> out(dim);
        for (std::size_t j = 0; j < dim; ++j) out[j] = (b - a) * s[j].value();
        return out;
    };
    auto prev = apply(32);
    for (int order = 64; order <= 512; order *= 2) {
        const auto cur = apply(order);
        bool converged = true;
        for (std::size_t j = 0; j < dim; ++j)
            converged = converged && std::abs(cur[j] - prev[j]) < tol * std::max(b - a, std::abs(cur[j]));
        if (converged) {
            for (std::size_t j = 0; j < dim; ++j) total[j] += cur[j];
            return;
        }
        prev = cur;
    }
    if (depth == 0) throw std::runtime_error("integrate_unit: quadrature did not converge");
    const double m = 0.5 * (a + b);
    integrate_panel(f, dim, a, m, tol, depth - 1, total);
    integrate_panel(f, dim, m, b, tol, depth - 1, total);
}

}  // namespace

std::vector<double> integrate_unit_components(const std::function<void(double, std::span<double>)>& f,
                                              std::size_t dim, double tol)
{
    std::vector<double> total(dim, 0.0);
    integrate_panel(f, dim, 0.0, 1.0, tol, 48, total);
    return total;
}

double integrate_unit(const std::function<double(double)>& f, double tol)
{
    return integrate_unit_components([&](double u, std::span<double> out) { out[0] = f(u); }, 1, tol)[0];
}

}  // namespace ipdsaw
