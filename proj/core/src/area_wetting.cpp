#include "ipdsaw/exactz.hpp"

#include "ipdsaw/largedev.hpp"
#include "ipdsaw/numeric.hpp"
#include "ipdsaw/steps.hpp"
#include "laplace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ipdsaw {

int default_area_cutoff(int N) { return static_cast<int>(std::ceil(10.0 * std::sqrt(static_cast<double>(N)))) + 50; }

AreaWettingDP::AreaWettingDP(int N, double gamma, double delta, double beta, int height_cutoff)
    : N_(N), H_(height_cutoff), gamma_(gamma), delta_(delta)
{
    if (N < 1) throw std::invalid_argument("AreaWettingDP: N must be >= 1");
    if (height_cutoff < 1) throw std::invalid_argument("AreaWettingDP: height cutoff must be >= 1");
    if (gamma < 0.0) throw std::invalid_argument("AreaWettingDP: gamma must be non-negative");
    const StepLaw law(beta);
    const auto w = static_cast<std::size_t>(H_) + 1;
    lin_.assign((static_cast<std::size_t>(N_) + 1) * w, 0.0);
    scale_.assign(static_cast<std::size_t>(N_) + 1, 0.0);
    lin_[0] = 1.0;

    std::vector<double> penalty(w), left(w), right(w);
    for (std::size_t y = 0; y < w; ++y) penalty[y] = std::exp(-gamma * static_cast<double>(y) / N_);
    penalty[0] *= std::exp(delta);

    LogSumExp escaped;
    for (int k = 1; k <= N_; ++k) {
        std::span<const double> prev(&lin_[static_cast<std::size_t>(k - 1) * w], w);
        std::span<double> cur(&lin_[static_cast<std::size_t>(k) * w], w);
        const double up = detail::laplace_convolve(law, prev, cur, left, right);
        const double s_prev = scale_[static_cast<std::size_t>(k - 1)];
        if (up > 0.0) escaped.add(std::log(up) + s_prev);
        for (std::size_t y = 0; y < w; ++y) cur[y] *= penalty[y];
        const double peak = *std::max_element(cur.begin(), cur.end());
        if (peak <= 0.0) throw std::runtime_error("AreaWettingDP: weights underflowed");
        for (double& v : cur) v /= peak;
        scale_[static_cast<std::size_t>(k)] = s_prev + std::log(peak);
    }
    log_escaped_ = escaped.value();
}

double AreaWettingDP::log_weight(int k, int y) const
{
    if (k < 0 || k > N_ || y < 0 || y > H_) return kNegInf;
    const double v = lin_[static_cast<std::size_t>(k) * (static_cast<std::size_t>(H_) + 1) + static_cast<std::size_t>(y)];
    return v > 0.0 ? std::log(v) + scale_[static_cast<std::size_t>(k)] : kNegInf;
}

double AreaWettingDP::log_column_total(int k) const
{
    if (k < 0 || k > N_) throw std::out_of_range("AreaWettingDP: step out of range");
    const auto w = static_cast<std::size_t>(H_) + 1;
    KahanSum s;
    for (std::size_t y = 0; y < w; ++y) s.add(lin_[static_cast<std::size_t>(k) * w + y]);
    return std::log(s.value()) + scale_[static_cast<std::size_t>(k)];
}

double e_circ(int N, double q, double beta, double delta)
{
    if (!(q > 0.0)) throw std::invalid_argument("e_circ: q must be positive");
    const double g = tilt_inverse(q, 0.0, beta).h0;
    return AreaWettingDP(N, g, delta, beta, default_area_cutoff(N)).log_value();
}

double e_n_gamma(int N, double gamma, double beta)
{
    if (!(gamma > 0.0)) throw std::invalid_argument("e_n_gamma: gamma must be positive");
    return AreaWettingDP(N, gamma, 0.0, beta, default_area_cutoff(N)).log_value();
}

double log_positive_bridge(int n, int x, double beta)
{
    if (x < 0) throw std::invalid_argument("log_positive_bridge: start must be >= 0");
    // Reversal: P_x(stay >= 0, X_n = 0) = P_0(stay >= 0, X_n = x).
    return AreaWettingDP(n, 0.0, 0.0, beta, default_area_cutoff(n) + x).log_weight(n, x);
}

}  // namespace ipdsaw
