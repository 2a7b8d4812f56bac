#include "ipdsaw/exactz.hpp"

#include "ipdsaw/numeric.hpp"
#include "ipdsaw/steps.hpp"
#include "laplace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ipdsaw {

double d_circ_area(int N, int area, double beta, double delta, int height_cutoff)
{
    if (N < 1) throw std::invalid_argument("d_circ: N must be >= 1");
    if (area < N) return kNegInf;  // every pair contributes S_k - I_k >= 1
    const StepLaw law(beta);
    const int H = height_cutoff < 0 ? area : std::min(height_cutoff, area);
    if (H < 1) return kNegInf;
    const auto hs = static_cast<std::size_t>(H) + 1;
    const auto as = static_cast<std::size_t>(area) + 1;
    // F(s, i, a) at index (s * hs + i) * as + a
    auto idx = [&](int s, int i, int a) {
        return (static_cast<std::size_t>(s) * hs + static_cast<std::size_t>(i)) * as + static_cast<std::size_t>(a);
    };
    std::vector<double> F(hs * hs * as, 0.0), G(F.size(), 0.0);
    std::vector<double> in(hs), out(hs), left(hs), right(hs);
    const double pin = std::exp(delta);
    F[idx(0, 0, 0)] = 1.0;
    double log_scale = 0.0;

    for (int k = 0; k < N; ++k) {
        const int remaining_after = N - k - 1;
        // Upper walk moves: S_{k+1} > I_k.
        std::fill(G.begin(), G.end(), 0.0);
        for (int i = 0; i <= H; ++i)
            for (int a = 0; a <= area; ++a) {
                bool any = false;
                for (int s = 0; s <= H; ++s) {
                    in[static_cast<std::size_t>(s)] = F[idx(s, i, a)];
                    any = any || in[static_cast<std::size_t>(s)] > 0.0;
                }
                if (!any) continue;
                detail::laplace_convolve(law, in, out, left, right);
                for (int s = i + 1; s <= H; ++s) G[idx(s, i, a)] = out[static_cast<std::size_t>(s)];
            }
        // Lower walk moves: 0 <= I_{k+1} < S_{k+1}; area grows by S_{k+1} - I_{k+1}.
        std::fill(F.begin(), F.end(), 0.0);
        for (int s = 1; s <= H; ++s)
            for (int d = 0; d <= area; ++d) {
                bool any = false;
                for (int i = 0; i <= H; ++i) {
                    in[static_cast<std::size_t>(i)] = G[idx(s, i, d)];
                    any = any || in[static_cast<std::size_t>(i)] > 0.0;
                }
                if (!any) continue;
                detail::laplace_convolve(law, in, out, left, right);
                const int top = remaining_after == 0 ? 0 : s - 1;
                for (int i2 = 0; i2 <= top; ++i2) {
                    const int b = d + s - i2;
                    if (b + remaining_after > area) continue;
                    double v = out[static_cast<std::size_t>(i2)];
                    if (i2 == 0) v *= pin;
                    F[idx(s, i2, b)] += v;
                }
            }
        const double peak = *std::max_element(F.begin(), F.end());
        if (peak <= 0.0) return kNegInf;
        for (double& v : F) v /= peak;
        log_scale += std::log(peak);
    }
    // Final upper step S_{N+1} = 0.
    KahanSum total;
    for (int s = 1; s <= H; ++s) total.add(F[idx(s, 0, area)] * step_pmf(law, s));
    return total.value() > 0.0 ? std::log(total.value()) + log_scale : kNegInf;
}

double d_circ(int N, double q, double beta, double delta)
{
    if (N < 1) throw std::invalid_argument("d_circ: N must be >= 1");
    if (!(q > 0.0)) throw std::invalid_argument("d_circ: q must be positive");
    const double twice = 2.0 * q * N * N;
    const double r = std::round(twice);
    if (std::abs(twice - r) > 1e-9 * std::max(1.0, twice))
        throw std::invalid_argument("d_circ: q is not on the lattice N / (2 N^2)");
    const auto k = static_cast<long>(r);
    if (k % 2 != 0) return kNegInf;
    return d_circ_area(N, static_cast<int>(k / 2), beta, delta);
}

double single_bead_walk_sum(int L, double beta, double delta)
{
    if (L < 1) throw std::invalid_argument("single_bead_walk_sum: L must be >= 1");
    if (L % 2 != 0) return kNegInf;
    const double lg = log_gamma_beta(beta);
    LogSumExp acc;
    for (int N = 1; N <= L / 2; ++N) {
        const double d = d_circ_area(N, (L - 2 * N) / 2, beta, delta);
        if (d > kNegInf) acc.add(2.0 * N * lg + d);
    }
    return acc.value();
}

double constrained_walk_sum(int L, double beta, double delta, bool count_padding_contact)
{
    if (L < 1) throw std::invalid_argument("constrained_walk_sum: L must be >= 1");
    const StepLaw law(beta);
    const double lg = log_gamma_beta(beta);
    const int H = L / 2;
    const auto hs = static_cast<std::size_t>(H) + 1;
    const auto gs = static_cast<std::size_t>(L) + 1;
    // State at index j of the interleaved chain T_j (S on odd j, I on even j):
    // (T_{j-1}, T_j, sum_{i <= j} |T_i - T_{i-1}|).
    auto idx = [&](int prev, int cur, int g) {
        return (static_cast<std::size_t>(prev) * hs + static_cast<std::size_t>(cur)) * gs + static_cast<std::size_t>(g);
    };
    std::vector<double> F(hs * hs * gs, 0.0), next(F.size(), 0.0);
    F[idx(0, 0, 0)] = 1.0;
    double log_scale = 0.0;
    const double pin = std::exp(delta);
    LogSumExp acc;
    for (int j = 1; j <= L; ++j) {
        // T_j is reached by a step of its own walk from T_{j-2}.
        std::fill(next.begin(), next.end(), 0.0);
        for (int prev = 0; prev <= H; ++prev)
            for (int cur = 0; cur <= H; ++cur)
                for (int g = 0; g <= L - j + 1 && g < static_cast<int>(gs); ++g) {
                    const double v = F[idx(prev, cur, g)];
                    if (v == 0.0) continue;
                    for (int t = 0; t <= H; ++t) {
                        const int g2 = g + std::abs(t - cur);
                        if (g2 > L - j) continue;
                        double w = v * step_pmf(law, t - prev);
                        if (t == 0) w *= pin;
                        next[idx(cur, t, g2)] += w;
                    }
                }
        std::swap(F, next);
        const double peak = *std::max_element(F.begin(), F.end());
        if (peak <= 0.0) break;
        for (double& v : F) v /= peak;
        log_scale += std::log(peak);
        // Close with N = j: T_N = 0, padding T_{N+1} = T_N reached from T_{N-1}.
        const int N = j;
        KahanSum term;
        for (int prev = 0; prev <= H; ++prev) {
            double w = F[idx(prev, 0, L - N)] * step_pmf(law, -prev);
            if (count_padding_contact) w *= pin;
            term.add(w);
        }
        if (term.value() > 0.0) acc.add(N * lg + std::log(term.value()) + log_scale);
    }
    return acc.value();
}

}  // namespace ipdsaw
