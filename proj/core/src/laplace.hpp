#pragma once

#include "ipdsaw/steps.hpp"

#include <cstddef>
#include <span>

namespace ipdsaw::detail {

// out(y) = sum_{y'} in(y') x^{|y - y'|} over the index window of `in`, in
// O(n) via the two one-sided geometric recursions. `left` and `right` are
// scratch buffers of the same size. Returns sum_{y' in window, y > window} in(y') x^{y - y'}.
inline double geometric_smooth(double x, std::span<const double> in, std::span<double> out,
                               std::span<double> left, std::span<double> right)
{
    const std::size_t n = in.size();
    if (n == 0) return 0.0;
    double acc = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
        acc = in[y] + x * acc;
        left[y] = acc;
    }
    acc = 0.0;
    for (std::size_t y = n; y-- > 0;) {
        acc = in[y] + x * acc;
        right[y] = acc;
    }
    for (std::size_t y = 0; y < n; ++y) {
        const double l = y > 0 ? left[y - 1] : 0.0;
        const double r = y + 1 < n ? right[y + 1] : 0.0;
        out[y] = in[y] + x * (l + r);
    }
    return x * left[n - 1] / (1.0 - x);
}

// out(y) = sum_{y'} in(y') P(y - y') for the discrete Laplace law. Returns the
// mass the convolution would put strictly above the window.
inline double laplace_convolve(const StepLaw& law, std::span<const double> in, std::span<double> out,
                               std::span<double> left, std::span<double> right)
{
    const double inv_c = 1.0 / law.c_beta();
    const double above = geometric_smooth(law.x(), in, out, left, right);
    for (double& v : out) v *= inv_c;
    return above * inv_c;
}

}  // namespace ipdsaw::detail
