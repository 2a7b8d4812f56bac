#include "ipdsaw/largedev.hpp"

#include "ipdsaw/steps.hpp"

#include <stdexcept>

namespace ipdsaw {

std::vector<long> tilted_sample(int n, const TiltVector& h, Rng& rng)
{
    if (n < 1) throw std::invalid_argument("tilted_sample: n must be positive");
    if (!in_finite_domain(h, n)) throw std::domain_error("tilted_sample: tilt outside the finite-n domain");
    const StepLaw law(h.beta);
    std::vector<long> walk(static_cast<std::size_t>(n) + 1, 0);
    for (int k = 1; k <= n; ++k) {
        const double theta = (1.0 - static_cast<double>(k) / n) * h.h0 + h.h1;
        walk[k] = walk[k - 1] + sample_tilted_step(law, theta, rng);
    }
    return walk;
}

}  // namespace ipdsaw
