#include "ipdsaw/exactz.hpp"

#include "ipdsaw/numeric.hpp"

#include <cstdlib>
#include <stdexcept>

namespace ipdsaw {

namespace {

struct Enumerator {
    int L;
    Variant variant;
    const std::function<void(const StretchConfig&)>& visit;
    StretchConfig cfg;

    void recurse(int used, int height)
    {
        if (used == L) {
            if (is_valid(cfg)) visit(cfg);
            return;
        }
        const int budget = L - used - 1;  // vertical units left after this horizontal step
        const bool ret = variant != Variant::Free;
        for (int s = -height; s <= budget; ++s) {
            const int h2 = height + s;
            const int rest = budget - std::abs(s);
            if (rest < 0) continue;
            if (ret && (rest == 0 ? h2 != 0 : rest < 1 + h2 && h2 != 0)) continue;
            if (variant == Variant::SingleBead) {
                if (s == 0) continue;
                if (cfg.stretches.empty() ? s < 0 : (cfg.stretches.back() > 0) == (s > 0)) continue;
            }
            cfg.stretches.push_back(s);
            recurse(used + 1 + std::abs(s), h2);
            cfg.stretches.pop_back();
        }
    }
};

}  // namespace

void for_each_config(int L, Variant variant, const std::function<void(const StretchConfig&)>& visit)
{
    if (L < 1) throw std::invalid_argument("for_each_config: L must be >= 1");
    Enumerator e{L, variant, visit, {}};
    e.cfg.total_length = L;
    e.cfg.variant = variant;
    e.recurse(0, 0);
}

double brute_force_Z(int L, double beta, double delta, Variant variant)
{
    if (L > 24) throw std::invalid_argument("brute_force_Z: L must be <= 24");
    LogSumExp acc;
    for_each_config(L, variant, [&](const StretchConfig& cfg) { acc.add(hamiltonian(cfg, beta, delta)); });
    return acc.value();
}

}  // namespace ipdsaw
