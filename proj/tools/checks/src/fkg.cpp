#include "ipdsaw/checks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ipdsaw::fkg {

namespace {

template <class F>
void for_each_path(int n, int max_step, F&& visit)
{
    Path path(static_cast<std::size_t>(n), 0);
    std::vector<int> steps(static_cast<std::size_t>(n), -max_step);
    while (true) {
        int x = 0;
        for (int k = 0; k < n; ++k) {
            x += steps[k];
            path[k] = x;
        }
        visit(path);
        int k = n - 1;
        while (k >= 0 && steps[k] == max_step) steps[k--] = -max_step;
        if (k < 0) return;
        ++steps[k];
    }
}

bool in_event(const Path& path, Event event)
{
    const bool positive = std::all_of(path.begin(), path.end(), [](int x) { return x >= 0; });
    const bool bridge = path.empty() || path.back() == 0;
    switch (event) {
    case Event::All: return true;
    case Event::Positive: return positive;
    case Event::Bridge: return bridge;
    case Event::PositiveBridge: return positive && bridge;
    }
    return false;
}

bool steps_ok(const Path& path, int max_step)
{
    int prev = 0;
    for (int x : path) {
        if (std::abs(x - prev) > max_step) return false;
        prev = x;
    }
    return true;
}

double log_weight(const Path& path, double beta)
{
    double w = 0.0;
    int prev = 0;
    for (int x : path) {
        w -= 0.5 * beta * std::abs(x - prev);
        prev = x;
    }
    return w;
}

std::vector<Path> all_paths(int n, int max_step)
{
    if (n < 1 || max_step < 1) throw std::invalid_argument("fkg: n and max_step must be positive");
    std::vector<Path> out;
    for_each_path(n, max_step, [&](const Path& p) { out.push_back(p); });
    return out;
}

Path join(const Path& a, const Path& b, bool upper)
{
    Path out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = upper ? std::max(a[k], b[k]) : std::min(a[k], b[k]);
    return out;
}

}  // namespace

bool lattice_closed(int n, int max_step, Event event)
{
    const auto paths = all_paths(n, max_step);
    std::vector<const Path*> members;
    for (const auto& p : paths)
        if (in_event(p, event)) members.push_back(&p);
    for (const Path* a : members)
        for (const Path* b : members) {
            const Path hi = join(*a, *b, true);
            const Path lo = join(*a, *b, false);
            if (!steps_ok(hi, max_step) || !steps_ok(lo, max_step)) return false;
            if (!in_event(hi, event) || !in_event(lo, event)) return false;
        }
    return true;
}

bool lattice_condition(int n, int max_step, double beta)
{
    const auto paths = all_paths(n, max_step);
    for (const auto& a : paths)
        for (const auto& b : paths) {
            const double lhs = log_weight(join(a, b, true), beta) + log_weight(join(a, b, false), beta);
            if (lhs < log_weight(a, beta) + log_weight(b, beta) - 1e-12) return false;
        }
    return true;
}

bool DownIndicator::operator()(const Path& path) const
{
    for (std::size_t i = 0; i < times.size(); ++i)
        if (path.at(static_cast<std::size_t>(times[i] - 1)) > levels[i]) return false;
    return true;
}

Covariance conditional_covariance(int n, int max_step, double beta, Event event, const DownIndicator& f,
                                  const DownIndicator& g)
{
    double z = 0.0, sf = 0.0, sg = 0.0, sfg = 0.0;
    for_each_path(n, max_step, [&](const Path& p) {
        if (!in_event(p, event)) return;
        const double w = std::exp(log_weight(p, beta));
        const bool fv = f(p);
        const bool gv = g(p);
        z += w;
        if (fv) sf += w;
        if (gv) sg += w;
        if (fv && gv) sfg += w;
    });
    if (!(z > 0.0)) throw std::invalid_argument("fkg: empty event");
    return {sfg / z, sf / z, sg / z};
}

}  // namespace ipdsaw::fkg
