#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ipdsaw::checks {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct CheckOptions {
    std::uint64_t seed = 0x5eed2024;
};

int criteria_count();
std::string criterion_name(int id);

// Runs one criterion (1-based). Exceptions are reported as failures.
CheckResult run_check(int id, const CheckOptions& options);
// Runs the listed criteria, or all of them when ids is empty, calling report after each.
std::vector<CheckResult> run_checks(const std::vector<int>& ids, const CheckOptions& options,
                                    const std::function<void(const CheckResult&)>& report = {});

// One line, "PASS [k] name: detail (t s)".
std::string format_result(const CheckResult& result);

}  // namespace ipdsaw::checks

namespace ipdsaw::fkg {

// Walks X_1..X_n from X_0 = 0 with increments in [-max_step, max_step].
using Path = std::vector<int>;

enum class Event { All, Positive, Bridge, PositiveBridge };

// True if the event is closed under pointwise max and min.
bool lattice_closed(int n, int max_step, Event event);

// True if mu(a v b) mu(a ^ b) >= mu(a) mu(b) for every pair of paths (exhaustive).
bool lattice_condition(int n, int max_step, double beta);

// Product of indicators 1{X_k <= t_k} over the listed times: non-increasing in the path.
struct DownIndicator {
    std::vector<int> times;   // 1-based
    std::vector<int> levels;
    bool operator()(const Path& path) const;
};

struct Covariance {
    double e_fg = 0.0;
    double e_f = 0.0;
    double e_g = 0.0;
    double defect() const { return e_f * e_g - e_fg; }  // positive means an FKG violation
};

// Exact conditional moments under the truncated, renormalized step law.
Covariance conditional_covariance(int n, int max_step, double beta, Event event, const DownIndicator& f,
                                  const DownIndicator& g);

}  // namespace ipdsaw::fkg
