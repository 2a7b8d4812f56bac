#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ipdsaw {

enum class Variant { Free, ConstrainedEnd, SingleBead };

std::string_view to_string(Variant v);
// Accepts "free", "constrained", "single-bead"; throws std::invalid_argument otherwise.
Variant parse_variant(std::string_view name);

// A path above the wall as its signed vertical stretches l_1..l_N. The path
// has N horizontal steps, so total_length = N + sum |l_i|.
struct StretchConfig {
    std::vector<int> stretches;
    int total_length = 0;
    Variant variant = Variant::Free;

    int extension() const { return static_cast<int>(stretches.size()); }
    bool operator==(const StretchConfig&) const = default;
};

// Reason the configuration is not in the variant's configuration set, if any.
std::optional<std::string> validation_error(const StretchConfig& cfg);
bool is_valid(const StretchConfig& cfg);
// Builds a configuration with total length N + sum |l_i|; throws std::invalid_argument if invalid.
StretchConfig make_config(std::vector<int> stretches, Variant variant);

// min(|x|, |y|) when x and y do not share a strict sign, else 0.
int wedge(int x, int y);

// beta * sum_{i=0..N} wedge(l_i, l_{i+1}) + delta * #{k : l_1 + ... + l_k = 0},
// with l_0 = l_{N+1} = 0. Throws std::invalid_argument on invalid input.
double hamiltonian(const StretchConfig& cfg, double beta, double delta);

// Inclusive 1-based index range.
struct Bead {
    int first = 0;
    int last = 0;
    bool operator==(const Bead&) const = default;
};

std::vector<Bead> beads(const StretchConfig& cfg);

// Upper envelope S_1..S_{N+1} (odd prefix sums) and lower envelope I_1..I_N
// (even prefix sums) of a single-bead configuration with 2N stretches.
struct Envelopes {
    std::vector<int> upper;
    std::vector<int> lower;
};

Envelopes envelopes(const StretchConfig& cfg);
// Inverse of envelopes; throws std::invalid_argument on crossing or malformed walks.
StretchConfig from_walks(std::span<const int> upper, std::span<const int> lower);

// A_n(X) = X_0 + X_1 + ... + X_n for a walk given without its origin X_0 = 0.
long signed_area(std::span<const int> walk);
// sum |l_i| recovered from the envelopes.
long geometric_area(const Envelopes& env);

struct Observables {
    int extension = 0;
    int contacts = 0;
    int bead_count = 0;
    int max_height = 0;
    long signed_area = 0;  // area under the height profile T_0..T_N
};

Observables observables(const StretchConfig& cfg);

// One JSON object {"L": int, "stretches": [int], "variant": str}.
std::string to_json(const StretchConfig& cfg);
StretchConfig config_from_json(std::string_view text);

}  // namespace ipdsaw
