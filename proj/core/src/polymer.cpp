#include "ipdsaw/polymer.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace ipdsaw {

std::string_view to_string(Variant v)
{
    switch (v) {
    case Variant::Free: return "free";
    case Variant::ConstrainedEnd: return "constrained";
    case Variant::SingleBead: return "single-bead";
    }
    return "free";
}

Variant parse_variant(std::string_view name)
{
    if (name == "free") return Variant::Free;
    if (name == "constrained") return Variant::ConstrainedEnd;
    if (name == "single-bead") return Variant::SingleBead;
    throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

std::optional<std::string> validation_error(const StretchConfig& cfg)
{
    const auto& l = cfg.stretches;
    if (l.empty()) return "no stretches";
    long vertical = 0;
    long height = 0;
    for (int s : l) {
        vertical += std::labs(s);
        height += s;
        if (height < 0) return "path goes below the wall";
    }
    if (cfg.total_length != static_cast<long>(l.size()) + vertical) return "total length does not match stretches";
    if (cfg.variant != Variant::Free && height != 0) return "path does not end on the wall";
    if (cfg.variant == Variant::SingleBead) {
        if (l.size() % 2 != 0) return "single bead needs an even number of stretches";
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (l[i] == 0) return "single bead has a zero stretch";
            if (i + 1 < l.size() && (l[i] > 0) == (l[i + 1] > 0)) return "single bead stretches must alternate";
        }
    }
    return std::nullopt;
}

bool is_valid(const StretchConfig& cfg) { return !validation_error(cfg).has_value(); }

StretchConfig make_config(std::vector<int> stretches, Variant variant)
{
    StretchConfig cfg;
    long vertical = 0;
    for (int s : stretches) vertical += std::labs(s);
    cfg.total_length = static_cast<int>(static_cast<long>(stretches.size()) + vertical);
    cfg.stretches = std::move(stretches);
    cfg.variant = variant;
    if (auto err = validation_error(cfg)) throw std::invalid_argument("invalid configuration: " + *err);
    return cfg;
}

int wedge(int x, int y)
{
    if ((x > 0 && y > 0) || (x < 0 && y < 0)) return 0;
    return std::min(std::abs(x), std::abs(y));
}

namespace {

void require_valid(const StretchConfig& cfg)
{
    if (auto err = validation_error(cfg)) throw std::invalid_argument("invalid configuration: " + *err);
}

int stretch_or_zero(const StretchConfig& cfg, int i)
{
    if (i < 1 || i > cfg.extension()) return 0;
    return cfg.stretches[static_cast<std::size_t>(i - 1)];
}

}  // namespace

double hamiltonian(const StretchConfig& cfg, double beta, double delta)
{
    require_valid(cfg);
    const int n = cfg.extension();
    long touches = 0;
    for (int i = 0; i <= n; ++i) touches += wedge(stretch_or_zero(cfg, i), stretch_or_zero(cfg, i + 1));
    int contacts = 0;
    long height = 0;
    for (int s : cfg.stretches) {
        height += s;
        if (height == 0) ++contacts;
    }
    return beta * static_cast<double>(touches) + delta * contacts;
}

std::vector<Bead> beads(const StretchConfig& cfg)
{
    std::vector<Bead> out;
    const int n = cfg.extension();
    int start = 1;
    for (int i = 1; i <= n; ++i) {
        if (wedge(stretch_or_zero(cfg, i), stretch_or_zero(cfg, i + 1)) == 0) {
            out.push_back({start, i});
            start = i + 1;
        }
    }
    return out;
}

Envelopes envelopes(const StretchConfig& cfg)
{
    if (cfg.variant != Variant::SingleBead) throw std::invalid_argument("envelopes: single-bead configuration required");
    require_valid(cfg);
    const int half = cfg.extension() / 2;
    Envelopes env;
    env.upper.reserve(static_cast<std::size_t>(half) + 1);
    env.lower.reserve(static_cast<std::size_t>(half));
    int height = 0;
    for (int k = 1; k <= half; ++k) {
        height += cfg.stretches[static_cast<std::size_t>(2 * k - 2)];
        env.upper.push_back(height);
        height += cfg.stretches[static_cast<std::size_t>(2 * k - 1)];
        env.lower.push_back(height);
    }
    env.upper.push_back(height);
    return env;
}

StretchConfig from_walks(std::span<const int> upper, std::span<const int> lower)
{
    const std::size_t n = lower.size();
    if (n == 0 || upper.size() != n + 1) throw std::invalid_argument("from_walks: need N + 1 upper and N lower values");
    if (upper[n] != 0 || lower[n - 1] != 0) throw std::invalid_argument("from_walks: walks must end at 0");
    std::vector<int> l;
    l.reserve(2 * n);
    int prev_lower = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (lower[k] < 0) throw std::invalid_argument("from_walks: lower walk below 0");
        if (upper[k] <= prev_lower || upper[k] <= lower[k])
            throw std::invalid_argument("from_walks: upper walk does not stay above lower walk");
        l.push_back(upper[k] - prev_lower);
        l.push_back(lower[k] - upper[k]);
        prev_lower = lower[k];
    }
    return make_config(std::move(l), Variant::SingleBead);
}

long signed_area(std::span<const int> walk)
{
    long a = 0;
    for (int v : walk) a += v;
    return a;
}

long geometric_area(const Envelopes& env)
{
    long g = 0;
    int prev_lower = 0;
    for (std::size_t k = 0; k < env.lower.size(); ++k) {
        g += std::labs(env.upper[k] - prev_lower) + std::labs(env.lower[k] - env.upper[k]);
        prev_lower = env.lower[k];
    }
    return g;
}

Observables observables(const StretchConfig& cfg)
{
    require_valid(cfg);
    Observables o;
    o.extension = cfg.extension();
    o.bead_count = static_cast<int>(beads(cfg).size());
    int height = 0;
    for (int s : cfg.stretches) {
        height += s;
        if (height == 0) ++o.contacts;
        o.max_height = std::max(o.max_height, height);
        o.signed_area += height;
    }
    return o;
}

std::string to_json(const StretchConfig& cfg)
{
    nlohmann::json j;
    j["L"] = cfg.total_length;
    j["stretches"] = cfg.stretches;
    j["variant"] = std::string(to_string(cfg.variant));
    return j.dump();
}

StretchConfig config_from_json(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config_from_json: ") + e.what());
    }
    if (!j.is_object() || !j.contains("L") || !j.contains("stretches") || !j.contains("variant"))
        throw std::invalid_argument("config_from_json: expected keys L, stretches, variant");
    StretchConfig cfg;
    try {
        cfg.total_length = j.at("L").get<int>();
        cfg.stretches = j.at("stretches").get<std::vector<int>>();
        cfg.variant = parse_variant(j.at("variant").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config_from_json: ") + e.what());
    }
    if (auto err = validation_error(cfg)) throw std::invalid_argument("config_from_json: " + *err);
    return cfg;
}

}  // namespace ipdsaw
