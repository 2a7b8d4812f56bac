#include "ipdsaw/exactz.hpp"

#include "ipdsaw/numeric.hpp"
#include "laplace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace ipdsaw {

namespace {

constexpr char kMagic[8] = {'I', 'P', 'D', 'S', 'A', 'W', 'T', '1'};

bool returns_to_wall(Variant v) { return v != Variant::Free; }

// Highest height that any configuration can reach.
int max_reachable_height(int L, Variant v) { return returns_to_wall(v) ? L / 2 : L - 1; }

}  // namespace

struct DPTableAccess {
    static DPResult build(int L, double beta, double delta, Variant variant, int cutoff);
    static std::vector<StretchConfig> sample(const DPTable& t, int count, Rng& rng);
    static double truncation_log_bound(const DPTable& t, const std::vector<char>& touched, double log_reduced);
};

std::size_t DPTable::index(int m, int y_prev, int y) const
{
    const auto w = static_cast<std::size_t>(H_) + 1;
    return (static_cast<std::size_t>(m) * w + static_cast<std::size_t>(y_prev)) * w + static_cast<std::size_t>(y);
}

double DPTable::log_weight(int m, int y_prev, int y) const
{
    if (m < 0 || m > L_ || y_prev < 0 || y < 0 || y_prev > H_ || y > H_) return kNegInf;
    const double v = lin_[index(m, y_prev, y)];
    return v > 0.0 ? std::log(v) + scale_[static_cast<std::size_t>(m)] : kNegInf;
}

DPResult DPTableAccess::build(int L, double beta, double delta, Variant variant, int cutoff)
{
    if (L < 1) throw std::invalid_argument("dp_Z: L must be >= 1");
    if (cutoff < 1) throw std::invalid_argument("dp_Z: height cutoff must be >= 1");
    if (!(beta >= 0.0)) throw std::invalid_argument("dp_Z: beta must be non-negative");

    DPTable t;
    t.variant_ = variant;
    t.L_ = L;
    t.beta_ = beta;
    t.delta_ = delta;
    t.H_ = std::min(cutoff, L);
    const int H = t.H_;
    const auto w = static_cast<std::size_t>(H) + 1;
    const bool ret = returns_to_wall(variant);
    const bool bead = variant == Variant::SingleBead;
    const double x = std::exp(-0.5 * beta);
    const double step_w = std::exp(-beta);
    const double pin = std::exp(delta);

    auto limit = [&](int m) {
        int y = std::min(H, m);
        if (ret) y = std::min(y, L - m);
        return y;
    };

    t.lin_.assign(static_cast<std::size_t>(L + 1) * w * w, 0.0);
    t.scale_.assign(static_cast<std::size_t>(L) + 1, 0.0);
    std::vector<char> touched(static_cast<std::size_t>(L) + 1, 0);
    t.lin_[t.index(0, 0, 0)] = 1.0;
    touched[0] = 1;

    std::vector<double> col(w), col_up(w), col_down(w), sm(w), sm_up(w), sm_down(w), left(w), right(w);
    std::vector<double> factor(static_cast<std::size_t>(L) + 1, 0.0);

    for (int m = 0; m < L; ++m) {
        if (!touched[static_cast<std::size_t>(m)]) continue;
        double* layer = &t.lin_[t.index(m, 0, 0)];
        const double peak = *std::max_element(layer, layer + w * w);
        if (peak <= 0.0) continue;
        for (std::size_t i = 0; i < w * w; ++i) layer[i] /= peak;
        const double s = t.scale_[static_cast<std::size_t>(m)] + std::log(peak);
        t.scale_[static_cast<std::size_t>(m)] = s;

        // Align the scales of every layer this one can reach.
        for (int m2 = m + 1; m2 <= std::min(L, m + 1 + H); ++m2) {
            auto& ts = t.scale_[static_cast<std::size_t>(m2)];
            if (!touched[static_cast<std::size_t>(m2)]) {
                touched[static_cast<std::size_t>(m2)] = 1;
                ts = s;
            } else if (s - ts > 600.0) {
                double* target = &t.lin_[t.index(m2, 0, 0)];
                const double f = std::exp(ts - s);
                for (std::size_t i = 0; i < w * w; ++i) target[i] *= f;
                ts = s;
            }
            factor[static_cast<std::size_t>(m2)] = std::exp(s - ts) * step_w;
        }

        const int ym = limit(m);
        for (int y = 0; y <= ym; ++y) {
            bool any = false;
            for (std::size_t yp = 0; yp < w; ++yp) {
                col[yp] = layer[yp * w + static_cast<std::size_t>(y)];
                any = any || col[yp] > 0.0;
            }
            if (!any) continue;
            const bool split = bead && m > 0;
            if (split) {
                // A last stretch going up must be followed by one going down, and conversely.
                for (std::size_t yp = 0; yp < w; ++yp) {
                    col_up[yp] = static_cast<int>(yp) < y ? col[yp] : 0.0;
                    col_down[yp] = static_cast<int>(yp) > y ? col[yp] : 0.0;
                }
                detail::geometric_smooth(x, col_up, sm_up, left, right);
                detail::geometric_smooth(x, col_down, sm_down, left, right);
            } else {
                detail::geometric_smooth(x, col, sm, left, right);
            }
            for (int y2 = 0; y2 <= H; ++y2) {
                const int m2 = m + 1 + std::abs(y2 - y);
                if (m2 > L || y2 > limit(m2)) continue;
                double v;
                if (!bead) {
                    v = sm[static_cast<std::size_t>(y2)];
                } else if (m == 0) {
                    if (y2 <= y) continue;
                    v = sm[static_cast<std::size_t>(y2)];
                } else if (y2 < y) {
                    v = sm_up[static_cast<std::size_t>(y2)];
                } else if (y2 > y) {
                    v = sm_down[static_cast<std::size_t>(y2)];
                } else {
                    continue;
                }
                if (v <= 0.0) continue;
                if (y2 == 0) v *= pin;
                t.lin_[t.index(m2, y, y2)] += v * factor[static_cast<std::size_t>(m2)];
            }
        }
    }

    // Closing boundary term e^{-(beta/2)|l_N|}.
    KahanSum total;
    if (touched[static_cast<std::size_t>(L)]) {
        for (int yp = 0; yp <= H; ++yp)
            for (int y = 0; y <= H; ++y) {
                if (ret && y != 0) continue;
                const double v = t.lin_[t.index(L, yp, y)];
                if (v > 0.0) total.add(v * std::pow(x, std::abs(y - yp)));
            }
    }
    const double log_reduced =
        total.value() > 0.0 ? std::log(total.value()) + t.scale_[static_cast<std::size_t>(L)] : kNegInf;
    t.log_z_ = log_reduced + beta * L;
    t.log_trunc_ = 0.0;
    if (H < max_reachable_height(L, variant) && log_reduced > kNegInf)
        t.log_trunc_ = truncation_log_bound(t, touched, log_reduced);

    DPResult out;
    out.log_z = t.log_z_;
    out.table = std::move(t);
    return out;
}

// Paths that exceed the cutoff are split at their first stretch ending above
// it: the prefix weight is in the table, and the rest is bounded by U(r, s),
// the weight of all stretch sequences of remaining length r after a stretch s,
// with the wall and the end constraint dropped and every pin rewarded e^{max(delta, 0)}.
double DPTableAccess::truncation_log_bound(const DPTable& t, const std::vector<char>& touched, double log_reduced)
{
    const int L = t.L_;
    const int H = t.H_;
    const bool bead = t.variant_ == Variant::SingleBead;
    const double beta = t.beta_;
    const double log_x = -0.5 * beta;
    const double x = std::exp(log_x);
    const double log_step = -beta + std::max(t.delta_, 0.0);
    const auto span = static_cast<std::size_t>(2 * L + 1);
    auto at = [&](int s) { return static_cast<std::size_t>(s + L); };

    std::vector<double> log_u(static_cast<std::size_t>(L + 1) * span, kNegInf);
    auto U = [&](int r, int s) -> double& { return log_u[static_cast<std::size_t>(r) * span + at(s)]; };
    for (int s = -L; s <= L; ++s) U(0, s) = log_x * std::abs(s);

    std::vector<double> logv(span), pos(span), neg(span), all(span), out(span), left(span), right(span);
    for (int r = 1; r <= L; ++r) {
        double vmax = kNegInf;
        for (int tt = -L; tt <= L; ++tt) {
            const int sp = -tt;
            double lv = kNegInf;
            if (1 + std::abs(sp) <= r && !(bead && sp == 0)) lv = U(r - 1 - std::abs(sp), sp) + log_step;
            logv[at(tt)] = lv;
            vmax = std::max(vmax, lv);
        }
        if (vmax == kNegInf) continue;
        for (int tt = -L; tt <= L; ++tt) {
            const double v = logv[at(tt)] == kNegInf ? 0.0 : std::exp(logv[at(tt)] - vmax);
            all[at(tt)] = v;
            pos[at(tt)] = tt > 0 ? v : 0.0;
            neg[at(tt)] = tt < 0 ? v : 0.0;
        }
        if (bead) {
            // After a stretch s > 0 the next one is negative, i.e. t = -s' > 0.
            detail::geometric_smooth(x, pos, out, left, right);
            for (int s = 1; s <= L; ++s) U(r, s) = out[at(s)] > 0.0 ? std::log(out[at(s)]) + vmax : kNegInf;
            detail::geometric_smooth(x, neg, out, left, right);
            for (int s = -L; s <= -1; ++s) U(r, s) = out[at(s)] > 0.0 ? std::log(out[at(s)]) + vmax : kNegInf;
        } else {
            detail::geometric_smooth(x, all, out, left, right);
            for (int s = -L; s <= L; ++s) U(r, s) = out[at(s)] > 0.0 ? std::log(out[at(s)]) + vmax : kNegInf;
        }
    }

    // T(R, D) = log sum_{d = D..R} x^d U(R - d, d)
    const auto tw = static_cast<std::size_t>(L + 2);
    std::vector<double> log_t(static_cast<std::size_t>(L) * tw, kNegInf);
    for (int R = 0; R < L; ++R) {
        double acc = kNegInf;
        for (int d = R; d >= 1; --d) {
            acc = log_add(acc, log_x * d + U(R - d, d));
            log_t[static_cast<std::size_t>(R) * tw + static_cast<std::size_t>(d)] = acc;
        }
    }

    LogSumExp bound;
    for (int m = 0; m < L; ++m) {
        if (!touched[static_cast<std::size_t>(m)]) continue;
        const int R = L - m - 1;
        for (int y = 0; y <= H; ++y) {
            const int D = H + 1 - y;
            if (D > R) continue;
            const double lt = log_t[static_cast<std::size_t>(R) * tw + static_cast<std::size_t>(D)];
            if (lt == kNegInf) continue;
            for (int yp = 0; yp <= H; ++yp) {
                if (bead && m > 0 && !(y < yp)) continue;
                const double lw = t.log_weight(m, yp, y);
                if (lw == kNegInf) continue;
                bound.add(lw - beta + log_x * (y - yp) + lt);
            }
        }
    }
    const double lb = bound.value();
    if (lb == kNegInf) return 0.0;
    return std::log1p(std::exp(lb - log_reduced));
}

DPResult dp_Z(int L, double beta, double delta, Variant variant, int height_cutoff)
{
    return DPTableAccess::build(L, beta, delta, variant, height_cutoff);
}

std::vector<StretchConfig> DPTableAccess::sample(const DPTable& t, int count, Rng& rng)
{
    if (!(t.log_trunc_ < 1e-9)) throw std::invalid_argument("backward_sample: table truncation bound too large");
    if (t.log_z_ == kNegInf) throw std::invalid_argument("backward_sample: empty configuration set");
    const int L = t.L_;
    const int H = t.H_;
    const bool ret = returns_to_wall(t.variant_);
    const bool bead = t.variant_ == Variant::SingleBead;
    const double x = std::exp(-0.5 * t.beta_);

    std::vector<std::pair<int, int>> ends;
    std::vector<double> cum;
    double acc = 0.0;
    for (int yp = 0; yp <= H; ++yp)
        for (int y = 0; y <= H; ++y) {
            if (ret && y != 0) continue;
            const double v = t.lin_[t.index(L, yp, y)];
            if (v <= 0.0) continue;
            acc += v * std::pow(x, std::abs(y - yp));
            ends.emplace_back(yp, y);
            cum.push_back(acc);
        }

    std::vector<double> xpow(static_cast<std::size_t>(2 * H) + 1);
    for (std::size_t i = 0; i < xpow.size(); ++i) xpow[i] = std::pow(x, static_cast<double>(i));
    std::vector<double> pred(static_cast<std::size_t>(H) + 1);

    std::vector<StretchConfig> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int n = 0; n < count; ++n) {
        const double u = rng.uniform() * acc;
        auto it = std::upper_bound(cum.begin(), cum.end(), u);
        if (it == cum.end()) --it;
        auto [yp, y] = ends[static_cast<std::size_t>(it - cum.begin())];
        std::vector<int> rev;
        int m = L;
        while (true) {
            const int s = y - yp;
            rev.push_back(s);
            const int mp = m - 1 - std::abs(s);
            if (mp == 0) break;
            double tot = 0.0;
            for (int ypp = 0; ypp <= H; ++ypp) {
                double v = t.lin_[t.index(mp, ypp, yp)];
                if (bead && !((yp - ypp) * s < 0)) v = 0.0;
                v *= xpow[static_cast<std::size_t>(std::abs(y - ypp))];
                pred[static_cast<std::size_t>(ypp)] = v;
                tot += v;
            }
            if (!(tot > 0.0)) throw std::logic_error("backward_sample: dead end in table");
            double r = rng.uniform() * tot;
            int pick = 0;
            for (; pick < H; ++pick) {
                r -= pred[static_cast<std::size_t>(pick)];
                if (r < 0.0) break;
            }
            while (pred[static_cast<std::size_t>(pick)] <= 0.0) --pick;
            y = yp;
            yp = pick;
            m = mp;
        }
        StretchConfig cfg;
        cfg.stretches.assign(rev.rbegin(), rev.rend());
        cfg.total_length = L;
        cfg.variant = t.variant_;
        out.push_back(std::move(cfg));
    }
    return out;
}

std::vector<StretchConfig> backward_sample(const DPTable& table, int count, Rng& rng)
{
    return DPTableAccess::sample(table, count, rng);
}

namespace {

template <class T>
void put(std::ostream& out, const T& v)
{
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in)
{
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw std::runtime_error("DPTable::read: truncated stream");
    return v;
}

}  // namespace

void DPTable::write(std::ostream& out) const
{
    out.write(kMagic, sizeof(kMagic));
    put(out, static_cast<std::int32_t>(variant_));
    put(out, static_cast<std::int32_t>(L_));
    put(out, beta_);
    put(out, delta_);
    put(out, static_cast<std::int32_t>(H_));
    put(out, log_z_);
    put(out, log_trunc_);
    put(out, static_cast<std::uint64_t>(scale_.size()));
    out.write(reinterpret_cast<const char*>(scale_.data()), static_cast<std::streamsize>(scale_.size() * sizeof(double)));
    put(out, static_cast<std::uint64_t>(lin_.size()));
    out.write(reinterpret_cast<const char*>(lin_.data()), static_cast<std::streamsize>(lin_.size() * sizeof(double)));
    if (!out) throw std::runtime_error("DPTable::write: stream error");
}

DPTable DPTable::read(std::istream& in)
{
    char magic[sizeof(kMagic)];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw std::runtime_error("DPTable::read: bad header");
    DPTable t;
    const auto v = get<std::int32_t>(in);
    if (v < 0 || v > 2) throw std::runtime_error("DPTable::read: bad variant");
    t.variant_ = static_cast<Variant>(v);
    t.L_ = get<std::int32_t>(in);
    t.beta_ = get<double>(in);
    t.delta_ = get<double>(in);
    t.H_ = get<std::int32_t>(in);
    t.log_z_ = get<double>(in);
    t.log_trunc_ = get<double>(in);
    if (t.L_ < 1 || t.H_ < 1 || t.H_ > t.L_) throw std::runtime_error("DPTable::read: bad dimensions");
    const auto ns = get<std::uint64_t>(in);
    if (ns != static_cast<std::uint64_t>(t.L_) + 1) throw std::runtime_error("DPTable::read: bad layer count");
    t.scale_.resize(ns);
    in.read(reinterpret_cast<char*>(t.scale_.data()), static_cast<std::streamsize>(ns * sizeof(double)));
    const auto nl = get<std::uint64_t>(in);
    const auto w = static_cast<std::uint64_t>(t.H_) + 1;
    if (nl != ns * w * w) throw std::runtime_error("DPTable::read: bad table size");
    t.lin_.resize(nl);
    in.read(reinterpret_cast<char*>(t.lin_.data()), static_cast<std::streamsize>(nl * sizeof(double)));
    if (!in) throw std::runtime_error("DPTable::read: truncated stream");
    return t;
}

}  // namespace ipdsaw
