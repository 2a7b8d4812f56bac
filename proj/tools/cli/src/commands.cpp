#include "commands.hpp"

#include "ipdsaw/checks.hpp"
#include "ipdsaw/ipdsaw.hpp"
#include "pool.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

namespace ipdsaw::cli {

namespace {

Format pick_format(const Common& c, Format fallback)
{
    if (c.format.empty()) return fallback;
    if (c.format == "csv") return Format::Csv;
    if (c.format == "json-lines") return Format::JsonLines;
    throw UsageError("--format must be csv or json-lines");
}

std::map<std::string, std::string> base_config(const Common& c, Format f)
{
    return {{"out", c.out}, {"format", f == Format::Csv ? "csv" : "json-lines"}, {"threads", std::to_string(c.threads)},
            {"seed", std::to_string(c.seed)}};
}

std::string num(double v) { return format_double(v); }

void require(bool ok, const std::string& message)
{
    if (!ok) throw UsageError(message);
}

std::vector<Variant> variants_from(const std::string& name)
{
    if (name == "all") return {Variant::Free, Variant::ConstrainedEnd, Variant::SingleBead};
    try {
        return {parse_variant(name)};
    } catch (const std::invalid_argument&) {
        throw UsageError("--variant must be free, constrained, single-bead or all");
    }
}

int exact_cutoff(int L, int cutoff) { return cutoff < 0 ? L : cutoff; }

}  // namespace

int run_phase(const Common& c, const PhaseOptions& o)
{
    const Format f = pick_format(c, Format::Csv);
    const auto betas = parse_grid(o.beta_grid);
    for (double b : betas) require(b > beta_critical(), "--beta-grid values must exceed beta_c = " + num(beta_critical()));
    auto config = base_config(c, f);
    config["beta-grid"] = o.beta_grid;
    config["delta-grid"] = o.delta_grid;
    Sink sink(c.out, f);
    sink.header("phase", config);

    if (o.delta_grid.empty()) {
        std::vector<CriticalCurves> rows(betas.size());
        parallel_for(betas.size(), c.threads, [&](std::size_t i) { rows[i] = critical_curves(betas[i]); });
        Table t(sink, f, {"beta", "delta_tilde", "delta_c", "delta_c_root", "delta_circ"});
        for (const auto& r : rows) t.row({r.beta, r.delta_tilde, r.delta_c, r.delta_c_root, r.delta_circ});
        return 0;
    }

    const auto deltas = parse_grid(o.delta_grid);
    struct Point {
        double beta, delta;
        std::optional<CollapseProfile> profile;
    };
    std::vector<Point> points;
    for (double b : betas)
        for (double d : deltas) points.push_back({b, d, std::nullopt});
    parallel_for(points.size(), c.threads, [&](std::size_t i) {
        auto& p = points[i];
        if (p.delta < critical_curves(p.beta).delta_circ) p.profile = collapse_profile(p.beta, p.delta);
    });
    Table t(sink, f, {"beta", "delta", "a_tilde", "Phi", "Psi", "h_wet", "delta_tilde", "delta_c", "delta_circ"});
    for (const auto& p : points) {
        if (!p.profile) continue;  // outside the collapsed phase
        const auto& r = *p.profile;
        Cell psi;
        if (r.psi) psi = *r.psi;
        t.row({r.beta, r.delta, r.a_tilde, r.phi_max, psi, r.h_wet, r.curves.delta_tilde, r.curves.delta_c,
               r.curves.delta_circ});
    }
    return 0;
}

int run_exact(const Common& c, const ExactOptions& o)
{
    const Format f = pick_format(c, Format::Csv);
    require(o.length >= 1 && o.length <= 2000, "--length must be in [1, 2000]");
    require(o.beta >= 0.0, "--beta must be non-negative");
    const auto variants = variants_from(o.variant);
    require(o.table_out.empty() || variants.size() == 1, "--save-table needs a single --variant");
    auto config = base_config(c, f);
    config["length"] = std::to_string(o.length);
    config["beta"] = num(o.beta);
    config["delta"] = num(o.delta);
    config["variant"] = o.variant;
    config["cutoff"] = std::to_string(o.cutoff);
    config["brute"] = o.brute ? "true" : "false";
    Sink sink(c.out, f);
    sink.header("exact", config);

    struct Row {
        Variant v;
        int L;
        int cutoff;
        double log_z;
        double log_trunc;
        std::optional<double> brute;
    };
    std::vector<Row> rows;
    for (Variant v : variants)
        for (int L = 1; L <= o.length; ++L) rows.push_back({v, L, exact_cutoff(L, o.cutoff), 0, 0, std::nullopt});
    parallel_for(rows.size(), c.threads, [&](std::size_t i) {
        auto& r = rows[i];
        const auto dp = dp_Z(r.L, o.beta, o.delta, r.v, r.cutoff);
        r.log_z = dp.log_z;
        r.log_trunc = dp.table.log_truncation_bound();
        if (o.brute && r.L <= 18) r.brute = brute_force_Z(r.L, o.beta, o.delta, r.v);
    });
    Table t(sink, f, {"variant", "L", "beta", "delta", "cutoff", "log_z", "log_truncation_bound", "log_z_brute"});
    for (const auto& r : rows) {
        Cell brute;
        if (r.brute) brute = *r.brute;
        t.row({std::string(to_string(r.v)), static_cast<long>(r.L), o.beta, o.delta, static_cast<long>(r.cutoff),
               r.log_z, r.log_trunc, brute});
    }
    if (!o.table_out.empty()) {
        const auto path = resolve_output_path(o.table_out);
        std::ofstream file(path, std::ios::binary);
        if (!file) throw UsageError("cannot open '" + path + "'");
        dp_Z(o.length, o.beta, o.delta, variants.front(), exact_cutoff(o.length, o.cutoff)).table.write(file);
    }
    return 0;
}

int run_asymptotics(const Common& c, const AsymptoticsOptions& o)
{
    const Format f = pick_format(c, Format::Csv);
    const auto lengths = parse_int_list(o.lengths);
    for (int L : lengths) require(L >= 2 && L <= 4000, "--lengths values must be in [2, 4000]");
    auto config = base_config(c, f);
    config["beta"] = num(o.beta);
    config["delta"] = num(o.delta);
    config["lengths"] = o.lengths;
    Sink sink(c.out, f);
    sink.header("asymptotics", config);
    const double phi_max = collapse_profile(o.beta, o.delta).phi_max;
    std::vector<double> log_z(lengths.size());
    parallel_for(lengths.size(), c.threads, [&](std::size_t i) {
        log_z[i] = dp_Z(lengths[i], o.beta, o.delta, Variant::SingleBead, lengths[i]).log_z;
    });
    Table t(sink, f, {"beta", "delta", "L", "log_z", "scaled", "Phi"});
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        const double L = lengths[i];
        t.row({o.beta, o.delta, static_cast<long>(lengths[i]), log_z[i], (log_z[i] - o.beta * L) / std::sqrt(L),
               phi_max});
    }
    return 0;
}

int run_sample(const Common& c, const SampleOptions& o)
{
    const Format f = pick_format(c, Format::JsonLines);
    require(o.length >= 1 && o.length <= 2000, "--length must be in [1, 2000]");
    require(o.count >= 0, "--count must be non-negative");
    require(o.beta >= 0.0, "--beta must be non-negative");
    const auto variants = variants_from(o.variant);
    require(variants.size() == 1, "sample needs a single --variant");
    auto config = base_config(c, f);
    config["length"] = std::to_string(o.length);
    config["beta"] = num(o.beta);
    config["delta"] = num(o.delta);
    config["variant"] = o.variant;
    config["cutoff"] = std::to_string(o.cutoff);
    config["count"] = std::to_string(o.count);

    const auto dp = dp_Z(o.length, o.beta, o.delta, variants.front(), exact_cutoff(o.length, o.cutoff));
    require(dp.table.log_truncation_bound() < 1e-9, "--cutoff too small for exact sampling");
    Sink sink(c.out, f);
    sink.header("sample", config);

    // Fixed chunks with their own streams, so output does not depend on --threads.
    constexpr int kChunk = 256;
    const int chunks = (o.count + kChunk - 1) / kChunk;
    std::vector<std::vector<StretchConfig>> results(static_cast<std::size_t>(chunks));
    parallel_for(results.size(), c.threads, [&](std::size_t i) {
        Rng rng = Rng::stream(c.seed, i);
        const int n = std::min(kChunk, o.count - static_cast<int>(i) * kChunk);
        results[i] = backward_sample(dp.table, n, rng);
    });
    Table t(sink, f, {"index", "L", "variant", "beta", "delta", "seed", "extension", "contacts", "beads", "max_height",
                      "signed_area", "stretches"});
    long index = 0;
    for (const auto& chunk : results)
        for (const auto& cfg : chunk) {
            const auto obs = observables(cfg);
            std::string stretches;
            for (std::size_t k = 0; k < cfg.stretches.size(); ++k)
                stretches += (k ? " " : "") + std::to_string(cfg.stretches[k]);
            t.row({index++, static_cast<long>(o.length), std::string(to_string(cfg.variant)), o.beta, o.delta,
                   static_cast<long>(c.seed), static_cast<long>(obs.extension), static_cast<long>(obs.contacts),
                   static_cast<long>(obs.bead_count), static_cast<long>(obs.max_height), obs.signed_area,
                   stretches});
        }
    return 0;
}

int run_verify(const Common& c, const VerifyOptions& o)
{
    std::vector<int> ids;
    if (!o.criteria.empty()) ids = parse_int_list(o.criteria);
    for (int id : ids)
        require(id >= 1 && id <= checks::criteria_count(),
                "--criteria values must be in [1, " + std::to_string(checks::criteria_count()) + "]");
    checks::CheckOptions options;
    options.seed = c.seed;
    Sink sink(c.out, Format::Csv);
    bool ok = true;
    checks::run_checks(ids, options, [&](const checks::CheckResult& r) {
        sink.line(checks::format_result(r));
        sink.stream().flush();
        ok = ok && r.pass;
    });
    return ok ? 0 : 1;
}

int run_wetting(const Common& c, const WettingOptions& o)
{
    const Format f = pick_format(c, Format::Csv);
    const auto betas = parse_grid(o.beta_grid);
    const auto deltas = parse_grid(o.delta_grid);
    const auto lengths = parse_int_list(o.lengths);
    for (double b : betas) require(b > 0.0, "--beta-grid values must be positive");
    for (int n : lengths) require(n >= 0 && n <= 200000, "--lengths values must be in [0, 200000]");
    auto config = base_config(c, f);
    config["beta-grid"] = o.beta_grid;
    config["delta-grid"] = o.delta_grid;
    config["lengths"] = o.lengths;
    Sink sink(c.out, f);
    sink.header("wetting", config);

    const int n_max = *std::max_element(lengths.begin(), lengths.end());
    struct Point {
        double beta, delta;
        std::vector<double> log_z;
        double h = 0.0, dt = 0.0;
        std::optional<double> cwet;
    };
    std::vector<Point> points;
    for (double b : betas)
        for (double d : deltas) points.push_back(Point{b, d, {}, 0.0, 0.0, std::nullopt});
    parallel_for(points.size(), c.threads, [&](std::size_t i) {
        auto& p = points[i];
        p.log_z = zwet_sequence(p.beta, p.delta, n_max);
        p.h = wetting_free_energy(p.beta, p.delta);
        p.dt = delta_tilde(p.beta);
        if (p.delta > p.dt) p.cwet = cwet_constant(p.beta, p.delta).value;
    });
    Table t(sink, f, {"beta", "delta", "N", "log_zwet", "h_wet", "delta_tilde", "C_wet"});
    for (const auto& p : points)
        for (int n : lengths) {
            Cell cw;
            if (p.cwet) cw = *p.cwet;
            t.row({p.beta, p.delta, static_cast<long>(n), p.log_z[n], p.h, p.dt, cw});
        }
    return 0;
}

int run_tilt(const Common& c, const TiltOptions& o)
{
    const Format f = pick_format(c, Format::Csv);
    require(o.beta > 0.0, "--beta must be positive");
    require(o.n == 0 || o.n >= 2, "--n must be 0 or at least 2");
    const auto qs = parse_grid(o.q_grid);
    const auto ps = parse_grid(o.p_grid);
    auto config = base_config(c, f);
    config["beta"] = num(o.beta);
    config["q-grid"] = o.q_grid;
    config["p-grid"] = o.p_grid;
    config["n"] = std::to_string(o.n);
    Sink sink(c.out, f);
    sink.header("tilt", config);
    struct Point {
        double q, p;
        TiltVector h;
        double g = 0.0;
        std::optional<TiltVector> hn;
    };
    std::vector<Point> points;
    for (double q : qs)
        for (double p : ps) points.push_back(Point{q, p, {}, 0.0, std::nullopt});
    parallel_for(points.size(), c.threads, [&](std::size_t i) {
        auto& pt = points[i];
        pt.h = tilt_inverse(pt.q, pt.p, o.beta);
        pt.g = rate_g(pt.q, pt.p, o.beta);
        if (o.n >= 2) pt.hn = finite_tilt(o.n, pt.q, pt.p, o.beta);
    });
    Table t(sink, f, {"beta", "q", "p", "h0", "h1", "g", "n", "hn0", "hn1"});
    for (const auto& pt : points) {
        Cell n, a, b;
        if (pt.hn) {
            n = static_cast<long>(o.n);
            a = pt.hn->h0;
            b = pt.hn->h1;
        }
        t.row({o.beta, pt.q, pt.p, pt.h.h0, pt.h.h1, pt.g, n, a, b});
    }
    return 0;
}

}  // namespace ipdsaw::cli
