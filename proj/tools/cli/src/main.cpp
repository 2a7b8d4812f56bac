#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <stdexcept>
#include <thread>

#ifndef IPDSAW_VERSION
#define IPDSAW_VERSION "unknown"
#endif

using namespace ipdsaw::cli;

namespace {

void add_common(CLI::App* app, Common& c, bool with_format = true)
{
    app->add_option("--out", c.out, "Output file (default stdout); relative paths honor IPDSAW_OUTPUT_DIR");
    if (with_format)
        app->add_option("--format", c.format, "csv or json-lines")->check(CLI::IsMember({"csv", "json-lines"}));
    app->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    app->add_option("--seed", c.seed, "Random seed");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerics for the interacting partially directed walk above a hard wall"};
    app.set_version_flag("--version", IPDSAW_VERSION);
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    Common common;
    common.threads = std::max(1u, std::thread::hardware_concurrency());

    PhaseOptions phase;
    auto* cmd_phase = app.add_subcommand("phase", "Critical curves, or collapse profiles over a (beta, delta) grid");
    add_common(cmd_phase, common);
    cmd_phase->add_option("--beta-grid", phase.beta_grid, "a:b:step");
    cmd_phase->add_option("--delta-grid", phase.delta_grid, "a:b:step; emits the profile table");

    ExactOptions exact;
    auto* cmd_exact = app.add_subcommand("exact", "Exact partition functions for lengths 1..L");
    add_common(cmd_exact, common);
    cmd_exact->add_option("--length", exact.length, "Largest length L");
    cmd_exact->add_option("--beta", exact.beta, "Self-touching reward");
    cmd_exact->add_option("--delta", exact.delta, "Wall reward");
    cmd_exact->add_option("--variant", exact.variant, "free, constrained, single-bead or all");
    cmd_exact->add_option("--cutoff", exact.cutoff, "Height cutoff (default: exact)");
    cmd_exact->add_flag("!--no-brute", exact.brute, "Skip the enumeration column");
    cmd_exact->add_option("--save-table", exact.table_out, "Write the length-L transfer table (binary)");

    AsymptoticsOptions asym;
    auto* cmd_asym = app.add_subcommand("asymptotics", "(log Z - beta L)/sqrt(L) for the single-bead model against Phi");
    add_common(cmd_asym, common);
    cmd_asym->add_option("--beta", asym.beta, "Self-touching reward");
    cmd_asym->add_option("--delta", asym.delta, "Wall reward");
    cmd_asym->add_option("--lengths", asym.lengths, "Comma-separated lengths");

    SampleOptions sample;
    auto* cmd_sample = app.add_subcommand("sample", "Exact samples with their observables");
    add_common(cmd_sample, common);
    cmd_sample->add_option("--length", sample.length, "Length L");
    cmd_sample->add_option("--beta", sample.beta, "Self-touching reward");
    cmd_sample->add_option("--delta", sample.delta, "Wall reward");
    cmd_sample->add_option("--variant", sample.variant, "free, constrained or single-bead");
    cmd_sample->add_option("--cutoff", sample.cutoff, "Height cutoff (default: exact)");
    cmd_sample->add_option("--count", sample.count, "Number of samples");

    VerifyOptions verify;
    auto* cmd_verify = app.add_subcommand("verify", "Run the acceptance checks");
    add_common(cmd_verify, common, false);
    cmd_verify->add_option("--criteria", verify.criteria, "Comma-separated criterion numbers (default all)");

    WettingOptions wet;
    auto* cmd_wet = app.add_subcommand("wetting", "Pinned positive walk partition functions");
    add_common(cmd_wet, common);
    cmd_wet->add_option("--beta-grid", wet.beta_grid, "a:b:step");
    cmd_wet->add_option("--delta-grid", wet.delta_grid, "a:b:step");
    cmd_wet->add_option("--lengths", wet.lengths, "Comma-separated lengths");

    TiltOptions tilt;
    auto* cmd_tilt = app.add_subcommand("tilt", "Inverse tilt and rate function over a (q, p) grid");
    add_common(cmd_tilt, common);
    cmd_tilt->add_option("--beta", tilt.beta, "Self-touching reward");
    cmd_tilt->add_option("--q-grid", tilt.q_grid, "a:b:step");
    cmd_tilt->add_option("--p-grid", tilt.p_grid, "a:b:step");
    cmd_tilt->add_option("--n", tilt.n, "Also solve the finite-n tilt");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*cmd_phase) return run_phase(common, phase);
        if (*cmd_exact) return run_exact(common, exact);
        if (*cmd_asym) return run_asymptotics(common, asym);
        if (*cmd_sample) return run_sample(common, sample);
        if (*cmd_verify) return run_verify(common, verify);
        if (*cmd_wet) return run_wetting(common, wet);
        if (*cmd_tilt) return run_tilt(common, tilt);
    } catch (const UsageError& e) {
        std::cerr << "ipdsaw: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "ipdsaw: invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "ipdsaw: invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ipdsaw: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
