#pragma once

#include "io.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace ipdsaw::cli {

struct Common {
    std::string out;
    std::string format;  // empty: the command's default
    unsigned threads = 1;
    std::uint64_t seed = 1;
};

struct PhaseOptions {
    std::string beta_grid = "1.3:5:0.1";
    std::string delta_grid;  // set: collapse profile table
};

struct ExactOptions {
    int length = 12;
    double beta = 2.0;
    double delta = 0.5;
    std::string variant = "all";
    int cutoff = -1;  // -1: exact
    bool brute = true;
    std::string table_out;
};

struct AsymptoticsOptions {
    double beta = 2.0;
    double delta = 0.5;
    std::string lengths = "50,100,200,400";
};

struct SampleOptions {
    int length = 100;
    double beta = 2.0;
    double delta = 0.5;
    std::string variant = "single-bead";
    int cutoff = -1;
    int count = 1000;
};

struct VerifyOptions {
    std::string criteria;  // comma list; empty: all
};

struct WettingOptions {
    std::string beta_grid = "2";
    std::string delta_grid = "1";
    std::string lengths = "100,1000,2000";
};

struct TiltOptions {
    double beta = 2.0;
    std::string q_grid = "0.5";
    std::string p_grid = "0";
    int n = 0;  // > 1: also the finite-n tilt
};

// Each returns the process exit code.
int run_phase(const Common& c, const PhaseOptions& o);
int run_exact(const Common& c, const ExactOptions& o);
int run_asymptotics(const Common& c, const AsymptoticsOptions& o);
int run_sample(const Common& c, const SampleOptions& o);
int run_verify(const Common& c, const VerifyOptions& o);
int run_wetting(const Common& c, const WettingOptions& o);
int run_tilt(const Common& c, const TiltOptions& o);

}  // namespace ipdsaw::cli
