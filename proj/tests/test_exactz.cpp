#include "ipdsaw/exactz.hpp"
#include "ipdsaw/numeric.hpp"
#include "ipdsaw/steps.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace ipdsaw;

namespace {

constexpr Variant kAll[] = {Variant::Free, Variant::ConstrainedEnd, Variant::SingleBead};

// Number of free configurations of length L, by recursion on (remaining length, height).
long count_free(int remaining, int height)
{
    if (remaining == 0) return 1;
    long n = 0;
    // next stretch l uses 1 + |l| units and keeps height + l >= 0
    for (int l = std::max(-height, 1 - remaining); l <= remaining - 1; ++l)
        n += count_free(remaining - 1 - std::abs(l), height + l);
    return n;
}

}  // namespace

TEST(BruteForce, HandCases)
{
    for (double delta : {0.0, 0.7, -1.0})
        EXPECT_NEAR(brute_force_Z(2, 1.3, delta, Variant::Free), std::log1p(std::exp(2.0 * delta)), 1e-14);
    EXPECT_NEAR(brute_force_Z(4, 0.0, 0.0, Variant::Free), std::log(9.0), 1e-14);
    // (2, -2) is the only single bead of length 6; (3, -3) and (1, -1, 1, -1) at length 8.
    EXPECT_NEAR(brute_force_Z(6, 1.5, 0.4, Variant::SingleBead), 2 * 1.5 + 0.4, 1e-14);
    const double b = 0.8, d = 0.3;
    EXPECT_NEAR(brute_force_Z(8, b, d, Variant::SingleBead), std::log(std::exp(3 * b + d) + std::exp(3 * b + 2 * d)), 1e-13);
    EXPECT_EQ(brute_force_Z(7, b, d, Variant::SingleBead), -std::numeric_limits<double>::infinity());
}

TEST(BruteForce, CountsMatchRecursion)
{
    for (int L = 1; L <= 14; ++L) {
        long n = 0;
        for_each_config(L, Variant::Free, [&](const StretchConfig&) { ++n; });
        EXPECT_EQ(n, count_free(L, 0)) << L;
        EXPECT_NEAR(brute_force_Z(L, 0.0, 0.0, Variant::Free), std::log(static_cast<double>(n)), 1e-12);
    }
}

TEST(BruteForce, VisitsDistinctValidConfigs)
{
    for (Variant v : kAll) {
        std::set<std::vector<int>> seen;
        for_each_config(12, v, [&](const StretchConfig& c) {
            EXPECT_TRUE(is_valid(c));
            EXPECT_EQ(c.total_length, 12);
            EXPECT_EQ(c.variant, v);
            EXPECT_TRUE(seen.insert(c.stretches).second);
        });
        EXPECT_FALSE(seen.empty());
    }
}

TEST(BruteForce, NestedConfigurationSets)
{
    for (int L = 2; L <= 14; L += 2) {
        const double f = brute_force_Z(L, 1.0, 0.5, Variant::Free);
        const double c = brute_force_Z(L, 1.0, 0.5, Variant::ConstrainedEnd);
        const double s = brute_force_Z(L, 1.0, 0.5, Variant::SingleBead);
        EXPECT_LT(c, f);
        EXPECT_LT(s, c);
    }
}

TEST(BruteForce, RejectsLongChains) { EXPECT_THROW(brute_force_Z(25, 1.0, 0.0, Variant::Free), std::invalid_argument); }

TEST(DpZ, MatchesBruteForce)
{
    for (Variant v : kAll)
        for (double beta : {0.0, 0.9, 2.5})
            for (double delta : {-0.5, 1.0})
                for (int L = 1; L <= 16; ++L) {
                    const auto r = dp_Z(L, beta, delta, v, L);
                    const double bf = brute_force_Z(L, beta, delta, v);
                    if (bf == -std::numeric_limits<double>::infinity()) {
                        EXPECT_EQ(r.log_z, bf);
                        continue;
                    }
                    EXPECT_NEAR(r.log_z, bf, 1e-10 * std::max(1.0, std::abs(bf))) << to_string(v) << " " << L;
                    EXPECT_TRUE(r.table.exact());
                    EXPECT_EQ(r.log_z, r.table.log_z());
                }
}

TEST(DpZ, CutoffTruncationWithinBound)
{
    const int L = 60;
    for (Variant v : kAll) {
        const auto full = dp_Z(L, 2.0, 0.5, v, L);
        const auto half = dp_Z(L, 2.0, 0.5, v, L / 2);
        EXPECT_LE(half.log_z, full.log_z + 1e-12);
        EXPECT_LE(full.log_z - half.log_z, half.table.log_truncation_bound() + 1e-12) << to_string(v);
        // Paths that must return to the wall never rise above L / 2.
        if (v == Variant::Free) EXPECT_GT(half.table.log_truncation_bound(), 0.0);
        else EXPECT_TRUE(half.table.exact());
    }
}

TEST(DpZ, RejectsBadArguments)
{
    EXPECT_THROW(dp_Z(0, 1.0, 0.0, Variant::Free, 5), std::invalid_argument);
    EXPECT_THROW(dp_Z(5, 1.0, 0.0, Variant::Free, 0), std::invalid_argument);
    EXPECT_THROW(dp_Z(5, -1.0, 0.0, Variant::Free, 5), std::invalid_argument);
}

TEST(DPTable, WriteReadRoundTrip)
{
    const auto r = dp_Z(20, 1.7, 0.3, Variant::ConstrainedEnd, 20);
    std::stringstream buf;
    r.table.write(buf);
    const auto t = DPTable::read(buf);
    EXPECT_EQ(t.variant(), Variant::ConstrainedEnd);
    EXPECT_EQ(t.length(), 20);
    EXPECT_EQ(t.beta(), 1.7);
    EXPECT_EQ(t.delta(), 0.3);
    EXPECT_EQ(t.height_cutoff(), 20);
    EXPECT_EQ(t.log_z(), r.table.log_z());
    for (int m = 0; m <= 20; m += 3)
        for (int yp = 0; yp <= 5; ++yp)
            for (int y = 0; y <= 5; ++y) {
                const double a = r.table.log_weight(m, yp, y), b = t.log_weight(m, yp, y);
                if (std::isinf(a)) EXPECT_EQ(a, b);
                else EXPECT_DOUBLE_EQ(a, b);
            }
}

TEST(DPTable, RejectsCorruptInput)
{
    const auto r = dp_Z(10, 1.0, 0.0, Variant::Free, 10);
    std::stringstream buf;
    r.table.write(buf);
    const std::string bytes = buf.str();

    std::istringstream truncated(bytes.substr(0, bytes.size() / 2));
    EXPECT_THROW(DPTable::read(truncated), std::runtime_error);

    std::string bad_magic = bytes;
    bad_magic[0] ^= 0x5a;
    std::istringstream in1(bad_magic);
    EXPECT_THROW(DPTable::read(in1), std::runtime_error);

    std::istringstream empty;
    EXPECT_THROW(DPTable::read(empty), std::runtime_error);
}

TEST(BackwardSample, DeterministicForSeed)
{
    const auto r = dp_Z(30, 2.0, 0.5, Variant::Free, 30);
    Rng a(42), b(42), c(43);
    const auto s1 = backward_sample(r.table, 200, a);
    const auto s2 = backward_sample(r.table, 200, b);
    const auto s3 = backward_sample(r.table, 200, c);
    EXPECT_EQ(s1, s2);
    EXPECT_NE(s1, s3);
    for (const auto& s : s1) {
        EXPECT_TRUE(is_valid(s));
        EXPECT_EQ(s.total_length, 30);
    }
}

TEST(BackwardSample, MatchesExactLawAtSmallL)
{
    const int L = 10, count = 200000;
    for (Variant v : kAll) {
        const auto r = dp_Z(L, 1.5, 0.8, v, L);
        Rng rng(7);
        std::map<std::vector<int>, long> hits;
        for (const auto& c : backward_sample(r.table, count, rng)) ++hits[c.stretches];
        const double lz = brute_force_Z(L, 1.5, 0.8, v);
        double tv = 0.0;
        long matched = 0;
        for_each_config(L, v, [&](const StretchConfig& c) {
            const long k = hits.contains(c.stretches) ? hits[c.stretches] : 0;
            matched += k;
            tv += std::abs(std::exp(hamiltonian(c, 1.5, 0.8) - lz) - static_cast<double>(k) / count);
        });
        EXPECT_EQ(matched, count);
        EXPECT_LT(0.5 * tv, 0.02) << to_string(v);
    }
}

TEST(BackwardSample, RejectsTruncatedTable)
{
    const auto r = dp_Z(60, 0.5, 0.0, Variant::Free, 5);
    ASSERT_FALSE(r.table.exact());
    Rng rng(1);
    EXPECT_THROW(backward_sample(r.table, 1, rng), std::invalid_argument);
}
