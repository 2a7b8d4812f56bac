#pragma once

#include "ipdsaw/polymer.hpp"
#include "ipdsaw/random.hpp"

#include <functional>
#include <iosfwd>
#include <vector>

namespace ipdsaw {

// Calls visit for every configuration of total length L in the variant's set.
void for_each_config(int L, Variant variant, const std::function<void(const StretchConfig&)>& visit);

// Log partition function by exhaustive enumeration; L <= 24.
double brute_force_Z(int L, double beta, double delta, Variant variant);

// Transfer table over states (consumed length m, previous height, current
// height). Entries are partial weights with the e^{beta L} factor removed.
class DPTable {
public:
    Variant variant() const { return variant_; }
    int length() const { return L_; }
    double beta() const { return beta_; }
    double delta() const { return delta_; }
    int height_cutoff() const { return H_; }
    // log Z of the configurations that stay at or below the cutoff.
    double log_z() const { return log_z_; }
    // Upper bound on log Z_exact - log_z(); zero when the cutoff is not binding.
    double log_truncation_bound() const { return log_trunc_; }
    bool exact() const { return log_trunc_ == 0.0; }

    // log of the reduced partial weight in state (m, y_prev, y); -inf if unreachable.
    double log_weight(int m, int y_prev, int y) const;

    void write(std::ostream& out) const;
    static DPTable read(std::istream& in);

private:
    friend struct DPTableAccess;
    std::size_t index(int m, int y_prev, int y) const;

    Variant variant_ = Variant::Free;
    int L_ = 0;
    double beta_ = 0.0;
    double delta_ = 0.0;
    int H_ = 0;
    double log_z_ = 0.0;
    double log_trunc_ = 0.0;
    std::vector<double> lin_;          // weight / e^{scale_[m]}
    std::vector<double> scale_;        // per layer m
};

struct DPResult {
    double log_z = 0.0;
    DPTable table;
};

// Exact when height_cutoff >= L; otherwise the table reports a truncation bound.
DPResult dp_Z(int L, double beta, double delta, Variant variant, int height_cutoff);

// Independent draws from the polymer measure. Requires a table whose
// truncation bound is below 1e-9 (std::invalid_argument otherwise).
std::vector<StretchConfig> backward_sample(const DPTable& table, int count, Rng& rng);

// log D(N, q): two walks S (N + 1 steps) and I (N steps) from 0 back to 0,
// S strictly above I, I >= 0, A_{N+1}(S) - A_N(I) = q N^2, e^delta per zero of I.
// q must lie on the lattice N / (2 N^2) (std::invalid_argument otherwise);
// an odd lattice index is infeasible and gives -inf.
double d_circ(int N, double q, double beta, double delta);
// Same with the area difference given directly and an optional height cutoff
// (default: the area, which is never binding).
double d_circ_area(int N, int area, double beta, double delta, int height_cutoff = -1);

// log of sum_{N} Gamma^{2N} D(N, (L - 2N) / (2 N^2)), the walk-pair side of
// the single-bead identity Z / (c_beta e^{beta L}).
double single_bead_walk_sum(int L, double beta, double delta);

// log of the walk-pair side of the identity for the constrained model:
// sum_N Gamma^N E[e^{delta * contacts} 1{G_N = L - N} 1{S, I positive bridges}].
// With count_padding_contact the zero of the duplicated terminal height is
// rewarded too, which multiplies the result by e^delta.
double constrained_walk_sum(int L, double beta, double delta, bool count_padding_contact = false);

// Weights of non-negative walks I_0 = 0, I_1..I_k pinned by e^delta at 0 and
// penalized by e^{-gamma I_k / N} at every step k.
class AreaWettingDP {
public:
    AreaWettingDP(int N, double gamma, double delta, double beta, int height_cutoff);

    int steps() const { return N_; }
    int height_cutoff() const { return H_; }
    double gamma() const { return gamma_; }
    double delta() const { return delta_; }

    // log of the weight of k-step paths ending at height y.
    double log_weight(int k, int y) const;
    // log of the weight of all k-step paths.
    double log_column_total(int k) const;
    // log of the weight of N-step paths ending at 0.
    double log_value() const { return log_weight(N_, 0); }
    // log of the weight pushed above the cutoff, summed over steps.
    double log_escaped_mass() const { return log_escaped_; }

private:
    int N_;
    int H_;
    double gamma_;
    double delta_;
    double log_escaped_ = 0.0;
    std::vector<double> lin_;
    std::vector<double> scale_;
};

// Default height cutoff ceil(10 sqrt(N)) + 50.
int default_area_cutoff(int N);

// log E[e^{delta * contacts} 1{I in B_N^{0,+}} e^{-g_q A_N(I) / N}] with g_q = d/dq g(q, 0).
double e_circ(int N, double q, double beta, double delta);
// Same with delta = 0 and an explicit area coefficient gamma.
double e_n_gamma(int N, double gamma, double beta);
// log P_x(X stays >= 0 for n steps, X_n = 0).
double log_positive_bridge(int n, int x, double beta);

}  // namespace ipdsaw
