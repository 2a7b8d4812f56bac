#pragma once

#include <vector>

namespace ipdsaw {

// First-return law K(t) = P_0(tau = t, X_t = 0), tau = inf{t >= 1 : X_t <= 0}.
struct ReturnKernel {
    double beta = 0.0;
    int t_max = 0;
    int height_cutoff = 0;
    std::vector<double> k;          // k[t - 1] = K(t)
    double survival = 0.0;          // P(tau > t_max) over paths kept below the cutoff
    double truncation_bound = 0.0;  // probability mass discarded above the cutoff

    double at(int t) const { return k.at(static_cast<std::size_t>(t - 1)); }
};

// Height cutoff ceil(12 sqrt(t_max / beta)) + 64.
ReturnKernel return_kernel(double beta, int t_max);

// K(t) t^{3/2} at t = t_max; estimates the tail constant of the kernel.
double kernel_tail_constant(const ReturnKernel& kernel);

// Log of the pinned positive-walk partition function of length N.
double zwet(double beta, double delta, int n);
// Log values for lengths 0..n_max from the renewal recursion.
std::vector<double> zwet_sequence(double beta, double delta, int n_max);
std::vector<double> zwet_sequence(const ReturnKernel& kernel, double delta, int n_max);
// Same quantity from a DP over heights, independent of the kernel.
double zwet_direct(double beta, double delta, int n, int height_cutoff);

double delta_tilde(double beta);
double wetting_free_energy(double beta, double delta);

struct CriticalCurves {
    double beta = 0.0;
    double delta_tilde = 0.0;
    double delta_c = 0.0;       // closed form
    double delta_c_root = 0.0;  // root of log Gamma + h(delta) = 0
    double delta_circ = 0.0;    // root of 2 log Gamma + h(delta) = 0
};

// Throws std::domain_error when beta < beta_c.
CriticalCurves critical_curves(double beta);
double delta_c_closed_form(double beta);

struct WettingConstant {
    double value = 0.0;
    double relative_tail_bound = 0.0;
    int t_max = 0;
};

// C_wet = (e^delta sum_t t K(t) e^{-h t})^{-1}; requires delta > delta_tilde.
WettingConstant cwet_constant(double beta, double delta);
// Fixed truncation, for convergence studies.
WettingConstant cwet_constant(double beta, double delta, int t_max);

}  // namespace ipdsaw

namespace ipdsaw::diagnostics {

// Root h_N of sum_t K(t) e^delta e^{-h t} e^{-c1 t^{7/2} / N} = 1, the
// area-penalized analogue of the wetting free energy (0 <= h - h_N = O(1/N)).
double penalized_wetting_rate(const ReturnKernel& kernel, double delta, double c1, int n);

}  // namespace ipdsaw::diagnostics
