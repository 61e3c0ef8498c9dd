#pragma once

#include <array>
#include <vector>

#include "kesten/series.hpp"

namespace kesten {

/// Square-root edge expansions of x(t) and P(t) at t = +-1 for the simple
/// random walk (alpha = beta = 1/4):
///   x(t) = C1 + C2 sqrt(1-t) + O(1-t),   x(t) = C3 + C4 sqrt(1+t) + O(1+t),
///   P(t) = Ct1 + Ct2 sqrt(1-t) + O(1-t), P(t) = Ct3 + Ct4 sqrt(1+t) + O(1+t).
/// C1, C3 are exact closed forms; C2, C4 come from the implicit-function
/// quotient of the two partial derivatives; the P-constants from
/// propagating the expansion through P = 1/(t^2 x/16 + 1/x - t/2).
struct EdgeConstants {
    double c1, c2, c3, c4;
    double ct1, ct2, ct3, ct4;
    std::array<double, 3> roots_plus;   // edge cubic roots at t = 1
    std::array<double, 3> roots_minus;  // edge cubic roots at t = -1
    double dfdu_plus, dfdu_minus;       // implicit-function denominators
};

EdgeConstants edge_constants();

/// Validates the choice of edge root: exact series coefficients of x are
/// nonnegative (so x is nondecreasing on [0,1)), and the numerically
/// continued real root approaches C1 + C2 s with O(s^2) error at t = 1-s^2
/// (resp. C3 + C4 s at t = s^2 - 1).
struct RootSelectionReport {
    bool coefficients_nonnegative = false;
    double err_plus_ratio = 0;   // err(s/2)/err(s), expect ~ 1/4
    double err_minus_ratio = 0;
    bool plus_second_order = false;
    bool minus_second_order = false;
    double x_at_0 = 0;
};

RootSelectionReport root_selection_check(int order);

/// Evaluates x(t) at real t in (-1, 1) by following the real cubic root
/// continuously from the series value at small t.
double x_continued(double t);

/// Least-squares check of p_{2n} ~ A n^{-3/2}: moments from the float-mode
/// series to order 2 n_max, log-log fit over n in [n_max/4, n_max].
struct ReturnFitReport {
    double exponent_hat = 0;   // fitted decay exponent of p_{2n}
    double a_hat = 0;          // stabilized p_{2n} n^{3/2}
    double b_hat = 0;          // stabilized p_{2n+1} n^{3/2}
    double stabilization = 0;  // relative spread of p_{2n} n^{3/2}, top half window
    double paper_constant = 0;     // -(Ct2+Ct4)/2 as printed in the source
    double transfer_constant = 0;  // -(Ct2+Ct4)/(4 sqrt(2 pi)), with the
                                   // singularity-analysis normalization
    bool all_positive = false;
};

ReturnFitReport return_probability_fit(int n_max);

/// N(s) = mu((1-s, 1]) near the upper spectral edge: quadrature of the
/// density with the sqrt-smoothing substitution z = 1 - r^2, log-log fit
/// against C s^{3/2}.
struct IntegratedDensityReport {
    double exponent_hat = 0;
    double c_hat = 0;
    double paper_constant = 0;  // -(2/(3 pi)) Ct2
    std::vector<std::pair<double, double>> samples;  // (s, N(s))
};

IntegratedDensityReport integrated_density_edge(const std::vector<double>& s_grid);

}  // namespace kesten
