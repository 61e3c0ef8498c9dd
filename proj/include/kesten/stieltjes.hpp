#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "kesten/series.hpp"

namespace kesten {

using Cplx = std::complex<double>;

/// Value of P* or Q* together with which branch rule produced it:
/// "sign" (real z, nonnegative radicand, sign of z resp. z-2beta),
/// "imag" (real z, negative radicand, positive imaginary part) or
/// "upper" (Im z > 0, continuation with P* ~ z at infinity).
struct BranchedValue {
    Cplx value;
    std::string branch;
};

/// P*(z) = z/2 +- 1/2 sqrt(z^2 - 4(alpha+beta)^2),
/// Q*(z) = z/2 + beta +- 1/2 sqrt((z-2beta)^2 - 4 alpha^2).
std::pair<BranchedValue, BranchedValue> eval_pq_star(double alpha, double beta, Cplx z);

/// The three roots of beta^4 v^3 + (P*+Q*) beta^2 v^2 + (P*Q* + beta^2 - alpha^2) v + P* = 0
/// by Cardano plus Newton polish. `selected` is the unique root with
/// imaginary part > tol when present (V(z)); at most one such root exists.
struct CubicRoots {
    std::array<Cplx, 3> roots;
    std::optional<int> selected;
    double max_residual = 0;
};

CubicRoots eval_v(double alpha, double beta, Cplx z, double tol = 1e-9);

/// V(z) for any (alpha, beta) not both zero: the selected cubic root for
/// beta != 0, the closed form P*/(alpha^2 - P*^2) for beta = 0.
Cplx v_function(double alpha, double beta, Cplx z, double tol = 1e-9);

struct DensitySample {
    double z = 0;
    double density = 0;  // Im W / pi with W = V/(beta V + 1)^2
    Cplx v;
    bool flagged = false;  // beta V + 1 nearly zero or route disagreement
    double route_disagreement = 0;  // |density - eps-ladder limit| when checked
};

struct SpectralDensityCurve {
    double alpha = 0, beta = 0;
    std::vector<DensitySample> samples;
};

/// Density of the Kesten measure of the orbit graph of 1/2 on a real grid,
/// with an optional independent verification route: the density at z is
/// recomputed as lim Im W(z + i eps)/pi along the decreasing eps ladder
/// and the extrapolated limit compared against the real-axis value.
SpectralDensityCurve density_curve(double alpha, double beta, const std::vector<double>& grid,
                                   const std::vector<double>& eps_ladder = {});

struct SupportDescription {
    std::vector<std::pair<double, double>> intervals;  // sorted, disjoint
    std::vector<std::pair<double, double>> atoms;      // (location, mass)
    std::vector<double> endpoint_residuals;
    bool exact = true;  // false if some sign change could not be resolved
};

/// Support of the measure: closure of {|z| < 2|alpha+beta|} u {|z-2beta| < 2|alpha|}
/// u {D(z) < 0}, where D is the discriminant of the (real-coefficient)
/// cubic; a negative discriminant means a conjugate pair of roots, hence
/// Im V > 0. Resolved by sign sampling and bisection of the indicator.
SupportDescription support(double alpha, double beta, double tol = 1e-10);

/// The real-cubic discriminant D(z) = 18abcd - 4b^3d + b^2c^2 - 4ac^3 - 27a^2d^2;
/// only meaningful where P*, Q* are real.
double discriminant(double alpha, double beta, double z);

/// Moments integral z^n density(z) dz for n = 0..n_max by per-interval
/// quadrature with the substitution z = midpoint + halfwidth cos(theta),
/// which makes the square-root edge behavior smooth. Atom masses are
/// added in. moments[0] is the total mass.
std::vector<double> density_moments(double alpha, double beta, int n_max,
                                    const SupportDescription& sup, int panels = 16384);

/// -z^-1 P(1/z): partial-sum evaluation of the Cauchy-Stieltjes transform
/// from a truncated return series, valid for |z| > norm_bound with
/// geometric tail (norm_bound/|z|)^(order+1).
Cplx stieltjes_of_graph_series(const RatSeries& p, Cplx z, double norm_bound);

/// Max over vertices of the total absolute out-weight: an upper bound for
/// the operator norm of a symmetric H.
double operator_norm_bound(const RootedWeightedGraph& g);

struct AppendixReport {
    std::pair<double, double> gamma_n_interval;      // [-2, 2]
    std::pair<double, double> gamma_interval;        // [-2, 2]
    double gamma_atom_location = 0;                  // 17/4
    Rational gamma_atom_mass_exact;                  // z0 / F'(1/z0) = 15/16
    double gamma_atom_mass_residue = 0;              // numerical residue check
    double gamma_tilde_endpoint = 0;                 // 13 sqrt(3) / 6
    double gamma_tilde_endpoint_residual = 0;        // |676 t^4 - 48 t^2| at t = 2 sqrt(3)/13
    bool atom_outside_gamma_tilde = false;           // 17/4 > 13 sqrt(3)/6
};

AppendixReport appendix_spectra();

}  // namespace kesten
