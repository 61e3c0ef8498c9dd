#pragma once

#include <string>
#include <vector>

#include "kesten/graph.hpp"
#include "kesten/series.hpp"

namespace kesten {

/// Full symmetric eigendecomposition of the operator of a finite
/// symmetric-real graph. vectors[i] is the (orthonormal) eigenvector of
/// eigenvalues[i]; eigenvalues sorted ascending.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> vectors;
    size_t size = 0;
};

EigenDecomposition eig(const RootedWeightedGraph& g);

/// Atomic measure mu_v: mass |(delta_v, xi_i)|^2 per eigenvalue, computed
/// per eigenspace projector (eigenvalues grouped within group_tol) so the
/// result is basis-independent on degenerate spectra. Atoms below the
/// drop threshold are moved to `dropped`.
struct AtomicSpectralMeasure {
    int vertex = 0;
    std::vector<std::pair<double, double>> atoms;  // (lambda, mass)
    std::vector<double> dropped;                   // eigenvalues with negligible mass
};

AtomicSpectralMeasure vertex_measure(const EigenDecomposition& decomp, int vertex,
                                     double group_tol = 1e-8, double drop_tol = 1e-12);

/// Eigenvalue sets of increasing metric balls of Delta or Upsilon and
/// their Hausdorff distance to the analytic support of the infinite
/// operator; the distance is expected to shrink as the radius grows.
struct BallFlowEntry {
    int radius = 0;
    size_t vertices = 0;
    std::vector<double> eigenvalues;
    double hausdorff_to_support = 0;
    double root_max_atom = 0;  // largest single-eigenvalue mass at the root
};

struct BallFlowReport {
    std::vector<BallFlowEntry> entries;
    std::vector<std::pair<double, double>> support_intervals;
};

BallFlowReport ball_spectrum_flow(const Rational& alpha, const Rational& beta,
                                  const std::vector<int>& radii, bool delta_family);

/// Checks sum_i lambda_i^n mass_i = reference p^(n) for n <= n_max within
/// 1e-9; on failure reports the first offending n.
bool moment_crosscheck(const RootedWeightedGraph& g, int vertex, int n_max,
                       const MomentTable& reference, int* first_bad = nullptr);

}  // namespace kesten
