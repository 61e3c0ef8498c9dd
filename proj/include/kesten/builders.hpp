#pragma once

#include "kesten/dyadic.hpp"
#include "kesten/graph.hpp"

namespace kesten {

/// Ball of the Schreier graph of Thompson's F acting on the orbit of the
/// dyadic point x, with generator weights alpha (a, a^-1) and beta (b, b^-1).
/// Vertex identity is the exact dyadic value; fixed points produce loops.
BallTruncation schreier_ball(const Rational& alpha, const Rational& beta,
                             const DyadicRational& x, int radius);

/// Half-line block Phi on vertices 1..length: consecutive alpha edges, a
/// beta loop at every i > 1. with_root_loop adds the loop at 1 (Phi-tilde).
RootedWeightedGraph phi_ray(const Rational& alpha, const Rational& beta, int length,
                            bool with_root_loop = false);

/// Half-line block Psi on vertices -1..-length: consecutive pairs joined by
/// one alpha edge and one beta edge.
RootedWeightedGraph psi_ray(const Rational& alpha, const Rational& beta, int length);

/// Metric ball of the self-similar graph Delta (root v) built from its
/// defining substitution, rays truncated at the ball radius.
BallTruncation delta_ball(const Rational& alpha, const Rational& beta, int depth);

/// Metric ball of Upsilon, the Schreier graph of the orbit of 1/2, built
/// from its star-decomposition into Phi-tilde, Psi and Delta.
BallTruncation upsilon_ball(const Rational& alpha, const Rational& beta, int depth);

enum class AppendixKind { gamma_n, gamma_loops, gamma_tilde };

/// Unit-weight counterexample graphs: the half line, the half line with two
/// loops at vertex 1, and the 4-regular tree with a half line attached at
/// every tree vertex.
BallTruncation appendix_graph(AppendixKind kind, int radius);

enum class FiniteExample { path5, hanoi2 };

/// path5: the 4-edge unit path rooted at its middle vertex.
/// hanoi2: the level-2 Schreier graph of the Hanoi Towers group with
/// uniform random-walk weights 1/3.
RootedWeightedGraph finite_example(FiniteExample kind);

}  // namespace kesten
