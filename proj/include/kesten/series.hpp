#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kesten/graph.hpp"
#include "kesten/rational.hpp"

namespace kesten {

namespace detail {
inline bool series_zero(const Rational& v) { return v == 0; }
inline bool series_zero(double v) { return std::abs(v) < 1e-12; }
inline Rational sqrt_const(const Rational& v) {
    auto r = exact_sqrt(v);
    if (!r) throw std::domain_error("series sqrt: constant term has no rational square root");
    return *r;
}
inline double sqrt_const(double v) {
    if (v < 0) throw std::domain_error("series sqrt: negative constant term");
    return std::sqrt(v);
}
}  // namespace detail

/// Formal power series truncated at t^order, coefficients exact rationals
/// or doubles. All arithmetic is exact modulo t^(order+1).
template <class K>
class TruncatedSeries {
public:
    explicit TruncatedSeries(int order) : c_(static_cast<size_t>(order) + 1, K(0)) {
        if (order < 0) throw std::domain_error("series order must be >= 0");
    }
    static TruncatedSeries constant(const K& v, int order) {
        TruncatedSeries s(order);
        s.c_[0] = v;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    K& operator[](int i) { return c_[static_cast<size_t>(i)]; }
    const K& operator[](int i) const { return c_[static_cast<size_t>(i)]; }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries out = a;
        for (int i = 0; i <= a.order(); ++i) out.c_[i] += b.c_[i];
        return out;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries out = a;
        for (int i = 0; i <= a.order(); ++i) out.c_[i] -= b.c_[i];
        return out;
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries out(a.order());
        for (int i = 0; i <= a.order(); ++i) {
            if (detail::series_zero(a.c_[i])) continue;
            for (int j = 0; i + j <= a.order(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return out;
    }
    friend TruncatedSeries operator*(const K& s, const TruncatedSeries& a) {
        TruncatedSeries out = a;
        for (auto& c : out.c_) c *= s;
        return out;
    }

    /// Multiplies by t^k (shift up, truncating).
    TruncatedSeries shifted(int k) const {
        TruncatedSeries out(order());
        for (int i = 0; i + k <= order(); ++i) out.c_[i + k] = c_[i];
        return out;
    }

    /// 1/this; requires nonzero constant term.
    TruncatedSeries reciprocal() const {
        if (detail::series_zero(c_[0]))
            throw std::domain_error("series reciprocal: zero constant term");
        TruncatedSeries out(order());
        K inv0 = K(1) / c_[0];
        out.c_[0] = inv0;
        for (int n = 1; n <= order(); ++n) {
            K acc(0);
            for (int k = 1; k <= n; ++k) acc += c_[k] * out.c_[n - k];
            out.c_[n] = -inv0 * acc;
        }
        return out;
    }

    /// Square root with the branch fixed by sqrt of the constant term
    /// (for exact coefficients the constant term must be a perfect square;
    /// branch convention: sqrt(1) = 1).
    TruncatedSeries sqrt() const {
        K s0 = detail::sqrt_const(c_[0]);
        if (detail::series_zero(s0))
            throw std::domain_error("series sqrt: zero constant term");
        TruncatedSeries out(order());
        out.c_[0] = s0;
        K half_inv = K(1) / (K(2) * s0);
        for (int n = 1; n <= order(); ++n) {
            K acc = c_[n];
            for (int k = 1; k < n; ++k) acc -= out.c_[k] * out.c_[n - k];
            out.c_[n] = half_inv * acc;
        }
        return out;
    }

    bool is_zero() const {
        for (const auto& v : c_)
            if (!detail::series_zero(v)) return false;
        return true;
    }

    /// Horner evaluation of the truncation polynomial at t.
    K eval(const K& t) const {
        K acc(0);
        for (int i = order(); i >= 0; --i) acc = acc * t + c_[i];
        return acc;
    }

    const std::vector<K>& coefficients() const { return c_; }

private:
    std::vector<K> c_;
};

using RatSeries = TruncatedSeries<Rational>;
using DblSeries = TruncatedSeries<double>;

/// Taylor expansions at 0 of
///   q = -1/2 - beta t - 1/2 sqrt((2 beta t - 1)^2 - 4 alpha^2 t^2),
///   p = -1/2 - 1/2 sqrt(1 - 4 (alpha+beta)^2 t^2),
/// branch sqrt(1) = 1, so q(0) = p(0) = -1. q + 1 is the first-return
/// series of the half-line block Phi at vertex 1, p + 1 that of the
/// full orbit graph collapsed to the (alpha+beta)-weighted line.
template <class K>
std::pair<TruncatedSeries<K>, TruncatedSeries<K>> qp_series(const K& alpha, const K& beta,
                                                            int order) {
    using S = TruncatedSeries<K>;
    S rad_q(order);
    rad_q[0] = K(1);
    if (order >= 1) rad_q[1] = K(-4) * beta;
    if (order >= 2) rad_q[2] = K(4) * (beta * beta - alpha * alpha);
    K half = K(1) / K(2);
    K minus_half = K(-1) / K(2);
    S q = minus_half * S::constant(K(1), order) - beta * S::constant(K(1), order).shifted(1) -
          half * rad_q.sqrt();
    S rad_p(order);
    rad_p[0] = K(1);
    K ab = alpha + beta;
    if (order >= 2) rad_p[2] = K(-4) * ab * ab;
    S p = minus_half * (S::constant(K(1), order) + rad_p.sqrt());
    return {q, p};
}

/// The unique series solution with x(0) = 1 of
///   beta^4 t^4 x^3 + (p+q) beta^2 t^2 x^2 + (pq + (beta^2-alpha^2) t^2) x + p = 0,
/// by Newton iteration in the series ring. The residual vanishes
/// identically to the working order (checked exactly in rational mode).
template <class K>
TruncatedSeries<K> solve_cubic_series(const K& alpha, const K& beta, int order) {
    using S = TruncatedSeries<K>;
    auto [q, p] = qp_series(alpha, beta, order);
    S a3 = S::constant(beta * beta * beta * beta, order).shifted(4);
    S a2 = (beta * beta) * (p + q).shifted(2);
    S a1 = p * q + S::constant(beta * beta - alpha * alpha, order).shifted(2);
    const S& a0 = p;
    S x = S::constant(K(1), order);
    int steps = 2;
    for (int n = 1; n <= order; n *= 2) ++steps;
    for (int i = 0; i < steps; ++i) {
        S fx = ((a3 * x + a2) * x + a1) * x + a0;
        if (fx.is_zero()) break;
        S fpx = (K(3) * a3 * x + K(2) * a2) * x + a1;
        x = x - fx * fpx.reciprocal();
    }
    if constexpr (std::is_same_v<K, Rational>) {
        S res = ((a3 * x + a2) * x + a1) * x + a0;
        if (!res.is_zero()) throw std::runtime_error("cubic Newton did not converge");
    }
    return x;
}

/// First-return and return series of the Schreier graph of the orbit of
/// 1/2: F = 1 + 2 beta t - beta^2 t^2 x - 1/x with x the cubic solution,
/// P = 1/(1-F).
template <class K>
std::pair<TruncatedSeries<K>, TruncatedSeries<K>> upsilon_series(const K& alpha, const K& beta,
                                                                 int order) {
    using S = TruncatedSeries<K>;
    S x = solve_cubic_series(alpha, beta, order);
    S f = S::constant(K(1), order) + (K(2) * beta) * S::constant(K(1), order).shifted(1) -
          (beta * beta) * x.shifted(2) - x.reciprocal();
    S pseries = (S::constant(K(1), order) - f).reciprocal();
    return {f, pseries};
}

/// Exact return-weight moments p^(n) = (H^n delta_root, delta_root) of a
/// ball truncation, by sparse application of H. Exact because a closed
/// path of length n stays within distance ceil(n/2) of the root; the
/// radius precondition enforces that.
struct MomentTable {
    std::string graph_id;
    int vertex = 0;
    std::vector<Rational> values;  // p^(0) .. p^(n_max)
};

MomentTable moments_bruteforce(const BallTruncation& ball, int n_max);
/// Same computation on a complete finite graph (no radius constraint).
MomentTable moments_finite(const RootedWeightedGraph& g, int n_max, int vertex = -1);

/// Closed-form F and P series of the appendix graphs: the unit half line
/// Gamma_N, the half line with two loops at 1 (Gamma), the tree block
/// Gamma' and the decorated 4-regular tree Gamma~.
struct AppendixSeries {
    RatSeries f_gamma_n, p_gamma_n;
    RatSeries f_gamma, p_gamma;
    RatSeries f_gamma_prime, p_gamma_prime;
    RatSeries f_gamma_tilde, p_gamma_tilde;
    AppendixSeries(int order)
        : f_gamma_n(order), p_gamma_n(order), f_gamma(order), p_gamma(order),
          f_gamma_prime(order), p_gamma_prime(order), f_gamma_tilde(order),
          p_gamma_tilde(order) {}
};

AppendixSeries appendix_series(int order);

/// Exact rational evaluation of F_{Gamma,1}(t) = 4t + (1 - sqrt(1-4t^2))/2,
/// defined whenever 1-4t^2 is a rational square. F(4/17) = 1 exactly.
std::optional<Rational> eval_f_gamma(const Rational& t);

}  // namespace kesten
