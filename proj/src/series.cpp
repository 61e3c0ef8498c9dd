#include "kesten/series.hpp"

#include <stdexcept>

namespace kesten {

namespace {

MomentTable moments_impl(const RootedWeightedGraph& g, int n_max, int vertex) {
    for (const auto& e : g.edges)
        if (!e.weight.is_real())
            throw std::domain_error("moments: edge weights must be real");
    MomentTable table;
    table.vertex = vertex;
    table.values.reserve(static_cast<size_t>(n_max) + 1);
    std::vector<Rational> v(g.size(), Rational(0)), next(g.size());
    v[vertex] = 1;
    table.values.push_back(Rational(1));
    for (int n = 1; n <= n_max; ++n) {
        std::fill(next.begin(), next.end(), Rational(0));
        for (const auto& e : g.edges) next[e.dst] += e.weight.re * v[e.src];
        v.swap(next);
        table.values.push_back(v[vertex]);
    }
    return table;
}

}  // namespace

MomentTable moments_bruteforce(const BallTruncation& ball, int n_max) {
    if (n_max < 0) throw std::domain_error("moments: n_max must be >= 0");
    if (ball.radius < (n_max + 1) / 2)
        throw std::domain_error("moments: ball radius must be at least ceil(n_max/2)");
    return moments_impl(ball.graph, n_max, ball.graph.root);
}

MomentTable moments_finite(const RootedWeightedGraph& g, int n_max, int vertex) {
    if (n_max < 0) throw std::domain_error("moments: n_max must be >= 0");
    if (vertex < 0) vertex = g.root;
    if (vertex >= static_cast<int>(g.size())) throw std::domain_error("moments: bad vertex");
    return moments_impl(g, n_max, vertex);
}

AppendixSeries appendix_series(int order) {
    AppendixSeries out(order);
    auto one = RatSeries::constant(Rational(1), order);
    // sqrt(1-4t^2)
    RatSeries rad(order);
    rad[0] = 1;
    if (order >= 2) rad[2] = -4;
    RatSeries root = rad.sqrt();
    Rational half(1, 2);
    out.f_gamma_n = half * (one - root);
    out.p_gamma_n = (one - out.f_gamma_n).reciprocal();
    out.f_gamma = out.f_gamma_n;
    if (order >= 1) out.f_gamma[1] += 4;  // two loops at vertex 1, diagonal 4
    out.p_gamma = (one - out.f_gamma).reciprocal();
    // Gamma': 3 g^2 - (1 - F_GammaN) g + t^2 = 0, branch g(0) = 0, i.e.
    // g = ((1-F) - sqrt((1-F)^2 - 12 t^2)) / 6
    RatSeries a = one - out.f_gamma_n;
    RatSeries disc = a * a;
    if (order >= 2) disc[2] -= 12;
    out.f_gamma_prime = Rational(1, 6) * (a - disc.sqrt());
    out.p_gamma_prime = (one - out.f_gamma_prime).reciprocal();
    out.f_gamma_tilde = Rational(4) * out.f_gamma_prime + out.f_gamma_n;
    out.p_gamma_tilde = (one - out.f_gamma_tilde).reciprocal();
    return out;
}

std::optional<Rational> eval_f_gamma(const Rational& t) {
    auto s = exact_sqrt(Rational(1) - 4 * t * t);
    if (!s) return std::nullopt;
    return 4 * t + (Rational(1) - *s) / 2;
}

}  // namespace kesten
