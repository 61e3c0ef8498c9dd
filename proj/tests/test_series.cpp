#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kesten/builders.hpp"
#include "kesten/series.hpp"

using namespace kesten;

namespace {

DyadicRational half() { return DyadicRational::make(Int(1), 1); }

// first-return series recovered from exact moments: F = 1 - 1/P
RatSeries first_return_from_moments(const RootedWeightedGraph& g, int order) {
    auto table = moments_finite(g, order);
    RatSeries p(order);
    for (int i = 0; i <= order; ++i) p[i] = table.values[static_cast<size_t>(i)];
    return RatSeries::constant(Rational(1), order) - p.reciprocal();
}

RootedWeightedGraph random_small_graph(std::mt19937& rng) {
    static const Rational pool[] = {Rational(1), Rational(1, 2), Rational(2), Rational(-1),
                                    Rational(1, 3)};
    std::uniform_int_distribution<int> n_dist(1, 5), w_dist(0, 4), coin(0, 3);
    RootedWeightedGraph g;
    int n = n_dist(rng);
    for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> parent(0, i - 1);
        g.add_sym(parent(rng), i, CRat{pool[w_dist(rng)], Rational(0)});
    }
    if (coin(rng) == 0) {
        std::uniform_int_distribution<int> at(0, n - 1);
        int v = at(rng);
        g.add_sym(v, v, CRat{pool[w_dist(rng)], Rational(0)});
    }
    return g;
}

}  // namespace

TEST_CASE("series ring arithmetic") {
    RatSeries one = RatSeries::constant(Rational(1), 8);
    RatSeries s(8);
    s[0] = 1;
    s[1] = Rational(-3, 2);
    s[3] = Rational(2, 7);
    CHECK((s * s.reciprocal() - one).is_zero());
    CHECK((s.sqrt() * s.sqrt() - s).is_zero());
    CHECK(s.sqrt()[0] == Rational(1));
    CHECK((s.shifted(2))[5] == s[3]);
    CHECK_THROWS_AS(RatSeries(8).reciprocal(), std::domain_error);
    RatSeries neg = RatSeries::constant(Rational(2), 4);
    CHECK_THROWS_AS(neg.sqrt(), std::domain_error);  // 2 is not a rational square
}

TEST_CASE("closed-form expansions of the two quadratic branches") {
    auto [q, p] = qp_series(Rational(1), Rational(2), 10);
    CHECK(q[0] == Rational(-1));
    CHECK(p[0] == Rational(-1));
    CHECK(p[1] == Rational(0));
    CHECK(p[2] == Rational(9));
    CHECK(p[4] == Rational(81));

    // q + 1 is the first-return series of the loop-decorated half line
    for (auto [alpha, beta] : {std::pair<Rational, Rational>{Rational(1), Rational(2)},
                               {Rational(1, 4), Rational(1, 4)}}) {
        auto [qq, pp] = qp_series(alpha, beta, 12);
        auto f = first_return_from_moments(phi_ray(alpha, beta, 14), 12);
        auto diff = (qq + RatSeries::constant(Rational(1), 12)) - f;
        CHECK(diff.is_zero());
    }

    // p + 1 at unit total weight is the half-line first-return series
    auto [q2, p2] = qp_series(Rational(1, 2), Rational(1, 2), 20);
    auto appendix = appendix_series(20);
    auto diff = (p2 + RatSeries::constant(Rational(1), 20)) - appendix.f_gamma_n;
    CHECK(diff.is_zero());
}

TEST_CASE("cubic solution: base point, positivity, degenerate case") {
    auto x = solve_cubic_series(Rational(1, 4), Rational(1, 4), 30);
    CHECK(x[0] == Rational(1));
    for (int i = 0; i <= 30; ++i) CHECK(x[i] >= 0);

    // beta = 0 collapses the cubic to a linear equation with solution
    // 1/sqrt(1 - 4 alpha^2 t^2)
    Rational alpha(1, 3);
    auto x0 = solve_cubic_series(alpha, Rational(0), 20);
    RatSeries rad(20);
    rad[0] = 1;
    rad[2] = -4 * alpha * alpha;
    auto expected = rad.sqrt().reciprocal();
    CHECK((x0 - expected).is_zero());
}

TEST_CASE("orbit return series against exact path sums") {
    std::vector<std::pair<Rational, Rational>> params = {{Rational(-1), Rational(1)},
                                                         {Rational(1), Rational(2)}};
    for (const auto& [alpha, beta] : params) {
        auto [f, p] = upsilon_series(alpha, beta, 16);
        CHECK(p[0] == Rational(1));
        CHECK(p[1] == 2 * beta);
        auto prod = p * (RatSeries::constant(Rational(1), 16) - f);
        CHECK((prod - RatSeries::constant(Rational(1), 16)).is_zero());

        auto ball = schreier_ball(alpha, beta, half(), 8);
        auto table = moments_bruteforce(ball, 16);
        for (int n = 0; n <= 16; ++n) CHECK(p[n] == table.values[static_cast<size_t>(n)]);
    }
}

TEST_CASE("truncated moments of probability weights form a positive sequence") {
    auto ball = schreier_ball(Rational(1, 4), Rational(1, 4), half(), 6);
    auto table = moments_bruteforce(ball, 12);
    CHECK(table.values[0] == Rational(1));
    for (const auto& v : table.values) CHECK(v > 0);
    // leading Hankel minor of a measure is nonnegative
    CHECK(table.values[0] * table.values[2] - table.values[1] * table.values[1] >= 0);
    CHECK_THROWS_AS(moments_bruteforce(ball, 13), std::domain_error);
}

TEST_CASE("root-operation rules for first-return series on random graphs") {
    std::mt19937 rng(987654);
    const int order = 10;
    static const Rational wpool[] = {Rational(1), Rational(1, 2), Rational(-2)};
    for (int iter = 0; iter < 20; ++iter) {
        auto g1 = random_small_graph(rng);
        auto g2 = random_small_graph(rng);
        auto f1 = first_return_from_moments(g1, order);
        auto f2 = first_return_from_moments(g2, order);
        auto p2 = (RatSeries::constant(Rational(1), order) - f2).reciprocal();

        // union of roots adds first-return series
        auto fu = first_return_from_moments(graph_union(g1, g2), order);
        CHECK((fu - (f1 + f2)).is_zero());

        Rational w = wpool[iter % 3];
        CRat cw{w, Rational(0)};

        // hanging the graph off a fresh root scales P by (w t)^2
        auto fd = first_return_from_moments(attach_delta(g2, cw, cw), order);
        CHECK((fd - (w * w) * p2.shifted(2)).is_zero());

        // star composition adds the two contributions
        auto fs = first_return_from_moments(star(g1, g2, cw, cw), order);
        CHECK((fs - (f1 + (w * w) * p2.shifted(2))).is_zero());
    }
}

TEST_CASE("float coefficient mode tracks the exact series") {
    const int order = 100;
    auto [fr, pr] = upsilon_series(Rational(1, 4), Rational(1, 4), order);
    auto [fd, pd] = upsilon_series(0.25, 0.25, order);
    for (int i = 0; i <= order; ++i) {
        double exact = to_double(pr[i]);
        CHECK(std::abs(pd[i] - exact) <= 1e-9 * std::abs(exact));
    }
}

TEST_CASE("counterexample family series") {
    auto app = appendix_series(20);
    // half line: even coefficients are the shifted Catalan numbers
    std::vector<long> catalan = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
    CHECK(app.f_gamma_n[0] == Rational(0));
    CHECK(app.f_gamma_n[1] == Rational(0));
    for (int k = 0; k + 1 <= 9; ++k) {
        CHECK(app.f_gamma_n[2 * k + 2] == Rational(catalan[static_cast<size_t>(k)]));
        if (2 * k + 3 <= 20) CHECK(app.f_gamma_n[2 * k + 3] == Rational(0));
    }

    // the two root loops shift F by 4t
    auto shift = app.f_gamma - app.f_gamma_n;
    CHECK(shift[1] == Rational(4));
    for (int i = 0; i <= 20; ++i)
        if (i != 1) CHECK(shift[i] == Rational(0));

    // every (F, P) pair satisfies P (1 - F) = 1
    auto one = RatSeries::constant(Rational(1), 20);
    CHECK((app.p_gamma_n * (one - app.f_gamma_n) - one).is_zero());
    CHECK((app.p_gamma * (one - app.f_gamma) - one).is_zero());
    CHECK((app.p_gamma_prime * (one - app.f_gamma_prime) - one).is_zero());
    CHECK((app.p_gamma_tilde * (one - app.f_gamma_tilde) - one).is_zero());

    // the tree block solves its quadratic exactly
    RatSeries t2(20);
    t2[2] = 1;
    auto g = app.f_gamma_prime;
    auto res = Rational(3) * g * g - (one - app.f_gamma_n) * g + t2;
    CHECK(res.is_zero());

    // brute-force oracles on ball truncations
    auto line_ball = appendix_graph(AppendixKind::gamma_n, 10);
    auto line_moments = moments_bruteforce(line_ball, 20);
    RatSeries pline(20);
    for (int i = 0; i <= 20; ++i) pline[i] = line_moments.values[static_cast<size_t>(i)];
    CHECK((pline - app.p_gamma_n).is_zero());
    for (int i = 1; i <= 19; i += 2) CHECK(pline[i] == Rational(0));  // bipartite

    auto tree_ball = appendix_graph(AppendixKind::gamma_tilde, 10);
    auto tree_moments = moments_bruteforce(tree_ball, 20);
    RatSeries ptree(20);
    for (int i = 0; i <= 20; ++i) ptree[i] = tree_moments.values[static_cast<size_t>(i)];
    CHECK((ptree - app.p_gamma_tilde).is_zero());
}

TEST_CASE("exact evaluation of the loop-decorated half-line series") {
    auto at_pole = eval_f_gamma(Rational(4, 17));
    REQUIRE(at_pole.has_value());
    CHECK(*at_pole == Rational(1));
    auto generic = eval_f_gamma(Rational(3, 10));
    REQUIRE(generic.has_value());
    CHECK(*generic == Rational(13, 10));
    CHECK(!eval_f_gamma(Rational(1, 3)).has_value());  // 1 - 4/9 is not a square
}
