// End-to-end acceptance checks, one line per criterion. Each criterion
// prints [PASS] or [FAIL] with the measured numbers; the process exit code
// is the number of failing criteria. Criteria 5 and 6 compare asymptotic
// fits in windows where the O(1/n) corrections have not died out and are
// expected to fail with the constants as printed in the source paper; see
// README.md for the analysis.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kesten/asymptotics.hpp"
#include "kesten/builders.hpp"
#include "kesten/finite_spectra.hpp"
#include "kesten/series.hpp"
#include "kesten/stieltjes.hpp"

using namespace kesten;

namespace {

DyadicRational half() { return DyadicRational::make(Int(1), 1); }

bool criterion_1(std::string& msg) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::pair<Rational, Rational>> params = {
        {Rational(1, 4), Rational(1, 4)}, {Rational(1), Rational(2)},
        {Rational(-1), Rational(1)},      {Rational(3), Rational(-2)}};
    bool ok = true;
    for (const auto& [alpha, beta] : params) {
        auto [f, p] = upsilon_series(alpha, beta, 30);
        auto ball = schreier_ball(alpha, beta, half(), 16);
        auto table = moments_bruteforce(ball, 30);
        for (int n = 0; n <= 30; ++n)
            if (p[n] != table.values[static_cast<size_t>(n)]) ok = false;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    msg = "cubic-series vs radius-16 path sums, 4 weight pairs, 30 coefficients, exact (" +
          std::to_string(secs) + " s)";
    return ok && secs < 120;
}

bool criterion_2(std::string& msg) {
    auto sup = support(-1, 1);
    auto quartic = [](double z) { return ((z * z - 2) * z + 16) * z + 1; };
    if (sup.intervals.size() != 2) {
        msg = "expected two support components, got " + std::to_string(sup.intervals.size());
        return false;
    }
    double z1 = sup.intervals[0].first, z2 = sup.intervals[0].second;
    double r1 = std::abs(quartic(z1)), r2 = std::abs(quartic(z2));
    double r3 = std::abs(sup.intervals[1].first), r4 = std::abs(sup.intervals[1].second - 4);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "support(-1,1) = [%.6f, %.6f] u [%.1e, %.6f]; quartic residuals %.1e, %.1e",
                  z1, z2, sup.intervals[1].first, sup.intervals[1].second, r1, r2);
    msg = buf;
    return r1 < 1e-9 && r2 < 1e-9 && r3 < 1e-9 && r4 < 1e-9 && std::abs(z1 + 2.766) < 1e-3 &&
           std::abs(z2 + 0.062) < 1e-3;
}

bool criterion_3(std::string& msg) {
    double pairs[5][2] = {{0.25, 0.25}, {1, 2}, {0.5, 3}, {2, 1}, {1.0 / 3, 0.2}};
    bool ok = true;
    double worst = 0;
    for (const auto& pr : pairs) {
        auto sup = support(pr[0], pr[1]);
        double edge = 2 * std::abs(pr[0] + pr[1]);
        if (sup.intervals.size() != 1) {
            ok = false;
            continue;
        }
        worst = std::max(worst, std::abs(sup.intervals[0].first + edge));
        worst = std::max(worst, std::abs(sup.intervals[0].second - edge));
        for (int k = 1; k <= 11; ++k) {
            double z = -edge + 2 * edge * k / 12.0;
            auto curve = density_curve(pr[0], pr[1], {z});
            if (!(curve.samples[0].density > 0)) ok = false;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "5 same-sign pairs: [-2|a+b|, 2|a+b|], worst endpoint error %.1e, "
                  "positive density at 11 interior points",
                  worst);
    msg = buf;
    return ok && worst < 1e-6;
}

bool criterion_4(std::string& msg) {
    std::vector<std::pair<Rational, Rational>> params = {
        {Rational(1, 4), Rational(1, 4)}, {Rational(1), Rational(2)},
        {Rational(-1), Rational(1)},      {Rational(3), Rational(-2)}};
    double worst_mass = 0, worst_moment = 0;
    for (const auto& [alpha, beta] : params) {
        double a = to_double(alpha), b = to_double(beta);
        auto sup = support(a, b);
        auto m = density_moments(a, b, 10, sup);
        worst_mass = std::max(worst_mass, std::abs(m[0] - 1));
        auto [f, p] = upsilon_series(alpha, beta, 10);
        for (int n = 1; n <= 10; ++n) {
            double exact = to_double(p[n]);
            double err = std::abs(m[static_cast<size_t>(n)] - exact) / std::max(1.0, std::abs(exact));
            worst_moment = std::max(worst_moment, err);
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "4 pairs: |total mass - 1| <= %.1e, first 10 moments within %.1e of exact",
                  worst_mass, worst_moment);
    msg = buf;
    return worst_mass < 1e-6 && worst_moment < 1e-6;
}

bool criterion_5(std::string& msg) {
    auto rep = return_probability_fit(2000);
    bool exp_ok = rep.exponent_hat >= 1.45 && rep.exponent_hat <= 1.55;
    bool stab_ok = rep.stabilization <= 0.02;
    bool const_ok = std::abs(rep.a_hat - rep.paper_constant) <= 0.03 * rep.paper_constant;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "n in [500,2000]: exponent %.3f (want [1.45,1.55]), stabilization %.3f "
                  "(want <= 0.02), p_2n n^1.5 = %.2f vs printed constant %.2f "
                  "(renormalized limit %.2f)",
                  rep.exponent_hat, rep.stabilization, rep.a_hat, rep.paper_constant,
                  rep.transfer_constant);
    msg = buf;
    return exp_ok && stab_ok && const_ok;
}

bool criterion_6(std::string& msg) {
    std::vector<double> grid;
    for (int i = 0; i <= 8; ++i) grid.push_back(1e-3 * std::pow(100.0, i / 8.0));
    auto rep = integrated_density_edge(grid);
    bool slope_ok = rep.exponent_hat >= 1.45 && rep.exponent_hat <= 1.55;
    bool const_ok = std::abs(rep.c_hat - rep.paper_constant) <= 0.03 * rep.paper_constant;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "s in [1e-3,1e-1]: slope %.3f (want [1.45,1.55]), constant %.3f vs %.3f "
                  "(want within 3%%)",
                  rep.exponent_hat, rep.c_hat, rep.paper_constant);
    msg = buf;
    return slope_ok && const_ok;
}

bool criterion_7(std::string& msg) {
    auto ec = edge_constants();
    double s2 = std::sqrt(2.0);
    bool c1_ok = ec.c1 == 4 * (2 - s2);
    bool c3_ok = ec.c3 == 6 + 2 * s2 - 2 * std::sqrt(11 + 2 * s2);
    bool c2_ok = std::abs(ec.c2 - (-9.657)) < 5e-3;
    bool c4_ok = std::abs(ec.c4 - (-0.6)) < 5e-2;
    char buf[160];
    std::snprintf(buf, sizeof buf, "C1 = %.9f, C2 = %.6f, C3 = %.9f, C4 = %.6f", ec.c1, ec.c2,
                  ec.c3, ec.c4);
    msg = buf;
    return c1_ok && c2_ok && c3_ok && c4_ok;
}

bool criterion_8(std::string& msg) {
    bool ok = true;
    auto path = finite_example(FiniteExample::path5);
    auto d = eig(path);
    std::vector<double> expected = {-std::sqrt(3.0), -1, 0, 1, std::sqrt(3.0)};
    for (size_t i = 0; i < 5; ++i)
        if (std::abs(d.eigenvalues[i] - expected[i]) > 1e-10) ok = false;
    std::set<std::set<int>> patterns;
    for (int v = 0; v < 5; ++v) {
        auto mu = vertex_measure(d, v);
        std::set<int> pat;
        for (size_t i = 0; i < expected.size(); ++i)
            for (const auto& [l, w] : mu.atoms)
                if (std::abs(l - expected[i]) < 1e-8 && w > 1e-12) pat.insert(static_cast<int>(i));
        patterns.insert(pat);
    }
    if (patterns.size() != 3) ok = false;

    auto hanoi = finite_example(FiniteExample::hanoi2);
    auto dh = eig(hanoi);
    int simple = 0;
    for (double l : dh.eigenvalues)
        if (std::abs(l + 2.0 / 3) < 1e-10) ++simple;
    if (simple != 1) ok = false;
    auto mass_of = [&](const std::string& label) {
        int v = -1;
        for (size_t i = 0; i < hanoi.size(); ++i)
            if (hanoi.labels[i] == label) v = static_cast<int>(i);
        auto mu = vertex_measure(dh, v);
        double m = 0;
        for (const auto& [l, w] : mu.atoms)
            if (std::abs(l + 2.0 / 3) < 1e-8) m += w;
        return m;
    };
    double m00 = mass_of("00"), m10 = mass_of("10");
    if (!(m00 < 1e-12 && m10 > 0)) ok = false;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "path5 spectrum {0,+-1,+-sqrt3}, %zu support patterns; hanoi2 mass at -2/3: "
                  "mu_00 = %.1e, mu_10 = %.4f",
                  patterns.size(), m00, m10);
    msg = buf;
    return ok;
}

bool criterion_9(std::string& msg) {
    auto at = eval_f_gamma(Rational(4, 17));
    bool f_ok = at && *at == Rational(1);
    auto rep = appendix_spectra();
    bool mass_ok = rep.gamma_atom_mass_exact == Rational(15, 16) &&
                   rep.gamma_atom_mass_residue > 0 &&
                   std::abs(rep.gamma_atom_mass_residue - 0.9375) < 1e-6;
    bool endpoint_ok = rep.gamma_tilde_endpoint_residual < 1e-9 &&
                       std::abs(rep.gamma_tilde_endpoint - 13 * std::sqrt(3.0) / 6) < 1e-9;
    bool outside_ok = rep.atom_outside_gamma_tilde;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "F(4/17) = 1 exact; atom at 17/4 with mass 15/16 (residue %.7f); tree edge "
                  "13 sqrt(3)/6 = %.9f; 4.25 outside",
                  rep.gamma_atom_mass_residue, rep.gamma_tilde_endpoint);
    msg = buf;
    return f_ok && mass_ok && endpoint_ok && outside_ok;
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

RatSeries first_return(const RootedWeightedGraph& g, int order) {
    auto table = moments_finite(g, order);
    RatSeries p(order);
    for (int i = 0; i <= order; ++i) p[i] = table.values[static_cast<size_t>(i)];
    return RatSeries::constant(Rational(1), order) - p.reciprocal();
}

bool criterion_10(std::string& msg) {
    bool ok = true;
    // uniqueness of the upper root and half-plane positivity
    std::mt19937 rng(1618033);
    std::uniform_real_distribution<double> re(-8, 8), im(1e-4, 4);
    double pairs[4][2] = {{0.25, 0.25}, {1, 2}, {-1, 1}, {3, -2}};
    for (int i = 0; i < 500; ++i) {
        Cplx z(re(rng), im(rng));
        auto roots = eval_v(pairs[i % 4][0], pairs[i % 4][1], z);
        int upper = 0;
        for (const auto& v : roots.roots)
            if (v.imag() > 1e-9) ++upper;
        if (upper != 1 || !roots.selected || roots.roots[*roots.selected].imag() <= 0) ok = false;
    }
    // rooted-operation rules, exact to order 10
    for (int iter = 0; iter < 20; ++iter) {
        auto g1 = random_small_graph(rng);
        auto g2 = random_small_graph(rng);
        auto f1 = first_return(g1, 10);
        auto f2 = first_return(g2, 10);
        auto p2 = (RatSeries::constant(Rational(1), 10) - f2).reciprocal();
        Rational w(iter % 3 + 1, 2);
        CRat cw{w, Rational(0)};
        if (!(first_return(graph_union(g1, g2), 10) - (f1 + f2)).is_zero()) ok = false;
        if (!(first_return(attach_delta(g2, cw, cw), 10) - (w * w) * p2.shifted(2)).is_zero())
            ok = false;
        if (!(first_return(star(g1, g2, cw, cw), 10) - (f1 + (w * w) * p2.shifted(2))).is_zero())
            ok = false;
    }
    // conjugate symmetry of the partial-sum transform
    auto [f, p] = upsilon_series(Rational(1, 4), Rational(1, 4), 60);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        Cplx z(re(rng), im(rng) + 0.5);
        if (std::abs(z) <= 1.2) z += Cplx(3, 0);
        Cplx s = stieltjes_of_graph_series(p, z, 1.0);
        Cplx sc = stieltjes_of_graph_series(p, std::conj(z), 1.0);
        worst = std::max(worst, std::abs(sc - std::conj(s)));
    }
    if (worst >= 1e-10) ok = false;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "500-point root uniqueness and positivity; 20 random-graph operation "
                  "identities exact; conjugate symmetry within %.1e",
                  worst);
    msg = buf;
    return ok;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<bool(std::string&)> run;
    };
    std::vector<Entry> entries = {
        {"series oracle equivalence", criterion_1},
        {"mixed-sign support components", criterion_2},
        {"same-sign support and positivity", criterion_3},
        {"measure normalization and moments", criterion_4},
        {"return-probability asymptotics", criterion_5},
        {"integrated edge density", criterion_6},
        {"spectral-edge constants", criterion_7},
        {"finite example measures", criterion_8},
        {"counterexample spectra", criterion_9},
        {"property suites", criterion_10},
    };
    int failures = 0;
    for (size_t i = 0; i < entries.size(); ++i) {
        std::string msg;
        bool ok = false;
        try {
            ok = entries[i].run(msg);
        } catch (const std::exception& e) {
            msg = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("[%s] criterion %zu (%s): %s\n", ok ? "PASS" : "FAIL", i + 1,
                    entries[i].name, msg.c_str());
        std::fflush(stdout);
    }
    if (failures)
        std::printf("%d of 10 criteria failed\n", failures);
    else
        std::printf("all 10 criteria passed\n");
    return failures;
}
