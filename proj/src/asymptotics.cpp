#include "kesten/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "kesten/stieltjes.hpp"

namespace kesten {

namespace {

constexpr double kPi = 3.14159265358979323846;

// real roots of the cubic in x at fixed real t in (-1,1), alpha = beta = 1/4:
//   t^4/256 x^3 + (p+q) t^2/16 x^2 + (pq - ... ) x + p = 0
// with p, q from the closed forms.
std::array<double, 3> edge_cubic_roots(double t) {
    double q = -0.5 - t / 4 - 0.5 * std::sqrt(1 - t);
    double p = -0.5 - 0.5 * std::sqrt(1 - t * t);
    Cplx a(t * t * t * t / 256, 0), b((p + q) * t * t / 16, 0), c(p * q, 0), d(p, 0);
    // coefficient c also carries (beta^2 - alpha^2) t^2 = 0 here
    std::array<Cplx, 3> z;
    {
        Cplx B = b / a, C = c / a, D = d / a;
        Cplx pp = C - B * B / 3.0;
        Cplx qq = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
        Cplx s = std::sqrt(qq * qq / 4.0 + pp * pp * pp / 27.0);
        Cplx u3 = -qq / 2.0 + s;
        if (std::abs(u3) < 1e-3 * (std::abs(qq) + std::abs(s))) u3 = -qq / 2.0 - s;
        Cplx u = std::pow(u3, 1.0 / 3.0);
        const Cplx omega(-0.5, std::sqrt(3.0) / 2);
        for (int k = 0; k < 3; ++k) {
            z[k] = u - pp / (3.0 * u) - B / 3.0;
            u *= omega;
        }
    }
    std::array<double, 3> out;
    for (int k = 0; k < 3; ++k) {
        double v = z[k].real();
        // Newton polish in real arithmetic
        for (int it = 0; it < 6; ++it) {
            double a4 = t * t * t * t / 256, b2 = (p + q) * t * t / 16;
            double f = ((a4 * v + b2) * v + p * q) * v + p;
            double fp = (3 * a4 * v + 2 * b2) * v + p * q;
            if (fp == 0) break;
            v -= f / fp;
        }
        out[k] = v;
    }
    return out;
}

}  // namespace

double x_continued(double t) {
    if (std::abs(t) >= 1) throw std::domain_error("x_continued: |t| must be < 1");
    // follow the root from t = 0 (x = 1) in small steps
    double cur = 1.0;
    int steps = 200;
    for (int i = 1; i <= steps; ++i) {
        double ti = t * i / steps;
        if (std::abs(ti) < 1e-6) continue;  // cubic degenerates at t = 0
        auto roots = edge_cubic_roots(ti);
        double best = roots[0];
        for (double r : roots)
            if (std::abs(r - cur) < std::abs(best - cur)) best = r;
        cur = best;
    }
    return cur;
}

EdgeConstants edge_constants() {
    EdgeConstants ec;
    double s2 = std::sqrt(2.0);
    ec.c1 = 4 * (2 - s2);
    ec.roots_plus = {4 * (2 + s2), 4.0, 4 * (2 - s2)};
    auto dfdu_p = [&](double u) { return 3.0 / 256 * u * u - 5.0 / 32 * u + 3.0 / 8; };
    auto dfds_p = [&](double u) {
        return -(1 + s2) / 32 * u * u + (2 + 3 * s2) / 8 * u - s2 / 2;
    };
    ec.dfdu_plus = dfdu_p(ec.c1);
    ec.c2 = -dfds_p(ec.c1) / dfdu_p(ec.c1);
    ec.c3 = 6 + 2 * s2 - 2 * std::sqrt(11 + 2 * s2);
    ec.roots_minus = {ec.c3, 4 * s2, 6 + 2 * s2 + 2 * std::sqrt(11 + 2 * s2)};
    auto dfdu_m = [&](double u) {
        return 3.0 / 256 * u * u - (3 + 2 * s2) / 32 * u + (1 + 2 * s2) / 8;
    };
    auto dfds_m = [&](double u) { return -s2 / 32 * u * u + (4 + s2) / 8 * u - s2 / 2; };
    ec.dfdu_minus = dfdu_m(ec.c3);
    ec.c4 = -dfds_m(ec.c3) / dfdu_m(ec.c3);
    if (std::abs(ec.dfdu_plus) < 1e-6 || std::abs(ec.dfdu_minus) < 1e-6)
        throw std::runtime_error("edge_constants: implicit-function denominator vanishes");
    // propagate through P = 1/Den, Den = t^2 x/16 + 1/x - t/2; at t = 1 -+ s^2
    // dt/ds = 0 at s = 0, so only the x-expansion contributes at order s
    double d0 = ec.c1 / 16 + 1 / ec.c1 - 0.5;
    ec.ct1 = 1 / d0;
    ec.ct2 = -ec.c2 * (1.0 / 16 - 1 / (ec.c1 * ec.c1)) / (d0 * d0);
    double d0m = ec.c3 / 16 + 1 / ec.c3 + 0.5;
    ec.ct3 = 1 / d0m;
    ec.ct4 = -ec.c4 * (1.0 / 16 - 1 / (ec.c3 * ec.c3)) / (d0m * d0m);
    return ec;
}

RootSelectionReport root_selection_check(int order) {
    if (order < 30) throw std::domain_error("root_selection_check: order must be >= 30");
    RootSelectionReport rep;
    Rational q(1, 4);
    RatSeries x = solve_cubic_series(q, q, order);
    rep.coefficients_nonnegative = true;
    for (int i = 0; i <= order; ++i)
        if (x[i] < 0) rep.coefficients_nonnegative = false;
    rep.x_at_0 = to_double(x[0]);
    EdgeConstants ec = edge_constants();
    auto err_plus = [&](double s) {
        return std::abs(x_continued(1 - s * s) - (ec.c1 + ec.c2 * s));
    };
    auto err_minus = [&](double s) {
        return std::abs(x_continued(s * s - 1) - (ec.c3 + ec.c4 * s));
    };
    double sp = 0.02;
    rep.err_plus_ratio = err_plus(sp / 2) / err_plus(sp);
    rep.err_minus_ratio = err_minus(sp / 2) / err_minus(sp);
    // an O(s^2) remainder halves twice when s halves
    rep.plus_second_order = rep.err_plus_ratio > 0.1 && rep.err_plus_ratio < 0.4;
    rep.minus_second_order = rep.err_minus_ratio > 0.1 && rep.err_minus_ratio < 0.4;
    return rep;
}

ReturnFitReport return_probability_fit(int n_max) {
    if (n_max < 500) throw std::domain_error("return_probability_fit: n_max must be >= 500");
    ReturnFitReport rep;
    auto [f, p] = upsilon_series(0.25, 0.25, 2 * n_max + 1);
    rep.all_positive = true;
    for (int n = 1; n <= 2 * n_max; ++n)
        if (p[n] <= 0) rep.all_positive = false;
    int lo = n_max / 4, hi = n_max;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int n = lo; n <= hi; ++n) {
        double lx = std::log(static_cast<double>(n)), ly = std::log(p[2 * n]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++cnt;
    }
    double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    rep.exponent_hat = -slope;
    double amin = 1e300, amax = -1e300, asum = 0, bsum = 0;
    int half = (lo + hi) / 2, hcnt = 0;
    for (int n = half; n <= hi; ++n) {
        double a = p[2 * n] * std::pow(n, 1.5);
        double b = p[2 * n + 1] * std::pow(n, 1.5);
        amin = std::min(amin, a);
        amax = std::max(amax, a);
        asum += a;
        bsum += b;
        ++hcnt;
    }
    rep.a_hat = asum / hcnt;
    rep.b_hat = bsum / hcnt;
    rep.stabilization = (amax - amin) / rep.a_hat;
    EdgeConstants ec = edge_constants();
    rep.paper_constant = -(ec.ct2 + ec.ct4) / 2;
    // singularity analysis of G(s) = (P(sqrt s)+P(-sqrt s))/2: the edge
    // variable contributes sqrt(1-sqrt(s)) ~ sqrt(1-s)/sqrt(2), and
    // [s^n] sqrt(1-s) ~ -n^(-3/2)/(2 sqrt(pi))
    rep.transfer_constant = -(ec.ct2 + ec.ct4) / (4 * std::sqrt(2 * kPi));
    return rep;
}

IntegratedDensityReport integrated_density_edge(const std::vector<double>& s_grid) {
    IntegratedDensityReport rep;
    EdgeConstants ec = edge_constants();
    rep.paper_constant = -(2.0 / (3 * kPi)) * ec.ct2;
    auto dens = [](double z) {
        bool fl = false;
        CubicRoots r = eval_v(0.25, 0.25, Cplx(z, 0));
        if (!r.selected) return 0.0;
        Cplx v = r.roots[*r.selected];
        Cplx den = 0.25 * v + 1.0;
        double d = (v / (den * den)).imag() / kPi;
        (void)fl;
        return d > 0 ? d : 0.0;
    };
    // N(s) = integral of density over (1-s, 1]; substitute z = 1 - r^2 so
    // the sqrt edge becomes linear: N = int_0^sqrt(s) density(1-r^2) 2r dr
    auto n_of_s = [&](double s) {
        double rmax = std::sqrt(s);
        int m = 512;  // Simpson panels (even count of intervals)
        double h = rmax / m, acc = 0;
        for (int i = 0; i <= m; ++i) {
            double r = i * h;
            double w = (i == 0 || i == m) ? 1 : (i % 2 ? 4 : 2);
            acc += w * dens(1 - r * r) * 2 * r;
        }
        return acc * h / 3;
    };
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (double s : s_grid) {
        double ns = n_of_s(s);
        rep.samples.emplace_back(s, ns);
        if (ns <= 0) continue;
        double lx = std::log(s), ly = std::log(ns);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++cnt;
    }
    double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    double intercept = (sy - slope * sx) / cnt;
    rep.exponent_hat = slope;
    rep.c_hat = std::exp(intercept);
    return rep;
}

}  // namespace kesten
