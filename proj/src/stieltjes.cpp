#include "kesten/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kesten {

namespace {

constexpr double kPi = 3.14159265358979323846;

int sign_of(double x) { return x < 0 ? -1 : 1; }

}  // namespace

std::pair<BranchedValue, BranchedValue> eval_pq_star(double alpha, double beta, Cplx z) {
    if (z.imag() < -1e-12) throw std::domain_error("eval_pq_star: z must be in the closed upper half-plane");
    double cp = 2 * std::abs(alpha + beta);
    double cq = 2 * std::abs(alpha);
    BranchedValue p, q;
    if (z.imag() > 0) {
        // analytic continuation from |z| large where P* ~ z, Q* ~ z:
        // principal square roots of the two linear factors
        p = {z / 2.0 + 0.5 * std::sqrt(z - cp) * std::sqrt(z + cp), "upper"};
        Cplx w = z - 2 * beta;
        q = {z / 2.0 + beta + 0.5 * std::sqrt(w - cq) * std::sqrt(w + cq), "upper"};
    } else {
        double x = z.real();
        double rp = x * x - cp * cp;
        if (rp >= 0)
            p = {Cplx(x / 2 + sign_of(x) * 0.5 * std::sqrt(rp), 0), "sign"};
        else
            p = {Cplx(x / 2, 0.5 * std::sqrt(-rp)), "imag"};
        double xq = x - 2 * beta;
        double rq = xq * xq - cq * cq;
        if (rq >= 0)
            q = {Cplx(x / 2 + beta + sign_of(xq) * 0.5 * std::sqrt(rq), 0), "sign"};
        else
            q = {Cplx(x / 2 + beta, 0.5 * std::sqrt(-rq)), "imag"};
    }
    return {p, q};
}

namespace {

std::array<Cplx, 3> cardano(Cplx a, Cplx b, Cplx c, Cplx d) {
    Cplx B = b / a, C = c / a, D = d / a;
    Cplx p = C - B * B / 3.0;
    Cplx q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
    Cplx s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    Cplx u3 = -q / 2.0 + s;
    if (std::abs(u3) < 1e-3 * (std::abs(q) + std::abs(s))) u3 = -q / 2.0 - s;
    std::array<Cplx, 3> roots;
    if (std::abs(u3) == 0) {
        roots.fill(-B / 3.0);
        return roots;
    }
    Cplx u = std::pow(u3, 1.0 / 3.0);
    const Cplx omega(-0.5, std::sqrt(3.0) / 2);
    for (int k = 0; k < 3; ++k) {
        roots[k] = u - p / (3.0 * u) - B / 3.0;
        u *= omega;
    }
    return roots;
}

}  // namespace

CubicRoots eval_v(double alpha, double beta, Cplx z, double tol) {
    if (beta == 0) throw std::domain_error("eval_v: beta must be nonzero (use v_function)");
    auto [ps, qs] = eval_pq_star(alpha, beta, z);
    Cplx pv = ps.value, qv = qs.value;
    double b2 = beta * beta;
    Cplx a = b2 * b2, b = b2 * (pv + qv), c = pv * qv + (b2 - alpha * alpha), d = pv;
    CubicRoots out;
    out.roots = cardano(a, b, c, d);
    double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    for (auto& v : out.roots) {
        for (int it = 0; it < 8; ++it) {
            Cplx f = ((a * v + b) * v + c) * v + d;
            Cplx fp = (3.0 * a * v + 2.0 * b) * v + c;
            if (std::abs(fp) == 0) break;
            Cplx step = f / fp;
            v -= step;
            if (std::abs(step) < 1e-16 * (1 + std::abs(v))) break;
        }
        Cplx f = ((a * v + b) * v + c) * v + d;
        out.max_residual = std::max(out.max_residual, std::abs(f) / scale);
    }
    int count = 0;
    for (int k = 0; k < 3; ++k) {
        if (out.roots[k].imag() > tol) {
            ++count;
            out.selected = k;
        }
    }
    if (count > 1) {
        // a genuine double selection violates root uniqueness unless the
        // two roots coincide numerically (collision near an endpoint)
        std::vector<Cplx> up;
        for (const auto& v : out.roots)
            if (v.imag() > tol) up.push_back(v);
        if (std::abs(up[0] - up[1]) > 1e-6 * (1 + std::abs(up[0])))
            throw std::runtime_error("eval_v: multiple roots with positive imaginary part");
    }
    return out;
}

Cplx v_function(double alpha, double beta, Cplx z, double tol) {
    if (alpha == 0 && beta == 0) throw std::domain_error("v_function: alpha, beta both zero");
    if (beta == 0) {
        Cplx p = eval_pq_star(alpha, beta, z).first.value;
        return p / (alpha * alpha - p * p);
    }
    CubicRoots r = eval_v(alpha, beta, z, tol);
    if (r.selected) return r.roots[*r.selected];
    // all roots real (within tol): pick the continuation from just above
    CubicRoots up = eval_v(alpha, beta, z + Cplx(0, 1e-7), tol * 1e-3);
    Cplx target = up.selected ? up.roots[*up.selected] : up.roots[0];
    Cplx best = r.roots[0];
    for (const auto& v : r.roots)
        if (std::abs(v - target) < std::abs(best - target)) best = v;
    return best;
}

namespace {

Cplx w_of_v(double beta, Cplx v) {
    Cplx den = beta * v + 1.0;
    return v / (den * den);
}

double density_at(double alpha, double beta, Cplx z, bool* flagged) {
    Cplx v;
    if (beta == 0) {
        v = v_function(alpha, beta, z);
    } else {
        CubicRoots r = eval_v(alpha, beta, z);
        if (!r.selected && z.imag() <= 0) return 0;
        v = r.selected ? r.roots[*r.selected] : v_function(alpha, beta, z);
    }
    if (flagged && std::abs(beta * v + 1.0) < 1e-8) *flagged = true;
    double d = w_of_v(beta, v).imag() / kPi;
    return d > 0 ? d : 0;
}

}  // namespace

SpectralDensityCurve density_curve(double alpha, double beta, const std::vector<double>& grid,
                                   const std::vector<double>& eps_ladder) {
    SpectralDensityCurve curve;
    curve.alpha = alpha;
    curve.beta = beta;
    curve.samples.reserve(grid.size());
    for (double z : grid) {
        DensitySample s;
        s.z = z;
        if (beta == 0) {
            s.v = v_function(alpha, beta, Cplx(z, 0));
            s.density = std::max(0.0, s.v.imag() / kPi);
        } else {
            CubicRoots r = eval_v(alpha, beta, Cplx(z, 0));
            if (r.selected) {
                s.v = r.roots[*r.selected];
                if (std::abs(beta * s.v + 1.0) < 1e-8) s.flagged = true;
                s.density = std::max(0.0, w_of_v(beta, s.v).imag() / kPi);
            } else {
                s.v = v_function(alpha, beta, Cplx(z, 0));
                s.density = 0;
            }
        }
        if (!eps_ladder.empty()) {
            // independent route: boundary limit along z + i eps
            std::vector<double> vals;
            vals.reserve(eps_ladder.size());
            for (double eps : eps_ladder) {
                bool fl = false;
                vals.push_back(density_at(alpha, beta, Cplx(z, eps), &fl));
            }
            // the boundary values approach the density linearly in eps;
            // Richardson-extrapolate the last two rungs to eps = 0
            double limit = vals.back();
            if (vals.size() >= 2) {
                double e1 = eps_ladder[eps_ladder.size() - 2], e2 = eps_ladder.back();
                limit = vals.back() + (vals.back() - vals[vals.size() - 2]) * e2 / (e1 - e2);
            }
            s.route_disagreement = std::abs(limit - s.density);
            for (size_t i = 1; i < vals.size(); ++i) {
                double prev = std::abs(vals[i - 1] - s.density);
                double cur = std::abs(vals[i] - s.density);
                if (cur > prev + 1e-3) s.flagged = true;  // ladder not improving
            }
        }
        curve.samples.push_back(s);
    }
    return curve;
}

double discriminant(double alpha, double beta, double z) {
    auto [ps, qs] = eval_pq_star(alpha, beta, Cplx(z, 0));
    if (ps.branch == "imag" || qs.branch == "imag")
        return std::numeric_limits<double>::quiet_NaN();
    double pv = ps.value.real(), qv = qs.value.real();
    double b2 = beta * beta;
    double a = b2 * b2, b = b2 * (pv + qv), c = pv * qv + (b2 - alpha * alpha), d = pv;
    return 18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * a * c * c * c -
           27 * a * a * d * d;
}

namespace {

bool in_support(double alpha, double beta, double z) {
    if (std::abs(z) < 2 * std::abs(alpha + beta)) return true;
    if (std::abs(z - 2 * beta) < 2 * std::abs(alpha)) return true;
    double d = discriminant(alpha, beta, z);
    // negative discriminant of the real cubic <=> a conjugate pair of
    // roots <=> Im V > 0
    return !std::isnan(d) && d < 0;
}

}  // namespace

SupportDescription support(double alpha, double beta, double tol) {
    if (beta == 0) throw std::domain_error("support: beta must be nonzero");
    SupportDescription out;
    double bound = 2 * (std::abs(alpha) + std::abs(beta));
    double pad = bound * 1e-9 + 1e-12;
    const int n = 4096;
    double lo = -bound - pad, hi = bound + pad;
    auto ind = [&](double z) { return in_support(alpha, beta, z); };
    std::vector<double> xs(n + 1);
    std::vector<char> vals(n + 1);
    for (int i = 0; i <= n; ++i) {
        xs[i] = lo + (hi - lo) * i / n;
        vals[i] = ind(xs[i]);
    }
    double open_left = 0;
    bool inside = vals[0];
    if (inside) open_left = xs[0];
    auto bisect = [&](double a, double b, bool left_val) {
        for (int it = 0; it < 80 && b - a > tol * 1e-3; ++it) {
            double m = 0.5 * (a + b);
            if (ind(m) == left_val)
                a = m;
            else
                b = m;
        }
        return 0.5 * (a + b);
    };
    for (int i = 1; i <= n; ++i) {
        if (vals[i] == vals[i - 1]) continue;
        double e = bisect(xs[i - 1], xs[i], vals[i - 1]);
        if (!inside) {
            open_left = e;
            inside = true;
        } else {
            out.intervals.emplace_back(open_left, e);
            inside = false;
        }
        double d = discriminant(alpha, beta, e);
        out.endpoint_residuals.push_back(std::isnan(d) ? 0.0 : std::abs(d));
    }
    if (inside) out.intervals.emplace_back(open_left, xs[n]);
    // merge intervals separated by less than tolerance (root collisions)
    for (size_t i = 1; i < out.intervals.size();) {
        if (out.intervals[i].first - out.intervals[i - 1].second < 1e-7) {
            out.intervals[i - 1].second = out.intervals[i].second;
            out.intervals.erase(out.intervals.begin() + static_cast<long>(i));
        } else {
            ++i;
        }
    }
    // atoms: real poles of W, i.e. beta V + 1 = 0 with V real, outside the
    // intervals; scan the complement of the support
    auto outside = [&](double z) {
        for (const auto& [a, b] : out.intervals)
            if (z > a - 1e-9 && z < b + 1e-9) return false;
        return true;
    };
    int scan = 2000;
    double prev_val = std::numeric_limits<double>::infinity();
    double prev_z = 0;
    bool descending = false;
    for (int i = 0; i <= scan; ++i) {
        double z = (-bound - 1) + (2 * bound + 2) * i / scan;
        if (!outside(z)) {
            prev_val = std::numeric_limits<double>::infinity();
            continue;
        }
        Cplx v = v_function(alpha, beta, Cplx(z, 0));
        double g = std::abs(beta * v + 1.0);
        if (g < prev_val) {
            descending = true;
        } else if (descending && prev_val < 1e-4) {
            // local minimum at prev_z: numerical residue of W
            double z0 = prev_z;
            double eps = 1e-7;
            Cplx w = w_of_v(beta, v_function(alpha, beta, Cplx(z0, eps)));
            double mass = std::abs((Cplx(0, eps) * w).real());
            if (mass > 1e-8) out.atoms.emplace_back(z0, mass);
            descending = false;
        } else {
            descending = false;
        }
        prev_val = g;
        prev_z = z;
    }
    return out;
}

std::vector<double> density_moments(double alpha, double beta, int n_max,
                                    const SupportDescription& sup, int panels) {
    if (panels % 2) ++panels;
    std::vector<double> moments(static_cast<size_t>(n_max) + 1, 0.0);
    for (const auto& [a, b] : sup.intervals) {
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        // z = mid + half cos(theta); dz = -half sin(theta) dtheta; the
        // sin factor tames the sqrt edges at both endpoints
        double h = kPi / panels;
        for (int i = 0; i <= panels; ++i) {
            double theta = i * h;
            double w = (i == 0 || i == panels) ? 1 : (i % 2 ? 4 : 2);
            double z = mid + half * std::cos(theta);
            double d = density_at(alpha, beta, Cplx(z, 0), nullptr);
            double base = w * d * half * std::sin(theta) * h / 3;
            double zn = 1;
            for (int n = 0; n <= n_max; ++n) {
                moments[static_cast<size_t>(n)] += base * zn;
                zn *= z;
            }
        }
    }
    for (const auto& [z0, mass] : sup.atoms) {
        double zn = 1;
        for (int n = 0; n <= n_max; ++n) {
            moments[static_cast<size_t>(n)] += mass * zn;
            zn *= z0;
        }
    }
    return moments;
}

Cplx stieltjes_of_graph_series(const RatSeries& p, Cplx z, double norm_bound) {
    if (std::abs(z) <= norm_bound)
        throw std::domain_error("stieltjes_of_graph_series: |z| must exceed the norm bound");
    Cplx t = 1.0 / z;
    Cplx acc = 0;
    for (int i = p.order(); i >= 0; --i) acc = acc * t + to_double(p[i]);
    return -acc / z;
}

double operator_norm_bound(const RootedWeightedGraph& g) {
    std::vector<double> row(g.size(), 0);
    for (const auto& e : g.edges)
        row[e.src] += std::sqrt(to_double(e.weight.re) * to_double(e.weight.re) +
                                to_double(e.weight.im) * to_double(e.weight.im));
    double m = 0;
    for (double r : row) m = std::max(m, r);
    return m;
}

AppendixReport appendix_spectra() {
    AppendixReport rep;
    rep.gamma_n_interval = {-2.0, 2.0};
    rep.gamma_interval = {-2.0, 2.0};
    rep.gamma_atom_location = 17.0 / 4;
    // mass of the atom: z0 / F'(t0) at t0 = 4/17 where F(t) = 4t + (1-sqrt(1-4t^2))/2,
    // F'(t) = 4 + 2t/sqrt(1-4t^2); sqrt(1-4 t0^2) = 15/17 exactly
    Rational t0(4, 17), s(15, 17);
    Rational fprime = Rational(4) + 2 * t0 / s;
    rep.gamma_atom_mass_exact = Rational(17, 4) / fprime;
    // residue route: S(z) = -(1/z) / (1 - F(1/z)), m = -(z - z0) S(z) as z -> z0
    auto s_gamma = [](double z) {
        double t = 1 / z;
        double f = 4 * t + (1 - std::sqrt(1 - 4 * t * t)) / 2;
        return -(1 / z) / (1 - f);
    };
    double z0 = 17.0 / 4;
    double h1 = 1e-5, h2 = 1e-6;
    double m1 = -h1 * s_gamma(z0 + h1), m2 = -h2 * s_gamma(z0 + h2);
    rep.gamma_atom_mass_residue = m2 + (m2 - m1) * h2 / (h1 - h2);  // Richardson
    rep.gamma_tilde_endpoint = 13 * std::sqrt(3.0) / 6;
    Rational tt(12, 169);  // t^2 at the endpoint, t = 2 sqrt(3)/13
    Rational res = Rational(676) * tt * tt - Rational(48) * tt;
    rep.gamma_tilde_endpoint_residual = std::abs(to_double(res));
    rep.atom_outside_gamma_tilde = rep.gamma_atom_location > rep.gamma_tilde_endpoint;
    return rep;
}

}  // namespace kesten
