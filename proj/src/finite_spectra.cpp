#include "kesten/finite_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "kesten/builders.hpp"
#include "kesten/stieltjes.hpp"

namespace kesten {

EigenDecomposition eig(const RootedWeightedGraph& g) {
    if (!g.symmetric_real()) throw std::domain_error("eig: graph must be symmetric real");
    const auto n = static_cast<Eigen::Index>(g.size());
    if (n > 10000) throw std::domain_error("eig: graph too large for dense solve");
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges) h(e.dst, e.src) += to_double(e.weight.re);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eig: solver failed");
    EigenDecomposition out;
    out.size = g.size();
    out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    out.vectors.resize(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        out.vectors[static_cast<size_t>(i)].assign(solver.eigenvectors().col(i).data(),
                                                   solver.eigenvectors().col(i).data() + n);
    }
    return out;
}

AtomicSpectralMeasure vertex_measure(const EigenDecomposition& decomp, int vertex,
                                     double group_tol, double drop_tol) {
    if (vertex < 0 || static_cast<size_t>(vertex) >= decomp.size)
        throw std::domain_error("vertex_measure: vertex out of range");
    AtomicSpectralMeasure out;
    out.vertex = vertex;
    size_t i = 0;
    const size_t n = decomp.eigenvalues.size();
    while (i < n) {
        size_t j = i;
        double mass = 0, lam_acc = 0;
        while (j < n && decomp.eigenvalues[j] - decomp.eigenvalues[i] <= group_tol) {
            double a = decomp.vectors[j][static_cast<size_t>(vertex)];
            mass += a * a;
            lam_acc += decomp.eigenvalues[j];
            ++j;
        }
        double lam = lam_acc / static_cast<double>(j - i);
        if (mass < drop_tol)
            out.dropped.push_back(lam);
        else
            out.atoms.emplace_back(lam, mass);
        i = j;
    }
    return out;
}

namespace {

double hausdorff_to_intervals(const std::vector<double>& pts,
                              const std::vector<std::pair<double, double>>& intervals) {
    if (pts.empty() || intervals.empty()) return 0;
    auto dist_to_set = [&](double x) {
        double best = 1e300;
        for (const auto& [a, b] : intervals) {
            double d = x < a ? a - x : (x > b ? x - b : 0);
            best = std::min(best, d);
        }
        return best;
    };
    double h1 = 0;
    for (double x : pts) h1 = std::max(h1, dist_to_set(x));
    std::vector<double> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    auto dist_to_pts = [&](double x) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
        double best = 1e300;
        if (it != sorted.end()) best = std::min(best, *it - x);
        if (it != sorted.begin()) best = std::min(best, x - *(it - 1));
        return best;
    };
    double h2 = 0;
    for (const auto& [a, b] : intervals) {
        int m = 400;
        for (int k = 0; k <= m; ++k) h2 = std::max(h2, dist_to_pts(a + (b - a) * k / m));
    }
    return std::max(h1, h2);
}

}  // namespace

BallFlowReport ball_spectrum_flow(const Rational& alpha, const Rational& beta,
                                  const std::vector<int>& radii, bool delta_family) {
    BallFlowReport rep;
    SupportDescription sup = support(to_double(alpha), to_double(beta));
    rep.support_intervals = sup.intervals;
    for (int r : radii) {
        BallTruncation ball = delta_family ? delta_ball(alpha, beta, r) : upsilon_ball(alpha, beta, r);
        EigenDecomposition d = eig(ball.graph);
        BallFlowEntry entry;
        entry.radius = r;
        entry.vertices = ball.graph.size();
        entry.eigenvalues = d.eigenvalues;
        entry.hausdorff_to_support = hausdorff_to_intervals(d.eigenvalues, sup.intervals);
        auto mu = vertex_measure(d, ball.graph.root);
        for (const auto& [lam, mass] : mu.atoms) entry.root_max_atom = std::max(entry.root_max_atom, mass);
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

bool moment_crosscheck(const RootedWeightedGraph& g, int vertex, int n_max,
                       const MomentTable& reference, int* first_bad) {
    EigenDecomposition d = eig(g);
    AtomicSpectralMeasure mu = vertex_measure(d, vertex, 1e-8, 0.0);
    for (int n = 0; n <= n_max; ++n) {
        double acc = 0;
        for (const auto& [lam, mass] : mu.atoms) acc += std::pow(lam, n) * mass;
        if (std::abs(acc - to_double(reference.values[static_cast<size_t>(n)])) > 1e-9) {
            if (first_bad) *first_bad = n;
            return false;
        }
    }
    return true;
}

}  // namespace kesten
