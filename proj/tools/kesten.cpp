#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kesten/asymptotics.hpp"
#include "kesten/builders.hpp"
#include "kesten/finite_spectra.hpp"
#include "kesten/series.hpp"
#include "kesten/stieltjes.hpp"

namespace {

using namespace kesten;

// fixed 15-significant-digit formatting so identical configs give
// byte-identical output
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

void write_out(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path);
    if (!f) throw CLI::ValidationError("--out", "cannot open output file");
    f << content;
}

struct CommonOpts {
    std::string alpha = "1/4", beta = "1/4";
    std::string format = "json";
    std::string out = "-";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_ab = true) {
    if (with_ab) {
        cmd->add_option("--alpha", o.alpha, "weight of a, a^-1 (rational p/q or decimal)");
        cmd->add_option("--beta", o.beta, "weight of b, b^-1 (rational p/q or decimal)");
    }
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out, "output path, - for stdout");
}

int run_moments(const CommonOpts& o, int order) {
    Rational alpha = parse_rational(o.alpha), beta = parse_rational(o.beta);
    auto [f, p] = upsilon_series(alpha, beta, order);
    auto ball = schreier_ball(alpha, beta, DyadicRational(Int(1), 1), (order + 1) / 2);
    MomentTable brute = moments_bruteforce(ball, order);
    bool match = true;
    for (int n = 0; n <= order; ++n)
        if (p[n] != brute.values[static_cast<size_t>(n)]) match = false;
    std::ostringstream os;
    if (o.format == "json") {
        os << "{\n  \"alpha\": \"" << to_string(alpha) << "\",\n  \"beta\": \"" << to_string(beta)
           << "\",\n  \"order\": " << order << ",\n  \"verdict\": \"" << (match ? "match" : "mismatch")
           << "\",\n  \"rows\": [\n";
        for (int n = 0; n <= order; ++n) {
            os << "    {\"n\": " << n << ", \"series\": \"" << to_string(p[n]) << "\", \"bruteforce\": \""
               << to_string(brute.values[static_cast<size_t>(n)]) << "\"}" << (n < order ? "," : "") << "\n";
        }
        os << "  ]\n}\n";
    } else {
        os << "n,series,bruteforce,match\n";
        for (int n = 0; n <= order; ++n)
            os << n << "," << to_string(p[n]) << "," << to_string(brute.values[static_cast<size_t>(n)])
               << "," << (p[n] == brute.values[static_cast<size_t>(n)] ? 1 : 0) << "\n";
    }
    write_out(o.out, os.str());
    return match ? 0 : 2;
}

int run_density(const CommonOpts& o, int grid_size, double zmin, double zmax, bool use_ladder) {
    double alpha = to_double(parse_rational(o.alpha)), beta = to_double(parse_rational(o.beta));
    if (zmin == 0 && zmax == 0) {
        double b = 2 * (std::abs(alpha) + std::abs(beta));
        zmin = -b;
        zmax = b;
    }
    std::vector<double> grid;
    for (int i = 0; i < grid_size; ++i)
        grid.push_back(grid_size == 1 ? zmin : zmin + (zmax - zmin) * i / (grid_size - 1));
    std::vector<double> ladder;
    if (use_ladder) ladder = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    SpectralDensityCurve curve = density_curve(alpha, beta, grid, ladder);
    bool flagged = false;
    std::ostringstream os;
    if (o.format == "json") {
        os << "{\n  \"alpha\": " << fmt(alpha) << ",\n  \"beta\": " << fmt(beta) << ",\n  \"samples\": [\n";
        for (size_t i = 0; i < curve.samples.size(); ++i) {
            const auto& s = curve.samples[i];
            flagged = flagged || s.flagged;
            os << "    {\"z\": " << fmt(s.z) << ", \"density\": " << fmt(s.density) << ", \"re_v\": "
               << fmt(s.v.real()) << ", \"im_v\": " << fmt(s.v.imag()) << ", \"flagged\": "
               << (s.flagged ? "true" : "false") << "}" << (i + 1 < curve.samples.size() ? "," : "") << "\n";
        }
        os << "  ]\n}\n";
    } else {
        os << "z,density,re_v,im_v,flagged\n";
        for (const auto& s : curve.samples) {
            flagged = flagged || s.flagged;
            os << fmt(s.z) << "," << fmt(s.density) << "," << fmt(s.v.real()) << "," << fmt(s.v.imag())
               << "," << (s.flagged ? 1 : 0) << "\n";
        }
    }
    write_out(o.out, os.str());
    return flagged ? 3 : 0;
}

int run_support(const CommonOpts& o) {
    double alpha = to_double(parse_rational(o.alpha)), beta = to_double(parse_rational(o.beta));
    SupportDescription sup = support(alpha, beta);
    std::ostringstream os;
    if (o.format == "json") {
        os << "{\n  \"alpha\": " << fmt(alpha) << ",\n  \"beta\": " << fmt(beta) << ",\n  \"intervals\": [";
        for (size_t i = 0; i < sup.intervals.size(); ++i)
            os << (i ? ", " : "") << "[" << fmt(sup.intervals[i].first) << ", "
               << fmt(sup.intervals[i].second) << "]";
        os << "],\n  \"atoms\": [";
        for (size_t i = 0; i < sup.atoms.size(); ++i)
            os << (i ? ", " : "") << "{\"location\": " << fmt(sup.atoms[i].first) << ", \"mass\": "
               << fmt(sup.atoms[i].second) << "}";
        os << "],\n  \"endpoint_residuals\": [";
        for (size_t i = 0; i < sup.endpoint_residuals.size(); ++i)
            os << (i ? ", " : "") << fmt(sup.endpoint_residuals[i]);
        os << "],\n  \"exact\": " << (sup.exact ? "true" : "false") << "\n}\n";
    } else {
        os << "kind,lo_or_location,hi_or_mass\n";
        for (const auto& [a, b] : sup.intervals) os << "interval," << fmt(a) << "," << fmt(b) << "\n";
        for (const auto& [a, b] : sup.atoms) os << "atom," << fmt(a) << "," << fmt(b) << "\n";
    }
    write_out(o.out, os.str());
    return sup.exact ? 0 : 3;
}

int run_asymptotics(const CommonOpts& o, int n_max, int order) {
    EdgeConstants ec = edge_constants();
    RootSelectionReport rs = root_selection_check(order);
    ReturnFitReport rf = return_probability_fit(n_max);
    std::vector<double> s_grid;
    for (double s = 1e-3; s <= 0.1000001; s *= 1.258925411794167) s_grid.push_back(s);
    IntegratedDensityReport id = integrated_density_edge(s_grid);
    std::ostringstream os;
    if (o.format == "json") {
        os << "{\n  \"edge_constants\": {\"c1\": " << fmt(ec.c1) << ", \"c2\": " << fmt(ec.c2)
           << ", \"c3\": " << fmt(ec.c3) << ", \"c4\": " << fmt(ec.c4) << ", \"ct1\": " << fmt(ec.ct1)
           << ", \"ct2\": " << fmt(ec.ct2) << ", \"ct3\": " << fmt(ec.ct3) << ", \"ct4\": " << fmt(ec.ct4)
           << "},\n";
        os << "  \"root_selection\": {\"coefficients_nonnegative\": "
           << (rs.coefficients_nonnegative ? "true" : "false")
           << ", \"err_plus_ratio\": " << fmt(rs.err_plus_ratio) << ", \"err_minus_ratio\": "
           << fmt(rs.err_minus_ratio) << "},\n";
        os << "  \"return_fit\": {\"n_max\": " << n_max << ", \"exponent_hat\": " << fmt(rf.exponent_hat)
           << ", \"a_hat\": " << fmt(rf.a_hat) << ", \"b_hat\": " << fmt(rf.b_hat)
           << ", \"stabilization\": " << fmt(rf.stabilization) << ", \"paper_constant\": "
           << fmt(rf.paper_constant) << ", \"transfer_constant\": " << fmt(rf.transfer_constant) << "},\n";
        os << "  \"integrated_density\": {\"exponent_hat\": " << fmt(id.exponent_hat) << ", \"c_hat\": "
           << fmt(id.c_hat) << ", \"paper_constant\": " << fmt(id.paper_constant) << "}\n}\n";
    } else {
        os << "name,value\n";
        os << "c1," << fmt(ec.c1) << "\nc2," << fmt(ec.c2) << "\nc3," << fmt(ec.c3) << "\nc4,"
           << fmt(ec.c4) << "\n";
        os << "ct1," << fmt(ec.ct1) << "\nct2," << fmt(ec.ct2) << "\nct3," << fmt(ec.ct3) << "\nct4,"
           << fmt(ec.ct4) << "\n";
        os << "return_exponent," << fmt(rf.exponent_hat) << "\nreturn_a_hat," << fmt(rf.a_hat) << "\n";
        os << "intdens_exponent," << fmt(id.exponent_hat) << "\nintdens_c_hat," << fmt(id.c_hat) << "\n";
    }
    write_out(o.out, os.str());
    return 0;
}

int run_finite(const CommonOpts& o, const std::string& example) {
    RootedWeightedGraph g =
        finite_example(example == "path5" ? FiniteExample::path5 : FiniteExample::hanoi2);
    EigenDecomposition d = eig(g);
    std::ostringstream os;
    if (o.format == "json") {
        os << "{\n  \"example\": \"" << example << "\",\n  \"eigenvalues\": [";
        for (size_t i = 0; i < d.eigenvalues.size(); ++i)
            os << (i ? ", " : "") << fmt(d.eigenvalues[i]);
        os << "],\n  \"vertex_measures\": [\n";
        for (size_t v = 0; v < g.size(); ++v) {
            AtomicSpectralMeasure mu = vertex_measure(d, static_cast<int>(v));
            os << "    {\"vertex\": \"" << g.labels[v] << "\", \"atoms\": [";
            for (size_t i = 0; i < mu.atoms.size(); ++i)
                os << (i ? ", " : "") << "{\"lambda\": " << fmt(mu.atoms[i].first) << ", \"mass\": "
                   << fmt(mu.atoms[i].second) << "}";
            os << "]}" << (v + 1 < g.size() ? "," : "") << "\n";
        }
        os << "  ]\n}\n";
    } else {
        os << "vertex,lambda,mass\n";
        for (size_t v = 0; v < g.size(); ++v) {
            AtomicSpectralMeasure mu = vertex_measure(d, static_cast<int>(v));
            for (const auto& [lam, mass] : mu.atoms)
                os << g.labels[v] << "," << fmt(lam) << "," << fmt(mass) << "\n";
        }
    }
    write_out(o.out, os.str());
    return 0;
}

int run_appendix(const CommonOpts& o, int order) {
    AppendixReport rep = appendix_spectra();
    AppendixSeries ser = appendix_series(order);
    std::ostringstream os;
    if (o.format == "json") {
        os << "{\n  \"gamma_n_interval\": [" << fmt(rep.gamma_n_interval.first) << ", "
           << fmt(rep.gamma_n_interval.second) << "],\n";
        os << "  \"gamma_interval\": [" << fmt(rep.gamma_interval.first) << ", "
           << fmt(rep.gamma_interval.second) << "],\n";
        os << "  \"gamma_atom\": {\"location\": " << fmt(rep.gamma_atom_location) << ", \"mass_exact\": \""
           << to_string(rep.gamma_atom_mass_exact) << "\", \"mass_residue\": "
           << fmt(rep.gamma_atom_mass_residue) << "},\n";
        os << "  \"gamma_tilde_endpoint\": " << fmt(rep.gamma_tilde_endpoint)
           << ",\n  \"gamma_tilde_endpoint_residual\": " << fmt(rep.gamma_tilde_endpoint_residual)
           << ",\n  \"atom_outside_gamma_tilde\": " << (rep.atom_outside_gamma_tilde ? "true" : "false")
           << ",\n";
        os << "  \"f_gamma_n_series\": [";
        for (int n = 0; n <= order; ++n) os << (n ? ", " : "") << "\"" << to_string(ser.f_gamma_n[n]) << "\"";
        os << "],\n  \"f_gamma_tilde_series\": [";
        for (int n = 0; n <= order; ++n)
            os << (n ? ", " : "") << "\"" << to_string(ser.f_gamma_tilde[n]) << "\"";
        os << "]\n}\n";
    } else {
        os << "name,value\n";
        os << "gamma_atom_location," << fmt(rep.gamma_atom_location) << "\n";
        os << "gamma_atom_mass," << to_string(rep.gamma_atom_mass_exact) << "\n";
        os << "gamma_tilde_endpoint," << fmt(rep.gamma_tilde_endpoint) << "\n";
    }
    write_out(o.out, os.str());
    std::cout << "sigma(Gamma) not a subset of sigma(GammaTilde): " << fmt(rep.gamma_atom_location)
              << " > " << fmt(rep.gamma_tilde_endpoint) << "\n";
    return rep.atom_outside_gamma_tilde ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectra and Kesten spectral measures of weighted Schreier graphs of Thompson's group F"};
    app.require_subcommand(1);

    CommonOpts mo;
    int m_order = 30;
    auto* moments = app.add_subcommand("moments", "exact return moments: series vs path sums");
    add_common(moments, mo);
    moments->add_option("--order", m_order, "highest moment")->check(CLI::NonNegativeNumber);

    CommonOpts dn;
    int d_grid = 2001;
    double d_zmin = 0, d_zmax = 0;
    bool d_ladder = false;
    auto* density = app.add_subcommand("density", "spectral density on a real grid");
    add_common(density, dn);
    density->add_option("--grid", d_grid, "number of grid points")->check(CLI::PositiveNumber);
    density->add_option("--zmin", d_zmin, "grid start");
    density->add_option("--zmax", d_zmax, "grid end");
    density->add_flag("--verify-ladder", d_ladder, "verify boundary limit along an eps ladder");

    CommonOpts so;
    auto* sup = app.add_subcommand("support", "support intervals and atoms");
    add_common(sup, so);

    CommonOpts ao;
    int a_nmax = 2000, a_order = 40;
    auto* asym = app.add_subcommand("asymptotics", "edge constants and asymptotic fits (alpha=beta=1/4)");
    add_common(asym, ao, false);
    asym->add_option("--nmax", a_nmax, "moment fit window end");
    asym->add_option("--order", a_order, "series order for root selection check");

    CommonOpts fo;
    std::string f_example = "path5";
    auto* fin = app.add_subcommand("finite", "finite example spectra and vertex measures");
    add_common(fin, fo, false);
    fin->add_option("--example", f_example, "path5 or hanoi2")
        ->check(CLI::IsMember({"path5", "hanoi2"}));

    CommonOpts po;
    int p_order = 20;
    auto* appx = app.add_subcommand("appendix", "counterexample graph spectra");
    add_common(appx, po, false);
    appx->add_option("--order", p_order, "series order in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage problems map to exit 1
    }
    try {
        if (*moments) return run_moments(mo, m_order);
        if (*density) return run_density(dn, d_grid, d_zmin, d_zmax, d_ladder);
        if (*sup) return run_support(so);
        if (*asym) return run_asymptotics(ao, a_nmax, a_order);
        if (*fin) return run_finite(fo, f_example);
        if (*appx) return run_appendix(po, p_order);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "diagnostic: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
