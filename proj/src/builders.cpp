#include "kesten/builders.hpp"

#include <deque>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace kesten {

namespace {

// Generic metric-ball builder over a lazily expanded infinite graph.
// expand(label) returns the full directed out-adjacency of a vertex,
// one entry per directed edge (loops appear once per direction).
using Expander =
    std::function<std::vector<std::pair<std::string, CRat>>(const std::string&)>;

BallTruncation lazy_ball(const std::string& root_label, const Expander& expand, int radius) {
    if (radius < 0) throw std::domain_error("ball radius must be >= 0");
    BallTruncation ball;
    ball.radius = radius;
    auto& g = ball.graph;
    std::unordered_map<std::string, int> index;
    std::vector<int> dist;
    std::deque<int> queue;
    index[root_label] = g.add_vertex(root_label);
    dist.push_back(0);
    queue.push_back(0);
    std::vector<std::vector<std::pair<std::string, CRat>>> adjacency;
    adjacency.push_back(expand(root_label));
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (dist[v] == radius) continue;
        for (const auto& [lbl, w] : adjacency[v]) {
            if (index.count(lbl)) continue;
            int u = g.add_vertex(lbl);
            index[lbl] = u;
            dist.push_back(dist[v] + 1);
            adjacency.push_back(expand(lbl));
            queue.push_back(u);
        }
    }
    for (int v = 0; v < static_cast<int>(g.size()); ++v) {
        if (dist[v] == radius) ball.boundary.insert(v);
        for (const auto& [lbl, w] : adjacency[v]) {
            auto it = index.find(lbl);
            if (it != index.end()) g.add_directed(v, it->second, w);
        }
    }
    return ball;
}

}  // namespace

BallTruncation schreier_ball(const Rational& alpha, const Rational& beta,
                             const DyadicRational& x, int radius) {
    if (!x.is_interior()) throw std::domain_error("schreier_ball: x must lie strictly inside (0,1)");
    CRat wa(alpha), wb(beta);
    Expander expand = [&](const std::string& label) {
        // recover the dyadic point from its label "num/2^exp"
        auto caret = label.find("/2^");
        DyadicRational y = DyadicRational::make(Int(label.substr(0, caret)),
                                                static_cast<unsigned>(std::stoul(label.substr(caret + 3))));
        std::vector<std::pair<std::string, CRat>> out;
        out.emplace_back(gen_a(y).str(), wa);
        out.emplace_back(gen_a_inv(y).str(), wa);
        out.emplace_back(gen_b(y).str(), wb);
        out.emplace_back(gen_b_inv(y).str(), wb);
        return out;
    };
    return lazy_ball(x.str(), expand, radius);
}

RootedWeightedGraph phi_ray(const Rational& alpha, const Rational& beta, int length,
                            bool with_root_loop) {
    if (length < 1) throw std::domain_error("phi_ray: length must be >= 1");
    RootedWeightedGraph g;
    for (int i = 1; i <= length; ++i) g.add_vertex("phi" + std::to_string(i));
    g.root = 0;
    CRat wa(alpha), wb(beta);
    for (int i = 0; i + 1 < length; ++i) g.add_sym(i, i + 1, wa);
    for (int i = 0; i < length; ++i)
        if (i > 0 || with_root_loop) g.add_sym(i, i, wb);
    return g;
}

RootedWeightedGraph psi_ray(const Rational& alpha, const Rational& beta, int length) {
    if (length < 1) throw std::domain_error("psi_ray: length must be >= 1");
    RootedWeightedGraph g;
    for (int i = 1; i <= length; ++i) g.add_vertex("psi-" + std::to_string(i));
    g.root = 0;
    CRat wa(alpha), wb(beta);
    for (int i = 0; i + 1 < length; ++i) {
        g.add_sym(i, i + 1, wa);
        g.add_sym(i, i + 1, wb);
    }
    return g;
}

namespace {

// Shared expansion for Delta and Upsilon. Hub vertices carry the
// substitution: each hub h has its own Phi ray (h.P2, h.P3, ...), a beta
// edge to a child hub h.A, an alpha edge to h.M1 heading a Psi ray
// (h.M1, h.M2, ...), and h.M1 has a beta edge to a second child hub h.B.
// For Upsilon the root's A-child is replaced by a beta loop at the root
// (the root is Phi-tilde's vertex 1).
Expander self_similar_expander(const Rational& alpha, const Rational& beta, bool upsilon) {
    CRat wa(alpha), wb(beta);
    return [wa, wb, upsilon](const std::string& label) {
        std::vector<std::pair<std::string, CRat>> out;
        auto dot = label.rfind('.');
        std::string tail = dot == std::string::npos ? "" : label.substr(dot + 1);
        std::string head = dot == std::string::npos ? "" : label.substr(0, dot);
        auto is_hub = [](const std::string& t) {
            return t.empty() || t == "A" || t == "B";
        };
        if (is_hub(tail)) {
            out.emplace_back(label + ".P2", wa);
            out.emplace_back(label + ".M1", wa);
            if (upsilon && label.empty()) {
                out.emplace_back(label, wb);  // loop, once per direction
                out.emplace_back(label, wb);
            } else {
                out.emplace_back(label + ".A", wb);
            }
            if (tail == "A") out.emplace_back(head, wb);
            if (tail == "B") out.emplace_back(head + ".M1", wb);
            return out;
        }
        int k = std::stoi(tail.substr(1));
        std::string base = head + ".";
        if (tail[0] == 'P') {
            out.emplace_back(k == 2 ? head : base + "P" + std::to_string(k - 1), wa);
            out.emplace_back(base + "P" + std::to_string(k + 1), wa);
            out.emplace_back(label, wb);
            out.emplace_back(label, wb);
        } else {  // Psi vertex M k
            if (k == 1) {
                out.emplace_back(head, wa);
                out.emplace_back(label.substr(0, dot) + ".B", wb);
            } else {
                out.emplace_back(base + "M" + std::to_string(k - 1), wa);
                out.emplace_back(base + "M" + std::to_string(k - 1), wb);
            }
            out.emplace_back(base + "M" + std::to_string(k + 1), wa);
            out.emplace_back(base + "M" + std::to_string(k + 1), wb);
        }
        return out;
    };
}

}  // namespace

BallTruncation delta_ball(const Rational& alpha, const Rational& beta, int depth) {
    return lazy_ball("", self_similar_expander(alpha, beta, false), depth);
}

BallTruncation upsilon_ball(const Rational& alpha, const Rational& beta, int depth) {
    return lazy_ball("", self_similar_expander(alpha, beta, true), depth);
}

BallTruncation appendix_graph(AppendixKind kind, int radius) {
    CRat one(Rational(1));
    if (kind == AppendixKind::gamma_n || kind == AppendixKind::gamma_loops) {
        bool loops = kind == AppendixKind::gamma_loops;
        Expander expand = [one, loops](const std::string& label) {
            int k = std::stoi(label);
            std::vector<std::pair<std::string, CRat>> out;
            if (k > 1) out.emplace_back(std::to_string(k - 1), one);
            out.emplace_back(std::to_string(k + 1), one);
            if (k == 1 && loops)  // two loops at vertex 1, each in both directions
                for (int i = 0; i < 4; ++i) out.emplace_back(label, one);
            return out;
        };
        return lazy_ball("1", expand, radius);
    }
    // gamma_tilde: 4-regular tree vertices are strings over {0,1,2,3}
    // ("t", "t0", ...), each with a unit ray "t.r2", "t.r3", ... attached.
    Expander expand = [one](const std::string& label) {
        std::vector<std::pair<std::string, CRat>> out;
        auto dot = label.find(".r");
        if (dot == std::string::npos) {
            std::string t = label.substr(1);  // strip leading "t"
            if (t.empty()) {
                for (char c : {'0', '1', '2', '3'}) out.emplace_back(label + c, one);
            } else {
                out.emplace_back("t" + t.substr(0, t.size() - 1), one);
                for (char c : {'0', '1', '2'}) out.emplace_back(label + c, one);
            }
            out.emplace_back(label + ".r2", one);
        } else {
            int k = std::stoi(label.substr(dot + 2));
            std::string tree = label.substr(0, dot);
            out.emplace_back(k == 2 ? tree : tree + ".r" + std::to_string(k - 1), one);
            out.emplace_back(tree + ".r" + std::to_string(k + 1), one);
        }
        return out;
    };
    return lazy_ball("t", expand, radius);
}

RootedWeightedGraph finite_example(FiniteExample kind) {
    if (kind == FiniteExample::path5) {
        RootedWeightedGraph g;
        for (int i = -2; i <= 2; ++i) g.add_vertex(std::to_string(i));
        g.root = 2;  // vertex labeled "0"
        CRat one(Rational(1));
        for (int i = 0; i < 4; ++i) g.add_sym(i, i + 1, one);
        return g;
    }
    // hanoi2: generators a=(01)(id,id,a), b=(02)(id,b,id), c=(12)(c,id,id)
    // acting on words of length 2 over {0,1,2}; weight 1/3 per generator.
    auto act = [](char g, std::string w) {
        std::function<std::string(char, std::string)> rec = [&rec](char gen, std::string u) -> std::string {
            if (u.empty()) return u;
            char x = u[0];
            auto swap2 = [&](char p, char q) {
                if (x == p) u[0] = q;
                else if (x == q) u[0] = p;
                else u = x + rec(gen, u.substr(1));
                return u;
            };
            switch (gen) {
                case 'a': return swap2('0', '1');
                case 'b': return swap2('0', '2');
                default: return swap2('1', '2');
            }
        };
        return rec(g, std::move(w));
    };
    RootedWeightedGraph g;
    std::unordered_map<std::string, int> index;
    for (char x : {'0', '1', '2'})
        for (char y : {'0', '1', '2'}) {
            std::string w{x, y};
            index[w] = g.add_vertex(w);
        }
    g.root = index["00"];
    CRat third(Rational(1, 3));
    for (const auto& [w, v] : index)
        for (char gen : {'a', 'b', 'c'}) g.add_directed(v, index[act(gen, w)], third);
    return g;
}

}  // namespace kesten
