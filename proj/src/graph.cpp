#include "kesten/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace kesten {

bool RootedWeightedGraph::symmetric_real() const {
    // multiset of directed weights u->v must equal that of v->u, all real
    std::map<std::pair<int, int>, std::vector<Rational>> fwd;
    for (const auto& e : edges) {
        if (!e.weight.is_real()) return false;
        fwd[{e.src, e.dst}].push_back(e.weight.re);
    }
    for (auto& [key, ws] : fwd) std::sort(ws.begin(), ws.end());
    for (const auto& [key, ws] : fwd) {
        auto it = fwd.find({key.second, key.first});
        if (it == fwd.end() || it->second != ws) return false;
    }
    return true;
}

RootedWeightedGraph RootedWeightedGraph::merged() const {
    RootedWeightedGraph out;
    out.labels = labels;
    out.root = root;
    std::map<std::pair<int, int>, CRat> sums;
    for (const auto& e : edges) sums[{e.src, e.dst}] += e.weight;
    for (const auto& [key, w] : sums) out.add_directed(key.first, key.second, w);
    return out;
}

RootedWeightedGraph graph_union(const RootedWeightedGraph& g1, const RootedWeightedGraph& g2) {
    RootedWeightedGraph out = g1;
    const int n1 = static_cast<int>(g1.size());
    // g2's vertices append after g1's, with g2.root mapped onto g1.root
    std::vector<int> map2(g2.size());
    int next = n1;
    for (int v = 0; v < static_cast<int>(g2.size()); ++v) {
        if (v == g2.root) {
            map2[v] = g1.root;
        } else {
            map2[v] = next++;
            out.labels.push_back(g2.labels[v]);
        }
    }
    for (const auto& e : g2.edges) out.add_directed(map2[e.src], map2[e.dst], e.weight);
    return out;
}

RootedWeightedGraph attach_delta(const RootedWeightedGraph& g, const CRat& w_out, const CRat& w_in) {
    RootedWeightedGraph out = g;
    int delta = out.add_vertex("delta");
    out.add_directed(delta, g.root, w_out);
    out.add_directed(g.root, delta, w_in);
    out.root = delta;
    return out;
}

RootedWeightedGraph star(const RootedWeightedGraph& g1, const RootedWeightedGraph& g2,
                         const CRat& w_out, const CRat& w_in) {
    return graph_union(g1, attach_delta(g2, w_out, w_in));
}

std::vector<int> bfs_distances(const RootedWeightedGraph& g) {
    std::vector<std::vector<int>> adj(g.size());
    for (const auto& e : g.edges)
        if (e.src != e.dst) adj[e.src].push_back(e.dst);
    std::vector<int> dist(g.size(), -1);
    std::deque<int> q{g.root};
    dist[g.root] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
    }
    return dist;
}

namespace {

std::string encode_weights(std::vector<Rational> ws) {
    std::sort(ws.begin(), ws.end());
    std::string s;
    for (const auto& w : ws) s += to_string(w) + ",";
    return s;
}

}  // namespace

std::string canonical_form(const RootedWeightedGraph& g) {
    if (!g.symmetric_real()) throw std::domain_error("canonical_form: weights must be symmetric real");
    // collapse to neighbor weight-multisets; loops kept separately
    std::vector<std::map<int, std::vector<Rational>>> nbr(g.size());
    std::vector<std::vector<Rational>> loops(g.size());
    for (const auto& e : g.edges) {
        if (e.src == e.dst)
            loops[e.src].push_back(e.weight.re);
        else
            nbr[e.src][e.dst].push_back(e.weight.re);
    }
    auto dist = bfs_distances(g);
    for (int d : dist)
        if (d < 0) throw std::domain_error("canonical_form: graph not connected from root");
    // tree-likeness: every non-root vertex has exactly one strictly closer neighbor
    std::vector<std::vector<int>> children(g.size());
    for (int v = 0; v < static_cast<int>(g.size()); ++v) {
        if (v == g.root) continue;
        int parent = -1;
        for (const auto& [w, ws] : nbr[v]) {
            if (dist[w] == dist[v] - 1) {
                if (parent >= 0) throw std::domain_error("canonical_form: graph not tree-like");
                parent = w;
            } else if (dist[w] == dist[v] && w != v) {
                throw std::domain_error("canonical_form: graph not tree-like");
            }
        }
        if (parent < 0) throw std::domain_error("canonical_form: graph not tree-like");
        children[parent].push_back(v);
    }
    // bottom-up encoding; child order fixed by sorting encodings
    std::vector<std::string> enc(g.size());
    std::vector<int> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] > dist[b]; });
    for (int v : order) {
        std::vector<std::string> parts;
        for (int c : children[v]) parts.push_back("<" + encode_weights(nbr[v][c]) + "|" + enc[c] + ">");
        std::sort(parts.begin(), parts.end());
        enc[v] = "(" + encode_weights(loops[v]) + ";";
        for (auto& p : parts) enc[v] += p;
        enc[v] += ")";
    }
    return enc[g.root];
}

RootedWeightedGraph bfs_ordered(const RootedWeightedGraph& g) {
    std::vector<std::vector<int>> adj(g.size());
    for (const auto& e : g.edges)
        if (e.src != e.dst) adj[e.src].push_back(e.dst);
    for (auto& a : adj) {
        std::sort(a.begin(), a.end(),
                  [&](int x, int y) { return g.labels[x] < g.labels[y]; });
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    std::vector<int> perm;  // perm[new] = old
    std::vector<char> seen(g.size(), 0);
    std::deque<int> q{g.root};
    seen[g.root] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        perm.push_back(v);
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                q.push_back(w);
            }
    }
    for (int v = 0; v < static_cast<int>(g.size()); ++v)
        if (!seen[v]) throw std::domain_error("bfs_ordered: graph not connected from root");
    std::vector<int> inv(g.size());
    for (int i = 0; i < static_cast<int>(perm.size()); ++i) inv[perm[i]] = i;
    RootedWeightedGraph out;
    out.root = 0;
    for (int i = 0; i < static_cast<int>(perm.size()); ++i) out.labels.push_back(g.labels[perm[i]]);
    for (const auto& e : g.edges) out.add_directed(inv[e.src], inv[e.dst], e.weight);
    std::sort(out.edges.begin(), out.edges.end(), [](const auto& a, const auto& b) {
        return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
    });
    return out;
}

std::string to_json(const RootedWeightedGraph& g) {
    RootedWeightedGraph o = bfs_ordered(g);
    nlohmann::json j;
    j["vertices"] = o.labels;
    j["root"] = o.root;
    auto edges = nlohmann::json::array();
    for (const auto& e : o.edges) {
        edges.push_back({{"src", e.src},
                         {"dst", e.dst},
                         {"re", to_double(e.weight.re)},
                         {"im", to_double(e.weight.im)}});
    }
    j["edges"] = edges;
    return j.dump();
}

}  // namespace kesten
