#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kesten/rational.hpp"

namespace kesten {

/// Finite directed graph with complex rational edge weights and a root.
/// Every undirected adjacency is represented by both directed edges;
/// parallel edges are kept distinct. A loop is stored as two directed
/// self-edges (one per traversal direction), so its full weight enters
/// the diagonal of the Laplace-type operator twice.
struct RootedWeightedGraph {
    struct Edge {
        int src;
        int dst;
        CRat weight;
    };

    std::vector<std::string> labels;
    std::vector<Edge> edges;
    int root = 0;

    int add_vertex(std::string label) {
        labels.push_back(std::move(label));
        return static_cast<int>(labels.size()) - 1;
    }
    void add_directed(int src, int dst, CRat w) { edges.push_back({src, dst, std::move(w)}); }
    /// Adds an undirected edge (or loop): both directed copies, same weight.
    void add_sym(int u, int v, const CRat& w) {
        add_directed(u, v, w);
        add_directed(v, u, w);
    }

    size_t size() const { return labels.size(); }

    bool symmetric_real() const;

    /// Merges parallel edges between each ordered vertex pair by summing
    /// weights. Leaves H unchanged.
    RootedWeightedGraph merged() const;
};

/// Metric ball of a (possibly infinite) graph: the induced subgraph on all
/// vertices within `radius` of the root. `boundary` flags the vertices at
/// exactly that distance, whose adjacency may be truncated.
struct BallTruncation {
    RootedWeightedGraph graph;
    int radius = 0;
    std::set<int> boundary;
};

// Rooted-graph operations. union identifies the two roots; attach_delta
// prepends a new root delta with directed weights w_out = w(delta,v),
// w_in = w(v,delta); star(g1,g2) = g1 united with (delta+g2) where the
// new edge hangs off g1's root.
RootedWeightedGraph graph_union(const RootedWeightedGraph& g1, const RootedWeightedGraph& g2);
RootedWeightedGraph attach_delta(const RootedWeightedGraph& g, const CRat& w_out, const CRat& w_in);
RootedWeightedGraph star(const RootedWeightedGraph& g1, const RootedWeightedGraph& g2,
                         const CRat& w_out, const CRat& w_in);

/// BFS distances from the root (edge count, weights ignored).
std::vector<int> bfs_distances(const RootedWeightedGraph& g);

/// Canonical encoding of a tree-like rooted weighted graph (tree after
/// dropping loops and merging parallel edges). Two graphs are isomorphic
/// as rooted weighted graphs iff their encodings are equal.
/// Throws if the graph is not tree-like.
std::string canonical_form(const RootedWeightedGraph& g);

/// Permutes vertices into deterministic BFS-from-root order (ties broken
/// by label), as used by the JSON serialization.
RootedWeightedGraph bfs_ordered(const RootedWeightedGraph& g);

std::string to_json(const RootedWeightedGraph& g);

}  // namespace kesten
