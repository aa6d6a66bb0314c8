#pragma once

#include "matglue/game.hpp"
#include "matglue/tree_pres.hpp"

namespace matglue {

/// An undirected multigraph with named edges (loops allowed).
struct Graph {
    struct Edge {
        EdgeId id;
        int u = 0;
        int v = 0;
    };
    int vertex_count = 0;
    std::vector<Edge> edges;

    static Graph make(int vertices, const std::vector<std::pair<int, int>>& ends);
    const Edge& edge(const EdgeId& id) const;
    EdgeSet edge_ids() const;
    bool connected() const;
};

/// Circuits of the finite cycle matroid: minimal nonempty even edge sets.
std::set<EdgeSet> cycle_circuits(const Graph& g, const Budget& budget = {});
/// Bonds: minimal nonempty cuts.
std::set<EdgeSet> graph_bonds(const Graph& g, const Budget& budget = {});

/// Subdivides every edge once: e becomes e:a, e:b through a fresh vertex.
/// Available as preprocessing; nothing here forces its use.
Graph subdivide(const Graph& g);

/// A tree decomposition in which every graph edge is assigned to a unique
/// part containing both its ends.
struct TreeDecomposition {
    int node_count = 0;
    std::vector<std::pair<int, int>> tree_edges;
    std::vector<std::set<int>> parts;
    std::map<EdgeId, int> edge_part;
};

/// Standard tree-decomposition axioms plus the unique-part edge condition.
/// `require_connected_parts` additionally demands connected parts.
void validate_td(const Graph& g, const TreeDecomposition& td, bool require_connected_parts = false);

/// A deterministic valid decomposition: two parts across the first 1- or
/// 2-vertex separator (when one exists), otherwise a single part.
TreeDecomposition generate_td(const Graph& g);

struct TorsoEdge {
    EdgeId id;
    int u = 0;
    int v = 0;
    bool dummy = false;
};

/// A part with one dummy edge per neighbor part and unordered pair of
/// shared vertices.
struct Torso {
    int node = 0;
    std::set<int> vertices;
    std::vector<TorsoEdge> edges;

    EdgeSet edge_ids() const;
};

Torso torso_build(const Graph& g, const TreeDecomposition& td, int t);

/// A subtree with per-torso even-degree sets (or cuts) matching across
/// shared dummy edges.
struct PreCircuit {
    std::set<int> subtree;
    std::map<int, EdgeSet> assign;
    EdgeSet underlying;  // union minus the dummy edges
};

std::vector<PreCircuit> enumerate_precircuits(const Graph& g, const TreeDecomposition& td,
                                              bool cocircuit, const Budget& budget = {});

/// Minimal nonempty underlying sets of the enumerated family.
std::set<EdgeSet> minimal_underlying(const std::vector<PreCircuit>& family);

/// The GF(2) bridge: each node carries the cycle/cut space pair of its
/// torso; shared ids are the dummy edges.
TreeOfPresentations td_to_presentations(const Graph& g, const TreeDecomposition& td);

/// The torso game: Sarah plays Q-avoiding even sets down the rooted
/// decomposition, Colin challenges with the exact nonempty dummy trace.
struct GraphGame {
    PositionalGame game;
    struct Meta {
        int kind = 0;  // 0 start, 1 even-set, 2 challenge
        int node = -1;
        EdgeSet payload;
    };
    std::vector<Meta> meta;
};

GraphGame build_graph_game(const Graph& g, const TreeDecomposition& td, const EdgeId& e,
                           const EdgeSet& p, const EdgeSet& q, const Budget& budget = {});

}  // namespace matglue
