#pragma once

#include <random>

#include "matglue/tree_pres.hpp"

namespace matglue::fixtures {

inline SparseVec vec(const Field& f, std::initializer_list<std::pair<EdgeId, int>> entries) {
    SparseVec v(f);
    for (const auto& [e, n] : entries) v.set(e, f.from_int(n));
    return v;
}

/// Triangle: one 3-circuit over GF(2) on (a, b, c).
inline Presentation tri() {
    Field f2 = Field::gf(2);
    Ground g({"a", "b", "c"});
    return Presentation::span_vectors(f2, g, {vec(f2, {{"a", 1}, {"b", 1}, {"c", 1}})});
}

/// A triangle relabeled onto an arbitrary 3-element ground.
inline Presentation tri_on(const std::vector<EdgeId>& ids) {
    Field f2 = Field::gf(2);
    Ground g(ids);
    SparseVec all(f2);
    for (const auto& e : ids) all.set(e, f2.one());
    return Presentation::span_vectors(f2, g, {all});
}

/// A single circuit through every listed element.
inline Presentation circuit_on(const std::vector<EdgeId>& ids) { return tri_on(ids); }

/// Two triangles sharing the dummy g: the 2-sum fixture.
inline TreeOfPresentations twosum() {
    return TreeOfPresentations::make({tri_on({"a", "b", "g"}), tri_on({"g", "c", "d"})}, {{0, 1}});
}

/// Three single-circuit presentations chained on dummies g1, g2; six real
/// edges carrying one glued circuit.
inline TreeOfPresentations path3() {
    return TreeOfPresentations::make({tri_on({"a", "b", "g1"}), circuit_on({"g1", "c", "d", "g2"}),
                                      tri_on({"g2", "e", "f"})},
                                     {{0, 1}, {1, 2}});
}

inline SparseVec random_vec(std::mt19937_64& rng, const Field& f, const Ground& g) {
    SparseVec v(f);
    for (const auto& e : g.order()) {
        if (f.is_prime_field())
            v.set(e, f.from_int(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(f.modulus()))));
        else
            v.set(e, f.from_int(static_cast<std::int64_t>(rng() % 5) - 2));
    }
    return v;
}

inline Presentation random_presentation(std::mt19937_64& rng, const Field& f, std::size_t n,
                                        std::size_t gens, const std::string& prefix = "e") {
    std::vector<EdgeId> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
    Ground g(ids);
    std::vector<SparseVec> vs;
    for (std::size_t k = 0; k < gens; ++k) vs.push_back(random_vec(rng, f, g));
    return Presentation::from_vspace(g, Subspace::span(f, g, vs));
}

/// A random tree of presentations over GF(2): a random tree shape, random
/// per-node subspaces, one shared dummy block per tree edge.
inline TreeOfPresentations random_tree(std::mt19937_64& rng, int node_count, int reals_per_node,
                                       int dummies_per_edge) {
    Field f2 = Field::gf(2);
    std::vector<std::pair<int, int>> edges;
    for (int t = 1; t < node_count; ++t) edges.emplace_back(static_cast<int>(rng() % t), t);

    std::vector<std::vector<EdgeId>> grounds(node_count);
    for (int t = 0; t < node_count; ++t)
        for (int i = 0; i < reals_per_node; ++i)
            grounds[t].push_back("r" + std::to_string(t) + "_" + std::to_string(i));
    int dummy_counter = 0;
    for (auto [a, b] : edges)
        for (int i = 0; i < dummies_per_edge; ++i) {
            EdgeId d = "d" + std::to_string(dummy_counter++);
            grounds[a].push_back(d);
            grounds[b].push_back(d);
        }

    std::vector<Presentation> nodes;
    for (int t = 0; t < node_count; ++t) {
        Ground g(grounds[t]);
        std::vector<SparseVec> gens;
        std::size_t k = 1 + rng() % g.size();
        for (std::size_t i = 0; i < k; ++i) gens.push_back(random_vec(rng, f2, g));
        nodes.push_back(Presentation::from_vspace(g, Subspace::span(f2, g, gens)));
    }
    return TreeOfPresentations::make(std::move(nodes), std::move(edges));
}

}  // namespace matglue::fixtures
