#include "matglue/graph_td.hpp"

#include <algorithm>
#include <functional>

namespace matglue {

namespace {

using Mask = std::uint64_t;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Reduced echelon form of bitmask rows; returns pivot columns.
std::vector<int> mask_rref(std::vector<Mask>& rows, int cols) {
    std::vector<int> pivots;
    std::size_t top = 0;
    for (int col = 0; col < cols && top < rows.size(); ++col) {
        std::size_t sel = top;
        while (sel < rows.size() && !(rows[sel] >> col & 1)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[top], rows[sel]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != top && (rows[r] >> col & 1)) rows[r] ^= rows[top];
        pivots.push_back(col);
        ++top;
    }
    rows.resize(top);
    return rows.empty() ? pivots : (rows.resize(pivots.size()), pivots);
}

// Kernel basis of the incidence matrix: the even (cycle-space) sets.
std::vector<Mask> even_set_basis(const std::vector<std::pair<int, int>>& ends, int vertices) {
    const int m = static_cast<int>(ends.size());
    std::vector<Mask> incidence(vertices, 0);
    for (int j = 0; j < m; ++j) {
        auto [u, v] = ends[j];
        if (u == v) continue;  // loops have zero incidence
        incidence[u] ^= Mask{1} << j;
        incidence[v] ^= Mask{1} << j;
    }
    std::vector<int> pivots = mask_rref(incidence, m);
    std::vector<bool> is_pivot(m, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<Mask> kernel;
    for (int f = 0; f < m; ++f) {
        if (is_pivot[f]) continue;
        Mask k = Mask{1} << f;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (incidence[i] >> f & 1) k |= Mask{1} << pivots[i];
        kernel.push_back(k);
    }
    return kernel;
}

// Row-space basis of the incidence matrix: the cut space.
std::vector<Mask> cut_set_basis(const std::vector<std::pair<int, int>>& ends, int vertices) {
    const int m = static_cast<int>(ends.size());
    std::vector<Mask> incidence(vertices, 0);
    for (int j = 0; j < m; ++j) {
        auto [u, v] = ends[j];
        if (u == v) continue;
        incidence[u] ^= Mask{1} << j;
        incidence[v] ^= Mask{1} << j;
    }
    mask_rref(incidence, m);
    return incidence;
}

std::vector<Mask> span_members(const std::vector<Mask>& basis, const Budget& budget) {
    if (basis.size() >= 63 || (Mask{1} << basis.size()) > budget.max_enumeration)
        throw CapExceeded("graph space enumeration exceeds the budget");
    std::vector<Mask> out;
    out.reserve(std::size_t{1} << basis.size());
    for (Mask sel = 0; sel < (Mask{1} << basis.size()); ++sel) {
        Mask m = 0;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (sel >> i & 1) m ^= basis[i];
        out.push_back(m);
    }
    return out;
}

std::set<EdgeSet> minimal_nonempty_masks(const std::vector<Mask>& members,
                                         const std::vector<EdgeId>& ids) {
    std::vector<Mask> sorted = members;
    std::sort(sorted.begin(), sorted.end(),
              [](Mask a, Mask b) { return __builtin_popcountll(a) < __builtin_popcountll(b); });
    std::vector<Mask> minimal;
    for (Mask m : sorted) {
        if (m == 0) continue;
        bool dominated = false;
        for (Mask seen : minimal)
            if ((seen & ~m) == 0) {
                dominated = true;
                break;
            }
        if (!dominated) minimal.push_back(m);
    }
    std::set<EdgeSet> out;
    for (Mask m : minimal) {
        EdgeSet s;
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (m >> i & 1) s.insert(ids[i]);
        out.insert(s);
    }
    return out;
}

}  // namespace

Graph Graph::make(int vertices, const std::vector<std::pair<int, int>>& ends) {
    Graph g;
    g.vertex_count = vertices;
    for (std::size_t i = 0; i < ends.size(); ++i) {
        auto [u, v] = ends[i];
        if (u < 0 || v < 0 || u >= vertices || v >= vertices) throw Error("edge end out of range");
        g.edges.push_back({"e" + std::to_string(i), u, v});
    }
    return g;
}

const Graph::Edge& Graph::edge(const EdgeId& id) const {
    for (const auto& e : edges)
        if (e.id == id) return e;
    throw Error("unknown graph edge: " + id);
}

EdgeSet Graph::edge_ids() const {
    EdgeSet out;
    for (const auto& e : edges) out.insert(e.id);
    return out;
}

bool Graph::connected() const {
    if (vertex_count == 0) return true;
    UnionFind uf(vertex_count);
    for (const auto& e : edges) uf.unite(e.u, e.v);
    for (int v = 1; v < vertex_count; ++v)
        if (uf.find(v) != uf.find(0)) return false;
    return true;
}

std::set<EdgeSet> cycle_circuits(const Graph& g, const Budget& budget) {
    std::vector<std::pair<int, int>> ends;
    std::vector<EdgeId> ids;
    for (const auto& e : g.edges) {
        ends.emplace_back(e.u, e.v);
        ids.push_back(e.id);
    }
    return minimal_nonempty_masks(span_members(even_set_basis(ends, g.vertex_count), budget), ids);
}

std::set<EdgeSet> graph_bonds(const Graph& g, const Budget& budget) {
    std::vector<std::pair<int, int>> ends;
    std::vector<EdgeId> ids;
    for (const auto& e : g.edges) {
        ends.emplace_back(e.u, e.v);
        ids.push_back(e.id);
    }
    return minimal_nonempty_masks(span_members(cut_set_basis(ends, g.vertex_count), budget), ids);
}

Graph subdivide(const Graph& g) {
    Graph out;
    out.vertex_count = g.vertex_count;
    for (const auto& e : g.edges) {
        int mid = out.vertex_count++;
        out.edges.push_back({e.id + ":a", e.u, mid});
        out.edges.push_back({e.id + ":b", mid, e.v});
    }
    return out;
}

void validate_td(const Graph& g, const TreeDecomposition& td, bool require_connected_parts) {
    if (td.node_count < 1) throw Error("tree decomposition needs a node");
    if (static_cast<int>(td.parts.size()) != td.node_count)
        throw Error("tree decomposition: one part per node required");
    if (td.tree_edges.size() + 1 != static_cast<std::size_t>(td.node_count))
        throw Error("tree decomposition: not a tree");
    UnionFind uf(td.node_count);
    for (auto [a, b] : td.tree_edges) {
        if (a < 0 || b < 0 || a >= td.node_count || b >= td.node_count || a == b)
            throw Error("tree decomposition: bad tree edge");
        uf.unite(a, b);
    }
    for (int t = 1; t < td.node_count; ++t)
        if (uf.find(t) != uf.find(0)) throw Error("tree decomposition: tree disconnected");

    for (const auto& part : td.parts)
        for (int v : part)
            if (v < 0 || v >= g.vertex_count) throw Error("tree decomposition: vertex out of range");

    // Vertex coverage and subtree connectivity per vertex.
    for (int v = 0; v < g.vertex_count; ++v) {
        std::vector<int> hosts;
        for (int t = 0; t < td.node_count; ++t)
            if (td.parts[t].count(v)) hosts.push_back(t);
        if (hosts.empty()) throw Error("tree decomposition: vertex " + std::to_string(v) + " uncovered");
        std::set<int> host_set(hosts.begin(), hosts.end());
        std::set<int> reached;
        std::function<void(int)> dfs = [&](int t) {
            reached.insert(t);
            for (auto [a, b] : td.tree_edges) {
                int other = a == t ? b : (b == t ? a : -1);
                if (other >= 0 && host_set.count(other) && !reached.count(other)) dfs(other);
            }
        };
        dfs(hosts.front());
        if (reached != host_set)
            throw Error("tree decomposition: parts containing vertex " + std::to_string(v) +
                        " do not form a subtree");
    }

    for (const auto& e : g.edges) {
        auto it = td.edge_part.find(e.id);
        if (it == td.edge_part.end()) throw Error("tree decomposition: edge " + e.id + " unassigned");
        if (it->second < 0 || it->second >= td.node_count)
            throw Error("tree decomposition: edge " + e.id + " assigned out of range");
        const auto& part = td.parts[it->second];
        if (!part.count(e.u) || !part.count(e.v))
            throw Error("tree decomposition: part misses the ends of " + e.id);
    }

    if (require_connected_parts) {
        for (int t = 0; t < td.node_count; ++t) {
            if (td.parts[t].empty()) throw Error("tree decomposition: empty part");
            std::map<int, int> index;
            for (int v : td.parts[t]) index.emplace(v, static_cast<int>(index.size()));
            UnionFind pf(static_cast<int>(index.size()));
            for (const auto& e : g.edges)
                if (index.count(e.u) && index.count(e.v)) pf.unite(index[e.u], index[e.v]);
            int root = pf.find(0);
            for (const auto& [v, i] : index)
                if (pf.find(i) != root)
                    throw Error("tree decomposition: part " + std::to_string(t) + " disconnected");
        }
    }
}

TreeDecomposition generate_td(const Graph& g) {
    auto components_without = [&](const std::set<int>& sep) {
        std::vector<std::set<int>> comps;
        std::vector<bool> seen(g.vertex_count, false);
        for (int v : sep) seen[v] = true;
        for (int start = 0; start < g.vertex_count; ++start) {
            if (seen[start]) continue;
            std::set<int> comp;
            std::function<void(int)> dfs = [&](int u) {
                seen[u] = true;
                comp.insert(u);
                for (const auto& e : g.edges) {
                    int other = e.u == u ? e.v : (e.v == u ? e.u : -1);
                    if (other >= 0 && !seen[other]) dfs(other);
                }
            };
            dfs(start);
            comps.push_back(std::move(comp));
        }
        return comps;
    };

    std::optional<std::set<int>> separator;
    for (int x = 0; x < g.vertex_count && !separator; ++x)
        if (components_without({x}).size() >= 2) separator = std::set<int>{x};
    for (int x = 0; x < g.vertex_count && !separator; ++x)
        for (int y = x + 1; y < g.vertex_count && !separator; ++y)
            if (components_without({x, y}).size() >= 2) separator = std::set<int>{x, y};

    TreeDecomposition td;
    if (!separator) {
        td.node_count = 1;
        std::set<int> all;
        for (int v = 0; v < g.vertex_count; ++v) all.insert(v);
        td.parts.push_back(all);
        for (const auto& e : g.edges) td.edge_part[e.id] = 0;
        return td;
    }

    std::vector<std::set<int>> comps = components_without(*separator);
    std::set<int> first = comps.front();
    td.node_count = 2;
    td.tree_edges = {{0, 1}};
    std::set<int> p0 = first;
    p0.insert(separator->begin(), separator->end());
    std::set<int> p1;
    for (int v = 0; v < g.vertex_count; ++v)
        if (!first.count(v)) p1.insert(v);
    td.parts = {p0, p1};
    for (const auto& e : g.edges) {
        bool in0 = p0.count(e.u) && p0.count(e.v);
        td.edge_part[e.id] = in0 ? 0 : 1;
    }
    validate_td(g, td);
    return td;
}

EdgeSet Torso::edge_ids() const {
    EdgeSet out;
    for (const auto& e : edges) out.insert(e.id);
    return out;
}

Torso torso_build(const Graph& g, const TreeDecomposition& td, int t) {
    validate_td(g, td);
    if (t < 0 || t >= td.node_count) throw Error("torso: node out of range");
    Torso torso;
    torso.node = t;
    torso.vertices = td.parts[t];
    for (const auto& e : g.edges)
        if (td.edge_part.at(e.id) == t) torso.edges.push_back({e.id, e.u, e.v, false});
    for (auto [a, b] : td.tree_edges) {
        int other = a == t ? b : (b == t ? a : -1);
        if (other < 0) continue;
        std::vector<int> common;
        for (int v : td.parts[t])
            if (td.parts[other].count(v)) common.push_back(v);
        for (std::size_t i = 0; i < common.size(); ++i)
            for (std::size_t j = i + 1; j < common.size(); ++j) {
                EdgeId id = "d" + std::to_string(std::min(t, other)) + "_" +
                            std::to_string(std::max(t, other)) + "_" + std::to_string(common[i]) +
                            "_" + std::to_string(common[j]);
                torso.edges.push_back({id, common[i], common[j], true});
            }
    }
    return torso;
}

namespace {

// Per-torso member lists (even sets or cuts) as edge-id sets.
std::vector<EdgeSet> torso_members(const Torso& torso, bool cuts, const Budget& budget) {
    std::map<int, int> vertex_index;
    for (int v : torso.vertices) vertex_index.emplace(v, static_cast<int>(vertex_index.size()));
    std::vector<std::pair<int, int>> ends;
    std::vector<EdgeId> ids;
    for (const auto& e : torso.edges) {
        ends.emplace_back(vertex_index.at(e.u), vertex_index.at(e.v));
        ids.push_back(e.id);
    }
    std::vector<Mask> basis = cuts ? cut_set_basis(ends, static_cast<int>(vertex_index.size()))
                                   : even_set_basis(ends, static_cast<int>(vertex_index.size()));
    std::vector<EdgeSet> out;
    for (Mask m : span_members(basis, budget)) {
        EdgeSet s;
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (m >> i & 1) s.insert(ids[i]);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<std::set<int>> connected_subtrees(const TreeDecomposition& td) {
    std::vector<std::set<int>> out;
    for (std::uint32_t mask = 1; mask < (1u << td.node_count); ++mask) {
        std::set<int> s;
        for (int t = 0; t < td.node_count; ++t)
            if (mask >> t & 1) s.insert(t);
        std::set<int> reached;
        std::function<void(int)> dfs = [&](int t) {
            reached.insert(t);
            for (auto [a, b] : td.tree_edges) {
                int other = a == t ? b : (b == t ? a : -1);
                if (other >= 0 && s.count(other) && !reached.count(other)) dfs(other);
            }
        };
        dfs(*s.begin());
        if (reached == s) out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

std::vector<PreCircuit> enumerate_precircuits(const Graph& g, const TreeDecomposition& td,
                                              bool cocircuit, const Budget& budget) {
    validate_td(g, td);
    std::vector<Torso> torsos;
    std::vector<std::vector<EdgeSet>> members;
    EdgeSet dummies;
    for (int t = 0; t < td.node_count; ++t) {
        torsos.push_back(torso_build(g, td, t));
        members.push_back(torso_members(torsos.back(), cocircuit, budget));
        for (const auto& e : torsos.back().edges)
            if (e.dummy) dummies.insert(e.id);
    }

    std::vector<PreCircuit> out;
    for (const auto& subtree : connected_subtrees(td)) {
        std::vector<int> order(subtree.begin(), subtree.end());
        std::uint64_t work = 1;
        for (int t : order) {
            if (work > budget.max_enumeration / members[t].size() + 1)
                throw CapExceeded("precircuit enumeration exceeds the budget");
            work *= members[t].size();
        }
        if (work > budget.max_enumeration)
            throw CapExceeded("precircuit enumeration exceeds the budget");

        std::vector<std::size_t> pick(order.size(), 0);
        while (true) {
            PreCircuit pc;
            pc.subtree = subtree;
            bool ok = true;
            for (std::size_t i = 0; i < order.size() && ok; ++i) {
                const EdgeSet& o = members[order[i]][pick[i]];
                pc.assign[order[i]] = o;
            }
            for (auto [a, b] : td.tree_edges) {
                if (!ok) break;
                EdgeSet shared = set_intersect(torsos[a].edge_ids(), torsos[b].edge_ids());
                bool a_in = subtree.count(a), b_in = subtree.count(b);
                if (a_in && b_in) {
                    if (set_intersect(pc.assign[a], shared) != set_intersect(pc.assign[b], shared))
                        ok = false;
                } else if (a_in && !b_in) {
                    if (!disjoint(pc.assign[a], shared)) ok = false;
                } else if (b_in && !a_in) {
                    if (!disjoint(pc.assign[b], shared)) ok = false;
                }
            }
            if (ok) {
                for (const auto& [t, o] : pc.assign)
                    pc.underlying = set_union(pc.underlying, set_minus(o, dummies));
                out.push_back(pc);
            }
            std::size_t i = 0;
            while (i < pick.size() && pick[i] + 1 == members[order[i]].size()) pick[i++] = 0;
            if (i == pick.size()) break;
            ++pick[i];
        }
    }
    return out;
}

std::set<EdgeSet> minimal_underlying(const std::vector<PreCircuit>& family) {
    std::set<EdgeSet> all;
    for (const auto& pc : family) all.insert(pc.underlying);
    std::set<EdgeSet> out;
    for (const auto& s : all) {
        if (s.empty()) continue;
        bool minimal = true;
        for (const auto& t : all)
            if (!t.empty() && t != s && is_subset(t, s)) {
                minimal = false;
                break;
            }
        if (minimal) out.insert(s);
    }
    return out;
}

TreeOfPresentations td_to_presentations(const Graph& g, const TreeDecomposition& td) {
    validate_td(g, td);
    Field f2 = Field::gf(2);
    std::vector<Presentation> nodes;
    for (int t = 0; t < td.node_count; ++t) {
        Torso torso = torso_build(g, td, t);
        std::map<int, int> vertex_index;
        for (int v : torso.vertices) vertex_index.emplace(v, static_cast<int>(vertex_index.size()));
        std::vector<std::pair<int, int>> ends;
        std::vector<EdgeId> ids;
        for (const auto& e : torso.edges) {
            ends.emplace_back(vertex_index.at(e.u), vertex_index.at(e.v));
            ids.push_back(e.id);
        }
        Ground ground(ids);
        auto to_vec = [&](Mask m) {
            SparseVec v(f2);
            for (std::size_t i = 0; i < ids.size(); ++i)
                if (m >> i & 1) v.set(ids[i], f2.one());
            return v;
        };
        std::vector<SparseVec> v_gens, w_gens;
        for (Mask m : even_set_basis(ends, static_cast<int>(vertex_index.size())))
            v_gens.push_back(to_vec(m));
        for (Mask m : cut_set_basis(ends, static_cast<int>(vertex_index.size())))
            w_gens.push_back(to_vec(m));
        nodes.push_back(Presentation::checked(ground, Subspace::span(f2, ground, v_gens),
                                              Subspace::span(f2, ground, w_gens)));
    }
    return TreeOfPresentations::make(std::move(nodes), td.tree_edges);
}

GraphGame build_graph_game(const Graph& g, const TreeDecomposition& td, const EdgeId& e,
                           const EdgeSet& p, const EdgeSet& q, const Budget& budget) {
    validate_td(g, td);
    EdgeSet real = g.edge_ids();
    if (!real.count(e)) throw Error("graph game: unknown edge " + e);
    if (!disjoint(p, q) || p.count(e) || q.count(e) ||
        set_union(set_union(p, q), {e}) != real)
        throw Error("graph game: P, Q, e must partition the edges");

    const int root = td.edge_part.at(e);
    std::vector<Torso> torsos;
    for (int t = 0; t < td.node_count; ++t) torsos.push_back(torso_build(g, td, t));

    GraphGame gg;
    PositionalGame& game = gg.game;
    auto add = [&](GraphGame::Meta meta, std::string label) {
        if (game.out.size() >= budget.max_positions)
            throw CapExceeded("graph game: position budget exceeded");
        game.out.emplace_back();
        game.label.push_back(std::move(label));
        gg.meta.push_back(std::move(meta));
        return static_cast<Pos>(game.out.size() - 1);
    };
    game.start = add({0, -1, {}}, "start");

    std::vector<std::vector<Pos>> xpos(td.node_count);
    for (int t = 0; t < td.node_count; ++t) {
        for (const EdgeSet& member : torso_members(torsos[t], false, budget)) {
            if (!disjoint(member, q)) continue;
            xpos[t].push_back(add({1, t, member}, "t" + std::to_string(t) + ":" + format(member)));
        }
    }

    std::vector<int> parent(td.node_count, -1);
    std::vector<int> order;
    std::function<void(int, int)> orient = [&](int t, int from) {
        order.push_back(t);
        parent[t] = from;
        for (auto [a, b] : td.tree_edges) {
            int other = a == t ? b : (b == t ? a : -1);
            if (other >= 0 && other != from &&
                std::find(order.begin(), order.end(), other) == order.end())
                orient(other, t);
        }
    };
    orient(root, -1);

    for (int u : order) {
        int t = parent[u];
        if (t < 0) continue;
        EdgeSet shared = set_intersect(torsos[t].edge_ids(), torsos[u].edge_ids());
        std::vector<EdgeId> shared_list(shared.begin(), shared.end());
        for (std::uint32_t mask = 1; mask < (1u << shared_list.size()); ++mask) {
            EdgeSet y;
            for (std::size_t i = 0; i < shared_list.size(); ++i)
                if (mask >> i & 1) y.insert(shared_list[i]);
            Pos yid = add({2, u, y}, "t" + std::to_string(t) + "-t" + std::to_string(u) + ":" + format(y));
            for (Pos xp : xpos[t])
                if (set_intersect(gg.meta[xp].payload, shared) == y) game.out[xp].push_back(yid);
            for (Pos xu : xpos[u])
                if (set_intersect(gg.meta[xu].payload, shared) == y) game.out[yid].push_back(xu);
        }
    }

    for (Pos xp : xpos[root])
        if (gg.meta[xp].payload.count(e)) game.out[game.start].push_back(xp);

    return gg;
}

}  // namespace matglue
