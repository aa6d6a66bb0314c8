#include "matglue/tree_pres.hpp"

#include <algorithm>
#include <functional>

namespace matglue {

namespace {

std::pair<int, int> norm(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

TreeOfPresentations TreeOfPresentations::make(std::vector<Presentation> nodes,
                                              std::vector<std::pair<int, int>> edges) {
    if (nodes.empty()) throw Error("tree of presentations needs at least one node");
    const int n = static_cast<int>(nodes.size());
    if (edges.size() + 1 != nodes.size()) throw Error("not a tree: wrong edge count");

    TreeOfPresentations tree;
    tree.adjacency_.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw Error("bad tree edge");
        if (!seen.insert(norm(a, b)).second) throw Error("duplicate tree edge");
        tree.adjacency_[a].push_back(b);
        tree.adjacency_[b].push_back(a);
    }
    std::vector<bool> visited(n, false);
    std::function<void(int)> dfs = [&](int t) {
        visited[t] = true;
        for (int u : tree.adjacency_[t])
            if (!visited[u]) dfs(u);
    };
    dfs(0);
    if (std::count(visited.begin(), visited.end(), true) != n) throw Error("not a tree: disconnected");

    for (const auto& p : nodes)
        if (p.field() != nodes.front().field())
            throw Error("all node presentations must share one field");

    // Edge ids may appear in at most two node grounds, and across a tree
    // edge when in two.
    std::map<EdgeId, std::vector<int>> where;
    for (int t = 0; t < n; ++t)
        for (const auto& e : nodes[t].ground().order()) where[e].push_back(t);
    for (const auto& [e, owners] : where) {
        if (owners.size() > 2) throw Error("edge " + e + " appears in more than two node grounds");
        if (owners.size() == 2 && !seen.count(norm(owners[0], owners[1])))
            throw Error("edge " + e + " is shared by non-adjacent nodes");
    }
    for (auto [a, b] : edges) {
        EdgeSet common = set_intersect(nodes[a].ground().as_set(), nodes[b].ground().as_set());
        tree.shared_[norm(a, b)] = std::move(common);
    }

    std::vector<EdgeId> real_order;
    for (int t = 0; t < n; ++t)
        for (const auto& e : nodes[t].ground().order())
            if (where[e].size() == 1) real_order.push_back(e);
    tree.real_ground_ = Ground(real_order);

    tree.nodes_ = std::move(nodes);
    tree.edges_ = std::move(edges);
    return tree;
}

bool TreeOfPresentations::is_tree_edge(int t, int u) const { return shared_.count(norm(t, u)) != 0; }

const EdgeSet& TreeOfPresentations::shared(int t, int u) const {
    auto it = shared_.find(norm(t, u));
    if (it == shared_.end()) throw Error("not a tree edge");
    return it->second;
}

EdgeSet TreeOfPresentations::dummy_edges() const {
    EdgeSet out;
    for (const auto& [_, s] : shared_) out = set_union(out, s);
    return out;
}

EdgeSet TreeOfPresentations::node_real_edges(int t) const {
    EdgeSet real = real_ground_.as_set();
    return set_intersect(nodes_.at(t).ground().as_set(), real);
}

int TreeOfPresentations::node_of_real_edge(const EdgeId& e) const {
    if (!real_ground_.contains(e)) throw Error("not a real edge: " + e);
    for (int t = 0; t < node_count(); ++t)
        if (nodes_[t].ground().contains(e)) return t;
    throw Error("unreachable");
}

std::set<int> TreeOfPresentations::branch_nodes(int s, int t) const {
    if (!is_tree_edge(s, t)) throw Error("branch_nodes: not a tree edge");
    std::set<int> out;
    std::function<void(int, int)> dfs = [&](int v, int from) {
        out.insert(v);
        for (int u : adjacency_[v])
            if (u != from && !out.count(u)) dfs(u, v);
    };
    // Walk from t, never crossing back to s.
    out.insert(t);
    for (int u : adjacency_[t])
        if (u != s) dfs(u, t);
    return out;
}

TreeOfPresentations TreeOfPresentations::induced(const std::set<int>& keep,
                                                 std::map<int, int>* relabel) const {
    if (keep.empty()) throw Error("induced: empty node set");
    std::map<int, int> map;
    std::vector<Presentation> nodes;
    for (int t : keep) {
        map[t] = static_cast<int>(nodes.size());
        nodes.push_back(nodes_.at(t));
    }
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : edges_)
        if (keep.count(a) && keep.count(b)) edges.emplace_back(map[a], map[b]);
    if (relabel) *relabel = map;
    return make(std::move(nodes), std::move(edges));
}

SparseVec underlying(const TreeOfPresentations& tree, const PreVector& pv) {
    SparseVec u(tree.field());
    EdgeSet real = tree.real_ground().as_set();
    for (const auto& [t, v] : pv.local)
        for (const auto& [e, s] : v.entries())
            if (real.count(e)) u.set(e, s);
    return u;
}

namespace {

bool subtree_connected(const TreeOfPresentations& tree, const std::set<int>& s) {
    if (s.empty()) return false;
    std::set<int> seen;
    std::function<void(int)> dfs = [&](int t) {
        seen.insert(t);
        for (int u : tree.neighbors(t))
            if (s.count(u) && !seen.count(u)) dfs(u);
    };
    dfs(*s.begin());
    return seen == s;
}

}  // namespace

bool is_prevector(const TreeOfPresentations& tree, const PreVector& pv, bool covector,
                  std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (!subtree_connected(tree, pv.subtree)) return fail("subtree is empty or disconnected");
    for (int t : pv.subtree)
        if (!pv.local.count(t)) return fail("missing local vector at node " + std::to_string(t));
    for (const auto& [t, v] : pv.local) {
        if (!pv.subtree.count(t)) return fail("local vector outside the subtree");
        const Subspace& space = covector ? tree.node(t).wspace() : tree.node(t).vspace();
        if (!space.contains(v))
            return fail("local vector at node " + std::to_string(t) + " is not in the node space");
    }
    for (int t : pv.subtree) {
        for (int u : tree.neighbors(t)) {
            const EdgeSet& common = tree.shared(t, u);
            SparseVec rt = pv.local.at(t).restricted(common);
            if (pv.subtree.count(u)) {
                SparseVec ru = pv.local.at(u).restricted(common);
                SparseVec expect = covector ? ru.negated() : ru;
                if (rt != expect)
                    return fail("restrictions disagree across edge " + std::to_string(t) + "-" +
                                std::to_string(u));
                if (rt.is_zero())
                    return fail("zero restriction on internal edge " + std::to_string(t) + "-" +
                                std::to_string(u));
            } else if (!rt.is_zero()) {
                return fail("nonzero restriction toward outside node " + std::to_string(u));
            }
        }
    }
    return true;
}

namespace {

// The agreement space of compatible full-tree families, as a homogeneous
// linear system over the concatenated coefficient spaces of the per-node
// subspaces (sign-flipped matching for covectors).
struct Agreement {
    std::vector<const Subspace*> spaces;
    std::vector<std::size_t> offset;
    std::size_t total = 0;
    std::vector<linalg::Row> rows;
};

Agreement build_agreement(const TreeOfPresentations& tree, const std::vector<const Subspace*>& spaces,
                          bool covector) {
    const Field& f = tree.field();
    Agreement a;
    a.spaces = spaces;
    a.offset.resize(spaces.size());
    for (std::size_t t = 0; t < spaces.size(); ++t) {
        a.offset[t] = a.total;
        a.total += spaces[t]->dim();
    }
    for (auto [s, t] : tree.edges()) {
        for (const auto& e : tree.shared(s, t)) {
            linalg::Row row(a.total, f.zero());
            for (std::size_t i = 0; i < spaces[s]->dim(); ++i)
                row[a.offset[s] + i] = spaces[s]->basis()[i].at(e);
            for (std::size_t j = 0; j < spaces[t]->dim(); ++j) {
                Scalar c = spaces[t]->basis()[j].at(e);
                row[a.offset[t] + j] = covector ? c : f.neg(c);
            }
            a.rows.push_back(std::move(row));
        }
    }
    return a;
}

std::map<int, SparseVec> family_from_coeffs(const TreeOfPresentations& tree, const Agreement& a,
                                            const linalg::Row& coeffs) {
    std::map<int, SparseVec> family;
    for (int t = 0; t < tree.node_count(); ++t) {
        SparseVec v(tree.field());
        for (std::size_t i = 0; i < a.spaces[t]->dim(); ++i)
            v.add_scaled(a.spaces[t]->basis()[i], coeffs[a.offset[t] + i]);
        family.emplace(t, std::move(v));
    }
    return family;
}

SparseVec family_underlying(const TreeOfPresentations& tree, const std::map<int, SparseVec>& family) {
    SparseVec u(tree.field());
    EdgeSet real = tree.real_ground().as_set();
    for (const auto& [t, v] : family)
        for (const auto& [e, s] : v.entries())
            if (real.count(e)) u.set(e, s);
    return u;
}

Subspace glued_side(const TreeOfPresentations& tree, bool covector) {
    std::vector<const Subspace*> spaces;
    for (int t = 0; t < tree.node_count(); ++t)
        spaces.push_back(covector ? &tree.node(t).wspace() : &tree.node(t).vspace());
    Agreement a = build_agreement(tree, spaces, covector);
    linalg::AffineSolution sol =
        linalg::solve(tree.field(), a.rows, linalg::Row(a.rows.size(), tree.field().zero()), a.total);
    std::vector<SparseVec> gens;
    for (const auto& coeffs : sol.nullspace)
        gens.push_back(family_underlying(tree, family_from_coeffs(tree, a, coeffs)));
    return Subspace::span(tree.field(), tree.real_ground(), gens);
}

}  // namespace

Presentation glue(const TreeOfPresentations& tree) {
    Subspace v = glued_side(tree, false);
    Subspace w = glued_side(tree, true);
    return Presentation::checked(tree.real_ground(), v, w);
}

std::vector<PreVector> enumerate_prevectors(const TreeOfPresentations& tree, bool covector,
                                            const Budget& budget) {
    if (!tree.field().is_prime_field())
        throw Error("pre-vector enumeration requires a finite field");
    const int n = tree.node_count();
    if (n >= 20) throw CapExceeded("pre-vector enumeration: too many nodes");

    std::vector<PreVector> out;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::set<int> s;
        for (int t = 0; t < n; ++t)
            if (mask & (1u << t)) s.insert(t);
        if (!subtree_connected(tree, s)) continue;

        std::vector<int> order(s.begin(), s.end());
        std::vector<std::vector<SparseVec>> members;
        std::uint64_t work = 1;
        for (int t : order) {
            const Subspace& space = covector ? tree.node(t).wspace() : tree.node(t).vspace();
            members.push_back(space.enumerate_members(budget));
            if (work > budget.max_enumeration / members.back().size() + 1)
                throw CapExceeded("pre-vector enumeration: family budget exceeded");
            work *= members.back().size();
        }
        if (work > budget.max_enumeration)
            throw CapExceeded("pre-vector enumeration: family budget exceeded");

        std::vector<std::size_t> pick(order.size(), 0);
        while (true) {
            PreVector pv;
            pv.subtree = s;
            bool all_zero = true;
            for (std::size_t i = 0; i < order.size(); ++i) {
                const SparseVec& v = members[i][pick[i]];
                if (!v.is_zero()) all_zero = false;
                pv.local.emplace(order[i], v);
            }
            if (!all_zero && is_prevector(tree, pv, covector)) out.push_back(pv);
            std::size_t i = 0;
            while (i < pick.size() && pick[i] + 1 == members[i].size()) pick[i++] = 0;
            if (i == pick.size()) break;
            ++pick[i];
        }
    }
    return out;
}

std::vector<PreVector> split_family(const TreeOfPresentations& tree,
                                    const std::map<int, SparseVec>& family, bool covector) {
    (void)covector;  // the matching signs carry over unchanged to components
    std::set<std::pair<int, int>> cut;
    for (auto [s, t] : tree.edges())
        if (family.at(s).restricted(tree.shared(s, t)).is_zero()) cut.insert({std::min(s, t), std::max(s, t)});

    std::vector<PreVector> out;
    std::set<int> assigned;
    for (int start = 0; start < tree.node_count(); ++start) {
        if (assigned.count(start)) continue;
        std::set<int> comp;
        std::function<void(int)> dfs = [&](int t) {
            comp.insert(t);
            for (int u : tree.neighbors(t)) {
                if (comp.count(u) || cut.count({std::min(t, u), std::max(t, u)})) continue;
                dfs(u);
            }
        };
        dfs(start);
        assigned.insert(comp.begin(), comp.end());
        bool all_zero = true;
        for (int t : comp)
            if (!family.at(t).is_zero()) all_zero = false;
        if (all_zero) continue;
        PreVector pv;
        pv.subtree = comp;
        for (int t : comp) pv.local.emplace(t, family.at(t));
        out.push_back(std::move(pv));
    }
    return out;
}

int neat_count(const TreeOfPresentations& tree, const PreVector& v, const PreCovector& w, int node) {
    if (!v.local.count(node) || !w.local.count(node)) return 0;
    EdgeSet vs = v.local.at(node).support();
    EdgeSet ws = w.local.at(node).support();
    int count = 0;
    for (int u : tree.neighbors(node)) {
        const EdgeSet& common = tree.shared(node, u);
        if (!disjoint(common, vs) && !disjoint(common, ws)) ++count;
    }
    return count;
}

StellarVerdict check_stellar_instance(const Presentation& pi, const TreeOfPresentations& star,
                                      int center, const Budget& budget) {
    if (center < 0 || center >= star.node_count()) return {false, "center out of range"};
    for (auto [a, b] : star.edges())
        if (a != center && b != center) return {false, "not a star around the center"};
    if (star.node(center) != pi) return {false, "center presentation differs from pi"};
    try {
        Presentation glued = glue(star);
        presented_matroid(glued, budget);
    } catch (const CapExceeded&) {
        throw;
    } catch (const Error& e) {
        return {false, e.what()};
    }
    return {true, "stellar-consistent"};
}

SparseVec stellagain_covector(const Presentation& pi, const std::vector<EdgeSet>& fam,
                              const EdgeSet& f0, const SparseVec& w0, const EdgeSet& q,
                              const std::map<EdgeSet, std::vector<SparseVec>>& wfams,
                              const Budget& budget) {
    const Field& f = pi.field();
    if (!f.is_prime_field()) throw Error("stellagain: the hypothesis scan needs a finite field");
    bool has_f0 = false;
    for (const auto& fs : fam) {
        if (fs == f0) has_f0 = true;
        if (!is_subset(fs, pi.ground().as_set())) throw Error("stellagain: F leaves the ground");
        if (!disjoint(fs, q)) throw Error("stellagain: Q meets a member of the family");
        for (const auto& other : fam)
            if (&other != &fs && !disjoint(other, fs) && other != fs)
                throw Error("stellagain: family members overlap");
    }
    if (!has_f0) throw Error("stellagain: F0 is not in the family");
    if (!w0.supported_in(f0)) throw Error("stellagain: w0 must live on F0");

    // Hypothesis: every Q-avoiding vector not orthogonal to w0 is blocked by
    // some supplied covector on some other leaf.
    std::optional<SparseVec> unblocked;
    pi.vspace().for_each_member(
        [&](const SparseVec& v) {
            if (!disjoint(v.support(), q)) return true;
            if (f.is_zero(dot(v, w0))) return true;
            for (const auto& fs : fam) {
                if (fs == f0) continue;
                auto it = wfams.find(fs);
                if (it == wfams.end()) continue;
                for (const auto& w : it->second)
                    if (!f.is_zero(dot(w, v))) return true;
            }
            unblocked = v;
            return false;
        },
        budget);
    if (unblocked.has_value()) throw StellagainHypothesisError(*unblocked);

    // The proof's star: complement leaves on each F != F0, glued, then the
    // lift is read off the central component of a compatible family.
    std::vector<Presentation> nodes = {pi};
    std::vector<std::pair<int, int>> edges;
    for (const auto& fs : fam) {
        if (fs == f0) continue;
        Ground leaf_ground = pi.ground().restricted_to(fs);
        std::vector<SparseVec> gens;
        auto it = wfams.find(fs);
        if (it != wfams.end()) gens = it->second;
        Subspace wf = Subspace::span(f, leaf_ground, gens);
        edges.emplace_back(0, static_cast<int>(nodes.size()));
        nodes.push_back(Presentation::checked(leaf_ground, wf.complement(), wf));
    }
    TreeOfPresentations star = TreeOfPresentations::make(std::move(nodes), std::move(edges));

    std::vector<const Subspace*> spaces;
    for (int t = 0; t < star.node_count(); ++t) spaces.push_back(&star.node(t).wspace());
    Agreement a = build_agreement(star, spaces, true);
    std::vector<linalg::Row> rows = a.rows;
    linalg::Row rhs(rows.size(), f.zero());
    // Pin the underlying covector: w0 on F0, zero on other real edges
    // outside Q.
    for (const auto& e : star.real_ground().order()) {
        if (q.count(e)) continue;
        int t = star.node_of_real_edge(e);
        linalg::Row row(a.total, f.zero());
        for (std::size_t i = 0; i < spaces[t]->dim(); ++i)
            row[a.offset[t] + i] = spaces[t]->basis()[i].at(e);
        rows.push_back(std::move(row));
        rhs.push_back(f0.count(e) ? w0.at(e) : f.zero());
    }
    linalg::AffineSolution sol = linalg::solve(f, rows, rhs, a.total);
    if (!sol.feasible)
        throw Error("stellagain: construction failed although the hypothesis holds");
    std::map<int, SparseVec> family = family_from_coeffs(star, a, sol.particular);
    SparseVec w = family.at(0);

    if (!pi.wspace().contains(w)) throw Error("stellagain: lift left the covector space");
    if (w.restricted(f0) != w0) throw Error("stellagain: lift disagrees with w0 on F0");
    EdgeSet allowed = q;
    for (const auto& fs : fam) allowed = set_union(allowed, fs);
    if (!w.supported_in(allowed)) throw Error("stellagain: lift has support outside Q and the family");
    for (const auto& fs : fam) {
        if (fs == f0) continue;
        std::vector<SparseVec> gens;
        auto it = wfams.find(fs);
        if (it != wfams.end()) gens = it->second;
        Subspace span_f = Subspace::span(f, pi.ground().restricted_to(fs), gens);
        if (!span_f.contains(w.restricted(fs)))
            throw Error("stellagain: lift leaves the supplied span on a leaf");
    }
    return w;
}

CexInstance gen_cex(int n, const std::optional<Presentation>& central) {
    if (n < 1) throw Error("gen_cex: n must be positive");

    Presentation center = [&] {
        if (central.has_value()) return *central;
        Field f2 = Field::gf(2);
        const int m = std::max(6, n + 1);
        std::vector<EdgeId> ids;
        for (int i = 1; i <= m; ++i) ids.push_back("cyc" + std::to_string(i));
        for (int i = 1; i <= m; ++i) ids.push_back("bond" + std::to_string(i));
        Ground g(ids);
        // One long circuit on the cyc side; one long cocircuit on the bond
        // side (complement of the all-ones covector).
        std::vector<SparseVec> gens;
        SparseVec cyc(f2);
        for (int i = 1; i <= m; ++i) cyc.set("cyc" + std::to_string(i), f2.one());
        gens.push_back(cyc);
        for (int i = 2; i <= m; ++i) {
            SparseVec v(f2);
            v.set("bond1", f2.one());
            v.set("bond" + std::to_string(i), f2.one());
            gens.push_back(v);
        }
        return Presentation::span_vectors(f2, g, gens);
    }();
    const Field& f = center.field();

    // A vector and a covector whose private supports are big enough to host
    // the n leaves.
    std::optional<SparseVec> v_big, w_big;
    for (const auto& v : center.vspace().basis())
        for (const auto& w : center.wspace().basis()) {
            if (set_minus(v.support(), w.support()).size() >= static_cast<std::size_t>(n) &&
                set_minus(w.support(), v.support()).size() >= static_cast<std::size_t>(n)) {
                v_big = v;
                w_big = w;
                goto found;
            }
        }
found:
    if (!v_big.has_value())
        throw Error("gen_cex: central presentation lacks a vector and covector of support >= " +
                    std::to_string(n));

    std::vector<EdgeId> e_elems, f_elems;
    for (const auto& e : center.ground().order()) {
        if (v_big->support().count(e) && !w_big->support().count(e) &&
            e_elems.size() < static_cast<std::size_t>(n))
            e_elems.push_back(e);
        if (w_big->support().count(e) && !v_big->support().count(e) &&
            f_elems.size() < static_cast<std::size_t>(n))
            f_elems.push_back(e);
    }

    std::vector<Presentation> nodes = {center};
    std::vector<std::pair<int, int>> edges;
    PreVector pv, pw;
    pv.subtree.insert(0);
    pw.subtree.insert(0);
    pv.local.emplace(0, *v_big);
    pw.local.emplace(0, *w_big);
    for (int i = 1; i <= n; ++i) {
        EdgeId ei = e_elems[i - 1], fi = f_elems[i - 1];
        EdgeId gi = "g" + std::to_string(i), hi = "h" + std::to_string(i);
        Ground leaf_ground({ei, fi, gi, hi});
        SparseVec gh(f);
        gh.set(gi, f.one());
        gh.set(hi, f.one());
        Subspace vi = Subspace::span(f, leaf_ground, {SparseVec::unit(f, ei), gh});
        SparseVec gmh(f);
        gmh.set(gi, f.one());
        gmh.set(hi, f.neg(f.one()));
        Subspace wi = Subspace::span(f, leaf_ground, {SparseVec::unit(f, fi), gmh});
        edges.emplace_back(0, static_cast<int>(nodes.size()));
        int node_id = static_cast<int>(nodes.size());
        nodes.push_back(Presentation::checked(leaf_ground, vi, wi));

        Scalar ve = v_big->at(ei);
        SparseVec vloc(f);
        vloc.set(ei, ve);
        vloc.set(gi, ve);
        vloc.set(hi, ve);
        Scalar wf = w_big->at(fi);
        SparseVec wloc(f);
        wloc.set(fi, f.neg(wf));
        wloc.set(gi, f.neg(wf));
        wloc.set(hi, wf);

        pv.subtree.insert(node_id);
        pw.subtree.insert(node_id);
        pv.local.emplace(node_id, vloc);
        pw.local.emplace(node_id, wloc);
    }

    CexInstance out{TreeOfPresentations::make(std::move(nodes), std::move(edges)), pv, pw, {}};
    std::string why;
    if (!is_prevector(out.tree, out.prevec, false, &why))
        throw Error("gen_cex: produced carrier is not a pre-vector: " + why);
    if (!is_prevector(out.tree, out.precov, true, &why))
        throw Error("gen_cex: produced carrier is not a pre-covector: " + why);
    out.intersection =
        set_intersect(underlying(out.tree, out.prevec).support(), underlying(out.tree, out.precov).support());
    return out;
}

}  // namespace matglue
