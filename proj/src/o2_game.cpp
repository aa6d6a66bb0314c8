#include "matglue/o2_game.hpp"

#include <algorithm>
#include <functional>

namespace matglue {

O2Instance O2Instance::make(TreeOfPresentations tree, EdgeId e, EdgeSet p, EdgeSet q) {
    EdgeSet real = tree.real_ground().as_set();
    if (!real.count(e)) throw Error("o2 instance: e must be a real edge");
    if (!disjoint(p, q)) throw Error("o2 instance: P and Q overlap");
    if (p.count(e) || q.count(e)) throw Error("o2 instance: e may not lie in P or Q");
    if (set_union(set_union(p, q), {e}) != real)
        throw Error("o2 instance: P, Q, e must partition the real edges");
    O2Instance inst{std::move(tree), std::move(e), std::move(p), std::move(q), 0};
    inst.root = inst.tree.node_of_real_edge(inst.e);
    return inst;
}

namespace {

// Nonzero functionals on the dummy set, one per projective class when
// requested (the non-orthogonality relation is scalar invariant).
std::vector<SparseVec> functionals(const Field& f, const std::vector<EdgeId>& support,
                                   bool projective, const Budget& budget) {
    std::vector<SparseVec> out;
    const std::uint64_t p = static_cast<std::uint64_t>(f.modulus());
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (count > budget.max_enumeration / p + 1)
            throw CapExceeded("functional enumeration exceeds the budget");
        count *= p;
    }
    std::vector<std::int64_t> digits(support.size(), 0);
    while (true) {
        SparseVec w(f);
        for (std::size_t i = 0; i < support.size(); ++i)
            if (digits[i] != 0) w.set(support[i], f.from_int(digits[i]));
        if (!w.is_zero()) {
            bool keep = true;
            if (projective) {
                // Keep representatives whose leading coefficient is one.
                for (const auto& e : support) {
                    Scalar c = w.at(e);
                    if (!f.is_zero(c)) {
                        keep = c == f.one();
                        break;
                    }
                }
            }
            if (keep) out.push_back(std::move(w));
        }
        std::size_t i = 0;
        while (i < digits.size() && digits[i] == f.modulus() - 1) digits[i++] = 0;
        if (i == digits.size()) break;
        ++digits[i];
    }
    return out;
}

}  // namespace

CircuitGame build_circuit_game(const O2Instance& inst, bool dual, const Budget& budget,
                               bool projective) {
    const TreeOfPresentations& tree = inst.tree;
    const Field& f = tree.field();
    if (!f.is_prime_field())
        throw Error("circuit game needs a finite field; use o2_witness over the rationals");
    const EdgeSet& avoid = dual ? inst.p : inst.q;

    CircuitGame cg;
    cg.dual = dual;
    PositionalGame& g = cg.game;

    auto add_position = [&](CircuitGame::Meta meta, std::string label) {
        if (g.out.size() >= budget.max_positions)
            throw CapExceeded("circuit game: position budget exceeded");
        g.out.emplace_back();
        g.label.push_back(std::move(label));
        cg.meta.push_back(std::move(meta));
        return static_cast<Pos>(g.out.size() - 1);
    };

    g.start = add_position({CircuitGame::Kind::start, -1, -1, std::nullopt}, "start");

    // X positions: per node, the avoid-side-free vectors.
    std::vector<std::vector<Pos>> xpos(tree.node_count());
    for (int t = 0; t < tree.node_count(); ++t) {
        const Subspace& space = dual ? tree.node(t).wspace() : tree.node(t).vspace();
        space.for_each_member(
            [&](const SparseVec& v) {
                if (!disjoint(v.support(), avoid)) return true;
                Pos id = add_position({CircuitGame::Kind::node_vector, t, -1, v},
                                      "t" + std::to_string(t) + ":v=" + v.str());
                xpos[t].push_back(id);
                return true;
            },
            budget);
    }

    // Parent relation away from the root.
    std::vector<int> parent(tree.node_count(), -1);
    std::vector<int> order;
    std::function<void(int, int)> orient = [&](int t, int from) {
        order.push_back(t);
        parent[t] = from;
        for (int u : tree.neighbors(t))
            if (u != from) orient(u, t);
    };
    orient(inst.root, -1);

    // Y positions and their edges.
    for (int u : order) {
        int t = parent[u];
        if (t < 0) continue;
        std::vector<EdgeId> support;
        for (const auto& e : tree.node(t).ground().order())
            if (tree.shared(t, u).count(e)) support.push_back(e);
        for (const auto& w : functionals(f, support, projective, budget)) {
            Pos id = add_position({CircuitGame::Kind::edge_functional, u, t, w},
                                  "t" + std::to_string(t) + "-t" + std::to_string(u) + ":w=" + w.str());
            for (Pos xp : xpos[t])
                if (!f.is_zero(dot(*cg.meta[xp].payload, w))) g.out[xp].push_back(id);
            for (Pos xu : xpos[u])
                if (!f.is_zero(dot(*cg.meta[xu].payload, w))) g.out[id].push_back(xu);
        }
    }

    // Start edges: root vectors through e.
    for (Pos xp : xpos[inst.root])
        if (cg.meta[xp].payload->support().count(inst.e)) g.out[g.start].push_back(xp);

    return cg;
}

namespace {

// Restricted gluing: per-node spaces with the avoid-side support removed,
// then a compatible family whose underlying vector is nonzero at e.
std::optional<PreVector> witness_side(const O2Instance& inst, bool covector) {
    const TreeOfPresentations& tree = inst.tree;
    const Field& f = tree.field();
    const EdgeSet& avoid = covector ? inst.p : inst.q;

    std::vector<Subspace> restricted;
    restricted.reserve(tree.node_count());
    for (int t = 0; t < tree.node_count(); ++t) {
        const Subspace& space = covector ? tree.node(t).wspace() : tree.node(t).vspace();
        restricted.push_back(space.restricted(set_minus(space.ground().as_set(), avoid)));
    }

    // Coefficient layout over the restricted spaces.
    std::vector<std::size_t> offset(restricted.size());
    std::size_t total = 0;
    for (std::size_t t = 0; t < restricted.size(); ++t) {
        offset[t] = total;
        total += restricted[t].dim();
    }
    std::vector<linalg::Row> rows;
    linalg::Row rhs;
    for (auto [s, t] : tree.edges()) {
        for (const auto& e : tree.shared(s, t)) {
            linalg::Row row(total, f.zero());
            for (std::size_t i = 0; i < restricted[s].dim(); ++i)
                row[offset[s] + i] = restricted[s].basis()[i].at(e);
            for (std::size_t j = 0; j < restricted[t].dim(); ++j) {
                Scalar c = restricted[t].basis()[j].at(e);
                row[offset[t] + j] = covector ? c : f.neg(c);
            }
            rows.push_back(std::move(row));
            rhs.push_back(f.zero());
        }
    }
    // Pin the underlying coordinate at e to one.
    {
        int te = inst.root;
        linalg::Row row(total, f.zero());
        for (std::size_t i = 0; i < restricted[te].dim(); ++i)
            row[offset[te] + i] = restricted[te].basis()[i].at(inst.e);
        rows.push_back(std::move(row));
        rhs.push_back(f.one());
    }

    linalg::AffineSolution sol = linalg::solve(f, rows, rhs, total);
    if (!sol.feasible) return std::nullopt;

    std::map<int, SparseVec> family;
    for (int t = 0; t < tree.node_count(); ++t) {
        SparseVec v(f);
        for (std::size_t i = 0; i < restricted[t].dim(); ++i)
            v.add_scaled(restricted[t].basis()[i], sol.particular[offset[t] + i]);
        family.emplace(t, std::move(v));
    }
    for (PreVector& pv : split_family(tree, family, covector))
        if (pv.subtree.count(inst.root)) return pv;
    throw Error("o2 witness: the pinned family lost its root component");
}

}  // namespace

O2Witness o2_witness(const O2Instance& inst) {
    if (auto pv = witness_side(inst, false)) {
        std::string why;
        if (!is_prevector(inst.tree, *pv, false, &why))
            throw Error("o2 witness: invalid pre-vector produced: " + why);
        SparseVec u = underlying(inst.tree, *pv);
        if (!u.support().count(inst.e) || !is_subset(u.support(), set_union(inst.p, {inst.e})))
            throw Error("o2 witness: pre-vector support escapes P+e");
        return {true, std::move(*pv)};
    }
    if (auto pw = witness_side(inst, true)) {
        std::string why;
        if (!is_prevector(inst.tree, *pw, true, &why))
            throw Error("o2 witness: invalid pre-covector produced: " + why);
        SparseVec u = underlying(inst.tree, *pw);
        if (!u.support().count(inst.e) || !is_subset(u.support(), set_union(inst.q, {inst.e})))
            throw Error("o2 witness: pre-covector support escapes Q+e");
        return {false, std::move(*pw)};
    }
    throw Error("o2 witness: neither side produced a witness; (O2) violated");
}

SigmaReport sigma_analysis(const O2Instance& inst, const CircuitGame& cg, const Strategy& sigma) {
    StrategyReport rep = check_strategy(cg.game, sigma);
    if (!rep.is_winning) throw Error("sigma_analysis: sigma is not winning: " + rep.detail);

    SigmaReport out;
    out.sigma_subtree.insert(inst.root);

    // Sarah histories: the subsequences of her (even-index) moves.
    std::set<std::vector<Pos>> tau;
    for (const auto& play : sigma.plays) {
        std::vector<Pos> hat;
        for (std::size_t i = 0; i < play.size(); i += 2) hat.push_back(play[i]);
        tau.insert(hat);
        out.sigma_subtree.insert(cg.meta[play.back()].node);
    }

    std::map<std::vector<Pos>, std::set<Pos>> next;
    for (const auto& hat : tau) {
        if (hat.size() < 2) continue;
        std::vector<Pos> parent(hat.begin(), hat.end() - 1);
        next[parent].insert(hat.back());
    }

    for (const auto& [hist, followers] : next) {
        int t = cg.meta[hist.back()].node;
        std::map<int, std::size_t> per_child;
        for (Pos x : followers) ++per_child[cg.meta[x].node];
        for (const auto& [u, count] : per_child) {
            out.max_extensions = std::max(out.max_extensions, count);
            std::size_t bound = inst.tree.shared(t, u).size();
            if (count > bound) {
                out.within_bounds = false;
                out.violations.push_back("history at node " + std::to_string(t) + " has " +
                                         std::to_string(count) + " continuations into node " +
                                         std::to_string(u) + " > |E(tu)| = " +
                                         std::to_string(bound));
            }
        }
    }
    return out;
}

}  // namespace matglue
