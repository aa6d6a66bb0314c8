#include "matglue/base_build.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "matglue/presentation.hpp"

namespace matglue {

namespace {

// Greedy over the ground order: extends seed to a maximal circuit-free
// subset of the ground avoiding `forbidden`.
EdgeSet greedy_base(const Ground& g, const std::set<EdgeSet>& circuits, EdgeSet seed,
                    const EdgeSet& forbidden) {
    auto independent = [&](const EdgeSet& s) {
        for (const auto& c : circuits)
            if (is_subset(c, s)) return false;
        return true;
    };
    if (!independent(seed)) throw Error("greedy base: the seed is dependent");
    for (const auto& e : g.order()) {
        if (seed.count(e) || forbidden.count(e)) continue;
        EdgeSet trial = seed;
        trial.insert(e);
        if (independent(trial)) seed = std::move(trial);
    }
    return seed;
}

}  // namespace

StarBaseResult im_star(const StarBaseInput& input, const Budget& budget) {
    const TreeOfPresentations& star = input.star;
    const int center = input.center;
    if (center < 0 || center >= star.node_count()) throw Error("im_star: center out of range");
    for (auto [a, b] : star.edges())
        if (a != center && b != center) throw Error("im_star: the tree is not a star");
    if (!disjoint(input.x, input.y)) throw Error("im_star: X and Y overlap");
    EdgeSet real = star.real_ground().as_set();
    if (!is_subset(input.x, real) || !is_subset(input.y, real))
        throw Error("im_star: X and Y must be real edges");

    Presentation glued = glue(star);
    if (!glued.is_independent(input.x)) {
        Subspace inside = glued.vspace().restricted(input.x);
        throw Error("im_star: X is dependent, witness support " +
                    format(inside.basis().front().support()));
    }
    if (!glued.is_coindependent(input.y)) {
        Subspace inside = glued.wspace().restricted(input.y);
        throw Error("im_star: Y is codependent, witness support " +
                    format(inside.basis().front().support()));
    }

    const EdgeSet center_real = star.node_real_edges(center);

    // Without loss of generality X and Y live on the center: the leaf parts
    // are contracted/deleted into the leaf presentations and restored at
    // the end.
    std::vector<int> leaves;
    for (int t = 0; t < star.node_count(); ++t)
        if (t != center) leaves.push_back(t);

    std::map<int, Presentation> leaf_pres;
    for (int leaf : leaves) {
        EdgeSet leaf_real = star.node_real_edges(leaf);
        leaf_pres.emplace(leaf, star.node(leaf).minor(set_intersect(input.x, leaf_real),
                                                      set_intersect(input.y, leaf_real)));
    }
    EdgeSet x_center = set_intersect(input.x, center_real);
    EdgeSet y_center = set_intersect(input.y, center_real);

    // Localize each leaf to a finite core around its dummy set, then glue
    // the shrunken star and pick a base extending X and avoiding Y.
    std::map<int, Localization> locs;
    std::vector<Presentation> shrunk_nodes;
    std::vector<std::pair<int, int>> shrunk_edges;
    std::map<int, int> star_id;  // original node -> shrunken star node
    shrunk_nodes.push_back(star.node(center));
    star_id[center] = 0;
    for (int leaf : leaves) {
        const EdgeSet& f = star.shared(center, leaf);
        Localization loc = localize(leaf_pres.at(leaf), f, budget);
        shrunk_edges.emplace_back(0, static_cast<int>(shrunk_nodes.size()));
        star_id[leaf] = static_cast<int>(shrunk_nodes.size());
        shrunk_nodes.push_back(leaf_pres.at(leaf).minor(loc.contract_p, loc.delete_q));
        locs.emplace(leaf, std::move(loc));
    }
    TreeOfPresentations shrunk_star =
        TreeOfPresentations::make(std::move(shrunk_nodes), std::move(shrunk_edges));
    Presentation shrunk_glued = glue(shrunk_star);
    std::set<EdgeSet> circuits = shrunk_glued.vspace().min_supports(budget);

    EdgeSet base = greedy_base(shrunk_star.real_ground(), circuits, x_center, y_center);
    EdgeSet cobase = set_minus(shrunk_star.real_ground().as_set(), base);

    StarBaseResult result;
    result.x = set_union(input.x, set_intersect(base, center_real));
    result.y = set_union(input.y, set_intersect(cobase, center_real));
    for (int leaf : leaves) {
        const EdgeSet& f = star.shared(center, leaf);
        EdgeSet leaf_core_real = shrunk_star.node_real_edges(star_id.at(leaf));
        EdgeSet xf = independent_shrink(leaf_pres.at(leaf), f,
                                        set_union(locs.at(leaf).contract_p,
                                                  set_intersect(base, leaf_core_real)),
                                        budget);
        EdgeSet yf = independent_shrink(leaf_pres.at(leaf).dual(), f,
                                        set_union(locs.at(leaf).delete_q,
                                                  set_intersect(cobase, leaf_core_real)),
                                        budget);
        result.x = set_union(result.x, xf);
        result.y = set_union(result.y, yf);
    }

    // The five postconditions, on the original star.
    if (!disjoint(result.x, result.y)) throw Error("im_star: X' and Y' overlap");
    if (!is_subset(center_real, set_union(result.x, result.y)))
        throw Error("im_star: E' is not covered by X' and Y'");
    if (!is_subset(input.x, result.x) || !is_subset(input.y, result.y))
        throw Error("im_star: the output does not extend the input");
    if (!glued.is_independent(result.x)) throw Error("im_star: X' is dependent");
    if (!glued.is_coindependent(result.y)) throw Error("im_star: Y' is codependent");
    for (const auto& e : set_minus(center_real, result.x)) {
        auto witness = glued.vspace().member_through(e, result.x);
        if (!witness) throw Error("im_star: no spanning circuit for " + e);
        result.circuit_witness.emplace(e, std::move(*witness));
    }
    for (const auto& e : set_minus(center_real, result.y)) {
        auto witness = glued.wspace().member_through(e, result.y);
        if (!witness) throw Error("im_star: no cospanning cocircuit for " + e);
        result.cocircuit_witness.emplace(e, std::move(*witness));
    }
    Presentation contracted = glued.minor(result.x, result.y);
    SetSystemPair sys{contracted.ground(), contracted.vspace().min_supports(budget),
                      contracted.wspace().min_supports(budget)};
    for (const EdgeSet& component : components(sys)) {
        int touched = 0;
        for (int leaf : leaves)
            if (!disjoint(component, star.node(leaf).ground().as_set())) ++touched;
        if (touched >= 2)
            throw Error("im_star: a component of the minor meets two leaf grounds: " +
                        format(component));
    }
    return result;
}

namespace {

EdgeSet side_real_edges(const TreeOfPresentations& tree, int from, int towards) {
    EdgeSet out;
    for (int u : tree.branch_nodes(from, towards)) out = set_union(out, tree.node_real_edges(u));
    return out;
}

}  // namespace

BaseResult build_base(const TreeOfPresentations& tree, int root, const Budget& budget) {
    if (root < 0 || root >= tree.node_count()) throw Error("build_base: root out of range");
    Presentation full = glue(tree);

    // Breadth-first order with children in input order.
    std::vector<int> order;
    std::vector<int> parent(tree.node_count(), -1);
    std::deque<int> queue = {root};
    std::vector<bool> seen(tree.node_count(), false);
    seen[root] = true;
    while (!queue.empty()) {
        int t = queue.front();
        queue.pop_front();
        order.push_back(t);
        for (int u : tree.neighbors(t))
            if (!seen[u]) {
                seen[u] = true;
                parent[u] = t;
                queue.push_back(u);
            }
    }

    std::map<int, EdgeSet> x_at, y_at;
    BaseResult result;

    auto build_star_at = [&](int t) -> TreeOfPresentations {
        int s = parent[t];
        Presentation center = [&] {
            if (s < 0) return tree.node(t);
            // The processed side, glued, with the already placed far-side
            // elements contracted, restricted to this node minus the
            // parent dummies.
            std::set<int> processed = tree.branch_nodes(t, s);
            processed.insert(t);
            TreeOfPresentations upper = tree.induced(processed);
            EdgeSet far_real = side_real_edges(tree, t, s);
            EdgeSet contract = set_intersect(x_at.at(s), far_real);
            EdgeSet scope = set_minus(tree.node(t).ground().as_set(), tree.shared(s, t));
            return glue(upper).minor(contract, {}).restricted_to(scope);
        }();
        std::vector<Presentation> nodes = {center};
        std::vector<std::pair<int, int>> star_edges;
        for (int c : tree.neighbors(t)) {
            if (c == parent[t]) continue;
            star_edges.emplace_back(0, static_cast<int>(nodes.size()));
            nodes.push_back(glue(tree.induced(tree.branch_nodes(t, c))));
        }
        return TreeOfPresentations::make(std::move(nodes), std::move(star_edges));
    };

    for (int t : order) {
        int s = parent[t];
        StarBaseInput input{build_star_at(t), 0, {}, {}};
        if (s >= 0) {
            EdgeSet my_side = side_real_edges(tree, s, t);
            input.x = set_intersect(x_at.at(s), my_side);
            input.y = set_intersect(y_at.at(s), my_side);
        }
        StarBaseResult step = im_star(input, budget);

        EdgeSet x_t = s >= 0 ? set_union(x_at.at(s), step.x) : step.x;
        EdgeSet y_t = s >= 0 ? set_union(y_at.at(s), step.y) : step.y;
        x_at[t] = x_t;
        y_at[t] = y_t;
    }

    // Certify the eight conditions per node, after assembly.
    EdgeSet t_real_all;
    for (int t : order) {
        NodeCert cert;
        cert.node = t;
        cert.x_t = x_at.at(t);
        cert.y_t = y_at.at(t);
        int s = parent[t];
        auto fail = [&](int which, const std::string& why) {
            if (cert.detail.empty())
                cert.detail = "condition " + std::to_string(which) + ": " + why;
        };

        cert.conditions[0] = disjoint(cert.x_t, cert.y_t);
        if (!cert.conditions[0]) fail(1, "X_t meets Y_t");

        cert.conditions[1] = s < 0 || (is_subset(x_at.at(s), cert.x_t) && is_subset(y_at.at(s), cert.y_t));
        if (!cert.conditions[1]) fail(2, "monotonicity along the tree order");

        if (s < 0) {
            cert.conditions[2] = true;
        } else {
            EdgeSet my_side = side_real_edges(tree, s, t);
            cert.conditions[2] = is_subset(set_minus(cert.x_t, x_at.at(s)), my_side) &&
                                 is_subset(set_minus(cert.y_t, y_at.at(s)), my_side);
            if (!cert.conditions[2]) fail(3, "an increment left the branch");
        }

        EdgeSet t_real = tree.node_real_edges(t);
        cert.conditions[3] = is_subset(t_real, set_union(cert.x_t, cert.y_t));
        if (!cert.conditions[3]) fail(4, "node real edges not covered");

        cert.conditions[4] = full.is_independent(cert.x_t) && full.is_coindependent(cert.y_t);
        if (!cert.conditions[4]) fail(5, "independence in the glued tree");

        cert.conditions[5] = true;
        for (const auto& e : set_minus(t_real, cert.x_t))
            if (!full.vspace().member_through(e, cert.x_t)) {
                cert.conditions[5] = false;
                fail(6, "no spanning circuit for " + e);
                break;
            }
        cert.conditions[6] = true;
        for (const auto& e : set_minus(t_real, cert.y_t))
            if (!full.wspace().member_through(e, cert.y_t)) {
                cert.conditions[6] = false;
                fail(7, "no cospanning cocircuit for " + e);
                break;
            }

        cert.conditions[7] = true;
        Presentation minor = full.minor(set_intersect(cert.x_t, full.ground().as_set()),
                                        set_intersect(cert.y_t, full.ground().as_set()));
        SetSystemPair sys{minor.ground(), minor.vspace().min_supports(budget),
                          minor.wspace().min_supports(budget)};
        std::vector<EdgeSet> comps = components(sys);
        for (int c : tree.neighbors(t)) {
            if (c == parent[t]) continue;
            EdgeSet below = side_real_edges(tree, t, c);
            EdgeSet above = side_real_edges(tree, c, t);
            for (const auto& comp : comps)
                if (!disjoint(comp, below) && !disjoint(comp, above)) {
                    cert.conditions[7] = false;
                    fail(8, "a component crosses the edge to node " + std::to_string(c));
                }
        }

        t_real_all = set_union(t_real_all, t_real);
        result.certs.push_back(std::move(cert));
    }

    for (const auto& [t, xs] : x_at) result.x = set_union(result.x, xs);
    for (const auto& [t, ys] : y_at) result.y = set_union(result.y, ys);
    result.certified = true;
    for (const auto& c : result.certs)
        if (!c.all_ok()) result.certified = false;

    if (result.certified) {
        if (!disjoint(result.x, result.y) ||
            set_union(result.x, result.y) != tree.real_ground().as_set())
            throw Error("build_base: the output is not a partition of the real edges");
    }
    return result;
}

}  // namespace matglue
