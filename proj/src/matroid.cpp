#include "matglue/matroid.hpp"

#include <algorithm>

namespace matglue {

namespace {

using Mask = std::uint64_t;

Mask to_mask(const Ground& g, const EdgeSet& s) {
    Mask m = 0;
    for (const auto& e : s) m |= Mask{1} << g.pos(e);
    return m;
}

EdgeSet from_mask(const Ground& g, Mask m) {
    EdgeSet s;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (m & (Mask{1} << i)) s.insert(g.at(i));
    return s;
}

}  // namespace

std::set<EdgeSet> matroid_bases(const Ground& ground, const std::set<EdgeSet>& circuits,
                                const Budget& budget) {
    const std::size_t n = ground.size();
    if (n > budget.oracle_ground_cap) throw CapExceeded("matroid oracle: ground size over cap");
    std::vector<Mask> cmasks;
    for (const auto& c : circuits) cmasks.push_back(to_mask(ground, c));

    const Mask full = n == 0 ? 0 : (Mask{1} << n) - 1;
    std::vector<bool> independent(std::size_t{1} << n, true);
    for (Mask s = 0; s <= full; ++s) {
        for (Mask c : cmasks)
            if ((c & ~s) == 0) {
                independent[s] = false;
                break;
            }
        if (s == full) break;
    }
    std::set<EdgeSet> bases;
    for (Mask s = 0; s <= full; ++s) {
        if (independent[s]) {
            bool maximal = true;
            for (std::size_t i = 0; i < n && maximal; ++i)
                if (!(s & (Mask{1} << i)) && independent[s | (Mask{1} << i)]) maximal = false;
            if (maximal) bases.insert(from_mask(ground, s));
        }
        if (s == full) break;
    }
    return bases;
}

MatroidVerdict verify_matroid(const MatroidCert& cert, const Budget& budget) {
    const Ground& g = cert.ground;
    const std::size_t n = g.size();
    if (n > budget.oracle_ground_cap) throw CapExceeded("matroid oracle: ground size over cap");

    for (const auto& fam : {cert.circuits, cert.cocircuits}) {
        for (const auto& c : fam) {
            if (c.empty()) return {false, "empty member in circuit family"};
            for (const auto& e : c)
                if (!g.contains(e)) return {false, "member leaves the ground at " + e};
        }
    }

    // Antichain.
    for (const auto* fam : {&cert.circuits, &cert.cocircuits}) {
        for (const auto& c1 : *fam)
            for (const auto& c2 : *fam)
                if (c1 != c2 && is_subset(c1, c2))
                    return {false, "antichain violated: " + format(c1) + " inside " + format(c2)};
    }

    // Circuit elimination.
    for (const auto& c1 : cert.circuits) {
        for (const auto& c2 : cert.circuits) {
            if (c1 == c2) continue;
            for (const auto& e : set_intersect(c1, c2)) {
                EdgeSet room = set_minus(set_union(c1, c2), {e});
                bool found = false;
                for (const auto& c3 : cert.circuits)
                    if (is_subset(c3, room)) {
                        found = true;
                        break;
                    }
                if (!found)
                    return {false, "elimination fails for " + format(c1) + ", " + format(c2) +
                                       " at " + e};
            }
        }
    }

    std::set<EdgeSet> bases = matroid_bases(g, cert.circuits, budget);
    if (bases.empty()) return {false, "no base found"};
    std::size_t rank = bases.begin()->size();
    for (const auto& b : bases)
        if (b.size() != rank)
            return {false, "bases of different sizes: " + format(*bases.begin()) + " vs " + format(b)};

    // Dual circuits: minimal sets meeting every base.
    std::vector<Mask> bmasks;
    for (const auto& b : bases) bmasks.push_back(to_mask(g, b));
    const Mask full = n == 0 ? 0 : (Mask{1} << n) - 1;
    std::vector<Mask> dual;
    for (std::size_t size = 1; size <= n; ++size) {
        for (Mask s = 0; s <= full; ++s) {
            if (static_cast<std::size_t>(__builtin_popcountll(s)) != size) {
                if (s == full) break;
                continue;
            }
            bool dominated = false;
            for (Mask seen : dual)
                if ((seen & ~s) == 0) {
                    dominated = true;
                    break;
                }
            if (!dominated) {
                bool transversal = true;
                for (Mask b : bmasks)
                    if ((s & b) == 0) {
                        transversal = false;
                        break;
                    }
                if (transversal) dual.push_back(s);
            }
            if (s == full) break;
        }
    }
    std::set<EdgeSet> dual_sets;
    for (Mask d : dual) dual_sets.insert(from_mask(g, d));
    if (dual_sets != cert.cocircuits) {
        std::string diff;
        for (const auto& d : dual_sets)
            if (!cert.cocircuits.count(d)) {
                diff = "missing cocircuit " + format(d);
                break;
            }
        if (diff.empty())
            for (const auto& d : cert.cocircuits)
                if (!dual_sets.count(d)) {
                    diff = "extraneous cocircuit " + format(d);
                    break;
                }
        return {false, "cocircuits are not the dual circuits: " + diff};
    }
    return {};
}

MatroidCert presented_matroid(const Presentation& pi, const Budget& budget) {
    MatroidCert cert;
    cert.ground = pi.ground();
    cert.circuits = pi.vspace().min_supports(budget);
    cert.cocircuits = pi.wspace().min_supports(budget);
    MatroidVerdict verdict = verify_matroid(cert, budget);
    if (!verdict.valid)
        throw Error("presented matroid failed the oracle: " + verdict.failure);
    return cert;
}

}  // namespace matglue
