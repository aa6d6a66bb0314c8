#include "matglue/presentation.hpp"

#include <algorithm>

namespace matglue {

Presentation Presentation::from_vspace(const Ground& g, const Subspace& v) {
    if (v.ground() != g) throw Error("vspace ground mismatch");
    return Presentation(g, v, v.complement());
}

Presentation Presentation::span_vectors(const Field& f, const Ground& g,
                                        const std::vector<SparseVec>& v_basis) {
    return from_vspace(g, Subspace::span(f, g, v_basis));
}

Presentation Presentation::checked(const Ground& g, const Subspace& v, const Subspace& w) {
    if (v.ground() != g || w.ground() != g) throw Error("subspace ground mismatch");
    if (v.field() != w.field()) throw Error("field mismatch between vectors and covectors");
    for (const auto& bv : v.basis())
        for (const auto& bw : w.basis())
            if (!orthogonal(bv, bw))
                throw Error("not a presentation: vector " + bv.str() + " not orthogonal to covector " +
                            bw.str());
    if (w != v.complement())
        throw Error(
            "not a presentation: covectors form a proper orthogonal subspace, not the full "
            "complement (dim " +
            std::to_string(w.dim()) + " of " + std::to_string(g.size() - v.dim()) + ")");
    return Presentation(g, v, w);
}

Presentation Presentation::minor(const EdgeSet& contract_p, const EdgeSet& delete_q) const {
    if (!disjoint(contract_p, delete_q)) throw Error("minor: contraction and deletion sets overlap");
    for (const auto& e : contract_p)
        if (!ground_.contains(e)) throw Error("minor: unknown edge " + e);
    for (const auto& e : delete_q)
        if (!ground_.contains(e)) throw Error("minor: unknown edge " + e);
    EdgeSet after_p = set_minus(ground_.as_set(), contract_p);
    EdgeSet rest = set_minus(after_p, delete_q);
    Subspace v = vspace_.contracted(after_p).restricted(rest);
    Subspace w = wspace_.restricted(after_p).contracted(rest);
    return checked(ground_.restricted_to(rest), v, w);
}

Presentation Presentation::restricted_to(const EdgeSet& x) const {
    return checked(ground_.restricted_to(x), vspace_.restricted(x), wspace_.contracted(x));
}

Presentation Presentation::contracted_to(const EdgeSet& x) const {
    return checked(ground_.restricted_to(x), vspace_.contracted(x), wspace_.restricted(x));
}

Presentation Presentation::dual() const { return Presentation(ground_, wspace_, vspace_); }

Presentation Presentation::adjoin(const SparseVec& x, const EdgeId& star) const {
    if (ground_.contains(star)) throw Error("adjoined element already present: " + star);
    if (!x.supported_in(ground_.as_set())) throw Error("adjoin: x has support outside the ground");
    const Field& f = field();
    Ground bigger = ground_.with_appended(star);

    std::vector<SparseVec> v_gens = vspace_.basis();
    SparseVec extra = x;
    extra.set(star, f.neg(f.one()));
    v_gens.push_back(extra);

    std::vector<SparseVec> w_gens;
    for (const auto& w : wspace_.basis()) {
        SparseVec lifted = w;
        lifted.set(star, dot(w, x));
        w_gens.push_back(lifted);
    }
    return checked(bigger, Subspace::span(f, bigger, v_gens), Subspace::span(f, bigger, w_gens));
}

bool Presentation::is_independent(const EdgeSet& s) const {
    return vspace_.restricted(set_intersect(s, ground_.as_set())).is_zero();
}

bool Presentation::is_coindependent(const EdgeSet& s) const {
    return wspace_.restricted(set_intersect(s, ground_.as_set())).is_zero();
}

namespace {

// Solves for a vector of `space` subject to: zero outside `allowed`, and
// agreeing with `target` on `pinned`. Returns the canonical solution.
std::optional<SparseVec> pinned_member(const Subspace& space, const EdgeSet& allowed,
                                       const SparseVec& target, const EdgeSet& pinned) {
    const Field& f = space.field();
    std::vector<linalg::Row> a;
    linalg::Row b;
    for (const auto& e : space.ground().order()) {
        bool pin = pinned.count(e) != 0;
        bool free_zero = allowed.count(e) == 0;
        if (!pin && !free_zero) continue;
        linalg::Row row(space.dim(), f.zero());
        for (std::size_t i = 0; i < space.dim(); ++i) row[i] = space.basis()[i].at(e);
        a.push_back(std::move(row));
        b.push_back(pin ? target.at(e) : f.zero());
    }
    linalg::AffineSolution sol = linalg::solve(f, a, b, space.dim());
    if (!sol.feasible) return std::nullopt;
    SparseVec v(f);
    for (std::size_t i = 0; i < space.dim(); ++i) v.add_scaled(space.basis()[i], sol.particular[i]);
    return v;
}

}  // namespace

SparseVec minimal_extension(const Presentation& pi, const SparseVec& v0, const EdgeSet& f,
                            const EdgeSet& x, const Budget& budget) {
    if (!pi.vspace().contains(v0)) throw Error("minimal_extension: v0 is not a vector of Pi");
    if (!disjoint(f, x)) throw Error("minimal_extension: F and X must be disjoint");
    const Ground& g = pi.ground();
    EdgeSet x_in = set_intersect(x, g.as_set());
    EdgeSet supp0 = v0.support();
    EdgeSet mandatory = set_intersect(f, supp0);            // forced into supp(v)\X
    std::vector<EdgeId> optional_elems;                     // choosable part of supp(v)\X
    for (const auto& e : g.order())
        if (supp0.count(e) && !x_in.count(e) && !f.count(e)) optional_elems.push_back(e);

    if (optional_elems.size() >= 63 ||
        (std::uint64_t{1} << optional_elems.size()) > budget.max_enumeration)
        throw CapExceeded("minimal_extension: too many optional support elements");

    EdgeSet pinned = set_intersect(f, g.as_set());

    // All subsets, ordered by size then by ground-lexicographic position;
    // keep the inclusion-minimal feasible ones.
    std::vector<EdgeSet> feasible_minimal;
    std::optional<SparseVec> best;
    const std::uint64_t total = std::uint64_t{1} << optional_elems.size();
    std::vector<std::pair<std::vector<std::size_t>, std::uint64_t>> order;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<std::size_t> key;
        key.push_back(static_cast<std::size_t>(__builtin_popcountll(mask)));
        for (std::size_t i = 0; i < optional_elems.size(); ++i)
            if (mask & (std::uint64_t{1} << i)) key.push_back(g.pos(optional_elems[i]));
        order.emplace_back(std::move(key), mask);
    }
    std::sort(order.begin(), order.end());

    for (const auto& [key, mask] : order) {
        EdgeSet t = mandatory;
        for (std::size_t i = 0; i < optional_elems.size(); ++i)
            if (mask & (std::uint64_t{1} << i)) t.insert(optional_elems[i]);
        bool dominated = false;
        for (const auto& seen : feasible_minimal)
            if (is_subset(seen, t)) {
                dominated = true;
                break;
            }
        if (dominated) continue;
        EdgeSet allowed = set_union(t, x_in);
        auto v = pinned_member(pi.vspace(), allowed, v0, pinned);
        if (v.has_value()) {
            feasible_minimal.push_back(t);
            if (!best.has_value()) best = v;  // first in (size, lex) order among minimal
        }
    }
    if (!best.has_value()) throw Error("minimal_extension: the constraint set is empty");

    // The (size, lex)-first minimal set is not necessarily the ground-lex
    // least minimal set; re-select.
    const EdgeSet* least = nullptr;
    for (const auto& t : feasible_minimal)
        if (least == nullptr || g.set_less(t, *least)) least = &t;
    if (!(*least == feasible_minimal.front())) {
        best = pinned_member(pi.vspace(), set_union(*least, x_in), v0, pinned);
    }
    return *best;
}

EdgeSet independent_shrink(const Presentation& pi, const EdgeSet& f, const EdgeSet& p,
                           const Budget& budget) {
    if (!disjoint(f, p)) throw Error("independent_shrink: F and P must be disjoint");
    const Ground& g = pi.ground();

    // U = V restricted to F ∪ P, echelonized with the F columns first: rows
    // with pivots in F project to a basis of (V / P)|_F, and rows with
    // pivots in P span the kernel of that projection.
    std::vector<EdgeId> reordered;
    for (const auto& e : g.order())
        if (f.count(e)) reordered.push_back(e);
    for (const auto& e : g.order())
        if (p.count(e)) reordered.push_back(e);
    Ground f_then_p(reordered);
    Subspace u_sub = pi.vspace().restricted(set_union(f, p));
    Subspace u = Subspace::span(pi.field(), f_then_p, u_sub.basis());

    EdgeSet p_prime;
    for (const auto& row : u.basis()) {
        if (!f.count(Subspace::leading_edge(f_then_p, row))) continue;  // pivot in P: kernel row
        SparseVec v = minimal_extension(pi, row, f, p_prime, budget);
        for (const auto& e : v.support())
            if (p.count(e)) p_prime.insert(e);
    }

    if (!pi.is_independent(p_prime))
        throw Error("independent_shrink: internal error, produced set is dependent");
    Presentation lhs = pi.minor(p, {}).restricted_to(f);
    Presentation rhs = pi.minor(p_prime, {}).restricted_to(f);
    if (lhs != rhs)
        throw Error("independent_shrink: internal error, contraction agreement failed");
    return p_prime;
}

namespace {

// Minimal-support lifts, one per basis element of space.F, per the pickPQ
// recipe: echelonize with the F columns first and minimize each F-pivot row
// with F pinned. `scope` is pi (vector side) or pi.dual() (covector side).
std::vector<SparseVec> minimal_lifts(const Presentation& scope, const EdgeSet& f,
                                     const Budget& budget) {
    const Ground& g = scope.ground();
    std::vector<EdgeId> reordered;
    for (const auto& e : g.order())
        if (f.count(e)) reordered.push_back(e);
    for (const auto& e : g.order())
        if (!f.count(e)) reordered.push_back(e);
    Ground f_first(reordered);
    Subspace reord = Subspace::span(scope.field(), f_first, scope.vspace().basis());
    std::vector<SparseVec> out;
    for (const auto& row : reord.basis()) {
        if (!f.count(Subspace::leading_edge(f_first, row))) continue;  // kernel row
        out.push_back(minimal_extension(scope, row, f, {}, budget));
    }
    return out;
}

}  // namespace

Localization localize(const Presentation& pi, const EdgeSet& f, const Budget& budget) {
    const Ground& g = pi.ground();
    for (const auto& e : f)
        if (!g.contains(e)) throw Error("localize: F leaves the ground: " + e);

    std::vector<SparseVec> v_lifts = minimal_lifts(pi, f, budget);
    std::vector<SparseVec> w_lifts = minimal_lifts(pi.dual(), f, budget);

    EdgeSet v_supp, w_supp;
    for (const auto& v : v_lifts) v_supp = set_union(v_supp, v.support());
    for (const auto& w : w_lifts) w_supp = set_union(w_supp, w.support());

    EdgeSet f_prime = set_union(f, set_intersect(v_supp, w_supp));
    Localization out;
    out.contract_p = set_minus(v_supp, f_prime);
    out.delete_q = set_minus(set_minus(g.as_set(), out.contract_p), f_prime);

    Presentation shrunk = pi.minor(out.contract_p, out.delete_q);
    if (shrunk.restricted_to(f) != pi.restricted_to(f) ||
        shrunk.contracted_to(f) != pi.contracted_to(f))
        throw Error("localize: internal error, agreement equations failed");
    return out;
}

O2SweepResult o2_sweep(const Subspace& v, const Subspace& w, const Budget& budget) {
    if (v.ground() != w.ground()) throw Error("o2_sweep: ground mismatch");
    const Ground& g = v.ground();
    const std::size_t n = g.size();
    if (n >= 63 || static_cast<std::uint64_t>(n) * (std::uint64_t{1} << (n > 0 ? n - 1 : 0)) >
                       budget.max_o2_partitions)
        throw CapExceeded("o2_sweep: partition count exceeds the budget");

    O2SweepResult out;
    for (std::size_t ei = 0; ei < n; ++ei) {
        const EdgeId& e = g.at(ei);
        std::vector<EdgeId> others;
        for (std::size_t i = 0; i < n; ++i)
            if (i != ei) others.push_back(g.at(i));
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others.size()); ++mask) {
            EdgeSet p, q;
            for (std::size_t i = 0; i < others.size(); ++i)
                ((mask >> i) & 1 ? p : q).insert(others[i]);
            if (v.member_through(e, p).has_value()) continue;
            if (w.member_through(e, q).has_value()) continue;
            out.holds = false;
            out.e = e;
            out.p = p;
            return out;
        }
    }
    return out;
}

}  // namespace matglue
