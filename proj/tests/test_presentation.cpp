#include <doctest.h>

#include <random>

#include "matglue/presentation.hpp"

using namespace matglue;

namespace {

SparseVec vec(const Field& f, std::initializer_list<std::pair<EdgeId, int>> entries) {
    SparseVec v(f);
    for (const auto& [e, n] : entries) v.set(e, f.from_int(n));
    return v;
}

// The triangle fixture: single 3-element circuit over GF(2).
Presentation tri() {
    Field f2 = Field::gf(2);
    Ground g({"a", "b", "c"});
    return Presentation::span_vectors(f2, g, {vec(f2, {{"a", 1}, {"b", 1}, {"c", 1}})});
}

std::mt19937_64 rng(97531);

Presentation random_presentation(const Field& f, std::size_t n, std::size_t gens) {
    std::vector<EdgeId> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("e" + std::to_string(i));
    Ground g(ids);
    std::vector<SparseVec> vs;
    for (std::size_t k = 0; k < gens; ++k) {
        SparseVec v(f);
        for (const auto& e : g.order()) {
            if (f.is_prime_field())
                v.set(e, f.from_int(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(f.modulus()))));
            else
                v.set(e, f.from_int(static_cast<std::int64_t>(rng() % 5) - 2));
        }
        vs.push_back(v);
    }
    return Presentation::from_vspace(g, Subspace::span(f, g, vs));
}

}  // namespace

TEST_CASE("presentation construction enforces the complement pair") {
    Field f2 = Field::gf(2);
    Ground g({"a", "b", "c"});

    Presentation t = tri();
    CHECK(t.wspace() ==
          Subspace::span(f2, g, {vec(f2, {{"a", 1}, {"b", 1}}), vec(f2, {{"b", 1}, {"c", 1}})}));

    Ground ga({"a"});
    Presentation full = Presentation::span_vectors(f2, ga, {vec(f2, {{"a", 1}})});
    CHECK(full.wspace().is_zero());

    // A proper orthogonal subspace is rejected: dim 1 + 1 < 3.
    Subspace v = Subspace::span(f2, g, {vec(f2, {{"a", 1}, {"b", 1}, {"c", 1}})});
    Subspace w_small = Subspace::span(f2, g, {vec(f2, {{"a", 1}, {"b", 1}})});
    CHECK_THROWS_WITH_AS(Presentation::checked(g, v, w_small),
                         doctest::Contains("proper orthogonal subspace"), Error);

    // A non-orthogonal pair is rejected outright.
    Subspace w_bad = Subspace::span(f2, g, {vec(f2, {{"a", 1}})});
    CHECK_THROWS_WITH_AS(Presentation::checked(g, v, w_bad), doctest::Contains("not orthogonal"),
                         Error);

    // The full complement passes validation.
    CHECK(Presentation::checked(g, v, v.complement()) == t);
}

TEST_CASE("presentation minors") {
    Presentation t = tri();
    Field f2 = t.field();

    CHECK(t.minor({}, {}) == t);

    Presentation contracted = t.minor({"c"}, {});
    Ground gab({"a", "b"});
    CHECK(contracted.vspace() == Subspace::span(f2, gab, {vec(f2, {{"a", 1}, {"b", 1}})}));
    CHECK(contracted.wspace() == Subspace::span(f2, gab, {vec(f2, {{"a", 1}, {"b", 1}})}));

    Presentation deleted = t.minor({}, {"c"});
    CHECK(deleted.vspace().is_zero());
    CHECK(deleted.wspace() == Subspace::full_space(f2, gab));

    CHECK_THROWS_AS(t.minor({"a"}, {"a"}), Error);
}

TEST_CASE("minors of presentations are presentations on random fixtures") {
    for (Field f : {Field::gf(2), Field::gf(3), Field::rationals()}) {
        for (int trial = 0; trial < 10; ++trial) {
            Presentation pi = random_presentation(f, 6, 1 + rng() % 5);
            EdgeSet p, q;
            for (const auto& e : pi.ground().order()) {
                switch (rng() % 3) {
                    case 0: p.insert(e); break;
                    case 1: q.insert(e); break;
                    default: break;
                }
            }
            // checked() inside minor() revalidates the complement invariant.
            Presentation m = pi.minor(p, q);
            CHECK(m.ground().size() == 6 - p.size() - q.size());
        }
    }
}

TEST_CASE("adjoin") {
    Field f2 = Field::gf(2);

    SUBCASE("zero x: vectors gain the bare star generator, covectors get w(*) = 0") {
        Presentation t = tri();
        Presentation tx = t.adjoin(SparseVec::zero(f2));
        CHECK(tx.ground().order() == std::vector<EdgeId>{"a", "b", "c", "*"});
        CHECK(tx.vspace().contains(SparseVec::unit(f2, "*")));
        for (const auto& w : tx.wspace().basis()) CHECK(w.at("*") == f2.zero());
        CHECK(tx.vspace().dim() == t.vspace().dim() + 1);
        CHECK(tx.wspace().dim() == t.wspace().dim());
    }

    SUBCASE("full space on one element") {
        Ground ga({"a"});
        Presentation full = Presentation::span_vectors(f2, ga, {vec(f2, {{"a", 1}})});
        Presentation fx = full.adjoin(vec(f2, {{"a", 1}}));
        CHECK(fx.vspace() == Subspace::full_space(f2, fx.ground()));
        CHECK(fx.wspace().is_zero());
    }

    SUBCASE("star element must be fresh") {
        CHECK_THROWS_AS(tri().adjoin(SparseVec::zero(f2), "a"), Error);
    }

    SUBCASE("adjoin commutes with minors avoiding supp(x)") {
        Presentation t = tri();
        SparseVec x = vec(f2, {{"a", 1}});
        Presentation lhs = t.adjoin(x).minor({"b"}, {});
        Presentation rhs = t.minor({"b"}, {}).adjoin(x);
        CHECK(lhs == rhs);

        for (Field f : {Field::gf(3), Field::rationals()}) {
            for (int trial = 0; trial < 6; ++trial) {
                Presentation pi = random_presentation(f, 5, 2);
                SparseVec xx(f);
                xx.set("e0", f.one());
                // A fractional coordinate over the rationals.
                xx.set("e1", f.div(f.one(), f.from_int(2)));
                EdgeSet p = {"e2"};
                EdgeSet q = {"e3"};
                CHECK(pi.adjoin(xx).minor(p, q) == pi.minor(p, q).adjoin(xx));
            }
        }
    }
}

TEST_CASE("minimal extension") {
    Presentation t = tri();
    Field f2 = t.field();
    SparseVec v0 = vec(f2, {{"a", 1}, {"b", 1}, {"c", 1}});

    SUBCASE("pinning the whole support returns v0") {
        CHECK(minimal_extension(t, v0, {"a", "b", "c"}, {}) == v0);
    }

    SUBCASE("X absorbs everything but the pin") {
        SparseVec v = minimal_extension(t, v0, {"a"}, {"b", "c"});
        CHECK(v.at("a") == f2.one());
        CHECK(set_minus(v.support(), {"b", "c"}) == EdgeSet{"a"});
    }

    SUBCASE("no slack: the only nonzero vector comes back") {
        CHECK(minimal_extension(t, v0, {"a"}, {}) == v0);
    }

    SUBCASE("v0 must be a vector") {
        CHECK_THROWS_AS(minimal_extension(t, vec(f2, {{"a", 1}}), {"a"}, {}), Error);
    }

    SUBCASE("the leftover support is independent in Pi/X") {
        for (Field f : {Field::gf(2), Field::gf(3), Field::rationals()}) {
            for (int trial = 0; trial < 10; ++trial) {
                Presentation pi = random_presentation(f, 6, 1 + rng() % 4);
                if (pi.vspace().is_zero()) continue;
                SparseVec seed = pi.vspace().basis()[rng() % pi.vspace().dim()];
                EdgeSet support = seed.support();
                if (support.empty()) continue;
                EdgeSet fset = {*support.begin()};
                EdgeSet x;
                for (const auto& e : pi.ground().order())
                    if (!fset.count(e) && rng() % 2) x.insert(e);
                SparseVec v = minimal_extension(pi, seed, fset, x);
                CHECK(v.restricted(fset) == seed.restricted(fset));
                CHECK(is_subset(v.support(), set_union(seed.support(), x)));
                // The part of the support that the minimization could act on
                // is independent after contracting X.
                Presentation contracted = pi.minor(x, {});
                CHECK(contracted.is_independent(set_minus(v.support(), set_union(x, fset))));
            }
        }
    }
}

TEST_CASE("independent shrink") {
    Presentation t = tri();

    CHECK(independent_shrink(t, {"a"}, {}).empty());

    // Contracting all of {b,c} is the only way to free the a-coordinate, and
    // {b,c} is independent, so nothing can be dropped here.
    EdgeSet shrunk = independent_shrink(t, {"a"}, {"b", "c"});
    CHECK(shrunk == EdgeSet{"b", "c"});

    // With the richer cut-space side there is real slack: contracting one
    // element suffices. The canonical lift (a+c) pins the choice to c.
    Presentation dual = t.dual();
    EdgeSet shrunk_dual = independent_shrink(dual, {"a"}, {"b", "c"});
    CHECK(shrunk_dual == EdgeSet{"c"});
    CHECK(dual.minor({"b", "c"}, {}).restricted_to({"a"}) ==
          dual.minor(shrunk_dual, {}).restricted_to({"a"}));

    SUBCASE("postconditions on random fixtures, and idempotence") {
        for (Field f : {Field::gf(2), Field::gf(3), Field::rationals()}) {
            for (int trial = 0; trial < 10; ++trial) {
                Presentation pi = random_presentation(f, 6, 1 + rng() % 4);
                EdgeSet fset, p;
                for (const auto& e : pi.ground().order()) {
                    switch (rng() % 3) {
                        case 0: fset.insert(e); break;
                        case 1: p.insert(e); break;
                        default: break;
                    }
                }
                EdgeSet p1 = independent_shrink(pi, fset, p);
                CHECK(is_subset(p1, p));
                CHECK(pi.is_independent(p1));
                CHECK(pi.minor(p, {}).restricted_to(fset) == pi.minor(p1, {}).restricted_to(fset));
                CHECK(independent_shrink(pi, fset, p1) == p1);
            }
        }
    }
}

TEST_CASE("localize") {
    Presentation t = tri();

    SUBCASE("full F needs no surgery") {
        Localization loc = localize(t, {"a", "b", "c"});
        CHECK(loc.contract_p.empty());
        CHECK(loc.delete_q.empty());
    }

    SUBCASE("the triangle around a splits deterministically") {
        // The minimal lifts are (a+b+c) and (a+c), so the middle window is
        // {a, c} and only b gets contracted away.
        Localization loc = localize(t, {"a"});
        CHECK(loc.contract_p == EdgeSet{"b"});
        CHECK(loc.delete_q.empty());
        Presentation shrunk = t.minor(loc.contract_p, loc.delete_q);
        CHECK(shrunk.restricted_to({"a"}) == t.restricted_to({"a"}));
        CHECK(shrunk.contracted_to({"a"}) == t.contracted_to({"a"}));
    }

    SUBCASE("agreement equations hold, always") {
        for (Field f : {Field::gf(2), Field::gf(3), Field::rationals()}) {
            for (int trial = 0; trial < 10; ++trial) {
                Presentation pi = random_presentation(f, 7, 1 + rng() % 5);
                EdgeSet fset;
                for (const auto& e : pi.ground().order())
                    if (rng() % 3 == 0) fset.insert(e);
                Localization loc = localize(pi, fset);
                CHECK(disjoint(loc.contract_p, loc.delete_q));
                CHECK(disjoint(loc.contract_p, fset));
                CHECK(disjoint(loc.delete_q, fset));
                Presentation shrunk = pi.minor(loc.contract_p, loc.delete_q);
                CHECK(shrunk.restricted_to(fset) == pi.restricted_to(fset));
                CHECK(shrunk.contracted_to(fset) == pi.contracted_to(fset));
            }
        }
    }
}

TEST_CASE("o2 sweep certifies complements and rejects proper pairs") {
    for (Field f : {Field::gf(2), Field::gf(3), Field::rationals()}) {
        for (int trial = 0; trial < 6; ++trial) {
            Presentation pi = random_presentation(f, 5, 1 + rng() % 5);
            CHECK(o2_sweep(pi.vspace(), pi.wspace()).holds);
            if (pi.wspace().dim() == 0) continue;
            // Drop one covector basis element: orthogonal but proper.
            std::vector<SparseVec> fewer(pi.wspace().basis().begin(), pi.wspace().basis().end() - 1);
            Subspace smaller = Subspace::span(f, pi.ground(), fewer);
            CHECK(!o2_sweep(pi.vspace(), smaller).holds);
        }
    }
}
