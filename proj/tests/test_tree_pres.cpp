#include <doctest.h>

#include "fixtures.hpp"

using namespace matglue;
using namespace matglue::fixtures;

namespace {
std::mt19937_64 rng(777);
}

TEST_CASE("tree construction derives shared sets and the real ground") {
    TreeOfPresentations t = twosum();
    CHECK(t.shared(0, 1) == EdgeSet{"g"});
    CHECK(t.dummy_edges() == EdgeSet{"g"});
    CHECK(t.real_ground().order() == std::vector<EdgeId>{"a", "b", "c", "d"});
    CHECK(t.node_of_real_edge("c") == 1);
    CHECK(t.node_real_edges(0) == EdgeSet{"a", "b"});

    // An edge in three grounds is rejected.
    CHECK_THROWS_WITH_AS(
        TreeOfPresentations::make(
            {tri_on({"a", "b", "g"}), tri_on({"g", "c", "d"}), tri_on({"g", "e", "f"})},
            {{0, 1}, {1, 2}}),
        doctest::Contains("more than two"), Error);

    // Shared ids across a non-edge are rejected.
    CHECK_THROWS_WITH_AS(
        TreeOfPresentations::make(
            {tri_on({"a", "b", "s"}), tri_on({"x", "c", "d"}), tri_on({"s", "e", "f"})},
            {{0, 1}, {1, 2}}),
        doctest::Contains("non-adjacent"), Error);
}

TEST_CASE("branches and induced subtrees") {
    TreeOfPresentations t = path3();
    CHECK(t.branch_nodes(1, 0) == std::set<int>{0});
    CHECK(t.branch_nodes(1, 2) == std::set<int>{2});
    CHECK(t.branch_nodes(0, 1) == std::set<int>{1, 2});

    // In the branch, the old dummy g1 becomes a real edge.
    TreeOfPresentations branch = t.induced({1, 2});
    CHECK(branch.real_ground().as_set() == EdgeSet{"g1", "c", "d", "e", "f"});
}

TEST_CASE("glue of a single node is the node") {
    Presentation p = tri();
    TreeOfPresentations t = TreeOfPresentations::make({p}, {});
    CHECK(glue(t) == p);
}

TEST_CASE("glue of the two-triangle tree is the four-circuit") {
    Presentation glued = glue(twosum());
    MatroidCert cert = presented_matroid(glued);
    CHECK(cert.circuits == std::set<EdgeSet>{{"a", "b", "c", "d"}});
}

TEST_CASE("glue of the three-node path is the six-circuit") {
    MatroidCert cert = presented_matroid(glue(path3()));
    CHECK(cert.circuits == std::set<EdgeSet>{{"a", "b", "c", "d", "e", "f"}});
}

TEST_CASE("pre-vector enumeration") {
    SUBCASE("single triangle node") {
        TreeOfPresentations t = TreeOfPresentations::make({tri()}, {});
        auto pvs = enumerate_prevectors(t, false);
        CHECK(pvs.size() == 1);
        CHECK(underlying(t, pvs[0]).support() == EdgeSet{"a", "b", "c"});
    }

    SUBCASE("two-sum: exactly one pre-vector, spanning both nodes") {
        TreeOfPresentations t = twosum();
        auto pvs = enumerate_prevectors(t, false);
        REQUIRE(pvs.size() == 1);
        CHECK(pvs[0].subtree == std::set<int>{0, 1});
        CHECK(underlying(t, pvs[0]).support() == EdgeSet{"a", "b", "c", "d"});
        for (const auto& pv : pvs) CHECK(pv.subtree.size() > 1);
    }

    SUBCASE("validation catches broken carriers") {
        TreeOfPresentations t = twosum();
        auto pvs = enumerate_prevectors(t, false);
        PreVector broken = pvs[0];
        broken.local.at(1) = SparseVec::zero(t.field());
        std::string why;
        CHECK(!is_prevector(t, broken, false, &why));
    }
}

TEST_CASE("span equality: enumerated pre-vectors generate the glued spaces") {
    std::vector<TreeOfPresentations> trees;
    trees.push_back(twosum());
    trees.push_back(path3());
    for (int trial = 0; trial < 6; ++trial)
        trees.push_back(random_tree(rng, 2 + static_cast<int>(rng() % 3), 2, 1 + rng() % 2));

    for (const auto& t : trees) {
        Presentation glued = glue(t);
        for (bool covector : {false, true}) {
            std::vector<SparseVec> gens;
            for (const auto& pv : enumerate_prevectors(t, covector)) gens.push_back(underlying(t, pv));
            Subspace spanned = Subspace::span(t.field(), t.real_ground(), gens);
            CHECK(spanned == (covector ? glued.wspace() : glued.vspace()));
        }
    }
}

TEST_CASE("pairing sum of a pre-vector against a pre-covector vanishes") {
    for (const auto& t : {twosum(), path3()}) {
        auto pvs = enumerate_prevectors(t, false);
        auto pws = enumerate_prevectors(t, true);
        const Field& f = t.field();
        for (const auto& pv : pvs)
            for (const auto& pw : pws) {
                Scalar sum = f.zero();
                for (int node : pv.subtree) {
                    if (!pw.subtree.count(node)) continue;
                    sum = f.add(sum, dot(pv.local.at(node), pw.local.at(node)));
                }
                CHECK(f.is_zero(sum));
                CHECK(orthogonal(underlying(t, pv), underlying(t, pw)));
            }
    }
}

TEST_CASE("glue commutes with minors on real edges") {
    for (int trial = 0; trial < 6; ++trial) {
        TreeOfPresentations t = random_tree(rng, 3, 2, 1);
        EdgeSet p, q;
        for (const auto& e : t.real_ground().order()) {
            switch (rng() % 3) {
                case 0: p.insert(e); break;
                case 1: q.insert(e); break;
                default: break;
            }
        }
        Presentation direct = glue(t).minor(p, q);

        std::vector<Presentation> nodes;
        for (int i = 0; i < t.node_count(); ++i) {
            const Presentation& pi = t.node(i);
            nodes.push_back(pi.minor(set_intersect(p, pi.ground().as_set()),
                                     set_intersect(q, pi.ground().as_set())));
        }
        std::vector<std::pair<int, int>> edges = t.edges();
        Presentation via_nodes = glue(TreeOfPresentations::make(std::move(nodes), std::move(edges)));
        CHECK(direct == via_nodes);
    }
}

TEST_CASE("neat count") {
    TreeOfPresentations t = twosum();
    auto pvs = enumerate_prevectors(t, false);
    auto pws = enumerate_prevectors(t, true);
    REQUIRE(!pvs.empty());

    // Any pre-covector through g meets the unique pre-vector at the shared
    // set exactly once.
    bool saw_through_g = false;
    for (const auto& pw : pws) {
        if (pw.subtree != std::set<int>{0, 1}) continue;
        saw_through_g = true;
        CHECK(neat_count(t, pvs[0], pw, 0) == 1);
    }
    CHECK(saw_through_g);

    // Disjoint supports at the node count zero.
    PreVector lonely;
    lonely.subtree = {0};
    lonely.local.emplace(0, SparseVec::zero(t.field()));
    CHECK(neat_count(t, pvs[0], lonely, 1) == 0);
}

TEST_CASE("stellar instances") {
    SUBCASE("zero leaves: the verdict is the presentation's own validity") {
        Presentation p = tri();
        TreeOfPresentations star = TreeOfPresentations::make({p}, {});
        CHECK(check_stellar_instance(p, star, 0).ok);
    }

    SUBCASE("triangle center with one two-element leaf glues to a triangle") {
        Presentation center = tri_on({"a", "b", "g"});
        Field f2 = Field::gf(2);
        Ground leaf_ground({"g", "x"});
        Presentation leaf =
            Presentation::span_vectors(f2, leaf_ground, {vec(f2, {{"g", 1}, {"x", 1}})});
        TreeOfPresentations star = TreeOfPresentations::make({center, leaf}, {{0, 1}});
        StellarVerdict v = check_stellar_instance(center, star, 0);
        CHECK_MESSAGE(v.ok, v.detail);
        CHECK(presented_matroid(glue(star)).circuits == std::set<EdgeSet>{{"a", "b", "x"}});
    }

    SUBCASE("finite stars over fixtures are always stellar-consistent") {
        for (int trial = 0; trial < 4; ++trial) {
            TreeOfPresentations star = random_tree(rng, 1 + static_cast<int>(rng() % 4), 2, 1);
            bool is_star = true;
            for (auto [a, b] : star.edges())
                if (a != 0 && b != 0) is_star = false;
            if (!is_star) continue;
            CHECK(check_stellar_instance(star.node(0), star, 0).ok);
        }
    }
}

TEST_CASE("stellagain construction") {
    Presentation t = tri();
    Field f2 = t.field();

    SUBCASE("the triangle lift lands on (a+b)") {
        std::map<EdgeSet, std::vector<SparseVec>> wfams;
        wfams[EdgeSet{"b"}] = {SparseVec::unit(f2, "b")};
        SparseVec w = stellagain_covector(t, {{"a"}, {"b"}}, {"a"}, SparseVec::unit(f2, "a"), {},
                                          wfams);
        CHECK(w == vec(f2, {{"a", 1}, {"b", 1}}));
    }

    SUBCASE("a failing hypothesis surfaces the unblocked vector") {
        std::map<EdgeSet, std::vector<SparseVec>> empty;
        CHECK_THROWS_AS(
            stellagain_covector(t, {{"a"}, {"b"}}, {"a"}, SparseVec::unit(f2, "a"), {}, empty),
            StellagainHypothesisError);
        try {
            stellagain_covector(t, {{"a"}, {"b"}}, {"a"}, SparseVec::unit(f2, "a"), {}, empty);
        } catch (const StellagainHypothesisError& e) {
            CHECK(e.unblocked == vec(f2, {{"a", 1}, {"b", 1}, {"c", 1}}));
        }
    }

    SUBCASE("a lone F0 with Q covering the rest lifts trivially") {
        std::map<EdgeSet, std::vector<SparseVec>> empty;
        SparseVec w =
            stellagain_covector(t, {{"a"}}, {"a"}, SparseVec::unit(f2, "a"), {"b", "c"}, empty);
        CHECK(t.wspace().contains(w));
        CHECK(w.restricted({"a"}) == SparseVec::unit(f2, "a"));
    }

    SUBCASE("the construction works over GF(3), signs and all") {
        Field f3 = Field::gf(3);
        Ground g({"a", "b", "c"});
        Presentation pi =
            Presentation::span_vectors(f3, g, {vec(f3, {{"a", 1}, {"b", 1}, {"c", 1}})});
        std::map<EdgeSet, std::vector<SparseVec>> wfams;
        wfams[EdgeSet{"b"}] = {SparseVec::unit(f3, "b")};
        SparseVec w =
            stellagain_covector(pi, {{"a"}, {"b"}}, {"a"}, SparseVec::unit(f3, "a"), {}, wfams);
        CHECK(w == vec(f3, {{"a", 1}, {"b", 2}}));
        CHECK(pi.wspace().contains(w));
    }
}

TEST_CASE("cex truncations") {
    for (int n = 1; n <= 5; ++n) {
        CexInstance cex = gen_cex(n);
        CHECK(cex.intersection.size() == 2 * static_cast<std::size_t>(n));
        CHECK(is_prevector(cex.tree, cex.prevec, false));
        CHECK(is_prevector(cex.tree, cex.precov, true));
        CHECK(neat_count(cex.tree, cex.prevec, cex.precov, 0) == n);
    }

    // A five-leaf star over the six-cycle/six-bond central pair shares
    // exactly ten elements.
    CHECK(gen_cex(5).intersection.size() == 10);

    // A central pair that is too small to host the leaves is rejected.
    CHECK_THROWS_WITH_AS(gen_cex(4, tri()), doctest::Contains("lacks a vector"), Error);
}
