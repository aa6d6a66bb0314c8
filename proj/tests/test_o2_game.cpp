#include <doctest.h>

#include "fixtures.hpp"
#include "matglue/o2_game.hpp"

using namespace matglue;
using namespace matglue::fixtures;

namespace {

// Every partition E(T) = P ∪ Q ∪ {e} of the real edges.
std::vector<O2Instance> all_partitions(const TreeOfPresentations& tree) {
    std::vector<O2Instance> out;
    const auto& real = tree.real_ground().order();
    for (std::size_t ei = 0; ei < real.size(); ++ei) {
        std::vector<EdgeId> rest;
        for (std::size_t i = 0; i < real.size(); ++i)
            if (i != ei) rest.push_back(real[i]);
        for (std::uint32_t mask = 0; mask < (1u << rest.size()); ++mask) {
            EdgeSet p, q;
            for (std::size_t i = 0; i < rest.size(); ++i)
                ((mask >> i) & 1 ? p : q).insert(rest[i]);
            out.push_back(O2Instance::make(tree, real[ei], p, q));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("o2 instances validate their partition") {
    TreeOfPresentations t = twosum();
    O2Instance inst = O2Instance::make(t, "a", {"b", "c", "d"}, {});
    CHECK(inst.root == 0);
    CHECK(O2Instance::make(t, "c", {}, {"a", "b", "d"}).root == 1);
    CHECK_THROWS_AS(O2Instance::make(t, "g", {"a", "b"}, {"c", "d"}), Error);
    CHECK_THROWS_AS(O2Instance::make(t, "a", {"b"}, {"c"}), Error);
}

TEST_CASE("degenerate one-node games") {
    TreeOfPresentations t = TreeOfPresentations::make({tri()}, {});
    // All of P: Sarah plays the triangle vector, Colin is stuck.
    O2Instance yes = O2Instance::make(t, "a", {"b", "c"}, {});
    CHECK(solve_game(build_circuit_game(yes, false).game).winner == Player::first);
    // Q blocks every vector through a.
    O2Instance no = O2Instance::make(t, "a", {}, {"b", "c"});
    CHECK(solve_game(build_circuit_game(no, false).game).winner == Player::second);
}

TEST_CASE("two-sum circuit game and witnesses") {
    TreeOfPresentations t = twosum();

    SUBCASE("Sarah wins with the full circuit side") {
        O2Instance inst = O2Instance::make(t, "a", {"b", "c", "d"}, {});
        CHECK(solve_game(build_circuit_game(inst, false).game).winner == Player::first);
        O2Witness w = o2_witness(inst);
        CHECK(w.is_vector);
        CHECK(underlying(t, w.carrier).support() == EdgeSet{"a", "b", "c", "d"});
    }

    SUBCASE("Colin wins with everything in Q, in both games") {
        O2Instance inst = O2Instance::make(t, "a", {}, {"b", "c", "d"});
        CHECK(solve_game(build_circuit_game(inst, false).game).winner == Player::second);
        // Cocircuit game: Colin moves first in the dual digraph.
        CHECK(solve_game(build_circuit_game(inst, true).game).winner == Player::first);
        O2Witness w = o2_witness(inst);
        CHECK(!w.is_vector);
        EdgeSet supp = underlying(t, w.carrier).support();
        CHECK(supp.count("a"));
        CHECK(is_subset(supp, EdgeSet{"a", "b", "c", "d"}));
    }

    SUBCASE("single-node covector witness inside Q + e") {
        TreeOfPresentations single = TreeOfPresentations::make({tri()}, {});
        O2Instance inst = O2Instance::make(single, "a", {"c"}, {"b"});
        O2Witness w = o2_witness(inst);
        // (a+b) is the covector with support inside {a, b} = Q + e.
        CHECK(!w.is_vector);
        CHECK(underlying(single, w.carrier).support() == EdgeSet{"a", "b"});
    }
}

TEST_CASE("winner equals witness kind and the dual games cohere, exhaustively") {
    for (const TreeOfPresentations& t : {twosum(), path3()}) {
        for (const O2Instance& inst : all_partitions(t)) {
            CircuitGame circuit = build_circuit_game(inst, false);
            CircuitGame cocircuit = build_circuit_game(inst, true);
            Player cw = solve_game(circuit.game).winner;
            Player dw = solve_game(cocircuit.game).winner;
            O2Witness w = o2_witness(inst);
            // Sarah wins the circuit game iff the vector witness exists.
            CHECK(w.is_vector == (cw == Player::first));
            // Colin wins the circuit game iff he wins the cocircuit game,
            // where he moves first.
            CHECK((cw == Player::second) == (dw == Player::first));
            // The witness support stays on its side.
            SparseVec u = underlying(t, w.carrier);
            CHECK(u.support().count(inst.e));
            CHECK(is_subset(u.support(),
                            set_union(w.is_vector ? inst.p : inst.q, {inst.e})));
        }
    }
}

TEST_CASE("o2 witness over the rationals") {
    Field q = Field::rationals();
    Ground g0({"a", "b", "g"});
    Ground g1({"g", "c", "d"});
    Presentation n0 = Presentation::span_vectors(q, g0, {vec(q, {{"a", 1}, {"b", -1}, {"g", 2}})});
    Presentation n1 = Presentation::span_vectors(q, g1, {vec(q, {{"g", 3}, {"c", 1}, {"d", -1}})});
    TreeOfPresentations t = TreeOfPresentations::make({n0, n1}, {{0, 1}});

    O2Instance inst = O2Instance::make(t, "a", {"b", "c", "d"}, {});
    O2Witness w = o2_witness(inst);
    CHECK(w.is_vector);
    CHECK(underlying(t, w.carrier).support() == EdgeSet{"a", "b", "c", "d"});
    CHECK_THROWS_AS(build_circuit_game(inst, false), Error);
}

TEST_CASE("projective functional quotient keeps winners") {
    Field f3 = Field::gf(3);
    Ground g0({"a", "b", "g"});
    Ground g1({"g", "c", "d"});
    Presentation n0 = Presentation::span_vectors(f3, g0, {vec(f3, {{"a", 1}, {"b", 1}, {"g", 1}})});
    Presentation n1 = Presentation::span_vectors(f3, g1, {vec(f3, {{"g", 1}, {"c", 1}, {"d", 2}})});
    TreeOfPresentations t = TreeOfPresentations::make({n0, n1}, {{0, 1}});
    for (const O2Instance& inst : all_partitions(t)) {
        Player quotiented = solve_game(build_circuit_game(inst, false, {}, true).game).winner;
        Player full = solve_game(build_circuit_game(inst, false, {}, false).game).winner;
        CHECK(quotiented == full);
    }
}

TEST_CASE("sigma analysis") {
    SUBCASE("single node: the subtree is the root, bounds are vacuous") {
        TreeOfPresentations t = TreeOfPresentations::make({tri()}, {});
        O2Instance inst = O2Instance::make(t, "a", {"b", "c"}, {});
        CircuitGame cg = build_circuit_game(inst, false);
        SolveResult r = solve_game(cg.game);
        REQUIRE(r.winner == Player::first);
        SigmaReport rep = sigma_analysis(inst, cg, r.strategy);
        CHECK(rep.sigma_subtree == std::set<int>{0});
        CHECK(rep.within_bounds);
    }

    SUBCASE("two-sum: one continuation through the single dummy") {
        TreeOfPresentations t = twosum();
        O2Instance inst = O2Instance::make(t, "a", {"b", "c", "d"}, {});
        CircuitGame cg = build_circuit_game(inst, false);
        SolveResult r = solve_game(cg.game);
        REQUIRE(r.winner == Player::first);
        Strategy reduced = reduce_strategy(cg.game, r.strategy, default_order(cg.game));
        SigmaReport rep = sigma_analysis(inst, cg, reduced);
        CHECK(rep.sigma_subtree == std::set<int>{0, 1});
        CHECK(rep.within_bounds);
        CHECK(rep.max_extensions == 1);
    }

    SUBCASE("an unreduced strategy can exceed the bound; reduction repairs it") {
        // GF(3), unquotiented functionals: two scalar multiples of the same
        // challenge can draw distinct answers from a hand-built strategy.
        Field f3 = Field::gf(3);
        Ground g0({"a", "g"});
        Ground g1({"g", "c"});
        Presentation n0 = Presentation::span_vectors(f3, g0, {vec(f3, {{"a", 1}, {"g", 1}})});
        Presentation n1 = Presentation::span_vectors(f3, g1, {vec(f3, {{"g", 1}, {"c", 1}})});
        TreeOfPresentations t = TreeOfPresentations::make({n0, n1}, {{0, 1}});
        O2Instance inst = O2Instance::make(t, "a", {"c"}, {});
        CircuitGame cg = build_circuit_game(inst, false, {}, /*projective=*/false);

        // Sarah's forced first move: the unique vector class through a is
        // spanned by (a+g); pick v0 = (a+g). Colin can challenge with w=g
        // or w=2g; answer them with the two distinct nonzero multiples of
        // (g+c).
        auto find_x = [&](int node, const SparseVec& v) -> Pos {
            for (Pos i = 0; i < static_cast<Pos>(cg.meta.size()); ++i)
                if (cg.meta[i].kind == CircuitGame::Kind::node_vector && cg.meta[i].node == node &&
                    *cg.meta[i].payload == v)
                    return i;
            throw Error("position not found");
        };
        auto find_y = [&](const SparseVec& w) -> Pos {
            for (Pos i = 0; i < static_cast<Pos>(cg.meta.size()); ++i)
                if (cg.meta[i].kind == CircuitGame::Kind::edge_functional &&
                    *cg.meta[i].payload == w)
                    return i;
            throw Error("position not found");
        };
        SparseVec v0 = vec(f3, {{"a", 1}, {"g", 1}});
        SparseVec u1 = vec(f3, {{"g", 1}, {"c", 1}});
        SparseVec u2 = vec(f3, {{"g", 2}, {"c", 2}});
        Pos x0 = find_x(0, v0);
        Pos w1 = find_y(vec(f3, {{"g", 1}}));
        Pos w2 = find_y(vec(f3, {{"g", 2}}));

        Strategy lopsided;
        lopsided.for_player = Player::first;
        lopsided.plays = {{x0}, {x0, w1, find_x(1, u1)}, {x0, w2, find_x(1, u2)}};
        REQUIRE(check_strategy(cg.game, lopsided).is_winning);

        SigmaReport before = sigma_analysis(inst, cg, lopsided);
        CHECK(!before.within_bounds);
        CHECK(before.max_extensions == 2);

        Strategy reduced = reduce_strategy(cg.game, lopsided, default_order(cg.game));
        SigmaReport after = sigma_analysis(inst, cg, reduced);
        CHECK(after.within_bounds);
        CHECK(after.max_extensions <= 1);
    }
}
