#pragma once

#include "matglue/game.hpp"
#include "matglue/tree_pres.hpp"

namespace matglue {

/// A partition E(T) = P ∪ Q ∪ {e} of the real edges of a tree of
/// presentations, rooted at the unique node carrying e.
struct O2Instance {
    TreeOfPresentations tree;
    EdgeId e;
    EdgeSet p;
    EdgeSet q;
    int root = 0;

    static O2Instance make(TreeOfPresentations tree, EdgeId e, EdgeSet p, EdgeSet q);
};

/// The circuit game digraph plus the meaning of each position. In the dual
/// (cocircuit) variant the covector spaces are used, P and Q swap, and the
/// first mover of the digraph is Colin rather than Sarah.
struct CircuitGame {
    PositionalGame game;
    bool dual = false;

    enum class Kind { start, node_vector, edge_functional };
    struct Meta {
        Kind kind = Kind::start;
        int node = -1;    // X positions: the node; Y positions: the child node u
        int parent = -1;  // Y positions: the parent node t of the tree edge
        std::optional<SparseVec> payload;
    };
    std::vector<Meta> meta;

    /// The mover who owns the odd moves of this digraph.
    std::string first_mover() const { return dual ? "Colin" : "Sarah"; }
};

/// Builds the positional game: Sarah plays Q-avoiding vectors down the
/// rooted tree, Colin challenges with nonzero functionals on the dummy set
/// of a child edge related by non-orthogonality. Finite fields only.
/// Functionals are taken up to nonzero scalars when `projective` is set.
CircuitGame build_circuit_game(const O2Instance& inst, bool dual, const Budget& budget = {},
                               bool projective = true);

struct O2Witness {
    bool is_vector = false;  // true: pre-vector inside P+e; false: pre-covector inside Q+e
    PreVector carrier;
};

/// Decides (O2) for the instance by restricted gluing, returning the
/// witness the theorem promises. Works over any supported field.
O2Witness o2_witness(const O2Instance& inst);

struct SigmaReport {
    std::set<int> sigma_subtree;
    bool within_bounds = true;
    std::size_t max_extensions = 0;
    std::vector<std::string> violations;
};

/// Computes the subtree touched by sigma and checks the per-edge extension
/// bound: after any Sarah history, at most |E(tu)| distinct continuations
/// enter the child u. sigma must be winning in cg.game.
SigmaReport sigma_analysis(const O2Instance& inst, const CircuitGame& cg, const Strategy& sigma);

}  // namespace matglue
