#pragma once

#include "matglue/tree_pres.hpp"

namespace matglue {

/// Input to the star-level base extension step: a star of presentations,
/// its center, and disjoint seed sets X (glued-vector-independent) and Y
/// (glued-covector-independent).
struct StarBaseInput {
    TreeOfPresentations star;
    int center = 0;
    EdgeSet x;
    EdgeSet y;
};

struct StarBaseResult {
    EdgeSet x;  // X'
    EdgeSet y;  // Y'
    /// For e in E' \ X': a glued vector with e in its support inside X'+e.
    std::map<EdgeId, SparseVec> circuit_witness;
    /// For e in E' \ Y': a glued covector with e in its support inside Y'+e.
    std::map<EdgeId, SparseVec> cocircuit_witness;
};

/// One star step: localizes each leaf, picks a base of the shrunken star
/// matroid extending X and avoiding Y, and shrinks the leaf contributions
/// to independent sets. All five postconditions are re-verified on the
/// original star before returning.
StarBaseResult im_star(const StarBaseInput& input, const Budget& budget = {});

struct NodeCert {
    int node = -1;
    EdgeSet x_t;
    EdgeSet y_t;
    std::array<bool, 8> conditions{};
    std::string detail;  // first failing condition, when any

    bool all_ok() const {
        for (bool c : conditions)
            if (!c) return false;
        return true;
    }
};

struct BaseResult {
    EdgeSet x;
    EdgeSet y;
    std::vector<NodeCert> certs;  // in construction (breadth-first) order
    bool certified = false;
};

/// Builds a base/cobase partition of the glued ground by recursion over the
/// tree order from `root`, applying im_star at each node and certifying the
/// eight recursion conditions per node (re-checked after assembly).
BaseResult build_base(const TreeOfPresentations& tree, int root, const Budget& budget = {});

}  // namespace matglue
