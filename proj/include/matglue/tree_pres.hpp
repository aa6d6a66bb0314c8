#pragma once

#include <optional>

#include "matglue/matroid.hpp"

namespace matglue {

/// A finite tree with a presentation per node. Adjacent node grounds may
/// overlap; the overlaps are the dummy-edge sets E(tt') and are derived
/// from equal edge ids. Every edge id lives in at most two node grounds,
/// and in two only across a tree edge. The glued ground E(T) is everything
/// that is not a dummy.
class TreeOfPresentations {
  public:
    static TreeOfPresentations make(std::vector<Presentation> nodes,
                                    std::vector<std::pair<int, int>> edges);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    const Presentation& node(int t) const { return nodes_.at(t); }
    const Field& field() const { return nodes_.front().field(); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int t) const { return adjacency_.at(t); }
    bool is_tree_edge(int t, int u) const;
    /// E(tt'): the shared (dummy) edge set of a tree edge.
    const EdgeSet& shared(int t, int u) const;
    EdgeSet dummy_edges() const;
    /// E(T), in canonical order (nodes in id order, grounds in declared order).
    const Ground& real_ground() const { return real_ground_; }
    EdgeSet node_real_edges(int t) const;
    /// The unique node whose ground contains the real edge e.
    int node_of_real_edge(const EdgeId& e) const;

    /// Nodes on the t-side of the tree edge (s, t), including t.
    std::set<int> branch_nodes(int s, int t) const;
    /// The induced tree of presentations on a connected node set. Node ids
    /// are compacted; the mapping old->new is written to `relabel`.
    TreeOfPresentations induced(const std::set<int>& keep, std::map<int, int>* relabel = nullptr) const;

  private:
    TreeOfPresentations() = default;
    std::vector<Presentation> nodes_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::map<std::pair<int, int>, EdgeSet> shared_;
    Ground real_ground_;
};

/// A subtree together with compatible local vectors: equal and nonzero
/// restrictions across internal dummy sets (sign-flipped for covectors),
/// zero restrictions toward the outside.
struct PreVector {
    std::set<int> subtree;
    std::map<int, SparseVec> local;
};
using PreCovector = PreVector;

/// The underlying vector on the real ground: at a real edge, the value of
/// the local vector of the unique node carrying that edge.
SparseVec underlying(const TreeOfPresentations& tree, const PreVector& pv);

/// Validates the pre-vector (or pre-covector) conditions.
bool is_prevector(const TreeOfPresentations& tree, const PreVector& pv, bool covector,
                  std::string* why = nullptr);

/// Glues the tree: the vector space is the projection to the real ground of
/// the agreement space of compatible full-tree families, likewise for
/// covectors with the sign flip. Equal to the span of pre-vector
/// underlyings on finite trees. Works over any supported field.
Presentation glue(const TreeOfPresentations& tree);

/// All pre-vectors (covector=false) or pre-covectors (covector=true) with
/// at least one nonzero local vector. Finite fields only.
std::vector<PreVector> enumerate_prevectors(const TreeOfPresentations& tree, bool covector,
                                            const Budget& budget = {});

/// Splits a compatible full-tree family into pre-vector components (cutting
/// zero-restriction edges, dropping zero nodes).
std::vector<PreVector> split_family(const TreeOfPresentations& tree,
                                    const std::map<int, SparseVec>& family, bool covector);

/// Number of neighbor dummy sets E(tu) at `node` meeting both supports.
int neat_count(const TreeOfPresentations& tree, const PreVector& v, const PreCovector& w, int node);

struct StellarVerdict {
    bool ok = false;
    std::string detail;
};

/// Glues an F-star around pi and verifies that the result is a presentation
/// presenting a matroid.
StellarVerdict check_stellar_instance(const Presentation& pi, const TreeOfPresentations& star,
                                      int center, const Budget& budget = {});

/// Raised by stellagain_covector when the blocking hypothesis fails; the
/// offending vector is the counterexample.
struct StellagainHypothesisError : Error {
    explicit StellagainHypothesisError(SparseVec counterexample)
        : Error("stellagain: unblocked vector " + counterexample.str()),
          unblocked(std::move(counterexample)) {}
    SparseVec unblocked;
};

/// The stellagain construction: a covector w with w|_{F0} = w0, support
/// inside Q ∪ ∪F, and w|_F in the span of wfams(F) for F ≠ F0. Finite
/// fields (the hypothesis scan enumerates vectors).
SparseVec stellagain_covector(const Presentation& pi, const std::vector<EdgeSet>& fam,
                              const EdgeSet& f0, const SparseVec& w0, const EdgeSet& q,
                              const std::map<EdgeSet, std::vector<SparseVec>>& wfams,
                              const Budget& budget = {});

struct CexInstance {
    TreeOfPresentations tree;
    PreVector prevec;
    PreCovector precov;
    EdgeSet intersection;  // of the two underlying supports
};

/// The n-leaf truncation of the long-cycle/long-bond star: a pre-vector and
/// pre-covector whose underlying supports share 2n elements {g_i, h_i}.
CexInstance gen_cex(int n, const std::optional<Presentation>& central = std::nullopt);

}  // namespace matglue
