#pragma once

#include "matglue/subspace.hpp"

namespace matglue {

/// A pair of orthogonal subspaces of k^E whose support families satisfy
/// (O2). On a finite ground set this is exactly an orthogonal-complement
/// pair, which is what the constructor enforces.
class Presentation {
  public:
    /// Covectors default to the full orthogonal complement of the vectors.
    static Presentation from_vspace(const Ground& g, const Subspace& v);
    static Presentation span_vectors(const Field& f, const Ground& g,
                                     const std::vector<SparseVec>& v_basis);
    /// Validates the pair: rejects non-orthogonal pairs and orthogonal but
    /// proper (non-complement) pairs.
    static Presentation checked(const Ground& g, const Subspace& v, const Subspace& w);

    const Ground& ground() const { return ground_; }
    const Field& field() const { return vspace_.field(); }
    const Subspace& vspace() const { return vspace_; }
    const Subspace& wspace() const { return wspace_; }

    bool operator==(const Presentation& o) const {
        return ground_ == o.ground_ && vspace_ == o.vspace_ && wspace_ == o.wspace_;
    }
    bool operator!=(const Presentation& o) const { return !(*this == o); }

    /// (V, W) / P \ Q: contracts P, deletes Q.
    Presentation minor(const EdgeSet& contract_p, const EdgeSet& delete_q) const;
    /// (V, W) restricted to X: (V restricted, W contracted).
    Presentation restricted_to(const EdgeSet& x) const;
    /// (V, W).X: (V contracted, W restricted).
    Presentation contracted_to(const EdgeSet& x) const;
    /// (W, V); the presentation of the dual matroid.
    Presentation dual() const;

    /// The adjunction Pi_x on E + *: vectors gain x - 1_*, covectors are the
    /// extensions with w(*) = sum_e w(e) x(e).
    Presentation adjoin(const SparseVec& x, const EdgeId& star = "*") const;

    /// No nonzero vector is supported inside S.
    bool is_independent(const EdgeSet& s) const;
    /// No nonzero covector is supported inside S.
    bool is_coindependent(const EdgeSet& s) const;

  private:
    Presentation(Ground g, Subspace v, Subspace w)
        : ground_(std::move(g)), vspace_(std::move(v)), wspace_(std::move(w)) {}
    Ground ground_;
    Subspace vspace_;
    Subspace wspace_;
};

/// Among the vectors v with v|_F = v0|_F and supp(v) ⊆ supp(v0) ∪ X, returns
/// one whose supp(v) \ X is inclusion-minimal; ties broken by the
/// lexicographically least support in ground order, then the canonical
/// solution of the defining linear system.
SparseVec minimal_extension(const Presentation& pi, const SparseVec& v0, const EdgeSet& f,
                            const EdgeSet& x, const Budget& budget = {});

/// Shrinks P to an independent P' ⊆ P with (Pi / P)|_F = (Pi / P')|_F,
/// greedily applying minimal_extension to a basis of (Pi / P)|_F in ground
/// order.
EdgeSet independent_shrink(const Presentation& pi, const EdgeSet& f, const EdgeSet& p,
                           const Budget& budget = {});

struct Localization {
    EdgeSet contract_p;  // P_F
    EdgeSet delete_q;    // Q_F
};

/// Picks disjoint P_F, Q_F outside F with Pi/P_F\Q_F agreeing with Pi on
/// both |_F and .F, leaving a finite middle ground.
Localization localize(const Presentation& pi, const EdgeSet& f, const Budget& budget = {});

struct O2SweepResult {
    bool holds = true;
    EdgeId e;    // failing partition, when !holds
    EdgeSet p;
};

/// The (O2) sweep at subspace level: for every partition E = P ∪ Q ∪ {e},
/// either V has a member through e inside P + e or W has one through e
/// inside Q + e. Works over any field (linear feasibility per partition).
O2SweepResult o2_sweep(const Subspace& v, const Subspace& w, const Budget& budget = {});

}  // namespace matglue
