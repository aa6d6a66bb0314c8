#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "matglue/budget.hpp"
#include "matglue/vec.hpp"

namespace matglue {

/// Dense exact linear algebra used by the subspace layer and by the gluing
/// machinery. Rows are coordinate vectors over an implicit column list.
namespace linalg {

using Row = std::vector<Scalar>;

/// In-place reduced row echelon form; returns the pivot column of each
/// surviving row (zero rows are dropped, row order is by pivot column).
std::vector<std::size_t> rref(const Field& f, std::vector<Row>& rows);

struct AffineSolution {
    bool feasible = false;
    Row particular;               // one solution (free variables zero)
    std::vector<Row> nullspace;   // basis of the homogeneous solutions
};

/// Solves sum_j a[i][j] x_j = b[i] exactly, over `vars` unknowns.
AffineSolution solve(const Field& f, const std::vector<Row>& a, const Row& b, std::size_t vars);

std::size_t rank(const Field& f, std::vector<Row> rows);

}  // namespace linalg

/// A subspace of k^E held by its reduced-echelon basis with respect to the
/// declared ground order. Two equal subspaces always compare structurally
/// equal: the echelon basis is a canonical form.
class Subspace {
  public:
    /// span_canonical: echelon basis of the span of `generators`.
    /// Errors if a generator has support outside the ground.
    static Subspace span(const Field& f, const Ground& g, const std::vector<SparseVec>& generators);
    static Subspace zero_space(const Field& f, const Ground& g);
    static Subspace full_space(const Field& f, const Ground& g);

    const Field& field() const { return field_; }
    const Ground& ground() const { return ground_; }
    const std::vector<SparseVec>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }
    bool is_zero() const { return basis_.empty(); }

    bool operator==(const Subspace& o) const;
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    bool contains(const SparseVec& v) const;
    /// Residual of v after elimination against the basis.
    SparseVec reduce(SparseVec v) const;

    /// Orthogonal complement with respect to the standard dot form.
    Subspace complement() const;

    /// {v in U | supp(v) ⊆ X}, re-grounded on X.
    Subspace restricted(const EdgeSet& x) const;
    /// {v|_X : v in U}, re-grounded on X.
    Subspace contracted(const EdgeSet& x) const;
    /// Same members on a larger ground (must contain the current one).
    Subspace embedded(const Ground& bigger) const;
    /// Span of the union with another subspace on the same ground.
    Subspace sum(const Subspace& other) const;

    /// All members (finite fields; |k|^dim of them, budget-capped).
    std::vector<SparseVec> enumerate_members(const Budget& budget = {}) const;
    /// Visits every member; stop early by returning false from the visitor.
    void for_each_member(const std::function<bool(const SparseVec&)>& visit,
                         const Budget& budget = {}) const;

    /// Inclusion-minimal nonempty supports of members. Finite fields use
    /// member enumeration; the rationals use a circuit scan of the column
    /// matroid of a matrix whose null space is this subspace.
    std::set<EdgeSet> min_supports(const Budget& budget = {}) const;

    /// A member v with e in supp(v) ⊆ allowed + e, if one exists.
    std::optional<SparseVec> member_through(const EdgeId& e, const EdgeSet& allowed) const;

    linalg::Row dense(const SparseVec& v) const;
    SparseVec from_dense(const linalg::Row& row) const;
    std::vector<linalg::Row> dense_basis() const;

    /// Support element with the least ground position (v must be nonzero).
    static const EdgeId& leading_edge(const Ground& g, const SparseVec& v);

  private:
    Subspace(Field f, Ground g) : field_(std::move(f)), ground_(std::move(g)) {}
    Field field_;
    Ground ground_;
    std::vector<SparseVec> basis_;
};

}  // namespace matglue
