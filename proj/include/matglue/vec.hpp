#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "matglue/field.hpp"

namespace matglue {

/// Ground-set elements are opaque string tokens.
using EdgeId = std::string;
using EdgeSet = std::set<EdgeId>;

EdgeSet set_union(const EdgeSet& a, const EdgeSet& b);
EdgeSet set_intersect(const EdgeSet& a, const EdgeSet& b);
EdgeSet set_minus(const EdgeSet& a, const EdgeSet& b);
bool is_subset(const EdgeSet& a, const EdgeSet& b);
bool disjoint(const EdgeSet& a, const EdgeSet& b);
std::string format(const EdgeSet& s);

/// A finite ordered list of distinct edge ids. The declared order is the
/// canonical order: echelon forms, witnesses and all tie-breaking derive
/// from it.
class Ground {
  public:
    Ground() = default;
    explicit Ground(std::vector<EdgeId> order);

    std::size_t size() const { return order_.size(); }
    bool empty() const { return order_.empty(); }
    bool contains(const EdgeId& e) const { return pos_.count(e) != 0; }
    std::size_t pos(const EdgeId& e) const;
    const EdgeId& at(std::size_t i) const { return order_.at(i); }
    const std::vector<EdgeId>& order() const { return order_; }
    EdgeSet as_set() const;

    bool operator==(const Ground& o) const { return order_ == o.order_; }
    bool operator!=(const Ground& o) const { return !(*this == o); }

    /// Sub-ground keeping only `keep`, in the declared order.
    Ground restricted_to(const EdgeSet& keep) const;
    Ground without(const EdgeSet& drop) const;
    Ground with_appended(const EdgeId& e) const;

    /// Lexicographic comparison of edge sets by ground position.
    bool set_less(const EdgeSet& a, const EdgeSet& b) const;
    std::vector<std::size_t> positions(const EdgeSet& s) const;

  private:
    std::vector<EdgeId> order_;
    std::map<EdgeId, std::size_t> pos_;
};

/// A finitely supported map EdgeId -> nonzero scalar. Stored entries are
/// always nonzero; the key set is the support. A vector is a function with
/// domain its support, so it may be read in any ground containing it.
class SparseVec {
  public:
    explicit SparseVec(const Field& f) : field_(f) {}

    static SparseVec zero(const Field& f) { return SparseVec(f); }
    /// Builds from (edge, scalar) pairs, dropping zeros.
    static SparseVec make(const Field& f, const std::vector<std::pair<EdgeId, Scalar>>& entries);
    static SparseVec unit(const Field& f, const EdgeId& e) { return make(f, {{e, f.one()}}); }

    const Field& field() const { return field_; }
    const std::map<EdgeId, Scalar>& entries() const { return entries_; }
    Scalar at(const EdgeId& e) const;
    void set(const EdgeId& e, const Scalar& value);

    EdgeSet support() const;
    bool is_zero() const { return entries_.empty(); }

    /// Coordinate projection onto X.
    SparseVec restricted(const EdgeSet& x) const;
    bool supported_in(const EdgeSet& x) const;

    /// this += c * other
    void add_scaled(const SparseVec& other, const Scalar& c);
    SparseVec scaled(const Scalar& c) const;
    SparseVec negated() const;
    SparseVec plus(const SparseVec& other) const;
    SparseVec minus(const SparseVec& other) const;

    bool operator==(const SparseVec& o) const;
    bool operator!=(const SparseVec& o) const { return !(*this == o); }
    /// Deterministic order: by support (lexicographic on ids) then values.
    bool operator<(const SparseVec& o) const;

    std::string str() const;

  private:
    Field field_;
    std::map<EdgeId, Scalar> entries_;
};

/// Sum over the (finite) support intersection; the orthogonality form.
Scalar dot(const SparseVec& v, const SparseVec& w);
bool orthogonal(const SparseVec& v, const SparseVec& w);

}  // namespace matglue
