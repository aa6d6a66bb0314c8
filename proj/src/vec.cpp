#include "matglue/vec.hpp"

#include <algorithm>
#include <sstream>

namespace matglue {

EdgeSet set_union(const EdgeSet& a, const EdgeSet& b) {
    EdgeSet r = a;
    r.insert(b.begin(), b.end());
    return r;
}

EdgeSet set_intersect(const EdgeSet& a, const EdgeSet& b) {
    EdgeSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
    return r;
}

EdgeSet set_minus(const EdgeSet& a, const EdgeSet& b) {
    EdgeSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
    return r;
}

bool is_subset(const EdgeSet& a, const EdgeSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(const EdgeSet& a, const EdgeSet& b) { return set_intersect(a, b).empty(); }

std::string format(const EdgeSet& s) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& e : s) {
        if (!first) out << ",";
        out << e;
        first = false;
    }
    out << "}";
    return out.str();
}

Ground::Ground(std::vector<EdgeId> order) : order_(std::move(order)) {
    for (std::size_t i = 0; i < order_.size(); ++i) {
        if (order_[i].empty()) throw Error("empty edge id in ground set");
        if (!pos_.emplace(order_[i], i).second)
            throw Error("duplicate edge id in ground set: " + order_[i]);
    }
}

std::size_t Ground::pos(const EdgeId& e) const {
    auto it = pos_.find(e);
    if (it == pos_.end()) throw Error("edge not in ground set: " + e);
    return it->second;
}

EdgeSet Ground::as_set() const { return EdgeSet(order_.begin(), order_.end()); }

Ground Ground::restricted_to(const EdgeSet& keep) const {
    std::vector<EdgeId> out;
    for (const auto& e : order_)
        if (keep.count(e)) out.push_back(e);
    return Ground(out);
}

Ground Ground::without(const EdgeSet& drop) const {
    std::vector<EdgeId> out;
    for (const auto& e : order_)
        if (!drop.count(e)) out.push_back(e);
    return Ground(out);
}

Ground Ground::with_appended(const EdgeId& e) const {
    if (contains(e)) throw Error("edge already in ground set: " + e);
    std::vector<EdgeId> out = order_;
    out.push_back(e);
    return Ground(out);
}

std::vector<std::size_t> Ground::positions(const EdgeSet& s) const {
    std::vector<std::size_t> out;
    out.reserve(s.size());
    for (const auto& e : s) out.push_back(pos(e));
    std::sort(out.begin(), out.end());
    return out;
}

bool Ground::set_less(const EdgeSet& a, const EdgeSet& b) const {
    return positions(a) < positions(b);
}

SparseVec SparseVec::make(const Field& f, const std::vector<std::pair<EdgeId, Scalar>>& entries) {
    SparseVec v(f);
    for (const auto& [e, s] : entries) v.set(e, s);
    return v;
}

Scalar SparseVec::at(const EdgeId& e) const {
    auto it = entries_.find(e);
    return it == entries_.end() ? field_.zero() : it->second;
}

void SparseVec::set(const EdgeId& e, const Scalar& value) {
    if (field_.is_zero(value))
        entries_.erase(e);
    else
        entries_[e] = value;
}

EdgeSet SparseVec::support() const {
    EdgeSet s;
    for (const auto& [e, _] : entries_) s.insert(e);
    return s;
}

SparseVec SparseVec::restricted(const EdgeSet& x) const {
    SparseVec v(field_);
    for (const auto& [e, s] : entries_)
        if (x.count(e)) v.entries_.emplace(e, s);
    return v;
}

bool SparseVec::supported_in(const EdgeSet& x) const {
    for (const auto& [e, _] : entries_)
        if (!x.count(e)) return false;
    return true;
}

void SparseVec::add_scaled(const SparseVec& other, const Scalar& c) {
    if (field_ != other.field_) throw Error("field mismatch in vector arithmetic");
    if (field_.is_zero(c)) return;
    for (const auto& [e, s] : other.entries_) set(e, field_.add(at(e), field_.mul(c, s)));
}

SparseVec SparseVec::scaled(const Scalar& c) const {
    SparseVec v(field_);
    v.add_scaled(*this, c);
    return v;
}

SparseVec SparseVec::negated() const { return scaled(field_.neg(field_.one())); }

SparseVec SparseVec::plus(const SparseVec& other) const {
    SparseVec v = *this;
    v.add_scaled(other, field_.one());
    return v;
}

SparseVec SparseVec::minus(const SparseVec& other) const {
    SparseVec v = *this;
    v.add_scaled(other, field_.neg(field_.one()));
    return v;
}

bool SparseVec::operator==(const SparseVec& o) const {
    return field_ == o.field_ && entries_ == o.entries_;
}

bool SparseVec::operator<(const SparseVec& o) const { return entries_ < o.entries_; }

std::string SparseVec::str() const {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& [e, s] : entries_) {
        if (!first) out << ",";
        out << e << ":" << s.str();
        first = false;
    }
    out << "}";
    return out.str();
}

Scalar dot(const SparseVec& v, const SparseVec& w) {
    if (v.field() != w.field()) throw Error("field mismatch in dot product");
    const Field& f = v.field();
    Scalar sum = f.zero();
    const auto& a = v.entries();
    const auto& b = w.entries();
    auto it = a.begin();
    auto jt = b.begin();
    while (it != a.end() && jt != b.end()) {
        if (it->first < jt->first)
            ++it;
        else if (jt->first < it->first)
            ++jt;
        else {
            sum = f.add(sum, f.mul(it->second, jt->second));
            ++it;
            ++jt;
        }
    }
    return sum;
}

bool orthogonal(const SparseVec& v, const SparseVec& w) {
    return v.field().is_zero(dot(v, w));
}

}  // namespace matglue
