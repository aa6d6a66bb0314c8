#include "matglue/subspace.hpp"

#include <algorithm>

namespace matglue {

namespace linalg {

std::vector<std::size_t> rref(const Field& f, std::vector<Row>& rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t cols = rows[0].size();
    std::size_t top = 0;
    for (std::size_t col = 0; col < cols && top < rows.size(); ++col) {
        std::size_t sel = top;
        while (sel < rows.size() && f.is_zero(rows[sel][col])) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[top], rows[sel]);
        const Scalar lead_inv = f.inv(rows[top][col]);
        for (std::size_t c = col; c < cols; ++c) rows[top][c] = f.mul(rows[top][c], lead_inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == top || f.is_zero(rows[r][col])) continue;
            const Scalar factor = rows[r][col];
            for (std::size_t c = col; c < cols; ++c)
                rows[r][c] = f.sub(rows[r][c], f.mul(factor, rows[top][c]));
        }
        pivots.push_back(col);
        ++top;
    }
    rows.resize(top);
    return pivots;
}

AffineSolution solve(const Field& f, const std::vector<Row>& a, const Row& b, std::size_t vars) {
    if (a.size() != b.size()) throw Error("solve: shape mismatch");
    for (const auto& row : a)
        if (row.size() != vars) throw Error("solve: row width mismatch");
    std::vector<Row> aug(a.size(), Row());
    for (std::size_t i = 0; i < a.size(); ++i) {
        aug[i] = a[i];
        aug[i].push_back(b[i]);
    }
    std::vector<std::size_t> pivots = rref(f, aug);

    AffineSolution out;
    for (std::size_t p : pivots)
        if (p == vars) return out;  // row 0 = 1: inconsistent
    out.feasible = true;
    out.particular.assign(vars, f.zero());
    std::vector<bool> is_pivot(vars, false);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        is_pivot[pivots[i]] = true;
        out.particular[pivots[i]] = aug[i][vars];
    }
    for (std::size_t free_col = 0; free_col < vars; ++free_col) {
        if (is_pivot[free_col]) continue;
        Row null_vec(vars, f.zero());
        null_vec[free_col] = f.one();
        for (std::size_t i = 0; i < pivots.size(); ++i)
            null_vec[pivots[i]] = f.neg(aug[i][free_col]);
        out.nullspace.push_back(std::move(null_vec));
    }
    return out;
}

std::size_t rank(const Field& f, std::vector<Row> rows) { return rref(f, rows).size(); }

}  // namespace linalg

using linalg::Row;

linalg::Row Subspace::dense(const SparseVec& v) const {
    Row row(ground_.size(), field_.zero());
    for (const auto& [e, s] : v.entries()) row[ground_.pos(e)] = s;
    return row;
}

SparseVec Subspace::from_dense(const Row& row) const {
    SparseVec v(field_);
    for (std::size_t i = 0; i < row.size(); ++i)
        if (!field_.is_zero(row[i])) v.set(ground_.at(i), row[i]);
    return v;
}

std::vector<Row> Subspace::dense_basis() const {
    std::vector<Row> rows;
    rows.reserve(basis_.size());
    for (const auto& b : basis_) rows.push_back(dense(b));
    return rows;
}

Subspace Subspace::span(const Field& f, const Ground& g, const std::vector<SparseVec>& generators) {
    Subspace u(f, g);
    std::vector<Row> rows;
    rows.reserve(generators.size());
    for (const auto& v : generators) {
        if (v.field() != f) throw Error("field mismatch in span");
        if (!v.supported_in(g.as_set()))
            throw Error("generator " + v.str() + " has support outside the ground set");
        rows.push_back(u.dense(v));
    }
    linalg::rref(f, rows);
    for (const auto& row : rows) u.basis_.push_back(u.from_dense(row));
    return u;
}

Subspace Subspace::zero_space(const Field& f, const Ground& g) { return Subspace(f, g); }

Subspace Subspace::full_space(const Field& f, const Ground& g) {
    std::vector<SparseVec> gens;
    for (const auto& e : g.order()) gens.push_back(SparseVec::unit(f, e));
    return span(f, g, gens);
}

bool Subspace::operator==(const Subspace& o) const {
    return field_ == o.field_ && ground_ == o.ground_ && basis_ == o.basis_;
}

const EdgeId& Subspace::leading_edge(const Ground& g, const SparseVec& v) {
    if (v.is_zero()) throw Error("leading edge of the zero vector");
    const EdgeId* best = nullptr;
    std::size_t best_pos = 0;
    for (const auto& [e, _] : v.entries()) {
        std::size_t p = g.pos(e);
        if (best == nullptr || p < best_pos) {
            best = &e;
            best_pos = p;
        }
    }
    return *best;
}

SparseVec Subspace::reduce(SparseVec v) const {
    for (const auto& b : basis_) {
        Scalar c = v.at(leading_edge(ground_, b));
        if (!field_.is_zero(c)) v.add_scaled(b, field_.neg(c));
    }
    return v;
}

bool Subspace::contains(const SparseVec& v) const {
    if (v.field() != field_) return false;
    if (!v.supported_in(ground_.as_set())) return false;
    return reduce(v).is_zero();
}

Subspace Subspace::complement() const {
    std::vector<Row> rows = dense_basis();
    std::vector<Row> probe = rows;
    std::vector<std::size_t> pivots = linalg::rref(field_, probe);
    std::vector<bool> is_pivot(ground_.size(), false);
    for (std::size_t p : pivots) is_pivot[p] = true;

    std::vector<SparseVec> gens;
    for (std::size_t free_col = 0; free_col < ground_.size(); ++free_col) {
        if (is_pivot[free_col]) continue;
        Row null_vec(ground_.size(), field_.zero());
        null_vec[free_col] = field_.one();
        for (std::size_t i = 0; i < pivots.size(); ++i)
            null_vec[pivots[i]] = field_.neg(probe[i][free_col]);
        gens.push_back(from_dense(null_vec));
    }
    return span(field_, ground_, gens);
}

Subspace Subspace::restricted(const EdgeSet& x) const {
    for (const auto& e : x)
        if (!ground_.contains(e)) throw Error("restriction set leaves the ground: " + e);
    // Constrain coefficient space: members must vanish outside x.
    std::vector<Row> constraints;
    Row rhs;
    for (const auto& e : ground_.order()) {
        if (x.count(e)) continue;
        Row c(basis_.size(), field_.zero());
        for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = basis_[i].at(e);
        constraints.push_back(std::move(c));
        rhs.push_back(field_.zero());
    }
    linalg::AffineSolution sol = linalg::solve(field_, constraints, rhs, basis_.size());
    std::vector<SparseVec> gens;
    for (const auto& coeffs : sol.nullspace) {
        SparseVec v(field_);
        for (std::size_t i = 0; i < basis_.size(); ++i) v.add_scaled(basis_[i], coeffs[i]);
        gens.push_back(std::move(v));
    }
    return span(field_, ground_.restricted_to(x), gens);
}

Subspace Subspace::contracted(const EdgeSet& x) const {
    for (const auto& e : x)
        if (!ground_.contains(e)) throw Error("contraction set leaves the ground: " + e);
    std::vector<SparseVec> gens;
    gens.reserve(basis_.size());
    for (const auto& b : basis_) gens.push_back(b.restricted(x));
    return span(field_, ground_.restricted_to(x), gens);
}

Subspace Subspace::embedded(const Ground& bigger) const {
    for (const auto& e : ground_.order())
        if (!bigger.contains(e)) throw Error("embedding ground misses " + e);
    return span(field_, bigger, basis_);
}

Subspace Subspace::sum(const Subspace& other) const {
    if (ground_ != other.ground_ || field_ != other.field_)
        throw Error("sum of subspaces over different grounds");
    std::vector<SparseVec> gens = basis_;
    gens.insert(gens.end(), other.basis_.begin(), other.basis_.end());
    return span(field_, ground_, gens);
}

void Subspace::for_each_member(const std::function<bool(const SparseVec&)>& visit,
                               const Budget& budget) const {
    if (!field_.is_prime_field())
        throw Error("member enumeration requires a finite field");
    const std::uint64_t p = static_cast<std::uint64_t>(field_.modulus());
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (count > budget.max_enumeration / p + 1) throw CapExceeded("subspace too large to enumerate");
        count *= p;
    }
    if (count > budget.max_enumeration) throw CapExceeded("subspace too large to enumerate");

    std::vector<std::int64_t> digits(basis_.size(), 0);
    while (true) {
        SparseVec v(field_);
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (digits[i] != 0) v.add_scaled(basis_[i], field_.from_int(digits[i]));
        if (!visit(v)) return;
        std::size_t i = 0;
        while (i < digits.size() && digits[i] == field_.modulus() - 1) digits[i++] = 0;
        if (i == digits.size()) return;
        ++digits[i];
    }
}

std::vector<SparseVec> Subspace::enumerate_members(const Budget& budget) const {
    std::vector<SparseVec> out;
    for_each_member(
        [&](const SparseVec& v) {
            out.push_back(v);
            return true;
        },
        budget);
    return out;
}

namespace {

std::set<EdgeSet> minimal_sets(const std::set<EdgeSet>& sets) {
    std::set<EdgeSet> out;
    for (const auto& s : sets) {
        if (s.empty()) continue;
        bool minimal = true;
        for (const auto& t : sets) {
            if (!t.empty() && t != s && is_subset(t, s)) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.insert(s);
    }
    return out;
}

}  // namespace

std::set<EdgeSet> Subspace::min_supports(const Budget& budget) const {
    if (field_.is_prime_field()) {
        std::set<EdgeSet> supports;
        for_each_member(
            [&](const SparseVec& v) {
                if (!v.is_zero()) supports.insert(v.support());
                return true;
            },
            budget);
        return minimal_sets(supports);
    }

    // Rationals: the minimal nonempty supports of U are the circuits of the
    // column matroid of a matrix whose null space is U, i.e. of the
    // complement's basis matrix. Circuits have at most rank+1 columns.
    const Subspace comp = complement();
    const std::vector<Row> a = comp.dense_basis();
    const std::size_t n = ground_.size();
    const std::size_t max_size = std::min(n, comp.dim() + 1);

    auto columns_rank = [&](const std::vector<std::size_t>& cols) {
        std::vector<Row> m;
        m.reserve(a.size());
        for (const auto& row : a) {
            Row r;
            r.reserve(cols.size());
            for (std::size_t c : cols) r.push_back(row[c]);
            m.push_back(std::move(r));
        }
        return linalg::rank(field_, m);
    };

    std::set<EdgeSet> circuits;
    std::vector<std::vector<std::size_t>> found;  // circuits as column index lists
    std::uint64_t examined = 0;
    std::vector<std::size_t> current;

    // Size-ascending scan: a dependent set containing no smaller circuit is
    // itself inclusion-minimal dependent, i.e. a circuit.
    for (std::size_t target = 1; target <= max_size; ++target) {
        std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t next, std::size_t size) {
            if (size == target) {
                if (++examined > budget.max_enumeration)
                    throw CapExceeded("min-support scan over the rationals exceeded its budget");
                for (const auto& c : found)
                    if (std::includes(current.begin(), current.end(), c.begin(), c.end())) return;
                if (columns_rank(current) < size) {
                    found.push_back(current);
                    EdgeSet s;
                    for (std::size_t c : current) s.insert(ground_.at(c));
                    circuits.insert(s);
                }
                return;
            }
            for (std::size_t c = next; c + (target - size) <= n; ++c) {
                current.push_back(c);
                pick(c + 1, size + 1);
                current.pop_back();
            }
        };
        pick(0, 0);
    }
    return circuits;
}

std::optional<SparseVec> Subspace::member_through(const EdgeId& e, const EdgeSet& allowed) const {
    EdgeSet region = allowed;
    region.insert(e);
    region = set_intersect(region, ground_.as_set());
    if (!region.count(e)) return std::nullopt;
    Subspace inside = restricted(region);
    for (const auto& b : inside.basis())
        if (b.support().count(e)) return b;
    return std::nullopt;
}

}  // namespace matglue
