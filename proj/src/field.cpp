#include "matglue/field.hpp"

namespace matglue {

bool Scalar::operator<(const Scalar& o) const {
    if (is_rational_repr() != o.is_rational_repr())
        throw Error("scalar comparison across representations");
    if (is_rational_repr()) return rat() < o.rat();
    return res() < o.res();
}

std::string Scalar::str() const {
    if (is_rational_repr()) return rat().get_str();
    return std::to_string(res());
}

namespace {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::int64_t mod_reduce(std::int64_t n, std::int64_t p) {
    std::int64_t r = n % p;
    return r < 0 ? r + p : r;
}

// Extended Euclid; p prime, 0 < a < p.
std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    return mod_reduce(t, p);
}

}  // namespace

Field Field::gf(std::int64_t p) {
    if (!is_prime(p)) throw Error("modulus not prime: " + std::to_string(p));
    return Field(Kind::prime, p);
}

Field Field::rationals() { return Field(Kind::rationals, 0); }

std::int64_t Field::modulus() const {
    if (kind_ != Kind::prime) throw Error("modulus requested from the rationals");
    return p_;
}

Scalar Field::zero() const {
    return kind_ == Kind::prime ? Scalar::residue(0) : Scalar::rational(0);
}

Scalar Field::one() const {
    return kind_ == Kind::prime ? Scalar::residue(1) : Scalar::rational(1);
}

Scalar Field::from_int(std::int64_t n) const {
    if (kind_ == Kind::prime) return Scalar::residue(mod_reduce(n, p_));
    return Scalar::rational(mpq_class(static_cast<long>(n)));
}

Scalar Field::parse(const std::string& text) const {
    if (text.empty()) throw Error("empty scalar literal");
    if (kind_ == Kind::rationals) {
        mpq_class q;
        if (q.set_str(text, 10) != 0) throw Error("bad rational literal: " + text);
        q.canonicalize();
        return Scalar::rational(q);
    }
    std::size_t used = 0;
    std::int64_t n = std::stoll(text, &used);
    if (used != text.size()) throw Error("bad scalar literal for prime field: " + text);
    return from_int(n);
}

void Field::check(const Scalar& a) const {
    if (a.is_rational_repr() != (kind_ == Kind::rationals))
        throw Error("scalar does not belong to " + describe());
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
    check(a);
    check(b);
    if (kind_ == Kind::prime) return Scalar::residue(mod_reduce(a.res() + b.res(), p_));
    return Scalar::rational(a.rat() + b.rat());
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
    check(a);
    check(b);
    if (kind_ == Kind::prime) return Scalar::residue(mod_reduce(a.res() - b.res(), p_));
    return Scalar::rational(a.rat() - b.rat());
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
    check(a);
    check(b);
    if (kind_ == Kind::prime) return Scalar::residue(mod_reduce(a.res() * b.res(), p_));
    return Scalar::rational(a.rat() * b.rat());
}

Scalar Field::neg(const Scalar& a) const {
    check(a);
    if (kind_ == Kind::prime) return Scalar::residue(mod_reduce(-a.res(), p_));
    return Scalar::rational(-a.rat());
}

Scalar Field::inv(const Scalar& a) const {
    check(a);
    if (is_zero(a)) throw Error("division by zero");
    if (kind_ == Kind::prime) return Scalar::residue(mod_inverse(a.res(), p_));
    return Scalar::rational(1 / a.rat());
}

std::vector<Scalar> Field::elements() const {
    if (kind_ != Kind::prime) throw Error("cannot enumerate the rationals");
    std::vector<Scalar> out;
    out.reserve(static_cast<std::size_t>(p_));
    for (std::int64_t r = 0; r < p_; ++r) out.push_back(Scalar::residue(r));
    return out;
}

std::string Field::describe() const {
    return kind_ == Kind::prime ? "GF(" + std::to_string(p_) + ")" : "Q";
}

}  // namespace matglue
