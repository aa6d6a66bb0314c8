#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace matglue {

/// Raised when an operation violates a precondition or an input is malformed.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when an enumeration would exceed its configured work budget.
struct CapExceeded : Error {
    using Error::Error;
};

/// An exact scalar: a residue for GF(p), an exact rational for Q.
/// All arithmetic goes through Field, which knows how to interpret it.
class Scalar {
  public:
    Scalar() : value_(std::int64_t{0}) {}

    static Scalar residue(std::int64_t r) { return Scalar(r); }
    static Scalar rational(mpq_class q) {
        q.canonicalize();
        return Scalar(std::move(q));
    }

    bool is_rational_repr() const { return std::holds_alternative<mpq_class>(value_); }
    std::int64_t res() const { return std::get<std::int64_t>(value_); }
    const mpq_class& rat() const { return std::get<mpq_class>(value_); }

    bool operator==(const Scalar& o) const { return value_ == o.value_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const;  // total order, for canonical tie-breaking

    std::string str() const;

  private:
    explicit Scalar(std::int64_t r) : value_(r) {}
    explicit Scalar(mpq_class q) : value_(std::move(q)) {}
    std::variant<std::int64_t, mpq_class> value_;
};

/// An exact field: GF(p) for a small prime p, or the rationals.
class Field {
  public:
    enum class Kind { prime, rationals };

    static Field gf(std::int64_t p);
    static Field rationals();

    Kind kind() const { return kind_; }
    bool is_prime_field() const { return kind_ == Kind::prime; }
    std::int64_t modulus() const;

    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(std::int64_t n) const;
    /// Parses "3", "-2" or "p/q" (rationals only for the fractional form).
    Scalar parse(const std::string& text) const;

    bool is_zero(const Scalar& a) const { return a == zero(); }
    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    /// All field elements, zero first then 1..p-1. Prime fields only.
    std::vector<Scalar> elements() const;

    std::string describe() const;

  private:
    Field(Kind k, std::int64_t p) : kind_(k), p_(p) {}
    void check(const Scalar& a) const;
    Kind kind_;
    std::int64_t p_ = 0;
};

}  // namespace matglue
