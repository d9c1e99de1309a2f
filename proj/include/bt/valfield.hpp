#pragma once

#include "bt/errors.hpp"
#include "bt/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bt {

/// F_{p^r}. Elements are encoded as integers sum c_i p^i where
/// (c_0,...,c_{r-1}) are the coordinates in the power basis of the modulus.
/// Contexts are interned: one per (p, r), never freed.
class FieldCtx {
public:
    std::uint32_t p() const { return p_; }
    std::uint32_t r() const { return r_; }
    std::uint64_t q() const { return q_; }
    // monic, coefficients low to high, size r+1 (empty for r == 1)
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t from_int(std::int64_t k) const;
    // the class of x in F_p[x]/(modulus)
    std::uint32_t generator() const;

    std::string elem_str(std::uint32_t a) const;

private:
    friend const FieldCtx* field(std::uint32_t p, std::uint32_t r);
    FieldCtx(std::uint32_t p, std::uint32_t r);

    std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;
    void build_tables();

    std::uint32_t p_, r_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> exp_, log_;
};

const FieldCtx* field(std::uint32_t p, std::uint32_t r = 1);

// smallest r with p^r >= lower_bound
std::uint32_t min_degree_for(std::uint32_t p, std::uint64_t lower_bound);

class FiniteFieldElem {
public:
    FiniteFieldElem() = default;
    FiniteFieldElem(const FieldCtx* ctx, std::uint32_t v) : ctx_(ctx), v_(v) {}

    const FieldCtx* ctx() const { return ctx_; }
    std::uint32_t raw() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    FiniteFieldElem operator+(const FiniteFieldElem& o) const;
    FiniteFieldElem operator-(const FiniteFieldElem& o) const;
    FiniteFieldElem operator*(const FiniteFieldElem& o) const;
    FiniteFieldElem operator-() const { return {ctx_, ctx_->neg(v_)}; }
    FiniteFieldElem inv() const;
    bool operator==(const FiniteFieldElem& o) const { return ctx_ == o.ctx_ && v_ == o.v_; }

    std::string str() const { return ctx_->elem_str(v_); }

private:
    const FieldCtx* ctx_ = nullptr;
    std::uint32_t v_ = 0;
};

/// Dense polynomial over a FieldCtx, coefficients low to high, no trailing zeros.
class Poly {
public:
    Poly() = default;
    explicit Poly(const FieldCtx* ctx) : ctx_(ctx) {}
    Poly(const FieldCtx* ctx, std::vector<std::uint32_t> coeffs);
    static Poly constant(const FieldCtx* ctx, std::uint32_t c);
    static Poly monomial(const FieldCtx* ctx, std::uint32_t c, std::size_t k);

    const FieldCtx* ctx() const { return ctx_; }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    std::uint32_t lead() const { return c_.empty() ? 0 : c_.back(); }
    std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    // index of the lowest nonzero coefficient; -1 for zero
    int ord() const;
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scale(std::uint32_t c) const;
    Poly shift(std::size_t k) const;  // multiply by s^k
    Poly unshift(std::size_t k) const;  // divide by s^k, requires ord >= k
    Poly expand(std::size_t k) const;  // s -> s^k
    // s^k -> s, requires all exponents divisible by k
    Poly contract(std::size_t k) const;
    Poly monic() const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    static void divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem);
    static Poly gcd(Poly a, Poly b);  // monic, gcd(0,0) = 0
    Poly with_ctx(const FieldCtx* ctx) const;

private:
    void trim();
    const FieldCtx* ctx_ = nullptr;
    std::vector<std::uint32_t> c_;
};

constexpr std::int64_t kMaxRamification = 64;

/// Element of F_{p^r}(s) with s = t^{1/m}, kept in canonical form.
class PuiseuxRational {
public:
    PuiseuxRational() = default;
    PuiseuxRational(const FieldCtx* ctx, std::int64_t m, Poly num, Poly den);

    static PuiseuxRational zero(const FieldCtx* ctx, std::int64_t m = 1);
    static PuiseuxRational one(const FieldCtx* ctx, std::int64_t m = 1);
    static PuiseuxRational from_int(const FieldCtx* ctx, std::int64_t k, std::int64_t m = 1);
    static PuiseuxRational constant(const FieldCtx* ctx, std::uint32_t c, std::int64_t m = 1);
    // c * t^e, with m = denominator of e (or a multiple given explicitly)
    static PuiseuxRational monomial(const FieldCtx* ctx, std::uint32_t c, const Q& e, std::int64_t m = 0);

    const FieldCtx* ctx() const { return ctx_; }
    std::int64_t ramification() const { return m_; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    PuiseuxRational operator+(const PuiseuxRational& o) const;
    PuiseuxRational operator-(const PuiseuxRational& o) const;
    PuiseuxRational operator*(const PuiseuxRational& o) const;
    PuiseuxRational operator/(const PuiseuxRational& o) const;
    PuiseuxRational operator-() const;
    PuiseuxRational inv() const;
    PuiseuxRational pow(std::int64_t k) const;
    bool operator==(const PuiseuxRational& o) const;
    bool operator!=(const PuiseuxRational& o) const { return !(*this == o); }

    Val valuation() const;
    FiniteFieldElem residue() const;

    PuiseuxRational rescale(std::int64_t m_new) const;
    // smallest ramification representing the same element
    PuiseuxRational reduce_ramification() const;
    PuiseuxRational with_ctx(const FieldCtx* ctx) const;

    std::string str() const;

private:
    void canonicalize();
    const FieldCtx* ctx_ = nullptr;
    std::int64_t m_ = 1;
    Poly num_, den_;
};

using PR = PuiseuxRational;

PR field_add(const PR& a, const PR& b);
PR field_mul(const PR& a, const PR& b);
PR field_neg(const PR& a);
PR field_inv(const PR& a);
Val valuation(const PR& a);
FiniteFieldElem residue(const PR& a);
PR rescale_ramification(const PR& a, std::int64_t m_new);

// Bring a and b into a common field and ramification.
void unify(PR& a, PR& b);
// Common field of two contexts: equal, or one is the prime field of the other.
const FieldCtx* join_fields(const FieldCtx* a, const FieldCtx* b);

/// Parse a scalar. Atoms: integers (reduced mod p), t, w (the generator of
/// F_{p^r} over F_p); operators + - * / ^, with t^(a/b) for fractional
/// exponents. If m > 0 the result is expressed at ramification m.
PR parse_scalar(const std::string& text, const FieldCtx* ctx, std::int64_t m = 0);
// "GF(p^r)" or "GF(p)"
const FieldCtx* parse_field_header(const std::string& text);
std::string field_header(const FieldCtx* ctx);

}  // namespace bt
