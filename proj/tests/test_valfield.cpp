#include "bt/valfield.hpp"

#include <doctest.h>

#include <cmath>
#include <optional>
#include <random>

using namespace bt;

namespace {

PR P(const std::string& s, std::uint32_t p = 2, std::uint32_t r = 1) { return parse_scalar(s, field(p, r)); }

// Horner evaluation of num/den at s = x, used as an independent oracle for m = 1
std::optional<std::uint32_t> eval_at(const PR& a, std::uint32_t x)
{
    const FieldCtx* F = a.ctx();
    auto horner = [&](const Poly& f) {
        std::uint32_t acc = 0;
        for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) acc = F->add(F->mul(acc, x), *it);
        return acc;
    };
    std::uint32_t d = horner(a.den());
    if (d == 0) return std::nullopt;
    return F->mul(horner(a.num()), F->inv(d));
}

PR random_pr(std::mt19937_64& rng, const FieldCtx* F, std::int64_t m)
{
    auto poly = [&](int deg) {
        std::vector<std::uint32_t> c(static_cast<std::size_t>(deg + 1));
        for (auto& v : c) v = static_cast<std::uint32_t>(rng() % F->q());
        return Poly(F, c);
    };
    Poly den = poly(static_cast<int>(rng() % 3));
    if (den.is_zero()) den = Poly::constant(F, 1);
    return PR(F, m, poly(static_cast<int>(rng() % 4)), den);
}

}  // namespace

TEST_CASE("prime field arithmetic matches integer arithmetic mod p")
{
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 13u}) {
        const FieldCtx* F = field(p);
        for (std::uint32_t a = 0; a < p; ++a)
            for (std::uint32_t b = 0; b < p; ++b) {
                CHECK(F->add(a, b) == (a + b) % p);
                CHECK(F->mul(a, b) == (a * b) % p);
                CHECK(F->sub(a, b) == (a + p - b) % p);
            }
        for (std::uint32_t a = 1; a < p; ++a) CHECK(F->mul(a, F->inv(a)) == 1);
    }
}

TEST_CASE("extension fields satisfy the field axioms")
{
    for (auto [p, r] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}}) {
        const FieldCtx* F = field(p, r);
        CHECK(F->q() == static_cast<std::uint64_t>(std::pow(p, r)));
        auto q = static_cast<std::uint32_t>(F->q());
        for (std::uint32_t a = 0; a < q; ++a) {
            if (a) CHECK(F->mul(a, F->inv(a)) == 1);
            for (std::uint32_t b = 0; b < q; ++b) {
                CHECK(F->add(a, b) == F->add(b, a));
                CHECK(F->mul(a, b) == F->mul(b, a));
                for (std::uint32_t c = 0; c < q; c += 3)
                    CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            }
        }
        // Frobenius fixes exactly the prime field
        int fixed = 0;
        for (std::uint32_t a = 0; a < q; ++a) {
            std::uint32_t x = 1;
            for (std::uint32_t k = 0; k < p; ++k) x = F->mul(x, a);
            if (x == a) ++fixed;
        }
        CHECK(fixed == static_cast<int>(p));
    }
    CHECK(field(2, 3) == field(2, 3));
}

TEST_CASE("arithmetic examples")
{
    const FieldCtx* F3 = field(3);
    PR t = PR::monomial(F3, 1, Q(1));
    CHECK(field_add(t, t) == parse_scalar("2*t", F3));
    CHECK(field_add(t, t).str() == "2*t");

    PR h = P("t^(1/2)");
    CHECK(field_mul(h, h) == P("t"));
    CHECK(field_mul(h, h).reduce_ramification().ramification() == 1);

    PR a = P("1+t");
    PR ia = field_inv(a);
    CHECK(ia == P("1/(1+t)"));
    CHECK(ia.num().is_one());
    CHECK(ia.den() == a.num());
    CHECK(field_mul(a, ia) == PR::one(field(2)));

    CHECK(field_neg(P("1+t", 3)) == P("2+2*t", 3));
    CHECK_THROWS_AS(field_inv(PR::zero(field(2))), DivisionByZero);
}

TEST_CASE("valuation and residue examples")
{
    CHECK(valuation(P("t^3")) == Val(Q(3)));
    CHECK(valuation(P("t^(-1/2)+1")) == Val(make_q(-1, 2)));
    CHECK(valuation(P("(1+t)/t^2")) == Val(Q(-2)));
    CHECK(valuation(PR::zero(field(2))).is_inf());

    CHECK(residue(P("(2+t)/(1+t)", 5)).raw() == 2);
    CHECK(residue(P("1+t^(1/2)")).raw() == 1);
    CHECK_THROWS_AS(residue(P("t")), NonUnitResidue);
    CHECK_THROWS_AS(residue(P("t^(-1)")), NonUnitResidue);
}

TEST_CASE("ramification rescale")
{
    PR h = P("t^(1/2)");
    PR r = rescale_ramification(h, 4);
    CHECK(r.ramification() == 4);
    CHECK(r.num() == Poly::monomial(field(2), 1, 2));
    CHECK(r == h);
    CHECK(r.reduce_ramification().ramification() == 2);
    CHECK_THROWS_AS(rescale_ramification(h, 3), InvalidArgument);
    CHECK_THROWS(rescale_ramification(h, 128));
}

TEST_CASE("printing round-trips through the parser")
{
    const FieldCtx* F = field(2, 3);
    for (const char* s : {"0", "1", "t", "w", "w+t", "(1+w)*t^(1/3)", "1/(1+t)", "t^(-2)", "w*t^(-1)", "(w+t)/(1+t^2)"}) {
        PR a = parse_scalar(s, F);
        CAPTURE(s);
        CHECK(parse_scalar(a.str(), F) == a);
    }
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        PR a = random_pr(rng, F, 1 + static_cast<std::int64_t>(rng() % 4));
        CHECK(parse_scalar(a.str(), F) == a);
    }
    CHECK_THROWS_AS(parse_scalar("1+", F), ParseError);
    CHECK_THROWS_AS(parse_scalar("x", F), ParseError);
    CHECK(parse_field_header("GF(2^3)") == F);
    CHECK(field_header(F) == "GF(2^3)");
}

TEST_CASE("evaluation is a ring homomorphism (independent oracle)")
{
    std::mt19937_64 rng(17);
    for (const FieldCtx* F : {field(3), field(5), field(2, 2)}) {
        for (int it = 0; it < 150; ++it) {
            PR a = random_pr(rng, F, 1), b = random_pr(rng, F, 1);
            for (std::uint32_t x = 0; x < F->q(); ++x) {
                auto ea = eval_at(a, x), eb = eval_at(b, x);
                if (!ea || !eb) continue;
                auto es = eval_at(a + b, x), ep = eval_at(a * b, x);
                if (es) CHECK(*es == F->add(*ea, *eb));
                if (ep) CHECK(*ep == F->mul(*ea, *eb));
                if (!b.is_zero() && *eb != 0) {
                    auto eq = eval_at(a / b, x);
                    if (eq) CHECK(*eq == F->mul(*ea, F->inv(*eb)));
                }
            }
        }
    }
}

TEST_CASE("valuation axioms and canonical form on random elements")
{
    std::mt19937_64 rng(99);
    const FieldCtx* F = field(3, 2);
    for (int it = 0; it < 300; ++it) {
        std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 3);
        PR a = random_pr(rng, F, m), b = random_pr(rng, F, 2 * m);
        PR s = a + b;
        CHECK(s - b == a);
        CHECK(a * (b + a) == a * b + a * a);
        CHECK(valuation(a * b) == valuation(a) + valuation(b));
        CHECK(valuation(s) >= vmin(valuation(a), valuation(b)));
        if (valuation(a) != valuation(b)) CHECK(valuation(s) == vmin(valuation(a), valuation(b)));
        if (!b.is_zero()) {
            CHECK((a / b) * b == a);
            CHECK(valuation(b.inv()).value() == -valuation(b).value());
        }
        CHECK(rescale_ramification(a, 2 * a.ramification()) == a);
        CHECK(valuation(rescale_ramification(a, 3 * a.ramification())) == valuation(a));
        if (!a.is_zero()) CHECK(a.den().lead() == 1);
    }
}

TEST_CASE("field mixing promotes the prime field and rejects unrelated fields")
{
    PR a = P("t", 2), b = parse_scalar("w", field(2, 2));
    CHECK((a + b).ctx() == field(2, 2));
    CHECK_THROWS_AS(P("t", 2) + P("t", 3), FieldMismatch);
    CHECK_THROWS_AS(parse_scalar("w", field(2, 2)) + parse_scalar("w", field(2, 3)), FieldMismatch);
}
