#include "bt/valfield.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace bt {

namespace {

bool is_prime(std::uint64_t p)
{
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t x)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= x; ++d) {
        if (x % d == 0) {
            out.push_back(d);
            while (x % d == 0) x /= d;
        }
    }
    if (x > 1) out.push_back(x);
    return out;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f)
{
    Poly q, r;
    Poly::divmod(a * b, f, q, r);
    return r;
}

Poly powmod(Poly base, std::uint64_t e, const Poly& f)
{
    Poly result = Poly::constant(f.ctx(), 1);
    Poly q, r;
    Poly::divmod(base, f, q, r);
    base = r;
    while (e > 0) {
        if (e & 1) result = mulmod(result, base, f);
        base = mulmod(base, base, f);
        e >>= 1;
    }
    return result;
}

// Rabin's irreducibility test over the prime field.
bool irreducible(const Poly& f)
{
    const FieldCtx* fp = f.ctx();
    std::uint64_t p = fp->p();
    int r = f.degree();
    Poly x = Poly::monomial(fp, 1, 1);
    auto frob_iter = [&](int k) {
        Poly h = x;
        for (int i = 0; i < k; ++i) h = powmod(h, p, f);
        return h;
    };
    if (!(frob_iter(r) - x).is_zero()) return false;
    for (auto l : prime_factors(static_cast<std::uint64_t>(r))) {
        Poly h = frob_iter(r / static_cast<int>(l)) - x;
        if (Poly::gcd(h, f).degree() != 0) return false;
    }
    return true;
}

}  // namespace

FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t r) : p_(p), r_(r), q_(1)
{
    for (std::uint32_t i = 0; i < r; ++i) q_ *= p;
    if (r == 1) return;

    const FieldCtx* fp = field(p, 1);
    std::uint64_t count = q_;
    for (std::uint64_t k = 0; k < count; ++k) {
        std::vector<std::uint32_t> c(r + 1, 0);
        std::uint64_t rest = k;
        for (std::uint32_t i = 0; i < r; ++i) {
            c[i] = static_cast<std::uint32_t>(rest % p);
            rest /= p;
        }
        c[r] = 1;
        if (c[0] == 0) continue;
        Poly f(fp, c);
        if (irreducible(f)) {
            modulus_ = c;
            break;
        }
    }
    if (modulus_.empty()) throw Error("no irreducible polynomial found");
    build_tables();
}

void FieldCtx::build_tables()
{
    if (q_ > (1u << 20)) return;
    auto pow_slow = [&](std::uint32_t a, std::uint64_t e) {
        std::uint32_t res = 1;
        while (e > 0) {
            if (e & 1) res = mul_slow(res, a);
            a = mul_slow(a, a);
            e >>= 1;
        }
        return res;
    };
    auto factors = prime_factors(q_ - 1);
    std::uint32_t gen = 0;
    for (std::uint32_t g = 2; g < q_; ++g) {
        bool ok = std::all_of(factors.begin(), factors.end(),
                              [&](std::uint64_t l) { return pow_slow(g, (q_ - 1) / l) != 1; });
        if (ok) {
            gen = g;
            break;
        }
    }
    exp_.resize(2 * (q_ - 1));
    log_.assign(q_, 0);
    std::uint32_t cur = 1;
    for (std::uint64_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = cur;
        exp_[i + q_ - 1] = cur;
        log_[cur] = static_cast<std::uint32_t>(i);
        cur = mul_slow(cur, gen);
    }
}

std::uint32_t FieldCtx::add(std::uint32_t a, std::uint32_t b) const
{
    if (r_ == 1) return static_cast<std::uint32_t>((std::uint64_t(a) + b) % p_);
    if (p_ == 2) return a ^ b;
    std::uint32_t res = 0, pw = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
        res += ((a % p_ + b % p_) % p_) * pw;
        a /= p_;
        b /= p_;
        pw *= p_;
    }
    return res;
}

std::uint32_t FieldCtx::neg(std::uint32_t a) const
{
    if (r_ == 1) return a == 0 ? 0 : p_ - a;
    if (p_ == 2) return a;
    std::uint32_t res = 0, pw = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
        std::uint32_t d = a % p_;
        res += (d == 0 ? 0 : p_ - d) * pw;
        a /= p_;
        pw *= p_;
    }
    return res;
}

std::uint32_t FieldCtx::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FieldCtx::mul_slow(std::uint32_t a, std::uint32_t b) const
{
    if (r_ == 1) return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p_);
    std::vector<std::uint64_t> da(r_), db(r_), prod(2 * r_ - 1, 0);
    for (std::uint32_t i = 0; i < r_; ++i) {
        da[i] = a % p_;
        db[i] = b % p_;
        a /= p_;
        b /= p_;
    }
    for (std::uint32_t i = 0; i < r_; ++i)
        for (std::uint32_t j = 0; j < r_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    for (std::uint32_t k = 2 * r_ - 2; k >= r_; --k) {
        std::uint64_t c = prod[k];
        if (c == 0) continue;
        // x^r = -(m_0 + ... + m_{r-1} x^{r-1})
        for (std::uint32_t i = 0; i < r_; ++i) {
            std::uint64_t sub = (c * modulus_[i]) % p_;
            prod[k - r_ + i] = (prod[k - r_ + i] + p_ - sub) % p_;
        }
        prod[k] = 0;
    }
    std::uint32_t res = 0, pw = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
        res += static_cast<std::uint32_t>(prod[i]) * pw;
        pw *= p_;
    }
    return res;
}

std::uint32_t FieldCtx::mul(std::uint32_t a, std::uint32_t b) const
{
    if (a == 0 || b == 0) return 0;
    if (r_ == 1) return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p_);
    if (!exp_.empty()) return exp_[log_[a] + log_[b]];
    return mul_slow(a, b);
}

std::uint32_t FieldCtx::inv(std::uint32_t a) const
{
    if (a == 0) throw DivisionByZero();
    if (!exp_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    // a^(q-2)
    std::uint64_t e = q_ - 2;
    std::uint32_t res = 1, base = a;
    while (e > 0) {
        if (e & 1) res = mul(res, base);
        base = mul(base, base);
        e >>= 1;
    }
    return res;
}

std::uint32_t FieldCtx::from_int(std::int64_t k) const
{
    std::int64_t v = k % static_cast<std::int64_t>(p_);
    if (v < 0) v += p_;
    return static_cast<std::uint32_t>(v);
}

std::uint32_t FieldCtx::generator() const
{
    if (r_ == 1) throw InvalidArgument("prime field has no generator symbol");
    return p_;
}

std::string FieldCtx::elem_str(std::uint32_t a) const
{
    if (r_ == 1) return std::to_string(a);
    std::string out;
    for (std::uint32_t i = 0; i < r_; ++i) {
        std::uint32_t d = a % p_;
        a /= p_;
        if (d == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(d);
            continue;
        }
        if (d != 1) out += std::to_string(d) + "*";
        out += "w";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

const FieldCtx* field(std::uint32_t p, std::uint32_t r)
{
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<FieldCtx>> registry;
    if (!is_prime(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
    if (r < 1 || r > 12) throw InvalidArgument("extension degree must be in [1, 12]");
    long double q = 1;
    for (std::uint32_t i = 0; i < r; ++i) q *= p;
    if (q >= 4294967296.0L) throw InvalidArgument("field too large");
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = registry.find({p, r});
        if (it != registry.end()) return it->second.get();
    }
    // built outside the lock: the constructor recursively asks for GF(p)
    std::unique_ptr<FieldCtx> ctx(new FieldCtx(p, r));
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = registry.emplace(std::make_pair(p, r), std::move(ctx));
    return it->second.get();
}

std::uint32_t min_degree_for(std::uint32_t p, std::uint64_t lower_bound)
{
    std::uint32_t r = 1;
    std::uint64_t q = p;
    while (q < lower_bound) {
        q *= p;
        ++r;
    }
    return r;
}

// ---------------------------------------------------------------- elements

FiniteFieldElem FiniteFieldElem::operator+(const FiniteFieldElem& o) const
{
    if (ctx_ != o.ctx_) throw FieldMismatch("finite field elements of different fields");
    return {ctx_, ctx_->add(v_, o.v_)};
}

FiniteFieldElem FiniteFieldElem::operator-(const FiniteFieldElem& o) const
{
    if (ctx_ != o.ctx_) throw FieldMismatch("finite field elements of different fields");
    return {ctx_, ctx_->sub(v_, o.v_)};
}

FiniteFieldElem FiniteFieldElem::operator*(const FiniteFieldElem& o) const
{
    if (ctx_ != o.ctx_) throw FieldMismatch("finite field elements of different fields");
    return {ctx_, ctx_->mul(v_, o.v_)};
}

FiniteFieldElem FiniteFieldElem::inv() const { return {ctx_, ctx_->inv(v_)}; }

// ---------------------------------------------------------------- Poly

Poly::Poly(const FieldCtx* ctx, std::vector<std::uint32_t> coeffs) : ctx_(ctx), c_(std::move(coeffs))
{
    trim();
}

Poly Poly::constant(const FieldCtx* ctx, std::uint32_t c) { return Poly(ctx, {c}); }

Poly Poly::monomial(const FieldCtx* ctx, std::uint32_t c, std::size_t k)
{
    if (c == 0) return Poly(ctx);
    std::vector<std::uint32_t> v(k + 1, 0);
    v[k] = c;
    return Poly(ctx, std::move(v));
}

void Poly::trim()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Poly::ord() const
{
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<int>(i);
    return -1;
}

Poly Poly::operator+(const Poly& o) const
{
    if (ctx_ != o.ctx_) throw FieldMismatch("polynomials over different fields");
    std::vector<std::uint32_t> v(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ctx_->add(coeff(i), o.coeff(i));
    return Poly(ctx_, std::move(v));
}

Poly Poly::operator-() const
{
    std::vector<std::uint32_t> v(c_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ctx_->neg(c_[i]);
    return Poly(ctx_, std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const
{
    if (ctx_ != o.ctx_) throw FieldMismatch("polynomials over different fields");
    if (is_zero() || o.is_zero()) return Poly(ctx_);
    std::vector<std::uint32_t> v(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            v[i + j] = ctx_->add(v[i + j], ctx_->mul(c_[i], o.c_[j]));
        }
    }
    return Poly(ctx_, std::move(v));
}

Poly Poly::scale(std::uint32_t c) const
{
    std::vector<std::uint32_t> v(c_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ctx_->mul(c_[i], c);
    return Poly(ctx_, std::move(v));
}

Poly Poly::shift(std::size_t k) const
{
    if (is_zero()) return *this;
    std::vector<std::uint32_t> v(k, 0);
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(ctx_, std::move(v));
}

Poly Poly::unshift(std::size_t k) const
{
    if (is_zero()) return *this;
    if (ord() < static_cast<int>(k)) throw InvalidArgument("unshift below order");
    return Poly(ctx_, std::vector<std::uint32_t>(c_.begin() + static_cast<long>(k), c_.end()));
}

Poly Poly::expand(std::size_t k) const
{
    if (k == 1 || is_zero()) return *this;
    std::vector<std::uint32_t> v((c_.size() - 1) * k + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
    return Poly(ctx_, std::move(v));
}

Poly Poly::contract(std::size_t k) const
{
    if (k == 1 || is_zero()) return *this;
    std::vector<std::uint32_t> v((c_.size() - 1) / k + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (i % k != 0) throw InvalidArgument("contract: exponent not divisible");
        v[i / k] = c_[i];
    }
    return Poly(ctx_, std::move(v));
}

Poly Poly::monic() const
{
    if (is_zero()) return *this;
    return scale(ctx_->inv(lead()));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem)
{
    if (b.is_zero()) throw DivisionByZero();
    const FieldCtx* ctx = a.ctx_ ? a.ctx_ : b.ctx_;
    if (a.degree() < b.degree()) {
        quot = Poly(ctx);
        rem = a;
        return;
    }
    std::vector<std::uint32_t> r = a.c_;
    std::vector<std::uint32_t> q(a.c_.size() - b.c_.size() + 1, 0);
    std::uint32_t inv_lead = ctx->inv(b.lead());
    std::size_t db = b.c_.size() - 1;
    for (std::size_t k = r.size(); k-- > db;) {
        if (r[k] == 0) continue;
        std::uint32_t c = ctx->mul(r[k], inv_lead);
        q[k - db] = c;
        for (std::size_t j = 0; j <= db; ++j)
            r[k - db + j] = ctx->sub(r[k - db + j], ctx->mul(c, b.c_[j]));
    }
    quot = Poly(ctx, std::move(q));
    rem = Poly(ctx, std::move(r));
}

Poly Poly::gcd(Poly a, Poly b)
{
    while (!b.is_zero()) {
        Poly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly Poly::with_ctx(const FieldCtx* ctx) const
{
    Poly out = *this;
    out.ctx_ = ctx;
    return out;
}

// ---------------------------------------------------------------- PuiseuxRational

namespace {

void check_ramification(std::int64_t m)
{
    if (m < 1) throw InvalidArgument("ramification must be positive");
    if (m > kMaxRamification)
        throw RamificationBound("ramification " + std::to_string(m) + " exceeds bound " +
                                std::to_string(kMaxRamification));
}

}  // namespace

PuiseuxRational::PuiseuxRational(const FieldCtx* ctx, std::int64_t m, Poly num, Poly den)
    : ctx_(ctx), m_(m), num_(std::move(num)), den_(std::move(den))
{
    check_ramification(m);
    if (den_.is_zero()) throw DivisionByZero();
    canonicalize();
}

void PuiseuxRational::canonicalize()
{
    if (num_.is_zero()) {
        den_ = Poly::constant(ctx_, 1);
        return;
    }
    if (!den_.is_one()) {
        Poly g = Poly::gcd(num_, den_);
        if (!g.is_one()) {
            Poly q, r;
            Poly::divmod(num_, g, q, r);
            num_ = q;
            Poly::divmod(den_, g, q, r);
            den_ = q;
        }
        std::uint32_t lc = den_.lead();
        if (lc != 1) {
            std::uint32_t inv = ctx_->inv(lc);
            num_ = num_.scale(inv);
            den_ = den_.scale(inv);
        }
    }
}

PR PR::zero(const FieldCtx* ctx, std::int64_t m) { return PR(ctx, m, Poly(ctx), Poly::constant(ctx, 1)); }

PR PR::one(const FieldCtx* ctx, std::int64_t m) { return constant(ctx, 1, m); }

PR PR::from_int(const FieldCtx* ctx, std::int64_t k, std::int64_t m) { return constant(ctx, ctx->from_int(k), m); }

PR PR::constant(const FieldCtx* ctx, std::uint32_t c, std::int64_t m)
{
    return PR(ctx, m, Poly::constant(ctx, c), Poly::constant(ctx, 1));
}

PR PR::monomial(const FieldCtx* ctx, std::uint32_t c, const Q& e, std::int64_t m)
{
    auto den_e = boost::multiprecision::denominator(e).convert_to<std::int64_t>();
    if (m == 0) m = den_e;
    if (m % den_e != 0) throw InvalidArgument("exponent not in (1/m)Z");
    check_ramification(m);
    Q scaled = e * Q(m);
    auto k = boost::multiprecision::numerator(scaled).convert_to<std::int64_t>();
    if (k >= 0)
        return PR(ctx, m, Poly::monomial(ctx, c, static_cast<std::size_t>(k)), Poly::constant(ctx, 1));
    return PR(ctx, m, Poly::constant(ctx, c), Poly::monomial(ctx, 1, static_cast<std::size_t>(-k)));
}

const FieldCtx* join_fields(const FieldCtx* a, const FieldCtx* b)
{
    if (a == b) return a;
    if (a->p() == b->p()) {
        if (a->r() == 1) return b;
        if (b->r() == 1) return a;
    }
    throw FieldMismatch("cannot combine " + field_header(a) + " and " + field_header(b));
}

PR PR::with_ctx(const FieldCtx* ctx) const
{
    if (ctx == ctx_) return *this;
    if (join_fields(ctx_, ctx) != ctx) throw FieldMismatch("cannot move element to a smaller field");
    PR out = *this;
    out.ctx_ = ctx;
    out.num_ = num_.with_ctx(ctx);
    out.den_ = den_.with_ctx(ctx);
    return out;
}

void unify(PR& a, PR& b)
{
    if (a.ctx() != b.ctx()) {
        const FieldCtx* f = join_fields(a.ctx(), b.ctx());
        a = a.with_ctx(f);
        b = b.with_ctx(f);
    }
    if (a.ramification() != b.ramification()) {
        std::int64_t m = std::lcm(a.ramification(), b.ramification());
        a = a.rescale(m);
        b = b.rescale(m);
    }
}

PR PR::operator+(const PR& o) const
{
    PR a = *this, b = o;
    unify(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return PR(a.ctx_, a.m_, a.num_ + b.num_, a.den_);
    return PR(a.ctx_, a.m_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

PR PR::operator-() const
{
    PR out = *this;
    out.num_ = -num_;
    return out;
}

PR PR::operator-(const PR& o) const { return *this + (-o); }

PR PR::operator*(const PR& o) const
{
    PR a = *this, b = o;
    unify(a, b);
    if (a.is_zero() || b.is_zero()) return zero(a.ctx_, a.m_);
    return PR(a.ctx_, a.m_, a.num_ * b.num_, a.den_ * b.den_);
}

PR PR::inv() const
{
    if (is_zero()) throw DivisionByZero();
    return PR(ctx_, m_, den_, num_);
}

PR PR::operator/(const PR& o) const { return *this * o.inv(); }

PR PR::pow(std::int64_t k) const
{
    if (k < 0) return inv().pow(-k);
    PR result = one(ctx_, m_);
    PR base = *this;
    while (k > 0) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

bool PR::operator==(const PR& o) const
{
    PR a = *this, b = o;
    unify(a, b);
    return a.num_ == b.num_ && a.den_ == b.den_;
}

Val PR::valuation() const
{
    if (is_zero()) return Val::infinity();
    return Val(Q(num_.ord() - den_.ord(), m_));
}

FiniteFieldElem PR::residue() const
{
    if (is_zero()) return FiniteFieldElem(ctx_, 0);
    int on = num_.ord(), od = den_.ord();
    if (on != od) throw NonUnitResidue();
    return FiniteFieldElem(ctx_, ctx_->mul(num_.coeff(on), ctx_->inv(den_.coeff(od))));
}

PR PR::rescale(std::int64_t m_new) const
{
    if (m_new == m_) return *this;
    if (m_new <= 0 || m_new % m_ != 0)
        throw InvalidArgument("rescale: " + std::to_string(m_new) + " is not a multiple of " + std::to_string(m_));
    check_ramification(m_new);
    auto k = static_cast<std::size_t>(m_new / m_);
    PR out = *this;
    out.m_ = m_new;
    out.num_ = num_.expand(k);
    out.den_ = den_.expand(k);
    return out;
}

PR PR::reduce_ramification() const
{
    std::int64_t g = m_;
    for (const Poly* p : {&num_, &den_})
        for (std::size_t i = 0; i < p->coeffs().size(); ++i)
            if (p->coeffs()[i] != 0) g = std::gcd(g, static_cast<std::int64_t>(i));
    if (g <= 1) return *this;
    PR out = *this;
    out.m_ = m_ / g;
    out.num_ = num_.contract(static_cast<std::size_t>(g));
    out.den_ = den_.contract(static_cast<std::size_t>(g));
    return out;
}

namespace {

std::string poly_in_t(const Poly& p, std::int64_t m, long shift = 0)
{
    if (p.is_zero()) return "0";
    const FieldCtx* ctx = p.ctx();
    std::string out;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        std::uint32_t c = p.coeffs()[i];
        if (c == 0) continue;
        std::string cs = ctx->elem_str(c);
        bool compound = cs.find('+') != std::string::npos || cs.find('*') != std::string::npos ||
                        cs.find('w') != std::string::npos;
        if (compound) cs = "(" + cs + ")";
        std::string term;
        Q e(static_cast<long>(i) - shift, m);
        if (e == 0) {
            term = cs;
        } else {
            std::string mono = "t";
            if (e != 1) mono += (is_integer(e) && e > 0) ? "^" + to_string(e) : "^(" + to_string(e) + ")";
            term = (c == 1) ? mono : cs + "*" + mono;
        }
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out;
}

}  // namespace

std::string PR::str() const
{
    if (den_.is_one()) return poly_in_t(num_, m_);
    // a pure power of t in the denominator prints as negative exponents
    if (den_.coeffs().size() == static_cast<std::size_t>(den_.ord() + 1) && den_.lead() == 1)
        return poly_in_t(num_, m_, den_.ord());
    return "(" + poly_in_t(num_, m_) + ")/(" + poly_in_t(den_, m_) + ")";
}

PR field_add(const PR& a, const PR& b) { return a + b; }
PR field_mul(const PR& a, const PR& b) { return a * b; }
PR field_neg(const PR& a) { return -a; }
PR field_inv(const PR& a) { return a.inv(); }
Val valuation(const PR& a) { return a.valuation(); }
FiniteFieldElem residue(const PR& a) { return a.residue(); }
PR rescale_ramification(const PR& a, std::int64_t m_new) { return a.rescale(m_new); }

// ---------------------------------------------------------------- parsing

namespace {

class ScalarParser {
public:
    ScalarParser(const std::string& s, const FieldCtx* ctx) : s_(s), ctx_(ctx) {}

    PR run()
    {
        PR v = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool peek_digit()
    {
        skip();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }

    Z integer()
    {
        if (!peek_digit()) fail("expected integer");
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return Z(s_.substr(start, pos_ - start));
    }

    Q exponent()
    {
        bool negative = false;
        if (accept('(')) {
            if (accept('-')) negative = true;
            Z a = integer();
            Z b = 1;
            if (accept('/')) b = integer();
            expect(')');
            if (b == 0) fail("zero exponent denominator");
            Q e(a, b);
            return negative ? Q(-e) : e;
        }
        if (accept('-')) negative = true;
        Q e(integer());
        return negative ? Q(-e) : e;
    }

    PR expr()
    {
        PR v = term();
        while (true) {
            if (accept('+'))
                v = v + term();
            else if (accept('-'))
                v = v - term();
            else
                return v;
        }
    }

    PR term()
    {
        PR v = unary();
        while (true) {
            if (accept('*'))
                v = v * unary();
            else if (accept('/'))
                v = v / unary();
            else
                return v;
        }
    }

    PR unary()
    {
        if (accept('-')) return -unary();
        return power();
    }

    PR power()
    {
        skip();
        bool is_t = pos_ < s_.size() && s_[pos_] == 't';
        PR base = atom();
        if (!accept('^')) return base;
        Q e = exponent();
        if (is_t) return PR::monomial(ctx_, 1, e);
        if (!is_integer(e)) fail("fractional exponent allowed only on t");
        return base.pow(boost::multiprecision::numerator(e).convert_to<std::int64_t>());
    }

    PR atom()
    {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            PR v = expr();
            expect(')');
            return v;
        }
        if (c == 't') {
            ++pos_;
            return PR::monomial(ctx_, 1, Q(1));
        }
        if (c == 'w') {
            ++pos_;
            if (ctx_->r() == 1) fail("symbol w needs an extension field");
            return PR::constant(ctx_, ctx_->generator());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Z k = integer();
            Z red = k % ctx_->p();
            return PR::constant(ctx_, red.convert_to<std::uint32_t>());
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    const FieldCtx* ctx_;
    std::size_t pos_ = 0;
};

}  // namespace

PR parse_scalar(const std::string& text, const FieldCtx* ctx, std::int64_t m)
{
    PR v = ScalarParser(text, ctx).run();
    if (m > 0) {
        v = v.reduce_ramification();
        if (m % v.ramification() != 0)
            throw ParseError("scalar '" + text + "' needs ramification " + std::to_string(v.ramification()));
        v = v.rescale(m);
    }
    return v;
}

const FieldCtx* parse_field_header(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.rfind("GF(", 0) != 0 || s.back() != ')') throw ParseError("bad field header '" + text + "'");
    std::string inner = s.substr(3, s.size() - 4);
    auto caret = inner.find('^');
    try {
        unsigned long p = std::stoul(inner.substr(0, caret));
        unsigned long r = caret == std::string::npos ? 1 : std::stoul(inner.substr(caret + 1));
        return field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(r));
    } catch (const std::logic_error&) {
        throw ParseError("bad field header '" + text + "'");
    }
}

std::string field_header(const FieldCtx* ctx)
{
    if (ctx->r() == 1) return "GF(" + std::to_string(ctx->p()) + ")";
    return "GF(" + std::to_string(ctx->p()) + "^" + std::to_string(ctx->r()) + ")";
}

}  // namespace bt
