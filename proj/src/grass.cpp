#include "bt/grass.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <cmath>
#include <random>

namespace bt {

// ---------------------------------------------------------------- subsets

const SubsetTable& subset_table(int n, int d)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<SubsetTable>> cache;
    if (n < 0 || n > 20 || d < 0 || d > n) throw InvalidArgument("subset table out of range");
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, d}];
    if (slot) return *slot;
    auto t = std::make_unique<SubsetTable>();
    t->n = n;
    t->d = d;
    t->index_of_mask.assign(std::size_t(1) << n, -1);
    Subset cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == d) {
            t->index_of_mask[subset_mask(cur)] = static_cast<int>(t->subsets.size());
            t->masks.push_back(subset_mask(cur));
            t->subsets.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    slot = std::move(t);
    return *slot;
}

int SubsetTable::index(const Subset& s) const { return index_of_mask[subset_mask(s)]; }

std::uint32_t subset_mask(const Subset& s)
{
    std::uint32_t m = 0;
    for (int i : s) m |= 1u << i;
    return m;
}

std::string subset_str(const Subset& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
    return out + "}";
}

// ---------------------------------------------------------------- GrassPoint

GrassPoint::GrassPoint(Matrix rows, int n, const FieldCtx* ctx)
    : d_(static_cast<int>(rows.size())), n_(n), rows_(std::move(rows)), ctx_(ctx)
{
    for (const auto& r : rows_)
        if (static_cast<int>(r.size()) != n_) throw InvalidArgument("row length differs from n");
    if (d_ > 0) {
        const FieldCtx* f = matrix_field(rows_);
        ctx_ = ctx_ ? join_fields(ctx_, f) : f;
        if (rank(rows_) != d_) throw InvalidArgument("Grassmannian point matrix is not of full rank");
    }
    if (!ctx_) throw InvalidArgument("Grassmannian point without a field");
}

std::int64_t GrassPoint::ramification() const { return d_ ? matrix_ramification(rows_) : 1; }

GrassPoint GrassPoint::rescaled(std::int64_t m) const
{
    return GrassPoint(d_ ? rescale_matrix(rows_, m) : rows_, n_, ctx_);
}

// ---------------------------------------------------------------- tropical vectors

TropPlueckerVector::TropPlueckerVector(int d, int n, std::vector<Val> values) : d_(d), n_(n), values_(std::move(values))
{
    const auto& t = subset_table(n, d);
    if (values_.size() != t.subsets.size()) throw InvalidArgument("tropical vector has wrong length");
    Val lo = Val::infinity();
    for (const auto& v : values_) lo = vmin(lo, v);
    if (lo.is_inf()) throw InvalidArgument("tropical vector identically +infinity");
    Q shift = lo.value();
    for (auto& v : values_) v = v - shift;
}

std::int64_t TropPlueckerVector::ramification() const
{
    QVec finite;
    for (const auto& v : values_)
        if (!v.is_inf()) finite.push_back(v.value());
    return common_denominator(finite);
}

const Val& TropPlueckerVector::at(const Subset& s) const { return values_.at(static_cast<std::size_t>(table().index(s))); }

const Val& TropPlueckerVector::at_mask(std::uint32_t mask) const
{
    return values_.at(static_cast<std::size_t>(table().index(mask)));
}

std::string TropPlueckerVector::str() const
{
    const auto& t = table();
    std::string out = "{";
    for (std::size_t i = 0; i < values_.size(); ++i)
        out += (i ? ", " : "") + subset_str(t.subsets[i]) + ": " + values_[i].str();
    return out + "}";
}

std::vector<PR> pluecker(const GrassPoint& x)
{
    const auto& t = subset_table(x.n(), x.d());
    std::vector<PR> out;
    out.reserve(t.subsets.size());
    if (x.d() == 0) {
        out.push_back(PR::one(x.field()));
        return out;
    }
    for (const auto& s : t.subsets) out.push_back(det(submatrix_cols(x.matrix(), s)));
    return out;
}

namespace {
thread_local TropAudit* current_audit = nullptr;
}

TropAudit::TropAudit() : prev_(current_audit) { current_audit = this; }
TropAudit::~TropAudit() { current_audit = prev_; }

void TropAudit::record(const TropPlueckerVector& tp)
{
    ++checked_;
    if (!check_trop_relations(tp)) ++violations_;
}

TropPlueckerVector trop_pluecker(const GrassPoint& x)
{
    std::vector<Val> vals;
    for (const auto& p : pluecker(x)) vals.push_back(p.valuation());
    TropPlueckerVector tp(x.d(), x.n(), std::move(vals));
    if (current_audit) current_audit->record(tp);
    return tp;
}

GrassPoint frame_change(const GrassPoint& x, const Matrix& g)
{
    if (static_cast<int>(g.size()) != x.n()) throw InvalidArgument("frame size differs from n");
    if (rank(g) != x.n()) throw SingularMatrix();
    if (x.d() == 0) return x;
    return GrassPoint(mat_mul(x.matrix(), g), x.n());
}

bool check_trop_relations(const TropPlueckerVector& tp)
{
    int d = tp.d(), n = tp.n();
    if (d < 2 || n - d < 2) return true;
    const auto& small = subset_table(n, d - 2);
    for (std::uint32_t S : small.masks) {
        std::vector<int> rest;
        for (int i = 0; i < n; ++i)
            if (!(S >> i & 1u)) rest.push_back(i);
        auto at = [&](int a, int b) { return tp.at_mask(S | (1u << a) | (1u << b)); };
        std::size_t r = rest.size();
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = a + 1; b < r; ++b)
                for (std::size_t c = b + 1; c < r; ++c)
                    for (std::size_t e = c + 1; e < r; ++e) {
                        int i = rest[a], j = rest[b], k = rest[c], l = rest[e];
                        Val t1 = at(i, j) + at(k, l);
                        Val t2 = at(i, k) + at(j, l);
                        Val t3 = at(i, l) + at(j, k);
                        Val lo = vmin(t1, vmin(t2, t3));
                        int hits = (t1 == lo) + (t2 == lo) + (t3 == lo);
                        if (hits < 2) return false;
                    }
    }
    return true;
}

// ---------------------------------------------------------------- surrogates

namespace {

long binom(int n, int k)
{
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

FiniteFieldElem ff_det(std::vector<std::vector<FiniteFieldElem>> a)
{
    std::size_t n = a.size();
    const FieldCtx* ctx = a[0][0].ctx();
    FiniteFieldElem d(ctx, 1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t i = c; i < n; ++i)
            if (!a[i][c].is_zero()) {
                piv = i;
                break;
            }
        if (piv == n) return FiniteFieldElem(ctx, 0);
        if (piv != c) {
            std::swap(a[piv], a[c]);
            d = -d;
        }
        d = d * a[c][c];
        FiniteFieldElem inv = a[c][c].inv();
        for (std::size_t i = c + 1; i < n; ++i) {
            FiniteFieldElem f = a[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) a[i][j] = a[i][j] - f * a[c][j];
        }
    }
    return d;
}

// rank over F_p of field elements written in the power basis
std::size_t prime_rank(const std::vector<FiniteFieldElem>& elems)
{
    if (elems.empty()) return 0;
    const FieldCtx* ctx = elems[0].ctx();
    std::uint32_t p = ctx->p(), r = ctx->r();
    std::vector<std::vector<std::uint64_t>> rows;
    for (const auto& e : elems) {
        std::vector<std::uint64_t> digits(r);
        std::uint32_t v = e.raw();
        for (std::uint32_t i = 0; i < r; ++i) {
            digits[i] = v % p;
            v /= p;
        }
        rows.push_back(digits);
    }
    std::size_t rk = 0;
    for (std::uint32_t c = 0; c < r && rk < rows.size(); ++c) {
        std::size_t piv = rows.size();
        for (std::size_t i = rk; i < rows.size(); ++i)
            if (rows[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rk]);
        std::uint64_t inv = 1;
        for (std::uint64_t k = 1; k < p; ++k)
            if (rows[rk][c] * k % p == 1) inv = k;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rk || rows[i][c] == 0) continue;
            std::uint64_t f = rows[i][c] * inv % p;
            for (std::uint32_t j = 0; j < r; ++j) rows[i][j] = (rows[i][j] + p * p - f * rows[rk][j] % p) % p;
        }
        ++rk;
    }
    return rk;
}

struct CauchyKey {
    int d, n;
    std::uint32_t p;
    bool operator<(const CauchyKey& o) const { return std::tie(d, n, p) < std::tie(o.d, o.n, o.p); }
};

// Cauchy matrix whose maximal minors are independent over the prime field
// whenever the field is large enough; the search is deterministic.
const std::vector<std::vector<FiniteFieldElem>>& cauchy_matrix(int d, int n, std::uint32_t p)
{
    static std::mutex mu;
    static std::map<CauchyKey, std::vector<std::vector<FiniteFieldElem>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({d, n, p});
    if (it != cache.end()) return it->second;

    const FieldCtx* ctx = surrogate_field(d, n, p);
    std::uint64_t q = ctx->q();
    long want = std::min<long>(binom(n, d), ctx->r());
    const auto& t = subset_table(n, d);
    std::mt19937_64 rng(0x5eed0000ULL + static_cast<std::uint64_t>(p * 1000 + n * 10 + d));
    std::vector<std::vector<FiniteFieldElem>> best;
    for (int attempt = 0; attempt < 4000; ++attempt) {
        // distinct nonzero parameters x_1..x_d, y_1..y_n
        std::vector<std::uint32_t> params;
        if (attempt == 0) {
            for (int i = 1; i <= d + n; ++i) params.push_back(static_cast<std::uint32_t>(i));
        } else {
            while (static_cast<int>(params.size()) < d + n) {
                auto v = static_cast<std::uint32_t>(1 + rng() % (q - 1));
                if (std::find(params.begin(), params.end(), v) == params.end()) params.push_back(v);
            }
        }
        std::vector<std::vector<FiniteFieldElem>> C(d, std::vector<FiniteFieldElem>(n));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < n; ++j) {
                FiniteFieldElem xi(ctx, params[i]), yj(ctx, params[d + j]);
                C[i][j] = (xi - yj).inv();
            }
        std::vector<FiniteFieldElem> minors;
        for (const auto& s : t.subsets) {
            std::vector<std::vector<FiniteFieldElem>> sub(d);
            for (int i = 0; i < d; ++i)
                for (int c : s) sub[i].push_back(C[i][c]);
            minors.push_back(ff_det(sub));
        }
        if (best.empty()) best = C;
        if (static_cast<long>(prime_rank(minors)) >= want) {
            best = C;
            break;
        }
    }
    return cache.emplace(CauchyKey{d, n, p}, best).first->second;
}

}  // namespace

const FieldCtx* surrogate_field(int d, int n, std::uint32_t p)
{
    std::uint32_t r = min_degree_for(p, static_cast<std::uint64_t>(n + d + 1));
    r = std::max<std::uint32_t>(r, static_cast<std::uint32_t>(std::min<long>(binom(n, d), 12)));
    // keep the multiplication tables affordable
    while (r > 1) {
        long double q = 1;
        for (std::uint32_t i = 0; i < r; ++i) q *= p;
        if (q <= (1u << 20)) break;
        --r;
    }
    if (std::pow(static_cast<long double>(p), r) < n + d + 1) throw InvalidArgument("no suitable surrogate field");
    return field(p, r);
}

GrassPoint gauss_surrogate(const QVec& u, const Matrix& g, const HodgeDatum& h, std::uint32_t p)
{
    int n = h.n, d = h.d;
    if (static_cast<int>(u.size()) != n) throw InvalidArgument("u has wrong length");
    std::int64_t m = common_denominator(u);
    if (m > kMaxRamification) throw RamificationBound("surrogate ramification exceeds bound");
    const FieldCtx* ctx = surrogate_field(d, n, p);
    const auto& C = cauchy_matrix(d, n, p);
    Matrix rows(d, Row(n));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j) {
            PR tj = PR::monomial(ctx, 1, u[static_cast<std::size_t>(j)], m);
            rows[i][j] = PR::constant(ctx, C[i][j].raw(), m) * tj;
        }
    Matrix ginv = inverse(g);
    return GrassPoint(mat_mul(rows, ginv), n);
}

GrassPoint gauss_surrogate(const QVec& u, const HodgeDatum& h, std::uint32_t p)
{
    return gauss_surrogate(u, identity_matrix(field(p, 1), h.n), h, p);
}

}  // namespace bt
