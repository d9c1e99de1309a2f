#include "bt/retract.hpp"

#include "bt/errors.hpp"
#include "bt/lp.hpp"

#include <numeric>
#include <optional>
#include <random>

namespace bt {

void RetractionConfig::validate() const
{
    if (frame_depth < 0 || verify_depth < 0) throw InvalidArgument("frame depths must be non-negative");
    if (max_iterations < 1) throw InvalidArgument("max_iterations must be positive");
    if (verify_depth < frame_depth) throw InvalidArgument("verify_depth must be at least frame_depth");
    if (verify_depth > 3) throw ComplexityGuard("candidate frame depth is limited to 3");
}

// ---------------------------------------------------------------- apartment retraction

namespace {

struct FiniteEntry {
    const Subset* subset;
    Q value;
};

std::vector<FiniteEntry> finite_entries(const TropPlueckerVector& tp)
{
    std::vector<FiniteEntry> out;
    const auto& subsets = tp.table().subsets;
    for (std::size_t k = 0; k < subsets.size(); ++k)
        if (!tp.values()[k].is_inf()) out.push_back({&subsets[k], tp.values()[k].value()});
    return out;
}

QVec indicator(const Subset& I, int n, int extra = 0)
{
    QVec row(static_cast<std::size_t>(n + extra), Q(0));
    for (int i : I) row[static_cast<std::size_t>(i)] = 1;
    return row;
}

}  // namespace

ApartmentCertificate apartment_certificate(const TropPlueckerVector& tp)
{
    int n = tp.n(), d = tp.d();
    auto entries = finite_entries(tp);
    if (entries.empty()) throw InvalidArgument("tropical vector has no finite entry");

    // variables u_0..u_{n-1}, s; maximize s with s + sum_I u <= tp(I)
    lp::Problem prob(n + 1);
    for (int j = 0; j <= n; ++j) prob.free[static_cast<std::size_t>(j)] = true;
    for (const auto& e : entries) {
        QVec row = indicator(*e.subset, n, 1);
        row[static_cast<std::size_t>(n)] = 1;
        prob.add(row, lp::Sense::LE, e.value);
    }
    QVec ones(static_cast<std::size_t>(n + 1), Q(1));
    ones[static_cast<std::size_t>(n)] = 0;
    prob.add(ones, lp::Sense::EQ, Q(0));
    prob.objective[static_cast<std::size_t>(n)] = 1;
    auto res = lp::solve(prob);
    if (res.status == lp::Status::Unbounded) throw NotSemistableForTorus();
    if (res.status != lp::Status::Optimal) throw std::logic_error("apartment LP infeasible");

    ApartmentCertificate cert;
    cert.u.assign(res.x.begin(), res.x.begin() + n);
    cert.value = res.x[static_cast<std::size_t>(n)];
    cert.support = residual_support(tp, cert.u);
    cert.hull = hull_certificate(cert.support.subsets, d, n);
    if (cert.hull.position == HullPosition::Interior) return cert;

    // the optimal face: which support entries stay tight on all of it
    std::vector<Subset> tight;
    std::vector<QVec> weights;
    for (const auto& I : cert.support.subsets) {
        lp::Problem face(n);
        for (int j = 0; j < n; ++j) face.free[static_cast<std::size_t>(j)] = true;
        for (const auto& e : entries) face.add(indicator(*e.subset, n), lp::Sense::LE, e.value - cert.value);
        face.add(QVec(static_cast<std::size_t>(n), Q(1)), lp::Sense::EQ, Q(0));
        for (int i : I) face.objective[static_cast<std::size_t>(i)] = -1;
        auto fr = lp::solve(face);
        bool stays_tight = false;
        if (fr.status == lp::Status::Optimal) {
            Q lhs = 0;
            for (int i : I) lhs += fr.x[static_cast<std::size_t>(i)];
            Q value = tp.at(I).value();
            stays_tight = (value - lhs == cert.value);
        }
        if (stays_tight) {
            tight.push_back(I);
            weights.push_back(weight_vector(I, d, n));
        }
    }
    if (lp::rank(weights) == n - 1) return cert;
    throw NonUniqueMaximizer(tight);
}

QVec apartment_retract(const TropPlueckerVector& tp) { return apartment_certificate(tp).u; }

QVec apartment_retract(const TropPlueckerVector& tp, const HodgeDatum& h)
{
    if (tp.n() != h.n || tp.d() != h.d) throw InvalidArgument("tropical vector does not match the Hodge datum");
    return apartment_retract(tp);
}

// ---------------------------------------------------------------- global retraction

namespace {

ApartmentCertificate retract_in_frame(const GrassPoint& x, const Frame& g)
{
    try {
        return apartment_certificate(trop_pluecker(frame_change(x, g)));
    } catch (const NotSemistableForTorus&) {
        throw NotStable("point is not torus-semistable in frame " + matrix_str(g));
    }
}

// F_q-valued matrix helpers for the reduction at a building point
using FqMatrix = std::vector<std::vector<std::uint32_t>>;

int fq_rank(const FieldCtx* F, FqMatrix a)
{
    int rows = static_cast<int>(a.size());
    if (rows == 0) return 0;
    int cols = static_cast<int>(a[0].size()), r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && a[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(r)]);
        auto& pr = a[static_cast<std::size_t>(r)];
        std::uint32_t inv = F->inv(pr[static_cast<std::size_t>(c)]);
        for (int i = r + 1; i < rows; ++i) {
            auto& row = a[static_cast<std::size_t>(i)];
            std::uint32_t f = F->mul(row[static_cast<std::size_t>(c)], inv);
            if (f == 0) continue;
            for (int j = c; j < cols; ++j)
                row[static_cast<std::size_t>(j)] = F->sub(row[static_cast<std::size_t>(j)], F->mul(f, pr[static_cast<std::size_t>(j)]));
        }
        ++r;
    }
    return r;
}

// All subspaces of F_q^k (q = base size) as reduced echelon bases, including
// the zero space and the whole space. Returns false when more than `limit`.
bool enumerate_subspaces(std::uint32_t q, int k, std::size_t limit, std::vector<FqMatrix>& out)
{
    out.clear();
    for (std::uint32_t pivmask = 0; pivmask < (1u << k); ++pivmask) {
        std::vector<int> piv;
        for (int j = 0; j < k; ++j)
            if (pivmask >> j & 1u) piv.push_back(j);
        // free positions: row a, column j > piv[a], j not a pivot
        std::vector<std::pair<int, int>> free;
        for (std::size_t a = 0; a < piv.size(); ++a)
            for (int j = piv[a] + 1; j < k; ++j)
                if (!(pivmask >> j & 1u)) free.emplace_back(static_cast<int>(a), j);
        std::vector<std::uint32_t> digits(free.size(), 0);
        while (true) {
            if (out.size() >= limit) return false;
            FqMatrix B(piv.size(), std::vector<std::uint32_t>(static_cast<std::size_t>(k), 0));
            for (std::size_t a = 0; a < piv.size(); ++a) B[a][static_cast<std::size_t>(piv[a])] = 1;
            for (std::size_t f = 0; f < free.size(); ++f)
                B[static_cast<std::size_t>(free[f].first)][static_cast<std::size_t>(free[f].second)] = digits[f];
            out.push_back(std::move(B));
            std::size_t pos = 0;
            while (pos < digits.size() && ++digits[pos] == q) digits[pos++] = 0;
            if (pos == digits.size()) break;
        }
    }
    return true;
}

constexpr std::size_t kResidualSearchLimit = 400000;

}  // namespace

std::optional<Frame> residual_destabilizing_frame(const GrassPoint& x, const BuildingPoint& z, const FieldCtx* base,
                                                  bool* complete)
{
    if (complete) *complete = true;
    int n = x.n(), d = x.d();
    if (z.n() != n) throw InvalidArgument("building point and Grassmannian point differ in n");
    if (!base) base = field(x.field()->p(), 1);
    const FieldCtx* K = join_fields(x.field(), base);
    if (base != K && base->r() != 1) throw FieldMismatch("residual test needs the base to be the prime field or the point's field");

    // xhat = x f diag(t^{-u}); its reduction is the residual point at z
    Matrix xf = mat_mul(x.matrix(), z.frame);
    for (auto& row : xf)
        for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j)].with_ctx(K) * PR::monomial(K, 1, -z.coords[static_cast<std::size_t>(j)]);
    GrassPoint xhat(xf, n, K);
    auto p = pluecker(xhat);
    std::size_t best = 0;
    for (std::size_t k = 1; k < p.size(); ++k)
        if (p[k].valuation() < p[best].valuation()) best = k;
    const Subset& I0 = subset_table(n, d).subsets[best];
    Matrix Y = mat_mul(inverse(submatrix_cols(xf, I0)), xf);
    FqMatrix xbar(static_cast<std::size_t>(d), std::vector<std::uint32_t>(static_cast<std::size_t>(n), 0));
    for (int a = 0; a < d; ++a)
        for (int j = 0; j < n; ++j) {
            const PR& e = Y[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)];
            Val v = e.valuation();
            if (!v.is_inf() && v.value() == 0) xbar[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] = e.residue().raw();
        }

    // coordinates grouped by the class of u_j modulo Z
    std::vector<std::vector<int>> classes;
    {
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        for (int i = 0; i < n; ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            std::vector<int> c;
            for (int j = i; j < n; ++j)
                if (!used[static_cast<std::size_t>(j)] && is_integer(z.coords[static_cast<std::size_t>(j)] - z.coords[static_cast<std::size_t>(i)])) {
                    used[static_cast<std::size_t>(j)] = true;
                    c.push_back(j);
                }
            classes.push_back(c);
        }
    }
    auto q0 = static_cast<std::uint32_t>(base->q());
    std::vector<std::vector<FqMatrix>> spaces(classes.size());
    std::size_t total = 1;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (!enumerate_subspaces(q0, static_cast<int>(classes[c].size()), kResidualSearchLimit, spaces[c]) ||
            (total *= spaces[c].size()) > kResidualSearchLimit) {
            if (complete) *complete = false;
            return std::nullopt;
        }
    }

    // graded subspace V = sum_c V_c violates stability when n rank(xbar|V) <= d dim V
    std::vector<std::size_t> choice(classes.size(), 0);
    while (true) {
        int dim = 0;
        FqMatrix cols(static_cast<std::size_t>(d));
        for (std::size_t c = 0; c < classes.size(); ++c) {
            for (const auto& b : spaces[c][choice[c]]) {
                ++dim;
                for (int a = 0; a < d; ++a) {
                    std::uint32_t acc = 0;
                    for (std::size_t s = 0; s < b.size(); ++s)
                        if (b[s]) acc = K->add(acc, K->mul(b[s], xbar[static_cast<std::size_t>(a)][static_cast<std::size_t>(classes[c][s])]));
                    cols[static_cast<std::size_t>(a)].push_back(acc);
                }
            }
        }
        int rk = dim > 0 && dim < n ? fq_rank(K, cols) : -1;
        if (rk >= 0 && n * rk == d * dim)
            throw NotStable("residual point is strictly semistable: a rational subspace of dimension " +
                            std::to_string(dim) + " meets it in rank " + std::to_string(rk));
        if (rk >= 0 && n * rk < d * dim) {
            // lift: per class, the basis of V_c completed by unit vectors, placed on the class indices
            Matrix P(static_cast<std::size_t>(n), Row(static_cast<std::size_t>(n), PR::zero(base)));
            for (std::size_t c = 0; c < classes.size(); ++c) {
                const auto& C = classes[c];
                FqMatrix basis = spaces[c][choice[c]];
                std::vector<bool> pivot(C.size(), false);
                for (const auto& b : basis)
                    for (std::size_t s = 0; s < b.size(); ++s)
                        if (b[s]) {
                            pivot[s] = true;
                            break;
                        }
                for (std::size_t s = 0; s < C.size(); ++s)
                    if (!pivot[s]) {
                        std::vector<std::uint32_t> e(C.size(), 0);
                        e[s] = 1;
                        basis.push_back(e);
                    }
                for (std::size_t r = 0; r < C.size(); ++r)
                    for (std::size_t s = 0; s < C.size(); ++s) {
                        if (!basis[r][s]) continue;
                        Q shift = z.coords[static_cast<std::size_t>(C[r])] - z.coords[static_cast<std::size_t>(C[s])];
                        P[static_cast<std::size_t>(C[s])][static_cast<std::size_t>(C[r])] = PR::monomial(base, basis[r][s], shift);
                    }
            }
            return mat_mul(z.frame, P);
        }
        std::size_t pos = 0;
        while (pos < choice.size() && ++choice[pos] == spaces[pos].size()) choice[pos++] = 0;
        if (pos == choice.size()) break;
    }
    return std::nullopt;
}

Retraction global_retract_full(const GrassPoint& x, const RetractionConfig& cfg)
{
    cfg.validate();
    if (x.d() == 0 || x.d() == x.n()) throw InvalidArgument("retraction needs 0 < d < n");
    const FieldCtx* base = cfg.base ? cfg.base : field(x.field()->p(), 1);
    int n = x.n();

    Retraction out;
    Frame start = identity_matrix(base, n);
    out.point = BuildingPoint{start, retract_in_frame(x, start).u};
    out.trail.push_back(out.point);

    int depth = cfg.frame_depth;
    while (true) {
        if (++out.iterations > cfg.max_iterations) {
            std::vector<std::string> trail;
            for (const auto& z : out.trail) trail.push_back(z.str());
            throw MaxIterationsExceeded("global retraction did not reach a fixed point", trail);
        }
        auto frames = candidate_frames(out.point, depth, base);
        std::vector<FrameCheck> checks;
        bool moved = false;
        for (const auto& g : frames) {
            auto cert = retract_in_frame(x, g);
            BuildingPoint w{g, cert.u};
            if (!points_equal(w, out.point)) {
                out.point = w;
                out.trail.push_back(w);
                moved = true;
                break;
            }
            checks.push_back({g, std::move(cert)});
        }
        if (moved) {
            depth = cfg.frame_depth;
            continue;
        }
        bool complete = false;
        if (auto g = residual_destabilizing_frame(x, out.point, base, &complete)) {
            auto cert = retract_in_frame(x, *g);
            BuildingPoint w{*g, cert.u};
            if (points_equal(w, out.point)) throw std::logic_error("residual destabilizer did not move the point");
            out.point = w;
            out.trail.push_back(w);
            depth = cfg.frame_depth;
            continue;
        }
        out.residually_stable = complete;
        if (!complete && depth < cfg.verify_depth) {
            depth = cfg.verify_depth;
            continue;
        }
        out.certificate = std::move(checks);
        return out;
    }
}

BuildingPoint global_retract(const GrassPoint& x, const RetractionConfig& cfg)
{
    return global_retract_full(x, cfg).point;
}

BuildingPoint global_retract(const GrassPoint& x, const RetractionConfig& cfg, const HodgeDatum& h)
{
    if (x.n() != h.n || x.d() != h.d) throw InvalidArgument("point does not match the Hodge datum");
    return global_retract(x, cfg);
}

// ---------------------------------------------------------------- Drinfeld comparison

Val drinfeld_norm(const GrassPoint& x, const std::vector<PR>& a)
{
    if (x.d() != 1) throw InvalidArgument("drinfeld_norm needs d = 1");
    if (static_cast<int>(a.size()) != x.n()) throw InvalidArgument("covector has wrong length");
    const auto& row = x.matrix()[0];
    PR acc = PR::zero(x.field());
    for (std::size_t i = 0; i < a.size(); ++i) acc = acc + a[i] * row[i];
    return acc.valuation();
}

std::vector<std::vector<PR>> drinfeld_basis_sample(const FieldCtx* base, int n)
{
    std::vector<std::vector<PR>> out;
    auto zero = [&] { return std::vector<PR>(static_cast<std::size_t>(n), PR::zero(base)); };
    for (int i = 0; i < n; ++i) {
        auto a = zero();
        a[i] = PR::one(base);
        out.push_back(a);
    }
    PR t = PR::monomial(base, 1, Q(1));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto a = zero();
            a[i] = PR::one(base);
            a[j] = PR::one(base);
            out.push_back(a);
            a[j] = t;
            out.push_back(a);
        }
    return out;
}

std::vector<std::vector<PR>> random_covectors(const FieldCtx* base, int n, int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<std::vector<PR>> out;
    while (static_cast<int>(out.size()) < count) {
        std::vector<PR> a;
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            if (rng() % 4 == 0) {
                a.push_back(PR::zero(base));
                continue;
            }
            std::vector<std::uint32_t> coeffs(3);
            for (auto& c : coeffs) c = static_cast<std::uint32_t>(rng() % base->q());
            if (coeffs[0] == 0) coeffs[0] = 1;
            int shift = static_cast<int>(rng() % 5) - 2;
            a.push_back(PR(base, 1, Poly(base, coeffs), Poly::constant(base, 1)) * PR::monomial(base, 1, Q(shift)));
            nonzero = true;
        }
        if (nonzero) out.push_back(a);
    }
    return out;
}

bool verify_drinfeld(const GrassPoint& x, int sample_size, std::uint64_t seed, const RetractionConfig& cfg)
{
    if (x.d() != 1) throw InvalidArgument("verify_drinfeld needs d = 1");
    const FieldCtx* base = cfg.base ? cfg.base : field(x.field()->p(), 1);
    BuildingPoint z = global_retract(x, cfg);
    auto sample = drinfeld_basis_sample(base, x.n());
    auto extra = random_covectors(base, x.n(), sample_size, seed);
    sample.insert(sample.end(), extra.begin(), extra.end());
    std::optional<Q> offset;
    for (const auto& a : sample) {
        Val lhs = drinfeld_norm(x, a);
        Val rhs = norm_eval(z, a);
        if (lhs.is_inf() || rhs.is_inf()) {
            if (lhs.is_inf() != rhs.is_inf()) return false;
            continue;
        }
        Q k = lhs.value() - rhs.value();
        if (offset && *offset != k) return false;
        offset = k;
    }
    return true;
}

// ---------------------------------------------------------------- degenerations

Degeneration degenerate_family(const std::vector<GrassPoint>& blocks, int N, const HodgeDatum& h,
                               const RetractionConfig& cfg)
{
    if (N < 0) throw InvalidArgument("N must be non-negative");
    int n = 0, d = 0;
    for (const auto& b : blocks) {
        n += b.n();
        d += b.d();
        if (std::gcd(b.d(), b.n()) != 1) throw InvalidArgument("each block needs gcd(d_i, n_i) = 1");
    }
    if (n != h.n || d != h.d) throw InvalidArgument("blocks do not match the Hodge datum");
    auto hn = hn_of_block_point(blocks);

    const GrassPoint generic = gauss_surrogate(QVec(static_cast<std::size_t>(n), Q(0)), h, hn.assembled.field()->p());
    const FieldCtx* ctx = join_fields(hn.assembled.field(), generic.field());
    PR tN = PR::monomial(ctx, 1, Q(N));
    Matrix rows = hn.assembled.matrix();
    std::vector<int> row_block, col_block;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        row_block.insert(row_block.end(), static_cast<std::size_t>(blocks[k].d()), static_cast<int>(k));
        col_block.insert(col_block.end(), static_cast<std::size_t>(blocks[k].n()), static_cast<int>(k));
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j) {
            rows[i][j] = rows[i][j].with_ctx(ctx);
            if (row_block[i] != col_block[j]) rows[i][j] = rows[i][j] + tN * generic.matrix()[i][j].with_ctx(ctx);
        }
    GrassPoint x(rows, n, ctx);
    return Degeneration{x, normal_form(global_retract(x, cfg)), hn.newton};
}

}  // namespace bt
