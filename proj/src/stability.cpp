#include "bt/stability.hpp"

#include "bt/lp.hpp"

#include <algorithm>
#include <numeric>

namespace bt {

std::string to_string(HullPosition p)
{
    switch (p) {
    case HullPosition::Exterior: return "Exterior";
    case HullPosition::Boundary: return "Boundary";
    case HullPosition::Interior: return "Interior";
    }
    return "?";
}

std::string to_string(TorusStability s)
{
    switch (s) {
    case TorusStability::Stable: return "Stable";
    case TorusStability::StrictlySemistable: return "StrictlySemistable";
    case TorusStability::Unstable: return "Unstable";
    }
    return "?";
}

QVec weight_vector(const Subset& I, int d, int n)
{
    QVec w(static_cast<std::size_t>(n), Q(-d, n));
    for (int i : I) w[static_cast<std::size_t>(i)] += 1;
    return w;
}

ResidualSupport residual_support(const TropPlueckerVector& tp, const QVec& u)
{
    if (static_cast<int>(u.size()) != tp.n()) throw InvalidArgument("u has wrong length");
    const auto& t = tp.table();
    ResidualSupport out;
    out.d = tp.d();
    out.n = tp.n();
    out.u = u;
    Q best;
    bool have = false;
    for (std::size_t k = 0; k < t.subsets.size(); ++k) {
        const Val& v = tp.values()[k];
        if (v.is_inf()) continue;
        Q twisted = v.value();
        for (int i : t.subsets[k]) twisted -= u[static_cast<std::size_t>(i)];
        if (!have || twisted < best) {
            best = twisted;
            have = true;
            out.subsets.clear();
        }
        if (twisted == best) out.subsets.push_back(t.subsets[k]);
    }
    return out;
}

ResidualSupport residual_support(const TropPlueckerVector& tp, const QVec& u, const HodgeDatum& h)
{
    if (tp.n() != h.n || tp.d() != h.d) throw InvalidArgument("tropical vector does not match the Hodge datum");
    return residual_support(tp, u);
}

HullCertificate hull_certificate(const std::vector<Subset>& S, int d, int n)
{
    HullCertificate cert;
    if (S.empty()) return cert;
    std::size_t k = S.size();
    std::vector<QVec> weights;
    for (const auto& I : S) weights.push_back(weight_vector(I, d, n));
    cert.span_rank = lp::rank(weights);

    // lambda_I = mu_I + eps; maximize eps subject to sum lambda = 1, sum lambda w_I = 0
    lp::Problem prob(static_cast<int>(k) + 1);
    QVec total(k + 1, Q(1));
    total[k] = Q(static_cast<long>(k));
    prob.add(total, lp::Sense::EQ, Q(1));
    for (int i = 0; i + 1 < n; ++i) {
        QVec row(k + 1, Q(0));
        for (std::size_t j = 0; j < k; ++j) {
            row[j] = weights[j][static_cast<std::size_t>(i)];
            row[k] += weights[j][static_cast<std::size_t>(i)];
        }
        prob.add(row, lp::Sense::EQ, Q(0));
    }
    prob.objective[k] = 1;
    auto res = lp::solve(prob);
    if (res.status != lp::Status::Optimal) return cert;
    cert.coefficients.resize(k);
    for (std::size_t j = 0; j < k; ++j) cert.coefficients[j] = res.x[j] + res.x[k];
    bool strictly_positive = res.x[k] > 0;
    cert.position = (strictly_positive && cert.span_rank == n - 1) ? HullPosition::Interior : HullPosition::Boundary;
    return cert;
}

HullPosition hull_position(const ResidualSupport& S) { return hull_certificate(S.subsets, S.d, S.n).position; }

HullPosition hull_position(const ResidualSupport& S, const HodgeDatum& h)
{
    if (S.n != h.n || S.d != h.d) throw InvalidArgument("support does not match the Hodge datum");
    return hull_position(S);
}

namespace {

TorusStability from_hull(HullPosition p)
{
    switch (p) {
    case HullPosition::Interior: return TorusStability::Stable;
    case HullPosition::Boundary: return TorusStability::StrictlySemistable;
    default: return TorusStability::Unstable;
    }
}

}  // namespace

TorusStability torus_stability(const GrassPoint& x, const Matrix& g, const QVec& u)
{
    auto tp = trop_pluecker(frame_change(x, g));
    return from_hull(hull_position(residual_support(tp, u)));
}

TorusStability torus_stability(const GrassPoint& x, const Matrix& g, const QVec& u, const HodgeDatum& h)
{
    if (x.n() != h.n || x.d() != h.d) throw InvalidArgument("point does not match the Hodge datum");
    return torus_stability(x, g, u);
}

// ---------------------------------------------------------------- destabilizers

namespace {

// null space of a homogeneous system over a finite field, rows of uint32 coefficients
std::vector<std::vector<std::uint32_t>> nullspace(std::vector<std::vector<std::uint32_t>> A, std::size_t cols,
                                                  const FieldCtx* f)
{
    std::vector<int> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < A.size(); ++c) {
        std::size_t p = A.size();
        for (std::size_t i = r; i < A.size(); ++i)
            if (A[i][c] != 0) {
                p = i;
                break;
            }
        if (p == A.size()) continue;
        std::swap(A[p], A[r]);
        std::uint32_t inv = f->inv(A[r][c]);
        for (auto& x : A[r]) x = f->mul(x, inv);
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (i == r || A[i][c] == 0) continue;
            std::uint32_t fac = A[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                if (A[r][j] != 0) A[i][j] = f->sub(A[i][j], f->mul(fac, A[r][j]));
        }
        piv.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<std::vector<std::uint32_t>> out;
    for (std::size_t fcol = 0; fcol < cols; ++fcol) {
        if (std::find(piv.begin(), piv.end(), static_cast<int>(fcol)) != piv.end()) continue;
        std::vector<std::uint32_t> v(cols, 0);
        v[fcol] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[static_cast<std::size_t>(piv[i])] = f->neg(A[i][fcol]);
        out.push_back(v);
    }
    return out;
}

std::vector<std::uint32_t> digits_of(std::uint32_t v, const FieldCtx* f)
{
    std::vector<std::uint32_t> out(f->r());
    for (auto& d : out) {
        d = v % f->p();
        v /= f->p();
    }
    return out;
}

PR poly_entry(const std::vector<std::uint32_t>& coeffs, const FieldCtx* base)
{
    return PR(base, 1, Poly(base, coeffs), Poly::constant(base, 1));
}

}  // namespace

std::optional<Destabilizer> find_destabilizer_bounded(const GrassPoint& x, int degree_bound, const FieldCtx* base,
                                                      long budget)
{
    int n = x.n(), d = x.d();
    const FieldCtx* K = x.field();
    if (!base) base = field(K->p(), 1);
    if (join_fields(base, K) != K) throw FieldMismatch("base field must embed in the field of the point");
    if (base != K && base->r() != 1) throw InvalidArgument("base field must be the prime field or the field of the point");
    if (n > 5) throw ComplexityGuard("destabilizer search needs n <= 5");
    if (base->q() > 4) throw ComplexityGuard("destabilizer search needs q <= 4");
    if (degree_bound < 0 || degree_bound > 2) throw ComplexityGuard("destabilizer search needs degree bound <= 2");
    if (d == 0 || d == n) return std::nullopt;

    Q mu(d, n);
    auto kernel = right_kernel(x.matrix());  // U = {v : v . y = 0 for y in kernel}
    std::int64_t M = x.ramification();
    for (auto& y : kernel)
        for (auto& e : y) M = std::lcm(M, e.ramification());

    // Step A: bounded polynomial vectors lying in U, as an F_q-linear system.
    std::size_t b1 = static_cast<std::size_t>(degree_bound) + 1;
    std::size_t unknowns = b1 * static_cast<std::size_t>(n);
    std::vector<std::vector<std::uint32_t>> eqs;
    const FieldCtx* sys = base;
    bool split = (base != K);
    for (auto& y : kernel) {
        Poly D = Poly::constant(K, 1);
        std::vector<PR> ys;
        for (auto& e : y) ys.push_back(e.with_ctx(K).rescale(M));
        for (auto& e : ys) {
            Poly q, r;
            Poly::divmod(D, Poly::gcd(D, e.den()), q, r);
            D = q * e.den();
        }
        std::vector<Poly> P;
        for (auto& e : ys) {
            Poly q, r;
            Poly::divmod(D, e.den(), q, r);
            P.push_back(e.num() * q);
        }
        std::size_t maxdeg = 0;
        for (auto& p : P) maxdeg = std::max<std::size_t>(maxdeg, p.coeffs().size());
        maxdeg += static_cast<std::size_t>(degree_bound) * static_cast<std::size_t>(M) + 1;
        for (std::size_t l = 0; l < maxdeg; ++l) {
            std::vector<std::uint32_t> row(unknowns, 0);
            bool any = false;
            for (std::size_t e = 0; e < b1; ++e)
                for (int j = 0; j < n; ++j) {
                    std::size_t shift = e * static_cast<std::size_t>(M);
                    if (l < shift) continue;
                    std::uint32_t c = P[static_cast<std::size_t>(j)].coeff(l - shift);
                    row[e * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = c;
                    any = any || c != 0;
                }
            if (!any) continue;
            if (!split) {
                eqs.push_back(row);
                continue;
            }
            for (std::uint32_t digit = 0; digit < K->r(); ++digit) {
                std::vector<std::uint32_t> drow(unknowns);
                for (std::size_t c = 0; c < unknowns; ++c) drow[c] = digits_of(row[c], K)[digit];
                eqs.push_back(drow);
            }
        }
    }
    auto sols = nullspace(eqs, unknowns, sys);
    if (!sols.empty()) {
        Matrix vecs;
        for (auto& s : sols) {
            Row v;
            for (int j = 0; j < n; ++j) {
                std::vector<std::uint32_t> coeffs(b1);
                for (std::size_t e = 0; e < b1; ++e) coeffs[e] = s[e * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
                v.push_back(poly_entry(coeffs, base));
            }
            vecs.push_back(v);
        }
        Matrix W = rref(vecs);
        Destabilizer out;
        out.basis = W;
        out.dim = static_cast<int>(W.size());
        out.intersection = out.dim;
        out.slope = Q(1) - mu;
        return out;
    }

    // Step B: echelon subspaces meeting U partially.
    std::optional<Destabilizer> best;
    std::uint64_t per_entry = 1;
    for (std::size_t e = 0; e < b1; ++e) per_entry *= base->q();
    Matrix Y(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        for (auto& y : kernel) Y[static_cast<std::size_t>(j)].push_back(y[static_cast<std::size_t>(j)]);
    long spent = 0;
    for (int k = 2; k < n && spent < budget; ++k) {
        bool possible = false;
        for (int j = 1; j < k && j <= d; ++j)
            if (Q(j, k) > mu) possible = true;
        if (!possible) continue;
        const auto& pivsets = subset_table(n, k).subsets;
        for (const auto& piv : pivsets) {
            std::vector<std::pair<int, int>> free_pos;
            for (int r = 0; r < k; ++r)
                for (int c = piv[static_cast<std::size_t>(r)] + 1; c < n; ++c)
                    if (std::find(piv.begin(), piv.end(), c) == piv.end()) free_pos.emplace_back(r, c);
            std::vector<std::uint64_t> counter(free_pos.size(), 0);
            while (spent < budget) {
                ++spent;
                Matrix W(static_cast<std::size_t>(k), Row(static_cast<std::size_t>(n), PR::zero(base)));
                for (int r = 0; r < k; ++r) W[r][piv[static_cast<std::size_t>(r)]] = PR::one(base);
                for (std::size_t f = 0; f < free_pos.size(); ++f) {
                    std::vector<std::uint32_t> coeffs(b1);
                    std::uint64_t v = counter[f];
                    for (auto& c : coeffs) {
                        c = static_cast<std::uint32_t>(v % base->q());
                        v /= base->q();
                    }
                    W[free_pos[f].first][free_pos[f].second] = poly_entry(coeffs, base);
                }
                int inter = k - rank(mat_mul(W, Y));
                Q slope = (Q(inter) - mu * k) / k;
                if (slope > 0 && (!best || slope > best->slope)) {
                    best = Destabilizer{W, k, inter, slope};
                }
                std::size_t f = 0;
                while (f < counter.size() && ++counter[f] == per_entry) counter[f++] = 0;
                if (f == counter.size()) break;
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------- block points

GrassPoint assemble_blocks(const std::vector<GrassPoint>& blocks)
{
    if (blocks.empty()) throw InvalidArgument("no blocks");
    int n = 0;
    const FieldCtx* ctx = blocks[0].field();
    for (const auto& b : blocks) {
        n += b.n();
        ctx = join_fields(ctx, b.field());
    }
    Matrix rows;
    int offset = 0;
    for (const auto& b : blocks) {
        for (const auto& r : b.matrix()) {
            Row row(static_cast<std::size_t>(n), PR::zero(ctx));
            for (int j = 0; j < b.n(); ++j) row[static_cast<std::size_t>(offset + j)] = r[static_cast<std::size_t>(j)];
            rows.push_back(row);
        }
        offset += b.n();
    }
    return GrassPoint(rows, n, ctx);
}

BlockHN hn_of_block_point(const std::vector<GrassPoint>& blocks)
{
    if (blocks.empty()) throw InvalidArgument("no blocks");
    LeviDatum L;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        L.composition.push_back(b.n());
        L.distribution.push_back(b.d());
        if (i > 0 && !(Q(b.d(), b.n()) < Q(blocks[i - 1].d(), blocks[i - 1].n())))
            throw InvalidArgument("block slopes must be strictly decreasing");
        QVec zero(static_cast<std::size_t>(b.n()), Q(0));
        if (torus_stability(b, identity_matrix(b.field(), b.n()), zero) != TorusStability::Stable)
            throw InvalidArgument("block " + std::to_string(i + 1) + " is not torus-stable at the origin");
    }
    BlockHN out;
    out.levi = L;
    out.newton = levi_pushforward(L);
    out.assembled = assemble_blocks(blocks);
    return out;
}

}  // namespace bt
