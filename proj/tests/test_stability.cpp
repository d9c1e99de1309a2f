#include "bt/lp.hpp"
#include "bt/retract.hpp"
#include "bt/stability.hpp"
#include "bt/verify.hpp"

#include <doctest.h>

#include <numeric>
#include <optional>
#include <set>

using namespace bt;

namespace {

GrassPoint row_point(const std::vector<std::string>& entries, const FieldCtx* F)
{
    Row r;
    for (const auto& s : entries) r.push_back(parse_scalar(s, F));
    return GrassPoint({r}, static_cast<int>(entries.size()));
}

// unique solution of the (possibly overdetermined) system, nullopt when
// singular or inconsistent
std::optional<QVec> solve_unique(std::vector<QVec> a, QVec b, std::size_t k)
{
    std::size_t rows = a.size(), r = 0;
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < k && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) return std::nullopt;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Q f = a[i][c] / a[r][c];
            for (std::size_t j = 0; j < k; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        piv.push_back(c);
        ++r;
    }
    if (r < k) return std::nullopt;
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    QVec x(k);
    for (std::size_t i = 0; i < k; ++i) x[i] = b[i] / a[i][piv[i]];
    return x;
}

// Hull position by enumerating basic barycentric solutions: the union of
// their supports is S exactly when the origin is in the relative interior.
HullPosition hull_oracle(const std::vector<Subset>& S, int d, int n)
{
    std::vector<QVec> w;
    for (const auto& I : S) w.push_back(weight_vector(I, d, n));
    std::size_t m = S.size();
    std::set<std::size_t> covered;
    bool found = false;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::size_t k = static_cast<std::size_t>(__builtin_popcount(mask));
        if (k > static_cast<std::size_t>(n)) continue;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1u) idx.push_back(i);
        std::vector<QVec> A(static_cast<std::size_t>(n) + 1, QVec(k, Q(0)));
        QVec b(static_cast<std::size_t>(n) + 1, Q(0));
        for (std::size_t j = 0; j < k; ++j) {
            for (int c = 0; c < n; ++c) A[static_cast<std::size_t>(c)][j] = w[idx[j]][static_cast<std::size_t>(c)];
            A[static_cast<std::size_t>(n)][j] = 1;
        }
        b[static_cast<std::size_t>(n)] = 1;
        auto c = solve_unique(A, b, k);
        if (!c) continue;
        bool nonneg = true;
        for (const auto& v : *c) nonneg = nonneg && v >= 0;
        if (!nonneg) continue;
        found = true;
        for (std::size_t j = 0; j < k; ++j)
            if ((*c)[j] > 0) covered.insert(idx[j]);
    }
    if (!found) return HullPosition::Exterior;
    if (covered.size() == m && lp::rank(w) == n - 1) return HullPosition::Interior;
    return HullPosition::Boundary;
}

ResidualSupport support_of(int d, int n, std::vector<Subset> S)
{
    ResidualSupport r;
    r.d = d;
    r.n = n;
    r.subsets = std::move(S);
    r.u = QVec(static_cast<std::size_t>(n), Q(0));
    return r;
}

}  // namespace

TEST_CASE("residual support examples")
{
    const FieldCtx* F = field(2);
    auto sur = gauss_surrogate({Q(1), make_q(1, 2), Q(0), Q(-1)}, HodgeDatum(4, 2));
    auto full = residual_support(trop_pluecker(sur), {Q(1), make_q(1, 2), Q(0), Q(-1)});
    CHECK(full.subsets.size() == 6);

    auto tp = trop_pluecker(row_point({"1", "t^3"}, F));
    CHECK(residual_support(tp, {Q(0), Q(0)}).subsets == std::vector<Subset>{{0}});
    CHECK(residual_support(tp, {make_q(-3, 2), make_q(3, 2)}).subsets == std::vector<Subset>{{0}, {1}});
}

TEST_CASE("hull position examples")
{
    HodgeDatum h42(4, 2), h21(2, 1), h31(3, 1);
    CHECK(hull_position(support_of(2, 4, subset_table(4, 2).subsets), h42) == HullPosition::Interior);
    CHECK(hull_position(support_of(1, 2, {{0}}), h21) == HullPosition::Exterior);
    // the origin is not a convex combination of e1 - 1/3 and e2 - 1/3
    CHECK(hull_position(support_of(1, 3, {{0}, {1}}), h31) == HullPosition::Exterior);
    CHECK(hull_position(support_of(2, 4, {{0, 2}, {1, 3}}), h42) == HullPosition::Boundary);
    CHECK(hull_position(support_of(1, 3, {{0}, {1}, {2}}), h31) == HullPosition::Interior);

    auto cert = hull_certificate({{0, 2}, {0, 3}, {1, 2}, {1, 3}}, 2, 4);
    CHECK(cert.position == HullPosition::Boundary);
    CHECK(cert.span_rank == 2);
    Q total = std::accumulate(cert.coefficients.begin(), cert.coefficients.end(), Q(0));
    CHECK(total == 1);
}

TEST_CASE("hull position agrees with the barycentric oracle")
{
    Rng rng(77);
    for (int it = 0; it < 600; ++it) {
        int n = 2 + it % 4, d = 1 + static_cast<int>(rand_range(rng, 0, n - 2));
        const auto& all = subset_table(n, d).subsets;
        std::vector<Subset> S;
        for (const auto& I : all)
            if (rand_range(rng, 0, 2) > 0) S.push_back(I);
        if (S.empty() || S.size() > 12) continue;
        CAPTURE(it);
        auto got = hull_certificate(S, d, n);
        CHECK(got.position == hull_oracle(S, d, n));
        if (got.position != HullPosition::Exterior) {
            QVec acc(static_cast<std::size_t>(n), Q(0));
            for (std::size_t k = 0; k < S.size(); ++k) {
                auto w = weight_vector(S[k], d, n);
                CHECK(got.coefficients[k] >= 0);
                for (int c = 0; c < n; ++c) acc[static_cast<std::size_t>(c)] += got.coefficients[k] * w[static_cast<std::size_t>(c)];
            }
            CHECK(acc == QVec(static_cast<std::size_t>(n), Q(0)));
        }
    }
}

TEST_CASE("torus stability examples")
{
    const FieldCtx* F = field(2);
    QVec u{Q(1), make_q(1, 3), Q(0), make_q(-2, 3), Q(0)};
    HodgeDatum h52(5, 2);
    CHECK(torus_stability(gauss_surrogate(u, h52), identity_matrix(F, 5), u, h52) == TorusStability::Stable);

    auto e1 = row_point({"1", "0", "0"}, F);
    CHECK(torus_stability(e1, identity_matrix(F, 3), QVec(3, Q(0)), HodgeDatum(3, 1)) == TorusStability::Unstable);

    auto b = gauss_surrogate({Q(0), Q(0)}, HodgeDatum(2, 1));
    auto block = assemble_blocks({b, b});
    CHECK(torus_stability(block, identity_matrix(F, 4), QVec(4, Q(0)), HodgeDatum(4, 2)) ==
          TorusStability::StrictlySemistable);
}

TEST_CASE("non-coprime sweeps do produce boundary supports")
{
    // the hull check must be able to see Boundary; for (2,4) it is common
    Rng rng(5);
    int boundary = 0;
    for (int it = 0; it < 300; ++it) {
        auto x = random_point(rng, field(2, 2), 2, 4);
        if (!x) continue;
        auto S = residual_support(trop_pluecker(*x), QVec(4, Q(0)));
        if (hull_certificate(S.subsets, 2, 4).position == HullPosition::Boundary) ++boundary;
    }
    CHECK(boundary > 0);
}

TEST_CASE("bounded destabilizer search")
{
    const FieldCtx* F = field(2);
    for (auto rows : std::vector<std::vector<std::vector<std::string>>>{
             {{"1", "t"}}, {{"1", "0", "t", "0"}}, {{"1", "0", "1"}, {"0", "1", "t+1"}}}) {
        Matrix m;
        for (const auto& r : rows) {
            Row row;
            for (const auto& s : r) row.push_back(parse_scalar(s, F));
            m.push_back(row);
        }
        int n = static_cast<int>(rows[0].size()), d = static_cast<int>(rows.size());
        GrassPoint x(m, n);
        auto D = find_destabilizer_bounded(x, 1);
        REQUIRE(D);
        CHECK(D->dim == d);
        CHECK(D->intersection == d);
        CHECK(D->slope == Q(1) - make_q(d, n));
        Matrix stacked = m;
        for (const auto& r : D->basis) stacked.push_back(r);
        CHECK(rank(stacked) == d);
    }

    auto sur = gauss_surrogate({Q(0), make_q(1, 2), make_q(3, 2)}, HodgeDatum(3, 1));
    CHECK_FALSE(find_destabilizer_bounded(sur, 1));
    auto sur2 = gauss_surrogate({Q(0), make_q(1, 2), Q(1), make_q(-1, 2)}, HodgeDatum(4, 2));
    CHECK_FALSE(find_destabilizer_bounded(sur2, 1));

    auto drin = row_point({"1", "t^(1/2)"}, F);
    for (int bound = 0; bound <= 2; ++bound) CHECK_FALSE(find_destabilizer_bounded(drin, bound));

    // contained in a rational hyperplane, hence unstable
    auto hyper = row_point({"1", "1", "t^(1/2)"}, F);
    auto D = find_destabilizer_bounded(hyper, 1);
    REQUIRE(D);
    CHECK(D->slope > 0);

    CHECK_THROWS_AS(find_destabilizer_bounded(gauss_surrogate(QVec(6, Q(0)), HodgeDatum(6, 1)), 1), ComplexityGuard);
}

TEST_CASE("HN polygon of block points")
{
    const FieldCtx* F = field(2);
    GrassPoint one({{PR::one(F)}}, 1);
    auto b14 = gauss_surrogate(QVec(4, Q(0)), HodgeDatum(4, 1));
    CHECK(hn_of_block_point({one, b14}).newton.str() == "(1,1/4,1/4,1/4,1/4)");

    const FieldCtx* K = field(2, 3);
    auto b12 = row_point({"1", "w"}, K);
    auto b13 = row_point({"1", "w", "w^2"}, K);
    auto hn = hn_of_block_point({b12, b13});
    CHECK(hn.newton.str() == "(1/2,1/2,1/3,1/3,1/3)");
    CHECK(hn.assembled.d() == 2);
    CHECK(hn.assembled.n() == 5);
    CHECK(hn.levi.composition == std::vector<int>{2, 3});

    auto whole = gauss_surrogate(QVec(5, Q(0)), HodgeDatum(5, 2));
    auto single = hn_of_block_point({whole});
    CHECK(is_basic(single.newton));

    CHECK_THROWS_AS(hn_of_block_point({b13, b12}), InvalidArgument);
    CHECK_THROWS_AS(hn_of_block_point({row_point({"1", "0"}, F), b13}), InvalidArgument);
}
