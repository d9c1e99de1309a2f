#include "bt/verify.hpp"

#include "bt/errors.hpp"

#include <algorithm>
#include <numeric>

namespace bt {

long rand_range(Rng& rng, long lo, long hi)
{
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<std::pair<int, int>> coprime_pairs(int max_n)
{
    std::vector<std::pair<int, int>> out;
    for (int n = 2; n <= max_n; ++n)
        for (int d = 1; d < n; ++d)
            if (std::gcd(d, n) == 1) out.emplace_back(d, n);
    return out;
}

QVec random_coords(Rng& rng, int n, int m, int span)
{
    QVec u;
    for (int i = 0; i < n; ++i) u.push_back(Q(rand_range(rng, -span * m, span * m), m));
    return u;
}

namespace {

PR random_poly(Rng& rng, const FieldCtx* ctx, int degree, bool unit)
{
    std::vector<std::uint32_t> c(static_cast<std::size_t>(degree + 1));
    for (auto& x : c) x = static_cast<std::uint32_t>(rng() % ctx->q());
    if (unit && c[0] == 0) c[0] = 1;
    return PR(ctx, 1, Poly(ctx, c), Poly::constant(ctx, 1));
}

std::uint32_t random_unit(Rng& rng, const FieldCtx* ctx)
{
    return static_cast<std::uint32_t>(1 + rng() % (ctx->q() - 1));
}

json coords_json(const QVec& u)
{
    json j = json::array();
    for (const auto& x : u) j.push_back(to_string(x));
    return j;
}

json matrix_json(const Matrix& g)
{
    json rows = json::array();
    for (const auto& r : g) {
        json row = json::array();
        for (const auto& x : r) row.push_back(x.str());
        rows.push_back(row);
    }
    return rows;
}

void add(SuiteReport& r, std::string name, bool ok, json witness = nullptr)
{
    r.checks.push_back({std::move(name), ok, ok ? json(nullptr) : std::move(witness)});
}

// runs fn and records an exception as a failed check
template <class Fn>
void guarded(SuiteReport& r, const std::string& name, json witness, Fn fn)
{
    try {
        fn(witness);
    } catch (const std::exception& e) {
        witness["error"] = e.what();
        add(r, name, false, witness);
    }
}

std::string pair_name(int d, int n) { return "d=" + std::to_string(d) + " n=" + std::to_string(n); }

}  // namespace

Matrix random_frame(Rng& rng, const FieldCtx* base, int n, bool dense)
{
    while (true) {
        Matrix g(static_cast<std::size_t>(n), Row(static_cast<std::size_t>(n), PR::zero(base)));
        if (dense) {
            for (auto& row : g)
                for (auto& x : row) {
                    if (rng() % 3 == 0) continue;
                    x = random_poly(rng, base, 1, false) * PR::monomial(base, 1, Q(rand_range(rng, -1, 1)));
                }
        } else {
            std::vector<int> perm(static_cast<std::size_t>(n));
            std::iota(perm.begin(), perm.end(), 0);
            for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(i + 1))]);
            for (int j = 0; j < n; ++j)
                g[perm[j]][j] = PR::monomial(base, random_unit(rng, base), Q(rand_range(rng, -2, 2)));
        }
        if (!det(g).is_zero()) return g;
    }
}

GrassPoint perturbed_surrogate(Rng& rng, const QVec& u, const Matrix& g, const HodgeDatum& h)
{
    GrassPoint base = gauss_surrogate(u, h);
    const FieldCtx* ctx = base.field();
    std::int64_t m = common_denominator(u);
    Matrix rows = base.matrix();
    for (int i = 0; i < h.d; ++i)
        for (int j = 0; j < h.n; ++j) {
            if (rng() % 2) continue;
            Q e = u[static_cast<std::size_t>(j)] + Q(rand_range(rng, 1, 2 * m), m);
            rows[i][j] = rows[i][j] + PR::monomial(ctx, static_cast<std::uint32_t>(rng() % ctx->q()), e, m);
        }
    return GrassPoint(mat_mul(rows, inverse(g)), h.n, ctx);
}

std::optional<GrassPoint> random_point(Rng& rng, const FieldCtx* ctx, int d, int n)
{
    Matrix rows(static_cast<std::size_t>(d), Row(static_cast<std::size_t>(n), PR::zero(ctx)));
    for (auto& row : rows)
        for (auto& x : row) {
            if (rng() % 6 == 0) continue;
            x = PR::monomial(ctx, random_unit(rng, ctx), Q(rand_range(rng, 0, 3)));
            if (rng() % 2) x = x + PR::monomial(ctx, random_unit(rng, ctx), Q(rand_range(rng, 1, 4)));
        }
    if (rank(rows) < d) return std::nullopt;
    return GrassPoint(rows, n, ctx);
}

bool SuiteReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

json SuiteReport::to_json() const
{
    json j;
    j["suite"] = suite;
    j["seed"] = seed;
    json cs = json::array();
    for (const auto& c : checks) {
        json e;
        e["name"] = c.name;
        e["status"] = c.passed ? "pass" : "fail";
        if (!c.passed && !c.witness.is_null()) e["witness"] = c.witness;
        cs.push_back(e);
    }
    j["checks"] = cs;
    return j;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"counts", "section", "drinfeld", "equivariance",
                                                "compat", "basechange", "hull", "matroid"};
    return names;
}

// ---------------------------------------------------------------- counts

void suite_counts(SuiteReport& r)
{
    for (auto [d, n] : coprime_pairs(9)) {
        long got = static_cast<long>(enumerate_sr(HodgeDatum(n, d)).size());
        add(r, "sr_count " + pair_name(d, n), got == d * (n - d) + 1, json{{"expected", d * (n - d) + 1}, {"got", got}});
    }

    HodgeDatum h52(5, 2);
    auto set52 = enumerate_kottwitz(h52);
    std::vector<NewtonPoint> indecomposable;
    for (const auto& v : set52)
        if (!is_basic(v) && !is_hn_decomposable(v, h52)) indecomposable.push_back(v);
    NewtonPoint target({Q(1, 2), Q(1, 2), Q(1, 3), Q(1, 3), Q(1, 3)});
    add(r, "kottwitz d=2 n=5", set52.size() == 8 && indecomposable.size() == 1 && indecomposable[0] == target,
        json{{"size", set52.size()}, {"indecomposable", indecomposable.size()}});

    for (int n = 2; n <= 9; ++n)
        for (int d = 1; d < n; ++d) {
            if (!(d == 1 || d == n - 1 || n <= 4)) continue;
            HodgeDatum h(n, d);
            add(r, "fully_hn " + pair_name(d, n), enumerate_sr(h) == enumerate_kottwitz(h));
        }

    HodgeDatum h73(7, 3);
    auto fig = NewtonPoint::from_vertices({{0, 0}, {1, 1}, {3, 2}, {6, 3}, {7, 3}});
    add(r, "polygon_with_off_hodge_turn", is_hn_decomposable(fig, h73) && !is_strongly_regular(fig, h73),
        json{{"hn_decomposable", is_hn_decomposable(fig, h73)}, {"strongly_regular", is_strongly_regular(fig, h73)}});

    for (int n = 2; n <= 9; ++n)
        for (int d = 1; d < n; ++d) {
            HodgeDatum h(n, d);
            auto S = enumerate_kottwitz(h);
            bool ok = true;
            json witness;
            for (const auto& v : S)
                if (is_basic(v) && stratum_dim(v, h) != d * (n - d)) {
                    ok = false;
                    witness["basic_dim"] = stratum_dim(v, h);
                }
            for (auto [a, b] : hasse_edges(S))
                if (!(stratum_dim(S[a], h) > stratum_dim(S[b], h))) {
                    ok = false;
                    witness["edge"] = {S[a].str(), S[b].str()};
                }
            add(r, "stratum_dim " + pair_name(d, n), ok, witness);
        }
}

// ---------------------------------------------------------------- section

namespace {

struct SectionSample {
    std::string name;
    GrassPoint x;
    QVec u;
};

std::vector<SectionSample> section_samples(std::uint64_t seed, int count)
{
    Rng rng(seed ^ 0x5ec7105ULL);
    auto pairs = coprime_pairs(5);
    std::vector<SectionSample> out;
    for (int k = 0; k < count; ++k) {
        auto [d, n] = pairs[static_cast<std::size_t>(k) % pairs.size()];
        HodgeDatum h(n, d);
        int m = 1 + (k / static_cast<int>(pairs.size())) % 4;
        QVec u;
        int round = k / static_cast<int>(pairs.size());
        if (round == 0) {
            u.assign(static_cast<std::size_t>(n), Q(0));
        } else if (round == 1) {
            u.assign(static_cast<std::size_t>(n), Q(0));
            u[0] = Q(1, m);
        } else {
            u = random_coords(rng, n, m);
        }
        out.push_back({"section " + pair_name(d, n) + " #" + std::to_string(k), gauss_surrogate(u, h), u});
    }
    return out;
}

struct DrinfeldSample {
    std::string name;
    GrassPoint x;
    BuildingPoint expected;
};

std::vector<DrinfeldSample> drinfeld_samples(std::uint64_t seed, int count)
{
    Rng rng(seed ^ 0xd41fe1dULL);
    std::vector<DrinfeldSample> out;
    const FieldCtx* base = field(2, 1);
    for (int k = 0; k < count; ++k) {
        int n = 2 + k % 3;
        HodgeDatum h(n, 1);
        int m = 1 + rand_range(rng, 0, 3);
        QVec u = random_coords(rng, n, static_cast<int>(m));
        Matrix g = random_frame(rng, base, n, k % 2 == 1);
        GrassPoint x = perturbed_surrogate(rng, u, g, h);
        out.push_back({"drinfeld n=" + std::to_string(n) + " #" + std::to_string(k), x, make_point(g, u)});
    }
    return out;
}

}  // namespace

void suite_section(SuiteReport& r, const SuiteSizes& s)
{
    for (const auto& smp : section_samples(r.seed, s.section)) {
        json w{{"point", point_to_json(smp.x)}, {"u", coords_json(smp.u)}};
        guarded(r, smp.name, w, [&](json& witness) {
            BuildingPoint z = normal_form(global_retract(smp.x));
            bool ok = z.frame == identity_matrix(matrix_field(z.frame), smp.x.n()) && z.coords == proj0(smp.u);
            witness["got"] = building_point_to_json(z);
            add(r, smp.name, ok, witness);
        });
    }
}

void suite_drinfeld(SuiteReport& r, const SuiteSizes& s)
{
    for (const auto& smp : drinfeld_samples(r.seed, s.drinfeld)) {
        json w{{"point", point_to_json(smp.x)}};
        guarded(r, smp.name, w, [&](json& witness) {
            bool agree = verify_drinfeld(smp.x, s.drinfeld_covectors, r.seed);
            BuildingPoint z = global_retract(smp.x);
            bool located = points_equal(z, smp.expected);
            witness["agree"] = agree;
            witness["got"] = building_point_to_json(z);
            witness["expected"] = building_point_to_json(smp.expected);
            add(r, smp.name, agree && located, witness);
        });
    }
    // rational points lie on an F-rational hyperplane
    const FieldCtx* F = field(2, 1);
    GrassPoint rational({{PR::one(F), parse_scalar("t^3", F)}}, 2);
    bool raised = false;
    try {
        global_retract(rational);
    } catch (const NotStable&) {
        raised = true;
    }
    add(r, "drinfeld rational point is not stable", raised);
}

// ---------------------------------------------------------------- equivariance

void suite_equivariance(SuiteReport& r, const SuiteSizes& s)
{
    Rng rng(r.seed ^ 0xe91a7ULL);
    auto pairs = coprime_pairs(5);
    const FieldCtx* base = field(2, 1);
    for (int k = 0; k < s.equivariance; ++k) {
        auto [d, n] = pairs[static_cast<std::size_t>(k) % pairs.size()];
        HodgeDatum h(n, d);
        int m = 1 + rand_range(rng, 0, 2);
        QVec u = random_coords(rng, n, m, 2);
        Matrix g0 = random_frame(rng, base, n, false);
        GrassPoint x = perturbed_surrogate(rng, u, g0, h);
        Matrix g = random_frame(rng, base, n, k % 2 == 1);
        std::string name = "equivariance " + pair_name(d, n) + " #" + std::to_string(k);
        json w{{"point", point_to_json(x)}, {"g", matrix_json(g)}};
        guarded(r, name, w, [&](json& witness) {
            BuildingPoint lhs = global_retract(frame_change(x, g));
            BuildingPoint rhs = act(inverse(g), global_retract(x));
            witness["lhs"] = building_point_to_json(lhs);
            witness["rhs"] = building_point_to_json(rhs);
            add(r, name, points_equal(lhs, rhs), witness);
        });
    }
}

// ---------------------------------------------------------------- apartment compatibility

namespace {

// z stays in g's apartment after small moves along every root direction
bool interior_overlap(const Matrix& g, const QVec& u)
{
    const FieldCtx* ctx = matrix_field(g);
    int n = static_cast<int>(u.size());
    Q eps(1, 1000);
    if (!apartment_contains(g, standard_point(ctx, u))) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            QVec v = u;
            v[i] += eps;
            v[j] -= eps;
            if (!apartment_contains(g, standard_point(ctx, v))) return false;
        }
    return true;
}

}  // namespace

void suite_compat(SuiteReport& r, const SuiteSizes& s)
{
    Rng rng(r.seed ^ 0xc0a7ULL);
    auto pairs = coprime_pairs(5);
    const FieldCtx* base = field(2, 1);
    int made = 0, attempts = 0;
    while (made < s.compat && attempts < 20 * s.compat) {
        ++attempts;
        auto [d, n] = pairs[static_cast<std::size_t>(attempts) % pairs.size()];
        HodgeDatum h(n, d);
        QVec u0 = random_coords(rng, n, 1 + rand_range(rng, 0, 2), 2);
        GrassPoint x = perturbed_surrogate(rng, u0, random_frame(rng, base, n, true), h);
        QVec u;
        try {
            u = apartment_retract(trop_pluecker(x));
        } catch (const Error&) {
            continue;
        }
        // integral unipotent moves that keep z inside the new apartment, then a column permutation
        Matrix g = identity_matrix(base, n);
        int moves = static_cast<int>(rand_range(rng, 1, 3));
        for (int k = 0; k < moves; ++k) {
            int i = static_cast<int>(rand_range(rng, 0, n - 1));
            int j = static_cast<int>(rand_range(rng, 0, n - 2));
            if (j >= i) ++j;
            Z lo = floor_q(u[static_cast<std::size_t>(j)] - u[static_cast<std::size_t>(i)]) + 1;
            long e = std::max<long>(0, lo.convert_to<long>()) + rand_range(rng, 0, 1);
            PR alpha = random_poly(rng, base, 1, true) * PR::monomial(base, 1, Q(e));
            g = mat_mul(g, elementary_matrix(base, n, i, j, alpha));
        }
        if (rng() % 2) {
            std::vector<int> perm(static_cast<std::size_t>(n));
            std::iota(perm.begin(), perm.end(), 0);
            std::swap(perm[0], perm[static_cast<std::size_t>(rand_range(rng, 0, n - 1))]);
            g = mat_mul(g, permutation_matrix(base, perm));
        }
        if (!interior_overlap(g, u)) continue;
        ++made;
        std::string name = "compat " + pair_name(d, n) + " #" + std::to_string(made);
        json w{{"point", point_to_json(x)}, {"g", matrix_json(g)}, {"z", coords_json(u)}};
        guarded(r, name, w, [&](json& witness) {
            BuildingPoint z = standard_point(base, u);
            BuildingPoint other{g, apartment_retract(trop_pluecker(frame_change(x, g)))};
            witness["other"] = building_point_to_json(other);
            add(r, name, points_equal(z, other), witness);
        });
    }
    add(r, "compat sample size", made >= s.compat, json{{"made", made}});
}

// ---------------------------------------------------------------- base change

void suite_basechange(SuiteReport& r, const SuiteSizes& s)
{
    for (const auto& smp : section_samples(r.seed, s.section)) {
        std::string name = "basechange " + smp.name;
        json w{{"point", point_to_json(smp.x)}};
        guarded(r, name, w, [&](json& witness) {
            BuildingPoint a = global_retract(smp.x);
            BuildingPoint b = global_retract(smp.x.rescaled(2 * smp.x.ramification()));
            witness["before"] = building_point_to_json(a);
            witness["after"] = building_point_to_json(b);
            add(r, name, points_equal(a, b), witness);
        });
    }
    for (const auto& smp : drinfeld_samples(r.seed, s.drinfeld)) {
        std::string name = "basechange " + smp.name;
        json w{{"point", point_to_json(smp.x)}};
        guarded(r, name, w, [&](json& witness) {
            GrassPoint y = smp.x.rescaled(2 * smp.x.ramification());
            BuildingPoint a = global_retract(smp.x);
            BuildingPoint b = global_retract(y);
            bool agree = verify_drinfeld(y, s.drinfeld_covectors, r.seed);
            witness["before"] = building_point_to_json(a);
            witness["after"] = building_point_to_json(b);
            add(r, name, agree && points_equal(a, b), witness);
        });
    }
}

// ---------------------------------------------------------------- hull exclusion

void suite_hull(SuiteReport& r, const SuiteSizes& s)
{
    Rng rng(r.seed ^ 0x4011ULL);
    const FieldCtx* ctx = field(2, 2);
    for (auto [d, n] : coprime_pairs(s.hull_max_n)) {
        long points = 0, supports = 0, boundary = 0, interior = 0;
        json witness;
        while (points < s.hull_per_pair) {
            auto x = random_point(rng, ctx, d, n);
            if (!x) continue;
            ++points;
            auto tp = trop_pluecker(*x);
            std::vector<QVec> us{QVec(static_cast<std::size_t>(n), Q(0))};
            try {
                us.push_back(apartment_retract(tp));
            } catch (const Error&) {
            }
            for (int k = 0; k < 3; ++k) us.push_back(random_coords(rng, n, 1 + k % 2, 2));
            for (const auto& u : us) {
                auto S = residual_support(tp, u);
                auto pos = hull_position(S);
                ++supports;
                if (pos == HullPosition::Interior) ++interior;
                if (pos == HullPosition::Boundary && boundary++ == 0)
                    witness = json{{"point", point_to_json(*x)}, {"u", coords_json(u)}};
            }
        }
        add(r, "hull " + pair_name(d, n) + " (" + std::to_string(supports) + " supports, " +
                   std::to_string(interior) + " interior)",
            boundary == 0, witness);
    }
}

// ---------------------------------------------------------------- matroid axiom

void suite_matroid(SuiteReport& r, const std::function<void()>& fn)
{
    TropAudit audit;
    fn();
    add(r, "matroid exchange relations (" + std::to_string(audit.checked()) + " vectors)",
        audit.checked() > 0 && audit.violations() == 0, json{{"checked", audit.checked()}, {"violations", audit.violations()}});
}

// ---------------------------------------------------------------- dispatch

SuiteReport run_suite(const std::string& name, std::uint64_t seed, const SuiteSizes& sizes)
{
    SuiteReport r;
    r.suite = name;
    r.seed = seed;
    auto one = [&](const std::string& s) {
        if (s == "counts")
            suite_counts(r);
        else if (s == "section")
            suite_section(r, sizes);
        else if (s == "drinfeld")
            suite_drinfeld(r, sizes);
        else if (s == "equivariance")
            suite_equivariance(r, sizes);
        else if (s == "compat")
            suite_compat(r, sizes);
        else if (s == "basechange")
            suite_basechange(r, sizes);
        else if (s == "hull")
            suite_hull(r, sizes);
        else if (s == "matroid") {
            // a reduced pass over the geometric suites, audited
            SuiteSizes small = sizes;
            small.section = std::min(sizes.section, 18);
            small.drinfeld = std::min(sizes.drinfeld, 6);
            small.equivariance = std::min(sizes.equivariance, 6);
            small.compat = std::min(sizes.compat, 10);
            small.hull_per_pair = std::min(sizes.hull_per_pair, 50);
            SuiteReport scratch;
            scratch.seed = seed;
            suite_matroid(r, [&] {
                suite_section(scratch, small);
                suite_drinfeld(scratch, small);
                suite_equivariance(scratch, small);
                suite_compat(scratch, small);
                suite_hull(scratch, small);
            });
        } else
            throw InvalidArgument("unknown suite '" + s + "'");
    };
    if (name == "all") {
        one("counts");
        suite_matroid(r, [&] {
            for (const auto& s : suite_names())
                if (s != "counts" && s != "matroid") one(s);
        });
    } else {
        one(name);
    }
    return r;
}

}  // namespace bt
