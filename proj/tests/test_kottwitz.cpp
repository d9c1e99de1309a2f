#include "bt/kottwitz.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

using namespace bt;

namespace {

NewtonPoint NP(std::initializer_list<std::pair<long, long>> s)
{
    QVec v;
    for (auto [a, b] : s) v.push_back(make_q(a, b));
    return NewtonPoint(v);
}

// All concave polygons (0,0) -> (n,d) with integral breakpoints, weakly below
// the Hodge polygon: choose the breakpoint abscissae and their heights freely,
// keep strictly decreasing slopes.
std::set<QVec> brute_force_kottwitz(int n, int d)
{
    std::set<QVec> out;
    for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<int> xs{0};
        for (int x = 1; x < n; ++x)
            if (mask & (1u << (x - 1))) xs.push_back(x);
        xs.push_back(n);
        int k = static_cast<int>(xs.size()) - 2;
        std::vector<int> ys(xs.size(), 0);
        ys.back() = d;
        long combos = 1;
        for (int i = 0; i < k; ++i) combos *= (d + 1);
        for (long c = 0; c < combos; ++c) {
            long cc = c;
            for (int i = 1; i <= k; ++i) {
                ys[static_cast<std::size_t>(i)] = static_cast<int>(cc % (d + 1));
                cc /= (d + 1);
            }
            QVec slopes;
            bool ok = true;
            Q prev = Q(1000);
            for (std::size_t i = 0; i + 1 < xs.size() && ok; ++i) {
                Q s = make_q(ys[i + 1] - ys[i], xs[i + 1] - xs[i]);
                if (!(s < prev)) ok = false;
                prev = s;
                for (int j = xs[i]; j < xs[i + 1]; ++j) slopes.push_back(s);
            }
            if (!ok) continue;
            Q acc = 0;
            for (int x = 1; x <= n && ok; ++x) {
                acc += slopes[static_cast<std::size_t>(x - 1)];
                if (acc > Q(std::min(x, d))) ok = false;
            }
            if (ok) out.insert(slopes);
        }
    }
    return out;
}

int hodge_at(int x, int d) { return std::min(x, d); }

bool turning_on_hodge_all(const NewtonPoint& v, int d, bool any)
{
    bool all = true, some = false;
    Q acc = 0;
    for (int x = 1; x < v.n(); ++x) {
        acc += v.slopes()[static_cast<std::size_t>(x - 1)];
        if (v.slopes()[static_cast<std::size_t>(x - 1)] == v.slopes()[static_cast<std::size_t>(x)]) continue;
        bool on = acc == Q(hodge_at(x, d));
        all = all && on;
        some = some || on;
    }
    return any ? some : all;
}

long dim_oracle(const NewtonPoint& v, int d)
{
    Q acc = 0, area = 0;
    for (int x = 1; x < v.n(); ++x) {
        acc += v.slopes()[static_cast<std::size_t>(x - 1)];
        area += Q(hodge_at(x, d)) - acc;
    }
    area *= 2;
    REQUIRE(is_integer(area));
    return numerator(area).convert_to<long>();
}

}  // namespace

TEST_CASE("hodge polygon and order examples")
{
    CHECK(hodge_polygon(HodgeDatum(2, 1)) == NP({{1, 1}, {0, 1}}));
    CHECK(hodge_polygon(HodgeDatum(5, 2)) == NP({{1, 1}, {1, 1}, {0, 1}, {0, 1}, {0, 1}}));
    CHECK(hodge_polygon(HodgeDatum(7, 3)).str() == "(1,1,1,0,0,0,0)");

    NewtonPoint b = NP({{1, 2}, {1, 2}}), m = NP({{1, 1}, {0, 1}});
    CHECK(leq(b, m));
    CHECK(leq(m, m));
    CHECK_FALSE(leq(m, b));
    CHECK_THROWS(HodgeDatum(3, 4));
    CHECK_THROWS(NewtonPoint(QVec{Q(0), Q(1)}));
}

TEST_CASE("enumeration examples")
{
    auto S2 = enumerate_kottwitz(HodgeDatum(2, 1));
    CHECK(S2.size() == 2);
    auto S3 = enumerate_kottwitz(HodgeDatum(3, 1));
    REQUIRE(S3.size() == 3);
    std::set<std::string> names;
    for (const auto& v : S3) names.insert(v.str());
    CHECK(names == std::set<std::string>{"(1,0,0)", "(1/2,1/2,0)", "(1/3,1/3,1/3)"});

    auto S52 = enumerate_kottwitz(HodgeDatum(5, 2));
    CHECK(S52.size() == 8);
    CHECK(std::count(S52.begin(), S52.end(), NP({{1, 2}, {1, 2}, {1, 3}, {1, 3}, {1, 3}})) == 1);
}

TEST_CASE("enumeration agrees with brute force for n <= 8")
{
    for (int n = 2; n <= 8; ++n)
        for (int d = 1; d < n; ++d) {
            CAPTURE(n);
            CAPTURE(d);
            std::set<QVec> got;
            for (const auto& v : enumerate_kottwitz(HodgeDatum(n, d))) got.insert(v.slopes());
            CHECK(got == brute_force_kottwitz(n, d));
        }
}

TEST_CASE("classification examples")
{
    HodgeDatum h52(5, 2);
    CHECK(is_basic(NP({{1, 2}, {1, 2}})));
    CHECK_FALSE(is_basic(NP({{1, 1}, {0, 1}})));
    NewtonPoint basic5 = NP({{2, 5}, {2, 5}, {2, 5}, {2, 5}, {2, 5}});
    CHECK(is_basic(basic5));

    CHECK(is_hn_decomposable(NP({{1, 1}, {1, 2}, {1, 2}, {0, 1}, {0, 1}}), h52));
    NewtonPoint odd = NP({{1, 2}, {1, 2}, {1, 3}, {1, 3}, {1, 3}});
    CHECK_FALSE(is_hn_decomposable(odd, h52));
    CHECK_FALSE(is_hn_decomposable(basic5, h52));

    CHECK(is_strongly_regular(NP({{1, 1}, {1, 3}, {1, 3}, {1, 3}, {0, 1}}), h52));
    CHECK_FALSE(is_strongly_regular(odd, h52));
    CHECK(is_strongly_regular(basic5, h52));

    HodgeDatum h73(7, 3);
    NewtonPoint fig = NewtonPoint::from_vertices({{0, 0}, {1, 1}, {3, 2}, {6, 3}, {7, 3}});
    CHECK(fig.str() == "(1,1/2,1/2,1/3,1/3,1/3,0)");
    CHECK(is_hn_decomposable(fig, h73));
    CHECK_FALSE(is_strongly_regular(fig, h73));
}

TEST_CASE("classification agrees with the polygon oracle")
{
    for (int n = 2; n <= 9; ++n)
        for (int d = 1; d < n; ++d) {
            HodgeDatum h(n, d);
            for (const auto& v : enumerate_kottwitz(h)) {
                CAPTURE(v.str());
                bool basic = std::all_of(v.slopes().begin(), v.slopes().end(),
                                         [&](const Q& s) { return s == v.slopes().front(); });
                CHECK(is_basic(v) == basic);
                CHECK(is_hn_decomposable(v, h) == (!basic && turning_on_hodge_all(v, d, true)));
                CHECK(is_strongly_regular(v, h) == turning_on_hodge_all(v, d, false));
                CHECK(stratum_dim(v, h) == dim_oracle(v, d));
            }
        }
}

TEST_CASE("strongly regular counts and the degenerate cases")
{
    CHECK(enumerate_sr(HodgeDatum(5, 2)).size() == 7);
    CHECK(enumerate_sr(HodgeDatum(2, 1)).size() == 2);
    for (int n = 2; n <= 9; ++n)
        for (int d = 1; d < n; ++d) {
            HodgeDatum h(n, d);
            if (std::gcd(n, d) == 1) CHECK(enumerate_sr(h).size() == static_cast<std::size_t>(d * (n - d) + 1));
            if (d == 1 || d == n - 1 || n <= 4) CHECK(enumerate_sr(h) == enumerate_kottwitz(h));
            // strongly regular and non-basic implies HN-decomposable
            for (const auto& v : enumerate_sr(h))
                if (!is_basic(v)) CHECK(is_hn_decomposable(v, h));
        }
}

TEST_CASE("levi pushforward")
{
    CHECK(levi_pushforward({{2, 3}, {2, 0}}) == NP({{1, 1}, {1, 1}, {0, 1}, {0, 1}, {0, 1}}));
    CHECK(levi_pushforward({{1, 4}, {1, 1}}) == NP({{1, 1}, {1, 4}, {1, 4}, {1, 4}, {1, 4}}));
    NewtonPoint odd = levi_pushforward({{2, 3}, {1, 1}});
    CHECK(odd == NP({{1, 2}, {1, 2}, {1, 3}, {1, 3}, {1, 3}}));
    CHECK_FALSE(is_strongly_regular(odd, HodgeDatum(5, 2)));
    CHECK_THROWS(levi_pushforward({{2, 3}, {3, 0}}));
    CHECK_THROWS(levi_pushforward({{2, 3}, {1}}));
}

TEST_CASE("stratum dimensions")
{
    HodgeDatum h(5, 2);
    auto S = enumerate_kottwitz(h);
    std::map<std::string, long> dims;
    for (const auto& v : S) dims[v.str()] = stratum_dim(v, h);
    CHECK(dims["(2/5,2/5,2/5,2/5,2/5)"] == 6);
    CHECK(dims["(1,1,0,0,0)"] == 0);
    long mid = dims["(1,1/2,1/2,0,0)"];
    CHECK(mid > 0);
    CHECK(mid < 6);
    // frozen from the area formula
    CHECK(dims == std::map<std::string, long>{{"(1,1,0,0,0)", 0},
                                              {"(1,1/2,1/2,0,0)", 1},
                                              {"(1,1/3,1/3,1/3,0)", 2},
                                              {"(1,1/4,1/4,1/4,1/4)", 3},
                                              {"(2/3,2/3,2/3,0,0)", 2},
                                              {"(1/2,1/2,1/3,1/3,1/3)", 5},
                                              {"(1/2,1/2,1/2,1/2,0)", 4},
                                              {"(2/5,2/5,2/5,2/5,2/5)", 6}});
}

TEST_CASE("hasse diagram")
{
    auto S2 = enumerate_kottwitz(HodgeDatum(2, 1));
    auto E2 = hasse_edges(S2);
    REQUIRE(E2.size() == 1);
    CHECK(is_basic(S2[E2[0].first]));

    auto S3 = enumerate_kottwitz(HodgeDatum(3, 1));
    CHECK(hasse_edges(S3).size() == 2);

    for (int n = 2; n <= 9; ++n)
        for (int d = 1; d < n; ++d) {
            HodgeDatum h(n, d);
            auto S = enumerate_kottwitz(h);
            auto E = hasse_edges(S);
            std::set<std::size_t> has_cover;
            for (auto [lo, hi] : E) {
                has_cover.insert(lo);
                CHECK(stratum_dim(S[lo], h) > stratum_dim(S[hi], h));
            }
            for (std::size_t i = 0; i < S.size(); ++i)
                if (!(S[i] == hodge_polygon(h))) CHECK(has_cover.count(i) == 1);
            for (const auto& v : S)
                if (is_basic(v)) CHECK(stratum_dim(v, h) == d * (n - d));
        }
}
