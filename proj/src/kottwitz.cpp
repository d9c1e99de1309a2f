#include "bt/kottwitz.hpp"

#include "bt/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace bt {

HodgeDatum::HodgeDatum(int n_, int d_) : n(n_), d(d_)
{
    if (!(0 < d && d < n)) throw InvalidArgument("Hodge datum needs 0 < d < n");
}

QVec HodgeDatum::mu() const
{
    QVec out(static_cast<std::size_t>(n), Q(0));
    for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(i)] = 1;
    return out;
}

NewtonPoint::NewtonPoint(QVec slopes) : slopes_(std::move(slopes))
{
    if (slopes_.empty()) throw InvalidArgument("empty slope vector");
    Q partial = 0;
    for (std::size_t i = 0; i < slopes_.size(); ++i) {
        partial += slopes_[i];
        if (i + 1 < slopes_.size()) {
            if (slopes_[i] < slopes_[i + 1]) throw InvalidArgument("slopes not weakly decreasing: " + str());
            if (slopes_[i] != slopes_[i + 1] && !is_integer(partial))
                throw InvalidArgument("non-integral breakpoint in " + str());
        }
    }
    if (!is_integer(partial)) throw InvalidArgument("non-integral slope sum in " + str());
}

NewtonPoint NewtonPoint::from_vertices(const std::vector<std::pair<int, int>>& vertices)
{
    QVec slopes;
    int px = 0, py = 0;
    for (auto [x, y] : vertices) {
        if (x == 0 && y == 0 && slopes.empty() && px == 0) continue;
        if (x <= px) throw InvalidArgument("vertex abscissae must increase");
        for (int i = px; i < x; ++i) slopes.emplace_back(y - py, x - px);
        px = x;
        py = y;
    }
    return NewtonPoint(std::move(slopes));
}

Q NewtonPoint::value_at(int x) const
{
    Q s = 0;
    for (int i = 0; i < x; ++i) s += slopes_[static_cast<std::size_t>(i)];
    return s;
}

std::vector<Vertex> NewtonPoint::vertices() const
{
    std::vector<Vertex> out{{0, Q(0)}};
    Q partial = 0;
    for (std::size_t i = 0; i < slopes_.size(); ++i) {
        partial += slopes_[i];
        if (i + 1 == slopes_.size() || slopes_[i] != slopes_[i + 1])
            out.push_back({static_cast<int>(i + 1), partial});
    }
    return out;
}

std::vector<Vertex> NewtonPoint::turning_points() const
{
    auto v = vertices();
    return std::vector<Vertex>(v.begin() + 1, v.end() - 1);
}

std::vector<std::string> NewtonPoint::to_strings() const
{
    std::vector<std::string> out;
    for (const auto& q : slopes_) out.push_back(to_string(q));
    return out;
}

std::string NewtonPoint::str() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < slopes_.size(); ++i) out += (i ? "," : "") + to_string(slopes_[i]);
    return out + ")";
}

void LeviDatum::validate() const
{
    if (composition.empty()) throw InvalidArgument("Levi datum needs at least one block");
    if (composition.size() != distribution.size())
        throw InvalidArgument("composition and distribution lengths differ");
    for (std::size_t i = 0; i < composition.size(); ++i) {
        if (composition[i] <= 0) throw InvalidArgument("block sizes must be positive");
        if (distribution[i] < 0 || distribution[i] > composition[i])
            throw InvalidArgument("invalid distribution: need 0 <= d_i <= n_i");
    }
}

int LeviDatum::n() const
{
    int s = 0;
    for (int x : composition) s += x;
    return s;
}

int LeviDatum::d() const
{
    int s = 0;
    for (int x : distribution) s += x;
    return s;
}

NewtonPoint hodge_polygon(const HodgeDatum& h) { return NewtonPoint(h.mu()); }

bool leq(const NewtonPoint& a, const NewtonPoint& b)
{
    if (a.n() != b.n()) throw InvalidArgument("leq: lengths differ");
    if (a.total() != b.total()) throw InvalidArgument("leq: endpoints differ");
    Q sa = 0, sb = 0;
    for (int i = 0; i < a.n(); ++i) {
        sa += a.slopes()[static_cast<std::size_t>(i)];
        sb += b.slopes()[static_cast<std::size_t>(i)];
        if (sa > sb) return false;
    }
    return true;
}

bool in_kottwitz_set(const NewtonPoint& v, const HodgeDatum& h)
{
    return v.n() == h.n && v.total() == h.d && leq(v, hodge_polygon(h));
}

namespace {

void require_member(const NewtonPoint& v, const HodgeDatum& h)
{
    if (!in_kottwitz_set(v, h))
        throw InvalidArgument(v.str() + " is not in the Kottwitz set for (n,d)=(" + std::to_string(h.n) + "," +
                              std::to_string(h.d) + ")");
}

bool on_hodge(const Vertex& v, const HodgeDatum& h) { return v.y == std::min(v.x, h.d); }

}  // namespace

std::vector<NewtonPoint> enumerate_kottwitz(const HodgeDatum& h)
{
    std::vector<NewtonPoint> out;
    QVec slopes;
    // Extend the polygon from breakpoint (x, y); each new segment must be strictly
    // less steep than the previous one so that every breakpoint is a genuine vertex.
    std::function<void(int, int, const Q*)> grow = [&](int x, int y, const Q* prev) {
        if (x == h.n) {
            if (y == h.d) out.emplace_back(slopes);
            return;
        }
        for (int nx = x + 1; nx <= h.n; ++nx) {
            for (int ny = y; ny <= std::min(nx, h.d); ++ny) {
                Q s(ny - y, nx - x);
                if (prev && s >= *prev) continue;
                if (nx == h.n && ny != h.d) continue;
                for (int i = x; i < nx; ++i) slopes.push_back(s);
                grow(nx, ny, &s);
                slopes.resize(static_cast<std::size_t>(x));
            }
        }
    };
    grow(0, 0, nullptr);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_basic(const NewtonPoint& v)
{
    const auto& s = v.slopes();
    return std::all_of(s.begin(), s.end(), [&](const Q& q) { return q == s.front(); });
}

bool is_hn_decomposable(const NewtonPoint& v, const HodgeDatum& h)
{
    require_member(v, h);
    auto tp = v.turning_points();
    return std::any_of(tp.begin(), tp.end(), [&](const Vertex& p) { return on_hodge(p, h); });
}

bool is_strongly_regular(const NewtonPoint& v, const HodgeDatum& h)
{
    require_member(v, h);
    auto tp = v.turning_points();
    return std::all_of(tp.begin(), tp.end(), [&](const Vertex& p) { return on_hodge(p, h); });
}

std::vector<NewtonPoint> enumerate_sr(const HodgeDatum& h)
{
    std::vector<NewtonPoint> out;
    for (auto& v : enumerate_kottwitz(h))
        if (is_strongly_regular(v, h)) out.push_back(v);
    return out;
}

NewtonPoint levi_pushforward(const LeviDatum& L)
{
    L.validate();
    QVec slopes;
    for (std::size_t i = 0; i < L.composition.size(); ++i)
        for (int j = 0; j < L.composition[i]; ++j) slopes.emplace_back(L.distribution[i], L.composition[i]);
    std::sort(slopes.begin(), slopes.end(), std::greater<>());
    NewtonPoint v(std::move(slopes));
    int n = L.n(), d = L.d();
    if (L.composition.size() >= 2 && std::gcd(n, d) == 1 && d > 0 && d < n && is_basic(v))
        throw std::logic_error("pushforward of a proper Levi datum is basic for coprime (d,n)");
    return v;
}

long stratum_dim(const NewtonPoint& v, const HodgeDatum& h)
{
    require_member(v, h);
    QVec mu = h.mu();
    Q total = 0;
    for (int i = 1; i <= h.n; ++i) {
        auto k = static_cast<std::size_t>(i - 1);
        total += Q(h.n + 1 - 2 * i) * (mu[k] - v.slopes()[k]);
    }
    if (!is_integer(total)) throw std::logic_error("non-integral stratum dimension for " + v.str());
    return boost::multiprecision::numerator(total).convert_to<long>();
}

std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const std::vector<NewtonPoint>& S)
{
    std::size_t k = S.size();
    std::vector<std::vector<char>> lt(k, std::vector<char>(k, 0));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) lt[a][b] = (a != b && !(S[a] == S[b]) && leq(S[a], S[b]));
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            if (!lt[a][b]) continue;
            bool covered = true;
            for (std::size_t c = 0; c < k && covered; ++c)
                if (lt[a][c] && lt[c][b]) covered = false;
            if (covered) out.emplace_back(a, b);
        }
    return out;
}

}  // namespace bt
