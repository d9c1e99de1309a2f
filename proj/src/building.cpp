#include "bt/building.hpp"

#include "bt/errors.hpp"

#include <set>

namespace bt {

std::string BuildingPoint::str() const
{
    std::string out = "(" + matrix_str(frame) + ", (";
    for (std::size_t i = 0; i < coords.size(); ++i) out += (i ? ", " : "") + to_string(coords[i]);
    return out + "))";
}

BuildingPoint make_point(Frame frame, QVec coords)
{
    if (frame.size() != coords.size()) throw InvalidArgument("frame and coordinates differ in size");
    for (const auto& row : frame)
        if (row.size() != coords.size()) throw InvalidArgument("frame must be square");
    if (det(frame).is_zero()) throw SingularMatrix();
    return BuildingPoint{std::move(frame), proj0(coords)};
}

BuildingPoint standard_point(const FieldCtx* ctx, const QVec& coords)
{
    return BuildingPoint{identity_matrix(ctx, static_cast<int>(coords.size())), proj0(coords)};
}

namespace {

Val eval_with_inverse(const Matrix& ginv, const QVec& u, const std::vector<PR>& v)
{
    auto c = mat_vec(ginv, v);
    Val best = Val::infinity();
    for (std::size_t i = 0; i < c.size(); ++i) best = vmin(best, c[i].valuation() + Val(u[i]));
    return best;
}

std::vector<PR> column(const Matrix& g, std::size_t j)
{
    std::vector<PR> out;
    for (const auto& row : g) out.push_back(row[j]);
    return out;
}

// value k with N_a(col_j of b) = u_b[j] + k for all j, if it exists
std::optional<Q> offset_against(const Matrix& ainv, const QVec& ua, const BuildingPoint& b)
{
    std::optional<Q> k;
    for (std::size_t j = 0; j < b.coords.size(); ++j) {
        Val v = eval_with_inverse(ainv, ua, column(b.frame, j));
        if (v.is_inf()) return std::nullopt;
        Q diff = v.value() - b.coords[j];
        if (k && *k != diff) return std::nullopt;
        k = diff;
    }
    return k;
}

}  // namespace

Val norm_eval(const BuildingPoint& z, const std::vector<PR>& v)
{
    if (static_cast<int>(v.size()) != z.n()) throw InvalidArgument("vector has wrong length");
    return eval_with_inverse(inverse(z.frame), z.coords, v);
}

bool points_equal(const BuildingPoint& a, const BuildingPoint& b)
{
    if (a.n() != b.n()) return false;
    auto k1 = offset_against(inverse(a.frame), a.coords, b);
    if (!k1) return false;
    auto k2 = offset_against(inverse(b.frame), b.coords, a);
    return k2 && *k2 == -*k1;
}

BuildingPoint act(const Matrix& g, const BuildingPoint& z)
{
    if (det(g).is_zero()) throw SingularMatrix();
    return BuildingPoint{mat_mul(g, z.frame), z.coords};
}

BuildingPoint normal_form(const BuildingPoint& z)
{
    int n = z.n();
    std::vector<int> target(static_cast<std::size_t>(n), -1);
    QVec u(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (z.frame[i][j].is_zero()) continue;
            if (target[j] >= 0) return BuildingPoint{z.frame, proj0(z.coords)};
            target[j] = i;
        }
        // column j is alpha e_i, so N(e_i) = u_j - val(alpha)
        const PR& alpha = z.frame[target[j]][j];
        u[target[j]] = z.coords[j] - alpha.valuation().value();
    }
    return standard_point(matrix_field(z.frame), u);
}

std::optional<QVec> coords_in_frame(const BuildingPoint& z, const Frame& g)
{
    Matrix zinv = inverse(z.frame);
    QVec c;
    for (std::size_t j = 0; j < g.size(); ++j) {
        Val v = eval_with_inverse(zinv, z.coords, column(g, j));
        if (v.is_inf()) return std::nullopt;
        c.push_back(v.value());
    }
    BuildingPoint w{g, c};
    if (!points_equal(z, w)) return std::nullopt;
    return proj0(c);
}

bool apartment_contains(const Frame& g, const BuildingPoint& z) { return coords_in_frame(z, g).has_value(); }

std::vector<Frame> candidate_frames(const BuildingPoint& z, int depth, const FieldCtx* base)
{
    if (depth < 0) throw InvalidArgument("depth must be non-negative");
    if (depth > 3) throw ComplexityGuard("candidate frame depth is limited to 3");
    const FieldCtx* ctx = matrix_field(z.frame);
    if (!base) base = field(ctx->p(), 1);
    ctx = join_fields(ctx, base);
    int n = z.n();

    struct State {
        Frame frame;
        QVec coords;
    };
    std::vector<State> frontier{{z.frame, z.coords}};
    std::vector<Frame> out{z.frame};
    std::set<std::string> seen{matrix_str(z.frame)};

    auto visit = [&](Frame f, QVec c, std::vector<State>& next) {
        std::string key = matrix_str(f);
        if (!seen.insert(key).second) return;
        if (!apartment_contains(f, z)) return;
        out.push_back(f);
        next.push_back({std::move(f), std::move(c)});
    };

    for (int level = 0; level < depth; ++level) {
        std::vector<State> next;
        for (const auto& s : frontier) {
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    if (!is_integer(s.coords[i] - s.coords[j])) continue;
                    std::vector<int> perm(static_cast<std::size_t>(n));
                    for (int k = 0; k < n; ++k) perm[k] = k;
                    std::swap(perm[i], perm[j]);
                    QVec c = s.coords;
                    std::swap(c[i], c[j]);
                    visit(mat_mul(s.frame, permutation_matrix(ctx, perm)), c, next);
                }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    Q e = s.coords[j] - s.coords[i];
                    if (!is_integer(e)) continue;
                    for (std::uint32_t cst = 1; cst < base->q(); ++cst) {
                        PR alpha = PR::monomial(base, cst, e, 1).with_ctx(ctx);
                        visit(mat_mul(s.frame, elementary_matrix(ctx, n, i, j, alpha)), s.coords, next);
                    }
                }
        }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace bt
