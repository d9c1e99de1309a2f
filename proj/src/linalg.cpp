#include "bt/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace bt {

Matrix identity_matrix(const FieldCtx* ctx, int n)
{
    Matrix out(n, Row(n, PR::zero(ctx)));
    for (int i = 0; i < n; ++i) out[i][i] = PR::one(ctx);
    return out;
}

Matrix mat_mul(const Matrix& a, const Matrix& b)
{
    if (a.empty()) return {};
    std::size_t inner = b.size();
    if (a[0].size() != inner) throw InvalidArgument("mat_mul: shape mismatch");
    std::size_t cols = inner ? b[0].size() : 0;
    const FieldCtx* ctx = join_fields(matrix_field(a), matrix_field(b));
    Matrix out(a.size(), Row(cols, PR::zero(ctx)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                if (b[k][j].is_zero()) continue;
                out[i][j] = out[i][j] + a[i][k] * b[k][j];
            }
        }
    return out;
}

std::vector<PR> mat_vec(const Matrix& a, const std::vector<PR>& v)
{
    Matrix col(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) col[i] = {v[i]};
    Matrix prod = mat_mul(a, col);
    std::vector<PR> out;
    for (auto& r : prod) out.push_back(r[0]);
    return out;
}

Matrix transpose(const Matrix& a)
{
    if (a.empty()) return {};
    Matrix out(a[0].size(), Row(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) out[j][i] = a[i][j];
    return out;
}

Matrix submatrix_cols(const Matrix& a, const std::vector<int>& cols)
{
    Matrix out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int c : cols) out[i].push_back(a[i][static_cast<std::size_t>(c)]);
    return out;
}

namespace {

// in-place row echelon form; returns rank and the sign/scale product of pivots
int eliminate(Matrix& a, PR* det_out)
{
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    const FieldCtx* ctx = matrix_field(a);
    PR d = PR::one(ctx);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!a[i][c].is_zero()) {
                piv = i;
                break;
            }
        if (piv == rows) {
            if (det_out) d = PR::zero(ctx);
            continue;
        }
        if (piv != r) {
            std::swap(a[piv], a[r]);
            d = -d;
        }
        PR inv = a[r][c].inv();
        d = d * a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c].is_zero()) continue;
            PR f = a[i][c] * inv;
            for (std::size_t j = c; j < cols; ++j)
                if (!a[r][j].is_zero()) a[i][j] = a[i][j] - f * a[r][j];
        }
        ++r;
    }
    if (det_out) *det_out = (r == rows) ? d : PR::zero(ctx);
    return static_cast<int>(r);
}

}  // namespace

PR det(const Matrix& a)
{
    std::size_t n = a.size();
    if (n == 0) throw InvalidArgument("det of empty matrix");
    if (a[0].size() != n) throw InvalidArgument("det of non-square matrix");
    if (n == 1) return a[0][0];
    if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if (n == 3) {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
               a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    }
    Matrix work = a;
    PR d;
    eliminate(work, &d);
    return d;
}

int rank(const Matrix& a)
{
    if (a.empty()) return 0;
    Matrix work = a;
    return eliminate(work, nullptr);
}

Matrix rref(const Matrix& a, std::vector<int>* pivots)
{
    Matrix w = a;
    std::size_t rows = w.size();
    std::size_t cols = rows ? w[0].size() : 0;
    std::vector<int> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!w[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p == rows) continue;
        std::swap(w[p], w[r]);
        PR inv = w[r][c].inv();
        for (auto& x : w[r]) x = x * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || w[i][c].is_zero()) continue;
            PR f = w[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (!w[r][j].is_zero()) w[i][j] = w[i][j] - f * w[r][j];
        }
        piv.push_back(static_cast<int>(c));
        ++r;
    }
    w.resize(r);
    if (pivots) *pivots = piv;
    return w;
}

std::vector<std::vector<PR>> right_kernel(const Matrix& a)
{
    std::vector<int> piv;
    Matrix r = rref(a, &piv);
    std::size_t cols = a.empty() ? 0 : a[0].size();
    const FieldCtx* ctx = matrix_field(a);
    std::vector<std::vector<PR>> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (std::find(piv.begin(), piv.end(), static_cast<int>(f)) != piv.end()) continue;
        std::vector<PR> y(cols, PR::zero(ctx));
        y[f] = PR::one(ctx);
        for (std::size_t i = 0; i < piv.size(); ++i) y[static_cast<std::size_t>(piv[i])] = -r[i][f];
        out.push_back(std::move(y));
    }
    return out;
}

Matrix inverse(const Matrix& a)
{
    std::size_t n = a.size();
    if (n == 0 || a[0].size() != n) throw InvalidArgument("inverse of non-square matrix");
    const FieldCtx* ctx = matrix_field(a);
    Matrix aug(n, Row(2 * n, PR::zero(ctx)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = PR::one(ctx);
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t i = c; i < n; ++i)
            if (!aug[i][c].is_zero()) {
                piv = i;
                break;
            }
        if (piv == n) throw SingularMatrix();
        std::swap(aug[piv], aug[c]);
        PR inv = aug[c][c].inv();
        for (auto& x : aug[c]) x = x * inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || aug[i][c].is_zero()) continue;
            PR f = aug[i][c];
            for (std::size_t j = 0; j < 2 * n; ++j)
                if (!aug[c][j].is_zero()) aug[i][j] = aug[i][j] - f * aug[c][j];
        }
    }
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i) out[i].assign(aug[i].begin() + static_cast<long>(n), aug[i].end());
    return out;
}

std::vector<PR> solve(const Matrix& a, const std::vector<PR>& b) { return mat_vec(inverse(a), b); }

const FieldCtx* matrix_field(const Matrix& a)
{
    const FieldCtx* ctx = nullptr;
    for (const auto& row : a)
        for (const auto& x : row) ctx = ctx ? join_fields(ctx, x.ctx()) : x.ctx();
    if (!ctx) throw InvalidArgument("empty matrix has no field");
    return ctx;
}

std::int64_t matrix_ramification(const Matrix& a)
{
    std::int64_t m = 1;
    for (const auto& row : a)
        for (const auto& x : row) m = std::lcm(m, x.ramification());
    return m;
}

Matrix rescale_matrix(const Matrix& a, std::int64_t m)
{
    Matrix out = a;
    for (auto& row : out)
        for (auto& x : row) x = x.rescale(m);
    return out;
}

Matrix permutation_matrix(const FieldCtx* ctx, const std::vector<int>& perm)
{
    int n = static_cast<int>(perm.size());
    Matrix out(n, Row(n, PR::zero(ctx)));
    for (int j = 0; j < n; ++j) out[perm[j]][j] = PR::one(ctx);
    return out;
}

Matrix elementary_matrix(const FieldCtx* ctx, int n, int i, int j, const PR& alpha)
{
    Matrix out = identity_matrix(ctx, n);
    out[i][j] = alpha;
    return out;
}

Matrix diagonal_matrix(const std::vector<PR>& diag)
{
    const FieldCtx* ctx = diag.at(0).ctx();
    for (const auto& x : diag) ctx = join_fields(ctx, x.ctx());
    int n = static_cast<int>(diag.size());
    Matrix out(n, Row(n, PR::zero(ctx)));
    for (int i = 0; i < n; ++i) out[i][i] = diag[i];
    return out;
}

std::string matrix_str(const Matrix& a)
{
    std::string out = "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < a[i].size(); ++j) out += (j ? ", " : "") + a[i][j].str();
        out += "]";
    }
    return out + "]";
}

}  // namespace bt
