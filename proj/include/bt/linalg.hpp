#pragma once

#include "bt/valfield.hpp"

#include <vector>

namespace bt {

using Row = std::vector<PR>;
using Matrix = std::vector<Row>;

Matrix identity_matrix(const FieldCtx* ctx, int n);
Matrix mat_mul(const Matrix& a, const Matrix& b);
std::vector<PR> mat_vec(const Matrix& a, const std::vector<PR>& v);
Matrix transpose(const Matrix& a);
Matrix submatrix_cols(const Matrix& a, const std::vector<int>& cols);

PR det(const Matrix& a);
int rank(const Matrix& a);
// reduced row echelon form; zero rows dropped, pivot columns returned
Matrix rref(const Matrix& a, std::vector<int>* pivots = nullptr);
// basis of {y : a y = 0} as columns of an n x (n - rank) matrix, returned as a list of vectors
std::vector<std::vector<PR>> right_kernel(const Matrix& a);
Matrix inverse(const Matrix& a);  // throws SingularMatrix
// x with A x = b for square invertible A
std::vector<PR> solve(const Matrix& a, const std::vector<PR>& b);

// the common field of all entries (prime fields promote)
const FieldCtx* matrix_field(const Matrix& a);
std::int64_t matrix_ramification(const Matrix& a);
Matrix rescale_matrix(const Matrix& a, std::int64_t m);

// permutation matrix with column j equal to e_{perm[j]}
Matrix permutation_matrix(const FieldCtx* ctx, const std::vector<int>& perm);
// identity plus alpha in position (i, j)
Matrix elementary_matrix(const FieldCtx* ctx, int n, int i, int j, const PR& alpha);
Matrix diagonal_matrix(const std::vector<PR>& diag);

std::string matrix_str(const Matrix& a);

}  // namespace bt
