#pragma once

#include "linsym/quad.hpp"

#include <optional>
#include <vector>

namespace linsym {

using QVec = std::vector<Quad>;
using QMat = std::vector<QVec>;  // row-major

QMat qmat_zero(size_t rows, size_t cols);
QMat qmat_identity(size_t n);
QVec qmat_apply(const QMat& m, const QVec& v);
QMat qmat_mul(const QMat& a, const QMat& b);
Quad qvec_dot(const QVec& a, const QVec& b);

// Reduced row echelon form in place; returns pivot column indices.
std::vector<size_t> qmat_rref(QMat& m);

size_t qmat_rank(QMat m);

// Basis of the right null space (as column vectors).
std::vector<QVec> qmat_nullspace(const QMat& m);

// One solution of A x = b with free variables set to zero, or nullopt.
std::optional<QVec> qmat_solve(const QMat& a, const QVec& b);

Quad qmat_det(QMat m);

// Characteristic polynomial coefficients p[0..n], p(x) = sum p[k] x^k with
// p[n] = 1 (Faddeev-LeVerrier).
QVec qmat_charpoly(const QMat& m);

// Row-space basis in rref form; rows are the spanning vectors.
std::vector<QVec> qmat_rowspace(QMat m);

bool qvec_is_zero(const QVec& v);

}  // namespace linsym
