#include "linsym/qmat.hpp"

namespace linsym {

QMat qmat_zero(size_t rows, size_t cols) { return QMat(rows, QVec(cols, Quad(0))); }

QMat qmat_identity(size_t n) {
    QMat m = qmat_zero(n, n);
    for (size_t i = 0; i < n; ++i) m[i][i] = Quad(1);
    return m;
}

QVec qmat_apply(const QMat& m, const QVec& v) {
    QVec out(m.size(), Quad(0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

QMat qmat_mul(const QMat& a, const QMat& b) {
    size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
    QMat out = qmat_zero(n, p);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (a[i][j].is_zero()) continue;
            for (size_t c = 0; c < p; ++c) out[i][c] += a[i][j] * b[j][c];
        }
    return out;
}

Quad qvec_dot(const QVec& a, const QVec& b) {
    Quad s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool qvec_is_zero(const QVec& v) {
    for (const auto& q : v)
        if (!q.is_zero()) return false;
    return true;
}

std::vector<size_t> qmat_rref(QMat& m) {
    std::vector<size_t> pivots;
    size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && m[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[row]);
        Quad inv = Quad(1) / m[row][col];
        for (size_t c = col; c < cols; ++c) m[row][c] = m[row][c] * inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            Quad f = m[r][col];
            for (size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

size_t qmat_rank(QMat m) { return qmat_rref(m).size(); }

std::vector<QVec> qmat_nullspace(const QMat& m0) {
    QMat m = m0;
    size_t cols = m.empty() ? 0 : m[0].size();
    auto pivots = qmat_rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<QVec> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        QVec v(cols, Quad(0));
        v[free] = Quad(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QVec> qmat_solve(const QMat& a, const QVec& b) {
    size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
    QMat aug = a;
    for (size_t r = 0; r < rows; ++r) aug[r].push_back(b[r]);
    auto pivots = qmat_rref(aug);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;  // inconsistent
    QVec x(cols, Quad(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
    return x;
}

Quad qmat_det(QMat m) {
    size_t n = m.size();
    Quad det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return Quad(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            Quad f = m[r][col] / m[col][col];
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

QVec qmat_charpoly(const QMat& a) {
    size_t n = a.size();
    QVec p(n + 1, Quad(0));
    p[n] = Quad(1);
    QMat m = qmat_zero(n, n);
    Quad c(1);
    for (size_t k = 1; k <= n; ++k) {
        // M_k = A*M_{k-1} + c_{k-1} I
        QMat am = qmat_mul(a, m);
        for (size_t i = 0; i < n; ++i) am[i][i] += c;
        m = std::move(am);
        QMat prod = qmat_mul(a, m);
        Quad tr(0);
        for (size_t i = 0; i < n; ++i) tr += prod[i][i];
        c = -(tr / Quad(Rational(static_cast<long>(k))));
        p[n - k] = c;
    }
    return p;
}

std::vector<QVec> qmat_rowspace(QMat m) {
    auto pivots = qmat_rref(m);
    std::vector<QVec> out(m.begin(), m.begin() + static_cast<long>(pivots.size()));
    return out;
}

}  // namespace linsym
