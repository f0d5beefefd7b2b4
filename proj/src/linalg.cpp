#include "ems/linalg.hpp"

#include "ems/point.hpp"

namespace ems {

Rat determinant(Matrix m) {
    const size_t n = m.size();
    Rat det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && sign(m[piv][col]) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (sign(m[r][col]) == 0) continue;
            Rat f = m[r][col] / m[col][col];
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

std::optional<Vec> solve_linear(Matrix a, Vec b) {
    const size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && sign(a[piv][col]) == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col || sign(a[r][col]) == 0) continue;
            Rat f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    Vec x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

int rank(Matrix m) {
    if (m.empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t col = 0; col < cols && r < rows; ++col) {
        size_t piv = r;
        while (piv < rows && sign(m[piv][col]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (sign(m[i][col]) == 0) continue;
            Rat f = m[i][col] / m[r][col];
            for (size_t c = col; c < cols; ++c) m[i][c] -= f * m[r][c];
        }
        ++r;
    }
    return static_cast<int>(r);
}

Vec solve_full_column_rank(Matrix a, Vec b) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    std::vector<size_t> pivot_row(cols);
    size_t r = 0;
    for (size_t col = 0; col < cols; ++col) {
        size_t piv = r;
        while (piv < rows && sign(a[piv][col]) == 0) ++piv;
        if (piv == rows) throw Error("degenerate-flat", "rank-deficient system");
        std::swap(a[piv], a[r]);
        std::swap(b[piv], b[r]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || sign(a[i][col]) == 0) continue;
            Rat f = a[i][col] / a[r][col];
            for (size_t c = col; c < cols; ++c) a[i][c] -= f * a[r][c];
            b[i] -= f * b[r];
        }
        pivot_row[col] = r;
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (sign(b[i]) != 0) throw Error("inconsistent", "inconsistent linear system");
    Vec x(cols);
    for (size_t col = 0; col < cols; ++col)
        x[col] = b[pivot_row[col]] / a[pivot_row[col]][col];
    return x;
}

std::vector<Vec> gram_schmidt(const std::vector<Vec>& vs) {
    std::vector<Vec> basis;
    for (const Vec& v : vs) {
        Vec u = v;
        for (const Vec& b : basis) {
            Rat f = dot(u, b) / dot(b, b);
            for (size_t i = 0; i < u.size(); ++i) u[i] -= f * b[i];
        }
        bool zero = true;
        for (const Rat& c : u)
            if (sign(c) != 0) { zero = false; break; }
        if (zero) throw Error("degenerate-flat", "linearly dependent direction set");
        basis.push_back(std::move(u));
    }
    return basis;
}

std::vector<Vec> orthogonal_complement(const std::vector<Vec>& vs, int dim) {
    std::vector<Vec> basis = gram_schmidt(vs);
    std::vector<Vec> complement;
    const size_t want = dim - vs.size();
    for (int axis = 0; axis < dim && complement.size() < want; ++axis) {
        Vec u(dim, 0);
        u[axis] = 1;
        for (const Vec& b : basis) {
            Rat f = dot(u, b) / dot(b, b);
            for (int i = 0; i < dim; ++i) u[i] -= f * b[i];
        }
        bool zero = true;
        for (const Rat& c : u)
            if (sign(c) != 0) { zero = false; break; }
        if (zero) continue;
        basis.push_back(u);
        complement.push_back(std::move(u));
    }
    if (complement.size() != want)
        throw Error("degenerate-flat", "failed to complete orthogonal basis");
    return complement;
}

}  // namespace ems
