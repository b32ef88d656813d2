#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace shadowcover {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major: Mat[i] is row i

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct dimension_error : error { using error::error; };
struct degenerate_error : error { using error::error; };
struct unbounded_error : error { using error::error; };
struct infeasible_error : error { using error::error; };
struct negative_scale_error : error { using error::error; };
struct nonspanning_error : error { using error::error; };
struct bracket_error : error { using error::error; };
struct frame_error : error { using error::error; };
struct fit_error : error { using error::error; };

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scaled(const Vec& a, double t) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * t;
    return r;
}

inline void axpy(Vec& y, double t, const Vec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += t * x[i];
}

inline double dist(const Vec& a, const Vec& b) { return norm(sub(a, b)); }

inline Vec normalized(const Vec& a) {
    double n = norm(a);
    if (n == 0.0) throw degenerate_error("cannot normalize zero vector");
    return scaled(a, 1.0 / n);
}

inline Vec zeros(int n) { return Vec(static_cast<std::size_t>(n), 0.0); }

inline Vec unit(int n, int i) {
    Vec e = zeros(n);
    e[static_cast<std::size_t>(i)] = 1.0;
    return e;
}

inline Mat identity(int n) {
    Mat m(static_cast<std::size_t>(n), zeros(n));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    return m;
}

inline Vec matvec(const Mat& m, const Vec& x) {
    Vec r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], x);
    return r;
}

// y = M^T x, where M has arbitrary shape (rows x cols)
inline Vec mat_tvec(const Mat& m, const Vec& x) {
    if (m.empty()) return {};
    Vec r(m[0].size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j) r[j] += m[i][j] * x[i];
    return r;
}

inline Mat transpose(const Mat& m) {
    if (m.empty()) return {};
    Mat r(m[0].size(), Vec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[0].size(); ++j) r[j][i] = m[i][j];
    return r;
}

inline Mat matmul(const Mat& a, const Mat& b) {
    Mat r(a.size(), Vec(b[0].size(), 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            double aik = a[i][k];
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

// LU with partial pivoting; returns 0 for singular inputs.
inline double determinant(Mat m) {
    const std::size_t n = m.size();
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[p][c])) p = r;
        if (m[p][c] == 0.0) return 0.0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            double f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

// Solves the square system m x = b by Gaussian elimination with partial pivoting.
inline Vec solve_linear(Mat m, Vec b) {
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[p][c])) p = r;
        if (std::fabs(m[p][c]) < 1e-14) throw degenerate_error("singular linear system");
        if (p != c) {
            std::swap(m[p], m[c]);
            std::swap(b[p], b[c]);
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            double f = m[r][c] / m[c][c];
            if (f == 0.0) continue;
            for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
            b[r] -= f * b[c];
        }
    }
    Vec x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= m[i][j] * x[j];
        x[i] = s / m[i][i];
    }
    return x;
}

// Modified Gram-Schmidt. Appends to `basis` those input vectors with residual
// above tol, orthonormalized; returns the resulting rank.
inline int gram_schmidt_extend(std::vector<Vec>& basis, const std::vector<Vec>& vs, double tol) {
    for (const Vec& v : vs) {
        Vec r = v;
        for (const Vec& b : basis) axpy(r, -dot(r, b), b);
        for (const Vec& b : basis) axpy(r, -dot(r, b), b);  // second pass for accuracy
        double n = norm(r);
        if (n > tol) basis.push_back(scaled(r, 1.0 / n));
    }
    return static_cast<int>(basis.size());
}

// A unit vector orthogonal to all of `basis` (assumed orthonormal, size < n).
inline Vec orthogonal_complement_vector(const std::vector<Vec>& basis, int n) {
    Vec best;
    double best_norm = -1.0;
    for (int i = 0; i < n; ++i) {
        Vec r = unit(n, i);
        for (const Vec& b : basis) axpy(r, -dot(r, b), b);
        for (const Vec& b : basis) axpy(r, -dot(r, b), b);
        double nr = norm(r);
        if (nr > best_norm) {
            best_norm = nr;
            best = std::move(r);
        }
    }
    if (best_norm < 1e-12) throw degenerate_error("no orthogonal complement direction");
    return scaled(best, 1.0 / best_norm);
}

}  // namespace shadowcover
