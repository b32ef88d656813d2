#pragma once

#include <vector>

#include "shadowcover/rng.hpp"
#include "shadowcover/vec.hpp"

namespace shadowcover {

// Orthonormal k-frame spanning a linear subspace of R^n.
struct Frame {
    int dim = 0;
    int k = 0;
    std::vector<Vec> basis;  // k orthonormal vectors of length dim
};

inline Frame frame_from_basis(int dim, std::vector<Vec> basis) {
    Frame f;
    f.dim = dim;
    f.k = static_cast<int>(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (static_cast<int>(basis[i].size()) != dim) throw dimension_error("frame basis dimension mismatch");
        if (std::fabs(norm(basis[i]) - 1.0) > 1e-12) throw frame_error("frame basis vector not unit");
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (std::fabs(dot(basis[i], basis[j])) > 1e-12) throw frame_error("frame basis not orthogonal");
    }
    f.basis = std::move(basis);
    return f;
}

inline Vec project_point(const Frame& f, const Vec& x) {
    Vec y(static_cast<std::size_t>(f.k));
    for (int i = 0; i < f.k; ++i) y[static_cast<std::size_t>(i)] = dot(f.basis[static_cast<std::size_t>(i)], x);
    return y;
}

inline Vec embed_point(const Frame& f, const Vec& y) {
    Vec x = zeros(f.dim);
    for (int i = 0; i < f.k; ++i) axpy(x, y[static_cast<std::size_t>(i)], f.basis[static_cast<std::size_t>(i)]);
    return x;
}

// Orthonormal basis of the orthogonal complement.
inline Frame complement(const Frame& f) {
    std::vector<Vec> basis = f.basis;
    std::vector<Vec> full;
    for (int i = 0; i < f.dim; ++i) full.push_back(unit(f.dim, i));
    gram_schmidt_extend(basis, full, 1e-10);
    std::vector<Vec> comp(basis.begin() + f.k, basis.end());
    return frame_from_basis(f.dim, std::move(comp));
}

// Haar-uniform frame: orthonormalized standard-Gaussian n x k matrix.
inline Frame haar_frame(int n, int k, Rng& rng) {
    for (;;) {
        std::vector<Vec> cols;
        for (int i = 0; i < k; ++i) cols.push_back(rng.gaussian_vec(n));
        std::vector<Vec> basis;
        gram_schmidt_extend(basis, cols, 1e-9);
        if (static_cast<int>(basis.size()) == k) {
            Frame f;
            f.dim = n;
            f.k = k;
            f.basis = std::move(basis);
            return f;
        }
    }
}

inline std::vector<Frame> sample_grassmannian(int n, int k, int count, std::uint64_t seed) {
    if (k < 1 || k >= n) throw dimension_error("subspace dimension must satisfy 1 <= k < n");
    std::vector<Frame> frames;
    frames.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Rng rng = derive_rng(seed, "grassmannian", static_cast<std::uint64_t>(i));
        frames.push_back(haar_frame(n, k, rng));
    }
    return frames;
}

}  // namespace shadowcover
