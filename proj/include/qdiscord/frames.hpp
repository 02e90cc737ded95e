#ifndef QDISCORD_FRAMES_HPP
#define QDISCORD_FRAMES_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qdiscord/common.hpp"
#include "qdiscord/qstate.hpp"

namespace qdiscord {

inline constexpr double kFrameTol = 1e-10;

/// d unit vectors summing to zero with pairwise inner products -1/(d-1):
/// the Bloch-vector pattern of an orthonormal basis of pure states. The
/// production constructors place them in R^(d^2-1).
struct SimplexFrame {
    int d = 0;
    std::vector<VectorXr> vectors;
};

struct FrameValidation {
    bool pass = false;
    double sum_deviation = 0.0;   // || sum_k y_k ||
    double max_norm_deviation = 0.0;  // max_k | ||y_k|| - 1 |
    double max_dot_deviation = 0.0;   // max_{i<j} | y_i.y_j + 1/(d-1) |
};

/// Checks the simplex-frame relations on an arbitrary vector list; the frame
/// size d is the list length.
inline FrameValidation validate_frame(const std::vector<VectorXr>& vectors,
                                      double tol = kFrameTol) {
    FrameValidation v;
    if (vectors.size() < 2) return v;
    const int d = static_cast<int>(vectors.size());
    VectorXr sum = VectorXr::Zero(vectors.front().size());
    for (const auto& y : vectors) {
        sum += y;
        v.max_norm_deviation = std::max(v.max_norm_deviation, std::abs(y.norm() - 1.0));
    }
    v.sum_deviation = sum.norm();
    const double target = -1.0 / (d - 1.0);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            v.max_dot_deviation =
                std::max(v.max_dot_deviation, std::abs(vectors[i].dot(vectors[j]) - target));
    v.pass = v.sum_deviation <= tol && v.max_norm_deviation <= tol && v.max_dot_deviation <= tol;
    return v;
}

/// Pi = ((d-1)/d) sum_k |y_k><y_k|, an orthogonal projection of rank d-1.
inline MatrixXr frame_projector(const SimplexFrame& frame) {
    const auto v = validate_frame(frame.vectors);
    if (!v.pass) {
        throw precondition_error("frame_projector: frame violates the simplex relations");
    }
    const int n = static_cast<int>(frame.vectors.front().size());
    MatrixXr pi = MatrixXr::Zero(n, n);
    for (const auto& y : frame.vectors) pi += y * y.transpose();
    pi *= (frame.d - 1.0) / frame.d;
    return pi;
}

/// First d-1 coordinate axes of R^(d^2-1), the default span for frames not
/// tied to a particular eigensystem.
inline std::vector<VectorXr> canonical_axes(int d) {
    const int n = d * d - 1;
    std::vector<VectorXr> axes;
    axes.reserve(d - 1);
    for (int l = 0; l < d - 1; ++l) {
        VectorXr e = VectorXr::Zero(n);
        e(l) = 1.0;
        axes.push_back(std::move(e));
    }
    return axes;
}

inline void require_orthonormal_span(const std::vector<VectorXr>& span, int count,
                                     const char* where) {
    if (static_cast<int>(span.size()) != count) {
        throw precondition_error(std::string(where) + ": need exactly " + std::to_string(count) +
                                 " span vectors");
    }
    for (std::size_t i = 0; i < span.size(); ++i) {
        for (std::size_t j = i; j < span.size(); ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            if (std::abs(span[i].dot(span[j]) - target) > kFrameTol) {
                throw precondition_error(std::string(where) + ": span basis not orthonormal");
            }
        }
    }
}

/// Vertices of a regular simplex centered at the origin inside the span of
/// d-1 orthonormal vectors, scaled to unit norm. Works for every d >= 2.
///
/// The vertex coordinates come from the Helmert basis of the hyperplane
/// orthogonal to (1,...,1) in R^d, which makes the output deterministic.
inline SimplexFrame regular_simplex_frame(int d, const std::vector<VectorXr>& span_basis) {
    if (d < 2) throw precondition_error("regular_simplex_frame: d must be >= 2");
    require_orthonormal_span(span_basis, d - 1, "regular_simplex_frame");
    const double scale = std::sqrt(d / (d - 1.0));
    SimplexFrame frame;
    frame.d = d;
    frame.vectors.reserve(d);
    for (int k = 0; k < d; ++k) {
        VectorXr y = VectorXr::Zero(span_basis.front().size());
        for (int l = 1; l <= d - 1; ++l) {
            // Helmert row l evaluated at position k
            double h = 0.0;
            if (k < l) h = 1.0;
            else if (k == l) h = -static_cast<double>(l);
            h /= std::sqrt(l * (l + 1.0));
            y += (scale * h) * span_basis[l - 1];
        }
        frame.vectors.push_back(std::move(y));
    }
    return frame;
}

/// Hadamard matrix of order n, when one is reachable by the Sylvester
/// doubling and Paley (prime q = n-1, q = 3 mod 4) constructions.
inline std::optional<MatrixXr> hadamard_matrix(int n) {
    if (n == 1) {
        MatrixXr h(1, 1);
        h(0, 0) = 1.0;
        return h;
    }
    if (n == 2) {
        MatrixXr h(2, 2);
        h << 1, 1, 1, -1;
        return h;
    }
    if (n % 4 != 0) return std::nullopt;

    const int q = n - 1;
    auto is_prime = [](int p) {
        if (p < 2) return false;
        for (int f = 2; f * f <= p; ++f)
            if (p % f == 0) return false;
        return true;
    };
    if (q % 4 == 3 && is_prime(q)) {
        std::vector<int> chi(q, -1);
        chi[0] = 0;
        for (int x = 1; x < q; ++x) chi[(x * x) % q] = 1;
        MatrixXr h(n, n);
        h(0, 0) = 1.0;
        for (int j = 1; j < n; ++j) h(0, j) = 1.0;
        for (int i = 1; i < n; ++i) h(i, 0) = -1.0;
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j)
                h(i, j) = (i == j) ? 1.0 : chi[((i - j) % q + q) % q];
        return h;
    }
    if (n % 2 == 0) {
        const auto half = hadamard_matrix(n / 2);
        if (half) {
            MatrixXr h(n, n);
            h.topLeftCorner(n / 2, n / 2) = *half;
            h.topRightCorner(n / 2, n / 2) = *half;
            h.bottomLeftCorner(n / 2, n / 2) = *half;
            h.bottomRightCorner(n / 2, n / 2) = -*half;
            return h;
        }
    }
    return std::nullopt;
}

/// Flips row/column signs so the first row and first column are all +1.
inline void normalize_hadamard(MatrixXr& h) {
    const int n = static_cast<int>(h.rows());
    for (int j = 0; j < n; ++j)
        if (h(0, j) < 0.0) h.col(j) *= -1.0;
    for (int i = 0; i < n; ++i)
        if (h(i, 0) < 0.0) h.row(i) *= -1.0;
}

struct SignFrameResult {
    bool feasible = false;
    std::string failure;  // names the unsatisfiable relation when infeasible
    SimplexFrame frame;
};

/// The explicit +-1 coefficient construction of a simplex frame over d-1
/// orthonormal axes. For even d the coefficient rows must be mutually
/// orthogonal sign vectors with pairwise products summing to -1, which is
/// equivalent to a Hadamard matrix of order d; for odd d the same matrix is
/// needed at order d-1. Returns a structured report when no such sign
/// matrix exists (e.g. d = 6, or d = 7 which needs order 6).
inline SignFrameResult sign_pattern_frame(int d, const std::vector<VectorXr>& axes) {
    if (d < 2) throw precondition_error("sign_pattern_frame: d must be >= 2");
    require_orthonormal_span(axes, d - 1, "sign_pattern_frame");
    SignFrameResult result;
    const int ambient = static_cast<int>(axes.front().size());

    if (d % 2 == 0) {
        auto h = hadamard_matrix(d);
        if (!h) {
            result.failure =
                "pairwise sign-row products summing to -1 need a Hadamard matrix of order " +
                std::to_string(d) +
                (d % 4 != 0 ? ", which does not exist (order must be 1, 2, or divisible by 4)"
                            : ", which is outside the Sylvester/Paley constructions built here");
            return result;
        }
        normalize_hadamard(*h);
        result.frame.d = d;
        const double scale = 1.0 / std::sqrt(d - 1.0);
        for (int k = 0; k < d; ++k) {
            VectorXr y = VectorXr::Zero(ambient);
            for (int n = 1; n < d; ++n) y += scale * (*h)(k, n) * axes[n - 1];
            result.frame.vectors.push_back(std::move(y));
        }
        result.feasible = true;
        return result;
    }

    auto h = hadamard_matrix(d - 1);
    if (!h) {
        result.failure =
            "the odd-d construction needs sign rows with pairwise products summing to -1, i.e. a "
            "Hadamard matrix of order " +
            std::to_string(d - 1) +
            ((d - 1) % 4 != 0 ? ", which does not exist (order must be 1, 2, or divisible by 4)"
                              : ", which is outside the Sylvester/Paley constructions built here");
        return result;
    }
    normalize_hadamard(*h);
    result.frame.d = d;
    result.frame.vectors.push_back(axes[0]);
    const double head = -1.0 / (d - 1.0);
    const double tail = std::sqrt(static_cast<double>(d)) / (d - 1.0);
    for (int k = 2; k <= d; ++k) {
        VectorXr y = head * axes[0];
        for (int n = 2; n <= d - 1; ++n) y += tail * (*h)(k - 2, n - 1) * axes[n - 1];
        result.frame.vectors.push_back(std::move(y));
    }
    result.feasible = true;
    return result;
}

/// Frame whose projector coincides with the projector onto the top d-1
/// eigenvectors of a symmetric matrix, so that tr[G Pi] attains the sum of
/// the d-1 largest eigenvalues. Built by rotating a seed simplex: the seed
/// span basis comes from deterministic Gram-Schmidt over the seed vectors
/// in index order, then maps onto the leading eigenvector columns.
inline SimplexFrame aligned_frame(const SymEigenSystem& g_sys, int d) {
    const int n = static_cast<int>(g_sys.vectors.rows());
    if (g_sys.vectors.cols() < d - 1) {
        throw precondition_error("aligned_frame: eigensystem provides fewer than d-1 eigenvectors");
    }
    if (n < d - 1) {
        throw precondition_error("aligned_frame: ambient dimension smaller than d-1");
    }

    std::vector<VectorXr> span;
    span.reserve(d - 1);
    for (int l = 0; l < d - 1 && l < n; ++l) {
        VectorXr e = VectorXr::Zero(n);
        e(l) = 1.0;
        span.push_back(std::move(e));
    }
    const SimplexFrame seed = regular_simplex_frame(d, span);

    std::vector<VectorXr> gs;
    for (const auto& y : seed.vectors) {
        VectorXr residual = y;
        for (const auto& g : gs) residual -= g.dot(y) * g;
        const double norm = residual.norm();
        if (norm > 1e-12) gs.push_back(residual / norm);
    }
    if (static_cast<int>(gs.size()) != d - 1) {
        throw contract_error("aligned_frame: seed span has unexpected rank");
    }

    SimplexFrame frame;
    frame.d = d;
    frame.vectors.reserve(d);
    for (const auto& y : seed.vectors) {
        VectorXr rotated = VectorXr::Zero(n);
        for (int l = 0; l < d - 1; ++l) rotated += gs[l].dot(y) * g_sys.vectors.col(l);
        frame.vectors.push_back(std::move(rotated));
    }
    return frame;
}

} // namespace qdiscord

#endif
