#ifndef QDISCORD_BASIS_HPP
#define QDISCORD_BASIS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "qdiscord/common.hpp"

namespace qdiscord {

// Construction is exact up to floating-point rounding, so the axioms are
// checked at a tight tolerance.
inline constexpr double kBasisTol = 1e-12;

/// The generalized Gell-Mann generator tuple of the d-dimensional operator
/// space: d^2-1 traceless Hermitian matrices with tr[Y_i Y_j] = 2 delta_ij.
struct OperatorBasis {
    int dim = 0;
    std::vector<MatrixXc> generators;
};

/// Canonical generalized Gell-Mann basis for dimension d >= 2.
///
/// Ordering is fixed so that serialized Bloch vectors are reproducible:
/// symmetric off-diagonal generators (j<k, lexicographic), then the
/// antisymmetric off-diagonal generators in the same pair order, then the
/// d-1 diagonal generators. For d=2 this yields sigma_x, sigma_y, sigma_z.
inline OperatorBasis gell_mann_basis(int d) {
    if (d < 2) {
        throw precondition_error("gell_mann_basis: dimension must be >= 2, got " + std::to_string(d));
    }
    OperatorBasis basis;
    basis.dim = d;
    basis.generators.reserve(static_cast<std::size_t>(d) * d - 1);

    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            MatrixXc m = MatrixXc::Zero(d, d);
            m(j, k) = Complex(1.0, 0.0);
            m(k, j) = Complex(1.0, 0.0);
            basis.generators.push_back(std::move(m));
        }
    }
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            MatrixXc m = MatrixXc::Zero(d, d);
            m(j, k) = Complex(0.0, -1.0);
            m(k, j) = Complex(0.0, 1.0);
            basis.generators.push_back(std::move(m));
        }
    }
    for (int l = 1; l < d; ++l) {
        MatrixXc m = MatrixXc::Zero(d, d);
        const double scale = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
        for (int p = 0; p < l; ++p) {
            m(p, p) = Complex(scale, 0.0);
        }
        m(l, l) = Complex(-scale * l, 0.0);
        basis.generators.push_back(std::move(m));
    }
    return basis;
}

struct BasisViolation {
    std::string invariant;  // "hermitian" | "traceless" | "nonzero" | "orthonormality" | "count"
    int i = -1;
    int j = -1;
    double magnitude = 0.0;
};

/// Checks every OperatorBasis axiom and reports each violation with its
/// magnitude. An empty report means the basis is valid at `tol`.
inline std::vector<BasisViolation> validate_basis(const OperatorBasis& basis, double tol = kBasisTol) {
    std::vector<BasisViolation> report;
    const int d = basis.dim;
    const int expected = d * d - 1;
    if (static_cast<int>(basis.generators.size()) != expected) {
        report.push_back({"count", -1, -1,
                          std::abs(static_cast<double>(basis.generators.size()) - expected)});
    }
    const int n = static_cast<int>(basis.generators.size());
    for (int i = 0; i < n; ++i) {
        const MatrixXc& g = basis.generators[i];
        const double herm = hermiticity_deviation(g);
        if (herm > tol) report.push_back({"hermitian", i, -1, herm});
        const double tr = std::abs(g.trace());
        if (tr > tol) report.push_back({"traceless", i, -1, tr});
        if (g.cwiseAbs().maxCoeff() <= tol) report.push_back({"nonzero", i, -1, 0.0});
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double target = (i == j) ? 2.0 : 0.0;
            const Complex ip = trace_product(basis.generators[i], basis.generators[j]);
            const double dev = std::abs(ip - Complex(target, 0.0));
            if (dev > tol) report.push_back({"orthonormality", i, j, dev});
        }
    }
    return report;
}

} // namespace qdiscord

#endif
