#ifndef QDISCORD_REPR_HPP
#define QDISCORD_REPR_HPP

#include <cmath>
#include <vector>

#include "qdiscord/basis.hpp"
#include "qdiscord/common.hpp"
#include "qdiscord/qstate.hpp"

namespace qdiscord {

/// Bloch-level data of a bipartite state: reduced Bloch vectors r1, r2 and
/// the correlation matrix T^(ij) = tr[rho (Y1_i (x) Y2_j)].
struct BlochRepr {
    int d1 = 0;
    int d2 = 0;
    VectorXr r1;  // length d1^2-1
    VectorXr r2;  // length d2^2-1
    MatrixXr T;   // (d1^2-1) x (d2^2-1)
};

/// Bloch vector of a single-qudit state, r_j = sqrt(d/(2(d-1))) tr[rho Y_j].
/// Pure states have unit norm; the maximally mixed state maps to zero.
inline VectorXr bloch_vector(const DensityMatrix& rho, const OperatorBasis& basis) {
    if (rho.dims.size() != 1 || rho.order() != basis.dim) {
        throw precondition_error("bloch_vector: state dimension does not match basis");
    }
    const int d = basis.dim;
    const double scale = std::sqrt(d / (2.0 * (d - 1)));
    VectorXr r(d * d - 1);
    for (int j = 0; j < d * d - 1; ++j) {
        r(j) = scale * trace_product(rho.matrix, basis.generators[j]).real();
    }
    return r;
}

inline BlochRepr extract(const DensityMatrix& rho, const OperatorBasis& basis_a,
                         const OperatorBasis& basis_b) {
    require_bipartite(rho, "extract");
    if (rho.d1() != basis_a.dim || rho.d2() != basis_b.dim) {
        throw precondition_error("extract: state dimensions do not match bases");
    }
    const int d1 = rho.d1();
    const int d2 = rho.d2();
    const int n1 = d1 * d1 - 1;
    const int n2 = d2 * d2 - 1;

    BlochRepr repr;
    repr.d1 = d1;
    repr.d2 = d2;
    repr.r1 = bloch_vector(partial_trace(rho, 1), basis_a);
    repr.r2 = bloch_vector(partial_trace(rho, 2), basis_b);
    repr.T = MatrixXr(n1, n2);

    // T_ij = sum_{a,b,c,e} rho[(a,b),(c,e)] Y1_i[c,a] Y2_j[e,b], contracted
    // in two stages: the second factor first, then each first-factor trace.
    MatrixXc k_j(d1, d1);
    for (int j = 0; j < n2; ++j) {
        const MatrixXc& yb = basis_b.generators[j];
        k_j.setZero();
        for (int a = 0; a < d1; ++a)
            for (int c = 0; c < d1; ++c)
                for (int b = 0; b < d2; ++b)
                    for (int e = 0; e < d2; ++e)
                        k_j(a, c) += rho.matrix(a * d2 + b, c * d2 + e) * yb(e, b);
        for (int i = 0; i < n1; ++i) {
            const MatrixXc& ya = basis_a.generators[i];
            Complex t(0.0, 0.0);
            for (int a = 0; a < d1; ++a)
                for (int c = 0; c < d1; ++c) t += k_j(a, c) * ya(c, a);
            repr.T(i, j) = t.real();
        }
    }
    return repr;
}

struct ReconstructResult {
    MatrixXc matrix;
    bool psd = false;
    double min_eigenvalue = 0.0;
};

/// Assembles the state from (r1, r2, T). Not every tuple is a state, so the
/// result carries a PSD flag rather than rejecting non-physical inputs.
inline ReconstructResult reconstruct(const BlochRepr& repr, const OperatorBasis& basis_a,
                                     const OperatorBasis& basis_b) {
    const int d1 = repr.d1;
    const int d2 = repr.d2;
    const int n1 = d1 * d1 - 1;
    const int n2 = d2 * d2 - 1;
    if (d1 != basis_a.dim || d2 != basis_b.dim || repr.r1.size() != n1 ||
        repr.r2.size() != n2 || repr.T.rows() != n1 || repr.T.cols() != n2) {
        throw precondition_error("reconstruct: shape mismatch between repr and bases");
    }
    const MatrixXc id1 = MatrixXc::Identity(d1, d1);
    const MatrixXc id2 = MatrixXc::Identity(d2, d2);

    MatrixXc r1_dot = MatrixXc::Zero(d1, d1);
    for (int i = 0; i < n1; ++i) r1_dot += repr.r1(i) * basis_a.generators[i];
    MatrixXc r2_dot = MatrixXc::Zero(d2, d2);
    for (int j = 0; j < n2; ++j) r2_dot += repr.r2(j) * basis_b.generators[j];

    MatrixXc m = kron(id1, id2) / static_cast<double>(d1 * d2);
    m += std::sqrt((d1 - 1) / (2.0 * d1)) * kron(r1_dot, id2 / static_cast<double>(d2));
    m += std::sqrt((d2 - 1) / (2.0 * d2)) * kron(id1 / static_cast<double>(d1), r2_dot);
    for (int i = 0; i < n1; ++i) {
        MatrixXc row_sum = MatrixXc::Zero(d2, d2);
        for (int j = 0; j < n2; ++j) row_sum += repr.T(i, j) * basis_b.generators[j];
        m += 0.25 * kron(basis_a.generators[i], row_sum);
    }

    ReconstructResult out;
    Eigen::SelfAdjointEigenSolver<MatrixXc> solver((m + m.adjoint()) / 2.0);
    out.min_eigenvalue = solver.eigenvalues().minCoeff();
    out.psd = out.min_eigenvalue >= -kStateTol;
    out.matrix = std::move(m);
    return out;
}

struct CorrelationNormReport {
    bool square = false;             // d1 == d2; the norm bounds below apply only then
    double t_op_norm = 0.0;          // largest singular value of T
    double t_op_norm_limit = 0.0;    // 2(d-1)/d
    bool t_op_norm_pass = false;
    double tr_ttt = 0.0;             // tr[T^t T]
    double purity_combination = 0.0; // ||r1||^2 + ||r2||^2 + d^2/(4(d-1)) tr[T^t T]
    double purity_combination_limit = 0.0;  // d+1, equality for pure states
    bool purity_combination_pass = false;
};

/// Evaluates the correlation-matrix norm bounds. Singular values come from
/// the symmetric eigensystem of T^t T.
inline CorrelationNormReport correlation_norm_checks(const BlochRepr& repr, double tol = 1e-9) {
    CorrelationNormReport report;
    const MatrixXr ttt = repr.T.transpose() * repr.T;
    const SymEigenSystem sys = symmetric_eigensystem(ttt);
    report.t_op_norm = std::sqrt(std::max(0.0, sys.values(0)));
    report.tr_ttt = ttt.trace();
    report.square = repr.d1 == repr.d2;
    if (report.square) {
        const double d = static_cast<double>(repr.d1);
        report.t_op_norm_limit = 2.0 * (d - 1.0) / d;
        report.t_op_norm_pass = report.t_op_norm <= report.t_op_norm_limit + tol;
        report.purity_combination =
            repr.r1.squaredNorm() + repr.r2.squaredNorm() + d * d / (4.0 * (d - 1.0)) * report.tr_ttt;
        report.purity_combination_limit = d + 1.0;
        report.purity_combination_pass =
            report.purity_combination <= report.purity_combination_limit + tol;
    }
    return report;
}

} // namespace qdiscord

#endif
