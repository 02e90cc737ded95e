#ifndef QDISCORD_DISCORD_HPP
#define QDISCORD_DISCORD_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qdiscord/basis.hpp"
#include "qdiscord/common.hpp"
#include "qdiscord/frames.hpp"
#include "qdiscord/qstate.hpp"
#include "qdiscord/repr.hpp"

namespace qdiscord {

// Geometric discord here is the squared Hilbert-Schmidt distance to the
// nearest quantum-classical state, with the classical side on the SECOND
// subsystem (right discord). For the left variant, apply swap_subsystems
// first.

/// G = ((d2-1)/(d1 d2)) |r2><r2| + (1/4) T^t T, the positive symmetric
/// operator on R^(d2^2-1) whose spectrum carries the discord.
inline MatrixXr g_operator(const BlochRepr& repr) {
    const double d1 = repr.d1;
    const double d2 = repr.d2;
    if (repr.r2.size() != repr.T.cols()) {
        throw precondition_error("g_operator: inconsistent Bloch representation shapes");
    }
    MatrixXr g = ((d2 - 1.0) / (d1 * d2)) * (repr.r2 * repr.r2.transpose());
    g += 0.25 * (repr.T.transpose() * repr.T);
    return g;
}

struct DiscordResult {
    double value = 0.0;            // sum of eigenvalues d2..d2^2-1 of G
    VectorXr g_eigenvalues;        // descending, length d2^2-1
    double trace_g = 0.0;
    double top_eigenvalue_sum = 0.0;  // sum of the d2-1 largest eigenvalues
};

/// Exact geometric discord from the Bloch data: eigendecompose G and drop
/// the d2-1 largest eigenvalues. Both summation forms are evaluated and must
/// agree to 1e-12; disagreement is an internal contract violation.
inline DiscordResult geometric_discord(const BlochRepr& repr) {
    const MatrixXr g = g_operator(repr);
    const SymEigenSystem sys = symmetric_eigensystem(g);
    DiscordResult out;
    out.g_eigenvalues = sys.values;
    out.trace_g = g.trace();
    const int keep = repr.d2 - 1;
    out.top_eigenvalue_sum = sys.values.head(keep).sum();
    const double tail = sys.values.tail(sys.values.size() - keep).sum();
    if (std::abs((out.trace_g - out.top_eigenvalue_sum) - tail) > 1e-12) {
        throw contract_error("geometric_discord: eigenvalue-sum forms disagree");
    }
    out.value = std::max(0.0, tail);
    return out;
}

inline DiscordResult geometric_discord(const DensityMatrix& rho) {
    require_bipartite(rho, "geometric_discord");
    const auto violations = state_violations(rho.dims, rho.matrix);
    if (!violations.empty()) {
        throw precondition_error("geometric_discord: input is not a valid density matrix (" +
                                 violations.front().invariant + ")");
    }
    const OperatorBasis ba = gell_mann_basis(rho.d1());
    const OperatorBasis bb = gell_mann_basis(rho.d2());
    return geometric_discord(extract(rho, ba, bb));
}

/// Pure two-qubit special case: half the squared concurrence.
inline double pure_two_qubit_discord(const DensityMatrix& psi) {
    if (psi.dims != std::vector<int>{2, 2}) {
        throw precondition_error("pure_two_qubit_discord: state must live on 2 x 2");
    }
    const double c = concurrence_pure(psi);
    return 0.5 * c * c;
}

struct BoundsReport {
    double lower_thm3 = 0.0;
    double upper_thm3 = 0.0;
    double upper_thm2_refined = 0.0;   // ((d2-1)/d2)(1 - ||r2||^2/(d2+1))
    double upper_thm2_ceiling = 0.0;   // (d2-1)/d2
    double j1 = 0.0;
    double j2 = 0.0;

    double min_upper() const {
        return std::min(std::min(upper_thm3, upper_thm2_refined), std::min(j1, j2));
    }
};

/// All general bounds: the correlation-matrix bracket, the reduced-Bloch
/// refinements, and the purity-based J1/J2 uppers. Lower bounds are reported
/// raw (they can be negative).
inline BoundsReport discord_bounds(const BlochRepr& repr) {
    const double d1 = repr.d1;
    const double d2 = repr.d2;
    const MatrixXr ttt = repr.T.transpose() * repr.T;
    const SymEigenSystem sys = symmetric_eigensystem(ttt);
    const double tr_ttt = ttt.trace();
    const double top_lambda = sys.values.head(repr.d2 - 1).sum();
    const double r1_sq = repr.r1.squaredNorm();
    const double r2_sq = repr.r2.squaredNorm();

    BoundsReport b;
    b.lower_thm3 = 0.25 * tr_ttt - 0.25 * top_lambda;
    b.upper_thm3 = std::min(0.25 * tr_ttt,
                            0.25 * tr_ttt + (d2 - 1.0) / (d1 * d2) * r2_sq - 0.25 * top_lambda);
    b.upper_thm2_refined = (d2 - 1.0) / d2 * (1.0 - r2_sq / (d2 + 1.0));
    b.upper_thm2_ceiling = (d2 - 1.0) / d2;
    b.j1 = (d1 * d2 - 1.0) / (d1 * d2) - (d1 - 1.0) / (d1 * d2) * r1_sq -
           (d2 - 1.0) / (d1 * d2) * r2_sq;
    b.j2 = (d1 * d2 - 1.0) / (d1 * d2) - (d1 - 1.0) / (d1 * d2) * r1_sq - 0.25 * top_lambda;
    return b;
}

inline BoundsReport discord_bounds(const DensityMatrix& rho) {
    require_bipartite(rho, "discord_bounds");
    return discord_bounds(extract(rho, gell_mann_basis(rho.d1()), gell_mann_basis(rho.d2())));
}

/// Pure-state upper bound on d x d, ((d-1)/(d(d+1)))(d + C~^2) with C~ the
/// normalized concurrence. Attained on maximally entangled states.
inline double pure_state_upper_bound(const DensityMatrix& psi) {
    require_bipartite(psi, "pure_state_upper_bound");
    if (psi.d1() != psi.d2()) {
        throw precondition_error("pure_state_upper_bound: needs equal subsystem dimensions");
    }
    require_pure(psi, "pure_state_upper_bound");
    const double d = psi.d1();
    const double cn = normalized_concurrence_pure(psi);
    return (d - 1.0) / (d * (d + 1.0)) * (d + cn * cn);
}

struct ClosestStateResult {
    DensityMatrix chi;                  // quantum-classical form; validated iff feasible
    double achieved_distance_sq = 0.0;
    std::vector<double> sigma_min_eigenvalues;
    bool feasible = false;
    int winning_sign = 0;               // sign of the T y_k term that gave the smaller distance
    double projector_deviation = 0.0;   // max ||P_k^2 - P_k||_F over the frame projectors
    bool boundary_degenerate = false;   // eigenvalue tie at the d2-1 / d2 split
};

namespace detail {

// chi = sum_k [alpha_k I/d1 + sqrt((d1-1)/(2d1)) (v_k . Y_A)] (x) P_k with
// P_k the operator whose Bloch vector is y_k. For d2 = 2 every P_k is a
// genuine pure-state projector and chi is the dephasing of rho in that
// basis; for d2 > 2 the construction can leave the state set, which the
// diagnostics report.
inline MatrixXc assemble_qc_candidate(const std::vector<double>& alphas,
                                      const std::vector<VectorXr>& vs,
                                      const std::vector<VectorXr>& ys,
                                      const OperatorBasis& basis_a,
                                      const OperatorBasis& basis_b) {
    const int d1 = basis_a.dim;
    const int d2 = basis_b.dim;
    const double ca = std::sqrt((d1 - 1.0) / (2.0 * d1));
    const double cb = std::sqrt((d2 - 1.0) / (2.0 * d2));
    MatrixXc chi = MatrixXc::Zero(d1 * d2, d1 * d2);
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        MatrixXc left = alphas[k] / d1 * MatrixXc::Identity(d1, d1);
        for (int i = 0; i < d1 * d1 - 1; ++i) left += ca * vs[k](i) * basis_a.generators[i];
        MatrixXc right = MatrixXc::Identity(d2, d2) / static_cast<double>(d2);
        for (int j = 0; j < d2 * d2 - 1; ++j) right += cb * ys[k](j) * basis_b.generators[j];
        chi += kron(left, right);
    }
    return chi;
}

} // namespace detail

/// Explicit closest quantum-classical state: the optimal frame aligns with
/// the top d2-1 eigenvectors of G, the weights are alpha_k = 1/d2 +
/// ((d2-1)/d2)(r2.y_k), and the inner Bloch vectors follow the closed-form
/// optimum. Both signs of the T y_k term are evaluated and the smaller
/// achieved distance wins.
inline ClosestStateResult closest_qc_state(const DensityMatrix& rho) {
    require_bipartite(rho, "closest_qc_state");
    const int d1 = rho.d1();
    const int d2 = rho.d2();
    const OperatorBasis ba = gell_mann_basis(d1);
    const OperatorBasis bb = gell_mann_basis(d2);
    const BlochRepr repr = extract(rho, ba, bb);
    const MatrixXr g = g_operator(repr);
    const SymEigenSystem sys = symmetric_eigensystem(g);
    const SimplexFrame frame = aligned_frame(sys, d2);

    std::vector<double> alphas(d2);
    bool alpha_ok = true;
    for (int k = 0; k < d2; ++k) {
        alphas[k] = 1.0 / d2 + (d2 - 1.0) / d2 * repr.r2.dot(frame.vectors[k]);
        if (alphas[k] < -1e-10) alpha_ok = false;
    }

    const double coeff = 0.5 * std::sqrt(d1 * (d2 - 1.0) / (d2 * (d1 - 1.0)));
    ClosestStateResult best;
    best.achieved_distance_sq = std::numeric_limits<double>::infinity();
    for (int sign : {+1, -1}) {
        std::vector<VectorXr> vs(d2);
        for (int k = 0; k < d2; ++k) {
            vs[k] = repr.r1 / d2 + sign * coeff * (repr.T * frame.vectors[k]);
        }
        MatrixXc chi = detail::assemble_qc_candidate(alphas, vs, frame.vectors, ba, bb);
        const MatrixXc diff = rho.matrix - chi;
        const double dist = trace_product(diff, diff).real();
        if (dist < best.achieved_distance_sq) {
            best.achieved_distance_sq = dist;
            best.winning_sign = sign;
            best.chi = DensityMatrix{{d1, d2}, std::move(chi)};

            best.sigma_min_eigenvalues.assign(d2, 0.0);
            const double ca = std::sqrt((d1 - 1.0) / (2.0 * d1));
            for (int k = 0; k < d2; ++k) {
                MatrixXc m = alphas[k] / d1 * MatrixXc::Identity(d1, d1);
                for (int i = 0; i < d1 * d1 - 1; ++i) m += ca * vs[k](i) * ba.generators[i];
                if (alphas[k] > 1e-12) m /= alphas[k];
                Eigen::SelfAdjointEigenSolver<MatrixXc> es((m + m.adjoint()) / 2.0);
                best.sigma_min_eigenvalues[k] = es.eigenvalues().minCoeff();
            }
        }
    }

    const double cb = std::sqrt((d2 - 1.0) / (2.0 * d2));
    for (int k = 0; k < d2; ++k) {
        MatrixXc p = MatrixXc::Identity(d2, d2) / static_cast<double>(d2);
        for (int j = 0; j < d2 * d2 - 1; ++j) p += cb * frame.vectors[k](j) * bb.generators[j];
        best.projector_deviation =
            std::max(best.projector_deviation, (p * p - p).norm());
    }

    if (d2 * d2 - 1 > d2 - 1) {
        best.boundary_degenerate = std::abs(sys.values(d2 - 2) - sys.values(d2 - 1)) < 1e-10;
    }
    double min_sigma = 0.0;
    for (double e : best.sigma_min_eigenvalues) min_sigma = std::min(min_sigma, e);
    best.feasible = alpha_ok && min_sigma >= -1e-8 && best.projector_deviation <= 1e-8;
    return best;
}

struct SeparableBoundReport {
    double value = 0.0;
    double ceiling = 0.0;        // ((d-1)/d)^2
    bool within_ceiling = false;
    bool pure_product = false;
    bool zero_for_pure = false;  // meaningful only when pure_product
    bool pass = false;
};

/// Sanity report for states built as explicit separable mixtures on d x d:
/// the discord must stay below ((d-1)/d)^2, and vanish for pure products.
inline SeparableBoundReport separable_bound_check(const DensityMatrix& rho_sep, double tol = 1e-9) {
    require_bipartite(rho_sep, "separable_bound_check");
    if (rho_sep.d1() != rho_sep.d2()) {
        throw precondition_error("separable_bound_check: needs equal subsystem dimensions");
    }
    const double d = rho_sep.d1();
    SeparableBoundReport report;
    report.value = geometric_discord(rho_sep).value;
    report.ceiling = (d - 1.0) / d * (d - 1.0) / d;
    report.within_ceiling = report.value <= report.ceiling + tol;
    report.pure_product = std::abs(purity(rho_sep) - 1.0) <= 1e-8;
    report.zero_for_pure = !report.pure_product || report.value <= tol;
    report.pass = report.within_ceiling && report.zero_for_pure;
    return report;
}

} // namespace qdiscord

#endif
