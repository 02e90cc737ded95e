#ifndef QDISCORD_QSTATE_HPP
#define QDISCORD_QSTATE_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "qdiscord/common.hpp"
#include "qdiscord/rng.hpp"

namespace qdiscord {

// DensityMatrix invariants: Hermitian and unit trace within kStateTol,
// eigenvalues >= -kStateTol. The PSD slack accepts floating-point dust from
// generator arithmetic without admitting genuinely invalid states.
inline constexpr double kStateTol = 1e-10;

/// Complex Hermitian PSD trace-one matrix with subsystem dimension metadata.
/// `dims` lists the tensor factors left to right; their product equals the
/// matrix order. Bipartite states have dims = {d1, d2}.
struct DensityMatrix {
    std::vector<int> dims;
    MatrixXc matrix;

    int order() const { return static_cast<int>(matrix.rows()); }
    int d1() const { return dims.at(0); }
    int d2() const { return dims.at(1); }
    bool bipartite() const { return dims.size() == 2; }
};

struct StateViolation {
    std::string invariant;  // "dims" | "hermitian" | "trace" | "psd"
    double magnitude = 0.0;
};

/// Eigen-decomposition of a complex Hermitian matrix, eigenvalues sorted in
/// decreasing order (degenerate values adjacent), eigenvectors in matching
/// column order.
struct EigenSystem {
    VectorXr values;
    MatrixXc vectors;
};

/// Same contract for a real symmetric matrix.
struct SymEigenSystem {
    VectorXr values;
    MatrixXr vectors;
};

inline EigenSystem hermitian_eigensystem(const MatrixXc& h) {
    if (h.rows() != h.cols()) {
        throw precondition_error("hermitian_eigensystem: matrix must be square");
    }
    const double dev = hermiticity_deviation(h);
    if (dev > kStateTol) {
        throw contract_error("hermitian_eigensystem: input deviates from Hermitian by " + std::to_string(dev));
    }
    Eigen::SelfAdjointEigenSolver<MatrixXc> solver((h + h.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success) {
        throw contract_error("hermitian_eigensystem: decomposition failed");
    }
    EigenSystem sys;
    sys.values = solver.eigenvalues().reverse();
    sys.vectors = solver.eigenvectors().rowwise().reverse();
    return sys;
}

inline SymEigenSystem symmetric_eigensystem(const MatrixXr& s) {
    if (s.rows() != s.cols()) {
        throw precondition_error("symmetric_eigensystem: matrix must be square");
    }
    Eigen::SelfAdjointEigenSolver<MatrixXr> solver((s + s.transpose()) / 2.0);
    if (solver.info() != Eigen::Success) {
        throw contract_error("symmetric_eigensystem: decomposition failed");
    }
    SymEigenSystem sys;
    sys.values = solver.eigenvalues().reverse();
    sys.vectors = solver.eigenvectors().rowwise().reverse();
    return sys;
}

inline std::vector<StateViolation> state_violations(const std::vector<int>& dims,
                                                    const MatrixXc& m,
                                                    double tol = kStateTol) {
    std::vector<StateViolation> report;
    long long product = 1;
    for (int d : dims) product *= d;
    if (dims.empty() || product != m.rows() || m.rows() != m.cols()) {
        report.push_back({"dims", static_cast<double>(product - m.rows())});
        return report;
    }
    const double herm = hermiticity_deviation(m);
    if (herm > tol) report.push_back({"hermitian", herm});
    const double tr_dev = std::abs(m.trace() - Complex(1.0, 0.0));
    if (tr_dev > tol) report.push_back({"trace", tr_dev});
    if (herm <= tol) {
        Eigen::SelfAdjointEigenSolver<MatrixXc> solver((m + m.adjoint()) / 2.0);
        const double min_eig = solver.eigenvalues().minCoeff();
        if (min_eig < -tol) report.push_back({"psd", -min_eig});
    }
    return report;
}

inline DensityMatrix make_density_matrix(std::vector<int> dims, MatrixXc m, double tol = kStateTol) {
    const auto report = state_violations(dims, m, tol);
    if (!report.empty()) {
        std::string msg = "make_density_matrix: invalid state:";
        for (const auto& v : report) {
            msg += " " + v.invariant + "(" + std::to_string(v.magnitude) + ")";
        }
        throw precondition_error(msg);
    }
    return DensityMatrix{std::move(dims), std::move(m)};
}

inline void require_bipartite(const DensityMatrix& rho, const char* where) {
    if (!rho.bipartite()) {
        throw precondition_error(std::string(where) + ": state must be bipartite (dims = {d1, d2})");
    }
}

/// Traces out one subsystem of a bipartite state; `keep` is 1 or 2.
inline DensityMatrix partial_trace(const DensityMatrix& rho, int keep) {
    require_bipartite(rho, "partial_trace");
    if (keep != 1 && keep != 2) {
        throw precondition_error("partial_trace: keep must be 1 or 2");
    }
    const int d1 = rho.d1();
    const int d2 = rho.d2();
    if (keep == 1) {
        MatrixXc out = MatrixXc::Zero(d1, d1);
        for (int i = 0; i < d1; ++i)
            for (int j = 0; j < d1; ++j)
                for (int a = 0; a < d2; ++a)
                    out(i, j) += rho.matrix(i * d2 + a, j * d2 + a);
        return DensityMatrix{{d1}, std::move(out)};
    }
    MatrixXc out = MatrixXc::Zero(d2, d2);
    for (int a = 0; a < d2; ++a)
        for (int b = 0; b < d2; ++b)
            for (int i = 0; i < d1; ++i)
                out(a, b) += rho.matrix(i * d2 + a, i * d2 + b);
    return DensityMatrix{{d2}, std::move(out)};
}

/// Exchanges the two tensor factors: dims {d1,d2} -> {d2,d1}. Computing the
/// discord of the swapped state gives the left (first-subsystem) variant.
inline DensityMatrix swap_subsystems(const DensityMatrix& rho) {
    require_bipartite(rho, "swap_subsystems");
    const int d1 = rho.d1();
    const int d2 = rho.d2();
    MatrixXc out(d1 * d2, d1 * d2);
    for (int i = 0; i < d1; ++i)
        for (int a = 0; a < d2; ++a)
            for (int j = 0; j < d1; ++j)
                for (int b = 0; b < d2; ++b)
                    out(a * d1 + i, b * d1 + j) = rho.matrix(i * d2 + a, j * d2 + b);
    return DensityMatrix{{d2, d1}, std::move(out)};
}

inline double purity(const DensityMatrix& rho) {
    return trace_product(rho.matrix, rho.matrix).real();
}

/// Squared Hilbert-Schmidt distance tr[(A-B)^2].
inline double hs_distance_sq(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dims != b.dims) {
        throw precondition_error("hs_distance_sq: dimension mismatch");
    }
    const MatrixXc diff = a.matrix - b.matrix;
    return trace_product(diff, diff).real();
}

/// The maximally entangled state (1/sqrt(d)) sum_k |k>|k> on d x d.
inline DensityMatrix ghz_state(int d) {
    if (d < 2) {
        throw precondition_error("ghz_state: dimension must be >= 2");
    }
    VectorXc psi = VectorXc::Zero(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k) psi(k * d + k) = Complex(amp, 0.0);
    return DensityMatrix{{d, d}, psi * psi.adjoint()};
}

inline VectorXc random_unit_vector(int n, Rng& rng) {
    VectorXc v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(rng.normal(), rng.normal());
    return v / v.norm();
}

/// Haar-random unitary via QR of a complex Ginibre matrix with the standard
/// phase fix on the R diagonal.
inline MatrixXc random_unitary(int n, Rng& rng) {
    MatrixXc z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = Complex(rng.normal(), rng.normal());
    Eigen::HouseholderQR<MatrixXc> qr(z);
    MatrixXc q = qr.householderQ();
    const MatrixXc r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return q;
}

/// Ginibre-style random state of the requested rank on the given dims.
inline DensityMatrix random_state(std::vector<int> dims, int rank, std::uint64_t seed) {
    long long n = 1;
    for (int d : dims) n *= d;
    if (rank < 1 || rank > n) {
        throw precondition_error("random_state: rank must be in [1, " + std::to_string(n) + "]");
    }
    Rng rng(seed);
    MatrixXc g(n, rank);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
    MatrixXc m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix{std::move(dims), std::move(m)};
}

/// Rank-one state from a rotation-invariant distribution on unit vectors.
inline DensityMatrix random_pure(int d1, int d2, std::uint64_t seed) {
    if (d1 < 2 || d2 < 2) {
        throw precondition_error("random_pure: both dimensions must be >= 2");
    }
    Rng rng(seed);
    const VectorXc psi = random_unit_vector(d1 * d2, rng);
    return DensityMatrix{{d1, d2}, psi * psi.adjoint()};
}

inline DensityMatrix random_mixed(int d1, int d2, int rank, std::uint64_t seed) {
    if (d1 < 2 || d2 < 2) {
        throw precondition_error("random_mixed: both dimensions must be >= 2");
    }
    return random_state({d1, d2}, rank, seed);
}

struct SeparableComponent {
    double weight = 0.0;
    DensityMatrix first;
    DensityMatrix second;
};

/// Convex mixture of product states: sum_k beta_k rho1_k (x) rho2_k.
inline DensityMatrix separable_mixture(const std::vector<SeparableComponent>& components) {
    if (components.empty()) {
        throw precondition_error("separable_mixture: needs at least one component");
    }
    double weight_sum = 0.0;
    for (const auto& c : components) {
        if (c.weight <= 0.0) {
            throw precondition_error("separable_mixture: weights must be positive");
        }
        weight_sum += c.weight;
    }
    if (std::abs(weight_sum - 1.0) > 1e-12) {
        throw precondition_error("separable_mixture: weights must sum to 1, got " + std::to_string(weight_sum));
    }
    const int d1 = components.front().first.order();
    const int d2 = components.front().second.order();
    MatrixXc m = MatrixXc::Zero(d1 * d2, d1 * d2);
    for (const auto& c : components) {
        if (c.first.order() != d1 || c.second.order() != d2) {
            throw precondition_error("separable_mixture: component dimensions disagree");
        }
        m += c.weight * kron(c.first.matrix, c.second.matrix);
    }
    return DensityMatrix{{d1, d2}, std::move(m)};
}

/// Quantum-classical state sum_k alpha_k sigma_k (x) |k><k| with {|k>} drawn
/// from an orthonormal family on the second subsystem. sigmas and alphas may
/// have fewer than d2 entries; the basis must supply one vector per term.
inline DensityMatrix quantum_classical_state(const std::vector<DensityMatrix>& sigmas,
                                             const std::vector<double>& alphas,
                                             const std::vector<VectorXc>& basis_vectors) {
    if (sigmas.empty() || sigmas.size() != alphas.size() || basis_vectors.size() < sigmas.size()) {
        throw precondition_error("quantum_classical_state: need matching sigmas/alphas and enough basis vectors");
    }
    double sum = 0.0;
    for (double a : alphas) {
        if (a < 0.0) throw precondition_error("quantum_classical_state: weights must be nonnegative");
        sum += a;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw precondition_error("quantum_classical_state: weights must sum to 1");
    }
    const int d2 = static_cast<int>(basis_vectors.front().size());
    for (std::size_t i = 0; i < basis_vectors.size(); ++i) {
        if (static_cast<int>(basis_vectors[i].size()) != d2) {
            throw precondition_error("quantum_classical_state: basis vectors must share one dimension");
        }
        for (std::size_t j = i; j < basis_vectors.size(); ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            const double dev = std::abs(basis_vectors[i].dot(basis_vectors[j]) - Complex(target, 0.0));
            if (dev > kStateTol) {
                throw precondition_error("quantum_classical_state: basis not orthonormal (deviation " +
                                         std::to_string(dev) + ")");
            }
        }
    }
    const int d1 = sigmas.front().order();
    MatrixXc m = MatrixXc::Zero(d1 * d2, d1 * d2);
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
        if (sigmas[k].order() != d1) {
            throw precondition_error("quantum_classical_state: sigma dimensions disagree");
        }
        const MatrixXc proj = basis_vectors[k] * basis_vectors[k].adjoint();
        m += alphas[k] * kron(sigmas[k].matrix, proj);
    }
    return DensityMatrix{{d1, d2}, std::move(m)};
}

inline void require_pure(const DensityMatrix& rho, const char* where, double tol = 1e-8) {
    const double p = purity(rho);
    if (std::abs(p - 1.0) > tol) {
        throw precondition_error(std::string(where) + ": state must be pure, purity = " + std::to_string(p));
    }
}

/// Concurrence of a pure bipartite state, sqrt(2(1 - tr[rho_reduced^2])).
/// Both reduced states give the same value by the Schmidt theorem.
inline double concurrence_pure(const DensityMatrix& psi) {
    require_bipartite(psi, "concurrence_pure");
    require_pure(psi, "concurrence_pure");
    const double p = purity(partial_trace(psi, 1));
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - p)));
}

/// Concurrence rescaled to 1 for maximally entangled states:
/// C = sqrt(2(d-1)/d) * C_normalized with d = min{d1, d2}.
inline double normalized_concurrence_pure(const DensityMatrix& psi) {
    require_bipartite(psi, "normalized_concurrence_pure");
    const double c = concurrence_pure(psi);
    const double dk = static_cast<double>(std::min(psi.d1(), psi.d2()));
    return c / std::sqrt(2.0 * (dk - 1.0) / dk);
}

/// Partial transpose over the second subsystem.
inline MatrixXc partial_transpose_second(const DensityMatrix& rho) {
    require_bipartite(rho, "partial_transpose_second");
    const int d1 = rho.d1();
    const int d2 = rho.d2();
    MatrixXc out(d1 * d2, d1 * d2);
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d1; ++j)
            for (int a = 0; a < d2; ++a)
                for (int b = 0; b < d2; ++b)
                    out(i * d2 + a, j * d2 + b) = rho.matrix(i * d2 + b, j * d2 + a);
    return out;
}

/// Sum of the absolute values of the negative eigenvalues of the partial
/// transpose. Invariant under the choice of transposed subsystem.
inline double negativity(const DensityMatrix& rho) {
    const EigenSystem sys = hermitian_eigensystem(partial_transpose_second(rho));
    double neg = 0.0;
    for (int i = 0; i < sys.values.size(); ++i) {
        if (sys.values(i) < 0.0) neg += -sys.values(i);
    }
    return neg;
}

} // namespace qdiscord

#endif
