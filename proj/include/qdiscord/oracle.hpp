#ifndef QDISCORD_ORACLE_HPP
#define QDISCORD_ORACLE_HPP

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "qdiscord/common.hpp"
#include "qdiscord/discord.hpp"
#include "qdiscord/qstate.hpp"
#include "qdiscord/rng.hpp"

namespace qdiscord {

// Brute-force verifier for the eigenvalue formula. For a fixed measurement
// basis on the second subsystem the nearest quantum-classical state is the
// dephasing of rho in that basis, so the search space collapses to the
// d2-dimensional unitary group.

namespace detail {

inline void require_orthonormal_columns(const MatrixXc& u, const char* where) {
    const MatrixXc gram = u.adjoint() * u;
    const double dev = (gram - MatrixXc::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
    if (dev > 1e-10) {
        throw precondition_error(std::string(where) + ": basis columns not orthonormal (deviation " +
                                 std::to_string(dev) + ")");
    }
}

// rho viewed as a d1 x d1 grid of d2 x d2 blocks.
inline std::vector<MatrixXc> state_blocks(const DensityMatrix& rho) {
    const int d1 = rho.d1();
    const int d2 = rho.d2();
    std::vector<MatrixXc> blocks(static_cast<std::size_t>(d1) * d1);
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d1; ++j)
            blocks[i * d1 + j] = rho.matrix.block(i * d2, j * d2, d2, d2);
    return blocks;
}

// A_k = (I (x) <k|) rho (I (x) |k>) for each basis column k.
inline std::vector<MatrixXc> measured_blocks(const std::vector<MatrixXc>& blocks, int d1,
                                             const MatrixXc& basis) {
    std::vector<MatrixXc> out(basis.cols());
    for (int k = 0; k < basis.cols(); ++k) {
        const VectorXc v = basis.col(k);
        MatrixXc a(d1, d1);
        for (int i = 0; i < d1; ++i)
            for (int j = 0; j < d1; ++j) a(i, j) = v.dot(blocks[i * d1 + j] * v);
        out[k] = std::move(a);
    }
    return out;
}

// tr[rho^2] - sum_k tr[A_k^2]; equals the squared HS distance to the
// dephased state.
inline double disturbance_from_blocks(double purity_value, const std::vector<MatrixXc>& blocks,
                                      int d1, const MatrixXc& basis) {
    const auto measured = measured_blocks(blocks, d1, basis);
    double acc = 0.0;
    for (const auto& a : measured) acc += trace_product(a, a).real();
    return std::max(0.0, purity_value - acc);
}

inline MatrixXc two_level_basis(double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex e_plus = std::polar(1.0, phi);
    const Complex e_minus = std::polar(1.0, -phi);
    MatrixXc u(2, 2);
    u(0, 0) = Complex(c, 0.0);
    u(1, 0) = s * e_plus;
    u(0, 1) = -s * e_minus;
    u(1, 1) = Complex(c, 0.0);
    return u;
}

// exp(A) for anti-Hermitian A via the spectral form of -iA.
inline MatrixXc anti_hermitian_exp(const MatrixXc& a) {
    const MatrixXc h = Complex(0.0, -1.0) * a;
    Eigen::SelfAdjointEigenSolver<MatrixXc> es((h + h.adjoint()) / 2.0);
    const VectorXr lambda = es.eigenvalues();
    MatrixXc phases = MatrixXc::Zero(lambda.size(), lambda.size());
    for (int i = 0; i < lambda.size(); ++i) phases(i, i) = std::polar(1.0, lambda(i));
    return es.eigenvectors() * phases * es.eigenvectors().adjoint();
}

} // namespace detail

/// Closest quantum-classical state for a fixed measurement basis on the
/// second subsystem: chi = sum_k A_k (x) |k><k| with A_k = (I (x) <k|) rho
/// (I (x) |k>).
inline DensityMatrix dephase(const DensityMatrix& rho, const MatrixXc& basis) {
    require_bipartite(rho, "dephase");
    const int d2 = rho.d2();
    if (basis.rows() != d2 || basis.cols() != d2) {
        throw precondition_error("dephase: basis must be square of the second subsystem dimension");
    }
    detail::require_orthonormal_columns(basis, "dephase");
    const auto blocks = detail::state_blocks(rho);
    const auto measured = detail::measured_blocks(blocks, rho.d1(), basis);
    MatrixXc chi = MatrixXc::Zero(rho.order(), rho.order());
    for (int k = 0; k < d2; ++k) {
        chi += kron(measured[k], basis.col(k) * basis.col(k).adjoint());
    }
    return DensityMatrix{rho.dims, std::move(chi)};
}

/// Squared HS distance from rho to its dephasing in `basis`, computed in the
/// cheaper trace form. Debug builds cross-check against the direct distance.
inline double disturbance(const DensityMatrix& rho, const MatrixXc& basis) {
    require_bipartite(rho, "disturbance");
    detail::require_orthonormal_columns(basis, "disturbance");
    const auto blocks = detail::state_blocks(rho);
    const double value = detail::disturbance_from_blocks(purity(rho), blocks, rho.d1(), basis);
#ifndef NDEBUG
    const double direct = hs_distance_sq(rho, dephase(rho, basis));
    assert(std::abs(value - direct) < 1e-10);
#endif
    return value;
}

struct OracleConfig {
    int restarts = 32;
    std::uint64_t seed = 1729;   // fixed default; all randomness derives from it
    int grid_resolution = 400;   // d2 = 2 grid step is pi / grid_resolution per angle
    int max_iters = 2000;
    double tol = 1e-12;          // relative improvement threshold per window
};

struct OracleResult {
    double value = std::numeric_limits<double>::infinity();
    MatrixXc best_basis;
    int restarts_used = 0;
    bool converged = false;
    std::vector<double> per_restart_values;
};

namespace detail {

// Exhaustive two-angle grid over measurement bases of a qubit, then a
// Nelder-Mead polish from the best grid point. The two-angle landscape is
// cheap, which makes the d2 = 2 comparisons deterministic instead of
// probabilistic.
inline OracleResult minimize_qubit(const DensityMatrix& rho, const OracleConfig& config) {
    const auto blocks = state_blocks(rho);
    const int d1 = rho.d1();
    const double p = purity(rho);
    auto objective = [&](double theta, double phi) {
        return disturbance_from_blocks(p, blocks, d1, two_level_basis(theta, phi));
    };

    const int res = std::max(8, config.grid_resolution);
    const double step = M_PI / res;
    double best_f = std::numeric_limits<double>::infinity();
    double best_theta = 0.0, best_phi = 0.0;
    for (int it = 0; it <= res; ++it) {
        const double theta = it * step;
        for (int ip = 0; ip < 2 * res; ++ip) {
            const double phi = ip * step;
            const double f = objective(theta, phi);
            if (f < best_f) {
                best_f = f;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }

    // Nelder-Mead on the angles
    struct Point {
        double theta, phi, f;
    };
    auto make_point = [&](double t, double ph) { return Point{t, ph, objective(t, ph)}; };
    std::array<Point, 3> simplex = {make_point(best_theta, best_phi),
                                    make_point(best_theta + step / 2.0, best_phi),
                                    make_point(best_theta, best_phi + step / 2.0)};
    for (int iter = 0; iter < 400; ++iter) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Point& a, const Point& b) { return a.f < b.f; });
        if (simplex[2].f - simplex[0].f < 1e-16 * (1.0 + std::abs(simplex[0].f))) break;
        const double ct = (simplex[0].theta + simplex[1].theta) / 2.0;
        const double cp = (simplex[0].phi + simplex[1].phi) / 2.0;
        const Point reflected = make_point(2.0 * ct - simplex[2].theta, 2.0 * cp - simplex[2].phi);
        if (reflected.f < simplex[0].f) {
            const Point expanded =
                make_point(3.0 * ct - 2.0 * simplex[2].theta, 3.0 * cp - 2.0 * simplex[2].phi);
            simplex[2] = (expanded.f < reflected.f) ? expanded : reflected;
        } else if (reflected.f < simplex[1].f) {
            simplex[2] = reflected;
        } else {
            const Point contracted = make_point((ct + simplex[2].theta) / 2.0,
                                                (cp + simplex[2].phi) / 2.0);
            if (contracted.f < simplex[2].f) {
                simplex[2] = contracted;
            } else {
                for (int i = 1; i < 3; ++i) {
                    simplex[i] = make_point((simplex[i].theta + simplex[0].theta) / 2.0,
                                            (simplex[i].phi + simplex[0].phi) / 2.0);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(),
              [](const Point& a, const Point& b) { return a.f < b.f; });

    OracleResult result;
    result.value = simplex[0].f;
    result.best_basis = two_level_basis(simplex[0].theta, simplex[0].phi);
    result.restarts_used = 1;
    result.converged = true;
    result.per_restart_values = {simplex[0].f};
    return result;
}

// Randomized multiplicative descent on the unitary group: U <- U exp(A)
// with A a random anti-Hermitian step of adaptive magnitude.
inline OracleResult minimize_unitary(const DensityMatrix& rho, const OracleConfig& config) {
    const auto blocks = state_blocks(rho);
    const int d1 = rho.d1();
    const int d2 = rho.d2();
    const double p = purity(rho);

    OracleResult result;
    result.restarts_used = std::max(1, config.restarts);
    for (int r = 0; r < result.restarts_used; ++r) {
        Rng rng(Rng::derive(config.seed, static_cast<std::uint64_t>(r)));
        MatrixXc u = random_unitary(d2, rng);
        double f = disturbance_from_blocks(p, blocks, d1, u);
        double sigma = 0.3;
        int rejects = 0;
        bool converged = false;
        double window_start_f = f;
        for (int iter = 1; iter <= config.max_iters; ++iter) {
            MatrixXc m(d2, d2);
            for (int i = 0; i < d2; ++i)
                for (int j = 0; j < d2; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
            const MatrixXc a = sigma * 0.5 * (m - m.adjoint());
            MatrixXc candidate = u * anti_hermitian_exp(a);
            const double fc = disturbance_from_blocks(p, blocks, d1, candidate);
            if (fc < f) {
                u = std::move(candidate);
                f = fc;
                rejects = 0;
            } else if (++rejects >= 8) {
                sigma *= 0.5;
                rejects = 0;
            }
            if (iter % 100 == 0) {
                // purge drift from repeated exponentiation
                Eigen::HouseholderQR<MatrixXc> qr(u);
                MatrixXc q = qr.householderQ();
                const MatrixXc rr = qr.matrixQR().triangularView<Eigen::Upper>();
                for (int j = 0; j < d2; ++j) {
                    const Complex diag = rr(j, j);
                    const double mag = std::abs(diag);
                    q.col(j) *= (mag > 0.0) ? diag / mag : Complex(1.0, 0.0);
                }
                u = std::move(q);
                f = disturbance_from_blocks(p, blocks, d1, u);
                const double improvement = window_start_f - f;
                if (improvement < config.tol * std::max(window_start_f, 1e-30)) {
                    converged = true;
                    break;
                }
                window_start_f = f;
            }
            if (sigma < 1e-9) {
                converged = true;
                break;
            }
        }
        result.per_restart_values.push_back(f);
        if (f < result.value) {
            result.value = f;
            result.best_basis = u;
            result.converged = converged;
        }
    }
    return result;
}

} // namespace detail

/// Minimizes the disturbance over measurement bases. Deterministic per seed;
/// restarts are independent given their derived seeds, and the returned value
/// is monotone in the restart count.
inline OracleResult minimize(const DensityMatrix& rho, const OracleConfig& config = {}) {
    require_bipartite(rho, "minimize");
    if (rho.d2() == 2) {
        return detail::minimize_qubit(rho, config);
    }
    return detail::minimize_unitary(rho, config);
}

struct CompareResult {
    double formula = 0.0;
    double oracle = 0.0;
    double gap = 0.0;  // oracle - formula; the oracle upper-bounds the true minimum
    OracleResult oracle_detail;
    ClosestStateResult closest;
};

/// Runs the eigenvalue formula and the variational oracle side by side. The
/// formula can never exceed the oracle beyond numerical tolerance; a larger
/// violation is an internal contract failure.
inline CompareResult compare(const DensityMatrix& rho, const OracleConfig& config = {}) {
    CompareResult out;
    out.formula = geometric_discord(rho).value;
    out.oracle_detail = minimize(rho, config);
    out.oracle = out.oracle_detail.value;
    out.gap = out.oracle - out.formula;
    if (out.gap < -1e-6) {
        throw contract_error("compare: formula exceeds the oracle value by " +
                             std::to_string(-out.gap));
    }
    out.closest = closest_qc_state(rho);
    return out;
}

} // namespace qdiscord

#endif
