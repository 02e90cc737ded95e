#include <catch2/catch_amalgamated.hpp>

#include "qdiscord/oracle.hpp"
#include "qdiscord/qstate.hpp"
#include "qdiscord/rng.hpp"

using namespace qdiscord;

namespace {

MatrixXc computational_basis(int d) { return MatrixXc::Identity(d, d); }

DensityMatrix random_qc_state(int d1, int d2, std::uint64_t seed, MatrixXc* basis_out = nullptr) {
    Rng rng(seed);
    std::vector<DensityMatrix> sigmas;
    std::vector<double> alphas(d2);
    double total = 0.0;
    for (int k = 0; k < d2; ++k) {
        sigmas.push_back(random_state({d1}, d1, rng.raw()));
        alphas[k] = -std::log(1.0 - rng.uniform());
        total += alphas[k];
    }
    for (auto& a : alphas) a /= total;
    const MatrixXc u = random_unitary(d2, rng);
    if (basis_out) *basis_out = u;
    std::vector<VectorXc> basis;
    for (int k = 0; k < d2; ++k) basis.push_back(u.col(k));
    return quantum_classical_state(sigmas, alphas, basis);
}

} // namespace

TEST_CASE("dephase", "[oracle]") {
    SECTION("a quantum-classical state is a fixed point in its own basis") {
        MatrixXc basis;
        const DensityMatrix chi = random_qc_state(2, 3, 11, &basis);
        const DensityMatrix out = dephase(chi, basis);
        CHECK((out.matrix - chi.matrix).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("GHZ d=2 in the computational basis") {
        const DensityMatrix chi = dephase(ghz_state(2), computational_basis(2));
        MatrixXc expected = MatrixXc::Zero(4, 4);
        expected(0, 0) = 0.5;
        expected(3, 3) = 0.5;
        CHECK((chi.matrix - expected).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(hs_distance_sq(ghz_state(2), chi) == Catch::Approx(0.5).margin(1e-12));
    }
    SECTION("product states dephased in the second factor eigenbasis are unchanged") {
        const DensityMatrix a = random_state({2}, 2, 21);
        const DensityMatrix b = random_state({3}, 3, 22);
        const DensityMatrix prod{{2, 3}, kron(a.matrix, b.matrix)};
        const EigenSystem sys = hermitian_eigensystem(b.matrix);
        const DensityMatrix chi = dephase(prod, sys.vectors);
        CHECK(hs_distance_sq(prod, chi) < 1e-12);
    }
    SECTION("output is always a valid block-diagonal state") {
        Rng rng(5);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const DensityMatrix rho = random_mixed(2, 3, 6, seed);
            const MatrixXc u = random_unitary(3, rng);
            const DensityMatrix chi = dephase(rho, u);
            CHECK(state_violations(chi.dims, chi.matrix).empty());
            // measuring again in the same basis changes nothing
            CHECK(hs_distance_sq(chi, dephase(chi, u)) < 1e-14);
        }
    }
    SECTION("non-orthonormal basis is rejected") {
        MatrixXc bad(2, 2);
        bad << 1, 1, 0, 1;
        CHECK_THROWS_AS(dephase(ghz_state(2), bad), precondition_error);
    }
}

TEST_CASE("disturbance", "[oracle]") {
    SECTION("nonnegative and zero exactly on fixed points") {
        MatrixXc basis;
        const DensityMatrix chi = random_qc_state(3, 3, 2, &basis);
        CHECK(disturbance(chi, basis) < 1e-12);
        CHECK(disturbance(chi, basis) >= -1e-15);
    }
    SECTION("GHZ d=3 in the computational basis gives 2/3") {
        CHECK(disturbance(ghz_state(3), computational_basis(3)) ==
              Catch::Approx(2.0 / 3.0).margin(1e-12));
    }
    SECTION("agrees with the direct distance computation") {
        Rng rng(7);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const DensityMatrix rho = random_mixed(3, 2, 6, seed);
            const MatrixXc u = random_unitary(2, rng);
            CHECK(disturbance(rho, u) ==
                  Catch::Approx(hs_distance_sq(rho, dephase(rho, u))).margin(1e-12));
        }
    }
    SECTION("invariant under column phases and permutations") {
        Rng rng(13);
        const DensityMatrix rho = random_mixed(2, 3, 6, 77);
        const MatrixXc u = random_unitary(3, rng);
        const double base = disturbance(rho, u);

        MatrixXc phased = u;
        for (int k = 0; k < 3; ++k) phased.col(k) *= std::polar(1.0, 0.7 * (k + 1));
        CHECK(disturbance(rho, phased) == Catch::Approx(base).margin(1e-12));

        MatrixXc permuted(3, 3);
        permuted.col(0) = u.col(2);
        permuted.col(1) = u.col(0);
        permuted.col(2) = u.col(1);
        CHECK(disturbance(rho, permuted) == Catch::Approx(base).margin(1e-12));
    }
}

TEST_CASE("minimize at d2=2 (grid + polish)", "[oracle]") {
    SECTION("GHZ d=2 reaches 1/2") {
        const OracleResult res = minimize(ghz_state(2));
        CHECK(res.value == Catch::Approx(0.5).margin(1e-6));
        CHECK(res.converged);
    }
    SECTION("agrees with the formula on random mixed two-qubit states") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const DensityMatrix rho = random_mixed(2, 2, 4, seed);
            const double formula = geometric_discord(rho).value;
            const OracleResult res = minimize(rho);
            CHECK(std::abs(res.value - formula) < 1e-6);
        }
    }
    SECTION("quantum-classical states reach zero") {
        const DensityMatrix chi = random_qc_state(2, 2, 5);
        CHECK(minimize(chi).value < 1e-8);
    }
    SECTION("deterministic") {
        const DensityMatrix rho = random_mixed(2, 2, 4, 9);
        CHECK(minimize(rho).value == minimize(rho).value);
    }
    SECTION("the returned basis reproduces the returned value") {
        const DensityMatrix rho = random_mixed(3, 2, 6, 14);
        const OracleResult res = minimize(rho);
        CHECK(res.value ==
              Catch::Approx(hs_distance_sq(rho, dephase(rho, res.best_basis))).margin(1e-12));
    }
}

TEST_CASE("minimize at d2>=3 (restarted unitary descent)", "[oracle]") {
    OracleConfig quick;
    quick.restarts = 8;
    SECTION("GHZ d=3 reaches 2/3") {
        const OracleResult res = minimize(ghz_state(3), quick);
        CHECK(res.value == Catch::Approx(2.0 / 3.0).margin(1e-6));
    }
    SECTION("quantum-classical states reach zero") {
        const DensityMatrix chi = random_qc_state(2, 3, 6);
        CHECK(minimize(chi, quick).value < 1e-8);
    }
    SECTION("monotone in the restart count with a shared seed schedule") {
        const DensityMatrix rho = random_mixed(2, 3, 6, 31);
        OracleConfig small = quick;
        small.restarts = 2;
        OracleConfig large = quick;
        large.restarts = 6;
        const OracleResult rs = minimize(rho, small);
        const OracleResult rl = minimize(rho, large);
        REQUIRE(rl.per_restart_values.size() == 6);
        for (int r = 0; r < 2; ++r) {
            CHECK(rl.per_restart_values[r] == rs.per_restart_values[r]);
        }
        CHECK(rl.value <= rs.value);
    }
    SECTION("deterministic per seed") {
        const DensityMatrix rho = random_mixed(2, 3, 6, 32);
        CHECK(minimize(rho, quick).value == minimize(rho, quick).value);
    }
}

TEST_CASE("compare runs both routes side by side", "[oracle]") {
    SECTION("random two-qubit states agree to 1e-6") {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const CompareResult res = compare(random_mixed(2, 2, 4, seed));
            CHECK(std::abs(res.gap) < 1e-6);
            CHECK(res.closest.achieved_distance_sq == Catch::Approx(res.formula).margin(1e-8));
        }
    }
    SECTION("GHZ d=3 agrees through both paths") {
        OracleConfig quick;
        quick.restarts = 4;
        const CompareResult res = compare(ghz_state(3), quick);
        CHECK(res.formula == Catch::Approx(2.0 / 3.0).margin(1e-12));
        CHECK(res.oracle == Catch::Approx(2.0 / 3.0).margin(1e-6));
    }
    SECTION("the oracle never undercuts the formula") {
        OracleConfig quick;
        quick.restarts = 4;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const CompareResult res = compare(random_mixed(3, 3, 9, seed), quick);
            CHECK(res.gap >= -1e-6);
        }
    }
}
