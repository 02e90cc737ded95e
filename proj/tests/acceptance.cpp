// Acceptance suite: every release criterion in one binary, one pass/fail
// line per criterion. Exits nonzero if any criterion fails. Artifacts:
//   acceptance_gap_report.csv   gap distribution of the 3x3 formula-vs-oracle run
//   frame_audit_report.txt      deviation reports for the printed sign-pattern tables

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "audit_frames.hpp"
#include "qdiscord/discord.hpp"
#include "qdiscord/frames.hpp"
#include "qdiscord/io.hpp"
#include "qdiscord/oracle.hpp"
#include "qdiscord/qstate.hpp"
#include "qdiscord/repr.hpp"
#include "qdiscord/rng.hpp"
#include "qdiscord/sweep.hpp"

using namespace qdiscord;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& message) {
        if (!condition && ok) {
            ok = false;
            detail = message;
        }
    }
    // informational summary; never overwrites a failure message
    void info(const std::string& message) {
        if (ok) detail = message;
    }
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

DensityMatrix random_separable(int d, int terms, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> w(terms);
    double total = 0.0;
    for (auto& x : w) {
        x = -std::log(1.0 - rng.uniform());
        total += x;
    }
    std::vector<SeparableComponent> components;
    for (int t = 0; t < terms; ++t) {
        components.push_back(
            {w[t] / total, random_state({d}, d, rng.raw()), random_state({d}, d, rng.raw())});
    }
    return separable_mixture(components);
}

DensityMatrix random_product_pure(int d1, int d2, std::uint64_t seed) {
    Rng rng(seed);
    const VectorXc va = random_unit_vector(d1, rng);
    const VectorXc vb = random_unit_vector(d2, rng);
    const VectorXc psi = kron(MatrixXc(va), MatrixXc(vb));
    return DensityMatrix{{d1, d2}, psi * psi.adjoint()};
}

MatrixXr random_psd(int n, Rng& rng) {
    MatrixXr m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
    return m * m.transpose();
}

Check criterion_ghz_exactness() {
    Check c;
    for (int d : {2, 3, 4, 5}) {
        const double value = geometric_discord(ghz_state(d)).value;
        const double expected = (d - 1.0) / d;
        c.require(std::abs(value - expected) < 1e-10,
                  "d=" + std::to_string(d) + " deviates by " + fmt(std::abs(value - expected)));
    }
    return c;
}

Check criterion_pure_two_qubit_law() {
    Check c;
    double max_law = 0.0, max_neg = 0.0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const DensityMatrix psi = random_pure(2, 2, seed);
        const double value = geometric_discord(psi).value;
        const double conc = concurrence_pure(psi);
        const double neg = negativity(psi);
        max_law = std::max(max_law, std::abs(value - 0.5 * conc * conc));
        max_neg = std::max(max_neg, std::abs(conc - 2.0 * neg));
    }
    c.require(max_law < 1e-10, "max |D - C^2/2| = " + fmt(max_law));
    c.require(max_neg < 1e-10, "max |C - 2N| = " + fmt(max_neg));
    c.info("max|D-C^2/2|=" + fmt(max_law) + " max|C-2N|=" + fmt(max_neg));
    return c;
}

Check criterion_two_qubit_oracle_agreement() {
    Check c;
    double max_gap = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const DensityMatrix rho = random_mixed(2, 2, 4, seed);
        const double formula = geometric_discord(rho).value;
        const double oracle = minimize(rho).value;
        max_gap = std::max(max_gap, std::abs(oracle - formula));
    }
    c.require(max_gap < 1e-6, "max |formula - oracle| = " + fmt(max_gap));
    c.info("max|gap|=" + fmt(max_gap) + " over 200 states");
    return c;
}

Check criterion_bound_bracketing() {
    Check c;
    const std::vector<std::pair<int, int>> dims = {{2, 2}, {2, 3}, {3, 2}, {3, 3}};
    for (const auto& [d1, d2] : dims) {
        for (std::uint64_t seed = 0; seed < 500; ++seed) {
            const DensityMatrix rho =
                random_mixed(d1, d2, d1 * d2, Rng::derive(900 + d1 * 10 + d2, seed));
            const double value = geometric_discord(rho).value;
            const BoundsReport b = discord_bounds(rho);
            c.require(b.lower_thm3 - 1e-9 <= value,
                      "lower bound broken at " + std::to_string(d1) + "x" + std::to_string(d2));
            c.require(value <= b.min_upper() + 1e-9,
                      "upper bound broken at " + std::to_string(d1) + "x" + std::to_string(d2));
        }
    }
    c.info("2000 states across four dimension pairs");
    return c;
}

Check criterion_formula_never_exceeds_oracle() {
    Check c;
    SweepConfig config;
    config.dims = {{3, 3}};
    config.count = 100;
    config.seed = 333;
    config.family = "mixed";
    config.run_oracle = true;
    const SweepTable table = run_sweep(config);
    double min_gap = std::numeric_limits<double>::infinity();
    double max_gap = -std::numeric_limits<double>::infinity();
    for (const auto& row : table.rows) {
        min_gap = std::min(min_gap, row.gap);
        max_gap = std::max(max_gap, row.gap);
        c.require(row.gap >= -1e-6, "state " + row.digest + " gap " + fmt(row.gap));
    }
    std::ofstream report("acceptance_gap_report.csv");
    report << sweep_to_csv(table);
    c.info("gap in [" + fmt(min_gap) + ", " + fmt(max_gap) + "], table in acceptance_gap_report.csv");
    return c;
}

Check criterion_separable_ceiling() {
    Check c;
    for (int d : {2, 3}) {
        const double ceiling = (d - 1.0) / d * (d - 1.0) / d;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const double value =
                geometric_discord(random_separable(d, 4, Rng::derive(600 + d, seed))).value;
            c.require(value <= ceiling + 1e-9,
                      "d=" + std::to_string(d) + " value " + fmt(value) + " over ceiling");
        }
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const double value =
                geometric_discord(random_product_pure(d, d, Rng::derive(700 + d, seed))).value;
            c.require(value < 1e-10, "pure product at d=" + std::to_string(d) + " gave " + fmt(value));
        }
    }
    c.info("ceilings 1/4 (d=2) and 4/9 (d=3)");
    return c;
}

Check criterion_frame_projector_suite() {
    Check c;
    for (int d = 2; d <= 8; ++d) {
        const SimplexFrame general = regular_simplex_frame(d, canonical_axes(d));
        c.require(validate_frame(general.vectors).pass,
                  "general frame relations broken at d=" + std::to_string(d));
        Rng rng(4000 + d);
        const MatrixXr g = random_psd(d * d - 1, rng);
        const SimplexFrame aligned = aligned_frame(symmetric_eigensystem(g), d);
        c.require(validate_frame(aligned.vectors).pass,
                  "aligned frame relations broken at d=" + std::to_string(d));
        for (const SimplexFrame& f : {general, aligned}) {
            const MatrixXr pi = frame_projector(f);
            c.require((pi * pi - pi).cwiseAbs().maxCoeff() < 1e-10,
                      "projector not idempotent at d=" + std::to_string(d));
            c.require(std::abs(pi.trace() - (d - 1.0)) < 1e-10,
                      "projector trace off at d=" + std::to_string(d));
        }
    }
    for (int d = 2; d <= 5; ++d) {
        Rng rng(4100 + d);
        for (int trial = 0; trial < 100; ++trial) {
            const MatrixXr g = random_psd(d * d - 1, rng);
            const SymEigenSystem sys = symmetric_eigensystem(g);
            const double attained =
                trace_product(g, frame_projector(aligned_frame(sys, d)));
            c.require(std::abs(attained - sys.values.head(d - 1).sum()) < 1e-10,
                      "maximum missed at d=" + std::to_string(d));
        }
    }
    c.info("d=2..8 relations, 400 maximization draws");
    return c;
}

Check criterion_representation_roundtrip() {
    Check c;
    for (int d1 : {2, 3}) {
        for (int d2 : {2, 3}) {
            const OperatorBasis ba = gell_mann_basis(d1);
            const OperatorBasis bb = gell_mann_basis(d2);
            for (std::uint64_t seed = 0; seed < 50; ++seed) {
                const DensityMatrix rho = random_mixed(d1, d2, d1 * d2, Rng::derive(80, seed));
                const ReconstructResult rec = reconstruct(extract(rho, ba, bb), ba, bb);
                c.require((rec.matrix - rho.matrix).norm() < 1e-10, "round-trip failed");
            }
            for (std::uint64_t seed = 0; seed < 50; ++seed) {
                const DensityMatrix psi = random_pure(d1, d2, Rng::derive(81, seed));
                const BlochRepr repr = extract(psi, ba, bb);
                const double combo = (d1 - 1.0) / (d1 * d2) * repr.r1.squaredNorm() +
                                     (d2 - 1.0) / (d1 * d2) * repr.r2.squaredNorm() +
                                     0.25 * (repr.T.transpose() * repr.T).trace();
                c.require(std::abs(combo - (d1 * d2 - 1.0) / (d1 * d2)) < 1e-9,
                          "pure-state saturation failed");
            }
        }
    }
    const OperatorBasis b3 = gell_mann_basis(3);
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const DensityMatrix rho = random_mixed(3, 3, 9, Rng::derive(82, seed));
        const auto report = correlation_norm_checks(extract(rho, b3, b3));
        c.require(report.t_op_norm <= report.t_op_norm_limit + 1e-9, "operator-norm bound broken");
    }
    c.info("round-trips, saturation, and 500 norm bounds");
    return c;
}

Check criterion_closest_state_attainment() {
    Check c;
    double max_err = 0.0, min_sigma = 0.0;
    for (int d1 : {2, 3}) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const DensityMatrix rho = random_mixed(d1, 2, d1 * 2, Rng::derive(90 + d1, seed));
            const ClosestStateResult res = closest_qc_state(rho);
            const double formula = geometric_discord(rho).value;
            max_err = std::max(max_err, std::abs(res.achieved_distance_sq - formula));
            for (double e : res.sigma_min_eigenvalues) min_sigma = std::min(min_sigma, e);
        }
    }
    c.require(max_err < 1e-8, "max |achieved - formula| = " + fmt(max_err));
    c.require(min_sigma >= -1e-8, "sigma minimum eigenvalue " + fmt(min_sigma));
    c.info("max|achieved-formula|=" + fmt(max_err) + " min sigma eig=" + fmt(min_sigma));
    return c;
}

void archive_frame_report(std::ostream& out, const std::string& name,
                          const std::vector<VectorXr>& vectors) {
    const FrameValidation v = validate_frame(vectors);
    out << name << ": pass=" << (v.pass ? "true" : "false")
        << " sum_deviation=" << format_g17(v.sum_deviation)
        << " max_norm_deviation=" << format_g17(v.max_norm_deviation)
        << " max_dot_deviation=" << format_g17(v.max_dot_deviation) << "\n";
}

Check criterion_sign_table_audit() {
    Check c;
    std::ofstream report("frame_audit_report.txt");
    archive_frame_report(report, "d=2 printed table", qdiscord_tests::audit_frame_d2());
    archive_frame_report(report, "d=3 printed table", qdiscord_tests::audit_frame_d3());
    archive_frame_report(report, "d=4 printed table", qdiscord_tests::audit_frame_d4());
    archive_frame_report(report, "d=5 printed table", qdiscord_tests::audit_frame_d5());
    archive_frame_report(report, "d=6 printed table", qdiscord_tests::audit_frame_d6());

    c.require(validate_frame(qdiscord_tests::audit_frame_d3()).pass, "d=3 table should pass");
    c.require(validate_frame(qdiscord_tests::audit_frame_d4()).pass, "d=4 table should pass");

    const FrameValidation v5 = validate_frame(qdiscord_tests::audit_frame_d5());
    const FrameValidation v6 = validate_frame(qdiscord_tests::audit_frame_d6());
    report << "expectation: the printed d=5 and d=6 tables violate the relations;"
              " the general construction must cover those sizes\n";
    c.require(!v5.pass && v5.max_dot_deviation > 1e-3, "d=5 table unexpectedly passes");
    c.require(!v6.pass && v6.max_dot_deviation > 1e-3, "d=6 table unexpectedly passes");

    for (int d : {5, 6}) {
        c.require(validate_frame(regular_simplex_frame(d, canonical_axes(d)).vectors).pass,
                  "general construction failed at d=" + std::to_string(d));
    }
    c.info("deviations archived in frame_audit_report.txt");
    return c;
}

} // namespace

int main() {
    struct Criterion {
        std::string name;
        double budget_seconds;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria = {
        {"GHZ exactness (d=2..5)", 1.0, criterion_ghz_exactness},
        {"pure two-qubit concurrence law (1000 states)", 10.0, criterion_pure_two_qubit_law},
        {"two-qubit formula vs oracle (200 states)", 120.0, criterion_two_qubit_oracle_agreement},
        {"bound bracketing (500 states x 4 dims)", 60.0, criterion_bound_bracketing},
        {"formula never exceeds oracle (100 3x3 states)", 600.0, criterion_formula_never_exceeds_oracle},
        {"separable ceiling (d=2,3)", 30.0, criterion_separable_ceiling},
        {"frame/projector suite (d=2..8)", 30.0, criterion_frame_projector_suite},
        {"representation round-trip and norms", 60.0, criterion_representation_roundtrip},
        {"closest-state attainment at d2=2", 60.0, criterion_closest_state_attainment},
        {"printed sign-table audit", 1.0, criterion_sign_table_audit},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Check check;
        try {
            check = criteria[i].run();
        } catch (const std::exception& e) {
            check.ok = false;
            check.detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed >= criteria[i].budget_seconds) {
            check.ok = false;
            check.detail += " [over time budget " + fmt(criteria[i].budget_seconds) + "s]";
        }
        std::cout << (check.ok ? "[PASS] " : "[FAIL] ") << (i + 1) << ": " << criteria[i].name
                  << " (" << fmt(elapsed) << "s)";
        if (!check.detail.empty()) std::cout << " -- " << check.detail;
        std::cout << "\n";
        if (!check.ok) ++failures;
    }
    if (failures > 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
