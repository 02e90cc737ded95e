#ifndef QDISCORD_IO_HPP
#define QDISCORD_IO_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "qdiscord/common.hpp"
#include "qdiscord/discord.hpp"
#include "qdiscord/oracle.hpp"
#include "qdiscord/qstate.hpp"

namespace qdiscord {

using nlohmann::json;

inline constexpr int kReportSchemaVersion = 1;

struct StateMetadata {
    std::string label;
    std::string generator;
    std::optional<std::uint64_t> seed;
};

inline std::string format_g17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// FNV-1a hash of the canonical serialization (dims plus every matrix entry
/// at 17 significant digits), so identical states get identical digests.
inline std::string state_digest(const DensityMatrix& rho) {
    std::string canon = "dims:";
    for (int d : rho.dims) canon += std::to_string(d) + ",";
    canon += ";m:";
    for (int i = 0; i < rho.matrix.rows(); ++i) {
        for (int j = 0; j < rho.matrix.cols(); ++j) {
            canon += format_g17(rho.matrix(i, j).real()) + "," +
                     format_g17(rho.matrix(i, j).imag()) + ";";
        }
    }
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline json state_to_json(const DensityMatrix& rho, const StateMetadata& meta = {}) {
    json j;
    j["dims"] = rho.dims;
    json m = json::array();
    for (int i = 0; i < rho.matrix.rows(); ++i) {
        for (int k = 0; k < rho.matrix.cols(); ++k) {
            m.push_back({rho.matrix(i, k).real(), rho.matrix(i, k).imag()});
        }
    }
    j["matrix"] = std::move(m);
    if (!meta.label.empty() || !meta.generator.empty() || meta.seed) {
        json md;
        if (!meta.label.empty()) md["label"] = meta.label;
        if (!meta.generator.empty()) md["generator"] = meta.generator;
        if (meta.seed) md["seed"] = *meta.seed;
        j["metadata"] = std::move(md);
    }
    return j;
}

/// Parses and validates a StateFile document. Malformed structure or a
/// matrix failing the density-matrix invariants raises a precondition error
/// whose message lists each violated invariant with its magnitude.
inline DensityMatrix state_from_json(const json& j, StateMetadata* meta_out = nullptr) {
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 2) {
        throw precondition_error("state file: 'dims' must be an array of two integers");
    }
    std::vector<int> dims = j["dims"].get<std::vector<int>>();
    for (int d : dims) {
        if (d < 2) throw precondition_error("state file: subsystem dimensions must be >= 2");
    }
    const long long order = static_cast<long long>(dims[0]) * dims[1];
    if (!j.contains("matrix") || !j["matrix"].is_array() ||
        static_cast<long long>(j["matrix"].size()) != order * order) {
        throw precondition_error("state file: 'matrix' must hold " + std::to_string(order * order) +
                                 " [re, im] pairs (row-major)");
    }
    MatrixXc m(order, order);
    long long idx = 0;
    for (const auto& entry : j["matrix"]) {
        if (!entry.is_array() || entry.size() != 2) {
            throw precondition_error("state file: matrix entries must be [re, im] pairs");
        }
        m(idx / order, idx % order) = Complex(entry[0].get<double>(), entry[1].get<double>());
        ++idx;
    }
    const auto violations = state_violations(dims, m);
    if (!violations.empty()) {
        std::string msg = "state file: matrix is not a valid density matrix:";
        for (const auto& v : violations) {
            msg += " " + v.invariant + " (deviation " + format_g17(v.magnitude) + ")";
        }
        throw precondition_error(msg);
    }
    if (meta_out && j.contains("metadata")) {
        const auto& md = j["metadata"];
        if (md.contains("label")) meta_out->label = md["label"].get<std::string>();
        if (md.contains("generator")) meta_out->generator = md["generator"].get<std::string>();
        if (md.contains("seed")) meta_out->seed = md["seed"].get<std::uint64_t>();
    }
    return DensityMatrix{std::move(dims), std::move(m)};
}

inline void write_state_file(const std::string& path, const DensityMatrix& rho,
                             const StateMetadata& meta = {}) {
    std::ofstream out(path);
    if (!out) throw precondition_error("write_state_file: cannot open " + path);
    out << state_to_json(rho, meta).dump(2) << "\n";
}

inline DensityMatrix load_state_file(const std::string& path, StateMetadata* meta_out = nullptr) {
    std::ifstream in(path);
    if (!in) throw precondition_error("load_state_file: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw precondition_error(std::string("load_state_file: invalid JSON: ") + e.what());
    }
    return state_from_json(j, meta_out);
}

inline json discord_to_json(const DiscordResult& result) {
    json j;
    j["value"] = result.value;
    j["trace_g"] = result.trace_g;
    j["top_eigenvalue_sum"] = result.top_eigenvalue_sum;
    json eigs = json::array();
    for (int i = 0; i < result.g_eigenvalues.size(); ++i) eigs.push_back(result.g_eigenvalues(i));
    j["g_eigenvalues"] = std::move(eigs);
    return j;
}

inline json bounds_to_json(const BoundsReport& b) {
    return json{{"lower_thm3", b.lower_thm3},
                {"upper_thm3", b.upper_thm3},
                {"upper_thm2_refined", b.upper_thm2_refined},
                {"upper_thm2_ceiling", b.upper_thm2_ceiling},
                {"j1", b.j1},
                {"j2", b.j2}};
}

inline json closest_to_json(const ClosestStateResult& c) {
    json j;
    j["achieved_distance_sq"] = c.achieved_distance_sq;
    j["feasible"] = c.feasible;
    j["winning_sign"] = c.winning_sign;
    j["projector_deviation"] = c.projector_deviation;
    j["boundary_degenerate"] = c.boundary_degenerate;
    j["sigma_min_eigenvalues"] = c.sigma_min_eigenvalues;
    return j;
}

inline json oracle_to_json(const OracleResult& o) {
    json j;
    j["value"] = o.value;
    j["restarts_used"] = o.restarts_used;
    j["converged"] = o.converged;
    j["per_restart_values"] = o.per_restart_values;
    json basis = json::array();
    for (int i = 0; i < o.best_basis.rows(); ++i) {
        for (int k = 0; k < o.best_basis.cols(); ++k) {
            basis.push_back({o.best_basis(i, k).real(), o.best_basis(i, k).imag()});
        }
    }
    j["best_basis"] = std::move(basis);
    return j;
}

/// Assembles the versioned ReportFile document.
inline json make_report(const DensityMatrix& rho, const DiscordResult& discord,
                        const std::optional<BoundsReport>& bounds,
                        const std::optional<ClosestStateResult>& closest,
                        const std::optional<OracleResult>& oracle) {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool_version"] = kVersion;
    j["input_digest"] = state_digest(rho);
    j["dims"] = rho.dims;
    j["discord"] = discord_to_json(discord);
    if (bounds) j["bounds"] = bounds_to_json(*bounds);
    if (closest) j["closest"] = closest_to_json(*closest);
    if (oracle) {
        j["oracle"] = oracle_to_json(*oracle);
        j["oracle"]["gap"] = oracle->value - discord.value;
    }
    return j;
}

} // namespace qdiscord

#endif
