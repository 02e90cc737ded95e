#ifndef QDISCORD_SWEEP_HPP
#define QDISCORD_SWEEP_HPP

#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qdiscord/io.hpp"
#include "qdiscord/oracle.hpp"

namespace qdiscord {

struct SweepConfig {
    std::vector<std::pair<int, int>> dims;  // one cell per (d1, d2)
    int count = 50;                         // states per cell
    std::uint64_t seed = 1729;
    std::string family = "mixed";  // "mixed" | "separable" | "pure"
    bool run_oracle = true;
    OracleConfig oracle;
};

struct SweepRow {
    int d1 = 0;
    int d2 = 0;
    int index = 0;
    std::string digest;
    double formula = 0.0;
    BoundsReport bounds;
    double oracle = std::numeric_limits<double>::quiet_NaN();
    double gap = std::numeric_limits<double>::quiet_NaN();
    double runtime_seconds = 0.0;
};

struct SweepSummary {
    double max_abs_gap_d2_qubit = 0.0;  // over cells with d2 = 2
    double min_gap = std::numeric_limits<double>::infinity();
    int rows = 0;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    SweepSummary summary;
};

namespace detail {

inline DensityMatrix sweep_state(const std::string& family, int d1, int d2, std::uint64_t seed) {
    if (family == "separable") {
        if (d1 != d2) throw precondition_error("sweep: separable family needs d1 == d2");
        Rng rng(seed);
        const int terms = 4;
        std::vector<SeparableComponent> components;
        std::vector<double> weights(terms);
        double total = 0.0;
        for (int t = 0; t < terms; ++t) {
            weights[t] = -std::log(1.0 - rng.uniform());
            total += weights[t];
        }
        for (int t = 0; t < terms; ++t) {
            components.push_back({weights[t] / total, random_state({d1}, d1, rng.raw()),
                                  random_state({d2}, d2, rng.raw())});
        }
        return separable_mixture(components);
    }
    if (family == "pure") return random_pure(d1, d2, seed);
    if (family == "mixed") return random_mixed(d1, d2, d1 * d2, seed);
    throw precondition_error("sweep: unknown family '" + family + "'");
}

inline std::vector<SweepRow> sweep_cell(const SweepConfig& config, int cell_index) {
    const auto [d1, d2] = config.dims[cell_index];
    std::vector<SweepRow> rows(config.count);
    for (int i = 0; i < config.count; ++i) {
        const auto start = std::chrono::steady_clock::now();
        const std::uint64_t state_seed =
            Rng::derive(config.seed, static_cast<std::uint64_t>(cell_index) * 1000003ULL + i);
        const DensityMatrix rho = sweep_state(config.family, d1, d2, state_seed);
        SweepRow& row = rows[i];
        row.d1 = d1;
        row.d2 = d2;
        row.index = i;
        row.digest = state_digest(rho);
        row.formula = geometric_discord(rho).value;
        row.bounds = discord_bounds(rho);
        if (config.run_oracle) {
            OracleConfig oc = config.oracle;
            oc.seed = Rng::derive(state_seed, 0xabcdULL);
            row.oracle = minimize(rho, oc).value;
            row.gap = row.oracle - row.formula;
        }
        row.runtime_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return rows;
}

} // namespace detail

/// Runs every cell (in parallel; each state seed derives from the cell and
/// index, so the table is identical regardless of scheduling) and collects
/// per-row results plus the gap summary.
inline SweepTable run_sweep(const SweepConfig& config) {
    std::vector<std::future<std::vector<SweepRow>>> futures;
    futures.reserve(config.dims.size());
    for (std::size_t c = 0; c < config.dims.size(); ++c) {
        futures.push_back(std::async(std::launch::async,
                                     [&config, c] { return detail::sweep_cell(config, static_cast<int>(c)); }));
    }
    SweepTable table;
    for (auto& f : futures) {
        auto rows = f.get();
        table.rows.insert(table.rows.end(), rows.begin(), rows.end());
    }
    for (const SweepRow& row : table.rows) {
        ++table.summary.rows;
        if (!std::isnan(row.gap)) {
            table.summary.min_gap = std::min(table.summary.min_gap, row.gap);
            if (row.d2 == 2) {
                table.summary.max_abs_gap_d2_qubit =
                    std::max(table.summary.max_abs_gap_d2_qubit, std::abs(row.gap));
            }
        }
    }
    return table;
}

inline std::string sweep_to_csv(const SweepTable& table) {
    std::ostringstream out;
    out << "d1,d2,index,digest,formula,lower_thm3,upper_thm3,upper_thm2_refined,"
           "upper_thm2_ceiling,j1,j2,oracle,gap,runtime_seconds\n";
    for (const auto& r : table.rows) {
        out << r.d1 << ',' << r.d2 << ',' << r.index << ',' << r.digest << ','
            << format_g17(r.formula) << ',' << format_g17(r.bounds.lower_thm3) << ','
            << format_g17(r.bounds.upper_thm3) << ',' << format_g17(r.bounds.upper_thm2_refined)
            << ',' << format_g17(r.bounds.upper_thm2_ceiling) << ',' << format_g17(r.bounds.j1)
            << ',' << format_g17(r.bounds.j2) << ',' << format_g17(r.oracle) << ','
            << format_g17(r.gap) << ',' << format_g17(r.runtime_seconds) << "\n";
    }
    out << "# summary: rows=" << table.summary.rows
        << " max_abs_gap_d2_qubit=" << format_g17(table.summary.max_abs_gap_d2_qubit)
        << " min_gap=" << format_g17(table.summary.min_gap) << "\n";
    return out.str();
}

inline json sweep_to_json(const SweepTable& table) {
    json rows = json::array();
    for (const auto& r : table.rows) {
        json row;
        row["d1"] = r.d1;
        row["d2"] = r.d2;
        row["index"] = r.index;
        row["digest"] = r.digest;
        row["formula"] = r.formula;
        row["bounds"] = bounds_to_json(r.bounds);
        if (!std::isnan(r.oracle)) {
            row["oracle"] = r.oracle;
            row["gap"] = r.gap;
        }
        row["runtime_seconds"] = r.runtime_seconds;
        rows.push_back(std::move(row));
    }
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool_version"] = kVersion;
    j["rows"] = std::move(rows);
    j["summary"] = {{"rows", table.summary.rows},
                    {"max_abs_gap_d2_qubit", table.summary.max_abs_gap_d2_qubit},
                    {"min_gap", table.summary.min_gap}};
    return j;
}

} // namespace qdiscord

#endif
