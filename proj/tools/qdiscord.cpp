// Command-line interface: state generation, discord reports, frame
// construction, and reproducible sweeps. Every randomized command takes an
// explicit --seed (default 1729); nothing depends on the wall clock.
//
// Exit codes: 0 success, 2 invalid input, 3 infeasible construction,
// 4 internal contract violation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdiscord/discord.hpp"
#include "qdiscord/frames.hpp"
#include "qdiscord/io.hpp"
#include "qdiscord/oracle.hpp"
#include "qdiscord/qstate.hpp"
#include "qdiscord/sweep.hpp"

namespace {

using namespace qdiscord;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitContract = 4;

struct GenOptions {
    std::string family;
    int d = 0;
    int d1 = 0;
    int d2 = 0;
    int rank = 0;
    int terms = 4;
    std::uint64_t seed = 1729;
    std::string out = "state.json";
    std::string label;
};

DensityMatrix generate_state(const GenOptions& opt) {
    if (opt.family == "ghz") {
        if (opt.d < 2) throw precondition_error("gen ghz: --d must be >= 2");
        return ghz_state(opt.d);
    }
    if (opt.family == "pure") {
        return random_pure(opt.d1, opt.d2, opt.seed);
    }
    if (opt.family == "mixed") {
        const int rank = opt.rank > 0 ? opt.rank : opt.d1 * opt.d2;
        return random_mixed(opt.d1, opt.d2, rank, opt.seed);
    }
    if (opt.family == "separable") {
        if (opt.d < 2) throw precondition_error("gen separable: --d must be >= 2");
        Rng rng(opt.seed);
        std::vector<double> weights(opt.terms);
        double total = 0.0;
        for (auto& w : weights) {
            w = -std::log(1.0 - rng.uniform());
            total += w;
        }
        std::vector<SeparableComponent> components;
        for (int t = 0; t < opt.terms; ++t) {
            components.push_back({weights[t] / total, random_state({opt.d}, opt.d, rng.raw()),
                                  random_state({opt.d}, opt.d, rng.raw())});
        }
        return separable_mixture(components);
    }
    if (opt.family == "qc") {
        if (opt.d1 < 2 || opt.d2 < 2) throw precondition_error("gen qc: --d1/--d2 must be >= 2");
        Rng rng(opt.seed);
        std::vector<DensityMatrix> sigmas;
        std::vector<double> alphas(opt.d2);
        double total = 0.0;
        for (int k = 0; k < opt.d2; ++k) {
            sigmas.push_back(random_state({opt.d1}, opt.d1, rng.raw()));
            alphas[k] = -std::log(1.0 - rng.uniform());
            total += alphas[k];
        }
        for (auto& a : alphas) a /= total;
        const MatrixXc u = random_unitary(opt.d2, rng);
        std::vector<VectorXc> basis;
        for (int k = 0; k < opt.d2; ++k) basis.push_back(u.col(k));
        return quantum_classical_state(sigmas, alphas, basis);
    }
    if (opt.family == "product") {
        if (opt.d1 < 2 || opt.d2 < 2) throw precondition_error("gen product: --d1/--d2 must be >= 2");
        Rng rng(opt.seed);
        return separable_mixture(
            {{1.0, random_state({opt.d1}, opt.d1, rng.raw()), random_state({opt.d2}, opt.d2, rng.raw())}});
    }
    throw precondition_error("gen: unknown family '" + opt.family +
                             "' (expected ghz|pure|mixed|separable|qc|product)");
}

int cmd_gen(const GenOptions& opt) {
    const DensityMatrix rho = generate_state(opt);
    StateMetadata meta;
    meta.generator = opt.family;
    meta.seed = opt.seed;
    meta.label = opt.label;
    write_state_file(opt.out, rho, meta);
    std::cout << "wrote " << opt.out << " dims " << rho.d1() << "x" << rho.d2() << " digest "
              << state_digest(rho) << "\n";
    return kExitOk;
}

struct DiscordOptions {
    std::string input;
    bool bounds = false;
    bool closest = false;
    bool oracle = false;
    int restarts = 32;
    std::uint64_t seed = 1729;
    bool as_json = false;
    std::string out;
};

int cmd_discord(const DiscordOptions& opt) {
    const DensityMatrix rho = load_state_file(opt.input);
    const DiscordResult result = geometric_discord(rho);

    std::optional<BoundsReport> bounds;
    if (opt.bounds) bounds = discord_bounds(rho);
    std::optional<ClosestStateResult> closest;
    if (opt.closest) closest = closest_qc_state(rho);
    std::optional<OracleResult> oracle;
    if (opt.oracle) {
        OracleConfig oc;
        oc.restarts = opt.restarts;
        oc.seed = opt.seed;
        oracle = minimize(rho, oc);
    }

    std::ostringstream text;
    if (opt.as_json) {
        text << make_report(rho, result, bounds, closest, oracle).dump(2) << "\n";
    } else {
        text << "input: " << opt.input << " (dims " << rho.d1() << "x" << rho.d2() << ", digest "
             << state_digest(rho) << ")\n";
        text << "discord: " << format_g17(result.value) << "\n";
        text << "trace_g: " << format_g17(result.trace_g)
             << "  top_eigenvalue_sum: " << format_g17(result.top_eigenvalue_sum) << "\n";
        text << "g_eigenvalues:";
        for (int i = 0; i < result.g_eigenvalues.size(); ++i)
            text << " " << format_g17(result.g_eigenvalues(i));
        text << "\n";
        if (bounds) {
            text << "bounds: lower_thm3=" << format_g17(bounds->lower_thm3)
                 << " upper_thm3=" << format_g17(bounds->upper_thm3)
                 << " upper_thm2_refined=" << format_g17(bounds->upper_thm2_refined)
                 << " upper_thm2_ceiling=" << format_g17(bounds->upper_thm2_ceiling)
                 << " j1=" << format_g17(bounds->j1) << " j2=" << format_g17(bounds->j2) << "\n";
        }
        if (closest) {
            text << "closest: achieved_distance_sq=" << format_g17(closest->achieved_distance_sq)
                 << " feasible=" << (closest->feasible ? "true" : "false")
                 << " winning_sign=" << closest->winning_sign
                 << " boundary_degenerate=" << (closest->boundary_degenerate ? "true" : "false")
                 << "\n";
        }
        if (oracle) {
            text << "oracle: value=" << format_g17(oracle->value)
                 << " gap=" << format_g17(oracle->value - result.value)
                 << " restarts=" << oracle->restarts_used
                 << " converged=" << (oracle->converged ? "true" : "false") << "\n";
        }
    }

    if (!opt.out.empty()) {
        std::ofstream f(opt.out);
        if (!f) throw precondition_error("discord: cannot open output file " + opt.out);
        f << text.str();
    } else {
        std::cout << text.str();
    }
    return kExitOk;
}

struct FrameOptions {
    int d = 0;
    bool paper = false;
    bool general = false;
    bool check = false;
};

int cmd_frame(const FrameOptions& opt) {
    if (opt.d < 2) throw precondition_error("frame: --d must be >= 2");
    SimplexFrame frame;
    if (opt.paper) {
        const SignFrameResult res = sign_pattern_frame(opt.d, canonical_axes(opt.d));
        if (!res.feasible) {
            std::cerr << "infeasible: " << res.failure << "\n";
            return kExitInfeasible;
        }
        frame = res.frame;
    } else {
        frame = regular_simplex_frame(opt.d, canonical_axes(opt.d));
    }

    for (int k = 0; k < frame.d; ++k) {
        std::cout << "y" << (k + 1) << ":";
        for (int i = 0; i < frame.vectors[k].size(); ++i)
            std::cout << " " << format_g17(frame.vectors[k](i));
        std::cout << "\n";
    }
    const FrameValidation v = validate_frame(frame.vectors);
    if (opt.check) {
        std::cout << "check: sum_deviation=" << format_g17(v.sum_deviation)
                  << " max_norm_deviation=" << format_g17(v.max_norm_deviation)
                  << " max_dot_deviation=" << format_g17(v.max_dot_deviation)
                  << " pass=" << (v.pass ? "true" : "false") << "\n";
    }
    return v.pass ? kExitOk : kExitContract;
}

struct SweepOptions {
    std::string dims = "2x2";
    int count = 50;
    std::uint64_t seed = 1729;
    std::string family = "mixed";
    std::string out;
    bool as_json = false;
    bool no_oracle = false;
    int restarts = 32;
};

std::vector<std::pair<int, int>> parse_dims_list(const std::string& spec) {
    std::vector<std::pair<int, int>> dims;
    std::stringstream ss(spec);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const auto x = cell.find('x');
        if (x == std::string::npos) {
            throw precondition_error("sweep: cell '" + cell + "' must look like 2x2");
        }
        dims.emplace_back(std::stoi(cell.substr(0, x)), std::stoi(cell.substr(x + 1)));
    }
    if (dims.empty()) throw precondition_error("sweep: --dims list is empty");
    return dims;
}

int cmd_sweep(const SweepOptions& opt) {
    SweepConfig config;
    config.dims = parse_dims_list(opt.dims);
    config.count = opt.count;
    config.seed = opt.seed;
    config.family = opt.family;
    config.run_oracle = !opt.no_oracle;
    config.oracle.restarts = opt.restarts;

    const SweepTable table = run_sweep(config);
    const std::string body = opt.as_json ? sweep_to_json(table).dump(2) + "\n" : sweep_to_csv(table);
    if (!opt.out.empty()) {
        std::ofstream f(opt.out);
        if (!f) throw precondition_error("sweep: cannot open output file " + opt.out);
        f << body;
        std::cout << "wrote " << opt.out << " rows=" << table.summary.rows
                  << " max_abs_gap_d2_qubit=" << format_g17(table.summary.max_abs_gap_d2_qubit)
                  << " min_gap=" << format_g17(table.summary.min_gap) << "\n";
    } else {
        std::cout << body;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric quantum discord of bipartite qudit states"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a state file");
    gen_cmd->add_option("family", gen.family, "ghz|pure|mixed|separable|qc|product")->required();
    gen_cmd->add_option("--d", gen.d, "dimension for ghz/separable families");
    gen_cmd->add_option("--d1", gen.d1, "first subsystem dimension");
    gen_cmd->add_option("--d2", gen.d2, "second subsystem dimension");
    gen_cmd->add_option("--rank", gen.rank, "rank for the mixed family (default full)");
    gen_cmd->add_option("--terms", gen.terms, "product terms for the separable family");
    gen_cmd->add_option("--seed", gen.seed, "RNG seed");
    gen_cmd->add_option("--out", gen.out, "output path (default state.json)");
    gen_cmd->add_option("--label", gen.label, "metadata label");

    DiscordOptions dis;
    auto* dis_cmd = app.add_subcommand("discord", "Compute the geometric discord of a state file");
    dis_cmd->add_option("input", dis.input, "state file path")->required();
    dis_cmd->add_flag("--bounds", dis.bounds, "include the bound family");
    dis_cmd->add_flag("--closest", dis.closest, "include the closest quantum-classical state");
    dis_cmd->add_flag("--oracle", dis.oracle, "include the variational oracle comparison");
    dis_cmd->add_option("--restarts", dis.restarts, "oracle restarts");
    dis_cmd->add_option("--seed", dis.seed, "oracle seed");
    dis_cmd->add_flag("--json", dis.as_json, "emit the JSON report");
    dis_cmd->add_option("--out", dis.out, "write the report to a file");

    FrameOptions fr;
    auto* fr_cmd = app.add_subcommand("frame", "Construct and validate a simplex frame");
    fr_cmd->add_option("--d", fr.d, "frame size")->required();
    fr_cmd->add_flag("--paper", fr.paper, "use the +-1 sign-pattern construction");
    fr_cmd->add_flag("--general", fr.general, "use the general simplex construction (default)");
    fr_cmd->add_flag("--check", fr.check, "print the validation report");

    SweepOptions sw;
    auto* sw_cmd = app.add_subcommand("sweep", "Run a reproducible formula-vs-oracle sweep");
    sw_cmd->add_option("--dims", sw.dims, "comma-separated cells, e.g. 2x2,3x3");
    sw_cmd->add_option("--count", sw.count, "states per cell");
    sw_cmd->add_option("--seed", sw.seed, "base seed");
    sw_cmd->add_option("--family", sw.family, "mixed|separable|pure");
    sw_cmd->add_option("--out", sw.out, "output path (stdout when omitted)");
    sw_cmd->add_flag("--json", sw.as_json, "emit JSON instead of CSV");
    sw_cmd->add_flag("--no-oracle", sw.no_oracle, "skip the oracle column");
    sw_cmd->add_option("--restarts", sw.restarts, "oracle restarts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen);
        if (dis_cmd->parsed()) return cmd_discord(dis);
        if (fr_cmd->parsed()) return cmd_frame(fr);
        if (sw_cmd->parsed()) return cmd_sweep(sw);
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const contract_error& e) {
        std::cerr << "internal contract violation: " << e.what() << "\n";
        return kExitContract;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContract;
    }
    return kExitOk;
}
