// pf: privacy funnel solver CLI
//
// Subcommands: validate, solve, sweep, oracle.  Inputs come either from a
// distribution JSON (--dist) or from a delimited dataset (--csv with
// --s-cols/--x-cols).  Exit codes: 0 success, 1 input error,
// 2 non-convergence, 3 internal guard.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pf/dist.hpp"
#include "pf/errors.hpp"
#include "pf/ingest.hpp"
#include "pf/oracle.hpp"
#include "pf/solver.hpp"
#include "pf/sweep.hpp"

namespace {

struct InputOptions {
    std::string dist_path;
    std::string csv_path;
    std::string s_cols;
    std::string x_cols;
    std::string delimiter = ",";
    double perturb = 1e-3;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--dist", in.dist_path, "distribution JSON file");
    cmd->add_option("--csv", in.csv_path, "delimited dataset file");
    cmd->add_option("--s-cols", in.s_cols, "comma-separated private columns");
    cmd->add_option("--x-cols", in.x_cols, "comma-separated public columns");
    cmd->add_option("--delimiter", in.delimiter, "field delimiter (default ,)");
    cmd->add_option("--perturb", in.perturb,
                    "additive perturbation per joint cell (default 1e-3)");
}

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(csv);
    while (std::getline(ss, field, ',')) {
        if (!field.empty()) out.push_back(field);
    }
    return out;
}

std::pair<pf::Prior, pf::Channel> load_input(const InputOptions& in) {
    if (!in.dist_path.empty()) {
        return pf::load_distribution(in.dist_path);
    }
    if (in.csv_path.empty()) {
        throw pf::ValidationError("provide --dist or --csv");
    }
    pf::IngestSpec spec;
    spec.path = in.csv_path;
    spec.s_columns = split_names(in.s_cols);
    spec.x_columns = split_names(in.x_cols);
    spec.perturbation = in.perturb;
    spec.delimiter = in.delimiter.empty() ? ',' : in.delimiter[0];
    pf::IngestResult result = pf::ingest(spec);
    for (const std::string& w : result.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    return {std::move(result.prior), std::move(result.channel)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Privacy funnel solver (alternating minimization with "
                 "closed-form updates)"};
    app.require_subcommand(1);

    InputOptions in_validate, in_solve, in_sweep, in_oracle;

    // validate
    auto* cmd_validate = app.add_subcommand(
        "validate", "check a distribution and print H(X), I(S;X)");
    add_input_options(cmd_validate, in_validate);
    std::string validate_out;
    cmd_validate->add_option("--out", validate_out,
                             "write the normalized distribution JSON here");

    // solve
    auto* cmd_solve =
        app.add_subcommand("solve", "single solve at a fixed threshold R");
    add_input_options(cmd_solve, in_solve);
    double solve_r = 0.0;
    std::size_t solve_n = 0;
    int solve_max_iter = 500;
    double solve_tol = 1e-10;
    std::uint64_t solve_seed = 0;
    std::string solve_init = "diag";
    std::string solve_trace;
    cmd_solve->add_option("--R", solve_r, "disclosure threshold (nats)")
        ->required();
    cmd_solve->add_option("--N", solve_n, "codebook size (default |X|+1)");
    cmd_solve->add_option("--max-iter", solve_max_iter, "iteration cap");
    cmd_solve->add_option("--tol", solve_tol, "objective-change tolerance");
    cmd_solve->add_option("--seed", solve_seed, "seed for random init");
    cmd_solve->add_option("--init", solve_init, "init mode: diag | random");
    cmd_solve->add_option("--trace", solve_trace, "write iteration trace CSV");

    // sweep
    auto* cmd_sweep =
        app.add_subcommand("sweep", "trace the PF curve over R in [0, H(X)]");
    add_input_options(cmd_sweep, in_sweep);
    std::size_t sweep_n = 0;
    int sweep_points = 50;
    int sweep_trials = 30;
    int sweep_max_iter = 500;
    double sweep_tol = 1e-10;
    std::uint64_t sweep_seed = 0;
    std::string sweep_out;
    std::string sweep_json;
    cmd_sweep->add_option("--N", sweep_n, "codebook size (default |X|+1)");
    cmd_sweep->add_option("--points", sweep_points, "R-grid size");
    cmd_sweep->add_option("--trials", sweep_trials, "restarts per point");
    cmd_sweep->add_option("--max-iter", sweep_max_iter, "iteration cap");
    cmd_sweep->add_option("--tol", sweep_tol, "objective-change tolerance");
    cmd_sweep->add_option("--seed", sweep_seed, "base seed for restarts");
    cmd_sweep->add_option("--out", sweep_out, "curve CSV output path");
    cmd_sweep->add_option("--json", sweep_json,
                          "also write per-trial records as JSON");

    // oracle
    auto* cmd_oracle = app.add_subcommand(
        "oracle", "grid-search a tiny instance and compare with a solve");
    add_input_options(cmd_oracle, in_oracle);
    double oracle_r = 0.0;
    std::size_t oracle_n = 2;
    double oracle_step = 0.005;
    int oracle_trials = 10;
    std::uint64_t oracle_seed = 0;
    cmd_oracle->add_option("--R", oracle_r, "disclosure threshold (nats)")
        ->required();
    cmd_oracle->add_option("--N", oracle_n, "codebook size");
    cmd_oracle->add_option("--step", oracle_step, "grid resolution");
    cmd_oracle->add_option("--trials", oracle_trials, "solver restarts");
    cmd_oracle->add_option("--seed", oracle_seed, "base seed for restarts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_validate->parsed()) {
            auto [prior, channel] = load_input(in_validate);
            const pf::PfInstance inst =
                pf::make_instance(prior, channel, prior.size(), 0.0);
            std::printf("M = %zu, K = %zu\n", prior.size(),
                        channel.num_secrets());
            std::printf("H(X)   = %.12g nats\n", pf::entropy(prior));
            std::printf("I(S;X) = %.12g nats\n",
                        pf::mutual_information_sx(inst));
            if (!validate_out.empty()) {
                pf::save_distribution(validate_out, prior, channel);
            }
            return 0;
        }

        if (cmd_solve->parsed()) {
            auto [prior, channel] = load_input(in_solve);
            const std::size_t n = solve_n ? solve_n : prior.size() + 1;
            const pf::PfInstance inst =
                pf::make_instance(prior, channel, n, solve_r);
            pf::SolveConfig config;
            config.max_iter = solve_max_iter;
            config.obj_tol = solve_tol;
            config.seed = solve_seed;
            config.init_mode = solve_init == "random" ? pf::InitMode::kRandom
                                                      : pf::InitMode::kDiagLike;
            const pf::SolveResult result = pf::solve(inst, config);
            const pf::KktResiduals kkt =
                pf::kkt_residuals(result.state, inst);
            std::printf("I(S;Y)     = %.12g nats\n", result.info.i_sy);
            std::printf("I(X;Y)     = %.12g nats (target R = %.12g)\n",
                        result.info.i_xy, solve_r);
            std::printf("objective  = %.12g nats\n", result.state.objective);
            std::printf("iterations = %d (%s)\n", result.iterations,
                        result.converged ? "converged" : "hit max-iter");
            std::printf("kkt max    = %.3g\n", kkt.max());
            if (!solve_trace.empty()) {
                pf::write_trace_csv(result.trace, solve_trace);
            }
            return result.converged && result.feasible ? 0 : 2;
        }

        if (cmd_sweep->parsed()) {
            auto [prior, channel] = load_input(in_sweep);
            const std::size_t n = sweep_n ? sweep_n : prior.size() + 1;
            pf::SweepConfig config;
            config.num_points = sweep_points;
            config.trials = sweep_trials;
            config.solver.max_iter = sweep_max_iter;
            config.solver.obj_tol = sweep_tol;
            config.solver.seed = sweep_seed;
            config.keep_trial_records = !sweep_json.empty();
            const std::vector<pf::CurvePoint> points =
                pf::sweep(prior, channel, n, config);
            if (sweep_out.empty()) {
                std::cout << pf::curve_csv_string(points);
            } else {
                pf::write_curve_csv(points, sweep_out);
            }
            if (!sweep_json.empty()) pf::write_sweep_json(points, sweep_json);
            for (const pf::CurvePoint& p : points) {
                if (!p.converged) return 2;
            }
            return 0;
        }

        if (cmd_oracle->parsed()) {
            auto [prior, channel] = load_input(in_oracle);
            const pf::PfInstance inst =
                pf::make_instance(prior, channel, oracle_n, oracle_r);
            pf::GridSpec spec;
            spec.step = oracle_step;
            const pf::GridResult grid = pf::grid_search(inst, spec);

            double best = 0.0;
            bool any = false;
            for (int trial = 0; trial < oracle_trials; ++trial) {
                pf::SolveConfig config;
                config.init_mode = trial == 0 ? pf::InitMode::kDiagLike
                                              : pf::InitMode::kRandom;
                config.seed = oracle_seed + static_cast<std::uint64_t>(trial);
                const pf::SolveResult result = pf::solve(inst, config);
                if (result.converged && result.feasible &&
                    (!any || result.info.i_sy < best)) {
                    best = result.info.i_sy;
                    any = true;
                }
            }
            std::printf("grid points scanned  = %zu (feasible %zu)\n",
                        grid.points_scanned, grid.points_feasible);
            std::printf("grid best I(S;Y)     = %.12g nats\n", grid.best_i_sy);
            if (any) {
                std::printf("solver best I(S;Y)   = %.12g nats\n", best);
                std::printf("difference           = %.3g nats\n",
                            best - grid.best_i_sy);
            } else {
                std::printf("solver: no converged feasible trial\n");
                return 2;
            }
            return 0;
        }
    } catch (const pf::TooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const pf::SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
