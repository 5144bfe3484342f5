// End-to-end acceptance suite.  Each numbered check prints a single PASS/FAIL
// line; the process exits nonzero if any check fails.  Runs against the same
// public API the CLI uses, plus the CLI binary itself for the determinism
// check (path injected at build time via PF_CLI_PATH).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pf/dist.hpp"
#include "pf/errors.hpp"
#include "pf/oracle.hpp"
#include "pf/solver.hpp"
#include "pf/sweep.hpp"

using namespace pf;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& what,
            const std::string& detail) {
    std::printf("criterion %2d: %s  %s (%s)\n", id, ok ? "PASS" : "FAIL",
                what.c_str(), detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

Channel bench_channel() {
    return validate_channel({{0.9, 0.08, 0.4},
                             {0.025, 0.82, 0.05},
                             {0.075, 0.1, 0.55}});
}

Prior bench_prior_uniform() {
    return validate_prior({1.0 / 3, 1.0 / 3, 1.0 / 3});
}

Prior bench_prior_skewed() { return validate_prior({0.1, 0.3, 0.6}); }

std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> v(n);
    double sum = 0.0;
    std::uniform_real_distribution<double> unif(1e-12, 1.0);
    for (double& x : v) {
        x = -std::log(unif(rng));
        sum += x;
    }
    for (double& x : v) x /= sum;
    return v;
}

PfInstance random_instance(std::mt19937_64& rng, std::size_t m,
                           std::size_t big_k, std::size_t n,
                           double r_fraction) {
    Prior prior = validate_prior(random_simplex(rng, m));
    std::vector<std::vector<double>> s(big_k, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const std::vector<double> col = random_simplex(rng, big_k);
        for (std::size_t k = 0; k < big_k; ++k) s[k][i] = col[k];
    }
    const double r = r_fraction * entropy(prior);
    return make_instance(std::move(prior), validate_channel(s), n, r);
}

// Shared state between the per-step criteria (3, 4, 5) and the KKT/feasibility
// criterion (6): the same batch of converged runs.
struct RunBatch {
    int total_steps = 0;
    double worst_drop = 0.0;          // most negative realized drop
    double worst_identity = 0.0;      // max |drop - KL sum|
    double min_objective = 0.0;       // most negative objective seen
    double worst_pinsker = 0.0;       // most negative drop - pinsker margin
    double worst_kkt = 0.0;
    double worst_feas = 0.0;          // most negative i_xy - R
    int converged_runs = 0;
    int runs = 0;
};

RunBatch run_random_batch() {
    RunBatch batch;
    std::mt19937_64 rng(2024);
    SolveConfig config;
    config.obj_tol = 1e-13;
    config.max_iter = 5000;
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t m = 2 + static_cast<std::size_t>(rng() % 5);   // 2..6
        const std::size_t k = 2 + static_cast<std::size_t>(rng() % 5);   // 2..6
        // keep N >= M so the disclosure target is always attainable
        const std::size_t n = m + static_cast<std::size_t>(rng() % (7 - m));
        const PfInstance inst = random_instance(rng, m, k, n, 0.5);
        SolverState state = init_state(inst, config);
        bool converged = false;
        for (int it = 0; it < config.max_iter; ++it) {
            const DescentReport rep_step = step(state, inst, config);
            ++batch.total_steps;
            batch.worst_drop = std::min(batch.worst_drop, rep_step.realized_drop);
            const double identity =
                std::abs(rep_step.realized_drop -
                         (rep_step.kl_q + rep_step.kl_u + rep_step.kl_r +
                          rep_step.kl_w));
            batch.worst_identity = std::max(batch.worst_identity, identity);
            batch.min_objective = std::min(batch.min_objective, state.objective);
            const double pinsker =
                0.5 * (rep_step.delta_r_l1 * rep_step.delta_r_l1 +
                       rep_step.delta_u_l1 * rep_step.delta_u_l1);
            batch.worst_pinsker = std::min(
                batch.worst_pinsker, rep_step.realized_drop - pinsker);
            if (std::abs(rep_step.realized_drop) < config.obj_tol) {
                converged = true;
                break;
            }
        }
        ++batch.runs;
        if (converged) {
            ++batch.converged_runs;
            // refresh the posterior before measuring residuals, as solve() does
            update_q(state, inst);
            compute_phi(state, inst);
            batch.worst_kkt =
                std::max(batch.worst_kkt, kkt_residuals(state, inst).max());
            const InfoPair info = leakage_and_disclosure(state.u, inst);
            batch.worst_feas = std::min(batch.worst_feas,
                                        info.i_xy - inst.r_threshold);
        }
    }
    return batch;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

}  // namespace

int main() {
    // 1. Full-disclosure endpoint with multi-restart: best trial lands on
    //    (I(X;Y), I(S;Y)) = (H(X), I(S;X)) within 1e-3, in under 5 seconds.
    {
        const auto t0 = std::chrono::steady_clock::now();
        const Prior prior = bench_prior_uniform();
        const double h = entropy(prior);
        const PfInstance inst = make_instance(prior, bench_channel(), 4, h);
        const double i_sx = mutual_information_sx(inst);
        double best_sy = 1e300, best_xy = 0.0;
        for (int trial = 0; trial < 30; ++trial) {
            SolveConfig config;
            config.init_mode =
                trial == 0 ? InitMode::kDiagLike : InitMode::kRandom;
            config.seed = static_cast<std::uint64_t>(trial);
            const SolveResult res = solve(inst, config);
            if (res.converged && res.feasible && res.info.i_sy < best_sy) {
                best_sy = res.info.i_sy;
                best_xy = res.info.i_xy;
            }
        }
        const double dt = seconds_since(t0);
        const bool ok = std::abs(best_xy - h) <= 1e-3 &&
                        std::abs(best_sy - i_sx) <= 1e-3 && dt < 5.0;
        report(1, ok, "full-disclosure endpoint via 30 restarts",
               "|dI(X;Y)| = " + fmt(std::abs(best_xy - h)) +
                   ", |dI(S;Y)| = " + fmt(std::abs(best_sy - i_sx)) + ", " +
                   fmt(dt) + " s");
    }

    // 2. R = 0 drives the leakage to zero on both benchmark priors.
    {
        double worst = 0.0;
        for (const Prior& prior : {bench_prior_uniform(), bench_prior_skewed()}) {
            const PfInstance inst = make_instance(prior, bench_channel(), 4, 0.0);
            const SolveResult res = solve(inst, SolveConfig{});
            worst = std::max(worst, res.converged ? res.info.i_sy : 1.0);
        }
        report(2, worst <= 1e-6, "zero-disclosure solves are fully private",
               "max I(S;Y) = " + fmt(worst));
    }

    const RunBatch batch = run_random_batch();

    // 3. Per-step objective drop matches its KL decomposition on a batch of
    //    random instances (>= 200 steps observed).
    report(3,
           batch.total_steps >= 200 && batch.worst_drop >= -1e-10 &&
               batch.worst_identity <= 1e-8,
           "per-step descent identity on random instances",
           std::to_string(batch.total_steps) +
               " steps, min drop = " + fmt(batch.worst_drop) +
               ", max identity gap = " + fmt(batch.worst_identity));

    // 4. The relaxed objective never goes negative.
    report(4, batch.min_objective >= -1e-12, "objective stays nonnegative",
           "min objective = " + fmt(batch.min_objective));

    // 5. Every drop dominates the Pinsker bound on the iterate movement.
    report(5, batch.worst_pinsker >= -1e-9,
           "drop dominates 0.5*(|dr|_1^2 + |du|_1^2)",
           "worst margin = " + fmt(batch.worst_pinsker));

    // 6. Converged runs satisfy the stationarity residuals and feasibility.
    report(6,
           batch.converged_runs == batch.runs && batch.worst_kkt <= 1e-6 &&
               batch.worst_feas >= -1e-6,
           "stationarity and feasibility at convergence",
           std::to_string(batch.converged_runs) + "/" +
               std::to_string(batch.runs) +
               " converged, max residual = " + fmt(batch.worst_kkt) +
               ", min slack = " + fmt(batch.worst_feas));

    // 7. Solver matches the exhaustive grid oracle on tiny instances.
    {
        const auto t0 = std::chrono::steady_clock::now();
        std::mt19937_64 rng(7);
        double worst_gap = -1e300;
        bool all_found = true;
        for (int rep = 0; rep < 5; ++rep) {
            const PfInstance inst = random_instance(rng, 2, 2, 2, 0.5);
            GridSpec spec;
            spec.step = 0.005;
            const GridResult grid = grid_search(inst, spec);
            all_found = all_found && grid.found;
            double best = 1e300;
            for (int trial = 0; trial < 10; ++trial) {
                SolveConfig config;
                config.init_mode =
                    trial == 0 ? InitMode::kDiagLike : InitMode::kRandom;
                config.seed = 1000 + static_cast<std::uint64_t>(trial);
                const SolveResult res = solve(inst, config);
                if (res.converged && res.feasible) {
                    best = std::min(best, res.info.i_sy);
                }
            }
            worst_gap = std::max(worst_gap, std::abs(best - grid.best_i_sy));
        }
        const double dt = seconds_since(t0);
        report(7, all_found && worst_gap <= 1e-2 && dt < 60.0,
               "solver agrees with the exhaustive grid on 2x2 instances",
               "max |gap| = " + fmt(worst_gap) + ", " + fmt(dt) + " s");
    }

    // 8. Dual function: analytic derivative matches finite differences, and
    //    the root solver leaves |G| at its tolerance.
    {
        std::mt19937_64 rng(17);
        double worst_fd = 0.0;
        double worst_g = 0.0;
        int roots = 0;
        for (int rep = 0; rep < 100; ++rep) {
            const PfInstance inst = random_instance(rng, 4, 3, 4, 0.6);
            SolveConfig config;
            config.init_mode = InitMode::kRandom;  // well-scaled softmax weights
            config.seed = static_cast<std::uint64_t>(rep);
            SolverState s = init_state(inst, config);
            update_q(s, inst);
            compute_phi(s, inst);
            const double lambda = 0.25 * static_cast<double>(1 + rep % 8);
            const double h = 1e-6;
            const GValue g = g_of_lambda(lambda, s, inst);
            const double fd = (g_of_lambda(lambda + h, s, inst).value -
                               g_of_lambda(lambda - h, s, inst).value) /
                              (2.0 * h);
            worst_fd = std::max(
                worst_fd, std::abs(fd - g.derivative) /
                              std::max(std::abs(g.derivative), 1e-9));
            const LambdaResult lr = solve_lambda(s, inst, config);
            if (lr.branch == LambdaBranch::kRoot) {
                ++roots;
                worst_g = std::max(worst_g, std::abs(lr.g_value));
            }
        }
        report(8, worst_fd <= 1e-5 && worst_g <= 1e-10 && roots > 0,
               "dual derivative and root residuals",
               "max FD error = " + fmt(worst_fd) + ", max |G| = " +
                   fmt(worst_g) + " over " + std::to_string(roots) + " roots");
    }

    // 9. The swept trade-off curve is monotone in the leakage.
    {
        SweepConfig config;
        config.num_points = 20;
        config.trials = 8;
        config.solver.seed = 11;
        const std::vector<CurvePoint> points =
            sweep(bench_prior_uniform(), bench_channel(), 4, config);
        const MonotonicityReport rep = curve_is_monotone(points);
        report(9, rep.violations.empty(), "swept curve is monotone",
               std::to_string(rep.violations.size()) +
                   " violations, max = " + fmt(rep.max_violation));
    }

    // 10. The CLI produces byte-identical sweep output for identical seeds.
    {
        const std::string dist = "acceptance_dist.json";
        save_distribution(dist, bench_prior_uniform(), bench_channel());
        const std::string base = std::string(PF_CLI_PATH) +
                                 " sweep --dist " + dist +
                                 " --N 4 --points 6 --trials 4 --seed 5 --out ";
        const int rc1 = std::system((base + "acceptance_a.csv").c_str());
        const int rc2 = std::system((base + "acceptance_b.csv").c_str());
        const std::string a = read_file("acceptance_a.csv");
        const std::string b = read_file("acceptance_b.csv");
        report(10, rc1 == 0 && rc2 == 0 && !a.empty() && a == b,
               "CLI sweep output is reproducible",
               std::to_string(a.size()) + " bytes, identical = " +
                   (a == b ? "yes" : "no"));
        std::remove(dist.c_str());
        std::remove("acceptance_a.csv");
        std::remove("acceptance_b.csv");
    }

    if (g_failures == 0) {
        std::printf("all acceptance checks passed\n");
        return 0;
    }
    std::printf("%d acceptance check(s) failed\n", g_failures);
    return 1;
}
