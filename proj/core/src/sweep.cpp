#include "pf/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

namespace pf {

namespace {

TrialRecord run_trial(const PfInstance& instance, const SweepConfig& config,
                      int trial, SolveResult& out) {
    SolveConfig sc = config.solver;
    if (trial == 0) {
        sc.init_mode = InitMode::kDiagLike;
    } else {
        sc.init_mode = InitMode::kRandom;
        sc.seed = config.solver.seed + static_cast<std::uint64_t>(trial);
    }
    out = solve(instance, sc);
    TrialRecord rec;
    rec.trial = trial;
    rec.seed = sc.seed;
    rec.converged = out.converged;
    rec.feasible = out.feasible;
    rec.iterations = out.iterations;
    rec.i_sy = out.info.i_sy;
    rec.i_xy = out.info.i_xy;
    rec.objective = out.state.objective;
    return rec;
}

}  // namespace

std::vector<CurvePoint> sweep(const Prior& prior, const Channel& channel,
                              std::size_t n, const SweepConfig& config) {
    const double h = entropy(prior);
    std::vector<double> grid;
    const int pts = std::max(config.num_points, 2);
    for (int t = 0; t < pts; ++t) {
        double r = h * static_cast<double>(t) / static_cast<double>(pts - 1);
        if (!config.include_endpoints) {
            // interior grid only
            r = h * static_cast<double>(t + 1) / static_cast<double>(pts + 1);
        }
        grid.push_back(r);
    }

    std::vector<CurvePoint> points;
    points.reserve(grid.size());
    for (double r_target : grid) {
        const PfInstance instance =
            make_instance(prior, channel, n, std::min(r_target, h));

        std::vector<TrialRecord> recs(static_cast<std::size_t>(config.trials));
        std::vector<SolveResult> results(static_cast<std::size_t>(config.trials));
        // trials are independent; run them as parallel tasks and reduce in
        // trial order for a deterministic outcome
        std::vector<std::future<void>> tasks;
        tasks.reserve(recs.size());
        for (int trial = 0; trial < config.trials; ++trial) {
            tasks.push_back(std::async(std::launch::async, [&, trial] {
                recs[trial] = run_trial(instance, config, trial, results[trial]);
            }));
        }
        for (auto& t : tasks) t.get();

        CurvePoint point;
        point.r_target = r_target;
        int best = -1;
        auto better = [&](int a, int b) {  // is trial a better than trial b
            const bool oka = recs[a].converged && recs[a].feasible;
            const bool okb = recs[b].converged && recs[b].feasible;
            if (oka != okb) return oka;
            if (recs[a].i_sy != recs[b].i_sy) return recs[a].i_sy < recs[b].i_sy;
            return a < b;
        };
        for (int trial = 0; trial < config.trials; ++trial) {
            if (best < 0 || better(trial, best)) best = trial;
        }
        point.best_trial = best;
        point.i_sy = recs[best].i_sy;
        point.i_xy = recs[best].i_xy;
        point.iters = recs[best].iterations;
        point.converged = recs[best].converged && recs[best].feasible;
        point.best_u = results[best].state.u;
        if (config.keep_trial_records) point.trials = recs;
        points.push_back(std::move(point));
    }
    return points;
}

MonotonicityReport curve_is_monotone(const std::vector<CurvePoint>& points,
                                     double slack) {
    MonotonicityReport report;
    for (std::size_t t = 0; t + 1 < points.size(); ++t) {
        const double drop = points[t].i_sy - points[t + 1].i_sy;
        if (drop > slack) {
            report.violations.push_back({t, drop});
        }
        report.max_violation = std::max(report.max_violation, drop);
    }
    return report;
}

std::string curve_csv_string(const std::vector<CurvePoint>& points) {
    std::ostringstream out;
    out << "r_target,i_xy,i_sy,best_trial,iters,converged\n";
    char buf[192];
    for (const CurvePoint& p : points) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%d,%d,%d\n",
                      p.r_target, p.i_xy, p.i_sy, p.best_trial, p.iters,
                      p.converged ? 1 : 0);
        out << buf;
    }
    return out.str();
}

void write_curve_csv(const std::vector<CurvePoint>& points,
                     const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write curve file: " + path);
    out << curve_csv_string(points);
}

void write_sweep_json(const std::vector<CurvePoint>& points,
                      const std::string& path) {
    nlohmann::json root = nlohmann::json::array();
    for (const CurvePoint& p : points) {
        nlohmann::json jp;
        jp["r_target"] = p.r_target;
        jp["i_xy"] = p.i_xy;
        jp["i_sy"] = p.i_sy;
        jp["best_trial"] = p.best_trial;
        jp["iters"] = p.iters;
        jp["converged"] = p.converged;
        nlohmann::json trials = nlohmann::json::array();
        for (const TrialRecord& t : p.trials) {
            trials.push_back({{"trial", t.trial},
                              {"seed", t.seed},
                              {"converged", t.converged},
                              {"feasible", t.feasible},
                              {"iterations", t.iterations},
                              {"i_sy", t.i_sy},
                              {"i_xy", t.i_xy},
                              {"objective", t.objective}});
        }
        jp["trials"] = trials;
        root.push_back(jp);
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write sweep json: " + path);
    out << root.dump(2) << "\n";
}

}  // namespace pf
