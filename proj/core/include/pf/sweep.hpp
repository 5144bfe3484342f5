#ifndef PF_SWEEP_HPP
#define PF_SWEEP_HPP

#include <string>
#include <vector>

#include "pf/dist.hpp"
#include "pf/solver.hpp"

namespace pf {

struct SweepConfig {
    int num_points = 50;
    int trials = 30;
    SolveConfig solver;
    bool include_endpoints = true;
    bool keep_trial_records = false;
};

struct TrialRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    bool converged = false;
    bool feasible = false;
    int iterations = 0;
    double i_sy = 0.0;
    double i_xy = 0.0;
    double objective = 0.0;
};

struct CurvePoint {
    double r_target = 0.0;
    double i_xy = 0.0;
    double i_sy = 0.0;
    int best_trial = -1;
    int iters = 0;
    bool converged = false;
    Matrix best_u;                     // joint of the winning trial
    std::vector<TrialRecord> trials;   // populated when keep_trial_records
};

// Runs the multi-restart solver over a uniform R-grid on [0, H(X)].  Trial 0 uses the
// identity-like init, trials 1..T-1 random inits seeded seed_base + trial.
// Points come back in ascending R.
std::vector<CurvePoint> sweep(const Prior& prior, const Channel& channel,
                              std::size_t n, const SweepConfig& config);

struct MonotonicityReport {
    struct Violation {
        std::size_t left_index;
        double magnitude;
    };
    std::vector<Violation> violations;
    double max_violation = 0.0;
};

// Flags adjacent pairs where i_sy decreases by more than the slack as R grows.
MonotonicityReport curve_is_monotone(const std::vector<CurvePoint>& points,
                                     double slack = 1e-4);

// CSV: header r_target,i_xy,i_sy,best_trial,iters,converged; 12 significant
// digits.
void write_curve_csv(const std::vector<CurvePoint>& points,
                     const std::string& path);
std::string curve_csv_string(const std::vector<CurvePoint>& points);

// Companion JSON with per-trial records (needs keep_trial_records).
void write_sweep_json(const std::vector<CurvePoint>& points,
                      const std::string& path);

}  // namespace pf

#endif  // PF_SWEEP_HPP
