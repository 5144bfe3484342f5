#ifndef PF_SOLVER_HPP
#define PF_SOLVER_HPP

#include <cstdint>
#include <vector>

#include "pf/dist.hpp"
#include "pf/matrix.hpp"

namespace pf {

enum class InitMode { kDiagLike, kRandom };

// What to do when G(lambda) has no root up to the bracket cap (the disclosure
// threshold is unattainable with the current w support).  kCap takes the
// lambda -> infinity limit of the u-update, which concentrates each row on its
// best column and restores attainability on later iterations; kError throws
// NoRoot.
enum class UnattainablePolicy { kCap, kError };

struct SolveConfig {
    int max_iter = 500;
    double obj_tol = 1e-10;     // absolute objective-change stopping tolerance
    double newton_tol = 1e-10;  // |G(lambda)| tolerance
    int newton_max = 50;
    InitMode init_mode = InitMode::kDiagLike;
    double smoothing_eps = 1e-9;
    std::uint64_t seed = 0;
    UnattainablePolicy unattainable = UnattainablePolicy::kCap;
};

// One solver iterate.  u is the joint P_{X,Y} (M x N), w the conditional P_{X|Y},
// r the Y-marginal, q the auxiliary posterior (M x N x K), phi the aggregated
// log-posterior term.
struct SolverState {
    Matrix u;
    Matrix w;
    std::vector<double> r;
    Tensor3 q;
    Matrix phi;
    double lambda = 1.0;
    int iter = 0;
    double objective = 0.0;
};

// KL decomposition of one step's objective drop.
struct DescentReport {
    double kl_q = 0.0;
    double kl_u = 0.0;
    double kl_r = 0.0;
    double kl_w = 0.0;
    double realized_drop = 0.0;
    double delta_u_l1 = 0.0;
    double delta_r_l1 = 0.0;
    bool capped = false;  // lambda hit the bracket cap; drop identity is off
};

enum class LambdaBranch { kInactive, kRoot, kCapped };

struct LambdaResult {
    double lambda = 0.0;
    LambdaBranch branch = LambdaBranch::kInactive;
    double g_value = 0.0;
    int iterations = 0;
};

struct GValue {
    double value = 0.0;
    double derivative = 0.0;  // softmax-weighted variance, >= 0
};

struct TraceRecord {
    int iter = 0;
    double objective = 0.0;
    double i_sy = 0.0;
    double i_xy = 0.0;
    double lambda = 0.0;
    double kl_q = 0.0;
    double kl_u = 0.0;
    double kl_r = 0.0;
    double kl_w = 0.0;
    double realized_drop = 0.0;
};

struct SolveResult {
    SolverState state;
    std::vector<TraceRecord> trace;
    bool converged = false;  // |objective change| fell below obj_tol
    bool feasible = false;   // achieved I(X;Y) >= R - 1e-6
    int iterations = 0;
    InfoPair info{0.0, 0.0};
};

struct KktResiduals {
    double r_residual = 0.0;       // max |r_j - sum_i u_ij|
    double w_residual = 0.0;       // max |w_ij - u_ij / r_j|
    double q_residual = 0.0;       // max |q_ijk - closed form|
    double u_fixed_point = 0.0;    // max |u - update_u(state, lambda)|
    double max() const;
};

SolverState init_state(const PfInstance& instance, const SolveConfig& config);

void update_q(SolverState& state, const PfInstance& instance);
void compute_phi(SolverState& state, const PfInstance& instance);

// G(lambda) and its derivative, evaluated in log domain with per-row
// log-sum-exp normalization.  Entries with w_ij = 0 or r_j = 0 carry weight
// exactly zero.  Throws AllWeightsZeroRow if some row with p_i > 0 has no
// supported column.
GValue g_of_lambda(double lambda, const SolverState& state,
                   const PfInstance& instance);

LambdaResult solve_lambda(const SolverState& state, const PfInstance& instance,
                          const SolveConfig& config);

void update_u(SolverState& state, const PfInstance& instance, double lambda);
void update_r(SolverState& state);
void update_w(SolverState& state);

// Relaxed objective, shifted by the constant H(S) so that it equals I(S;Y)
// when q sits at its closed form and stays nonnegative throughout.
double objective_relaxed(const SolverState& state, const PfInstance& instance);

// One full alternating-minimization iteration: q -> phi -> lambda -> u -> r -> w.
DescentReport step(SolverState& state, const PfInstance& instance,
                   const SolveConfig& config);

SolveResult solve(const PfInstance& instance, const SolveConfig& config);

KktResiduals kkt_residuals(const SolverState& state, const PfInstance& instance);

void write_trace_csv(const std::vector<TraceRecord>& trace,
                     const std::string& path);

}  // namespace pf

#endif  // PF_SOLVER_HPP
