#include "pf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>

#include "pf/errors.hpp"

namespace pf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLambdaCap = 1152921504606846976.0;  // 2^60

double uniform01(std::mt19937_64& rng) {
    // 53-bit mantissa draw, strictly inside (0, 1)
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// D(a || b) over equal-size supports with the 0 log 0 convention.  Entries
// where a > 0 but b underflowed to zero are skipped; they only arise from
// subnormal tails of the softmax.
double kl_divergence(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        if (a[t] > 0.0 && b[t] > 0.0) d += a[t] * std::log(a[t] / b[t]);
    }
    return d;
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) d += std::abs(a[t] - b[t]);
    return d;
}

// sum_{i,j} u_ij log w_ij over the support of u; this is -H(X|Y) when
// w = u / r, i.e. the achieved disclosure minus H(X).
double support_log_w(const Matrix& u, const Matrix& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i) {
        for (std::size_t j = 0; j < u.cols(); ++j) {
            if (u(i, j) > 0.0) s += u(i, j) * std::log(w(i, j));
        }
    }
    return s;
}

}  // namespace

double KktResiduals::max() const {
    return std::max(std::max(r_residual, w_residual),
                    std::max(q_residual, u_fixed_point));
}

SolverState init_state(const PfInstance& instance, const SolveConfig& config) {
    const std::size_t m = instance.num_symbols();
    const std::size_t n = instance.n;

    SolverState state;
    state.u = Matrix(m, n);

    if (config.init_mode == InitMode::kDiagLike) {
        // Identity-like coupling u_ij = p_i 1{j = i mod N}, blended with the
        // uniform-row coupling so every entry is strictly positive.
        const double blend = config.smoothing_eps * static_cast<double>(n);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double diag = (j == i % n) ? instance.prior[i] : 0.0;
                state.u(i, j) = (1.0 - blend) * diag +
                                blend * instance.prior[i] / static_cast<double>(n);
            }
        }
    } else {
        std::mt19937_64 rng(config.seed);
        for (std::size_t i = 0; i < m; ++i) {
            double row = 0.0;
            std::vector<double> t(n);
            for (std::size_t j = 0; j < n; ++j) {
                t[j] = -std::log(uniform01(rng));  // flat Dirichlet via exponentials
                row += t[j];
            }
            for (std::size_t j = 0; j < n; ++j) {
                state.u(i, j) = instance.prior[i] * t[j] / row;
            }
        }
    }

    // Renormalize rows to p_i exactly.
    for (std::size_t i = 0; i < m; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += state.u(i, j);
        if (row > 0.0) {
            const double scale = instance.prior[i] / row;
            for (std::size_t j = 0; j < n; ++j) state.u(i, j) *= scale;
        }
    }

    state.r.assign(n, 0.0);
    update_r(state);
    state.w = Matrix(m, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            state.w(i, j) = state.r[j] > 0.0 ? state.u(i, j) / state.r[j]
                                             : 1.0 / static_cast<double>(m);
        }
    }
    state.q = Tensor3(m, n, instance.num_secrets());
    update_q(state, instance);
    state.phi = Matrix(m, n);
    compute_phi(state, instance);
    state.lambda = 1.0;
    state.iter = 0;
    state.objective = objective_relaxed(state, instance);
    return state;
}

void update_q(SolverState& state, const PfInstance& instance) {
    const std::size_t m = instance.num_symbols();
    const std::size_t n = instance.n;
    const std::size_t big_k = instance.num_secrets();
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < big_k; ++k) {
            double den = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                den += instance.channel.s(k, i) * state.u(i, j);
            }
            if (den > 0.0) {
                for (std::size_t i = 0; i < m; ++i) {
                    state.q(i, j, k) = instance.channel.s(k, i) * state.u(i, j) / den;
                }
            } else {
                // unreachable (j, k) mass: any normalized column works
                for (std::size_t i = 0; i < m; ++i) {
                    state.q(i, j, k) = 1.0 / static_cast<double>(m);
                }
            }
        }
    }
}

void compute_phi(SolverState& state, const PfInstance& instance) {
    const std::size_t m = instance.num_symbols();
    const std::size_t n = instance.n;
    const std::size_t big_k = instance.num_secrets();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < big_k; ++k) {
                const double ski = instance.channel.s(k, i);
                if (ski > 0.0) {
                    acc += ski * (std::log(state.q(i, j, k)) - std::log(ski));
                }
            }
            state.phi(i, j) = acc;
        }
    }
}

GValue g_of_lambda(double lambda, const SolverState& state,
                   const PfInstance& instance) {
    const std::size_t m = instance.num_symbols();
    const std::size_t n = instance.n;
    GValue out;
    std::vector<double> a(n), logw(n);
    for (std::size_t i = 0; i < m; ++i) {
        if (instance.prior[i] <= 0.0) continue;
        double amax = -kInf;
        for (std::size_t j = 0; j < n; ++j) {
            if (state.w(i, j) > 0.0 && state.r[j] > 0.0) {
                logw[j] = std::log(state.w(i, j));
                a[j] = lambda * logw[j] + state.phi(i, j) + std::log(state.r[j]);
                amax = std::max(amax, a[j]);
            } else {
                a[j] = -kInf;
                logw[j] = 0.0;
            }
        }
        if (amax == -kInf) throw AllWeightsZeroRow(i);
        double z = 0.0, mean = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (a[j] == -kInf) continue;
            const double t = std::exp(a[j] - amax);
            z += t;
            mean += t * logw[j];
        }
        mean /= z;
        double var = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (a[j] == -kInf) continue;
            const double t = std::exp(a[j] - amax) / z;
            var += t * (logw[j] - mean) * (logw[j] - mean);
        }
        out.value += instance.prior[i] * mean;
        out.derivative += instance.prior[i] * var;
    }
    out.value -= instance.r_hat;
    return out;
}

LambdaResult solve_lambda(const SolverState& state, const PfInstance& instance,
                          const SolveConfig& config) {
    const GValue g0 = g_of_lambda(0.0, state, instance);
    if (g0.value >= 0.0) {
        // Constraint inactive: the unconstrained u-update already meets the
        // disclosure threshold (complementary slackness).
        return LambdaResult{0.0, LambdaBranch::kInactive, g0.value, 0};
    }

    // Bracket [lo, hi] with G(lo) < 0 <= G(hi), growing hi by doubling.
    double lo = 0.0;
    double hi = 1.0;
    double ghi;
    for (;;) {
        ghi = g_of_lambda(hi, state, instance).value;
        if (ghi >= 0.0) break;
        if (hi >= kLambdaCap) {
            if (config.unattainable == UnattainablePolicy::kCap) {
                return LambdaResult{hi, LambdaBranch::kCapped, ghi, 0};
            }
            throw NoRoot(ghi);
        }
        lo = hi;
        hi *= 2.0;
    }

    // Safeguarded Newton inside the bracket, bisection fallback.
    double lam = hi;
    double g = ghi;
    int it = 0;
    for (; it < config.newton_max; ++it) {
        const GValue gv = g_of_lambda(lam, state, instance);
        g = gv.value;
        if (g < 0.0) lo = lam; else hi = lam;
        const bool tight = std::abs(g) <= config.newton_tol;
        // keep refining while lambda * |G| is still descent-relevant
        if (tight && (lam * std::abs(g) <= 1e-9 || hi - lo <= 1e-13 * hi)) break;
        double cand = std::numeric_limits<double>::quiet_NaN();
        if (gv.derivative > 1e-14) cand = lam - g / gv.derivative;
        if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
        if (cand == lam) break;
        lam = cand;
    }
    const double gfin = g_of_lambda(lam, state, instance).value;
    if (std::abs(gfin) > config.newton_tol) {
        throw NewtonStall(lo, hi, gfin);
    }
    return LambdaResult{lam, LambdaBranch::kRoot, gfin, it};
}

void update_u(SolverState& state, const PfInstance& instance, double lambda) {
    const std::size_t m = instance.num_symbols();
    const std::size_t n = instance.n;
    std::vector<double> a(n);
    for (std::size_t i = 0; i < m; ++i) {
        if (instance.prior[i] <= 0.0) {
            for (std::size_t j = 0; j < n; ++j) state.u(i, j) = 0.0;
            continue;
        }
        double amax = -kInf;
        for (std::size_t j = 0; j < n; ++j) {
            if (state.w(i, j) > 0.0 && state.r[j] > 0.0) {
                a[j] = lambda * std::log(state.w(i, j)) + state.phi(i, j) +
                       std::log(state.r[j]);
                amax = std::max(amax, a[j]);
            } else {
                a[j] = -kInf;
            }
        }
        if (amax == -kInf) throw AllWeightsZeroRow(i);
        double z = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double t = (a[j] == -kInf) ? 0.0 : std::exp(a[j] - amax);
            state.u(i, j) = t;
            z += t;
        }
        const double scale = instance.prior[i] / z;
        for (std::size_t j = 0; j < n; ++j) state.u(i, j) *= scale;
    }
    state.lambda = lambda;
}

void update_r(SolverState& state) {
    const std::size_t m = state.u.rows();
    const std::size_t n = state.u.cols();
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < m; ++i) col += state.u(i, j);
        state.r[j] = col;
    }
}

void update_w(SolverState& state) {
    const std::size_t m = state.u.rows();
    const std::size_t n = state.u.cols();
    for (std::size_t j = 0; j < n; ++j) {
        if (state.r[j] > 0.0) {
            for (std::size_t i = 0; i < m; ++i) {
                state.w(i, j) = state.u(i, j) / state.r[j];
            }
        }
        // dead columns (r_j = 0) keep their previous w column
    }
}

double objective_relaxed(const SolverState& state, const PfInstance& instance) {
    const std::size_t m = instance.num_symbols();
    const std::size_t n = instance.n;
    const std::size_t big_k = instance.num_secrets();
    double f = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (state.u(i, j) <= 0.0) continue;
            for (std::size_t k = 0; k < big_k; ++k) {
                const double x = instance.channel.s(k, i) * state.u(i, j);
                if (x <= 0.0) continue;
                if (state.r[j] <= 0.0 || state.q(i, j, k) <= 0.0) {
                    throw std::domain_error(
                        "relaxed objective: positive mass over empty support");
                }
                f += x * (std::log(x) - std::log(state.r[j]) -
                          std::log(state.q(i, j, k)));
            }
        }
    }
    // Shift by the constant H(S): makes the tight objective equal I(S;Y) and
    // keeps the value nonnegative.
    return f + entropy(secret_marginal(instance));
}

DescentReport step(SolverState& state, const PfInstance& instance,
                   const SolveConfig& config) {
    const std::size_t m = instance.num_symbols();
    const std::size_t n = instance.n;
    const std::size_t big_k = instance.num_secrets();

    const Matrix u0 = state.u;
    const std::vector<double> r0 = state.r;
    const Matrix w0 = state.w;
    const Tensor3 q0 = state.q;
    const double f0 = state.objective;
    const double disclosure0 = support_log_w(u0, w0);

    update_q(state, instance);
    compute_phi(state, instance);
    const LambdaResult lr = solve_lambda(state, instance, config);
    update_u(state, instance, lr.lambda);
    update_r(state);
    update_w(state);
    state.iter += 1;
    state.objective = objective_relaxed(state, instance);

    DescentReport rep;
    rep.capped = (lr.branch == LambdaBranch::kCapped);
    rep.realized_drop = f0 - state.objective;

    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < big_k; ++k) {
            double mass = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                mass += instance.channel.s(k, i) * u0(i, j);
            }
            if (mass <= 0.0) continue;
            double d = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double qn = state.q(i, j, k);
                const double qo = q0(i, j, k);
                if (qn > 0.0 && qo > 0.0) d += qn * std::log(qn / qo);
            }
            rep.kl_q += mass * d;
        }
    }
    rep.kl_u = kl_divergence(u0.data(), state.u.data());
    rep.kl_r = kl_divergence(state.r, r0);
    // lambda^{new} times the previous iterate's disclosure slack; equals
    // lambda sum_j r_j D(w_j || w_j^prev) whenever consecutive u-updates both
    // met the threshold with equality, and stays exact on the first step and
    // after inactive-lambda steps.
    if (lr.branch == LambdaBranch::kRoot && lr.lambda > 0.0) {
        rep.kl_w = lr.lambda * std::max(disclosure0 - instance.r_hat, 0.0);
    }
    rep.delta_u_l1 = l1_distance(u0.data(), state.u.data());
    rep.delta_r_l1 = l1_distance(r0, state.r);
    return rep;
}

SolveResult solve(const PfInstance& instance, const SolveConfig& config) {
    SolveResult result;
    result.state = init_state(instance, config);
    result.trace.reserve(static_cast<std::size_t>(config.max_iter));
    for (int n = 0; n < config.max_iter; ++n) {
        const DescentReport rep = step(result.state, instance, config);
        const InfoPair info = leakage_and_disclosure(result.state.u, instance);
        result.trace.push_back(TraceRecord{
            result.state.iter, result.state.objective, info.i_sy, info.i_xy,
            result.state.lambda, rep.kl_q, rep.kl_u, rep.kl_r, rep.kl_w,
            rep.realized_drop});
        if (std::abs(rep.realized_drop) < config.obj_tol) {
            result.converged = true;
            break;
        }
    }
    // Refresh the posterior so the returned state is self-consistent with its
    // final u (the step leaves q one half-iteration behind).
    update_q(result.state, instance);
    compute_phi(result.state, instance);
    result.state.objective = objective_relaxed(result.state, instance);
    result.iterations = result.state.iter;
    result.info = leakage_and_disclosure(result.state.u, instance);
    result.feasible = result.info.i_xy >= instance.r_threshold - 1e-6;
    return result;
}

KktResiduals kkt_residuals(const SolverState& state, const PfInstance& instance) {
    const std::size_t m = instance.num_symbols();
    const std::size_t n = instance.n;
    const std::size_t big_k = instance.num_secrets();
    KktResiduals res;

    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < m; ++i) col += state.u(i, j);
        res.r_residual = std::max(res.r_residual, std::abs(state.r[j] - col));
        if (state.r[j] > 0.0) {
            for (std::size_t i = 0; i < m; ++i) {
                res.w_residual = std::max(
                    res.w_residual,
                    std::abs(state.w(i, j) - state.u(i, j) / state.r[j]));
            }
        }
    }

    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < big_k; ++k) {
            double den = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                den += instance.channel.s(k, i) * state.u(i, j);
            }
            if (den <= 0.0) continue;
            for (std::size_t i = 0; i < m; ++i) {
                const double closed = instance.channel.s(k, i) * state.u(i, j) / den;
                res.q_residual = std::max(res.q_residual,
                                          std::abs(state.q(i, j, k) - closed));
            }
        }
    }

    // Fixed-point residual of the u-update with q, phi, and the dual variable
    // all refreshed from the current u; at a KKT point this reproduces u.
    SolverState probe = state;
    update_q(probe, instance);
    compute_phi(probe, instance);
    const LambdaResult lr = solve_lambda(probe, instance, SolveConfig{});
    update_u(probe, instance, lr.lambda);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            res.u_fixed_point = std::max(res.u_fixed_point,
                                         std::abs(probe.u(i, j) - state.u(i, j)));
        }
    }
    return res;
}

void write_trace_csv(const std::vector<TraceRecord>& trace,
                     const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace file: " + path);
    out << "iter,objective,i_sy,i_xy,lambda,kl_q,kl_u,kl_r,kl_w,realized_drop\n";
    char buf[352];
    for (const TraceRecord& t : trace) {
        std::snprintf(buf, sizeof(buf),
                      "%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      t.iter, t.objective, t.i_sy, t.i_xy, t.lambda, t.kl_q,
                      t.kl_u, t.kl_r, t.kl_w, t.realized_drop);
        out << buf;
    }
}

}  // namespace pf
