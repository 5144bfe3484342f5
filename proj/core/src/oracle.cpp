#include "pf/oracle.hpp"

#include <cmath>
#include <vector>

#include "pf/errors.hpp"

namespace pf {

namespace {

// All compositions of t into n nonnegative parts, lexicographic.
void enumerate_compositions(long t, std::size_t n, std::vector<long>& prefix,
                            std::vector<std::vector<long>>& out) {
    if (n == 1) {
        prefix.push_back(t);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (long v = 0; v <= t; ++v) {
        prefix.push_back(v);
        enumerate_compositions(t - v, n - 1, prefix, out);
        prefix.pop_back();
    }
}

struct Eval {
    double i_sy;
    double i_xy;
};

Eval evaluate(const PfInstance& inst, const Matrix& mapping,
              const std::vector<double>& ps) {
    const std::size_t m = inst.num_symbols();
    const std::size_t n = inst.n;
    const std::size_t big_k = inst.num_secrets();
    std::vector<double> r(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            r[j] += inst.prior[i] * mapping(i, j);
        }
    }
    double i_xy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double u = inst.prior[i] * mapping(i, j);
            if (u > 0.0) i_xy += u * std::log(mapping(i, j) / r[j]);
        }
    }
    double i_sy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (r[j] <= 0.0) continue;
        for (std::size_t k = 0; k < big_k; ++k) {
            double psy = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                psy += inst.channel.s(k, i) * inst.prior[i] * mapping(i, j);
            }
            if (psy > 0.0) i_sy += psy * std::log(psy / (ps[k] * r[j]));
        }
    }
    return Eval{i_sy, i_xy};
}

}  // namespace

GridResult grid_search(const PfInstance& instance, const GridSpec& spec) {
    const std::size_t m = instance.num_symbols();
    const std::size_t n = instance.n;
    const std::size_t free_coords = m * (n - 1);
    if (free_coords > 6) throw TooLarge(free_coords);

    const long t = std::lround(1.0 / spec.step);
    std::vector<std::vector<long>> rows;
    std::vector<long> prefix;
    enumerate_compositions(t, n, prefix, rows);

    const std::vector<double> ps = secret_marginal(instance);

    GridResult result;
    result.best_mapping = Matrix(m, n);
    Matrix mapping(m, n);
    std::vector<std::size_t> choice(m, 0);

    // Odometer over one composition per public symbol; lexicographic order so
    // ties resolve to the earliest grid point.
    for (;;) {
        for (std::size_t i = 0; i < m; ++i) {
            const std::vector<long>& c = rows[choice[i]];
            for (std::size_t j = 0; j < n; ++j) {
                mapping(i, j) = static_cast<double>(c[j]) / static_cast<double>(t);
            }
        }
        result.points_scanned += 1;
        const Eval e = evaluate(instance, mapping, ps);
        if (e.i_xy >= instance.r_threshold - spec.constraint_slack) {
            result.points_feasible += 1;
            if (!result.found || e.i_sy < result.best_i_sy) {
                result.found = true;
                result.best_i_sy = e.i_sy;
                result.best_i_xy = e.i_xy;
                result.best_mapping = mapping;
            }
        }
        std::size_t pos = m;
        while (pos > 0) {
            --pos;
            if (++choice[pos] < rows.size()) break;
            choice[pos] = 0;
            if (pos == 0) return result;
        }
    }
}

Endpoint identity_endpoint(const PfInstance& instance) {
    return Endpoint{mutual_information_sx(instance), entropy(instance.prior)};
}

}  // namespace pf
