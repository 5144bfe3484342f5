#ifndef PF_TESTS_HELPERS_HPP
#define PF_TESTS_HELPERS_HPP

#include <cmath>
#include <random>
#include <vector>

#include "pf/dist.hpp"

namespace pf_test {

// Synthetic 3x3 conditional distribution used across the test suite.
inline pf::Channel synthetic_channel() {
    return pf::validate_channel({{0.9, 0.08, 0.4},
                                 {0.025, 0.82, 0.05},
                                 {0.075, 0.1, 0.55}});
}

inline pf::Prior uniform_prior3() {
    return pf::validate_prior({1.0 / 3, 1.0 / 3, 1.0 / 3});
}

inline pf::Prior nonuniform_prior3() {
    return pf::validate_prior({0.1, 0.3, 0.6});
}

inline pf::PfInstance synthetic_instance(double r, std::size_t n = 4,
                                         bool uniform = true) {
    return pf::make_instance(uniform ? uniform_prior3() : nonuniform_prior3(),
                             synthetic_channel(), n, r);
}

// Independent scalar oracle: plain loop over -sum p log p.
inline double entropy_oracle(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p) {
        if (x > 0.0) h += -x * std::log(x);
    }
    return h;
}

// Independent brute-force double sum for I(S;X).
inline double mi_sx_oracle(const pf::PfInstance& inst) {
    const std::size_t big_k = inst.num_secrets();
    const std::size_t m = inst.num_symbols();
    double mi = 0.0;
    for (std::size_t k = 0; k < big_k; ++k) {
        double ps = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            ps += inst.channel.s(k, i) * inst.prior[i];
        }
        for (std::size_t i = 0; i < m; ++i) {
            const double joint = inst.channel.s(k, i) * inst.prior[i];
            if (joint > 0.0) {
                mi += joint * std::log(inst.channel.s(k, i) / ps);
            }
        }
    }
    return mi;
}

inline std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n) {
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

inline pf::PfInstance random_instance(std::mt19937_64& rng, std::size_t m,
                                      std::size_t big_k, std::size_t n,
                                      double r_fraction) {
    const std::vector<double> p = random_simplex(rng, m);
    std::vector<std::vector<double>> s(big_k, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const std::vector<double> col = random_simplex(rng, big_k);
        for (std::size_t k = 0; k < big_k; ++k) s[k][i] = col[k];
    }
    pf::Prior prior = pf::validate_prior(p);
    const double r = r_fraction * entropy_oracle(p);
    return pf::make_instance(std::move(prior), pf::validate_channel(s), n, r);
}

}  // namespace pf_test

#endif  // PF_TESTS_HELPERS_HPP
