#ifndef PF_ORACLE_HPP
#define PF_ORACLE_HPP

#include "pf/dist.hpp"
#include "pf/matrix.hpp"

namespace pf {

struct GridSpec {
    double step = 0.005;           // simplex grid resolution
    double constraint_slack = 0.0; // tolerance on I(X;Y) >= R
};

struct GridResult {
    double best_i_sy = 0.0;
    double best_i_xy = 0.0;
    Matrix best_mapping;  // M x N conditional P_{Y|X}
    bool found = false;
    std::size_t points_scanned = 0;
    std::size_t points_feasible = 0;
};

// Exhaustively enumerates column-stochastic mappings P_{Y|X} on the simplex
// grid, keeps those with I(X;Y) >= R - slack, and returns the one minimizing
// I(S;Y).  Throws TooLarge when M * (N - 1) > 6.
GridResult grid_search(const PfInstance& instance, const GridSpec& spec);

// The identity-mapping curve endpoint (I(S;X), H(X)) at R = H(X).
struct Endpoint {
    double leakage;     // I(S;X)
    double disclosure;  // H(X)
};
Endpoint identity_endpoint(const PfInstance& instance);

}  // namespace pf

#endif  // PF_ORACLE_HPP
