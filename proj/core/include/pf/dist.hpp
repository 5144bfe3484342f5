#ifndef PF_DIST_HPP
#define PF_DIST_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pf/matrix.hpp"

namespace pf {

// Validated marginal distribution of the public variable X.
// All information quantities downstream are in nats.
struct Prior {
    std::vector<double> p;

    std::size_t size() const { return p.size(); }
    double operator[](std::size_t i) const { return p[i]; }
};

// Validated conditional distribution P(S|X): K rows (secrets), M columns
// (public symbols); each column sums to 1.
struct Channel {
    Matrix s;  // s(k, i) = P(S = s_k | X = x_i)

    std::size_t num_secrets() const { return s.rows(); }
    std::size_t num_symbols() const { return s.cols(); }
};

// One privacy-funnel problem: distribution data plus the codebook size N and
// the disclosure threshold R (nats).  r_hat = R - H(X) <= 0 by construction.
struct PfInstance {
    Prior prior;
    Channel channel;
    std::size_t n;
    double r_threshold;
    double r_hat;

    std::size_t num_symbols() const { return prior.size(); }
    std::size_t num_secrets() const { return channel.num_secrets(); }
};

// Tolerance for exact (user-supplied) inputs; solver-produced matrices get the
// looser kIterateTol.
inline constexpr double kExactTol = 1e-12;
inline constexpr double kIterateTol = 1e-8;

Prior validate_prior(const std::vector<double>& raw);
Channel validate_channel(const std::vector<std::vector<double>>& raw);

// Throws DimensionMismatch if the channel column count differs from the prior
// length, ValidationError if r_threshold is outside [0, H(X)].
PfInstance make_instance(Prior prior, Channel channel, std::size_t n,
                         double r_threshold);

// H(p) = -sum p_i log p_i with 0 log 0 := 0.
double entropy(const std::vector<double>& p);
inline double entropy(const Prior& prior) { return entropy(prior.p); }

// I(S;X) from the instance's prior and channel.
double mutual_information_sx(const PfInstance& instance);

// Marginal of S: ps_k = sum_i s(k,i) p_i.
std::vector<double> secret_marginal(const PfInstance& instance);

struct InfoPair {
    double i_sy;  // leakage I(S;Y), nats
    double i_xy;  // disclosure I(X;Y), nats
};

// Evaluates leakage and disclosure of a joint matrix u (M x N, u_ij =
// P(X=x_i, Y=y_j)) with r_j = sum_i u_ij.  Throws ShapeMismatch if u does not
// match the instance, ValidationError if u is not a valid joint with the
// instance's X-marginal.
InfoPair leakage_and_disclosure(const Matrix& u, const PfInstance& instance);

// Distribution file format (JSON):
//   { "p_x": [..M..], "p_s_given_x": [[..M..] x K rows] }
std::pair<Prior, Channel> load_distribution(const std::string& path);
void save_distribution(const std::string& path, const Prior& prior,
                       const Channel& channel);

}  // namespace pf

#endif  // PF_DIST_HPP
