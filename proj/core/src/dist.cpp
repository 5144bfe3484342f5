#include "pf/dist.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "pf/errors.hpp"

namespace pf {

namespace {

void check_nonnegative(double x, const char* what, std::size_t index) {
    if (x < 0.0 || !std::isfinite(x)) {
        throw NegativeEntry(std::string(what) + " entry " + std::to_string(index) +
                            " is negative or non-finite: " + std::to_string(x));
    }
}

}  // namespace

Prior validate_prior(const std::vector<double>& raw) {
    if (raw.empty()) {
        throw DimensionMismatch("prior must have at least one entry");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        check_nonnegative(raw[i], "prior", i);
        sum += raw[i];
    }
    if (std::abs(sum - 1.0) > kExactTol) {
        throw SumNotOne("prior sum", 0, std::abs(sum - 1.0));
    }
    return Prior{raw};
}

Channel validate_channel(const std::vector<std::vector<double>>& raw) {
    if (raw.empty() || raw[0].empty()) {
        throw DimensionMismatch("channel must have at least one row and column");
    }
    const std::size_t k_rows = raw.size();
    const std::size_t m_cols = raw[0].size();
    Matrix s(k_rows, m_cols);
    for (std::size_t k = 0; k < k_rows; ++k) {
        if (raw[k].size() != m_cols) {
            throw DimensionMismatch("channel row " + std::to_string(k) +
                                    " has " + std::to_string(raw[k].size()) +
                                    " entries, expected " + std::to_string(m_cols));
        }
        for (std::size_t i = 0; i < m_cols; ++i) {
            check_nonnegative(raw[k][i], "channel", k * m_cols + i);
            s(k, i) = raw[k][i];
        }
    }
    for (std::size_t i = 0; i < m_cols; ++i) {
        double col = 0.0;
        for (std::size_t k = 0; k < k_rows; ++k) col += s(k, i);
        if (std::abs(col - 1.0) > kExactTol) {
            throw SumNotOne("channel column sum", i, std::abs(col - 1.0));
        }
    }
    return Channel{std::move(s)};
}

PfInstance make_instance(Prior prior, Channel channel, std::size_t n,
                         double r_threshold) {
    if (channel.num_symbols() != prior.size()) {
        throw DimensionMismatch("channel has " +
                                std::to_string(channel.num_symbols()) +
                                " columns, prior has " +
                                std::to_string(prior.size()) + " entries");
    }
    if (n < 1) {
        throw ValidationError("codebook size N must be positive");
    }
    const double h = entropy(prior);
    if (r_threshold < 0.0) {
        throw ValidationError("disclosure threshold R must be nonnegative");
    }
    if (r_threshold > h + kExactTol) {
        throw ValidationError("infeasible threshold: R = " +
                              std::to_string(r_threshold) + " exceeds H(X) = " +
                              std::to_string(h));
    }
    PfInstance inst;
    inst.prior = std::move(prior);
    inst.channel = std::move(channel);
    inst.n = n;
    inst.r_threshold = r_threshold;
    inst.r_hat = r_threshold - h;
    return inst;
}

double entropy(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p) {
        if (x > 0.0) h -= x * std::log(x);
    }
    return h;
}

std::vector<double> secret_marginal(const PfInstance& instance) {
    const std::size_t big_k = instance.num_secrets();
    const std::size_t m = instance.num_symbols();
    std::vector<double> ps(big_k, 0.0);
    for (std::size_t k = 0; k < big_k; ++k) {
        for (std::size_t i = 0; i < m; ++i) {
            ps[k] += instance.channel.s(k, i) * instance.prior[i];
        }
    }
    return ps;
}

double mutual_information_sx(const PfInstance& instance) {
    const std::size_t big_k = instance.num_secrets();
    const std::size_t m = instance.num_symbols();
    const std::vector<double> ps = secret_marginal(instance);
    double mi = 0.0;
    for (std::size_t k = 0; k < big_k; ++k) {
        for (std::size_t i = 0; i < m; ++i) {
            const double joint = instance.channel.s(k, i) * instance.prior[i];
            if (joint > 0.0) {
                mi += joint * std::log(instance.channel.s(k, i) / ps[k]);
            }
        }
    }
    return mi;
}

InfoPair leakage_and_disclosure(const Matrix& u, const PfInstance& instance) {
    const std::size_t m = instance.num_symbols();
    const std::size_t n = instance.n;
    const std::size_t big_k = instance.num_secrets();
    if (u.rows() != m || u.cols() != n) {
        throw ShapeMismatch("joint matrix is " + std::to_string(u.rows()) + "x" +
                            std::to_string(u.cols()) + ", expected " +
                            std::to_string(m) + "x" + std::to_string(n));
    }
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (u(i, j) < 0.0) {
                throw ValidationError("joint matrix has a negative entry");
            }
            row += u(i, j);
        }
        if (std::abs(row - instance.prior[i]) > kIterateTol) {
            throw ValidationError("joint row " + std::to_string(i) +
                                  " sum deviates from the prior by " +
                                  std::to_string(std::abs(row - instance.prior[i])));
        }
        total += row;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw ValidationError("joint matrix total mass deviates from 1 by " +
                              std::to_string(std::abs(total - 1.0)));
    }

    std::vector<double> r(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) r[j] += u(i, j);
    }

    // I(S;Y): the objective sum_{j,k} P_SY (log P_SY - log r_j), shifted by
    // H(S) so independence gives exactly 0.
    const std::vector<double> ps = secret_marginal(instance);
    double i_sy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < big_k; ++k) {
            double psy = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                psy += instance.channel.s(k, i) * u(i, j);
            }
            if (psy > 0.0) {
                i_sy += psy * (std::log(psy) - std::log(r[j]) - std::log(ps[k]));
            }
        }
    }

    double i_xy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (u(i, j) > 0.0) {
                i_xy += u(i, j) * std::log(u(i, j) / (instance.prior[i] * r[j]));
            }
        }
    }
    return InfoPair{i_sy, i_xy};
}

std::pair<Prior, Channel> load_distribution(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open distribution file: " + path);
    }
    nlohmann::json j;
    in >> j;
    if (!j.contains("p_x") || !j.contains("p_s_given_x")) {
        throw ValidationError("distribution file must contain p_x and p_s_given_x");
    }
    std::vector<double> p = j.at("p_x").get<std::vector<double>>();
    std::vector<std::vector<double>> s =
        j.at("p_s_given_x").get<std::vector<std::vector<double>>>();
    return {validate_prior(p), validate_channel(s)};
}

void save_distribution(const std::string& path, const Prior& prior,
                       const Channel& channel) {
    nlohmann::json j;
    j["p_x"] = prior.p;
    std::vector<std::vector<double>> s(channel.num_secrets(),
                                       std::vector<double>(channel.num_symbols()));
    for (std::size_t k = 0; k < channel.num_secrets(); ++k) {
        for (std::size_t i = 0; i < channel.num_symbols(); ++i) {
            s[k][i] = channel.s(k, i);
        }
    }
    j["p_s_given_x"] = s;
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot write distribution file: " + path);
    }
    out << j.dump(2) << "\n";
}

}  // namespace pf
