#include "pf/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "pf/errors.hpp"

namespace pf {

namespace {

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delim)) out.push_back(field);
    if (!line.empty() && line.back() == delim) out.push_back("");
    return out;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

std::vector<std::size_t> column_indices(const std::vector<std::string>& header,
                                        const std::vector<std::string>& names) {
    std::vector<std::size_t> idx;
    for (const std::string& name : names) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw MissingColumn(name);
        idx.push_back(static_cast<std::size_t>(it - header.begin()));
    }
    return idx;
}

std::string join_tuple(const std::vector<std::string>& row,
                       const std::vector<std::size_t>& idx) {
    std::string out;
    for (std::size_t t = 0; t < idx.size(); ++t) {
        if (t) out += '|';
        out += row[idx[t]];
    }
    return out;
}

}  // namespace

IngestResult ingest(const IngestSpec& spec) {
    if (spec.s_columns.empty() || spec.x_columns.empty()) {
        throw IngestError("s_columns and x_columns must be nonempty");
    }
    for (const std::string& s : spec.s_columns) {
        if (std::find(spec.x_columns.begin(), spec.x_columns.end(), s) !=
            spec.x_columns.end()) {
            throw IngestError("column appears in both S and X: " + s);
        }
    }
    if (spec.perturbation < 0.0) {
        throw IngestError("perturbation must be nonnegative");
    }

    std::ifstream in(spec.path);
    if (!in) throw IngestError("cannot open input file: " + spec.path);

    std::string line;
    if (!std::getline(in, line)) throw EmptyFile(spec.path);
    const std::vector<std::string> header = split(strip_cr(line), spec.delimiter);
    const std::vector<std::size_t> s_idx = column_indices(header, spec.s_columns);
    const std::vector<std::size_t> x_idx = column_indices(header, spec.x_columns);

    // joint counts keyed by (S-tuple, X-tuple); std::map gives the
    // lexicographic alphabet order for free
    std::map<std::string, std::map<std::string, double>> counts;
    std::map<std::string, double> s_seen, x_seen;
    double total = 0.0;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> row = split(line, spec.delimiter);
        if (row.size() < header.size()) {
            throw IngestError("row has " + std::to_string(row.size()) +
                              " fields, header has " +
                              std::to_string(header.size()));
        }
        const std::string s_key = join_tuple(row, s_idx);
        const std::string x_key = join_tuple(row, x_idx);
        counts[s_key][x_key] += 1.0;
        s_seen[s_key] += 1.0;
        x_seen[x_key] += 1.0;
        total += 1.0;
    }
    if (total == 0.0) throw EmptyFile(spec.path);

    IngestResult result;
    for (const auto& [key, cnt] : s_seen) result.s_alphabet.push_back(key);
    for (const auto& [key, cnt] : x_seen) result.x_alphabet.push_back(key);
    const std::size_t big_k = result.s_alphabet.size();
    const std::size_t m = result.x_alphabet.size();
    if (m == 1) {
        result.warnings.push_back(
            "SingleValueAlphabet: |X| = 1, the funnel is trivial");
    }
    if (big_k == 1) {
        result.warnings.push_back(
            "SingleValueAlphabet: |S| = 1, nothing to protect");
    }

    std::map<std::string, std::size_t> s_pos, x_pos;
    for (std::size_t k = 0; k < big_k; ++k) s_pos[result.s_alphabet[k]] = k;
    for (std::size_t i = 0; i < m; ++i) x_pos[result.x_alphabet[i]] = i;

    // normalized empirical cells plus the perturbation constant, then
    // renormalized
    Matrix joint(big_k, m, spec.perturbation);
    for (const auto& [s_key, row] : counts) {
        for (const auto& [x_key, cnt] : row) {
            joint(s_pos[s_key], x_pos[x_key]) += cnt / total;
        }
    }
    double mass = 0.0;
    for (double v : joint.data()) mass += v;
    for (double& v : joint.data()) v /= mass;

    std::vector<double> p(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < big_k; ++k) p[i] += joint(k, i);
    }
    std::vector<std::vector<double>> channel(big_k, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < big_k; ++k) {
            channel[k][i] = p[i] > 0.0 ? joint(k, i) / p[i]
                                       : 1.0 / static_cast<double>(big_k);
        }
    }
    result.prior = validate_prior(p);
    result.channel = validate_channel(channel);
    return result;
}

}  // namespace pf
