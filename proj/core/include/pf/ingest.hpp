#ifndef PF_INGEST_HPP
#define PF_INGEST_HPP

#include <string>
#include <vector>

#include "pf/dist.hpp"

namespace pf {

struct IngestSpec {
    std::string path;
    std::vector<std::string> s_columns;
    std::vector<std::string> x_columns;
    double perturbation = 1e-3;  // added to each normalized joint cell
    char delimiter = ',';
};

struct IngestResult {
    Prior prior;
    Channel channel;
    // alphabet maps: value-tuples joined with '|', lexicographic order,
    // index position = matrix index
    std::vector<std::string> s_alphabet;
    std::vector<std::string> x_alphabet;
    std::vector<std::string> warnings;
};

// Builds the empirical joint P_{S,X} from a delimited text file (first row =
// column names), perturbs every cell of the normalized distribution by the
// given constant, renormalizes, and splits into Prior and Channel.
IngestResult ingest(const IngestSpec& spec);

}  // namespace pf

#endif  // PF_INGEST_HPP
