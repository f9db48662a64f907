#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seqlab/mixture.hpp"

namespace seqlab {

// Compact measure-spec grammar (rationals written "num/den"):
//   ber:P                        binary Bernoulli with P(1) = P
//   ber:P0,P1[,P2...]            full per-symbol vector
//   uniform:K                    uniform over K symbols
//   markov:INIT;ROW0;ROW1;...    row count |X|^k fixes the order k
//   det:U|V                      deterministic U V^inf (digit strings)
//   suffixdet:L                  deterministic 0^L 1^inf
// This is also the canonical textual form emitted by spec_string().
Semimeasure parse_measure_spec(const std::string& spec);

struct ClassConfig {
    std::string name;
    std::vector<std::string> model_specs;
    std::vector<std::string> weight_strs;

    std::shared_ptr<const WeightedClass> build() const;
};

struct ExperimentConfig {
    int alphabet = 2;
    std::vector<ClassConfig> classes;
    std::optional<std::string> registry_version;  // must match the built registry
    int horizon_L = 14;
    long horizon_S = 2000;
    int horizon_depth = 6;
    int horizon_n = 10;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string format = "json";
    std::vector<std::string> report_filter;  // keep reports matching these name prefixes
    std::optional<std::uint64_t> max_evals;  // budget override

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);
};

// Hard caps enforced on any configuration before running.
void enforce_budget_caps(const ExperimentConfig& cfg);

}  // namespace seqlab
