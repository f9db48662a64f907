#pragma once

#include <string>
#include <vector>

#include "seqlab/bounds.hpp"
#include "seqlab/catalog.hpp"
#include "seqlab/config.hpp"

namespace seqlab {

struct HarnessOptions {
    int depth = 6;        // exhaustive string depth for dominance-style scans
    int n = 10;           // divergence horizon
    int L = 14;           // program-length horizon
    long S = 2000;        // fuel per run
    int kstar_depth = 5;  // condition depth for the K* sum checks
    int workers = 1;
    std::uint64_t seed = 1;
    std::uint64_t telescoping_cases = 10'000;
    std::uint64_t kstar_monotone_cases = 1'000;
    int combiner_min_pairs = 500;
    EnumBudget budget{};
};

HarnessOptions harness_options_from(const ExperimentConfig& cfg);

struct HarnessResult {
    std::vector<BoundReport> reports;  // sorted by name
    bool exact_ok = true;              // no exact-regime report is Violated
};

// The exact-regime suite: the finite-class inequalities that hold with
// zero tolerance at desk scale, the machine-suite invariants, and the
// constructions.
HarnessResult run_exact_suite(const HarnessOptions& opt);

// One numbered group of the exact suite (1..9), e.g. for per-group timing.
HarnessResult run_exact_criterion(const HarnessOptions& opt, int criterion);

// The registry regime: both sides horizon approximations, direction-noted;
// verdicts are Verified or Inconclusive.
HarnessResult run_registry_suite(const HarnessOptions& opt);

// Deterministic serializations (byte-identical across runs and workers).
std::string reports_json(const std::vector<BoundReport>& reports);
std::string reports_csv(const std::vector<BoundReport>& reports);

}  // namespace seqlab
