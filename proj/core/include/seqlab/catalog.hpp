#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seqlab/machines.hpp"
#include "seqlab/mixture.hpp"

namespace seqlab {

// A catalog measure together with the registry target string that encodes
// it, when one exists at desk scale (the eventually-periodic deterministic
// family encodes as the numeral of its leading-zero count).
struct CatalogMeasure {
    std::string name;
    Semimeasure measure;
    std::optional<FinStr> registry_target;
};

struct CatalogClass {
    std::string name;
    std::shared_ptr<const WeightedClass> members;
};

// The standard model classes used by the verification harness: at least
// five classes over alphabets of size 2 and 3, weights summing to 1.
std::vector<CatalogClass> standard_catalog();

// The deterministic targets used by the Eq.-(5)-style reports.
std::vector<CatalogMeasure> deterministic_catalog();

// Registry target for the (0^n 1)-periodic family and the mu^l family:
// the numeral of n (what the condition-zero-counter base outputs on one
// period).  nullopt for measures with no desk-scale registry encoding.
std::optional<FinStr> registry_spec_target(const Semimeasure& m);

// Prior weights 2^-K_L(target) from registry code lengths; models without a
// horizon witness get the fallback weight 2^-fallback_bits.  The result
// sub-sums (Kraft), which WeightedClass accepts.
std::vector<Rat> registry_prior_weights(const MachineRegistry& reg,
                                        const std::vector<CatalogMeasure>& measures, int L,
                                        long S, long fallback_bits = 16);

}  // namespace seqlab
