#include "seqlab/catalog.hpp"

namespace seqlab {

namespace {

Rat R(long num, long den = 1) { return Rat(num, den); }

std::shared_ptr<const WeightedClass> make_class(std::vector<Semimeasure> models,
                                                std::vector<Rat> weights) {
    return std::make_shared<WeightedClass>(std::move(models), std::move(weights));
}

}  // namespace

std::vector<CatalogClass> standard_catalog() {
    Alphabet bin(2);
    Alphabet tri(3);
    std::vector<CatalogClass> catalog;

    catalog.push_back(CatalogClass{
        "ber_pair",
        make_class({bernoulli_binary(R(1, 3)), bernoulli_binary(R(2, 3))},
                   {R(1, 2), R(1, 2)})});

    catalog.push_back(CatalogClass{
        "ber_trio",
        make_class({bernoulli_binary(R(1, 2)), bernoulli_binary(R(1, 5)),
                    bernoulli_binary(R(4, 5))},
                   {R(1, 2), R(1, 4), R(1, 4)})});

    // Sticky and flippy order-1 chains next to the uniform coin.
    catalog.push_back(CatalogClass{
        "markov_mix",
        make_class({markov({R(1, 2), R(1, 2)}, {{R(9, 10), R(1, 10)}, {R(1, 10), R(9, 10)}}),
                    markov({R(1, 2), R(1, 2)}, {{R(1, 10), R(9, 10)}, {R(9, 10), R(1, 10)}}),
                    bernoulli_binary(R(1, 2))},
                   {R(1, 3), R(1, 3), R(1, 3)})});

    catalog.push_back(CatalogClass{
        "det_mix",
        make_class({deterministic(FinStr(bin), FinStr::parse(bin, "0")),
                    deterministic(FinStr(bin), FinStr::parse(bin, "01")),
                    bernoulli_binary(R(1, 2))},
                   {R(1, 4), R(1, 4), R(1, 2)})});

    catalog.push_back(CatalogClass{
        "ternary_trio",
        make_class({bernoulli({R(1, 3), R(1, 3), R(1, 3)}),
                    bernoulli({R(1, 2), R(1, 4), R(1, 4)}),
                    bernoulli({R(1, 6), R(1, 3), R(1, 2)})},
                   {R(1, 3), R(1, 3), R(1, 3)})});

    catalog.push_back(CatalogClass{
        "suffixdet_pair",
        make_class({suffix_deterministic(3), bernoulli_binary(R(1, 2))},
                   {R(1, 2), R(1, 2)})});

    return catalog;
}

std::vector<CatalogMeasure> deterministic_catalog() {
    Alphabet bin(2);
    std::vector<CatalogMeasure> out;
    auto target_of = [&](unsigned long zeros) { return numeral(bin, zeros); };

    out.push_back(CatalogMeasure{"zeros", deterministic(FinStr(bin), FinStr::parse(bin, "0")),
                                 std::nullopt});
    out.push_back(CatalogMeasure{"alt01", deterministic(FinStr(bin), FinStr::parse(bin, "01")),
                                 std::nullopt});
    for (int n : {2, 3, 4}) {
        FinStr period = repeat(FinStr::parse(bin, "0"), static_cast<std::size_t>(n))
                            .concat(FinStr::parse(bin, "1"));
        out.push_back(CatalogMeasure{"period_0^" + std::to_string(n) + "1",
                                     deterministic(FinStr(bin), period),
                                     target_of(static_cast<unsigned long>(n))});
    }
    for (int l : {3, 5}) {
        out.push_back(CatalogMeasure{"suffixdet_" + std::to_string(l), suffix_deterministic(l),
                                     target_of(static_cast<unsigned long>(l))});
    }
    return out;
}

std::optional<FinStr> registry_spec_target(const Semimeasure& m) {
    std::string spec = m.spec_string();
    Alphabet a = m.alphabet();
    if (spec.rfind("suffixdet:", 0) == 0) {
        unsigned long l = std::stoul(spec.substr(10));
        return numeral(a, l);
    }
    if (spec.rfind("det:|", 0) == 0) {
        // Period of shape 0^n 1 encodes as numeral(n).
        std::string period = spec.substr(5);
        std::size_t zeros = 0;
        while (zeros < period.size() && period[zeros] == '0') ++zeros;
        if (zeros + 1 == period.size() && period[zeros] == '1')
            return numeral(a, static_cast<unsigned long>(zeros));
    }
    return std::nullopt;
}

std::vector<Rat> registry_prior_weights(const MachineRegistry& reg,
                                        const std::vector<CatalogMeasure>& measures, int L,
                                        long S, long fallback_bits) {
    std::vector<Rat> weights;
    weights.reserve(measures.size());
    for (const CatalogMeasure& cm : measures) {
        std::optional<int> k;
        if (cm.registry_target) k = enum_K(reg, *cm.registry_target, L, S).value;
        long bits = k ? *k : fallback_bits;
        weights.push_back(pow2_rat(-bits));
    }
    return weights;
}

}  // namespace seqlab
