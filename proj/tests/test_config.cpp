#include <doctest.h>

#include "seqlab/config.hpp"
#include "seqlab/catalog.hpp"

using namespace seqlab;

TEST_CASE("measure spec grammar round trips through the canonical form") {
    // Golden canonical forms.
    CHECK(parse_measure_spec("ber:1/3,2/3").spec_string() == "ber:1/3,2/3");
    CHECK(parse_measure_spec("ber:3/5").spec_string() == "ber:2/5,3/5");
    CHECK(parse_measure_spec("uniform:3").spec_string() == "ber:1/3,1/3,1/3");
    CHECK(parse_measure_spec("det:|01").spec_string() == "det:|01");
    CHECK(parse_measure_spec("det:1|10").spec_string() == "det:1|10");
    CHECK(parse_measure_spec("suffixdet:4").spec_string() == "suffixdet:4");
    std::string markov_spec = "markov:1/2,1/2;9/10,1/10;1/10,9/10";
    CHECK(parse_measure_spec(markov_spec).spec_string() == markov_spec);

    // Parsed values behave.
    Semimeasure m = parse_measure_spec("ber:3/5");
    CHECK(m.eval(FinStr::parse(Alphabet(2), "1")) == Rat(3, 5));

    CHECK_THROWS_AS(parse_measure_spec("ber"), InputError);
    CHECK_THROWS_AS(parse_measure_spec("nope:1/2"), InputError);
    CHECK_THROWS_AS(parse_measure_spec("det:01"), InputError);
    CHECK_THROWS_AS(parse_measure_spec("ber:1/2,2/3"), InputError);  // sums above 1
}

TEST_CASE("class config builds a weighted class") {
    ClassConfig cc;
    cc.name = "pair";
    cc.model_specs = {"ber:1/3", "ber:2/3"};
    cc.weight_strs = {"1/2", "1/2"};
    auto cls = cc.build();
    CHECK(cls->size() == 2);
    CHECK(xi_eval(*cls, FinStr::parse(Alphabet(2), "1")) == Rat(1, 2));
}

TEST_CASE("experiment config json") {
    std::string text = R"({
      "alphabet": 2,
      "classes": [
        {"name": "pair", "models": ["ber:1/3", "ber:2/3"], "weights": ["1/2", "1/2"]}
      ],
      "horizons": {"L": 12, "S": 1500, "depth": 5, "n": 9},
      "seed": 7,
      "workers": 4,
      "max_evals": 123456
    })";
    ExperimentConfig cfg = ExperimentConfig::from_json_text(text);
    CHECK(cfg.alphabet == 2);
    CHECK(cfg.classes.size() == 1);
    CHECK(cfg.horizon_L == 12);
    CHECK(cfg.horizon_S == 1500);
    CHECK(cfg.horizon_depth == 5);
    CHECK(cfg.horizon_n == 9);
    CHECK(cfg.seed == 7);
    CHECK(cfg.max_evals == 123456);
    enforce_budget_caps(cfg);

    CHECK_THROWS_AS(ExperimentConfig::from_json_text("{"), InputError);

    ExperimentConfig over = cfg;
    over.horizon_L = 99;
    CHECK_THROWS_AS(enforce_budget_caps(over), BudgetError);
}

TEST_CASE("catalog classes satisfy the acceptance preconditions") {
    std::vector<CatalogClass> catalog = standard_catalog();
    CHECK(catalog.size() >= 5);
    bool saw_binary = false, saw_ternary = false;
    for (const CatalogClass& cc : catalog) {
        int n = cc.members->alphabet().size;
        CHECK((n == 2 || n == 3));
        saw_binary = saw_binary || n == 2;
        saw_ternary = saw_ternary || n == 3;
        Rat total = 0;
        for (const Rat& w : cc.members->weights) total += w;
        CHECK(total == 1);
        for (const Semimeasure& m : cc.members->models) CHECK(m.is_measure());
    }
    CHECK(saw_binary);
    CHECK(saw_ternary);
}

TEST_CASE("registry spec targets for the periodic families") {
    Alphabet bin(2);
    CHECK(registry_spec_target(suffix_deterministic(5)) == numeral(bin, 5));
    Semimeasure periodic =
        deterministic(FinStr(bin), FinStr::parse(bin, "0001"));
    CHECK(registry_spec_target(periodic) == numeral(bin, 3));
    CHECK(!registry_spec_target(bernoulli_binary(Rat(1, 2))).has_value());
    // (01)^inf is the n = 1 member of the 0^n 1 family.
    CHECK(registry_spec_target(deterministic(FinStr(bin), FinStr::parse(bin, "01"))) ==
          numeral(bin, 1));
    CHECK(!registry_spec_target(deterministic(FinStr(bin), FinStr::parse(bin, "10"))).has_value());
}

TEST_CASE("registry prior weights come from code lengths") {
    MachineRegistry reg = canonical_registry(Alphabet(2));
    std::vector<CatalogMeasure> ms = {
        {"sd3", suffix_deterministic(3), registry_spec_target(suffix_deterministic(3))},
        {"coin", bernoulli_binary(Rat(1, 2)), std::nullopt},
    };
    std::vector<Rat> w = registry_prior_weights(reg, ms, 12, 500, 10);
    REQUIRE(w.size() == 2);
    // numeral(3) = "11" has K_12 = 6 via the literal base.
    CHECK(w[0] == pow2_rat(-6));
    CHECK(w[1] == pow2_rat(-10));  // fallback
    Rat total = w[0] + w[1];
    CHECK(total <= 1);
}
