#include <doctest.h>

#include <random>

#include "seqlab/measures.hpp"

using namespace seqlab;

namespace {
const Alphabet bin(2);
}

TEST_CASE("bernoulli evaluation") {
    Semimeasure coin = bernoulli_binary(Rat(1, 2));
    CHECK(coin.eval(FinStr::parse(bin, "101")) == Rat(1, 8));
    CHECK(coin.eval(FinStr(bin)) == 1);

    // Independent hand-product oracle for P(1) = 1/3.
    Semimeasure third = bernoulli_binary(Rat(1, 3));
    Rat oracle = Rat(1, 3) * Rat(1, 3);
    CHECK(third.eval(FinStr::parse(bin, "11")) == oracle);
    CHECK(oracle == Rat(1, 9));
}

TEST_CASE("deterministic measures") {
    Semimeasure zeros = deterministic(FinStr(bin), FinStr::parse(bin, "0"));
    CHECK(zeros.eval(FinStr::parse(bin, "01")) == 0);
    CHECK(zeros.eval(FinStr::parse(bin, "00")) == 1);
    CHECK(zeros.is_deterministic());
    CHECK(zeros.is_measure());

    // eval(alpha_1:n) = 1 on the path, 0 off it.
    Semimeasure alt = deterministic(FinStr::parse(bin, "1"), FinStr::parse(bin, "10"));
    FinStr path = eventually_periodic_prefix(FinStr::parse(bin, "1"),
                                             FinStr::parse(bin, "10"), 7);
    for (std::size_t i = 0; i <= path.length(); ++i) CHECK(alt.eval(path.prefix(i)) == 1);
    CHECK(alt.eval(FinStr::parse(bin, "0")) == 0);
}

TEST_CASE("deterministic support is exactly the prefix chain") {
    Semimeasure alt = deterministic(FinStr(bin), FinStr::parse(bin, "01"));
    FinStr path = eventually_periodic_prefix(FinStr(bin), FinStr::parse(bin, "01"), 6);
    for_each_string_up_to(bin, 6, [&](const FinStr& x) {
        Rat expect = x.is_prefix_of(path) ? 1 : 0;
        CHECK(alt.eval(x) == expect);
    });
}

TEST_CASE("markov evaluation") {
    // Sticky chain: stays with probability 9/10; first symbol uniform.
    Semimeasure sticky =
        markov({Rat(1, 2), Rat(1, 2)}, {{Rat(9, 10), Rat(1, 10)}, {Rat(1, 10), Rat(9, 10)}});
    CHECK(sticky.is_measure());
    CHECK(sticky.eval(FinStr::parse(bin, "00")) == Rat(1, 2) * Rat(9, 10));
    CHECK(sticky.eval(FinStr::parse(bin, "010")) == Rat(1, 2) * Rat(1, 10) * Rat(1, 10));
    // Row count must be a power of the alphabet size.
    CHECK_THROWS_AS(markov({Rat(1, 2), Rat(1, 2)},
                           {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1, 2), Rat(1, 2)}}),
                    InputError);
    // Order 0 is legal: one row, i.i.d. draws from it.
    Semimeasure iid = markov({Rat(1, 2), Rat(1, 2)}, {{Rat(1, 4), Rat(3, 4)}});
    CHECK(iid.eval(FinStr::parse(bin, "11")) == Rat(9, 16));
}

TEST_CASE("conditional probabilities and the uniform fallback") {
    Semimeasure coin = bernoulli_binary(Rat(1, 2));
    FinStr x = FinStr::parse(bin, "0011");
    CHECK(coin.conditional(x, FinStr::parse(bin, "10")) == Rat(1, 4));
    CHECK(coin.conditional(x, FinStr(bin)) == 1);  // rho(eps|x) = 1

    // The Lemma-2 family values.
    Semimeasure mu5 = suffix_deterministic(5);
    FinStr zeros5 = repeat(FinStr::parse(bin, "0"), 5);
    CHECK(mu5.eval(zeros5) == 1);
    CHECK(mu5.conditional(zeros5, FinStr::parse(bin, "1")) == 1);
    CHECK(mu5.conditional(zeros5, FinStr::parse(bin, "0")) == 0);

    // Mass-zero prefix: the fixed uniform version.
    Semimeasure zeros = deterministic(FinStr(bin), FinStr::parse(bin, "0"));
    CHECK(zeros.conditional(FinStr::parse(bin, "1"), FinStr::parse(bin, "01")) == Rat(1, 4));
}

TEST_CASE("conditional composition identity") {
    // rho(yz|x) = rho(y|x) rho(z|xy) wherever the masses are positive.
    std::mt19937_64 rng(11);
    std::vector<Semimeasure> ms = {
        bernoulli_binary(Rat(1, 3)),
        markov({Rat(1, 2), Rat(1, 2)}, {{Rat(9, 10), Rat(1, 10)}, {Rat(1, 10), Rat(9, 10)}}),
        bernoulli({Rat(1, 2), Rat(1, 4), Rat(1, 4)}),
    };
    for (const Semimeasure& m : ms) {
        for (int it = 0; it < 200; ++it) {
            auto rand_str = [&](std::size_t max_len) {
                FinStr s(m.alphabet());
                std::size_t len = rng() % (max_len + 1);
                for (std::size_t i = 0; i < len; ++i)
                    s.push_back(static_cast<Sym>(
                        rng() % static_cast<std::uint64_t>(m.alphabet().size)));
                return s;
            };
            FinStr x = rand_str(4), y = rand_str(3), z = rand_str(3);
            if (sgn(m.eval(x)) == 0 || sgn(m.eval(x.concat(y))) == 0) continue;
            CHECK(m.conditional(x, y.concat(z)) ==
                  m.conditional(x, y) * m.conditional(x.concat(y), z));
        }
    }
}

TEST_CASE("alphabet mismatch is an input error") {
    Semimeasure coin = bernoulli_binary(Rat(1, 2));
    FinStr ternary_str = FinStr::parse(Alphabet(3), "012");
    CHECK_THROWS_AS(coin.eval(ternary_str), InputError);
}

TEST_CASE("semimeasure check: catalog families pass, corrupted table flagged") {
    for (int depth : {4, 6}) {
        SemimeasureCheck c = check_semimeasure(bernoulli_binary(Rat(1, 2)), depth);
        CHECK(c.is_semimeasure);
        CHECK(c.is_measure_up_to_depth);
        CHECK(c.max_violation == 0);
    }
    SemimeasureCheck det = check_semimeasure(suffix_deterministic(3), 6);
    CHECK(det.is_semimeasure);
    CHECK(det.is_measure_up_to_depth);

    // Negative control: children sum above the parent at one node.
    auto corrupted = [](const FinStr& x) {
        if (x.length() == 0) return Rat(1);
        if (x.at(0) == 0) return Rat(3, 4);  // 3/4 + 3/4 > 1 at the root
        return Rat(3, 4);
    };
    SemimeasureCheck bad = check_semimeasure_fn(bin, corrupted, 1);
    CHECK(!bad.is_semimeasure);
    CHECK(bad.max_violation == Rat(1, 2));
    REQUIRE(bad.worst_x.has_value());
    CHECK(bad.worst_x->empty());  // the offending x is the root
}

TEST_CASE("strict sub-probability flags is_measure false") {
    Semimeasure sub = bernoulli({Rat(1, 4), Rat(1, 4)});
    CHECK(!sub.is_measure());
    SemimeasureCheck c = check_semimeasure(sub, 4);
    CHECK(c.is_semimeasure);
    CHECK(!c.is_measure_up_to_depth);
    CHECK(c.min_slack > 0);
}

TEST_CASE("conditionalized measure") {
    Semimeasure sticky =
        markov({Rat(1, 2), Rat(1, 2)}, {{Rat(9, 10), Rat(1, 10)}, {Rat(1, 10), Rat(9, 10)}});
    FinStr prefix = FinStr::parse(bin, "01");
    Semimeasure cond = conditionalized(sticky, prefix);
    FinStr y = FinStr::parse(bin, "10");
    CHECK(cond.eval(y) == sticky.conditional(prefix, y));
    CHECK(cond.is_measure());
    SemimeasureCheck c = check_semimeasure(cond, 5);
    CHECK(c.is_measure_up_to_depth);
}

TEST_CASE("budget guard trips") {
    EnumBudget tiny;
    tiny.max_evals = 10;
    CHECK_THROWS_AS(check_semimeasure(bernoulli_binary(Rat(1, 2)), 8, tiny), BudgetError);
}

TEST_CASE("every cataloged family passes the check at depth 8") {
    std::vector<Semimeasure> families = {
        bernoulli_binary(Rat(1, 3)),
        bernoulli({Rat(1, 2), Rat(1, 4), Rat(1, 4)}),
        markov({Rat(1, 2), Rat(1, 2)}, {{Rat(9, 10), Rat(1, 10)}, {Rat(1, 10), Rat(9, 10)}}),
        deterministic(FinStr(bin), FinStr::parse(bin, "01")),
        suffix_deterministic(4),
        conditionalized(bernoulli_binary(Rat(2, 3)), FinStr::parse(bin, "10")),
    };
    for (const Semimeasure& m : families) {
        int depth = m.alphabet().size == 2 ? 8 : 7;
        SemimeasureCheck c = check_semimeasure(m, depth);
        CHECK(c.is_semimeasure);
        CHECK(c.is_measure_up_to_depth);
    }
    // The widest alphabet in scope.
    SemimeasureCheck quad =
        check_semimeasure(bernoulli(std::vector<Rat>(4, Rat(1, 4))), 7);
    CHECK(quad.is_semimeasure);
    CHECK(quad.is_measure_up_to_depth);
}
