#include <doctest.h>

#include <random>

#include "seqlab/mixture.hpp"

using namespace seqlab;

namespace {

const Alphabet bin(2);

std::shared_ptr<const WeightedClass> ber_pair() {
    return std::make_shared<WeightedClass>(
        std::vector<Semimeasure>{bernoulli_binary(Rat(1, 3)), bernoulli_binary(Rat(2, 3))},
        std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
}

}  // namespace

TEST_CASE("mixture evaluation") {
    auto c = ber_pair();
    CHECK(xi_eval(*c, FinStr::parse(bin, "1")) == Rat(1, 2));
    // Hand arithmetic: 1/2 (1/9 + 4/9) = 5/18.
    CHECK(xi_eval(*c, FinStr::parse(bin, "11")) == Rat(5, 18));

    // Single-model class: xi == mu everywhere.
    auto single = std::make_shared<WeightedClass>(
        std::vector<Semimeasure>{bernoulli_binary(Rat(1, 3))}, std::vector<Rat>{Rat(1)});
    for (const char* s : {"", "0", "10", "0110"})
        CHECK(xi_eval(*single, FinStr::parse(bin, s)) ==
              single->models[0].eval(FinStr::parse(bin, s)));
}

TEST_CASE("class validation") {
    CHECK_THROWS_AS(WeightedClass({bernoulli_binary(Rat(1, 2))}, {Rat(0)}), InputError);
    CHECK_THROWS_AS(WeightedClass({bernoulli_binary(Rat(1, 2))}, {Rat(2)}), InputError);
    CHECK_THROWS_AS(WeightedClass({}, {}), InputError);
    CHECK_THROWS_AS(WeightedClass({bernoulli_binary(Rat(1, 2)),
                                   bernoulli({Rat(1, 3), Rat(1, 3), Rat(1, 3)})},
                                  {Rat(1, 2), Rat(1, 2)}),
                    InputError);
}

TEST_CASE("dominance") {
    auto c = ber_pair();
    DominanceReport rep = dominance_check(*c, 0, 6);
    CHECK(rep.violations == 0);
    CHECK(rep.min_slack >= 0);

    // Equality case: a single-model class has slack exactly 0 everywhere.
    auto single = std::make_shared<WeightedClass>(
        std::vector<Semimeasure>{bernoulli_binary(Rat(2, 5))}, std::vector<Rat>{Rat(1)});
    DominanceReport eq = dominance_check(*single, 0, 5);
    CHECK(eq.violations == 0);
    CHECK(eq.min_slack == 0);

    // Arithmetic oracle at x = "11" for mu = Ber(1/3): 5/18 - 1/18 = 2/9.
    Rat slack = xi_eval(*c, FinStr::parse(bin, "11")) -
                c->weights[0] * c->models[0].eval(FinStr::parse(bin, "11"));
    CHECK(slack == Rat(2, 9));
}

TEST_CASE("posterior weights") {
    auto c = ber_pair();
    // Empty history: priors unchanged.
    std::vector<Rat> prior = posterior_weights(*c, FinStr(bin));
    CHECK(prior == c->weights);
    // Bayes rule by hand after one '1'.
    std::vector<Rat> post = posterior_weights(*c, FinStr::parse(bin, "1"));
    CHECK(post[0] == Rat(1, 3));
    CHECK(post[1] == Rat(2, 3));

    // A deterministic model killed by its first mismatch.
    auto with_det = std::make_shared<WeightedClass>(
        std::vector<Semimeasure>{deterministic(FinStr(bin), FinStr::parse(bin, "0")),
                                 bernoulli_binary(Rat(1, 2))},
        std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
    std::vector<Rat> killed = posterior_weights(*with_det, FinStr::parse(bin, "1"));
    CHECK(killed[0] == 0);
    CHECK(killed[1] == 1);
}

TEST_CASE("posterior bound") {
    auto c = ber_pair();
    PosteriorBound at_eps = posterior_bound(*c, 0, FinStr(bin));
    CHECK(at_eps.ln_inverse == doctest::Approx(std::log(2.0)));

    auto single = std::make_shared<WeightedClass>(
        std::vector<Semimeasure>{bernoulli_binary(Rat(1, 3))}, std::vector<Rat>{Rat(1)});
    for (const char* s : {"", "01", "111"})
        CHECK(posterior_bound(*single, 0, FinStr::parse(bin, s)).ln_inverse ==
              doctest::Approx(0.0));

    PosteriorBound pb = posterior_bound(*c, 1, FinStr::parse(bin, "1"));
    CHECK(pb.posterior == Rat(2, 3));
    CHECK(pb.ln_inverse == doctest::Approx(std::log(1.5)));

    auto with_det = std::make_shared<WeightedClass>(
        std::vector<Semimeasure>{deterministic(FinStr(bin), FinStr::parse(bin, "0")),
                                 bernoulli_binary(Rat(1, 2))},
        std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
    PosteriorBound dead = posterior_bound(*with_det, 0, FinStr::parse(bin, "1"));
    CHECK(dead.infinite);
}

TEST_CASE("incremental posterior equals from-scratch, exactly") {
    auto c = ber_pair();
    std::mt19937_64 rng(23);
    for (int it = 0; it < 50; ++it) {
        FinStr h(bin);
        MixtureState state = MixtureState::initial(c);
        for (int t = 0; t < 12; ++t) {
            Sym a = static_cast<Sym>(rng() & 1);
            h.push_back(a);
            state = state.advanced(a);
        }
        MixtureState scratch = MixtureState::from_history(c, h);
        CHECK(state.posterior() == scratch.posterior());
    }
}

TEST_CASE("posterior martingale and the mixture chain rule") {
    auto c = ber_pair();
    std::mt19937_64 rng(29);
    Semimeasure xi = mixture_semimeasure(c);
    for (int it = 0; it < 100; ++it) {
        FinStr x(bin);
        std::size_t len = rng() % 6;
        for (std::size_t i = 0; i < len; ++i) x.push_back(static_cast<Sym>(rng() & 1));
        std::vector<Rat> post = posterior_weights(*c, x);
        Rat total = 0;
        for (const Rat& w : post) total += w;
        CHECK(total == 1);  // sum w = 1 and all members are measures

        FinStr y(bin);
        std::size_t ylen = 1 + rng() % 3;
        for (std::size_t i = 0; i < ylen; ++i) y.push_back(static_cast<Sym>(rng() & 1));
        Rat chain = 0;
        for (std::size_t i = 0; i < c->size(); ++i)
            chain += post[i] * c->models[i].conditional(x, y);
        CHECK(chain == xi.conditional(x, y));
    }
}

TEST_CASE("degenerate history is an error") {
    auto only_det = std::make_shared<WeightedClass>(
        std::vector<Semimeasure>{deterministic(FinStr(bin), FinStr::parse(bin, "0"))},
        std::vector<Rat>{Rat(1)});
    CHECK_THROWS_AS(posterior_weights(*only_det, FinStr::parse(bin, "1")), InputError);
}

TEST_CASE("posterior trace csv shape") {
    auto c = ber_pair();
    std::string csv = posterior_trace_csv(c, FinStr::parse(bin, "101"));
    CHECK(csv.rfind("t,symbol,w0,w1,xi_pred0,xi_pred1\n", 0) == 0);
    // Header plus one row per step 0..3.
    int lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 5);
    // Deterministic: a second call gives identical bytes.
    CHECK(csv == posterior_trace_csv(c, FinStr::parse(bin, "101")));
}
