#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seqlab/measures.hpp"

namespace seqlab {

// Finite model class with prior weights.  Weights are positive rationals
// with sum <= 1 (equality when modeling the Bayes mixture exactly).
struct WeightedClass {
    std::vector<Semimeasure> models;
    std::vector<Rat> weights;

    WeightedClass(std::vector<Semimeasure> models_, std::vector<Rat> weights_);

    const Alphabet& alphabet() const { return models.front().alphabet(); }
    std::size_t size() const { return models.size(); }
};

// xi(x) = sum_i w_i nu_i(x), exact.
Rat xi_eval(const WeightedClass& c, const FinStr& x);

// Wraps the class mixture as a Semimeasure so it can sit in the catalog and
// feed the losses/bounds modules directly.
Semimeasure mixture_semimeasure(std::shared_ptr<const WeightedClass> c);

struct DominanceReport {
    std::uint64_t strings_checked = 0;
    std::uint64_t violations = 0;
    Rat min_slack = 0;                // min over x of xi(x) - w_mu mu(x)
    std::optional<FinStr> argmin;
};

// Verifies xi(x) >= w_mu mu(x) for all l(x) <= depth, exact comparison.
DominanceReport dominance_check(const WeightedClass& c, std::size_t mu_index, int depth,
                                const EnumBudget& budget = default_budget());

// Posterior weights w_nu(x) = w_nu nu(x) / xi(x).  Requires xi(x) > 0.
std::vector<Rat> posterior_weights(const WeightedClass& c, const FinStr& x);

struct PosteriorBound {
    Rat posterior;        // w_mu(x), exact
    double ln_inverse;    // ln(1 / w_mu(x)); +inf when the posterior is 0
    bool infinite;
};

// ln w_mu(x)^-1, the finite-class analogue of the posterior future bound.
PosteriorBound posterior_bound(const WeightedClass& c, std::size_t mu_index, const FinStr& x);

// Sequential posterior state.  Value type: advancing produces a new state,
// and the incremental update equals the from-scratch computation exactly.
class MixtureState {
public:
    static MixtureState initial(std::shared_ptr<const WeightedClass> c);
    static MixtureState from_history(std::shared_ptr<const WeightedClass> c, const FinStr& x);

    MixtureState advanced(Sym a) const;

    const FinStr& history() const { return history_; }
    const std::vector<Rat>& posterior() const { return posterior_; }
    const WeightedClass& model_class() const { return *class_; }

    // xi(a|history), exact.
    Rat predictive(Sym a) const;

private:
    MixtureState(std::shared_ptr<const WeightedClass> c, FinStr h, std::vector<Rat> post)
        : class_(std::move(c)), history_(std::move(h)), posterior_(std::move(post)) {}

    std::shared_ptr<const WeightedClass> class_;
    FinStr history_;
    std::vector<Rat> posterior_;
};

// CSV trace along a history: t, symbol, per-model posterior "num/den",
// next-symbol xi-predictive probabilities.
std::string posterior_trace_csv(std::shared_ptr<const WeightedClass> c, const FinStr& history);

}  // namespace seqlab
