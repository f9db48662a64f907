#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seqlab/rational.hpp"
#include "seqlab/strings.hpp"

namespace seqlab {

// A semimeasure maps finite strings to exact nonnegative rationals with
// sum_a rho(xa) <= rho(x) and rho(eps) <= 1.  Kernels implement mass();
// Semimeasure is the shared-ownership value handle.
class SemimeasureKernel {
public:
    virtual ~SemimeasureKernel() = default;

    virtual Rat mass(const FinStr& x) const = 0;

    // Canonical textual form in the config grammar (round-trip tested).
    virtual std::string spec_string() const = 0;

    const Alphabet& alphabet() const { return alpha_; }
    bool is_measure() const { return is_measure_; }
    bool is_deterministic() const { return is_deterministic_; }

protected:
    SemimeasureKernel(Alphabet a, bool measure, bool deterministic)
        : alpha_(a), is_measure_(measure), is_deterministic_(deterministic) {}

    Alphabet alpha_;
    bool is_measure_;
    bool is_deterministic_;
};

class Semimeasure {
public:
    explicit Semimeasure(std::shared_ptr<const SemimeasureKernel> kernel)
        : kernel_(std::move(kernel)) {}

    const Alphabet& alphabet() const { return kernel_->alphabet(); }
    bool is_measure() const { return kernel_->is_measure(); }
    bool is_deterministic() const { return kernel_->is_deterministic(); }
    std::string spec_string() const { return kernel_->spec_string(); }

    // rho(x).  Exact and reproducible.
    Rat eval(const FinStr& x) const;

    // rho(y|x) = rho(xy)/rho(x); the uniform version |X|^-l(y) when rho(x)=0.
    Rat conditional(const FinStr& x, const FinStr& y) const;

    // Next-symbol distribution rho(.|x) as a vector indexed by symbol.
    std::vector<Rat> predictive(const FinStr& x) const;

private:
    std::shared_ptr<const SemimeasureKernel> kernel_;
};

// --- catalog families ---

// I.i.d. per-symbol probabilities; alphabet size = probs.size().
Semimeasure bernoulli(std::vector<Rat> probs);

// Binary shorthand: P(1) = p.
Semimeasure bernoulli_binary(const Rat& p);

// Order-k Markov chain.  The first k symbols are drawn i.i.d. from `init`;
// later symbols use the row indexed by the previous k symbols (most
// significant first).  rows.size() must be |X|^k.
Semimeasure markov(std::vector<Rat> init, std::vector<std::vector<Rat>> rows);

// Deterministic measure of the eventually periodic sequence u v^inf.
Semimeasure deterministic(const FinStr& head, const FinStr& period);

// The mu^l family: deterministic on 0^l 1^inf over the binary alphabet.
Semimeasure suffix_deterministic(int l);

// mu^x(y) := mu(y|x), with the uniform fallback when mu(x) = 0.
Semimeasure conditionalized(const Semimeasure& base, const FinStr& prefix);

// --- verification ---

struct SemimeasureCheck {
    bool is_semimeasure = true;          // no node violates sum_a rho(xa) <= rho(x)
    bool is_measure_up_to_depth = true;  // equality everywhere and rho(eps) = 1
    Rat max_violation = 0;               // max over nodes of (sum children - parent), clamped at 0
    Rat min_slack = 0;                   // min over nodes of (parent - sum children)
    std::optional<FinStr> worst_x;       // argmax of the violation / argmin of the slack
    std::uint64_t nodes_checked = 0;
};

// Exhaustively verifies the semimeasure inequality for all l(x) < depth.
SemimeasureCheck check_semimeasure(const Semimeasure& m, int depth,
                                   const EnumBudget& budget = default_budget());

// Same walk over a bare evaluation function (used to audit constructions
// that are not catalog members, e.g. the length-split mixtures in bounds).
SemimeasureCheck check_semimeasure_fn(Alphabet a,
                                      const std::function<Rat(const FinStr&)>& eval,
                                      int depth,
                                      const EnumBudget& budget = default_budget());

}  // namespace seqlab
