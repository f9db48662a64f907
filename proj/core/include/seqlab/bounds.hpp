#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqlab/losses.hpp"
#include "seqlab/mixture.hpp"

namespace seqlab {

// Horizon metadata attached to reports whose sides are approximations.
struct Horizon {
    std::optional<int> L;
    std::optional<long> S;
    std::optional<int> depth;
    std::optional<int> n;
};

enum class Verdict { Verified, Violated, Inconclusive };
const char* verdict_name(Verdict v);

// One verified inequality instance.  In the exact regime a negative slack
// means Violated; whenever a side is an enumeration-horizon approximation,
// the direction note names which side over/under-approximates and the
// verdict may only be Verified or Inconclusive.
struct BoundReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string direction;  // empty only for exact-regime reports
    Horizon horizon;
    Verdict verdict = Verdict::Inconclusive;
    std::string note;

    double slack() const { return rhs - lhs; }
};

// d_mu(x) = log2 surrogate(x)/mu(x), ratio kept exact; the ceiling is
// computed on the rational, never through a float.
struct DeficiencyRecord {
    std::string surrogate_spec;
    std::string mu_spec;
    FinStr x;
    bool infinite = false;  // mu(x) = 0
    Rat ratio;              // surrogate(x)/mu(x) when finite
    double d = 0.0;
    long ceil_d = 0;
};

DeficiencyRecord deficiency(const Semimeasure& surrogate, const Semimeasure& mu,
                            const FinStr& x);

// Exact telescoping identity log2(mu(y|x)/rho(y|x)) = d(x) - d(xy), checked
// as a rational-ratio equality (zero tolerance).
BoundReport telescoping_check(const Semimeasure& surrogate, const Semimeasure& mu,
                              const FinStr& x, const FinStr& y);

// Optional registry-regime right-hand side for the length-based bound:
// K_L(mu-spec | x) + K_L(l(x)), both enumeration upper bounds.
struct RegistryRhs {
    std::optional<int> k_mu_given_x;
    std::optional<int> k_len_x;
};

// Finite-class exact analogue of the length-based future bound: the LHS is
// log2(mu(y|x)/xi(y|x)), the exact RHS is log2 w_mu(x)^-1.
BoundReport posterior_ratio_report(const WeightedClass& c, std::size_t mu_index, const FinStr& x,
                        const FinStr& y, const std::optional<RegistryRhs>& registry = {});

// The proof's length-split semimeasure over a finite class:
//   psi^l(z) = sum_i 2^-c_i xi(z_{1:l}) nu_i(z_{l+1:}),
// extended below length l by summing over completions.  c_i are the
// supplied conditional complexities (registry values or user weights).
Rat psi_l(const WeightedClass& c, int l, const FinStr& z, std::span<const long> cond_complexities);

// Integer-complexity oracle: registry complexity of a (signed) integer
// target, nullopt when the horizon finds no program.
using IntComplexityFn = std::function<std::optional<int>(long)>;

// Deficiency-conservation bound: exact telescoping identity always asserted;
// RHS = K_L(mu-spec) + K_L(ceil d(x)) is horizon-approximated, so the
// verdict is Verified or Inconclusive, never Violated.
BoundReport conservation_report(const Semimeasure& surrogate, const Semimeasure& mu, const FinStr& x,
                        const FinStr& y, std::optional<int> k_mu_spec,
                        const IntComplexityFn& k_int, Horizon horizon);

// Monotone-conditional bound: RHS = K*_L(mu-spec | x*) + K_L(ceil d(x)).
BoundReport monotone_cond_report(const Semimeasure& surrogate, const Semimeasure& mu, const FinStr& x,
                        const FinStr& y, std::optional<int> kstar_mu_given_x,
                        const IntComplexityFn& k_int, Horizon horizon);

// One step of the adversarial construction: the qualifying symbol b with
// mu(b | alpha_<l) > c = 1/(3 ln 2), decided by exact comparison.
struct AdversarialStep {
    Sym b = 0;
    Rat mu_b;
    Sym chosen = 0;  // alpha_l = complement of b
};

struct AdversarialResult {
    FinStr alpha;
    std::vector<AdversarialStep> certificates;
};

// Builds the adversarial sequence against a binary computable measure:
// at each step take the lexicographically first b with mu(b|alpha_<l) > c
// and emit its complement.
AdversarialResult adversarial_sequence(const Semimeasure& mu, int n);

// The mu^l construction: the deterministic measure on 0^l 1^inf, its
// lemma values, and the one-step divergence against a surrogate.
struct SuffixDetInstance {
    Semimeasure mu_l;
    FinStr x;                        // 0^l
    double one_step_divergence;      // sum_b mu(b|x) ln(mu(b|x)/surrogate(b|x))
    double ln_inv_surrogate_next;    // ln(1 / surrogate(1|x)); the same number
    DeficiencyRecord on_x;           // d(x) = log2 surrogate(x)
};

SuffixDetInstance suffix_det_instance(int l, const Semimeasure& surrogate);

// Deterministic-environment bound: sum_t (1 - rho(alpha_t|alpha_<t)) <=
// -ln rho(alpha_1:n), optionally compared against -ln of a known lower
// bound on rho(alpha_1:n) (mixture weight or enumeration witness mass).
struct DetBoundLowerRef {
    Rat rho_lower_bound;  // rho(alpha_1:n) >= this, exact
    std::string label;
};

BoundReport det_bound_report(const Semimeasure& rho, const Semimeasure& alpha, int n,
                             const std::optional<DetBoundLowerRef>& reference = {});

// Pre-computed registry complexities for the min-over-prefixes corollary
// variant, keyed by history: min_{i<=l} {K_L(mu-spec | h_{1:i}) + K_L(i)}.
struct RegistryChainTerms {
    std::optional<int> min_prefix_term;
    std::optional<int> k_ceil_d;
};
using RegistryTermsFn = std::function<RegistryChainTerms(const FinStr& history, long ceil_d)>;

// Posterior corollary chain for one history: sum_{t>l} E[s_t | h] <=
// D_{l+1:n}(h) <= ln w_mu(h)^-1, plus the total min-over-l form with the
// 2l additive term for the bounded distance kinds.  When registry_terms is
// supplied, also emits the direction-noted min_{i<=l} registry variant.
std::vector<BoundReport> posterior_chain_reports(const WeightedClass& c, std::size_t mu_index,
                                           std::span<const FinStr> histories, int n,
                                           const LossMatrix& loss,
                                           const EnumBudget& budget = default_budget(),
                                           const RegistryTermsFn& registry_terms = {});

}  // namespace seqlab
