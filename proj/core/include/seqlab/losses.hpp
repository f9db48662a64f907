#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqlab/measures.hpp"

namespace seqlab {

enum class DistanceKind {
    SquaredEuclid,   // sum (rho - mu)^2
    SquaredAbs,      // 1/2 (sum |rho - mu|)^2
    Hellinger,       // sum (sqrt rho - sqrt mu)^2
    KL,              // sum mu ln(mu / rho)
    SquaredRegret,   // 1/2 (l^rho - l^mu)^2 against a loss matrix
};

const char* distance_kind_name(DistanceKind k);
std::vector<DistanceKind> all_distance_kinds();

// Loss(symbol, action), entries in [0, 1].  Rows = symbols, columns = actions.
struct LossMatrix {
    std::size_t n_symbols = 0;
    std::size_t n_actions = 0;
    std::vector<Rat> entries;  // row-major

    LossMatrix(std::size_t symbols, std::size_t actions, std::vector<Rat> values);
    const Rat& at(std::size_t symbol, std::size_t action) const {
        return entries[symbol * n_actions + action];
    }

    // 0/1 error loss over a square symbol/action space.
    static LossMatrix zero_one(std::size_t n);
};

struct BayesAction {
    std::size_t action = 0;
    Rat expected_loss;  // l^rho, exact
};

// argmin over actions of sum_x Loss(x, a) rho(x); ties break to the lowest
// action index.  Exact rational comparisons.
BayesAction bayes_action(std::span<const Rat> pred, const LossMatrix& loss);

// Per-step distance between the environment's and the predictor's
// next-symbol distributions.  mu must sum to exactly 1; rho is taken as
// given (semimeasure predictions may sub-sum and are not renormalized).
// KL returns +inf when some mu_a > 0 has rho_a = 0.
double step_distance(std::span<const Rat> mu, std::span<const Rat> rho, DistanceKind kind,
                     const LossMatrix* loss = nullptr);

// One step ledger row: per-kind mu-expected distance at time t.
struct StepRecord {
    int t = 0;
    std::vector<double> expected_distance;  // parallel to the ledger's kinds
};

// Cumulative divergence record for a (mu, rho) pair over steps l..n.
struct DivergenceLedger {
    std::string mu_spec;
    std::string rho_spec;
    int start_l = 1;
    int end_n = 0;
    std::vector<DistanceKind> kinds;

    std::vector<StepRecord> steps;   // E[s_t | history], t = l..n
    std::vector<double> lhs;         // per kind, sum over t
    std::vector<double> rhs_by_n;    // D_{l:t} for t = l..n
    double rhs = 0.0;                // D_{l:n}
    bool rhs_infinite = false;       // rho gave mass 0 to a mu-positive continuation

    // 0 <= lhs <= rhs for every kind, within tol on the float accumulation.
    bool chain_holds(double tol) const;
    // D_{l:t} nondecreasing in t, within tol.
    bool rhs_nondecreasing(double tol) const;

    std::string csv() const;  // kind,l,n,lhs,rhs,slack
};

// Exact exhaustive expectation over all continuations of length n-l+1,
// weighted by mu(.|history).  Requires mu to be a measure and
// l(history) = l-1 with mu(history) > 0.
DivergenceLedger cumulative_divergence(const Semimeasure& mu, const Semimeasure& rho,
                                       const FinStr& history, int n,
                                       const std::vector<DistanceKind>& kinds,
                                       const LossMatrix* loss = nullptr,
                                       const EnumBudget& budget = default_budget());

struct MonteCarloEstimate {
    std::vector<DistanceKind> kinds;
    std::vector<double> lhs_mean;
    std::vector<double> lhs_stderr;
    double rhs_mean = 0.0;
    double rhs_stderr = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t infinite_paths = 0;  // paths where rho assigned mass 0
};

// Seeded, reproducible Monte Carlo estimate of the same quantities.
MonteCarloEstimate monte_carlo_divergence(const Semimeasure& mu, const Semimeasure& rho,
                                          const FinStr& history, int n,
                                          std::uint64_t samples, std::uint64_t seed,
                                          const std::vector<DistanceKind>& kinds,
                                          const LossMatrix* loss = nullptr);

}  // namespace seqlab
