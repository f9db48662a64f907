#include "seqlab/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace seqlab {

const char* distance_kind_name(DistanceKind k) {
    switch (k) {
        case DistanceKind::SquaredEuclid: return "sq_euclid";
        case DistanceKind::SquaredAbs: return "sq_abs";
        case DistanceKind::Hellinger: return "hellinger";
        case DistanceKind::KL: return "kl";
        case DistanceKind::SquaredRegret: return "sq_regret";
    }
    return "?";
}

std::vector<DistanceKind> all_distance_kinds() {
    return {DistanceKind::SquaredEuclid, DistanceKind::SquaredAbs, DistanceKind::Hellinger,
            DistanceKind::KL, DistanceKind::SquaredRegret};
}

LossMatrix::LossMatrix(std::size_t symbols, std::size_t actions, std::vector<Rat> values)
    : n_symbols(symbols), n_actions(actions), entries(std::move(values)) {
    for (Rat& v : entries) v.canonicalize();
    if (n_symbols == 0 || n_actions == 0 || entries.size() != n_symbols * n_actions)
        throw InputError("loss matrix shape mismatch");
    for (const Rat& v : entries)
        if (sgn(v) < 0 || v > 1) throw InputError("loss entries must lie in [0,1]");
}

LossMatrix LossMatrix::zero_one(std::size_t n) {
    std::vector<Rat> e(n * n, Rat(1));
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 0;
    return LossMatrix(n, n, std::move(e));
}

BayesAction bayes_action(std::span<const Rat> pred, const LossMatrix& loss) {
    if (pred.size() != loss.n_symbols) throw InputError("bayes_action: size mismatch");
    BayesAction best;
    bool have = false;
    for (std::size_t a = 0; a < loss.n_actions; ++a) {
        Rat expected = 0;
        for (std::size_t s = 0; s < loss.n_symbols; ++s) expected += loss.at(s, a) * pred[s];
        if (!have || expected < best.expected_loss) {
            best.action = a;
            best.expected_loss = expected;
            have = true;
        }
    }
    return best;
}

namespace {

void require_distribution(std::span<const Rat> mu) {
    Rat total = 0;
    for (const Rat& v : mu) {
        if (sgn(v) < 0) throw InputError("negative probability in distribution");
        total += v;
    }
    if (total != 1) throw InputError("mu must sum to exactly 1");
}

}  // namespace

double step_distance(std::span<const Rat> mu, std::span<const Rat> rho, DistanceKind kind,
                     const LossMatrix* loss) {
    if (mu.size() != rho.size()) throw InputError("step_distance: size mismatch");
    require_distribution(mu);
    for (const Rat& v : rho)
        if (sgn(v) < 0) throw InputError("negative probability in prediction");

    switch (kind) {
        case DistanceKind::SquaredEuclid: {
            Rat acc = 0;
            for (std::size_t i = 0; i < mu.size(); ++i) {
                Rat d = rho[i] - mu[i];
                acc += d * d;
            }
            return acc.get_d();
        }
        case DistanceKind::SquaredAbs: {
            Rat acc = 0;
            for (std::size_t i = 0; i < mu.size(); ++i) acc += abs(rho[i] - mu[i]);
            Rat half_sq = acc * acc / 2;
            return half_sq.get_d();
        }
        case DistanceKind::Hellinger: {
            NeumaierSum acc;
            for (std::size_t i = 0; i < mu.size(); ++i) {
                double d = std::sqrt(rho[i].get_d()) - std::sqrt(mu[i].get_d());
                acc.add(d * d);
            }
            return acc.value();
        }
        case DistanceKind::KL: {
            NeumaierSum acc;
            for (std::size_t i = 0; i < mu.size(); ++i) {
                if (sgn(mu[i]) == 0) continue;
                if (sgn(rho[i]) == 0) return std::numeric_limits<double>::infinity();
                acc.add(mu[i].get_d() * ln_rat(mu[i] / rho[i]));
            }
            return acc.value();
        }
        case DistanceKind::SquaredRegret: {
            if (loss == nullptr) throw InputError("squared regret needs a loss matrix");
            Rat l_rho = bayes_action(rho, *loss).expected_loss;
            Rat l_mu = bayes_action(mu, *loss).expected_loss;
            Rat d = l_rho - l_mu;
            Rat half_sq = d * d / 2;
            return half_sq.get_d();
        }
    }
    throw InputError("unknown distance kind");
}

bool DivergenceLedger::chain_holds(double tol) const {
    if (rhs_infinite) {
        for (double v : lhs)
            if (!(v >= -tol)) return false;
        return true;
    }
    for (double v : lhs)
        if (!(v >= -tol && v <= rhs + tol)) return false;
    return true;
}

bool DivergenceLedger::rhs_nondecreasing(double tol) const {
    for (std::size_t i = 1; i < rhs_by_n.size(); ++i)
        if (rhs_by_n[i] < rhs_by_n[i - 1] - tol) return false;
    return true;
}

std::string DivergenceLedger::csv() const {
    std::ostringstream out;
    out << "kind,l,n,lhs,rhs,slack\n";
    out.precision(17);
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        out << distance_kind_name(kinds[k]) << ',' << start_l << ',' << end_n << ','
            << lhs[k] << ',' << rhs << ',' << (rhs - lhs[k]) << '\n';
    }
    return out.str();
}

namespace {

struct DivergenceWalk {
    const Semimeasure& mu;
    const Semimeasure& rho;
    const std::vector<DistanceKind>& kinds;
    const LossMatrix* loss;
    int horizon;  // continuation length
    EnumBudget::Meter meter;

    // Accumulators indexed by depth offset (0-based step within l..n).
    std::vector<std::vector<NeumaierSum>> step_sums;  // [depth][kind]
    std::vector<NeumaierSum> rhs_partial;             // D_{l:l+depth}
    bool rhs_infinite = false;

    // Walk all continuations, carrying exact path weights.
    void visit(const FinStr& prefix, int depth, const Rat& weight) {
        if (depth == horizon) return;
        meter.tick();

        std::vector<Rat> mu_pred = mu.predictive(prefix);
        std::vector<Rat> rho_pred = rho.predictive(prefix);
        double w = weight.get_d();
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            double s = step_distance(mu_pred, rho_pred, kinds[k], loss);
            step_sums[static_cast<std::size_t>(depth)][k].add(w * s);
        }

        for (Sym a = 0; a < mu.alphabet().size; ++a) {
            const Rat& pa = mu_pred[static_cast<std::size_t>(a)];
            if (sgn(pa) == 0) continue;  // continuation has mu-mass 0
            Rat child_weight = weight * pa;
            const Rat& qa = rho_pred[static_cast<std::size_t>(a)];
            if (sgn(qa) == 0) {
                rhs_infinite = true;
                // The per-step sums are still defined; the RHS is +inf.
                visit(prefix.appended(a), depth + 1, child_weight);
                continue;
            }
            // Ratios stay rational; one log per (node, child) term.
            rhs_partial[static_cast<std::size_t>(depth)].add(child_weight.get_d() *
                                                             ln_rat(pa / qa));
            visit(prefix.appended(a), depth + 1, child_weight);
        }
    }
};

}  // namespace

DivergenceLedger cumulative_divergence(const Semimeasure& mu, const Semimeasure& rho,
                                       const FinStr& history, int n,
                                       const std::vector<DistanceKind>& kinds,
                                       const LossMatrix* loss, const EnumBudget& budget) {
    if (!mu.is_measure()) throw InputError("cumulative_divergence: mu must be a measure");
    if (!(mu.alphabet() == rho.alphabet()))
        throw InputError("cumulative_divergence: alphabet mismatch");
    int l = static_cast<int>(history.length()) + 1;
    if (n < l) throw InputError("cumulative_divergence: n must be >= l");
    if (sgn(mu.eval(history)) == 0)
        throw InputError("cumulative_divergence: history has mu-mass 0");

    int horizon = n - l + 1;
    DivergenceLedger ledger;
    ledger.mu_spec = mu.spec_string();
    ledger.rho_spec = rho.spec_string();
    ledger.start_l = l;
    ledger.end_n = n;
    ledger.kinds = kinds;

    DivergenceWalk walk{mu, rho, kinds, loss, horizon, budget.meter(), {}, {}, false};
    walk.step_sums.assign(static_cast<std::size_t>(horizon),
                          std::vector<NeumaierSum>(kinds.size()));
    walk.rhs_partial.assign(static_cast<std::size_t>(horizon), NeumaierSum{});
    walk.visit(history, 0, Rat(1));

    ledger.rhs_infinite = walk.rhs_infinite;
    ledger.lhs.assign(kinds.size(), 0.0);
    double run = 0.0;
    for (int d = 0; d < horizon; ++d) {
        StepRecord rec;
        rec.t = l + d;
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            double v = walk.step_sums[static_cast<std::size_t>(d)][k].value();
            rec.expected_distance.push_back(v);
            ledger.lhs[k] += v;
        }
        ledger.steps.push_back(std::move(rec));
        run += walk.rhs_partial[static_cast<std::size_t>(d)].value();
        ledger.rhs_by_n.push_back(run);
    }
    ledger.rhs = walk.rhs_infinite ? std::numeric_limits<double>::infinity() : run;
    return ledger;
}

MonteCarloEstimate monte_carlo_divergence(const Semimeasure& mu, const Semimeasure& rho,
                                          const FinStr& history, int n,
                                          std::uint64_t samples, std::uint64_t seed,
                                          const std::vector<DistanceKind>& kinds,
                                          const LossMatrix* loss) {
    if (!mu.is_measure()) throw InputError("monte_carlo_divergence: mu must be a measure");
    int l = static_cast<int>(history.length()) + 1;
    if (n < l) throw InputError("monte_carlo_divergence: n must be >= l");
    if (samples == 0) throw InputError("monte_carlo_divergence: need samples > 0");

    MonteCarloEstimate est;
    est.kinds = kinds;
    est.samples = samples;

    std::mt19937_64 rng(seed);
    std::vector<NeumaierSum> lhs_sum(kinds.size()), lhs_sq(kinds.size());
    NeumaierSum rhs_sum, rhs_sq;

    for (std::uint64_t it = 0; it < samples; ++it) {
        FinStr prefix = history;
        std::vector<double> path_lhs(kinds.size(), 0.0);
        double path_rhs = 0.0;
        bool infinite = false;
        for (int t = 0; t < n - l + 1; ++t) {
            std::vector<Rat> mu_pred = mu.predictive(prefix);
            std::vector<Rat> rho_pred = rho.predictive(prefix);
            for (std::size_t k = 0; k < kinds.size(); ++k)
                path_lhs[k] += step_distance(mu_pred, rho_pred, kinds[k], loss);

            // Exact CDF inversion from one 64-bit draw: r/2^64 in [0,1).
            Rat u(static_cast<unsigned long>(rng()), 1UL);
            u /= pow2_rat(64);
            Sym sym = mu.alphabet().size - 1;
            Rat cdf = 0;
            for (Sym a = 0; a < mu.alphabet().size; ++a) {
                cdf += mu_pred[static_cast<std::size_t>(a)];
                if (u < cdf) {
                    sym = a;
                    break;
                }
            }
            const Rat& pa = mu_pred[static_cast<std::size_t>(sym)];
            const Rat& qa = rho_pred[static_cast<std::size_t>(sym)];
            if (sgn(qa) == 0)
                infinite = true;
            else
                path_rhs += ln_rat(pa / qa);
            prefix = prefix.appended(sym);
        }
        if (infinite) ++est.infinite_paths;
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            lhs_sum[k].add(path_lhs[k]);
            lhs_sq[k].add(path_lhs[k] * path_lhs[k]);
        }
        rhs_sum.add(path_rhs);
        rhs_sq.add(path_rhs * path_rhs);
    }

    double m = static_cast<double>(samples);
    auto stderr_of = [&](double sum, double sumsq) {
        if (samples < 2) return 0.0;
        double mean = sum / m;
        double var = (sumsq - m * mean * mean) / (m - 1);
        return std::sqrt(std::max(var, 0.0) / m);
    };
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        est.lhs_mean.push_back(lhs_sum[k].value() / m);
        est.lhs_stderr.push_back(stderr_of(lhs_sum[k].value(), lhs_sq[k].value()));
    }
    est.rhs_mean = rhs_sum.value() / m;
    est.rhs_stderr = stderr_of(rhs_sum.value(), rhs_sq.value());
    return est;
}

}  // namespace seqlab
