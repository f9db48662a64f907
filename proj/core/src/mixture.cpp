#include "seqlab/mixture.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace seqlab {

WeightedClass::WeightedClass(std::vector<Semimeasure> models_, std::vector<Rat> weights_)
    : models(std::move(models_)), weights(std::move(weights_)) {
    for (Rat& w : weights) w.canonicalize();
    if (models.empty() || models.size() != weights.size())
        throw InputError("class needs equally many models and weights, at least one");
    Rat total = 0;
    for (const Rat& w : weights) {
        if (sgn(w) <= 0) throw InputError("class weights must be positive");
        total += w;
    }
    if (total > 1) throw InputError("class weights must sum to at most 1");
    for (const Semimeasure& m : models)
        if (!(m.alphabet() == models.front().alphabet()))
            throw InputError("class models must share one alphabet");
}

Rat xi_eval(const WeightedClass& c, const FinStr& x) {
    if (!(x.alphabet() == c.alphabet())) throw InputError("xi_eval: alphabet mismatch");
    Rat total = 0;
    for (std::size_t i = 0; i < c.size(); ++i) total += c.weights[i] * c.models[i].eval(x);
    return total;
}

namespace {

class MixtureKernel final : public SemimeasureKernel {
public:
    explicit MixtureKernel(std::shared_ptr<const WeightedClass> c)
        : SemimeasureKernel(c->alphabet(), mixture_is_measure(*c), false), class_(std::move(c)) {}

    Rat mass(const FinStr& x) const override { return xi_eval(*class_, x); }

    std::string spec_string() const override {
        std::ostringstream out;
        out << "mix(";
        for (std::size_t i = 0; i < class_->size(); ++i) {
            if (i) out << ';';
            out << rat_str(class_->weights[i]) << '*' << class_->models[i].spec_string();
        }
        out << ')';
        return out.str();
    }

private:
    static bool mixture_is_measure(const WeightedClass& c) {
        Rat total = 0;
        for (const Rat& w : c.weights) total += w;
        if (total != 1) return false;
        for (const Semimeasure& m : c.models)
            if (!m.is_measure()) return false;
        return true;
    }

    std::shared_ptr<const WeightedClass> class_;
};

}  // namespace

Semimeasure mixture_semimeasure(std::shared_ptr<const WeightedClass> c) {
    return Semimeasure(std::make_shared<MixtureKernel>(std::move(c)));
}

DominanceReport dominance_check(const WeightedClass& c, std::size_t mu_index, int depth,
                                const EnumBudget& budget) {
    if (mu_index >= c.size()) throw InputError("dominance_check: bad model index");
    DominanceReport report;
    auto meter = budget.meter();
    bool have = false;
    for_each_string_up_to(c.alphabet(), depth, [&](const FinStr& x) {
        meter.tick(c.size());
        ++report.strings_checked;
        Rat slack = xi_eval(c, x) - c.weights[mu_index] * c.models[mu_index].eval(x);
        if (sgn(slack) < 0) ++report.violations;
        if (!have || slack < report.min_slack) {
            report.min_slack = slack;
            report.argmin = x;
            have = true;
        }
    });
    return report;
}

std::vector<Rat> posterior_weights(const WeightedClass& c, const FinStr& x) {
    Rat xi = xi_eval(c, x);
    if (sgn(xi) == 0) throw InputError("posterior_weights: degenerate history, xi(x) = 0");
    std::vector<Rat> post;
    post.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        post.push_back(c.weights[i] * c.models[i].eval(x) / xi);
    return post;
}

PosteriorBound posterior_bound(const WeightedClass& c, std::size_t mu_index, const FinStr& x) {
    if (mu_index >= c.size()) throw InputError("posterior_bound: bad model index");
    std::vector<Rat> post = posterior_weights(c, x);
    const Rat& w = post[mu_index];
    if (sgn(w) == 0)
        return PosteriorBound{w, std::numeric_limits<double>::infinity(), true};
    return PosteriorBound{w, -ln_rat(w), false};
}

MixtureState MixtureState::initial(std::shared_ptr<const WeightedClass> c) {
    FinStr eps(c->alphabet());
    std::vector<Rat> post = posterior_weights(*c, eps);
    return MixtureState(std::move(c), eps, std::move(post));
}

MixtureState MixtureState::from_history(std::shared_ptr<const WeightedClass> c, const FinStr& x) {
    std::vector<Rat> post = posterior_weights(*c, x);
    return MixtureState(std::move(c), x, std::move(post));
}

Rat MixtureState::predictive(Sym a) const {
    Rat xi_x = xi_eval(*class_, history_);
    if (sgn(xi_x) == 0) throw InputError("predictive: degenerate history");
    return xi_eval(*class_, history_.appended(a)) / xi_x;
}

MixtureState MixtureState::advanced(Sym a) const {
    Rat step = predictive(a);
    if (sgn(step) == 0) throw InputError("advanced: next symbol has xi-probability 0");
    std::vector<Rat> post;
    post.reserve(posterior_.size());
    for (std::size_t i = 0; i < posterior_.size(); ++i) {
        Rat nu_step = class_->models[i].conditional(history_, FinStr(history_.alphabet()).appended(a));
        // Zero-posterior terms stay zero regardless of the fallback version.
        post.push_back(sgn(posterior_[i]) == 0 ? Rat(0) : posterior_[i] * nu_step / step);
    }
    return MixtureState(class_, history_.appended(a), std::move(post));
}

std::string posterior_trace_csv(std::shared_ptr<const WeightedClass> c, const FinStr& history) {
    std::ostringstream out;
    out << "t,symbol";
    for (std::size_t i = 0; i < c->size(); ++i) out << ",w" << i;
    for (Sym a = 0; a < c->alphabet().size; ++a) out << ",xi_pred" << a;
    out << '\n';

    MixtureState state = MixtureState::initial(c);
    for (std::size_t t = 0; t <= history.length(); ++t) {
        out << t << ',' << (t == 0 ? std::string("-") : std::string(1, static_cast<char>('0' + history.at(t - 1))));
        for (const Rat& w : state.posterior()) out << ',' << rat_str(w);
        for (Sym a = 0; a < c->alphabet().size; ++a) out << ',' << rat_str(state.predictive(a));
        out << '\n';
        if (t < history.length()) state = state.advanced(history.at(t));
    }
    return out.str();
}

}  // namespace seqlab
