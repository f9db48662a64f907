#include "seqlab/measures.hpp"

#include <sstream>

namespace seqlab {

Rat Semimeasure::eval(const FinStr& x) const {
    if (!(x.alphabet() == alphabet())) throw InputError("eval: alphabet mismatch");
    return kernel_->mass(x);
}

Rat Semimeasure::conditional(const FinStr& x, const FinStr& y) const {
    Rat px = eval(x);
    if (sgn(px) == 0) {
        // The fixed computable version: uniform on y for mass-zero prefixes.
        Rat u = 1;
        for (std::size_t i = 0; i < y.length(); ++i) u /= alphabet().size;
        return u;
    }
    return eval(x.concat(y)) / px;
}

std::vector<Rat> Semimeasure::predictive(const FinStr& x) const {
    std::vector<Rat> out;
    out.reserve(static_cast<std::size_t>(alphabet().size));
    Rat px = eval(x);
    for (Sym a = 0; a < alphabet().size; ++a) {
        if (sgn(px) == 0)
            out.emplace_back(Rat(1, alphabet().size));
        else
            out.push_back(eval(x.appended(a)) / px);
    }
    return out;
}

namespace {

void require_subdistribution(const std::vector<Rat>& p) {
    Rat total = 0;
    for (const Rat& v : p) {
        if (sgn(v) < 0) throw InputError("negative probability");
        total += v;
    }
    if (total > 1) throw InputError("probabilities sum above 1");
}

bool sums_to_one(const std::vector<Rat>& p) {
    Rat total = 0;
    for (const Rat& v : p) {
        Rat c = v;
        c.canonicalize();
        total += c;
    }
    return total == 1;
}

std::string join_rats(const std::vector<Rat>& p) {
    std::ostringstream out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out << ',';
        out << rat_str(p[i]);
    }
    return out.str();
}

class BernoulliKernel final : public SemimeasureKernel {
public:
    explicit BernoulliKernel(std::vector<Rat> probs)
        : SemimeasureKernel(Alphabet(static_cast<int>(probs.size())),
                            sums_to_one(probs), false),
          probs_(std::move(probs)) {
        for (Rat& p : probs_) p.canonicalize();
        require_subdistribution(probs_);
    }

    Rat mass(const FinStr& x) const override {
        Rat p = 1;
        for (std::size_t i = 0; i < x.length(); ++i)
            p *= probs_[static_cast<std::size_t>(x.at(i))];
        return p;
    }

    std::string spec_string() const override { return "ber:" + join_rats(probs_); }

private:
    std::vector<Rat> probs_;
};

class MarkovKernel final : public SemimeasureKernel {
public:
    MarkovKernel(std::vector<Rat> init, std::vector<std::vector<Rat>> rows)
        : SemimeasureKernel(Alphabet(static_cast<int>(init.size())), true, false),
          init_(std::move(init)),
          rows_(std::move(rows)) {
        for (Rat& p : init_) p.canonicalize();
        for (auto& row : rows_)
            for (Rat& p : row) p.canonicalize();
        require_subdistribution(init_);
        bool measure = sums_to_one(init_);
        std::size_t n = static_cast<std::size_t>(alpha_.size);
        order_ = 0;
        std::size_t contexts = 1;
        while (contexts < rows_.size()) {
            contexts *= n;
            ++order_;
        }
        if (contexts != rows_.size() || rows_.empty())
            throw InputError("markov: row count must be a power of the alphabet size");
        for (const auto& row : rows_) {
            if (row.size() != n) throw InputError("markov: row width mismatch");
            require_subdistribution(row);
            measure = measure && sums_to_one(row);
        }
        is_measure_ = measure;
    }

    Rat mass(const FinStr& x) const override {
        Rat p = 1;
        for (std::size_t t = 0; t < x.length(); ++t) {
            Sym s = x.at(t);
            if (t < order_) {
                p *= init_[static_cast<std::size_t>(s)];
            } else {
                std::size_t ctx = 0;
                for (std::size_t j = t - order_; j < t; ++j)
                    ctx = ctx * static_cast<std::size_t>(alpha_.size) +
                          static_cast<std::size_t>(x.at(j));
                p *= rows_[ctx][static_cast<std::size_t>(s)];
            }
        }
        return p;
    }

    std::string spec_string() const override {
        std::ostringstream out;
        out << "markov:" << join_rats(init_);
        for (const auto& row : rows_) out << ';' << join_rats(row);
        return out.str();
    }

private:
    std::vector<Rat> init_;
    std::vector<std::vector<Rat>> rows_;
    std::size_t order_ = 1;
};

class DeterministicKernel final : public SemimeasureKernel {
public:
    DeterministicKernel(FinStr head, FinStr period)
        : SemimeasureKernel(head.alphabet(), true, true),
          head_(std::move(head)),
          period_(std::move(period)) {
        if (period_.empty()) throw InputError("deterministic: period must be nonempty");
        if (!(head_.alphabet() == period_.alphabet()))
            throw InputError("deterministic: alphabet mismatch");
    }

    Rat mass(const FinStr& x) const override {
        for (std::size_t i = 0; i < x.length(); ++i) {
            Sym expect = i < head_.length()
                             ? head_.at(i)
                             : period_.at((i - head_.length()) % period_.length());
            if (x.at(i) != expect) return 0;
        }
        return 1;
    }

    std::string spec_string() const override {
        return "det:" + head_.str() + "|" + period_.str();
    }

private:
    FinStr head_;
    FinStr period_;
};

class SuffixDeterministicKernel final : public SemimeasureKernel {
public:
    explicit SuffixDeterministicKernel(int l)
        : SemimeasureKernel(Alphabet(2), true, true), l_(l) {
        if (l < 1) throw InputError("suffix_deterministic: l must be >= 1");
    }

    Rat mass(const FinStr& x) const override {
        for (std::size_t i = 0; i < x.length(); ++i) {
            Sym expect = i < static_cast<std::size_t>(l_) ? 0 : 1;
            if (x.at(i) != expect) return 0;
        }
        return 1;
    }

    std::string spec_string() const override { return "suffixdet:" + std::to_string(l_); }

private:
    int l_;
};

class ConditionalizedKernel final : public SemimeasureKernel {
public:
    ConditionalizedKernel(Semimeasure base, FinStr prefix)
        : SemimeasureKernel(base.alphabet(),
                            base.is_measure(),
                            base.is_deterministic() && sgn(base.eval(prefix)) > 0),
          base_(std::move(base)),
          prefix_(std::move(prefix)) {
        if (!(prefix_.alphabet() == base_.alphabet()))
            throw InputError("conditionalized: alphabet mismatch");
        // A strict semimeasure conditioned on a positive prefix may sub-sum.
        if (!base_.is_measure()) is_measure_ = false;
    }

    Rat mass(const FinStr& y) const override { return base_.conditional(prefix_, y); }

    std::string spec_string() const override {
        return "cond(" + base_.spec_string() + "|" + prefix_.str() + ")";
    }

private:
    Semimeasure base_;
    FinStr prefix_;
};

}  // namespace

Semimeasure bernoulli(std::vector<Rat> probs) {
    return Semimeasure(std::make_shared<BernoulliKernel>(std::move(probs)));
}

Semimeasure bernoulli_binary(const Rat& p) {
    return bernoulli({Rat(1) - p, p});
}

Semimeasure markov(std::vector<Rat> init, std::vector<std::vector<Rat>> rows) {
    return Semimeasure(std::make_shared<MarkovKernel>(std::move(init), std::move(rows)));
}

Semimeasure deterministic(const FinStr& head, const FinStr& period) {
    return Semimeasure(std::make_shared<DeterministicKernel>(head, period));
}

Semimeasure suffix_deterministic(int l) {
    return Semimeasure(std::make_shared<SuffixDeterministicKernel>(l));
}

Semimeasure conditionalized(const Semimeasure& base, const FinStr& prefix) {
    return Semimeasure(std::make_shared<ConditionalizedKernel>(base, prefix));
}

SemimeasureCheck check_semimeasure_fn(Alphabet a,
                                      const std::function<Rat(const FinStr&)>& eval,
                                      int depth,
                                      const EnumBudget& budget) {
    SemimeasureCheck report;
    auto meter = budget.meter();

    Rat root = eval(FinStr(a));
    meter.tick();
    report.nodes_checked = 1;
    if (root > 1) {
        report.is_semimeasure = false;
        report.max_violation = root - 1;
        report.worst_x = FinStr(a);
    }
    if (root != 1) report.is_measure_up_to_depth = false;

    bool have_slack = false;
    for (int len = 0; len < depth; ++len) {
        for_each_string_of_length(a, len, [&](const FinStr& x) {
            meter.tick(static_cast<std::uint64_t>(a.size) + 1);
            report.nodes_checked += 1;
            Rat parent = eval(x);
            Rat children = 0;
            for (Sym s = 0; s < a.size; ++s) children += eval(x.appended(s));
            Rat slack = parent - children;
            if (sgn(slack) != 0) report.is_measure_up_to_depth = false;
            if (sgn(slack) < 0) {
                report.is_semimeasure = false;
                if (-slack > report.max_violation) {
                    report.max_violation = -slack;
                    report.worst_x = x;
                }
            }
            if (!have_slack || slack < report.min_slack) {
                report.min_slack = slack;
                have_slack = true;
                if (report.is_semimeasure && sgn(slack) >= 0 && !report.worst_x)
                    report.worst_x = x;
            }
        });
    }
    return report;
}

SemimeasureCheck check_semimeasure(const Semimeasure& m, int depth, const EnumBudget& budget) {
    return check_semimeasure_fn(m.alphabet(), [&](const FinStr& x) { return m.eval(x); },
                                depth, budget);
}

}  // namespace seqlab
