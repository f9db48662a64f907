#include "seqlab/machines.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <functional>
#include <sstream>

namespace seqlab {

std::string bits_str(const Bits& b) {
    std::string s;
    s.reserve(b.size());
    for (std::uint8_t v : b) s.push_back(v ? '1' : '0');
    return s;
}

Bits parse_bits(std::string_view text) {
    Bits b;
    b.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw InputError("bad bit character");
        b.push_back(c == '1');
    }
    return b;
}

Bits gamma_code(std::uint64_t n) {
    if (n == 0) throw InputError("gamma code needs n >= 1");
    int k = 63 - __builtin_clzll(n);
    Bits b;
    b.reserve(static_cast<std::size_t>(2 * k + 1));
    for (int i = 0; i < k; ++i) b.push_back(0);
    for (int i = k; i >= 0; --i) b.push_back((n >> i) & 1);
    return b;
}

std::size_t gamma_len(std::uint64_t n) {
    if (n == 0) throw InputError("gamma code needs n >= 1");
    int k = 63 - __builtin_clzll(n);
    return static_cast<std::size_t>(2 * k + 1);
}

const char* machine_kind_name(MachineKind k) {
    switch (k) {
        case MachineKind::Prefix: return "prefix";
        case MachineKind::Monotone: return "monotone";
        case MachineKind::TwicePrefix: return "twice_prefix";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Simulator internals.  Control flow uses private signal types: a run either
// returns from BaseMachine::run (halt), asks for a program bit beyond the
// supplied prefix, qualifies against a monotone target, or dies (fuel,
// malformed code, pruned output, exhausted condition stream).
// ---------------------------------------------------------------------------

namespace {

struct NeedBitSignal {};
struct DeadSignal {};
struct QualifiedSignal {};

int bits_per_symbol(const Alphabet& a) {
    int b = 1;
    while ((1 << b) < a.size) ++b;
    return b;
}

}  // namespace

class ExecContext {
public:
    ExecContext(Alphabet alpha, MachineKind kind, const Bits& program,
                const FinStr* whole_cond, const FinStr* stream_cond, RunLimits limits,
                const FinStr* monotone_target, const FinStr* exact_target)
        : alpha_(alpha),
          program_(program),
          stream_cond_(stream_cond),
          limits_(limits),
          monotone_target_(monotone_target),
          exact_target_(exact_target),
          output_(alpha),
          empty_cond_(alpha) {
        frames_.push_back(Frame{kind, whole_cond});
        if (monotone_target_ && monotone_target_->empty()) throw QualifiedSignal{};
    }

    int read_program_bit() {
        tick();
        if (bits_used_ >= program_.size()) throw NeedBitSignal{};
        return program_[bits_used_++];
    }

    Sym read_condition_symbol() {
        tick();
        if (frames_.back().kind != MachineKind::TwicePrefix) throw DeadSignal{};
        if (stream_cond_ == nullptr || cond_used_ >= stream_cond_->length())
            throw DeadSignal{};
        return stream_cond_->at(cond_used_++);
    }

    const FinStr& whole_condition() {
        tick();
        if (frames_.back().kind == MachineKind::TwicePrefix) throw DeadSignal{};
        // A missing condition reads as the empty string.
        if (frames_.back().whole_cond == nullptr) return empty_cond_;
        return *frames_.back().whole_cond;
    }

    void emit(Sym s) {
        tick();
        if (!alpha_.contains(s)) throw DeadSignal{};
        std::size_t i = output_.length();
        if (exact_target_) {
            if (i >= exact_target_->length() || exact_target_->at(i) != s) throw DeadSignal{};
        }
        if (monotone_target_ && i < monotone_target_->length() &&
            monotone_target_->at(i) != s)
            throw DeadSignal{};
        if (static_cast<long>(i) >= limits_.max_output) throw DeadSignal{};
        output_.push_back(s);
        if (monotone_target_ && output_.length() >= monotone_target_->length())
            throw QualifiedSignal{};
    }

    std::uint64_t read_gamma(std::uint64_t cap = (1ULL << 40)) {
        int zeros = 0;
        while (read_program_bit() == 0) {
            ++zeros;
            if (zeros > 60 || (1ULL << zeros) > cap) throw DeadSignal{};
        }
        std::uint64_t val = 1;
        for (int i = 0; i < zeros; ++i) val = (val << 1) | static_cast<std::uint64_t>(read_program_bit());
        return val;
    }

    Sym read_symbol_bits() {
        int width = bits_per_symbol(alpha_);
        int val = 0;
        for (int i = 0; i < width; ++i) val = (val << 1) | read_program_bit();
        if (!alpha_.contains(val)) throw DeadSignal{};
        return val;
    }

    // The combining base dispatches the prefix-kind machinery of its inner
    // registry, with the consumed condition symbols as the whole condition.
    void run_prefix_universal(const MachineRegistry& inner, const FinStr& whole_cond);

    const Alphabet& alphabet() const { return alpha_; }
    std::size_t bits_used() const { return bits_used_; }
    std::size_t cond_used() const { return cond_used_; }
    long steps() const { return steps_; }
    const FinStr& output() const { return output_; }

    void push_frame(MachineKind kind, const FinStr* whole_cond) {
        frames_.push_back(Frame{kind, whole_cond});
    }
    void pop_frame() { frames_.pop_back(); }

private:
    void tick() {
        if (steps_ >= limits_.max_steps) throw DeadSignal{};
        ++steps_;
    }

    struct Frame {
        MachineKind kind;
        const FinStr* whole_cond;
    };

    Alphabet alpha_;
    const Bits& program_;
    const FinStr* stream_cond_;
    RunLimits limits_;
    const FinStr* monotone_target_;
    const FinStr* exact_target_;

    std::vector<Frame> frames_;
    std::size_t bits_used_ = 0;
    std::size_t cond_used_ = 0;
    long steps_ = 0;
    FinStr output_;
    FinStr empty_cond_;
};

// ---------------------------------------------------------------------------
// Base machines.
// ---------------------------------------------------------------------------

namespace {

// B1: gamma(n+1) from the program, then n fixed-width symbols; emit, halt.
class LiteralBase final : public BaseMachine {
public:
    LiteralBase() : BaseMachine("literal", MachineKind::Prefix) {}
    void run(ExecContext& ctx) const override {
        std::uint64_t n = ctx.read_gamma() - 1;
        for (std::uint64_t i = 0; i < n; ++i) ctx.emit(ctx.read_symbol_bits());
    }
};

// B2: gamma(n); emit 0^(n-1) 1, then 1 forever.
class UnaryPatternBase final : public BaseMachine {
public:
    UnaryPatternBase() : BaseMachine("unary_pattern", MachineKind::Monotone) {}
    void run(ExecContext& ctx) const override {
        std::uint64_t n = ctx.read_gamma();
        for (std::uint64_t i = 0; i + 1 < n; ++i) ctx.emit(0);
        for (;;) ctx.emit(1);
    }
};

// B3: count the 0s before the first nonzero condition symbol (consuming it),
// output the count's numeral, halt.  Reads no program bits.
class ZeroCounterBase final : public BaseMachine {
public:
    ZeroCounterBase() : BaseMachine("zero_counter", MachineKind::TwicePrefix) {}
    void run(ExecContext& ctx) const override {
        unsigned long zeros = 0;
        while (ctx.read_condition_symbol() == 0) ++zeros;
        FinStr enc = numeral(ctx.alphabet(), zeros);
        for (std::size_t i = 0; i < enc.length(); ++i) ctx.emit(enc.at(i));
    }
};

// B4: copy the whole condition to the output, halt.
class CopyConditionBase final : public BaseMachine {
public:
    CopyConditionBase() : BaseMachine("copy_condition", MachineKind::Prefix) {}
    void run(ExecContext& ctx) const override {
        const FinStr& cond = ctx.whole_condition();
        for (std::size_t i = 0; i < cond.length(); ++i) ctx.emit(cond.at(i));
    }
};

// B5: output the numeral of the condition's length, halt.
class ConditionLengthBase final : public BaseMachine {
public:
    ConditionLengthBase() : BaseMachine("condition_length", MachineKind::Prefix) {}
    void run(ExecContext& ctx) const override {
        const FinStr& cond = ctx.whole_condition();
        FinStr enc = numeral(ctx.alphabet(), cond.length());
        for (std::size_t i = 0; i < enc.length(); ++i) ctx.emit(enc.at(i));
    }
};

// The combining base of the min-l construction: gamma(l+1) from the program,
// l symbols from the condition stream, then the inner registry's prefix
// machinery with those symbols as the whole condition.
class MinLCombinerBase final : public BaseMachine {
public:
    explicit MinLCombinerBase(std::shared_ptr<const MachineRegistry> inner)
        : BaseMachine("min_l_combiner", MachineKind::TwicePrefix), inner_(std::move(inner)) {}

    void run(ExecContext& ctx) const override {
        std::uint64_t l = ctx.read_gamma() - 1;
        FinStr cond(ctx.alphabet());
        for (std::uint64_t i = 0; i < l; ++i) cond.push_back(ctx.read_condition_symbol());
        ctx.run_prefix_universal(*inner_, cond);
    }

private:
    std::shared_ptr<const MachineRegistry> inner_;
};

}  // namespace

void ExecContext::run_prefix_universal(const MachineRegistry& inner, const FinStr& whole_cond) {
    std::uint64_t idx = read_gamma(inner.size());
    if (idx == 0 || idx > inner.size()) throw DeadSignal{};
    const BaseMachine& base = inner.base(static_cast<std::size_t>(idx));
    if (base.kind() != MachineKind::Prefix) throw DeadSignal{};
    push_frame(MachineKind::Prefix, &whole_cond);
    base.run(*this);
    pop_frame();
}

// ---------------------------------------------------------------------------
// Registry.
// ---------------------------------------------------------------------------

MachineRegistry::MachineRegistry(Alphabet alphabet,
                                 std::vector<std::shared_ptr<const BaseMachine>> bases)
    : alpha_(alphabet), bases_(std::move(bases)) {
    if (bases_.empty()) throw InputError("registry needs at least one base machine");
}

const BaseMachine& MachineRegistry::base(std::size_t index_1based) const {
    if (index_1based == 0 || index_1based > bases_.size())
        throw InputError("registry index out of range");
    return *bases_[index_1based - 1];
}

namespace {

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string manifest_body(const Alphabet& a,
                          const std::vector<std::shared_ptr<const BaseMachine>>& bases) {
    std::ostringstream out;
    out << "seqlab registry v1\n";
    out << "alphabet " << a.size << "\n";
    for (std::size_t i = 0; i < bases.size(); ++i)
        out << (i + 1) << ' ' << bases[i]->name() << ' ' << machine_kind_name(bases[i]->kind())
            << "\n";
    return out.str();
}

}  // namespace

std::uint64_t MachineRegistry::version_hash() const {
    return fnv1a64(manifest_body(alpha_, bases_));
}

std::string MachineRegistry::version_string() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(version_hash()));
    return std::string(buf);
}

std::string MachineRegistry::manifest() const {
    return manifest_body(alpha_, bases_) + "version " + version_string() + "\n";
}

MachineRegistry canonical_registry(Alphabet alphabet) {
    std::vector<std::shared_ptr<const BaseMachine>> bases;
    bases.push_back(std::make_shared<LiteralBase>());
    bases.push_back(std::make_shared<UnaryPatternBase>());
    bases.push_back(std::make_shared<ZeroCounterBase>());
    bases.push_back(std::make_shared<CopyConditionBase>());
    bases.push_back(std::make_shared<ConditionLengthBase>());
    return MachineRegistry(alphabet, std::move(bases));
}

std::shared_ptr<const BaseMachine> canonical_base(const std::string& name) {
    if (name == "literal") return std::make_shared<LiteralBase>();
    if (name == "unary_pattern") return std::make_shared<UnaryPatternBase>();
    if (name == "zero_counter") return std::make_shared<ZeroCounterBase>();
    if (name == "copy_condition") return std::make_shared<CopyConditionBase>();
    if (name == "condition_length") return std::make_shared<ConditionLengthBase>();
    throw InputError("unknown base machine: " + name);
}

MachineRegistry build_min_l_machine(const MachineRegistry& reg) {
    auto inner = std::make_shared<MachineRegistry>(reg);
    std::vector<std::shared_ptr<const BaseMachine>> bases;
    for (std::size_t i = 1; i <= reg.size(); ++i) {
        // Shared ownership of the existing bases; order preserved.
        bases.push_back(std::shared_ptr<const BaseMachine>(inner, &inner->base(i)));
    }
    bases.push_back(std::make_shared<MinLCombinerBase>(inner));
    return MachineRegistry(reg.alphabet(), std::move(bases));
}

// ---------------------------------------------------------------------------
// Simulation driver.
// ---------------------------------------------------------------------------

namespace {

enum class SimEnd { Halted, NeedBit, Dead, Qualified };

struct SimResult {
    SimEnd end = SimEnd::Dead;
    FinStr output;
    std::size_t bits_used = 0;
    std::size_t cond_used = 0;
    long steps = 0;
};

struct SimSpec {
    const MachineRegistry& reg;
    MachineKind kind;
    const FinStr* whole_cond = nullptr;
    const FinStr* stream_cond = nullptr;
    RunLimits limits{};
    const FinStr* monotone_target = nullptr;
    const FinStr* exact_target = nullptr;
    std::optional<std::size_t> direct_base;  // run this base without an index code
};

SimResult simulate(const SimSpec& spec, const Bits& program) {
    SimResult r;
    r.output = FinStr(spec.reg.alphabet());
    std::optional<ExecContext> ctx;
    try {
        ctx.emplace(spec.reg.alphabet(), spec.kind, program, spec.whole_cond, spec.stream_cond,
                    spec.limits, spec.monotone_target, spec.exact_target);
    } catch (const QualifiedSignal&) {
        r.end = SimEnd::Qualified;  // empty monotone target, zero consumption
        return r;
    }
    try {
        std::size_t idx;
        if (spec.direct_base) {
            idx = *spec.direct_base;
        } else {
            idx = static_cast<std::size_t>(ctx->read_gamma(spec.reg.size()));
        }
        if (idx == 0 || idx > spec.reg.size()) throw DeadSignal{};
        const BaseMachine& base = spec.reg.base(idx);
        if (base.kind() != spec.kind) throw DeadSignal{};
        base.run(*ctx);
        r.end = SimEnd::Halted;
    } catch (const NeedBitSignal&) {
        r.end = SimEnd::NeedBit;
    } catch (const DeadSignal&) {
        r.end = SimEnd::Dead;
    } catch (const QualifiedSignal&) {
        r.end = SimEnd::Qualified;
    }
    r.output = ctx->output();
    r.bits_used = ctx->bits_used();
    r.cond_used = ctx->cond_used();
    r.steps = ctx->steps();
    return r;
}

// Demand-driven enumeration over the program-bit tree.  Only consumed
// prefixes are explored; every Halted/Qualified record has the program
// equal to exactly the bits consumed, so each per-kind record set is
// prefix-free by construction.
void dfs_programs(const SimSpec& spec, int L,
                  const std::function<void(const Bits&, const SimResult&)>& on_record) {
    std::vector<Bits> stack;
    stack.push_back(Bits{});
    while (!stack.empty()) {
        Bits p = std::move(stack.back());
        stack.pop_back();
        SimResult r = simulate(spec, p);
        switch (r.end) {
            case SimEnd::Halted:
            case SimEnd::Qualified:
                if (r.bits_used == p.size()) on_record(p, r);
                break;
            case SimEnd::NeedBit:
                if (static_cast<int>(p.size()) < L) {
                    Bits one = p;
                    one.push_back(1);
                    stack.push_back(std::move(one));
                    p.push_back(0);
                    stack.push_back(std::move(p));
                }
                break;
            case SimEnd::Dead:
                break;
        }
    }
}

bool bits_less(const Bits& a, const Bits& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

}  // namespace

RunOutcome run(const MachineRegistry& reg, MachineKind kind, const Bits& program,
               const std::optional<FinStr>& condition, RunLimits limits) {
    const FinStr* whole = nullptr;
    const FinStr* stream = nullptr;
    if (condition) {
        if (!(condition->alphabet() == reg.alphabet()))
            throw InputError("run: condition alphabet mismatch");
        if (kind == MachineKind::Prefix) whole = &*condition;
        if (kind == MachineKind::TwicePrefix) stream = &*condition;
    }
    SimSpec spec{reg, kind, whole, stream, limits, nullptr, nullptr, std::nullopt};
    SimResult r = simulate(spec, program);

    RunOutcome out;
    out.output = r.output;
    out.program_bits_consumed = r.bits_used;
    out.condition_symbols_consumed = r.cond_used;
    out.steps_used = r.steps;
    out.status = (r.end == SimEnd::Halted && r.bits_used == program.size())
                     ? RunStatus::Halted
                     : RunStatus::OutOfFuel;
    return out;
}

// ---------------------------------------------------------------------------
// Enumeration-bounded estimators.
// ---------------------------------------------------------------------------

namespace {

KResult min_program(std::vector<Bits> candidates, int L, long S) {
    KResult res;
    res.L = L;
    res.S = S;
    if (candidates.empty()) return res;
    auto best = std::min_element(candidates.begin(), candidates.end(), bits_less);
    res.value = static_cast<int>(best->size());
    res.witness = *best;
    return res;
}

}  // namespace

KResult enum_K_cond(const MachineRegistry& reg, const FinStr& y, const FinStr& x, int L,
                    long S) {
    if (!(y.alphabet() == reg.alphabet()) || !(x.alphabet() == reg.alphabet()))
        throw InputError("enum_K_cond: alphabet mismatch");
    SimSpec spec{reg, MachineKind::Prefix, &x, nullptr, RunLimits{S, 1 << 20}, nullptr, &y,
                 std::nullopt};
    std::vector<Bits> found;
    dfs_programs(spec, L, [&](const Bits& p, const SimResult& r) {
        if (r.end == SimEnd::Halted && r.output == y) found.push_back(p);
    });
    return min_program(std::move(found), L, S);
}

KResult enum_K(const MachineRegistry& reg, const FinStr& y, int L, long S) {
    return enum_K_cond(reg, y, FinStr(reg.alphabet()), L, S);
}

Rat enum_M_lower(const MachineRegistry& reg, const FinStr& x, int L, long S) {
    if (!(x.alphabet() == reg.alphabet())) throw InputError("enum_M_lower: alphabet mismatch");
    SimSpec spec{reg, MachineKind::Monotone, nullptr, nullptr, RunLimits{S, 1 << 20}, &x,
                 nullptr, std::nullopt};
    Rat total = 0;
    dfs_programs(spec, L, [&](const Bits& p, const SimResult& r) {
        if (r.end == SimEnd::Qualified) total += pow2_rat(-static_cast<long>(p.size()));
    });
    return total;
}

KstarResult enum_Kstar(const MachineRegistry& reg, const FinStr& y, const FinStr& x, int L,
                       long S) {
    if (!(y.alphabet() == reg.alphabet()) || !(x.alphabet() == reg.alphabet()))
        throw InputError("enum_Kstar: alphabet mismatch");
    SimSpec spec{reg, MachineKind::TwicePrefix, nullptr, &x, RunLimits{S, 1 << 20}, nullptr,
                 &y, std::nullopt};
    KstarResult res;
    res.L = L;
    res.S = S;
    std::optional<Bits> best;
    std::optional<std::size_t> best_k;
    dfs_programs(spec, L, [&](const Bits& p, const SimResult& r) {
        if (r.end != SimEnd::Halted || !(r.output == y)) return;
        if (!best || bits_less(p, *best)) {
            best = p;
            best_k = r.cond_used;
        }
    });
    if (best) {
        res.value = static_cast<int>(best->size());
        res.witness = *best;
        res.witness_k = best_k;
    }
    return res;
}

KResult enum_C_T(const MachineRegistry& reg, std::size_t base_index, const FinStr& y,
                 const FinStr& x, int L, long S) {
    if (base_index == 0 || base_index > reg.size()) throw InputError("enum_C_T: bad base index");
    MachineKind kind = reg.base(base_index).kind();
    const FinStr* whole = kind == MachineKind::Prefix ? &x : nullptr;
    const FinStr* stream = kind == MachineKind::TwicePrefix ? &x : nullptr;
    SimSpec spec{reg, kind, whole, stream, RunLimits{S, 1 << 20}, nullptr, &y, base_index};
    std::vector<Bits> found;
    dfs_programs(spec, L, [&](const Bits& p, const SimResult& r) {
        if (r.end == SimEnd::Halted && r.output == y) found.push_back(p);
    });
    return min_program(std::move(found), L, S);
}

std::vector<Bits> halting_programs(const MachineRegistry& reg, MachineKind kind,
                                   const std::optional<FinStr>& condition, int L, long S) {
    if (kind == MachineKind::Monotone)
        throw InputError("halting_programs: monotone machines do not halt");
    const FinStr* whole = nullptr;
    const FinStr* stream = nullptr;
    if (condition) {
        if (kind == MachineKind::Prefix) whole = &*condition;
        if (kind == MachineKind::TwicePrefix) stream = &*condition;
    }
    SimSpec spec{reg, kind, whole, stream, RunLimits{S, 1 << 20}, nullptr, nullptr,
                 std::nullopt};
    std::vector<Bits> programs;
    dfs_programs(spec, L, [&](const Bits& p, const SimResult& r) {
        if (r.end == SimEnd::Halted) programs.push_back(p);
    });
    std::sort(programs.begin(), programs.end(), bits_less);
    return programs;
}

Rat kraft_sum(const std::vector<Bits>& programs) {
    Rat total = 0;
    for (const Bits& p : programs) total += pow2_rat(-static_cast<long>(p.size()));
    return total;
}

namespace {

class MachineSemimeasureKernel final : public SemimeasureKernel {
public:
    MachineSemimeasureKernel(std::shared_ptr<const MachineRegistry> reg, int L, long S)
        : SemimeasureKernel(reg->alphabet(), false, false),
          reg_(std::move(reg)),
          L_(L),
          S_(S) {}

    Rat mass(const FinStr& x) const override {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(x.str());
        if (it != cache_.end()) return it->second;
        Rat v = enum_M_lower(*reg_, x, L_, S_);
        cache_.emplace(x.str(), v);
        return v;
    }

    std::string spec_string() const override {
        return "ML(reg=" + reg_->version_string() + ",L=" + std::to_string(L_) +
               ",S=" + std::to_string(S_) + ")";
    }

private:
    std::shared_ptr<const MachineRegistry> reg_;
    int L_;
    long S_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, Rat> cache_;
};

}  // namespace

Semimeasure machine_semimeasure(std::shared_ptr<const MachineRegistry> reg, int L, long S) {
    return Semimeasure(std::make_shared<MachineSemimeasureKernel>(std::move(reg), L, S));
}

std::vector<TwicePrefixRun> halting_runs_on_condition(const MachineRegistry& reg,
                                                      const FinStr& x, int L, long S) {
    SimSpec spec{reg, MachineKind::TwicePrefix, nullptr, &x, RunLimits{S, 1 << 20}, nullptr,
                 nullptr, std::nullopt};
    std::vector<TwicePrefixRun> runs;
    dfs_programs(spec, L, [&](const Bits& p, const SimResult& r) {
        if (r.end == SimEnd::Halted)
            runs.push_back(TwicePrefixRun{p, x.prefix(r.cond_used), r.output});
    });
    return runs;
}

std::vector<Bits> enum_M_programs(const MachineRegistry& reg, const FinStr& x, int L, long S) {
    SimSpec spec{reg, MachineKind::Monotone, nullptr, nullptr, RunLimits{S, 1 << 20}, &x,
                 nullptr, std::nullopt};
    std::vector<Bits> programs;
    dfs_programs(spec, L, [&](const Bits& p, const SimResult& r) {
        if (r.end == SimEnd::Qualified) programs.push_back(p);
    });
    std::sort(programs.begin(), programs.end(), bits_less);
    return programs;
}

std::vector<TwicePrefixRun> twice_prefix_runs(const MachineRegistry& reg, int L, long S,
                                              int depth) {
    std::vector<TwicePrefixRun> runs;
    for_each_string_up_to(reg.alphabet(), depth, [&](const FinStr& cond) {
        SimSpec spec{reg, MachineKind::TwicePrefix, nullptr, &cond, RunLimits{S, 1 << 20},
                     nullptr, nullptr, std::nullopt};
        dfs_programs(spec, L, [&](const Bits& p, const SimResult& r) {
            // Runs consuming fewer symbols were recorded under a shorter
            // condition string already.
            if (r.end == SimEnd::Halted && r.cond_used == cond.length())
                runs.push_back(TwicePrefixRun{p, cond, r.output});
        });
    });
    return runs;
}

// ---------------------------------------------------------------------------
// K*-correct sets.
// ---------------------------------------------------------------------------

void CorrectSet::insert(const Bits& p, const FinStr& x, const FinStr& y) {
    triples_.insert(Triple{bits_str(p), x.str(), y.str()});
}

bool CorrectSet::contains(const Bits& p, const FinStr& x, const FinStr& y) const {
    return triples_.count(Triple{bits_str(p), x.str(), y.str()}) > 0;
}

std::optional<int> CorrectSet::complexity(const FinStr& y, const FinStr& x) const {
    std::optional<int> best;
    const std::string xs = x.str();
    const std::string ys = y.str();
    for (const Triple& t : triples_) {
        if (std::get<1>(t) == xs && std::get<2>(t) == ys) {
            int len = static_cast<int>(std::get<0>(t).size());
            if (!best || len < *best) best = len;
        }
    }
    return best;
}

CorrectSet induce_correct_set(const MachineRegistry& reg, int L, long S, int depth) {
    CorrectSet set(reg.alphabet(), L, S, depth);
    std::vector<TwicePrefixRun> runs = twice_prefix_runs(reg, L, S, depth);
    for (const TwicePrefixRun& run : runs) {
        // Close under prolongation of the program and the condition within
        // the horizon.
        int p_room = L - static_cast<int>(run.program.size());
        int x_room = depth - static_cast<int>(run.condition.length());
        for (int dp = 0; dp <= p_room; ++dp) {
            for_each_string_of_length(Alphabet(2), dp, [&](const FinStr& ps) {
                Bits p = run.program;
                for (std::size_t i = 0; i < ps.length(); ++i)
                    p.push_back(static_cast<std::uint8_t>(ps.at(i)));
                for (int dx = 0; dx <= x_room; ++dx) {
                    for_each_string_of_length(reg.alphabet(), dx, [&](const FinStr& xs) {
                        set.insert(p, run.condition.concat(xs), run.output);
                    });
                }
            });
        }
    }
    return set;
}

namespace {

bool str_prefix_of(const std::string& a, const std::string& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

std::string triple_str(const CorrectSet::Triple& t) {
    return "<p=" + std::get<0>(t) + ", x=" + std::get<1>(t) + ", y=" + std::get<2>(t) + ">";
}

}  // namespace

CorrectSetViolations validate_correct_set(const CorrectSet& set) {
    CorrectSetViolations v;

    // Requirement 1: functionality in (p, x).
    std::map<std::pair<std::string, std::string>, std::string> seen;
    for (const auto& t : set.triples()) {
        auto key = std::make_pair(std::get<0>(t), std::get<1>(t));
        auto [it, inserted] = seen.emplace(key, std::get<2>(t));
        if (!inserted && it->second != std::get<2>(t))
            v.functionality.push_back("two outputs at p=" + key.first + ", x=" + key.second +
                                      ": " + it->second + " vs " + std::get<2>(t));
    }

    // Requirement 2: closure under one-step prolongation within the horizon
    // (which gives full closure by induction).
    for (const auto& t : set.triples()) {
        const auto& [p, x, y] = t;
        if (static_cast<int>(p.size()) < set.horizon_L()) {
            for (char b : {'0', '1'}) {
                CorrectSet::Triple ext{p + b, x, y};
                if (!set.triples().count(ext))
                    v.prolongation.push_back("missing " + triple_str(ext));
            }
        }
        if (static_cast<int>(x.size()) < set.horizon_depth()) {
            for (Sym a = 0; a < set.alphabet().size; ++a) {
                CorrectSet::Triple ext{p, x + static_cast<char>('0' + a), y};
                if (!set.triples().count(ext))
                    v.prolongation.push_back("missing " + triple_str(ext));
            }
        }
    }

    // Requirement 3: if <p, x', y> and <p', x, y> with p a prefix of p' and
    // x a prefix of x', then <p, x, y> must be present.
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> by_output;
    for (const auto& t : set.triples())
        by_output[std::get<2>(t)].emplace_back(std::get<0>(t), std::get<1>(t));
    for (const auto& [y, pairs] : by_output) {
        for (const auto& [p, x_long] : pairs) {
            for (const auto& [p_long, x] : pairs) {
                if (!str_prefix_of(p, p_long) || !str_prefix_of(x, x_long)) continue;
                CorrectSet::Triple corner{p, x, y};
                if (!set.triples().count(corner))
                    v.prefix_consistency.push_back("missing corner " + triple_str(corner));
            }
        }
    }

    return v;
}

}  // namespace seqlab
