#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "seqlab/measures.hpp"

namespace seqlab {

// Binary program strings.
using Bits = std::vector<std::uint8_t>;

std::string bits_str(const Bits& b);
Bits parse_bits(std::string_view text);

// Elias gamma code: floor(log2 n) zero bits followed by the binary expansion
// of n, so gamma(1) = "1", gamma(3) = "011", gamma(4) = "00100".  n >= 1.
Bits gamma_code(std::uint64_t n);
std::size_t gamma_len(std::uint64_t n);

enum class MachineKind { Prefix, Monotone, TwicePrefix };
const char* machine_kind_name(MachineKind k);

struct RunLimits {
    long max_steps = 10'000;
    long max_output = 4'096;
};

enum class RunStatus { Halted, OutOfFuel };

// Halted is reported only for self-delimiting acceptance: the base machine
// reached its halt action having consumed every program bit (prefix and
// twice-prefix kinds).  Everything else -- fuel exhaustion, running off the
// end of the program, a malformed or wrong-kind index code, an early halt
// that left unread bits -- is OutOfFuel: within the horizon it is
// indistinguishable from divergence.
struct RunOutcome {
    RunStatus status = RunStatus::OutOfFuel;
    FinStr output;
    std::size_t program_bits_consumed = 0;
    std::size_t condition_symbols_consumed = 0;
    long steps_used = 0;
};

class ExecContext;

// A base machine is deterministic straight-line code over the context's
// typed actions; every input it touches goes through the context, so a
// halting run pins down exactly the bits and symbols consumed.
class BaseMachine {
public:
    BaseMachine(std::string name, MachineKind kind) : name_(std::move(name)), kind_(kind) {}
    virtual ~BaseMachine() = default;

    const std::string& name() const { return name_; }
    MachineKind kind() const { return kind_; }

    virtual void run(ExecContext& ctx) const = 0;

private:
    std::string name_;
    MachineKind kind_;
};

// Explicit universal machine: program = gamma(index) ++ payload, indices
// starting at 1.  The registry order is part of the versioned identity.
class MachineRegistry {
public:
    MachineRegistry(Alphabet alphabet, std::vector<std::shared_ptr<const BaseMachine>> bases);

    const Alphabet& alphabet() const { return alpha_; }
    std::size_t size() const { return bases_.size(); }
    const BaseMachine& base(std::size_t index_1based) const;

    std::string manifest() const;     // ordered base names + version hash
    std::uint64_t version_hash() const;
    std::string version_string() const;  // hash in hex

private:
    Alphabet alpha_;
    std::vector<std::shared_ptr<const BaseMachine>> bases_;
};

// The starter registry: B1 literal (prefix), B2 unary-pattern (monotone),
// B3 condition-zero-counter (twice-prefix), B4 copy-condition (prefix),
// B5 condition-length literal (prefix).
MachineRegistry canonical_registry(Alphabet alphabet);

// One canonical base by name ("literal", "unary_pattern", "zero_counter",
// "copy_condition", "condition_length"), for building reduced registries.
std::shared_ptr<const BaseMachine> canonical_base(const std::string& name);

// Returns the registry extended with the combining twice-prefix base: read
// gamma(l+1) from the program tape, read l symbols from the condition tape,
// then run the prefix-kind machinery of the original registry with those
// symbols as the (whole) condition.
MachineRegistry build_min_l_machine(const MachineRegistry& reg);

// Deterministic simulation of one program on the universal machine.
RunOutcome run(const MachineRegistry& reg, MachineKind kind, const Bits& program,
               const std::optional<FinStr>& condition, RunLimits limits);

struct KResult {
    std::optional<int> value;     // min l(p); nullopt when no program found
    std::optional<Bits> witness;  // shortest, then lexicographically first
    int L = 0;
    long S = 0;
};

// K_L(y): exact minimum program length over halting prefix-kind runs with
// output y, searched over l(p) <= L within S steps per run.
KResult enum_K(const MachineRegistry& reg, const FinStr& y, int L, long S);

// K_L(y|x): the condition is supplied whole (its length is usable).
KResult enum_K_cond(const MachineRegistry& reg, const FinStr& y, const FinStr& x, int L, long S);

// M_L(x): sum of 2^-l(p) over minimal monotone programs whose output within
// S steps extends x.  Exact dyadic rational, nondecreasing in L and S.
Rat enum_M_lower(const MachineRegistry& reg, const FinStr& x, int L, long S);

struct KstarResult {
    std::optional<int> value;
    std::optional<Bits> witness;
    std::optional<std::size_t> witness_k;  // condition symbols consumed
    int L = 0;
    long S = 0;
};

// K*_L(y|x*): minimum over programs p and k <= l(x) of halting twice-prefix
// runs on (p, x_{1:k}) with output y.
KstarResult enum_Kstar(const MachineRegistry& reg, const FinStr& y, const FinStr& x, int L,
                       long S);

// C_T(y|x) for one base machine run directly (no index code): per-machine
// complexity counting only the bits that machine reads.  base_index is
// 1-based.
KResult enum_C_T(const MachineRegistry& reg, std::size_t base_index, const FinStr& y,
                 const FinStr& x, int L, long S);

// The prefix-free set of halting programs at a horizon (Prefix or
// TwicePrefix kind; for TwicePrefix the condition is the fixed stream).
std::vector<Bits> halting_programs(const MachineRegistry& reg, MachineKind kind,
                                   const std::optional<FinStr>& condition, int L, long S);

// Exact Kraft sum 2^-l(p) over a prefix-free program set.
Rat kraft_sum(const std::vector<Bits>& programs);

// M_L wrapped as a Semimeasure (with an internal memo cache; evaluation is
// thread-safe).  Not a measure; reported values are enumeration lower
// bounds of the true M restricted to this registry.
Semimeasure machine_semimeasure(std::shared_ptr<const MachineRegistry> reg, int L, long S);

// One halting twice-prefix run: program, condition symbols consumed, output.
struct TwicePrefixRun {
    Bits program;
    FinStr condition;  // exactly the consumed symbols
    FinStr output;
};

// All halting twice-prefix runs with l(p) <= L and conditions of length
// <= depth, each reported once at its exact consumption.
std::vector<TwicePrefixRun> twice_prefix_runs(const MachineRegistry& reg, int L, long S,
                                              int depth);

// All halting twice-prefix runs against one fixed condition stream; the
// condition field holds the consumed prefix x_{1:k}.
std::vector<TwicePrefixRun> halting_runs_on_condition(const MachineRegistry& reg,
                                                      const FinStr& x, int L, long S);

// The minimal monotone programs behind M_L(x) (prefix-free).
std::vector<Bits> enum_M_programs(const MachineRegistry& reg, const FinStr& x, int L, long S);

// Enumerated set of triples <p, x, y> with its enumeration horizon.
class CorrectSet {
public:
    using Triple = std::tuple<std::string, std::string, std::string>;  // p bits, x, y

    CorrectSet(Alphabet alphabet, int L, long S, int depth)
        : alpha_(alphabet), L_(L), S_(S), depth_(depth) {}

    const Alphabet& alphabet() const { return alpha_; }
    int horizon_L() const { return L_; }
    long horizon_S() const { return S_; }
    int horizon_depth() const { return depth_; }

    void insert(const Bits& p, const FinStr& x, const FinStr& y);
    void insert_raw(const Triple& t) { triples_.insert(t); }
    bool erase_raw(const Triple& t) { return triples_.erase(t) > 0; }
    bool contains(const Bits& p, const FinStr& x, const FinStr& y) const;

    const std::set<Triple>& triples() const { return triples_; }
    std::size_t size() const { return triples_.size(); }

    // C_E(y|x) = min l(p) with <p, x, y> in the set.
    std::optional<int> complexity(const FinStr& y, const FinStr& x) const;

private:
    Alphabet alpha_;
    int L_;
    long S_;
    int depth_;
    std::set<Triple> triples_;
};

// Runs every halting twice-prefix computation at the horizon and closes the
// resulting triples under prolongation of p and x within the horizon.
CorrectSet induce_correct_set(const MachineRegistry& reg, int L, long S, int depth);

struct CorrectSetViolations {
    std::vector<std::string> functionality;        // requirement 1
    std::vector<std::string> prolongation;         // requirement 2
    std::vector<std::string> prefix_consistency;   // requirement 3
    bool ok() const {
        return functionality.empty() && prolongation.empty() && prefix_consistency.empty();
    }
};

CorrectSetViolations validate_correct_set(const CorrectSet& set);

}  // namespace seqlab
