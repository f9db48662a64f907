#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "seqlab/errors.hpp"

namespace seqlab {

using Sym = int;

// Finite alphabet {0, ..., size-1}.  Symbols compare by integer value, which
// induces the lexicographic order on strings.
struct Alphabet {
    int size = 2;

    Alphabet() = default;
    explicit Alphabet(int n) : size(n) {
        if (n < 2) throw InputError("alphabet size must be >= 2");
    }
    bool operator==(const Alphabet&) const = default;
    bool contains(Sym s) const { return s >= 0 && s < size; }
};

// Finite string over an alphabet.  Value type, cheap to copy at desk scale.
class FinStr {
public:
    FinStr() = default;
    explicit FinStr(Alphabet a) : alpha_(a) {}
    FinStr(Alphabet a, std::vector<Sym> syms);

    // Digits '0'..'9'; only alphabets up to size 10 have a textual form.
    static FinStr parse(Alphabet a, std::string_view digits);

    const Alphabet& alphabet() const { return alpha_; }
    std::size_t length() const { return syms_.size(); }
    bool empty() const { return syms_.empty(); }
    Sym at(std::size_t i) const { return syms_[i]; }
    const std::vector<Sym>& syms() const { return syms_; }

    void push_back(Sym s);
    FinStr appended(Sym s) const;
    FinStr concat(const FinStr& tail) const;
    FinStr prefix(std::size_t n) const;
    FinStr suffix_from(std::size_t n) const;

    bool is_prefix_of(const FinStr& other) const;  // non-strict

    std::string str() const;

    bool operator==(const FinStr& o) const { return alpha_ == o.alpha_ && syms_ == o.syms_; }

private:
    Alphabet alpha_{};
    std::vector<Sym> syms_{};
};

// Shortlex order (by length, then lexicographic); the deterministic iteration
// order used for maps and exports.
bool shortlex_less(const FinStr& a, const FinStr& b);

// Repeated string u^n.
FinStr repeat(const FinStr& u, std::size_t n);

// u v^inf truncated to the first n symbols (v must be nonempty).
FinStr eventually_periodic_prefix(const FinStr& head, const FinStr& period, std::size_t n);

// Calls fn on every string of length exactly `len`, in lexicographic order.
void for_each_string_of_length(Alphabet a, int len, const std::function<void(const FinStr&)>& fn);

// Calls fn on every string with length <= max_len, in shortlex order.
void for_each_string_up_to(Alphabet a, int max_len, const std::function<void(const FinStr&)>& fn);

// Base-|X| digits of n >= 0, most significant first ("0" for n = 0).
FinStr numeral(Alphabet a, unsigned long n);

// Signed integers fold into numerals via the usual zigzag map
// (0,-1,1,-2,2,... -> 0,1,2,3,4,...).
FinStr numeral_signed(Alphabet a, long n);

}  // namespace seqlab
