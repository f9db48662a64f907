#include "seqlab/strings.hpp"

#include <algorithm>

namespace seqlab {

FinStr::FinStr(Alphabet a, std::vector<Sym> syms) : alpha_(a), syms_(std::move(syms)) {
    for (Sym s : syms_)
        if (!alpha_.contains(s)) throw InputError("symbol out of alphabet range");
}

FinStr FinStr::parse(Alphabet a, std::string_view digits) {
    if (a.size > 10) throw InputError("textual strings require alphabet size <= 10");
    std::vector<Sym> syms;
    syms.reserve(digits.size());
    for (char c : digits) {
        if (c < '0' || c > '9') throw InputError("bad symbol character in string literal");
        syms.push_back(c - '0');
    }
    return FinStr(a, std::move(syms));
}

void FinStr::push_back(Sym s) {
    if (!alpha_.contains(s)) throw InputError("symbol out of alphabet range");
    syms_.push_back(s);
}

FinStr FinStr::appended(Sym s) const {
    FinStr r = *this;
    r.push_back(s);
    return r;
}

FinStr FinStr::concat(const FinStr& tail) const {
    if (!(alpha_ == tail.alpha_)) throw InputError("alphabet mismatch in concat");
    FinStr r = *this;
    r.syms_.insert(r.syms_.end(), tail.syms_.begin(), tail.syms_.end());
    return r;
}

FinStr FinStr::prefix(std::size_t n) const {
    FinStr r(alpha_);
    r.syms_.assign(syms_.begin(), syms_.begin() + std::min(n, syms_.size()));
    return r;
}

FinStr FinStr::suffix_from(std::size_t n) const {
    FinStr r(alpha_);
    if (n < syms_.size()) r.syms_.assign(syms_.begin() + n, syms_.end());
    return r;
}

bool FinStr::is_prefix_of(const FinStr& other) const {
    if (!(alpha_ == other.alpha_) || syms_.size() > other.syms_.size()) return false;
    return std::equal(syms_.begin(), syms_.end(), other.syms_.begin());
}

std::string FinStr::str() const {
    std::string s;
    s.reserve(syms_.size());
    for (Sym v : syms_) s.push_back(static_cast<char>('0' + v));
    return s;
}

bool shortlex_less(const FinStr& a, const FinStr& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.syms() < b.syms();
}

FinStr repeat(const FinStr& u, std::size_t n) {
    FinStr r(u.alphabet());
    for (std::size_t i = 0; i < n; ++i) r = r.concat(u);
    return r;
}

FinStr eventually_periodic_prefix(const FinStr& head, const FinStr& period, std::size_t n) {
    if (period.empty()) throw InputError("period must be nonempty");
    FinStr r(head.alphabet());
    for (std::size_t i = 0; i < n; ++i) {
        Sym s = i < head.length() ? head.at(i)
                                  : period.at((i - head.length()) % period.length());
        r.push_back(s);
    }
    return r;
}

void for_each_string_of_length(Alphabet a, int len,
                               const std::function<void(const FinStr&)>& fn) {
    std::vector<Sym> syms(static_cast<std::size_t>(len), 0);
    if (len == 0) {
        fn(FinStr(a));
        return;
    }
    for (;;) {
        fn(FinStr(a, syms));
        int i = len - 1;
        while (i >= 0 && syms[static_cast<std::size_t>(i)] == a.size - 1) {
            syms[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++syms[static_cast<std::size_t>(i)];
    }
}

void for_each_string_up_to(Alphabet a, int max_len,
                           const std::function<void(const FinStr&)>& fn) {
    for (int len = 0; len <= max_len; ++len) for_each_string_of_length(a, len, fn);
}

FinStr numeral(Alphabet a, unsigned long n) {
    if (n == 0) return FinStr(a, {0});
    std::vector<Sym> digits;
    while (n > 0) {
        digits.push_back(static_cast<Sym>(n % static_cast<unsigned long>(a.size)));
        n /= static_cast<unsigned long>(a.size);
    }
    std::reverse(digits.begin(), digits.end());
    return FinStr(a, std::move(digits));
}

FinStr numeral_signed(Alphabet a, long n) {
    unsigned long folded = n >= 0 ? 2UL * static_cast<unsigned long>(n)
                                  : 2UL * static_cast<unsigned long>(-(n + 1)) + 1UL;
    return numeral(a, folded);
}

}  // namespace seqlab
