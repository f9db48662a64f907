#include "seqlab/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "seqlab/errors.hpp"

namespace seqlab {

Rat parse_rat(std::string_view text) {
    if (text.empty()) throw InputError("empty rational literal");
    std::string s(text);
    try {
        Rat q(s);  // accepts "a" and "a/b"
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw InputError("bad rational literal: '" + s + "'");
    }
}

std::string rat_str(const Rat& q) {
    return q.get_str();
}

Rat pow2_rat(long e) {
    mpz_class one = 1;
    mpz_class shifted;
    mpz_mul_2exp(shifted.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(e >= 0 ? e : -e));
    Rat q = e >= 0 ? Rat(shifted) : Rat(1, shifted);
    q.canonicalize();
    return q;
}

namespace {

// ln of a positive mpz via mantissa/exponent split.
double ln_mpz(const mpz_class& z) {
    signed long exp = 0;
    double d = mpz_get_d_2exp(&exp, z.get_mpz_t());  // d in [0.5, 1)
    return std::log(d) + static_cast<double>(exp) * M_LN2;
}

double log2_mpz(const mpz_class& z) {
    signed long exp = 0;
    double d = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log2(d) + static_cast<double>(exp);
}

}  // namespace

double ln_rat(const Rat& q) {
    if (sgn(q) <= 0) throw InputError("ln of non-positive rational");
    return ln_mpz(q.get_num()) - ln_mpz(q.get_den());
}

double log2_rat(const Rat& q) {
    if (sgn(q) <= 0) throw InputError("log2 of non-positive rational");
    return log2_mpz(q.get_num()) - log2_mpz(q.get_den());
}

int cmp_rat_pow2(const Rat& q, long k) {
    // q ? 2^k  <=>  num ? den * 2^k (k >= 0)  <=>  num * 2^-k ? den (k < 0)
    mpz_class lhs = q.get_num();
    mpz_class rhs = q.get_den();
    if (k >= 0)
        mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    else
        mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
    return cmp(lhs, rhs);
}

long ceil_log2_rat(const Rat& q) {
    if (sgn(q) <= 0) throw InputError("ceil_log2 of non-positive rational");
    long size_num = static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2));
    long size_den = static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
    // 2^(s-1) <= z < 2^s gives q < 2^(size_num - size_den + 1).
    long e = size_num - size_den + 1;
    while (cmp_rat_pow2(q, e - 1) <= 0) --e;
    return e;
}

int cmp_ln2(const Rat& q) {
    if (sgn(q) <= 0) return 1;
    if (q >= 1) return -1;
    // ln 2 = sum_{k>=1} 1/(k 2^k); tail after m terms is < 2^-m / (m+1).
    Rat partial = 0;
    long k = 0;
    for (long m = 16; m <= 1 << 14; m *= 2) {
        while (k < m) {
            ++k;
            partial += Rat(1, k) * pow2_rat(-k);
        }
        Rat hi = partial + Rat(1, m + 1) * pow2_rat(-m);
        if (q < partial) return 1;
        if (q > hi) return -1;
    }
    // Unreachable for rational q: ln 2 is irrational.
    throw std::logic_error("cmp_ln2 failed to separate");
}

}  // namespace seqlab
