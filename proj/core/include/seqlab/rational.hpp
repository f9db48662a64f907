#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace seqlab {

// Exact arbitrary-precision rational.  Everything on the exact path of the
// library is an mpq; floats appear only at reporting time.
using Rat = mpq_class;

// Parses "num/den" or a plain integer.  Canonicalizes the fraction.
Rat parse_rat(std::string_view text);

// "num/den", or just "num" when the denominator is 1.
std::string rat_str(const Rat& q);

// 2^e as an exact rational (e may be negative).
Rat pow2_rat(long e);

// Natural log / log2 of a positive rational, safe for values far outside
// double range (the mantissa and exponent are split before the log).
double ln_rat(const Rat& q);
double log2_rat(const Rat& q);

// Exact ceil(log2(q)) for q > 0, computed with integer shifts only.
long ceil_log2_rat(const Rat& q);

// Sign of (ln 2 - q), decided exactly by refining rational bounds on ln 2.
int cmp_ln2(const Rat& q);

// Compare a/b against 2^k without leaving integer arithmetic.
int cmp_rat_pow2(const Rat& q, long k);

// Neumaier compensated summation; keeps float accumulation error well under
// the 1e-9 comparison tolerances used by the bound reports.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace seqlab
