#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wpvol {

/// Exact rational scalar. Backed by GMP; always stored in lowest terms with
/// positive denominator, so equality is structural and arithmetic never rounds.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "num" or "num/den" in base 10.
inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline double rat_to_double(const Rat& r) { return r.get_d(); }

/// Exact conversion; every finite double is a dyadic rational.
inline Rat rat_from_double(double x) {
    Rat r(x);
    r.canonicalize();
    return r;
}

inline Rat rat_pow(const Rat& base, unsigned e) {
    Rat out(1);
    Rat b = base;
    unsigned k = e;
    while (k) {
        if (k & 1u) out *= b;
        b *= b;
        k >>= 1;
    }
    return out;
}

inline Rat factorial(unsigned n) {
    mpz_class z;
    mpz_fac_ui(z.get_mpz_t(), n);
    return Rat(z);
}

/// n!! with the usual conventions (-1)!! = 0!! = 1.
inline Rat double_factorial(long n) {
    if (n <= 0) return Rat(1);
    mpz_class z;
    mpz_2fac_ui(z.get_mpz_t(), static_cast<unsigned long>(n));
    return Rat(z);
}

inline Rat binomial(unsigned n, unsigned k) {
    if (k > n) return Rat(0);
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), n, k);
    return Rat(z);
}

}  // namespace wpvol
