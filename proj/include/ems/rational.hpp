#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ems {

// All geometry in this library is over exact rationals. Every predicate is
// a sign question; a single rounded bit would make "general position" and
// "empty" unverifiable.
using Rat = mpq_class;
using Int = mpz_class;
using Vec = std::vector<Rat>;

inline int sign(const Rat& q) { return sgn(q); }

inline Rat rat_from_string(const std::string& s) {
    mpq_class q(s);
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

// a^e for non-negative integer exponent.
inline Rat rat_pow(const Rat& a, unsigned long e) {
    Rat r = 1, base = a;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// Smallest integer m >= 0 with m^e >= v (v >= 0). Exact integer arithmetic.
inline long ceil_root(const Rat& v, unsigned long e) {
    if (sign(v) <= 0) return 0;
    long m = 0;
    while (rat_pow(Rat(m), e) < v) ++m;
    return m;
}

inline long rat_ceil(const Rat& q) {
    Int c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return c.get_si();
}

inline long rat_floor(const Rat& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f.get_si();
}

// Compares a^e with b for a,b >= 0 without leaving the rationals.
// Returns sign of a^e - b.
inline int cmp_pow(const Rat& a, unsigned long e, const Rat& b) {
    Rat p = rat_pow(a, e);
    return cmp(p, b);
}

}  // namespace ems
