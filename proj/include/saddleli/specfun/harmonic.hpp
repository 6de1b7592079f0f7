#pragma once

#include "saddleli/ap.hpp"
#include "saddleli/precision.hpp"

namespace saddleli::specfun {

namespace detail {
// Binary splitting: sum_{j=a}^{b-1} 1/j = p/q with q = a (a+1) ... (b-1).
inline void harmonic_split(unsigned long a, unsigned long b, Integer& p, Integer& q) {
    if (b - a == 1) {
        p = 1;
        q = a;
        return;
    }
    const unsigned long mid = a + (b - a) / 2;
    Integer p2, q2;
    harmonic_split(a, mid, p, q);
    harmonic_split(mid, b, p2, q2);
    p = p * q2 + p2 * q;
    q *= q2;
}
}  // namespace detail

/// h_n = 1 + 1/2 + ... + 1/n as an exact rational (h_0 = 0).
inline Rational harmonic_exact(unsigned long n) {
    if (n == 0) return Rational(0);
    Integer p, q;
    detail::harmonic_split(1, n + 1, p, q);
    Rational r(p, q);
    r.canonicalize();
    return r;
}

/// h_n rounded once to the working precision of `ctx`.
inline APReal harmonic(unsigned long n, const PrecisionContext& ctx) {
    if (n == 0) return APReal(ctx.working_bits());
    Integer p, q;
    detail::harmonic_split(1, n + 1, p, q);
    APReal r(ctx.working_bits());
    mpq_t frac;
    mpq_init(frac);
    mpz_set(mpq_numref(frac), p.get_mpz_t());
    mpz_set(mpq_denref(frac), q.get_mpz_t());
    // p/q need not be in lowest terms; mpfr_set_q only needs a positive denominator.
    mpfr_set_q(r.raw(), frac, MPFR_RNDN);
    mpq_clear(frac);
    return r;
}

}  // namespace saddleli::specfun
