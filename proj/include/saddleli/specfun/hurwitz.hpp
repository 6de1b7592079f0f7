#pragma once

#include <cmath>
#include <vector>

#include "saddleli/ap.hpp"
#include "saddleli/precision.hpp"
#include "saddleli/specfun/bernoulli.hpp"

namespace saddleli::specfun {

namespace detail {

// x^(-s) for real x > 0.
inline APReal neg_power(const APReal& x, const APReal& s, bool integral) {
    return integral ? pow(x, -s.to_long()) : pow(x, -s);
}
inline APComplex neg_power(const APReal& x, const APComplex& s, bool) {
    return exp(-(APComplex(log(x)) * s));
}
inline APReal magnitude(const APReal& v) { return abs(v); }
inline APReal magnitude(const APComplex& v) { return abs(v); }
inline APReal real_part(const APReal& v) { return v; }
inline APReal real_part(const APComplex& v) { return v.re; }

// Smallest N for which plain summation of (n+q)^-s, n < N, is within
// 2^-(bits+2) relative of the full sum; 0 if that exceeds `limit`.
inline long direct_terms(double s, double q, int bits, long limit) {
    if (s <= 1.0) return 0;
    for (long n = 1; n <= limit; n = n < 8 ? n + 1 : n * 5 / 4) {
        const double x = n + q;
        // tail <= x^-s (1 + x/(s-1)); compare against the first term q^-s.
        const double log2_ratio = -s * std::log2(x / q) + std::log2(1.0 + x / (s - 1.0));
        if (log2_ratio < -(bits + 2)) return n;
    }
    return 0;
}

// Euler-Maclaurin: zeta(s, q) = sum_{n<N} (n+q)^-s + x^(1-s)/(s-1) + x^-s/2
//   + sum_j B_2j/(2j)! s(s+1)...(s+2j-2) x^(-s-2j+1),   x = N + q.
template <class T>
T hurwitz_em(const T& s, const APReal& q, long terms, int bits, bool integral, int escalations) {
    long n_terms = terms;
    for (int attempt = 0; attempt <= escalations; ++attempt, n_terms *= 2) {
        T sum(bits);
        APReal x(q, bits);
        for (long n = 0; n < n_terms; ++n, x += 1L) sum += neg_power(x, s, integral);

        const T x_neg_s = neg_power(x, s, integral);
        T s_minus_1 = s;
        s_minus_1 -= APReal(1L, bits);
        sum += x_neg_s * x / s_minus_1;
        sum += x_neg_s / APReal(2L, bits);

        const APReal inv_x2 = APReal(1L, bits) / (x * x);
        T coef = s;              // s(s+1)...(s+2j-2) / (2j)!
        coef /= APReal(2L, bits);
        T power = x_neg_s / x;   // x^(-s-2j+1)
        const APReal floor_tol = pow2(-2 * bits, bits);
        APReal previous(bits);
        bool converged = false;
        for (unsigned j = 1;; ++j) {
            T term = coef * power;
            term *= APReal(bernoulli(2 * j), bits);
            const APReal size = magnitude(term);
            const APReal tol = max(pow2(-bits, bits) * magnitude(sum), floor_tol);
            if (size.is_zero() || size < tol) {
                converged = true;
                break;
            }
            if (j > 2 && size > previous) break;
            sum += term;
            previous = size;
            T step = s;
            step += APReal(static_cast<long>(2 * j - 1), bits);
            T step2 = s;
            step2 += APReal(static_cast<long>(2 * j), bits);
            coef *= step;
            coef *= step2;
            coef /= APReal(static_cast<long>(2 * j + 1) * static_cast<long>(2 * j + 2), bits);
            power *= inv_x2;
        }
        if (converged) return sum;
    }
    throw ConvergenceError("hurwitz_zeta: Euler-Maclaurin corrections did not converge");
}

inline long em_terms(const PrecisionContext& ctx, double abs_im) {
    return std::max<long>({static_cast<long>(std::ceil(ctx.target_bits() * 0.7)),
                           static_cast<long>(std::ceil(abs_im)), 1L});
}

}  // namespace detail

/// Hurwitz zeta(s, q) = sum_{n>=0} (n+q)^-s for real s != 1, q > 0,
/// continued analytically through Euler-Maclaurin.
inline APReal hurwitz_zeta(const APReal& s, const APReal& q, const PrecisionContext& ctx) {
    if (!(q > 0L)) throw DomainError("hurwitz_zeta: q must be positive");
    const APReal one(1L, s.bits());
    if (s == one) throw PoleError("hurwitz_zeta: pole at s = 1");
    const int bits = ctx.working_bits();
    const bool integral = s.is_integer() && abs(s) < APReal(1L << 30, 64);
    const APReal s_w(s, bits), q_w(q, bits);
    const long n_em = detail::em_terms(ctx, 0.0);
    if (const long n_direct = detail::direct_terms(s.to_double(), q.to_double(), bits, n_em); n_direct > 0) {
        APReal sum(bits);
        APReal x(q_w);
        for (long n = 0; n < n_direct; ++n, x += 1L) sum += detail::neg_power(x, s_w, integral);
        return sum;
    }
    return detail::hurwitz_em(s_w, q_w, n_em, bits, integral, ctx.max_escalations());
}

/// Integer-s convenience overload (the hot path of binomial Hurwitz sums).
inline APReal hurwitz_zeta(long s, const APReal& q, const PrecisionContext& ctx) {
    return hurwitz_zeta(APReal(s, 64), q, ctx);
}

/// Complex s. Real s is routed through the real evaluation.
inline APComplex hurwitz_zeta(const APComplex& s, const APReal& q, const PrecisionContext& ctx) {
    if (s.is_real()) return APComplex(hurwitz_zeta(s.re, q, ctx));
    if (!(q > 0L)) throw DomainError("hurwitz_zeta: q must be positive");
    const int bits = ctx.working_bits();
    const APComplex s_w(APReal(s.re, bits), APReal(s.im, bits));
    return detail::hurwitz_em(s_w, APReal(q, bits), detail::em_terms(ctx, std::fabs(s.im.to_double())), bits,
                              false, ctx.max_escalations());
}

/// zeta(s, q) for every integer s in [s_lo, s_hi] (s_lo >= 2). The table
/// (n+q)^-s is advanced by one multiplication per order, and columns drop out
/// once they fall below 2^-(bits+8) of the leading term.
inline std::vector<APReal> hurwitz_zeta_integers(long s_lo, long s_hi, const APReal& q, const PrecisionContext& ctx) {
    if (s_lo < 2 || s_hi < s_lo) throw DomainError("hurwitz_zeta_integers: need 2 <= s_lo <= s_hi");
    if (!(q > 0L)) throw DomainError("hurwitz_zeta: q must be positive");
    const int bits = ctx.working_bits();
    const long n_em = detail::em_terms(ctx, 0.0);
    const APReal q_w(q, bits);

    // inv[j] = 1/(j+q), pw[j] = (j+q)^-s for j <= n_em; pw[n_em] feeds the tail.
    std::vector<APReal> inv, pw;
    inv.reserve(n_em + 1);
    pw.reserve(n_em + 1);
    APReal x(q_w);
    for (long j = 0; j <= n_em; ++j, x += 1L) {
        inv.push_back(APReal(1L, bits) / x);
        pw.push_back(pow(inv.back(), s_lo));
    }
    const APReal x_tail = APReal(n_em, bits) + q_w;
    const APReal inv_tail2 = inv[n_em] * inv[n_em];
    const APReal drop = pow2(-bits - 8, bits);
    const long q_ceil = static_cast<long>(std::ceil(q.to_double()));

    std::vector<APReal> out;
    out.reserve(s_hi - s_lo + 1);
    long active = n_em;  // columns j < active still contribute
    for (long s = s_lo; s <= s_hi; ++s) {
        if (s > s_lo)
            for (long j = 0; j <= std::min(active, n_em); ++j) pw[j] *= inv[j];
        const APReal threshold = pw[0] * drop;
        while (active > 1 && pw[active - 1] * (active + q_ceil + 1) < threshold) --active;

        APReal sum(bits);
        for (long j = active; j-- > 0;) sum += pw[j];
        if (active < n_em) {
            // remaining tail <= (active+q)^-s (1 + (active+q)/(s-1)) < threshold
            out.push_back(std::move(sum));
            continue;
        }
        sum += pw[n_em] * x_tail / (s - 1);
        sum += pw[n_em] / 2L;
        APReal coef(Rational(s, 2), bits);  // s(s+1)...(s+2j-2) / (2j)!
        APReal power = pw[n_em] * inv[n_em];
        APReal previous(bits);
        bool converged = false;
        const APReal tol = sum * pow2(-bits, bits);
        for (unsigned j = 1;; ++j) {
            APReal term = coef * power * APReal(bernoulli(2 * j), bits);
            const APReal size = abs(term);
            if (size < tol) {
                converged = true;
                break;
            }
            if (j > 2 && size > previous) break;
            sum += term;
            previous = size;
            coef *= (s + 2 * static_cast<long>(j) - 1) * (s + 2 * static_cast<long>(j));
            coef /= (2 * static_cast<long>(j) + 1) * (2 * static_cast<long>(j) + 2);
            power *= inv_tail2;
        }
        out.push_back(converged ? std::move(sum) : hurwitz_zeta(s, q_w, ctx));
    }
    return out;
}

/// Riemann zeta(s) = zeta(s, 1).
inline APReal riemann_zeta(const APReal& s, const PrecisionContext& ctx) {
    return hurwitz_zeta(s, APReal(1L, ctx.working_bits()), ctx);
}

}  // namespace saddleli::specfun
