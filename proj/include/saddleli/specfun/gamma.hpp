#pragma once

#include <cmath>
#include <optional>

#include "saddleli/ap.hpp"
#include "saddleli/precision.hpp"
#include "saddleli/specfun/bernoulli.hpp"

namespace saddleli::specfun {

/// Smallest |z| at which the Stirling series can reach 2^-bits: its smallest
/// term behaves like exp(-2 pi |z|).
inline double stirling_radius(int bits) { return 0.12 * bits + 4.0; }

namespace detail {

// Principal log Gamma(w) for |w| large by the Stirling series
//   (w - 1/2) log w - w + log(2 pi)/2 + sum_j B_2j / (2j (2j-1) w^(2j-1)).
// Returns nullopt if the terms stop decreasing before reaching 2^-bits.
inline std::optional<APComplex> stirling_log_gamma(const APComplex& w, int bits) {
    const APComplex log_w = log(w);
    APComplex half_w = w;
    half_w.re -= APReal(0.5, bits);
    APComplex result = half_w * log_w - w;
    result.re += log(const_pi(bits) * 2) / 2;

    const APComplex inv_w = APComplex(APReal(1L, bits)) / w;
    const APComplex inv_w2 = inv_w * inv_w;
    APComplex power = inv_w;  // w^-(2j-1)
    const APReal tol = pow2(-bits, bits) * max(abs(result), APReal(1L, bits));
    APReal previous(bits);
    for (unsigned j = 1;; ++j) {
        APComplex term = power * APReal(bernoulli(2 * j), bits);
        term /= APReal(static_cast<long>(2 * j) * static_cast<long>(2 * j - 1), bits);
        const APReal size = abs(term);
        if (size < tol) return result;
        if (j > 2 && size > previous) return std::nullopt;
        result += term;
        previous = size;
        power *= inv_w2;
    }
}

inline bool is_nonpositive_integer(const APComplex& z) {
    return z.im.is_zero() && z.re.is_integer() && z.re <= 0L;
}

}  // namespace detail

/// Principal branch of log Gamma(z), accurate to the target precision of ctx.
///
/// The argument is raised by z -> z + N until |z + N| >= threshold, then the
/// Stirling series is applied; log Gamma(z) = log Gamma(z+N) - sum log(z+j)
/// with principal logs, which selects the standard branch (cut along the
/// negative real axis). `threshold` defaults to stirling_radius(working bits);
/// if the series fails to converge at the given threshold it is doubled, at
/// most ctx.max_escalations() times.
inline APComplex log_gamma(const APComplex& z, const PrecisionContext& ctx,
                           std::optional<double> threshold = std::nullopt) {
    if (detail::is_nonpositive_integer(z)) throw PoleError("log_gamma: pole at non-positive integer");
    const int bits = ctx.working_bits();
    double radius = threshold.value_or(stirling_radius(bits));

    for (int attempt = 0; attempt <= ctx.max_escalations(); ++attempt, radius *= 2) {
        const double re = z.re.to_double(), im = z.im.to_double();
        long shift = 0;
        if (std::hypot(re, im) < radius) {
            const double need = radius * radius - im * im;
            shift = need <= 0 ? 0 : std::max(0L, static_cast<long>(std::ceil(std::sqrt(need) - re)));
        }
        APComplex w(APReal(z.re, bits), APReal(z.im, bits));
        APComplex correction(bits);
        if (z.is_real() && z.re > 0L) {
            // Positive real axis: accumulate the product and take one log.
            APReal product(1L, bits);
            for (long j = 0; j < shift; ++j) {
                product *= w.re;
                w.re += 1L;
            }
            correction.re = log(product);
        } else {
            for (long j = 0; j < shift; ++j) {
                correction += log(w);
                w.re += 1L;
            }
        }
        auto tail = detail::stirling_log_gamma(w, bits);
        if (!tail) continue;
        APComplex result = *tail - correction;
        if (z.is_real() && z.re > 0L) result.im = APReal(bits);
        return result;
    }
    throw ConvergenceError("log_gamma: Stirling series did not converge within the escalation budget");
}

/// Real convenience overload for x > 0.
inline APReal log_gamma(const APReal& x, const PrecisionContext& ctx) {
    if (!(x > 0L)) throw DomainError("log_gamma(real): argument must be positive");
    return log_gamma(APComplex(x), ctx).re;
}

/// Digamma psi(x) for real x > 0: recurrence psi(x) = psi(x+1) - 1/x up to
/// the asymptotic region, then psi(w) ~ log w - 1/(2w) - sum B_2j/(2j w^2j).
inline APReal digamma(const APReal& x, const PrecisionContext& ctx) {
    if (!(x > 0L)) throw DomainError("digamma: argument must be positive");
    const int bits = ctx.working_bits();
    double radius = stirling_radius(bits);
    for (int attempt = 0; attempt <= ctx.max_escalations(); ++attempt, radius *= 2) {
        APReal w(x, bits);
        APReal correction(bits);
        while (w.to_double() < radius) {
            correction += APReal(1L, bits) / w;
            w += 1L;
        }
        APReal result = log(w) - APReal(1L, bits) / (w * 2);
        const APReal inv_w2 = APReal(1L, bits) / (w * w);
        APReal power = inv_w2;
        const APReal tol = pow2(-bits, bits) * max(abs(result), APReal(1L, bits));
        APReal previous(bits);
        bool converged = false;
        for (unsigned j = 1;; ++j) {
            APReal term = power * APReal(bernoulli(2 * j), bits) / static_cast<long>(2 * j);
            const APReal size = abs(term);
            if (size < tol) {
                converged = true;
                break;
            }
            if (j > 2 && size > previous) break;
            result -= term;
            previous = size;
            power *= inv_w2;
        }
        if (converged) return result - correction;
    }
    throw ConvergenceError("digamma: asymptotic series did not converge within the escalation budget");
}

}  // namespace saddleli::specfun
