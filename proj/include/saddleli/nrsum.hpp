#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "saddleli/ap.hpp"
#include "saddleli/precision.hpp"
#include "saddleli/specfun.hpp"

namespace saddleli::nrsum {

/// k -> f(k) delivered with relative error <= 2^(1-bits). Must be safe to call
/// concurrently.
using SequenceProvider = std::function<APReal(long k, int bits)>;

/// s -> f(s) for complex s, holomorphic near the contour.
using HolomorphicProvider = std::function<APComplex(const APComplex& s, int bits)>;

struct AltSumResult {
    APReal value;
    APReal error_bound;  // absolute
    int working_bits = 0;
    int escalations = 0;
};

namespace detail {

// sum_{k=n0}^{n} (-1)^k C(n,k) f(k) at `bits`; returns value and |C f| mass.
inline std::pair<APReal, APReal> alt_sum_once(const SequenceProvider& f, long n, long n0, int bits) {
    APReal total(bits);
    APReal mass(64);
    Integer binom = binomial(n, n0);
    for (long k = n0; k <= n; ++k) {
        APReal term = f(k, bits);
        if (term.bits() != bits) term = term.rounded(bits);
        term *= binom;
        mass += abs(term).rounded(64);
        if (k % 2 == 0)
            total += term;
        else
            total -= term;
        binom *= n - k;
        binom /= k + 1;
    }
    return {std::move(total), std::move(mass)};
}

inline void require_n(long n, long n0) {
    if (n < 0 || n0 < 0) throw DomainError("alternating sum: n and n0 must be non-negative");
}

}  // namespace detail

/// sum_{k=n0}^{n} (-1)^k C(n,k) f(k) with the cancellation-safe precision
/// policy: working bits start at n + target + 64 and escalate until the
/// absolute bound is below 2^-target relative to the value. When the value
/// itself vanishes the result carries an absolute bound only.
inline AltSumResult alt_binomial_sum_detailed(const SequenceProvider& f, long n, long n0,
                                              const PrecisionContext& ctx) {
    detail::require_n(n, n0);
    if (n0 > n) return {APReal(ctx.working_bits()), APReal(64), ctx.working_bits(), 0};
    PrecisionContext level = ctx.for_alternating_sum(n);
    for (int attempt = 0;; ++attempt, level = level.escalated()) {
        const int bits = level.working_bits();
        auto [value, mass] = detail::alt_sum_once(f, n, n0, bits);
        APReal bound = mass * (n - n0 + 4) * pow2(1 - bits, 64);
        const bool met = bound <= abs(value) * pow2(-ctx.target_bits(), 64);
        if (met || attempt >= ctx.max_escalations()) return {std::move(value), std::move(bound), bits, attempt};
    }
}

inline APReal alt_binomial_sum(const SequenceProvider& f, long n, long n0, const PrecisionContext& ctx) {
    return alt_binomial_sum_detailed(f, n, n0, ctx).value;
}

/// The same sum with no guard policy: f and the accumulator both at `bits`.
/// Exists to exhibit the cancellation the policy prevents.
inline APReal alt_binomial_sum_fixed(const SequenceProvider& f, long n, long n0, int bits) {
    detail::require_n(n, n0);
    if (n0 > n) return APReal(bits);
    return detail::alt_sum_once(f, n, n0, bits).first;
}

/// Smallest m/k accepted by the H_n routines.
inline const Rational& min_shift() {
    static const Rational value(1, 65536);
    return value;
}

/// l -> zeta(l, m/k) / k^l, l >= 2, computed in one batch per precision and
/// cached at the highest precision requested so far.
class HurwitzSequence {
public:
    HurwitzSequence(Rational m, Rational k, long max_l, int max_escalations = 3)
        : m_(std::move(m)), k_(std::move(k)), max_l_(max_l), escalations_(max_escalations) {
        if (k_ <= 0 || m_ <= 0) throw DomainError("H_n: m and k must be positive");
        if (Rational(m_ / k_) < min_shift()) throw DomainError("H_n: m/k below 2^-16");
    }

    /// Computes the whole table at `bits` (no-op if already at least that precise).
    void prime(int bits) const {
        std::lock_guard lock(mutex_);
        ensure_locked(bits);
    }

    APReal operator()(long l, int bits) const {
        if (l < 2 || l > max_l_) throw DomainError("H_n sequence: index out of range");
        std::lock_guard lock(mutex_);
        ensure_locked(bits);
        return values_[l - 2].rounded(bits);
    }

    SequenceProvider provider() const {
        return [this](long l, int bits) { return (*this)(l, bits); };
    }

    const Rational& m() const noexcept { return m_; }
    const Rational& k() const noexcept { return k_; }
    long max_l() const noexcept { return max_l_; }

private:
    void ensure_locked(int bits) const {
        if (bits <= bits_ || max_l_ < 2) return;
        const PrecisionContext ctx(bits, bits + PrecisionContext::guard_bits, escalations_);
        const int w = ctx.working_bits();
        const APReal q(Rational(m_ / k_), w);
        auto zetas = specfun::hurwitz_zeta_integers(2, max_l_, q, ctx);
        const APReal inv_k(Rational(1 / k_), w);
        APReal scale = inv_k * inv_k;
        for (auto& z : zetas) {
            z *= scale;
            scale *= inv_k;
        }
        values_ = std::move(zetas);
        bits_ = bits;
    }

    Rational m_, k_;
    long max_l_;
    int escalations_;
    mutable std::mutex mutex_;
    mutable std::vector<APReal> values_;
    mutable int bits_ = 0;
};

/// H_n(m,k) = sum_{l=2}^{n} (-1)^l C(n,l) zeta(l, m/k) / k^l.
inline AltSumResult hn_direct_detailed(long n, const HurwitzSequence& seq, const PrecisionContext& ctx) {
    if (n < 1) throw DomainError("H_n: n must be >= 1");
    if (n > seq.max_l()) throw DomainError("H_n: n beyond the sequence range");
    if (n == 1) return {APReal(ctx.working_bits()), APReal(64), ctx.working_bits(), 0};
    return alt_binomial_sum_detailed(seq.provider(), n, 2, ctx);
}

inline AltSumResult hn_direct_detailed(long n, const Rational& m, const Rational& k, const PrecisionContext& ctx) {
    if (n < 1) throw DomainError("H_n: n must be >= 1");
    const HurwitzSequence seq(m, k, std::max(n, 2L), ctx.max_escalations());
    return hn_direct_detailed(n, seq, ctx);
}

inline APReal hn_direct(long n, const Rational& m, const Rational& k, const PrecisionContext& ctx) {
    return hn_direct_detailed(n, m, k, ctx).value;
}

/// H_n evaluated entirely at `bits`, without the cancellation guard.
inline APReal hn_direct_unguarded(long n, const Rational& m, const Rational& k, int bits) {
    if (n < 1) throw DomainError("H_n: n must be >= 1");
    if (n == 1) return APReal(bits);
    const HurwitzSequence seq(m, k, n);
    return alt_binomial_sum_fixed(seq.provider(), n, 2, bits);
}

/// (m/k - 1/2) - (n/k)(psi(m/k) + log k + 1 - h_{n-1}); zero at n = 1.
inline APReal hn_main_terms(long n, const Rational& m, const Rational& k, const PrecisionContext& ctx) {
    if (n < 1) throw DomainError("H_n: n must be >= 1");
    if (k <= 0 || m <= 0) throw DomainError("H_n: m and k must be positive");
    const Rational q = m / k;
    if (q < min_shift()) throw DomainError("H_n: m/k below 2^-16");
    const int w = ctx.working_bits();
    if (n == 1) return APReal(w);
    const APReal kw(k, w);
    APReal bracket = specfun::digamma(APReal(q, w), ctx) + log(kw) + 1L - specfun::harmonic(n - 1, ctx);
    return APReal(q - Rational(1, 2), w) - bracket * APReal(Rational(n) / k, w);
}

/// sqrt(4 pi n / k) - 5 pi/8 - 2 pi m/k
inline APReal an_phase(long n, const Rational& m, const Rational& k, int bits) {
    const APReal pi = const_pi(bits);
    return sqrt(pi * 4L * APReal(Rational(n) / k, bits)) - pi * 5L / 8L - pi * 2L * APReal(Rational(m / k), bits);
}

/// (1/k)(2n/(pi k))^{1/4} exp(-sqrt(4 pi n/k)): the a_n amplitude.
inline APReal an_envelope(long n, const Rational& k, int bits) {
    const APReal pi = const_pi(bits);
    const APReal nk(Rational(n) / k, bits);
    return sqrt(sqrt(nk * 2L / pi)) * exp(-sqrt(pi * 4L * nk)) * APReal(Rational(1 / k), bits);
}

/// Leading saddle-point term a_n(m,k) (the l = 1 contribution).
inline APReal an_saddle(long n, const Rational& m, const Rational& k, const PrecisionContext& ctx) {
    if (n < 2) throw DomainError("a_n: n must be >= 2");
    if (k <= 0 || m <= 0) throw DomainError("a_n: m and k must be positive");
    const int w = ctx.working_bits();
    return an_envelope(n, k, w) * cos(an_phase(n, m, k, w));
}

/// The l-summed form (1/k)(2n/pi)^{1/4} sum_{l=1}^{k} (l/k)^{1/4}
/// exp(-sqrt(4 pi l n/k)) cos(sqrt(4 pi l n/k) - 5 pi/8 - 2 pi l m/k); k integral.
inline APReal an_saddle_lsum(long n, const Rational& m, const Rational& k, const PrecisionContext& ctx) {
    if (n < 2) throw DomainError("a_n: n must be >= 2");
    if (k <= 0 || m <= 0) throw DomainError("a_n: m and k must be positive");
    if (k.get_den() != 1) throw UnsupportedError("a_n l-sum: k must be an integer");
    const int w = ctx.working_bits();
    const APReal pi = const_pi(w);
    const long kk = k.get_num().get_si();
    APReal total(w);
    for (long l = 1; l <= kk; ++l) {
        const APReal x = sqrt(pi * 4L * APReal(Rational(l * n) / k, w));
        const APReal phase = x - pi * 5L / 8L - pi * 2L * APReal(Rational(l * m) / k, w);
        total += sqrt(sqrt(APReal(Rational(l) / k, w))) * exp(-x) * cos(phase);
    }
    return total * sqrt(sqrt(APReal(2L * n, w) / pi)) / APReal(k, w);
}

/// Leading exponentially small term obtained from the Mellin-Barnes integral
/// through the Bessel-K asymptotics; summed over l = 1..k for integral k, l = 1
/// otherwise. term_l = (2/k) sqrt(pi) a^{-3/4} n^{1/4} exp(-sqrt(2an))
/// cos(sqrt(2an) + 3pi/8 + a/2 - 2 pi l m/k), a = 2 pi l/k.
inline APReal an_mellin_barnes(long n, const Rational& m, const Rational& k, const PrecisionContext& ctx) {
    if (n < 2) throw DomainError("a_n: n must be >= 2");
    if (k <= 0 || m <= 0) throw DomainError("a_n: m and k must be positive");
    const int w = ctx.working_bits();
    const APReal pi = const_pi(w);
    const long l_max = k.get_den() == 1 ? k.get_num().get_si() : 1;
    const APReal nn(n, w);
    APReal total(w);
    for (long l = 1; l <= l_max; ++l) {
        const APReal a = pi * 2L * APReal(Rational(l) / k, w);
        const APReal x = sqrt(a * nn * 2L);
        const APReal phase = x + pi * 3L / 8L + a / 2L - pi * 2L * APReal(Rational(l * m) / k, w);
        total += pow(a, APReal(-0.75, w)) * exp(-x) * cos(phase);
    }
    return total * sqrt(pi) * sqrt(sqrt(nn)) * APReal(Rational(2) / k, w);
}

struct HnBreakdown {
    long n = 0;
    Rational m, k;
    APReal direct_value;
    APReal direct_error_bound;
    APReal main_terms;
    APReal an_predicted;
    APReal residual;  // direct_value - main_terms
    APReal an_error_bound;
};

/// Breakdown using an existing sequence (its m, k) so sweeps share the table.
inline HnBreakdown hn_breakdown(long n, const HurwitzSequence& seq, const PrecisionContext& ctx) {
    HnBreakdown b;
    b.n = n;
    b.m = seq.m();
    b.k = seq.k();
    auto direct = hn_direct_detailed(n, seq, ctx);
    const int w = std::max(direct.working_bits, ctx.working_bits());
    b.direct_value = direct.value;
    b.direct_error_bound = direct.error_bound;
    b.main_terms = hn_main_terms(n, b.m, b.k, ctx.with_working_bits(w));
    b.residual = b.direct_value - b.main_terms;
    if (n >= 2) {
        b.an_predicted = an_saddle(n, b.m, b.k, ctx);
        // O(n^{-1/4} e^{-sqrt(4 pi n/k)}) with unit constant, plus the direct-sum bound.
        const APReal o_term = an_envelope(n, b.k, 64) * APReal(b.k, 64) /
                              sqrt(sqrt(APReal(Rational(2 * n * n) / b.k, 64) / const_pi(64)));
        b.an_error_bound = o_term + direct.error_bound;
    } else {
        b.an_predicted = APReal(w);
        b.an_error_bound = direct.error_bound + pow2(-ctx.target_bits(), 64);
    }
    return b;
}

inline HnBreakdown hn_breakdown(long n, const Rational& m, const Rational& k, const PrecisionContext& ctx) {
    const HurwitzSequence seq(m, k, std::max(n, 2L), ctx.max_escalations());
    return hn_breakdown(n, seq, ctx);
}

/// (-1)^n/(2 pi i) \oint f(s) n! / (s(s-1)...(s-n)) ds over a circle enclosing
/// {n0..n}, by the trapezoid rule with doubling until two estimates agree to
/// 2^-(target+16). Default circle: center n/2, radius 1.25 (n+1)/2 for n0 = 0;
/// center (n0+n)/2, radius (n-n0+1)/2 otherwise.
inline APReal nr_residue_check(const HolomorphicProvider& f, long n, long n0, std::optional<double> contour_radius,
                               long quad_points, const PrecisionContext& ctx) {
    if (n < 0 || n0 < 0 || n0 > n) throw DomainError("nr_residue_check: need 0 <= n0 <= n");
    if (quad_points < 4) throw DomainError("nr_residue_check: need at least 4 quadrature points");
    const double center_d = 0.5 * static_cast<double>(n0 + n);
    const double radius_d =
        contour_radius.value_or(n0 == 0 ? 1.25 * (n + 1) / 2.0 : 0.5 * static_cast<double>(n - n0 + 1));
    const double lo = center_d - radius_d, hi = center_d + radius_d;
    if (!(lo < n0 && hi > n) || (n0 > 0 && lo <= n0 - 1))
        throw DomainError("nr_residue_check: contour must enclose exactly {n0..n}");

    const int bits = ctx.working_bits() + static_cast<int>(n) + 32;
    const APReal center(Rational(n0 + n, 2), bits);
    const APReal radius(radius_d, bits);
    const APReal pi2 = const_pi(bits) * 2L;
    Integer n_fact;
    mpz_fac_ui(n_fact.get_mpz_t(), static_cast<unsigned long>(n));
    const APReal nf(n_fact, bits);

    // g(s) (s - c) at node j of `count`; odd nodes are added on each doubling.
    auto sample = [&](long j, long count) {
        const APComplex e = expi(pi2 * APReal(Rational(j, count), bits));
        const APComplex z = e * radius;
        APComplex s = z;
        s.re += center;
        APComplex denom = s;
        for (long i = 1; i <= n; ++i) {
            APComplex t = s;
            t.re -= i;
            denom *= t;
        }
        return f(s, bits) * z / denom;
    };

    long count = quad_points;
    APComplex acc(bits);
    for (long j = 0; j < count; ++j) acc += sample(j, count);
    APReal previous = acc.re * nf / count;
    const APReal tol = pow2(-ctx.target_bits() - 16, bits);
    for (int round = 0; round < 24; ++round) {
        for (long j = 0; j < count; ++j) acc += sample(2 * j + 1, 2 * count);
        count *= 2;
        APReal estimate = acc.re * nf / count;
        const APReal change = abs(estimate - previous);
        if (change <= tol * max(APReal(1L, bits), abs(estimate))) return n % 2 == 0 ? estimate : -estimate;
        previous = std::move(estimate);
    }
    throw ConvergenceError("nr_residue_check: trapezoid rule did not converge");
}

}  // namespace saddleli::nrsum
