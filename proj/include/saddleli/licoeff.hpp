#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "saddleli/ap.hpp"
#include "saddleli/nrsum.hpp"
#include "saddleli/precision.hpp"
#include "saddleli/selberg.hpp"
#include "saddleli/specfun.hpp"

namespace saddleli::licoeff {

using selberg::SelbergDescriptor;
using selberg::ZeroTable;

// ---------------------------------------------------------------- zero sums

/// Safety factor on the paired-term truncation estimate.
inline constexpr long tail_safety_factor = 4;

struct ZeroSumResult {
    APReal value;
    APReal tail_bound;
    std::size_t zeros_used = 0;
    bool beyond_table = false;  // requested T exceeds the last ordinate
};

namespace detail {

struct Truncation {
    std::size_t count = 0;
    APReal height;
    bool beyond_table = false;
};

inline Truncation truncation(const ZeroTable& zeros, const std::optional<APReal>& t, int bits) {
    if (t && t->sign() <= 0) throw DomainError("zero sum: truncation height T must be positive");
    if (!t && zeros.empty()) throw DataError("zero sum: empty zero table and no truncation height");
    Truncation out;
    const auto& ord = zeros.ordinates();
    if (!t) {
        out.count = ord.size();
        out.height = ord.back().rounded(bits);
        return out;
    }
    out.count = static_cast<std::size_t>(
        std::upper_bound(ord.begin(), ord.end(), *t, [](const APReal& a, const APReal& b) { return a < b; }) -
        ord.begin());
    out.beyond_table = zeros.empty() || ord.back() < *t;
    // zeros above the last tabulated ordinate are unknown: the tail starts there
    out.height = out.beyond_table && !zeros.empty() ? ord.back().rounded(bits) : t->rounded(bits);
    return out;
}

// n^2 log(T/2pi)/(2 pi T) * C_tail (log factor floored at 1), plus the effect
// of the tabulated ordinates' rounding: |d term/d gamma| <= 2|n|/gamma^2.
inline APReal tail_bound(long n, const APReal& height, double inv_gamma2_sum, double ordinate_error) {
    if (n == 0) return APReal(64);
    const APReal t = height.rounded(64);
    const APReal two_pi = const_pi(64) * 2L;
    const APReal log_factor = max(log(t / two_pi), APReal(1L, 64));
    const APReal nn(n, 64);
    APReal bound = nn * nn * log_factor / (two_pi * t) * tail_safety_factor;
    bound += APReal(2.0 * std::fabs(static_cast<double>(n)) * inv_gamma2_sum * ordinate_error, 64);
    return bound;
}

inline double inv_gamma2_sum(const ZeroTable& zeros, std::size_t count) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double g = zeros.ordinates()[i].to_double();
        s += 1.0 / (g * g);
    }
    return s;
}

}  // namespace detail

namespace detail {

inline constexpr std::size_t zero_chunk = 2048;

// sum over zeros [begin, end) of d_n = 1 - cos n phi, n = 0..n_max
inline std::vector<APReal> paired_chunk(const ZeroTable& zeros, std::size_t begin, std::size_t end, long n_max,
                                        int bits) {
    std::vector<APReal> sums(n_max + 1, APReal(bits));
    APReal d(bits), delta(bits), e(bits), step(bits);
    for (std::size_t i = begin; i < end; ++i) {
        const APReal g(zeros.ordinates()[i], bits);
        e = APReal(2L, bits) / (g * g * 4L + 1L);  // 1 - cos phi
        d = APReal(bits);
        delta = e;
        for (long n = 1; n <= n_max; ++n) {
            d += delta;  // d_n
            sums[n] += d;
            step = APReal(1L, bits) - d;
            step *= e;
            step *= 2L;
            delta += step;  // d_{n+1} - d_n
        }
    }
    return sums;
}

}  // namespace detail

/// lambda(n) for every n in `ns` from the zeros 0 < gamma <= T (T defaults to
/// the last ordinate). Each conjugate pair contributes 2(1 - cos n phi) with
/// 1 - cos phi = 2/(4 gamma^2 + 1); d_n = 1 - cos n phi is advanced by
/// differences so no step cancels. Zeros are summed in fixed chunks reduced
/// in order, so the result does not depend on `threads`.
inline std::vector<ZeroSumResult> lambda_zero_sums(const ZeroTable& zeros, const std::vector<long>& ns,
                                                   const std::optional<APReal>& t, const PrecisionContext& ctx,
                                                   unsigned threads = 1) {
    const int bits = ctx.working_bits() + 32;
    const auto trunc = detail::truncation(zeros, t, bits);
    long n_max = 0;
    for (long n : ns) n_max = std::max(n_max, n < 0 ? -n : n);

    const std::size_t chunks = (trunc.count + detail::zero_chunk - 1) / detail::zero_chunk;
    std::vector<std::vector<APReal>> partial(chunks);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c; (c = next.fetch_add(1)) < chunks;)
            partial[c] = detail::paired_chunk(zeros, c * detail::zero_chunk,
                                              std::min(trunc.count, (c + 1) * detail::zero_chunk), n_max, bits);
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < std::max(1u, threads) && i < chunks; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<APReal> sums(n_max + 1, APReal(bits));
    for (const auto& p : partial)
        for (long n = 0; n <= n_max; ++n) sums[n] += p[n];

    const double s2 = detail::inv_gamma2_sum(zeros, trunc.count);
    std::vector<ZeroSumResult> out;
    out.reserve(ns.size());
    for (long n : ns) {
        const long a = n < 0 ? -n : n;
        ZeroSumResult r;
        r.value = (sums[a] * 2L).rounded(ctx.working_bits());
        r.tail_bound = detail::tail_bound(a, trunc.height, s2, zeros.max_abs_error());
        r.zeros_used = trunc.count;
        r.beyond_table = trunc.beyond_table;
        out.push_back(std::move(r));
    }
    return out;
}

inline ZeroSumResult lambda_zero_sum(const ZeroTable& zeros, long n, const std::optional<APReal>& t,
                                     const PrecisionContext& ctx) {
    return lambda_zero_sums(zeros, {n}, t, ctx).front();
}

/// sum over rho and conj(rho) of 1 - (1 - 1/rho)^{-n} by complex powers, no
/// pairing. The imaginary part vanishes only up to rounding.
inline APComplex lambda_zero_sum_unpaired(const ZeroTable& zeros, long n, const std::optional<APReal>& t,
                                          const PrecisionContext& ctx) {
    const int bits = ctx.working_bits() + 32;
    const auto trunc = detail::truncation(zeros, t, bits);
    const APReal half(0.5, bits);
    APComplex total(bits);
    const APComplex one(APReal(1L, bits));
    for (std::size_t i = 0; i < trunc.count; ++i) {
        const APReal g(zeros.ordinates()[i], bits);
        for (const APComplex& rho : {APComplex(half, g), APComplex(half, -g)}) {
            const APComplex base = one - one / rho;
            total += one - pow(base, -n);
        }
    }
    return {total.re.rounded(ctx.working_bits()), total.im.rounded(ctx.working_bits())};
}

// ---------------------------------------------------------------- eta constants

enum class EtaMethod { laurent_series, direct_limit };

inline std::string to_string(EtaMethod m) {
    return m == EtaMethod::laurent_series ? "laurent-series" : "direct-limit";
}

inline EtaMethod eta_method_from_string(const std::string& s) {
    if (s == "laurent-series") return EtaMethod::laurent_series;
    if (s == "direct-limit") return EtaMethod::direct_limit;
    throw DomainError("unknown eta method '" + s + "'");
}

/// eta_F(l), l = 0..L, with -F'/F(s) = m_F/(s-1) + sum_l eta_F(l) (s-1)^l.
struct EtaTable {
    std::vector<APReal> values;
    EtaMethod method = EtaMethod::laurent_series;
    std::vector<APReal> error_estimates;

    long max_index() const noexcept { return static_cast<long>(values.size()) - 1; }
};

inline constexpr int eta_max_index = 64;

/// Cut-offs of the direct-limit evaluation.
inline const std::vector<std::uint64_t>& direct_limit_cutoffs() {
    static const std::vector<std::uint64_t> xs = {100'000, 1'000'000, 10'000'000};
    return xs;
}

namespace detail {

// -(log g)' coefficients from g = sum g_i u^i (g_0 != 0): h = g'/g, returns -h_0..-h_L.
inline std::vector<APReal> neg_log_derivative(const std::vector<APReal>& g, int max_l) {
    std::vector<APReal> h;
    h.reserve(max_l + 1);
    for (int l = 0; l <= max_l; ++l) {
        APReal v = g[l + 1] * static_cast<long>(l + 1);
        for (int i = 1; i <= l; ++i) v -= g[i] * h[l - i];
        v /= g[0];
        h.push_back(std::move(v));
    }
    for (auto& v : h) v = -v;
    return h;
}

inline PrecisionContext stieltjes_context(int bits, int escalations) {
    return PrecisionContext(bits - PrecisionContext::guard_bits, bits, escalations);
}

// zeta: g(u) = u zeta(1+u) = 1 + sum_k (-1)^k gamma_k u^{k+1}/k!
inline std::vector<APReal> eta_zeta_laurent(int max_l, int bits, int escalations) {
    const auto sctx = stieltjes_context(bits, escalations);
    std::vector<APReal> g{APReal(1L, bits)};
    Integer fact = 1;
    for (int k = 0; k <= max_l; ++k) {
        if (k > 0) fact *= k;
        APReal c = specfun::stieltjes(k, sctx);
        c /= fact;
        g.push_back(k % 2 == 0 ? c : -c);
    }
    return neg_log_derivative(g, max_l);
}

// chi_{-4}: L(s) = 4^{-s}(zeta(s,1/4) - zeta(s,3/4)) = (1/4) e^{-u log 4} D(u),
// D(u) = sum_k (-1)^k (gamma_k(1/4) - gamma_k(3/4)) u^k/k!; -L'/L = log 4 - D'/D.
inline std::vector<APReal> eta_chi4_laurent(int max_l, int bits, int escalations) {
    const auto sctx = stieltjes_context(bits, escalations);
    std::vector<APReal> d;
    Integer fact = 1;
    for (int k = 0; k <= max_l + 1; ++k) {
        if (k > 0) fact *= k;
        APReal c = specfun::stieltjes(k, Rational(1, 4), sctx) - specfun::stieltjes(k, Rational(3, 4), sctx);
        c /= fact;
        d.push_back(k % 2 == 0 ? c : -c);
    }
    auto eta = neg_log_derivative(d, max_l);
    eta[0] += log(APReal(4L, bits));
    return eta;
}

}  // namespace detail

/// eta_F(0..L). laurent-series: exact Laurent data (riemann-zeta and
/// dirichlet-chi4 providers), carried at n + target + 64 bits for n = L + 1 so
/// the binomial sum S_F can use it. direct-limit: the defining limit at
/// X = 10^5, 10^6, 10^7, extrapolated with rate X^{-1/2}.
inline EtaTable eta_constants(const SelbergDescriptor& f, int max_l, EtaMethod method, const PrecisionContext& ctx) {
    if (!f.has_arithmetic_data())
        throw UnsupportedError("eta constants: descriptor '" + f.name() + "' lacks arithmetic data");
    const bool chi4 = f.coefficients() == selberg::Coefficients::chi4;
    const int limit = chi4 ? eta_max_index - 1 : eta_max_index;
    if (max_l < 0 || max_l > limit)
        throw DomainError("eta constants: L must lie in [0, " + std::to_string(limit) + "]");

    EtaTable table;
    table.method = method;
    if (method == EtaMethod::laurent_series) {
        const int bits = ctx.for_alternating_sum(max_l + 1).working_bits() + 32;
        table.values = chi4 ? detail::eta_chi4_laurent(max_l, bits, ctx.max_escalations())
                            : detail::eta_zeta_laurent(max_l, bits, ctx.max_escalations());
        // Stieltjes inputs good to 2^-(bits-64); each recursion step at most doubles the error
        for (int l = 0; l <= max_l; ++l)
            table.error_estimates.push_back(max(abs(table.values[l]).rounded(64), APReal(1L, 64)) *
                                            pow2(-(bits - PrecisionContext::guard_bits) + l + 8, 64));
        return table;
    }

    const int bits = 128;
    const auto& xs = direct_limit_cutoffs();
    const selberg::CoefficientProvider lambda_f(f, xs.back());
    const long m = f.pole_order();
    // partial[c][l] = sum_{k <= X_c} Lambda_F(k)/k (log k)^l
    std::vector<std::vector<APReal>> partial(xs.size(), std::vector<APReal>(max_l + 1, APReal(bits)));
    std::vector<APReal> running(max_l + 1, APReal(bits));
    std::size_t c = 0;
    for (std::uint64_t k = 2; k <= xs.back(); ++k) {
        if (const long p = lambda_f.signed_base(k); p != 0) {
            const APReal lk = log(APReal(static_cast<long>(k), bits));
            APReal term = log(APReal(p < 0 ? -p : p, bits)) / static_cast<long>(k);
            if (p < 0) term = -term;
            for (int l = 0; l <= max_l; ++l) {
                running[l] += term;
                term *= lk;
            }
        }
        while (c < xs.size() && k == xs[c]) partial[c++] = running;
    }
    const APReal rate = sqrt(APReal(10L, bits)) - 1L;
    Integer fact = 1;
    for (int l = 0; l <= max_l; ++l) {
        if (l > 0) fact *= l;
        std::vector<APReal> v;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const APReal lx = log(APReal(static_cast<long>(xs[i]), bits));
            v.push_back(partial[i][l] - pow(lx, l + 1) * m / static_cast<long>(l + 1));
        }
        const APReal extrapolated = v[2] + (v[2] - v[1]) / rate;
        APReal err = abs(extrapolated - v[2]) + abs(v[2] - v[1]) + abs(v[1] - v[0]);
        APReal value = extrapolated;
        value /= fact;
        err /= fact;
        if (l % 2 != 0) value = -value;
        table.values.push_back(std::move(value));
        table.error_estimates.push_back(err.rounded(64));
    }
    return table;
}

// ---------------------------------------------------------------- the four blocks

struct BoundedValue {
    APReal value;
    APReal error_bound;
};

/// S_F(n) = -sum_{l=1}^{n} C(n,l) eta_F(l-1), with the eta error propagated.
inline BoundedValue s_f_detailed(long n, const EtaTable& eta, const PrecisionContext& ctx) {
    if (n < 1) throw DomainError("S_F: n must be >= 1");
    if (n - 1 > eta.max_index())
        throw CapacityError("S_F: eta table covers l <= " + std::to_string(eta.max_index()) + ", need " +
                            std::to_string(n - 1));
    const nrsum::SequenceProvider seq = [&eta](long l, int bits) {
        APReal v = eta.values[l - 1].rounded(bits);
        return l % 2 == 0 ? -v : v;  // (-1)^{l+1} eta(l-1)
    };
    auto r = nrsum::alt_binomial_sum_detailed(seq, n, 1, ctx);
    APReal propagated(64);
    for (long l = 1; l <= n; ++l) propagated += APReal(binomial(n, l), 64) * eta.error_estimates[l - 1];
    return {std::move(r.value), r.error_bound + propagated};
}

inline APReal s_f(const SelbergDescriptor&, long n, const EtaTable& eta, const PrecisionContext& ctx) {
    return s_f_detailed(n, eta, ctx).value;
}

/// n sum_j lambda_j (psi(lambda_j + mu_j) + gamma)
inline APReal archimedean_term(const SelbergDescriptor& f, long n, const PrecisionContext& ctx) {
    const int w = ctx.working_bits();
    const APReal g = const_euler(w);
    APReal total(w);
    for (const auto& gf : f.gamma_factors()) {
        const Rational z = gf.lambda + gf.mu;
        total += APReal(gf.lambda, w) * (specfun::digamma(APReal(z, w), ctx) + g);
    }
    return total * n;
}

/// The same block from the raw series -1/z + sum_{l<=terms} z/(l(l+z)); the
/// truncation error is below z/terms per factor.
inline APReal archimedean_series(const SelbergDescriptor& f, long n, long terms, int bits) {
    APReal total(bits);
    for (const auto& gf : f.gamma_factors()) {
        const APReal z(Rational(gf.lambda + gf.mu), bits);
        APReal s = -(APReal(1L, bits) / z);
        for (long l = 1; l <= terms; ++l) s += z / (APReal(l, bits) * (z + l));
        total += APReal(gf.lambda, bits) * s;
    }
    return total * n;
}

enum class IjPath { direct, closed_form };

inline std::string to_string(IjPath p) { return p == IjPath::direct ? "direct" : "closed-form"; }

struct IjResult {
    APReal value;
    APReal error_bound;
    IjPath path = IjPath::direct;
};

inline constexpr long default_direct_crossover = 512;

/// (m, k) = (1 + mu_j/lambda_j, 1/lambda_j) for factor j (1-based).
inline std::pair<Rational, Rational> ij_parameters(const SelbergDescriptor& f, std::size_t j) {
    if (j < 1 || j > f.gamma_factors().size()) throw DomainError("I_j: factor index out of range");
    const auto& gf = f.gamma_factors()[j - 1];
    Rational m = 1 + gf.mu / gf.lambda, k = 1 / gf.lambda;
    m.canonicalize();
    k.canonicalize();
    return {m, k};
}

/// I_j(n) = H_n(1 + mu_j/lambda_j, 1/lambda_j): direct binomial sum up to the
/// crossover, main terms + a_n above it (bounded by 4 envelopes).
inline IjResult ij_term(const SelbergDescriptor& f, std::size_t j, long n, const PrecisionContext& ctx,
                        long crossover = default_direct_crossover, const nrsum::HurwitzSequence* seq = nullptr) {
    if (n < 1) throw DomainError("I_j: n must be >= 1");
    const auto [m, k] = ij_parameters(f, j);
    if (n <= crossover) {
        auto r = seq ? nrsum::hn_direct_detailed(n, *seq, ctx) : nrsum::hn_direct_detailed(n, m, k, ctx);
        return {std::move(r.value), std::move(r.error_bound), IjPath::direct};
    }
    APReal v = nrsum::hn_main_terms(n, m, k, ctx) + nrsum::an_saddle(n, m, k, ctx);
    APReal bound = nrsum::an_envelope(n, k, 64) * 4L + pow2(-ctx.target_bits(), 64) * abs(v).rounded(64);
    return {std::move(v), std::move(bound), IjPath::closed_form};
}

// ---------------------------------------------------------------- arithmetic route

struct ArithmeticResult {
    APReal value;
    APReal error_bound;
    APReal s_f;
    std::vector<IjPath> ij_paths;
};

/// 1 + gamma/2 - (1/2) log(4 pi)
inline APReal lambda1_closed_form(int bits) {
    return APReal(1L, bits) + const_euler(bits) / 2L - log(const_pi(bits) * 4L) / 2L;
}

/// lambda_F(n) = m_F + n(log Q_F - (d_F/2) gamma) + S_F(n)
///             + n sum_j lambda_j(psi(lambda_j+mu_j) + gamma) + sum_j I_j(n)
/// for n >= 1 (real mu_j, so lambda_F(-n) = lambda_F(n)). The I_j enter with
/// a plus sign: that is what produces the (d_F/2) n log n growth. Holds one
/// Hurwitz table per gamma factor so a sweep over n shares them.
class ArithmeticRoute {
public:
    ArithmeticRoute(SelbergDescriptor f, std::shared_ptr<const EtaTable> eta, const PrecisionContext& ctx,
                    long max_n, long crossover = default_direct_crossover)
        : f_(std::move(f)), eta_(std::move(eta)), ctx_(ctx), crossover_(crossover) {
        if (!f_.has_arithmetic_data())
            throw UnsupportedError("descriptor '" + f_.name() + "' lacks arithmetic data (Lambda_F)");
        if (!eta_) throw DomainError("arithmetic route: missing eta table");
        const long direct_max = std::max(2L, std::min(max_n, crossover_));
        for (std::size_t j = 1; j <= f_.gamma_factors().size(); ++j) {
            const auto [m, k] = ij_parameters(f_, j);
            seqs_.push_back(std::make_unique<nrsum::HurwitzSequence>(m, k, direct_max, ctx.max_escalations()));
        }
    }

    const SelbergDescriptor& descriptor() const noexcept { return f_; }
    const EtaTable& eta() const noexcept { return *eta_; }
    long max_n() const noexcept { return eta_->max_index() + 1; }

    /// Computes every Hurwitz table at the precision the largest n needs.
    void prime(long n_max) const {
        const int bits = ctx_.for_alternating_sum(std::min(n_max, crossover_)).working_bits();
        for (const auto& s : seqs_) s->prime(bits);
    }

    ArithmeticResult evaluate(long n) const {
        if (n < 1) throw DomainError("lambda_arithmetic: n must be >= 1");
        const int w = ctx_.working_bits();
        const APReal nn(n, w);
        ArithmeticResult r;
        APReal total(static_cast<long>(f_.pole_order()), w);
        const APReal half_degree(Rational(selberg::degree(f_) / 2), w);
        total += nn * (f_.scale().log_value(w) - half_degree * const_euler(w));
        auto sf = s_f_detailed(n, *eta_, ctx_);
        total += sf.value;
        APReal bound = sf.error_bound;
        total += archimedean_term(f_, n, ctx_);
        for (std::size_t j = 1; j <= f_.gamma_factors().size(); ++j) {
            const auto ij = ij_term(f_, j, n, ctx_, crossover_, n <= seqs_[j - 1]->max_l() ? seqs_[j - 1].get() : nullptr);
            total += ij.value;
            bound += ij.error_bound;
            r.ij_paths.push_back(ij.path);
        }
        bound += abs(total).rounded(64) * pow2(-ctx_.target_bits(), 64);
        r.value = total.rounded(w);
        r.error_bound = std::move(bound);
        r.s_f = std::move(sf.value);
        return r;
    }

private:
    SelbergDescriptor f_;
    std::shared_ptr<const EtaTable> eta_;
    PrecisionContext ctx_;
    long crossover_;
    std::vector<std::unique_ptr<nrsum::HurwitzSequence>> seqs_;
};

inline ArithmeticResult lambda_arithmetic_detailed(const SelbergDescriptor& f, long n, const EtaTable& eta,
                                                   const PrecisionContext& ctx) {
    const ArithmeticRoute route(f, std::make_shared<const EtaTable>(eta), ctx, n);
    return route.evaluate(n);
}

inline APReal lambda_arithmetic(const SelbergDescriptor& f, long n, const EtaTable& eta, const PrecisionContext& ctx) {
    return lambda_arithmetic_detailed(f, n, eta, ctx).value;
}

/// Fixes the eta sign convention: lambda_arithmetic(zeta, 1) must reproduce
/// the closed form of lambda_1. Returns the discrepancy; throws if it exceeds
/// 2^-(target - 8).
inline APReal calibrate_eta_sign(const PrecisionContext& ctx) {
    const auto zeta = selberg::preset("riemann-zeta");
    const auto eta = eta_constants(zeta, 0, EtaMethod::laurent_series, ctx);
    const APReal got = lambda_arithmetic(zeta, 1, eta, ctx);
    const APReal diff = abs(got - lambda1_closed_form(ctx.working_bits()));
    if (diff > pow2(8 - ctx.target_bits(), 64))
        throw ConvergenceError("eta sign calibration failed: lambda_1 off by " + diff.to_string(6));
    return diff;
}

// ---------------------------------------------------------------- asymptotics

/// (d_F/2) n log n + c_F n; zero at n = 0.
inline APReal lambda_asymptotic(const SelbergDescriptor& f, long n, const PrecisionContext& ctx) {
    if (n < 0) throw DomainError("lambda_asymptotic: n must be >= 0");
    const int w = ctx.working_bits();
    if (n == 0) return APReal(w);
    const APReal nn(n, w);
    return APReal(Rational(selberg::degree(f) / 2), w) * nn * log(nn) + selberg::c_constant(f, ctx) * nn;
}

// ---------------------------------------------------------------- records

struct LiRecord {
    long n = 0;
    std::optional<APReal> zero_sum;
    std::optional<APReal> zero_sum_tail_bound;
    std::optional<APReal> arithmetic;
    std::optional<APReal> arithmetic_error_bound;
    APReal asymptotic;
    std::optional<APReal> s_f;
    APReal residual_asym;        // best available lambda - asymptotic
    APReal residual_asym_bound;  // uncertainty of that best value

    /// Arithmetic if present, else the zero sum, else the asymptotic law.
    std::pair<APReal, std::optional<APReal>> best() const {
        if (arithmetic) return {*arithmetic, arithmetic_error_bound};
        if (zero_sum) return {*zero_sum, zero_sum_tail_bound};
        return {asymptotic, std::nullopt};
    }

    /// Fills residual_asym from the present fields.
    void finalize() {
        auto [value, bound] = best();
        residual_asym = value - asymptotic;
        residual_asym_bound = bound ? *bound : APReal(64);
    }
};

enum class Positivity { positive, negative, indeterminate, not_applicable };

inline std::string to_string(Positivity p) {
    switch (p) {
        case Positivity::positive: return "positive";
        case Positivity::negative: return "negative";
        case Positivity::indeterminate: return "indeterminate";
        case Positivity::not_applicable: return "n/a";
    }
    return "n/a";
}

/// positive: lambda - bound > 0; negative: lambda <= 0 and lambda + bound <= 0;
/// indeterminate otherwise. n <= 0 is outside the criterion.
inline Positivity classify(long n, const APReal& lambda, const APReal& bound) {
    if (n <= 0) return Positivity::not_applicable;
    if (lambda - bound > 0L) return Positivity::positive;
    if (lambda.sign() <= 0 && (lambda + bound).sign() <= 0) return Positivity::negative;
    return Positivity::indeterminate;
}

inline Positivity classify(const LiRecord& r) {
    auto [value, bound] = r.best();
    if (!r.arithmetic && !r.zero_sum) return r.n <= 0 ? Positivity::not_applicable : Positivity::indeterminate;
    return classify(r.n, value, bound ? *bound : APReal(64));
}

struct PositivityReport {
    std::vector<std::pair<long, Positivity>> flags;  // every n not classified positive
    std::size_t positive = 0, negative = 0, indeterminate = 0, not_applicable = 0;

    bool all_positive() const noexcept { return negative == 0 && indeterminate == 0 && positive > 0; }
};

inline PositivityReport positivity_report(const SelbergDescriptor&, const std::vector<LiRecord>& records) {
    if (records.empty()) throw DomainError("positivity_report: no records");
    PositivityReport rep;
    for (const auto& r : records) {
        const Positivity p = classify(r);
        switch (p) {
            case Positivity::positive: ++rep.positive; break;
            case Positivity::negative: ++rep.negative; break;
            case Positivity::indeterminate: ++rep.indeterminate; break;
            case Positivity::not_applicable: ++rep.not_applicable; break;
        }
        if (p != Positivity::positive) rep.flags.emplace_back(r.n, p);
    }
    return rep;
}

}  // namespace saddleli::licoeff
