#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "saddleli/ap.hpp"
#include "saddleli/precision.hpp"
#include "saddleli/specfun/bernoulli.hpp"

namespace saddleli::specfun {

inline constexpr unsigned stieltjes_max_index = 64;

namespace detail {

// gamma_k(a) for k = 0..K at absolute accuracy ~2^-bits:
//   gamma_k(a) = sum_{n<N} g(n) - L^{k+1}/(k+1) + g(N)/2 - sum_j B_2j/(2j)! g^{(2j-1)}(N),
// g(x) = log(x+a)^k / (x+a), L = log(N+a). Derivatives are x^{-r-1} P_r(log x)
// with integer polynomials P_{r+1}[i] = -(r+1) P_r[i] + (i+1) P_r[i+1].
inline std::vector<APReal> stieltjes_batch(unsigned max_k, const Rational& a, int bits, int escalations) {
    long n_terms = static_cast<long>(std::ceil(0.12 * (bits + 4.0 * max_k))) + 10;
    for (int attempt = 0; attempt <= escalations; ++attempt, n_terms *= 2) {
        const int guard = static_cast<int>((max_k + 1) * std::ceil(std::log2(std::log(n_terms + 2.0) + 1.0))) + 32;
        const int w = bits + guard;
        const APReal a_w(a, w);

        std::vector<APReal> sums(max_k + 1, APReal(w));
        APReal x(a_w);
        for (long n = 0; n < n_terms; ++n, x += 1L) {
            const APReal lg = log(x);
            APReal term = APReal(1L, w) / x;
            for (unsigned k = 0; k <= max_k; ++k) {
                sums[k] += term;
                term *= lg;
            }
        }
        const APReal lx = log(x);
        const APReal inv_x = APReal(1L, w) / x;
        const APReal inv_x2 = inv_x * inv_x;
        const APReal tol = pow2(-bits - 8, w);

        std::vector<APReal> out;
        out.reserve(max_k + 1);
        bool ok = true;
        for (unsigned k = 0; k <= max_k && ok; ++k) {
            APReal lk = pow(lx, static_cast<long>(k));
            APReal value = sums[k] - lk * lx / static_cast<long>(k + 1) + lk * inv_x / 2L;

            std::vector<Integer> poly(k + 2, Integer(0));  // P_r, padded
            poly[k] = 1;
            APReal x_pow = inv_x;  // x^{-r-1}
            Integer fact = 1;      // (2j)!
            APReal previous(w);
            bool converged = false;
            for (unsigned r = 0;; ++r) {
                for (unsigned i = 0; i <= k; ++i) poly[i] = -static_cast<long>(r + 1) * poly[i] + (i + 1) * poly[i + 1];
                x_pow *= inv_x;
                if (r % 2 != 0) continue;
                // poly now holds P_{r+1}, r+1 = 2j - 1.
                const unsigned j = r / 2 + 1;
                fact *= (2 * j - 1) * 2 * j;
                APReal horner(w);
                for (unsigned i = k + 1; i-- > 0;) {
                    horner *= lx;
                    horner += APReal(poly[i], w);
                }
                APReal term = horner * x_pow * APReal(bernoulli(2 * j), w);
                term /= fact;
                const APReal size = abs(term);
                if (size < tol) {
                    converged = true;
                    break;
                }
                if (j > 3 && size > previous) break;
                value -= term;
                previous = size;
            }
            if (!converged) ok = false;
            out.push_back(value.rounded(bits));
        }
        if (ok) return out;
    }
    throw ConvergenceError("stieltjes: Euler-Maclaurin corrections did not converge");
}

class StieltjesMemo {
public:
    static StieltjesMemo& instance() {
        static StieltjesMemo memo;
        return memo;
    }

    std::shared_ptr<const std::vector<APReal>> table(const Rational& a, int bits, int escalations) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(a.get_str(), bits);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        auto values = std::make_shared<const std::vector<APReal>>(
            stieltjes_batch(stieltjes_max_index, a, bits, escalations));
        cache_.emplace(std::move(key), values);
        return values;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::string, int>, std::shared_ptr<const std::vector<APReal>>> cache_;
};

}  // namespace detail

/// Generalized Stieltjes constant gamma_k(a), the Laurent coefficients in
/// zeta(s, a) = 1/(s-1) + sum_k (-1)^k gamma_k(a) (s-1)^k / k!.
/// Memoized per (a, working precision).
inline APReal stieltjes(unsigned k, const Rational& a, const PrecisionContext& ctx) {
    if (k > stieltjes_max_index) throw DomainError("stieltjes: index exceeds configured maximum");
    if (a <= 0) throw DomainError("stieltjes: shift must be positive");
    return (*detail::StieltjesMemo::instance().table(a, ctx.working_bits(), ctx.max_escalations()))[k];
}

/// Stieltjes constant gamma_k = gamma_k(1); gamma_0 is Euler's constant.
inline APReal stieltjes(unsigned k, const PrecisionContext& ctx) { return stieltjes(k, Rational(1), ctx); }

}  // namespace saddleli::specfun
