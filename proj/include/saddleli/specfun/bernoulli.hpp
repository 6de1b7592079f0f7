#pragma once

#include <deque>
#include <mutex>

#include "saddleli/ap.hpp"

namespace saddleli::specfun {

namespace detail {

/// Exact B_2, B_4, ... memoized for the whole process. Storage is a deque so
/// references handed out stay valid while the table grows.
class BernoulliTable {
public:
    static BernoulliTable& instance() {
        static BernoulliTable table;
        return table;
    }

    /// B_{2j}, j >= 1.
    const Rational& even(unsigned j) {
        std::lock_guard lock(mutex_);
        if (j > values_.size()) extend(std::max<unsigned>(j, 2 * static_cast<unsigned>(values_.size())));
        return values_[j - 1];
    }

private:
    // Tangent numbers T_1..T_n by the integer recurrence of Brent and Harvey;
    // B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1)).
    void extend(unsigned n) {
        std::vector<Integer> t(n + 1);
        t[1] = 1;
        for (unsigned k = 2; k <= n; ++k) t[k] = (k - 1) * t[k - 1];
        for (unsigned k = 2; k <= n; ++k)
            for (unsigned j = k; j <= n; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
        for (unsigned k = static_cast<unsigned>(values_.size()) + 1; k <= n; ++k) {
            Integer four_k;
            mpz_ui_pow_ui(four_k.get_mpz_t(), 4, k);
            Rational b(Integer(2 * k) * t[k], four_k * (four_k - 1));
            b.canonicalize();
            if (k % 2 == 0) b = -b;
            values_.push_back(b);
        }
    }

    std::mutex mutex_;
    std::deque<Rational> values_;
};

}  // namespace detail

/// Exact Bernoulli number B_k for even k >= 2 (B_2 = 1/6, B_4 = -1/30, ...).
inline const Rational& bernoulli(unsigned k) {
    if (k < 2 || k % 2 != 0) throw DomainError("bernoulli: k must be even and >= 2");
    return detail::BernoulliTable::instance().even(k / 2);
}

}  // namespace saddleli::specfun
