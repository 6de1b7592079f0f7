#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "saddleli/ap.hpp"
#include "saddleli/precision.hpp"

namespace saddleli::specfun {

/// Upper limit accepted by VonMangoldtSieve (4 bytes per entry).
inline constexpr std::uint64_t sieve_capacity = 50'000'000;

/// Exact prime-power structure of 1..X: base(n) = p if n = p^k (k >= 1),
/// otherwise 0. Lambda(n) = log base(n) is rendered on demand at any precision.
class VonMangoldtSieve {
public:
    explicit VonMangoldtSieve(std::uint64_t limit) : limit_(limit) {
        if (limit < 2) throw DomainError("von_mangoldt_sieve: limit must be >= 2");
        if (limit > sieve_capacity) throw CapacityError("von_mangoldt_sieve: limit above configured capacity");
        base_.assign(limit + 1, 0);
        std::vector<bool> composite(limit + 1, false);
        for (std::uint64_t p = 2; p <= limit; ++p) {
            if (composite[p]) continue;
            for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
            for (std::uint64_t pk = p; pk <= limit; pk *= p) {
                base_[pk] = static_cast<std::uint32_t>(p);
                if (pk > limit / p) break;
            }
        }
    }

    std::uint64_t limit() const noexcept { return limit_; }

    /// p if n = p^k, else 0.
    std::uint32_t prime_base(std::uint64_t n) const {
        if (n > limit_) throw CapacityError("von_mangoldt_sieve: index beyond sieved range");
        return base_[n];
    }
    bool is_prime_power(std::uint64_t n) const { return prime_base(n) != 0; }

    /// Lambda(n) at the given precision.
    APReal lambda(std::uint64_t n, int bits) const {
        const std::uint32_t p = prime_base(n);
        return p == 0 ? APReal(bits) : log(APReal(static_cast<long>(p), bits));
    }

    /// Chebyshev psi(x) = sum_{n <= x} Lambda(n).
    APReal chebyshev_psi(std::uint64_t x, int bits) const {
        APReal total(bits);
        for (std::uint64_t n = 2; n <= x; ++n)
            if (base_[n] != 0) total += log(APReal(static_cast<long>(base_[n]), bits));
        return total;
    }

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> base_;
};

/// Builds the table n -> Lambda(n) structure for n <= limit.
inline VonMangoldtSieve von_mangoldt_sieve(std::uint64_t limit) { return VonMangoldtSieve(limit); }

/// Process-wide sieve covering at least `limit`, built once and shared.
inline std::shared_ptr<const VonMangoldtSieve> shared_sieve(std::uint64_t limit) {
    static std::mutex mutex;
    static std::shared_ptr<const VonMangoldtSieve> sieve;
    std::lock_guard lock(mutex);
    if (!sieve || sieve->limit() < limit) sieve = std::make_shared<const VonMangoldtSieve>(std::max<std::uint64_t>(limit, 2));
    return sieve;
}

}  // namespace saddleli::specfun
