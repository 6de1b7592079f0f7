#pragma once

#include <algorithm>
#include <string>

#include "saddleli/errors.hpp"

namespace saddleli {

/// Working precision plus escalation policy, threaded explicitly through every
/// numeric operation. There is no global precision anywhere in the library.
///
/// `target_bits` is the accuracy promised to the caller, `working_bits` the
/// precision intermediate quantities are carried at. The invariant
/// working_bits >= target_bits + guard_bits always holds.
class PrecisionContext {
public:
    static constexpr int guard_bits = 64;

    explicit PrecisionContext(int target_bits, int max_escalations = 3)
        : PrecisionContext(target_bits, target_bits + guard_bits, max_escalations) {}

    PrecisionContext(int target_bits, int working_bits, int max_escalations)
        : target_(target_bits), working_(working_bits), escalations_(max_escalations) {
        if (target_bits <= 0) throw DomainError("PrecisionContext: target_bits must be positive");
        if (working_bits < target_bits + guard_bits)
            throw DomainError("PrecisionContext: working_bits must be >= target_bits + " +
                              std::to_string(guard_bits));
        if (max_escalations < 0) throw DomainError("PrecisionContext: negative escalation budget");
    }

    int target_bits() const noexcept { return target_; }
    int working_bits() const noexcept { return working_; }
    int max_escalations() const noexcept { return escalations_; }

    /// Same target, more working bits (never fewer than the invariant allows).
    PrecisionContext with_working_bits(int bits) const {
        return {target_, std::max(bits, target_ + guard_bits), escalations_};
    }

    /// Context whose *target* is `bits`; used when a caller needs a
    /// sub-computation delivered at a given precision.
    PrecisionContext delivering(int bits) const {
        return PrecisionContext(std::max(bits, 1), escalations_);
    }

    /// One escalation step: working precision grows by half (at least 64 bits).
    PrecisionContext escalated() const {
        return {target_, working_ + std::max(guard_bits, working_ / 2), escalations_};
    }

    /// Alternating binomial sums of length n lose up to n bits to cancellation.
    PrecisionContext for_alternating_sum(long n) const {
        const long need = std::max<long>(n, 0) + target_ + guard_bits;
        return with_working_bits(static_cast<int>(std::max<long>(need, working_)));
    }

    friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

private:
    int target_;
    int working_;
    int escalations_;
};

}  // namespace saddleli
