#pragma once

#include <gtest/gtest.h>

#include <string>

#include "saddleli/ap.hpp"

namespace saddleli::testing {

/// |a - b| <= 2^log2_tol
inline ::testing::AssertionResult near_abs(const APReal& a, const APReal& b, long log2_tol) {
    const APReal diff = abs(a - b);
    if (diff <= pow2(log2_tol, 64)) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << a.to_string(30) << " vs " << b.to_string(30) << " differ by "
                                         << diff.to_string(6) << " > 2^" << log2_tol;
}

inline ::testing::AssertionResult near_abs(const APReal& a, const APReal& b, double tol) {
    const APReal diff = abs(a - b);
    if (diff.to_double() <= tol) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << a.to_string(30) << " vs " << b.to_string(30) << " differ by "
                                         << diff.to_string(6) << " > " << tol;
}

/// Parse a decimal reference value at `bits`.
inline APReal ref(const char* text, int bits = 256) { return APReal::parse(text, bits); }

}  // namespace saddleli::testing
