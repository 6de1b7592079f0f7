#pragma once

// Arbitrary-precision real and complex scalars backed by MPFR, plus exact
// rationals and integers from GMP (gmpxx).

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <string>
#include <string_view>
#include <utility>

#include "saddleli/errors.hpp"

namespace saddleli {

using Rational = mpq_class;
using Integer = mpz_class;

/// MPFR value with value semantics. Each value carries its own precision;
/// binary operators produce a result at the larger operand precision and are
/// correctly rounded (round-to-nearest-even).
class APReal {
public:
    explicit APReal(int bits = 64) {
        mpfr_init2(v_, clamp_bits(bits));
        mpfr_set_zero(v_, 1);
    }
    APReal(long value, int bits) : APReal(bits) { mpfr_set_si(v_, value, MPFR_RNDN); }
    APReal(int value, int bits) : APReal(static_cast<long>(value), bits) {}
    APReal(double value, int bits) : APReal(bits) { mpfr_set_d(v_, value, MPFR_RNDN); }
    APReal(const Rational& q, int bits) : APReal(bits) { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
    APReal(const Integer& z, int bits) : APReal(bits) { mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
    APReal(const APReal& other, int bits) : APReal(bits) { mpfr_set(v_, other.v_, MPFR_RNDN); }

    /// Parses a decimal literal ("14.1347", "-2.5e-3", "nan" rejected).
    static APReal parse(std::string_view text, int bits) {
        APReal r(bits);
        const std::string s(text);
        if (s.empty()) throw DataError("empty decimal literal");
        char* end = nullptr;
        mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
        if (end == s.c_str() || *end != '\0') throw DataError("not a decimal number: '" + s + "'");
        if (!mpfr_number_p(r.v_)) throw DataError("not a finite number: '" + s + "'");
        return r;
    }

    APReal(const APReal& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    APReal(APReal&& other) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, other.v_);
    }
    APReal& operator=(const APReal& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }
    APReal& operator=(APReal&& other) noexcept {
        mpfr_swap(v_, other.v_);
        return *this;
    }
    ~APReal() { mpfr_clear(v_); }

    int bits() const noexcept { return static_cast<int>(mpfr_get_prec(v_)); }
    mpfr_ptr raw() noexcept { return v_; }
    mpfr_srcptr raw() const noexcept { return v_; }

    APReal rounded(int bits) const { return APReal(*this, bits); }

    bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
    bool is_integer() const noexcept { return mpfr_integer_p(v_) != 0; }
    int sign() const noexcept { return mpfr_sgn(v_); }
    double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const noexcept { return mpfr_get_si(v_, MPFR_RNDN); }
    /// Binary exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
    long exponent() const noexcept { return is_zero() ? -(1L << 40) : mpfr_get_exp(v_); }

    /// Decimal rendering with `digits` significant digits, round-half-even,
    /// locale independent: "d.ddde+XX" (or "0").
    std::string to_string(int digits) const {
        if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
        if (is_zero()) return "0";
        digits = std::max(digits, 1);
        mpfr_exp_t e = 0;
        char* buf = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
        std::string mant(buf);
        mpfr_free_str(buf);
        std::string out;
        if (mant[0] == '-') {
            out.push_back('-');
            mant.erase(0, 1);
        }
        out.push_back(mant[0]);
        if (mant.size() > 1) {
            out.push_back('.');
            out.append(mant, 1, std::string::npos);
        }
        const long exp10 = static_cast<long>(e) - 1;
        char tail[32];
        std::snprintf(tail, sizeof tail, "e%c%02ld", exp10 < 0 ? '-' : '+', exp10 < 0 ? -exp10 : exp10);
        return out + tail;
    }

    APReal& operator+=(const APReal& o) { return widen(o), mpfr_add(v_, v_, o.v_, MPFR_RNDN), *this; }
    APReal& operator-=(const APReal& o) { return widen(o), mpfr_sub(v_, v_, o.v_, MPFR_RNDN), *this; }
    APReal& operator*=(const APReal& o) { return widen(o), mpfr_mul(v_, v_, o.v_, MPFR_RNDN), *this; }
    APReal& operator/=(const APReal& o) { return widen(o), mpfr_div(v_, v_, o.v_, MPFR_RNDN), *this; }
    APReal& operator+=(long o) { return mpfr_add_si(v_, v_, o, MPFR_RNDN), *this; }
    APReal& operator-=(long o) { return mpfr_sub_si(v_, v_, o, MPFR_RNDN), *this; }
    APReal& operator*=(long o) { return mpfr_mul_si(v_, v_, o, MPFR_RNDN), *this; }
    APReal& operator/=(long o) { return mpfr_div_si(v_, v_, o, MPFR_RNDN), *this; }
    APReal& operator*=(const Integer& z) { return mpfr_mul_z(v_, v_, z.get_mpz_t(), MPFR_RNDN), *this; }
    APReal& operator/=(const Integer& z) { return mpfr_div_z(v_, v_, z.get_mpz_t(), MPFR_RNDN), *this; }
    APReal& operator*=(const Rational& q) { return mpfr_mul_q(v_, v_, q.get_mpq_t(), MPFR_RNDN), *this; }

    APReal operator-() const {
        APReal r(*this);
        mpfr_neg(r.v_, r.v_, MPFR_RNDN);
        return r;
    }

    friend APReal operator+(APReal a, const APReal& b) { return a += b; }
    friend APReal operator-(APReal a, const APReal& b) { return a -= b; }
    friend APReal operator*(APReal a, const APReal& b) { return a *= b; }
    friend APReal operator/(APReal a, const APReal& b) { return a /= b; }
    friend APReal operator+(APReal a, long b) { return a += b; }
    friend APReal operator-(APReal a, long b) { return a -= b; }
    friend APReal operator*(APReal a, long b) { return a *= b; }
    friend APReal operator/(APReal a, long b) { return a /= b; }
    friend APReal operator*(long b, APReal a) { return a *= b; }

    friend bool operator==(const APReal& a, const APReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator<(const APReal& a, const APReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const APReal& a, const APReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const APReal& a, const APReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const APReal& a, const APReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator<(const APReal& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const APReal& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const APReal& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const APReal& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }

    /// Bit-level identity (same precision, same value, same sign of zero).
    bool identical(const APReal& o) const {
        return bits() == o.bits() && (mpfr_equal_p(v_, o.v_) != 0 || (mpfr_nan_p(v_) && mpfr_nan_p(o.v_))) &&
               mpfr_signbit(v_) == mpfr_signbit(o.v_);
    }

private:
    static mpfr_prec_t clamp_bits(int bits) {
        return std::clamp<mpfr_prec_t>(bits, MPFR_PREC_MIN, MPFR_PREC_MAX);
    }
    void widen(const APReal& o) {
        if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
    }

    mpfr_t v_;
};

namespace detail {
template <int (*Fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)>
inline APReal unary(const APReal& x) {
    APReal r(x.bits());
    Fn(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
}  // namespace detail

inline APReal abs(const APReal& x) { return detail::unary<mpfr_abs>(x); }
inline APReal sqrt(const APReal& x) { return detail::unary<mpfr_sqrt>(x); }
inline APReal log(const APReal& x) { return detail::unary<mpfr_log>(x); }
inline APReal log1p(const APReal& x) { return detail::unary<mpfr_log1p>(x); }
inline APReal exp(const APReal& x) { return detail::unary<mpfr_exp>(x); }
inline APReal cos(const APReal& x) { return detail::unary<mpfr_cos>(x); }
inline APReal sin(const APReal& x) { return detail::unary<mpfr_sin>(x); }
inline APReal atan(const APReal& x) { return detail::unary<mpfr_atan>(x); }
inline APReal floor(const APReal& x) {
    APReal r(x.bits());
    mpfr_floor(r.raw(), x.raw());
    return r;
}

inline APReal atan2(const APReal& y, const APReal& x) {
    APReal r(std::max(x.bits(), y.bits()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline APReal pow(const APReal& x, const APReal& y) {
    APReal r(std::max(x.bits(), y.bits()));
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}
inline APReal pow(const APReal& x, long e) {
    APReal r(x.bits());
    mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}
inline APReal ldexp(const APReal& x, long e) {
    APReal r(x);
    mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
    return r;
}
/// 2^e at the given precision (exact).
inline APReal pow2(long e, int bits) { return ldexp(APReal(1L, bits), e); }
inline APReal max(const APReal& a, const APReal& b) { return a < b ? b : a; }
inline APReal min(const APReal& a, const APReal& b) { return a < b ? a : b; }

inline APReal const_pi(int bits) {
    APReal r(bits);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}
inline APReal const_euler(int bits) {
    APReal r(bits);
    mpfr_const_euler(r.raw(), MPFR_RNDN);
    return r;
}
inline APReal const_log2(int bits) {
    APReal r(bits);
    mpfr_const_log2(r.raw(), MPFR_RNDN);
    return r;
}

/// Complex value as a pair of APReal.
struct APComplex {
    APReal re;
    APReal im;

    explicit APComplex(int bits = 64) : re(bits), im(bits) {}
    APComplex(APReal r, APReal i) : re(std::move(r)), im(std::move(i)) {}
    explicit APComplex(const APReal& r) : re(r), im(r.bits()) {}

    int bits() const { return std::max(re.bits(), im.bits()); }
    bool is_real() const { return im.is_zero(); }

    APComplex& operator+=(const APComplex& o) { return re += o.re, im += o.im, *this; }
    APComplex& operator-=(const APComplex& o) { return re -= o.re, im -= o.im, *this; }
    APComplex& operator*=(const APComplex& o) {
        APReal r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    APComplex& operator/=(const APComplex& o) {
        const APReal d = o.re * o.re + o.im * o.im;
        APReal r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = std::move(r);
        return *this;
    }
    APComplex& operator*=(const APReal& s) { return re *= s, im *= s, *this; }
    APComplex& operator/=(const APReal& s) { return re /= s, im /= s, *this; }
    APComplex& operator*=(long s) { return re *= s, im *= s, *this; }
    APComplex& operator+=(const APReal& s) { return re += s, *this; }
    APComplex& operator-=(const APReal& s) { return re -= s, *this; }
    APComplex operator-() const { return {-re, -im}; }

    friend APComplex operator+(APComplex a, const APComplex& b) { return a += b; }
    friend APComplex operator-(APComplex a, const APComplex& b) { return a -= b; }
    friend APComplex operator*(APComplex a, const APComplex& b) { return a *= b; }
    friend APComplex operator/(APComplex a, const APComplex& b) { return a /= b; }
    friend APComplex operator*(APComplex a, const APReal& b) { return a *= b; }
    friend APComplex operator/(APComplex a, const APReal& b) { return a /= b; }
    friend APComplex operator+(APComplex a, const APReal& b) { return a += b; }
    friend APComplex operator-(APComplex a, const APReal& b) { return a -= b; }
};

inline APComplex conj(const APComplex& z) { return {z.re, -z.im}; }
inline APReal norm(const APComplex& z) { return z.re * z.re + z.im * z.im; }
inline APReal abs(const APComplex& z) {
    APReal r(z.bits());
    mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
    return r;
}
inline APReal arg(const APComplex& z) { return atan2(z.im, z.re); }

/// Principal logarithm; the branch cut lies on the negative real axis.
inline APComplex log(const APComplex& z) { return {log(abs(z)), arg(z)}; }

inline APComplex exp(const APComplex& z) {
    const APReal m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

/// e^{i theta}
inline APComplex expi(const APReal& theta) { return {cos(theta), sin(theta)}; }

/// Integer power by repeated squaring (exact conjugate symmetry).
inline APComplex pow(APComplex z, long e) {
    if (e < 0) {
        APComplex one(APReal(1L, z.bits()));
        return pow(one / z, -e);
    }
    APComplex acc(APReal(1L, z.bits()));
    while (e > 0) {
        if (e & 1) acc *= z;
        e >>= 1;
        if (e) z *= z;
    }
    return acc;
}

/// Exact binomial coefficient.
inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// Parses an exact rational from "p", "p/q", or a decimal literal with an
/// optional exponent ("0.5", "-1.25e-3"). The value is exact: no rounding.
inline Rational parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw DataError("empty rational literal");
    if (const auto slash = s.find('/'); slash != std::string::npos) {
        Integer num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
            throw DataError("bad rational literal '" + s + "'");
        if (den == 0) throw DataError("zero denominator in '" + s + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_point = false, seen_digit = false;
    for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
        const char c = s[pos];
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) --scale;
        } else {
            throw DataError("bad decimal literal '" + s + "'");
        }
    }
    if (!seen_digit) throw DataError("bad decimal literal '" + s + "'");
    if (pos < s.size()) {
        try {
            std::size_t used = 0;
            scale += std::stol(s.substr(pos + 1), &used);
            if (used != s.size() - pos - 1) throw DataError("bad exponent in '" + s + "'");
        } catch (const std::logic_error&) {
            throw DataError("bad exponent in '" + s + "'");
        }
    }
    Integer mant(digits, 10);
    if (negative) mant = -mant;
    Integer p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational q = scale < 0 ? Rational(mant, p10) : Rational(mant * p10);
    q.canonicalize();
    return q;
}

/// Canonical text of an exact rational ("3", "-1/2").
inline std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace saddleli
