#include <gtest/gtest.h>

#include <sstream>

#include "saddleli/selberg.hpp"
#include "test_support.hpp"

using namespace saddleli;
using namespace saddleli::selberg;
using saddleli::testing::near_abs;

namespace {
const PrecisionContext ctx256(256);
}

TEST(Degree, PaperExamples) {
    EXPECT_EQ(degree(preset("riemann-zeta")), 1);
    EXPECT_EQ(degree(preset("hecke(11)")), 2);
    EXPECT_EQ(degree(preset("gl(3)-toy")), 3);
    const SelbergDescriptor two("two", 0, {}, {{Rational(1, 2), 0}, {Rational(1, 2), 0}}, Coefficients::none);
    EXPECT_EQ(degree(two), 2);
}

TEST(LambdaInvariant, PaperExamples) {
    EXPECT_EQ(lambda_invariant_exact(preset("riemann-zeta")), Rational(1, 2));
    for (long n = 1; n <= 6; ++n) {
        Rational want(1, 1L << n);
        EXPECT_EQ(lambda_invariant_exact(preset("gl(" + std::to_string(n) + ")-toy")), want) << n;
    }
    const SelbergDescriptor ones("ones", 0, {}, {{1, 0}, {1, Rational(3, 2)}}, Coefficients::none);
    EXPECT_EQ(lambda_invariant_exact(ones), 1);
    EXPECT_EQ(lambda_invariant(ones, ctx256), APReal(1L, 64));
    // 2 lambda not integral: (1/3)^(2/3)
    const SelbergDescriptor third("third", 0, {}, {{Rational(1, 3), 0}}, Coefficients::none);
    EXPECT_FALSE(lambda_invariant_exact(third).has_value());
    const APReal want = pow(APReal(Rational(1, 3), 320), APReal(Rational(2, 3), 320));
    EXPECT_TRUE(near_abs(lambda_invariant(third, ctx256), want, -250L));
}

TEST(ScaleFactor, PresetValues) {
    const auto zeta = preset("riemann-zeta").scale();
    EXPECT_EQ(zeta.radicand, 1);
    EXPECT_EQ(zeta.pi_exponent, Rational(-1, 2));
    const int w = 320;
    const APReal pi = const_pi(w);
    EXPECT_TRUE(near_abs(zeta.value(w), APReal(1L, w) / sqrt(pi), -300L));
    // Q_Hecke = sqrt(N) / (2 pi), symbolically
    const auto hecke = preset("hecke(11)").scale();
    EXPECT_EQ(hecke.radicand, Rational(11, 4));
    EXPECT_EQ(hecke.pi_exponent, -1);
    EXPECT_TRUE(near_abs(hecke.value(w), sqrt(APReal(11L, w)) / (pi * 2L), -300L));
    // dirichlet-chi4: (4/pi)^{1/2}
    EXPECT_TRUE(near_abs(preset("dirichlet-chi4").scale().value(w), sqrt(APReal(4L, w) / pi), -300L));
}

TEST(CConstant, SpecExamples) {
    const int w = ctx256.working_bits();
    const APReal g = const_euler(w), pi = const_pi(w);
    const APReal zeta = c_constant(preset("riemann-zeta"), ctx256);
    EXPECT_TRUE(near_abs(zeta, (g - 1L) / 2L - log(pi * 2L) / 2L, -250L));
    EXPECT_NEAR(zeta.to_double(), -1.13033070, 5e-9);
    EXPECT_TRUE(near_abs(c_constant(preset("hecke(1)"), ctx256), g - 1L - log(pi * 2L), -250L));
    // lambda Q^2 = 1: lambda_j = 1, Q = 1
    const SelbergDescriptor unit("unit", 0, {}, {{1, 0}, {1, 1}}, Coefficients::none);
    EXPECT_TRUE(near_abs(c_constant(unit, ctx256), (g - 1L) * 2L, -250L));
}

TEST(CConstant, IndependentEvaluationAtTwoPrecisions) {
    // c = (d/2)(gamma - 1) + (1/2)(sum 2 lambda_j log lambda_j + log radicand) + pi_exponent log pi
    const auto f = preset("hecke(37)");
    for (int bits : {256, 512}) {
        const PrecisionContext ctx(bits);
        const int w = bits + 64;
        const APReal want = (const_euler(w) - 1L) + log(APReal(Rational(37, 4), w)) / 2L - log(const_pi(w));
        EXPECT_TRUE(near_abs(c_constant(f, ctx), want, -240L)) << bits;
    }
    const APReal a = c_constant(f, PrecisionContext(256)), b = c_constant(f, PrecisionContext(512));
    EXPECT_TRUE(near_abs(a, b, -240L));
}

TEST(Preset, FieldsAndErrors) {
    EXPECT_EQ(preset("riemann-zeta").pole_order(), 1u);
    EXPECT_EQ(preset("dirichlet-chi4").pole_order(), 0u);
    EXPECT_EQ(preset("dirichlet-chi4").gamma_factors().front(), (GammaFactor{Rational(1, 2), Rational(1, 2)}));
    EXPECT_EQ(preset("hecke(5)").gamma_factors().front(), (GammaFactor{1, Rational(1, 2)}));
    EXPECT_FALSE(preset("gl(4)-toy").has_arithmetic_data());
    EXPECT_FALSE(preset("hecke(5)").has_arithmetic_data());
    EXPECT_TRUE(preset("riemann-zeta").has_arithmetic_data());
    for (const char* bad : {"zeta", "hecke()", "hecke(0)", "hecke(x)", "gl(3)", "gl(-1)-toy", ""})
        EXPECT_THROW(preset(bad), UnsupportedError) << bad;
}

TEST(Descriptor, Validation) {
    EXPECT_THROW(SelbergDescriptor("x", 0, {}, {}, Coefficients::none), DomainError);
    EXPECT_THROW(SelbergDescriptor("x", 0, {}, {{0, 0}}, Coefficients::none), DomainError);
    EXPECT_THROW(SelbergDescriptor("x", 0, {}, {{1, -1}}, Coefficients::none), DomainError);
    EXPECT_THROW(SelbergDescriptor("x", 0, {0, 0}, {{1, 0}}, Coefficients::none), DomainError);
    EXPECT_THROW(SelbergDescriptor("x", 0, {}, {{1, 0}}, Coefficients::none, "0.5", "0.5"), DomainError);
    EXPECT_NO_THROW(SelbergDescriptor("x", 0, {}, {{1, 0}}, Coefficients::none, "0.6", "-0.8"));
}

TEST(Serialization, PresetsRoundTripBitExactly) {
    for (const char* name : {"riemann-zeta", "dirichlet-chi4", "hecke(11)", "gl(3)-toy"}) {
        const auto f = preset(name);
        const std::string text = serialize(f);
        const auto g = deserialize(text);
        EXPECT_EQ(f, g) << name;
        EXPECT_EQ(serialize(g), text) << name;
        EXPECT_TRUE(c_constant(f, ctx256).identical(c_constant(g, ctx256))) << name;
    }
}

TEST(Serialization, AcceptsDecimalsAndRejectsComplexMu) {
    const auto f = deserialize(R"({"name": "d", "pole_order": 0, "scale": {"radicand": "2.25", "pi_exponent": "-1"},
        "gamma_factors": [{"lambda": "0.5", "mu": "0.25"}, {"lambda": 1, "mu": "0"}], "coefficients": "none"})");
    EXPECT_EQ(f.scale().radicand, Rational(9, 4));
    EXPECT_EQ(f.gamma_factors()[0].mu, Rational(1, 4));
    EXPECT_EQ(degree(f), 3);
    EXPECT_THROW(deserialize(R"({"gamma_factors": [{"lambda": "1", "mu": "0.5+2i"}]})"), UnsupportedError);
    EXPECT_THROW(deserialize(R"({"gamma_factors": [{"lambda": "1", "mu": {"re": "0", "im": "1"}}]})"),
                 UnsupportedError);
    EXPECT_THROW(deserialize(R"({"gamma_factors": [{"lambda": "1"}]})"), DataError);
    EXPECT_THROW(deserialize("{not json"), DataError);
    EXPECT_THROW(deserialize(R"({"gamma_factors": [{"lambda": "1", "mu": "0"}], "coefficients": "x"})"), DataError);
}

TEST(Coefficients, ZetaAndChi4) {
    const CoefficientProvider zeta(preset("riemann-zeta"), 1000);
    EXPECT_EQ(zeta(8, 128), log(APReal(2L, 128)));
    EXPECT_TRUE(zeta(6, 128).is_zero());
    const CoefficientProvider chi(preset("dirichlet-chi4"), 1000);
    EXPECT_EQ(chi(5, 128), log(APReal(5L, 128)));
    EXPECT_EQ(chi(3, 128), -log(APReal(3L, 128)));
    EXPECT_EQ(chi(9, 128), log(APReal(3L, 128)));
    EXPECT_TRUE(chi(8, 128).is_zero());
    EXPECT_THROW(CoefficientProvider(preset("gl(3)-toy"), 100), UnsupportedError);
    EXPECT_THROW(CoefficientProvider(preset("hecke(11)"), 100), UnsupportedError);
}

TEST(ZeroTableLoader, SpecExamples) {
    std::istringstream two("14.134725141734693\n21.022039638771555\n");
    const auto t = load_zero_table(two, 128, "two");
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t.ordinates()[0], APReal::parse("14.134725141734693", 128));
    EXPECT_DOUBLE_EQ(t.max_abs_error(), 0.5e-15);

    std::istringstream empty("");
    EXPECT_TRUE(load_zero_table(empty, 128, "empty").empty());

    std::istringstream disordered("21.02\n14.13\n");
    try {
        load_zero_table(disordered, 128, "bad");
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_EQ(e.line(), 2);
    }
}

TEST(ZeroTableLoader, CommentsAndParseErrors) {
    std::istringstream with_comments("# header\n\n  14.1347  # first\n21.0220\n");
    EXPECT_EQ(load_zero_table(with_comments, 96, "c").size(), 2u);
    std::istringstream garbage("14.13\n21.x\n");
    try {
        load_zero_table(garbage, 96, "g");
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_EQ(e.line(), 2);
    }
    std::istringstream negative("-3\n");
    EXPECT_THROW(load_zero_table(negative, 96, "n"), DataError);
    std::istringstream duplicate("14.13\n14.13\n");
    EXPECT_THROW(load_zero_table(duplicate, 96, "d"), DataError);
    EXPECT_THROW(load_zero_table("/nonexistent/zeros.txt", 96), DataError);
}

TEST(ZeroTableLoader, VendoredTable) {
    const auto t = load_zero_table(default_zeta_zero_table_path(), 128);
    ASSERT_GE(t.size(), 1000u);
    EXPECT_NEAR(t.ordinates()[0].to_double(), 14.134725141734693790, 1e-15);
    EXPECT_NEAR(t.ordinates()[1].to_double(), 21.022039638771554993, 1e-14);
    EXPECT_LE(t.max_abs_error(), 1e-14);
}
