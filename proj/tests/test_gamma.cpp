#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cosfunk/errors.hpp"
#include "cosfunk/gamma.hpp"

// Calls are qualified: an unqualified gamma(double) binds to the C library's
// log-gamma.

using namespace cosfunk;

namespace {
const double kPi = std::numbers::pi;
}

TEST(Gamma, MatchesStdOnTheRealLine) {
    for (double x : {0.1, 0.5, 1.0, 2.5, 7.3, 20.0, -0.5, -1.5, -2.7})
        EXPECT_NEAR(std::real(cosfunk::gamma(cd(x))) / std::tgamma(x), 1.0, 1e-13) << x;
}

TEST(Gamma, HalfIntegerValues) {
    EXPECT_NEAR(std::real(cosfunk::gamma(cd(0.5))), std::sqrt(kPi), 1e-14);
    EXPECT_NEAR(std::real(cosfunk::gamma(cd(-0.5))), -2.0 * std::sqrt(kPi), 1e-14);
    EXPECT_NEAR(std::real(cosfunk::gamma(cd(5.0))), 24.0, 1e-12);
}

TEST(Gamma, ComplexValueAgainstTabulatedConstant) {
    // Gamma(1 + i), tabulated to 17 digits.
    const cd g = gamma(cd(1.0, 1.0));
    EXPECT_NEAR(g.real(), 0.49801566811835604, 1e-14);
    EXPECT_NEAR(g.imag(), -0.15494982830181069, 1e-14);
}

TEST(Gamma, ReflectionFormula) {
    for (cd z : {cd(0.3, 0.7), cd(-1.2, 0.4), cd(2.5, -3.0)}) {
        const cd lhs = gamma(z) * gamma(1.0 - z);
        const cd rhs = kPi / std::sin(kPi * z);
        EXPECT_LT(std::abs(lhs - rhs) / std::abs(rhs), 1e-12);
    }
}

TEST(Gamma, PolesRaiseAndReciprocalVanishes) {
    EXPECT_THROW(cosfunk::gamma(cd(-2.0)), PoleError);
    EXPECT_THROW(cosfunk::gamma(cd(0.0)), PoleError);
    EXPECT_EQ(rgamma(-3.0), cd(0.0));
    EXPECT_TRUE(is_gamma_pole(cd(-4.0, 1e-14)));
    EXPECT_FALSE(is_gamma_pole(cd(-4.0, 1e-6)));
}

TEST(Gamma, RatioWithDenominatorPoleIsZero) {
    EXPECT_EQ(gamma_ratio(1.5, -1.0), cd(0.0));
    EXPECT_THROW(gamma_ratio(-1.0, 1.5), PoleError);
    EXPECT_NEAR(std::real(gamma_ratio(60.5, 60.0)), std::exp(std::lgamma(60.5) - std::lgamma(60.0)), 1e-10);
}

TEST(Gamma, LogGammaAndBeta) {
    for (double x : {0.7, 3.0, 50.0}) EXPECT_NEAR(std::real(cosfunk::lgamma(cd(x))), std::lgamma(x), 1e-12);
    EXPECT_NEAR(std::real(beta(2.0, 3.0)), 1.0 / 12.0, 1e-15);
    EXPECT_NEAR(std::real(beta(0.5, 0.5)), kPi, 1e-14);
}
