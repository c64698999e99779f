#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cosfunk/errors.hpp"
#include "cosfunk/inversion.hpp"

using namespace cosfunk;

namespace {

GridFunction random_even(int n, int J, std::uint64_t seed) {
    const HarmonicSpectrum s = random_even_spectrum(n, J, seed);
    return GridFunction::sample(build_grid(n, J + 4), s.as_function(), s.band());
}

InversionOptions with_reference(const GridFunction& f) {
    InversionOptions o;
    o.reference = f;
    return o;
}

}  // namespace

TEST(InvertFunk, EvenBranchBothOrderings) {
    const GridFunction f = random_even(4, 8, 7);
    const InversionResult r = invert_funk(funk_transform(f, Path::spectral), with_reference(f));
    EXPECT_EQ(r.report.method, "even-branch");
    ASSERT_TRUE(r.alternative.has_value());
    EXPECT_LT(r.report.max_error, 1e-9);
    EXPECT_LT(r.report.branch_agreement, 1e-9);
    EXPECT_LT(max_abs_diff(*r.alternative, f), 1e-9);
}

TEST(InvertFunk, CollapseOnSThree) {
    // n = 4: c_4 = 2, d_j(-3, 1) = (j + 1)^2 / 4 and f_j = Z_j(0) = +-1 / (j + 1),
    // so the chain and (j + 1)^2 f_j^2 both equal 1.
    for (int j = 0; j <= 12; j += 2) {
        const double fj = funk_multiplier(j, 4);
        EXPECT_NEAR((j + 1.0) * (j + 1.0) * fj * fj, 1.0, 1e-12);
        const cd chain = funk_constant(4) * funk_constant(4) * delta_op_eigenvalue(j, 4, -3.0, 1) * fj * fj;
        EXPECT_NEAR(std::abs(chain - 1.0), 0.0, 1e-12);
    }
}

TEST(InvertFunk, OddBranchThroughLogCosine) {
    for (int n : {3, 5}) {
        const GridFunction f = random_even(n, 8, 3);
        const InversionResult r = invert_funk(funk_transform(f, Path::spectral), with_reference(f));
        EXPECT_EQ(r.report.method, "log-branch");
        EXPECT_LT(r.report.max_error, 1e-6) << n;
    }
}

TEST(InvertCosine1, BothParities) {
    for (int n : {3, 4, 5}) {
        const GridFunction f = random_even(n, 8, 12);
        const InversionResult r = invert_cosine1(cosine_transform(f, {1.0, Path::spectral}), with_reference(f));
        EXPECT_LT(r.report.max_error, n % 2 ? 1e-6 : 1e-8) << n;
    }
}

TEST(InvertCosine1, OddConstantIsNegative) {
    // Gamma(2) / Gamma(-1/2) = -1 / (2 sqrt(pi)) for n = 3.
    EXPECT_NEAR(cosine1_odd_constant(3), -0.5 / std::sqrt(std::numbers::pi), 1e-15);
    EXPECT_LT(cosine1_odd_constant(5), 0.0);
}

TEST(InvertGeneral, BetweenAndOutside) {
    const GridFunction f = random_even(4, 8, 5);
    for (auto [lambda, ell] : {std::pair{cd(-2.5), 1}, {cd(-3.5), 2}, {cd(-1.5, 0.5), 1}}) {
        const auto phi = cosine_transform(f, {lambda + 2.0 * ell, Path::spectral});
        EXPECT_LT(invert_general_between(phi, lambda, ell, with_reference(f)).report.max_error, 1e-8);
    }
    for (auto [lambda, ell] : {std::pair{cd(-5.5), 1}, {cd(1.5), 3}}) {
        const auto phi = cosine_transform(f, {lambda, Path::spectral});
        EXPECT_LT(invert_general_outside(phi, lambda, ell, with_reference(f)).report.max_error, 1e-8);
    }
}

TEST(InvertGeneral, ViolatedConditionIsNamed) {
    const GridFunction f = random_even(3, 4, 5);
    try {
        invert_general_between(f, -3.0, 0);  // -lambda - n = 0
        FAIL();
    } catch (const PoleError& e) {
        EXPECT_NE(std::string(e.what()).find("-lambda - n"), std::string::npos);
    }
    EXPECT_THROW(invert_general_outside(f, 4.0, 1), PoleError);
}

TEST(Inversion, BandAboveCeilingRaises) {
    const GridFunction f = random_even(3, 14, 5);
    EXPECT_THROW(invert_funk(f), ResolutionError);
}

TEST(Inversion, OddInputIsReportedAndAnnihilated) {
    const GridPtr g = build_grid(3, 8);
    const auto f = GridFunction::sample(g, [](const Eigen::VectorXd& x) { return cd(x(0) + x(1) * x(1)); });
    const InversionResult r = invert_cosine1(f);
    EXPECT_GT(r.report.odd_part_norm, 0.1);
    EXPECT_FALSE(r.report.warnings.empty());
}

TEST(Inversion, ConditionNumbersGrowWithDegree) {
    const GridFunction f = random_even(4, 8, 7);
    const InversionResult r = invert_funk(funk_transform(f, Path::spectral));
    ASSERT_EQ(r.report.condition_numbers.size(), 5u);
    for (std::size_t i = 1; i < r.report.condition_numbers.size(); ++i)
        EXPECT_GT(r.report.condition_numbers[i], r.report.condition_numbers[i - 1]);
    EXPECT_EQ(r.report.max_error, -1.0);
}
