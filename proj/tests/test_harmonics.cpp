#include <gtest/gtest.h>

#include <cmath>

#include "cosfunk/harmonics.hpp"
#include "oracles.hpp"

using namespace cosfunk;

TEST(ZonalProfiles, LegendreForNThree) {
    for (int j = 0; j <= 12; ++j)
        for (double t : {-1.0, -0.7, 0.0, 0.3, 0.99, 1.0}) EXPECT_NEAR(zonal_eval(j, 3, t), std::legendre(j, t), 1e-13);
}

TEST(ZonalProfiles, ChebyshevSecondKindForNFour) {
    // On S^3, Z_j(cos th) = sin((j+1) th) / ((j+1) sin th).
    for (int j = 0; j <= 12; ++j)
        for (double th : {0.3, 1.1, 2.0, 2.9}) {
            const double expect = std::sin((j + 1) * th) / ((j + 1) * std::sin(th));
            EXPECT_NEAR(zonal_eval(j, 4, std::cos(th)), expect, 1e-13);
        }
}

TEST(ZonalProfiles, GeneralDimensionsAgainstRecurrenceOracle) {
    std::vector<double> z(11);
    for (int n : {5, 6, 7}) {
        zonal_profiles(10, n, 0.37, z);
        for (int j = 0; j <= 10; ++j) EXPECT_NEAR(z[j], oracle::gegenbauer_profile(j, n, 0.37), 1e-13);
    }
}

TEST(HarmonicDimension, ClosedForms) {
    for (int j = 0; j < 10; ++j) {
        EXPECT_EQ(harmonic_dimension(3, j), 2 * j + 1);
        EXPECT_EQ(harmonic_dimension(4, j), (j + 1) * (j + 1));
        EXPECT_NEAR(harmonic_dimension(6, j), oracle::dimension_of_harmonics(6, j), 1e-9);
    }
}

TEST(ZonalProfiles, SquareIntegratesToInverseDimension) {
    for (int n : {3, 4, 5}) {
        const GridPtr g = build_grid(n, 8);
        const Direction p = Direction::normalized(Eigen::VectorXd::LinSpaced(n, 0.2, 1.0));
        for (int j : {2, 5, 7}) {
            double s = 0.0;
            for (std::size_t i = 0; i < g->size(); ++i) s += g->weights()[i] * std::pow(zonal_eval(j, n, p.dot(g->node(i))), 2);
            EXPECT_NEAR(s, 1.0 / harmonic_dimension(n, j), 1e-14);
        }
    }
}

TEST(Analysis, RoundTripFullSpectrumNThree) {
    const HarmonicSpectrum s = random_even_spectrum(3, 8, 11);
    const GridPtr g = build_grid(3, 12);
    const GridFunction f = synthesize(s, g);
    const HarmonicSpectrum back = analyze(f, 8);
    for (int j = 0; j <= 8; ++j)
        for (int m = -j; m <= j; ++m) EXPECT_NEAR(std::abs(back.coefficient(j, m) - s.coefficient(j, m)), 0.0, 1e-13);
    for (int j = 1; j <= 8; j += 2) EXPECT_EQ(back.degree_norms()[j] < 1e-13, true);
}

TEST(Analysis, RoundTripZonalNFive) {
    const HarmonicSpectrum s = random_even_spectrum(5, 8, 3);
    ASSERT_TRUE(s.is_zonal());
    const GridPtr g = build_grid(5, 10);
    const GridFunction f = synthesize(s, g);
    const HarmonicSpectrum back = analyze(f, 8, s.pole());
    for (int j = 0; j <= 8; ++j) EXPECT_NEAR(std::abs(back.coefficient(j) - s.coefficient(j)), 0.0, 1e-12);
}

TEST(Analysis, EvaluateMatchesSynthesisOffGrid) {
    const HarmonicSpectrum s = zonal_spectrum(3, 4, Direction::axis(3, 2));
    Eigen::VectorXd v(3);
    v << 0.6, 0.0, 0.8;
    EXPECT_NEAR(std::abs(s.evaluate(v) - std::legendre(4, 0.8)), 0.0, 1e-14);
}

TEST(Analysis, BandReportsDegreeAndPole) {
    const Direction p = Direction::axis(4, 1);
    const HarmonicSpectrum s = zonal_spectrum(4, 6, p);
    EXPECT_EQ(s.band().degree, 6);
    ASSERT_TRUE(s.band().pole.has_value());
    const GridFunction f = synthesize(s, build_grid(4, 8));
    const SpectralBand b = spectral_band(f);
    EXPECT_EQ(b.degree, 6);
    EXPECT_FALSE(b.truncated);
}
