#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cosfunk/errors.hpp"
#include "cosfunk/sphere.hpp"

using namespace cosfunk;

namespace {

double moment(const QuadratureGrid& g, const std::function<double(const Eigen::VectorXd&)>& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.weights()[i] * f(g.node(i));
    return s;
}

}  // namespace

TEST(SphereRule, ProbabilityWeightsAndSecondFourthMoments) {
    // Uniform measure on S^{d-1}: E[x0^2] = 1/d, E[x0^4] = 3/(d(d+2)), E[x0^2 x1^2] = 1/(d(d+2)).
    for (int d : {2, 3, 4, 5, 6}) {
        const GridPtr g = sphere_rule(d, 4);
        EXPECT_NEAR(moment(*g, [](auto&) { return 1.0; }), 1.0, 1e-14);
        EXPECT_NEAR(moment(*g, [](auto& x) { return x(0) * x(0); }), 1.0 / d, 1e-14);
        EXPECT_NEAR(moment(*g, [d](auto& x) { return std::pow(x(d - 1), 4); }), 3.0 / (d * (d + 2.0)), 1e-14);
        EXPECT_NEAR(moment(*g, [](auto& x) { return x(0) * x(0) * x(1) * x(1); }), 1.0 / (d * (d + 2.0)), 1e-14);
        for (std::size_t i = 0; i < g->size(); ++i) EXPECT_NEAR(g->node(i).norm(), 1.0, 1e-14);
    }
}

TEST(SphereRule, ZeroSphereIsTwoPoints) {
    const GridPtr g = sphere_rule(1, 3);
    ASSERT_EQ(g->size(), 2u);
    EXPECT_EQ(g->node(0)(0), -g->node(1)(0));
}

TEST(BuildGrid, ExactnessAndAntipodes) {
    for (int n : {3, 4, 5}) {
        const GridPtr g = build_grid(n, 6);
        EXPECT_GE(g->exactness_degree(), 11);
        // E[x0^10] = (9!!) / (n (n+2) ... (n+8)).
        double exact = 945.0;
        for (int m = 0; m < 5; ++m) exact /= (n + 2.0 * m);
        EXPECT_NEAR(moment(*g, [](auto& x) { return std::pow(x(0), 10); }), exact, 1e-14);
        ASSERT_TRUE(g->antipodally_paired());
        for (std::size_t i = 0; i < g->size(); ++i)
            EXPECT_LT((g->node(i) + g->node(g->antipode(i))).norm(), 1e-14);
    }
    EXPECT_THROW(build_grid(3, 2), InvalidArgument);
}

TEST(GridFunction, ParityAndMean) {
    const GridPtr g = build_grid(3, 6);
    const auto f = GridFunction::sample(g, [](const Eigen::VectorXd& x) { return cd(x(0) + x(1) * x(1) + 2.0); });
    const GridFunction even = even_project(f);
    const GridFunction odd = odd_part(f);
    for (std::size_t i = 0; i < g->size(); ++i) {
        const auto x = g->node(i);
        EXPECT_NEAR(std::abs(even[i] - (x(1) * x(1) + 2.0)), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(odd[i] - x(0)), 0.0, 1e-14);
    }
    EXPECT_NEAR(std::abs(integrate(f) - (1.0 / 3.0 + 2.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(integrate(remove_mean(f))), 0.0, 1e-14);
    EXPECT_NEAR(max_abs_diff(f - f, GridFunction::constant(g, 0.0)), 0.0, 0.0);
}

TEST(HomogeneousExtension, ScalesWithDegree) {
    const PointFunction f = [](const Eigen::VectorXd& v) { return cd(v(0) * v(0)); };
    Eigen::VectorXd x(3);
    x << 0.0, 3.0, 4.0;
    // |x| = 5, x/|x| = (0, .6, .8): f = 0.
    EXPECT_EQ(homogeneous_extension_eval(f, 2.0, x), cd(0.0));
    x << 3.0, 0.0, 4.0;
    EXPECT_NEAR(std::abs(homogeneous_extension_eval(f, 1.5, x) - std::pow(5.0, 1.5) * 0.36), 0.0, 1e-13);
    EXPECT_THROW(homogeneous_extension_eval(f, 1.0, Eigen::VectorXd::Zero(3)), DomainError);
}

TEST(OrthonormalComplement, SpansThePerp) {
    Eigen::VectorXd u(5);
    u << 1, 2, -1, 0.5, 3;
    u.normalize();
    const Eigen::MatrixXd C = orthonormal_complement(u);
    ASSERT_EQ(C.cols(), 4);
    EXPECT_LT((C.transpose() * C - Eigen::MatrixXd::Identity(4, 4)).norm(), 1e-14);
    EXPECT_LT((C.transpose() * u).norm(), 1e-14);
}

TEST(GridIo, RoundTripIsLossless) {
    const GridPtr g = build_grid(4, 5);
    std::stringstream ss;
    save_grid(*g, ss);
    const GridPtr h = load_grid(ss);
    ASSERT_EQ(h->size(), g->size());
    EXPECT_EQ(h->nodes(), g->nodes());
    EXPECT_EQ(h->weights(), g->weights());
    EXPECT_EQ(h->exactness_degree(), g->exactness_degree());
}

TEST(Direction, RejectsNonUnitVectors) {
    EXPECT_THROW(Direction(Eigen::VectorXd::Ones(3)), InvalidArgument);
    EXPECT_NEAR(Direction::normalized(Eigen::VectorXd::Ones(3)).vector().norm(), 1.0, 1e-15);
}
