#include "cosfunk/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "cosfunk/errors.hpp"

namespace cosfunk {

namespace {

Rule1D golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mass) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw DomainError("tridiagonal eigensolver failed");
    const auto n = diag.size();
    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        rule.nodes[i] = solver.eigenvalues()(i);
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = mass * v0 * v0;
    }
    return rule;
}

}  // namespace

double Rule1D::total_weight() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

Rule1D gauss_jacobi(int num_nodes, double alpha, double beta) {
    if (num_nodes < 1) throw InvalidArgument("gauss_jacobi: need at least one node");
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw DivergenceError("gauss_jacobi: exponents must exceed -1");

    const double ab = alpha + beta;
    Eigen::VectorXd diag(num_nodes);
    Eigen::VectorXd off(std::max(num_nodes - 1, 0));
    for (int k = 0; k < num_nodes; ++k) {
        if (k == 0) {
            diag(0) = (beta - alpha) / (ab + 2.0);
        } else {
            const double s = 2.0 * k + ab;
            diag(k) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
        }
    }
    for (int k = 1; k < num_nodes; ++k) {
        double b;
        if (k == 1) {
            b = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            const double s = 2.0 * k + ab;
            b = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        }
        off(k - 1) = std::sqrt(b);
    }
    const double mass = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                                 std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
    Rule1D rule = golub_welsch(diag, off, mass);

    if (alpha == beta) {
        const int n = num_nodes;
        for (int i = 0; i < n / 2; ++i) {
            const double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
            const double w = 0.5 * (rule.weights[n - 1 - i] + rule.weights[i]);
            rule.nodes[i] = -x;
            rule.nodes[n - 1 - i] = x;
            rule.weights[i] = rule.weights[n - 1 - i] = w;
        }
        if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    }
    return rule;
}

Rule1D map_rule(const Rule1D& rule, double a, double b) {
    Rule1D out;
    out.nodes.resize(rule.size());
    out.weights.resize(rule.size());
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        out.nodes[i] = mid + half * rule.nodes[i];
        out.weights[i] = half * rule.weights[i];
    }
    return out;
}

Rule1D graded_unit_interval(int levels, int points_per_cell) {
    std::vector<double> breaks{0.0};
    for (int l = levels; l >= 2; --l) breaks.push_back(std::ldexp(1.0, -l));
    breaks.push_back(0.5);
    // Near 1 doubles are spaced 2^-53; deeper cells would round nodes onto 1.
    for (int l = 2; l <= std::min(levels, 44); ++l) breaks.push_back(1.0 - std::ldexp(1.0, -l));
    breaks.push_back(1.0);

    const Rule1D cell = gauss_legendre(points_per_cell);
    Rule1D out;
    for (std::size_t c = 0; c + 1 < breaks.size(); ++c) {
        const Rule1D mapped = map_rule(cell, breaks[c], breaks[c + 1]);
        out.nodes.insert(out.nodes.end(), mapped.nodes.begin(), mapped.nodes.end());
        out.weights.insert(out.weights.end(), mapped.weights.begin(), mapped.weights.end());
    }
    return out;
}

Rule1D gauss_from_weight(const std::function<double(double)>& weight, int num_nodes) {
    if (num_nodes < 1) throw InvalidArgument("gauss_from_weight: need at least one node");
    const Rule1D base = graded_unit_interval();
    const auto m = static_cast<Eigen::Index>(base.size());

    Eigen::VectorXd x(m), sqrt_w(m);
    double mass = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const double w = weight(base.nodes[i]) * base.weights[i];
        if (!(w >= 0.0) || !std::isfinite(w)) throw DivergenceError("weight is not finite and nonnegative");
        x(i) = base.nodes[i];
        sqrt_w(i) = std::sqrt(w);
        mass += w;
    }
    if (!(mass > 0.0)) throw DivergenceError("weight has zero mass");
    if (num_nodes > m / 4) throw InvalidArgument("gauss_from_weight: too many nodes for the discretization");

    // Lanczos on diag(x) started from sqrt(w): yields the Jacobi matrix of the
    // discrete measure.
    Eigen::MatrixXd q(m, num_nodes);
    Eigen::VectorXd diag(num_nodes), off(std::max(num_nodes - 1, 0));
    q.col(0) = sqrt_w / sqrt_w.norm();
    for (int k = 0; k < num_nodes; ++k) {
        Eigen::VectorXd r = x.cwiseProduct(q.col(k));
        diag(k) = q.col(k).dot(r);
        r -= diag(k) * q.col(k);
        if (k > 0) r -= off(k - 1) * q.col(k - 1);
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i <= k; ++i) r -= q.col(i).dot(r) * q.col(i);
        if (k + 1 < num_nodes) {
            off(k) = r.norm();
            q.col(k + 1) = r / off(k);
        }
    }
    return golub_welsch(diag, off, mass);
}

}  // namespace cosfunk
