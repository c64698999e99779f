#pragma once

#include <functional>
#include <vector>

namespace cosfunk {

/// A one-dimensional quadrature rule: sum_i weights[i] * g(nodes[i]).
struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
    double total_weight() const;
};

/// Gauss-Jacobi rule on [-1, 1] for the weight (1 - x)^alpha (1 + x)^beta,
/// alpha, beta > -1, exact for polynomials of degree 2N - 1. Built from the
/// Jacobi matrix of the monic recurrence (Golub-Welsch). Symmetric weights
/// (alpha == beta) produce exactly antisymmetric node sets.
Rule1D gauss_jacobi(int num_nodes, double alpha, double beta);

inline Rule1D gauss_legendre(int num_nodes) { return gauss_jacobi(num_nodes, 0.0, 0.0); }

/// Affine map of a rule on [-1, 1] to [a, b] (weights scaled by (b - a) / 2).
Rule1D map_rule(const Rule1D& rule, double a, double b);

/// Gauss rule for an arbitrary positive weight on (0, 1), possibly with
/// integrable endpoint singularities (logarithmic or power type). The weight
/// is discretized on cells graded geometrically toward both endpoints and the
/// recurrence coefficients are recovered by Lanczos with full
/// reorthogonalization.
Rule1D gauss_from_weight(const std::function<double(double)>& weight, int num_nodes);

/// Graded composite Gauss-Legendre discretization of [0, 1]; exposed for tests.
Rule1D graded_unit_interval(int levels = 48, int points_per_cell = 20);

}  // namespace cosfunk
