#pragma once

#include <vector>

#include "cosfunk/harmonics.hpp"

namespace cosfunk {

/// Delta_{lambda,ell} = (-1/4)^ell prod_{m=1..ell} [Delta_S + (lambda+2m)(lambda+2m+n-2) I].
struct WeightedOpSpec {
    cd lambda = 0.0;
    int ell = 0;
    int n = 3;
};

/// Beltrami-Laplace operator on the band of f (coefficient j times -j(j+n-2)).
GridFunction beltrami(const GridFunction& f);

/// |x|^2 (Delta f~)(x) at the nodes of `grid` by central second differences of
/// f~(x) = f(x/|x|) with step h.
GridFunction beltrami_fd(const PointFunction& f, const GridPtr& grid, double h);

/// Diagonal action: coefficient j times delta_op_eigenvalue(j, n, lambda, ell).
GridFunction weighted_laplacian(const GridFunction& f, const WeightedOpSpec& spec);

/// Factored action: the ell operators [Delta_S + a_m I] applied one after
/// another on the grid (default order m = ell, ..., 1), then (-1/4)^ell.
/// `order` is a permutation of 1..ell.
GridFunction weighted_laplacian_factored(const GridFunction& f, const WeightedOpSpec& spec,
                                         std::vector<int> order = {});

/// The defining formula taken literally: (-1/4)^ell (Delta^ell E_{lambda+2ell} f)(u)
/// with the Euclidean Laplacian replaced by the iterated (2n+1)-point stencil
/// of step h. ell <= 2 (Unsupported otherwise), h in [1e-4, 1e-2].
/// `richardson` combines steps h and h/2 to cancel the h^2 term.
GridFunction weighted_laplacian_fd(const PointFunction& f, const GridPtr& grid, const WeightedOpSpec& spec, double h,
                                   bool richardson = false);

/// Convenience: off-grid values of a band-limited grid function by synthesis.
PointFunction band_limited_evaluator(const GridFunction& f);

}  // namespace cosfunk
