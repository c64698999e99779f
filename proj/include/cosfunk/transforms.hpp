#pragma once

#include <string>

#include "cosfunk/harmonics.hpp"
#include "cosfunk/multipliers.hpp"

namespace cosfunk {

enum class Path { quadrature, spectral, automatic };

std::string to_string(Path p);
Path path_from_string(const std::string& s);

struct TransformParams {
    cd lambda = 0.0;
    Path path = Path::automatic;
};

/// Distance to {0, 2, 4, ...} below which lambda is rejected as a pole.
inline constexpr double kLambdaPoleTolerance = 1e-10;

/// Normalized lambda-cosine transform. Quadrature path needs Re lambda > -1;
/// lambda in {0, 2, 4, ...} raises PoleError on every path. `automatic` uses
/// quadrature inside its domain and the spectral path outside it.
GridFunction cosine_transform(const GridFunction& f, const TransformParams& params);

/// Average over the great subsphere orthogonal to each node. The quadrature
/// path uses at least `circle_nodes` nodes on the great circle when n = 3.
GridFunction funk_transform(const GridFunction& f, Path path = Path::automatic, int circle_nodes = 64);

/// Logarithmic cosine transform; f must have mean zero (PreconditionError).
GridFunction log_cosine_transform(const GridFunction& f, Path path = Path::automatic);

/// Normalized lambda-sine transform. Quadrature path needs Re lambda > 1 - n.
GridFunction sine_transform(const GridFunction& f, const TransformParams& params);

/// Logarithmic sine transform; f must have mean zero (PreconditionError).
GridFunction log_sine_transform(const GridFunction& f, Path path = Path::automatic);

/// Integral of k(u.v) f(v) d_*v at a single direction u for a function that is
/// a polynomial of degree <= max_degree on the sphere, integrated in
/// coordinates adapted to u (t = u.v and the subsphere orthogonal to u).
cd kernel_integral_at(const PointFunction& f, int max_degree, const KernelProfile& kernel,
                      const Eigen::VectorXd& u);

/// Average of f over the great subsphere u^perp, exact for polynomials of
/// degree <= max_degree (and at least `circle_nodes` nodes when n = 3).
cd great_subsphere_average(const PointFunction& f, int max_degree, const Eigen::VectorXd& u,
                           int circle_nodes = 64);

}  // namespace cosfunk
