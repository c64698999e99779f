#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cosfunk/gamma.hpp"

namespace cosfunk {

// ---------------------------------------------------------------------------
// Normalization constants
// ---------------------------------------------------------------------------

/// gamma(lambda) = sqrt(pi) Gamma(-lambda/2) / (Gamma(n/2) Gamma((lambda+1)/2)).
cd cosine_normalization(int n, cd lambda);
/// gamma_k(lambda) = sqrt(pi) Gamma(-lambda/2) / (Gamma(n/2) Gamma((lambda+k)/2)).
cd stiefel_cosine_normalization(int n, int k, cd lambda);
/// delta(lambda) = sqrt(pi) Gamma(-lambda/2) / (Gamma(n/2) Gamma((n-1+lambda)/2)).
cd sine_normalization(int n, cd lambda);
/// c_n = sqrt(pi) / Gamma((n-1)/2).
double funk_constant(int n);
/// c_{n,k} = Gamma(k/2) / Gamma((n-1)/2).
double stiefel_constant(int n, int k);
/// mu_k = sqrt(pi) / Gamma((n-k)/2).
double stiefel_limit_constant(int n, int k);
/// Density constant of t = u.v under the probability measure:
/// A_n (1 - t^2)^{(n-3)/2} dt on [-1, 1].
double projection_density_constant(int n);
/// Leading constant of the log-cosine kernel, 2 / Gamma(n/2).
double log_cosine_constant(int n);
/// Leading constant of the log-sine kernel, sqrt(pi) / (Gamma(n/2) Gamma((n-1)/2)):
/// the lambda -> 0 limit of delta(lambda) (1 - t^2)^{lambda/2} on mean-zero input,
/// which makes the log-sine transform equal c_n * log-cosine(Funk(f)).
double log_sine_constant(int n);

// ---------------------------------------------------------------------------
// Kernels of zonal integral operators and their Funk-Hecke quadrature
// ---------------------------------------------------------------------------

/// An even kernel k(t), t = u.v, factored as
///   regular(|t|) * |t|^zero_power * (1 - t^2)^sphere_power * log_weight(|t|)
/// so that the singular factors can be absorbed into the quadrature weight.
/// `log_weight` (optional) must be positive on (0, 1) and cannot be combined
/// with complex exponents.
struct KernelProfile {
    std::string name;
    std::function<cd(double)> regular;
    cd zero_power = 0.0;
    cd sphere_power = 0.0;
    std::function<double(double)> log_weight;

    cd operator()(double t) const;
};

KernelProfile constant_kernel(cd value);
KernelProfile cosine_kernel(int n, cd lambda);
KernelProfile sine_kernel(int n, cd lambda);
KernelProfile log_cosine_kernel(int n);
KernelProfile log_sine_kernel(int n);

/// Nodes t_i in (-1, 1) with complex weights w_i such that
///   sum_i w_i g(t_i) ~ integral of k(u.v) g(u.v) d_*v
/// for smooth g; symmetric under t -> -t.
struct KernelRule {
    std::vector<double> t;
    std::vector<cd> w;
};

/// Builds a KernelRule with `nodes_per_half` nodes on each of [-1, 0], [0, 1]
/// (singularity split at 0). Nonintegrable exponents raise DivergenceError.
KernelRule kernel_rule(const KernelProfile& kernel, int n, int nodes_per_half);

/// m_j = A_n int k(t) Z_j(t) (1 - t^2)^{(n-3)/2} dt for a profiled kernel;
/// refinement is compared and a non-converging result raises DivergenceError.
cd funk_hecke_multiplier_quadrature(const KernelProfile& kernel, int j, int n);

/// Same for a bare callable kernel on [-1, 1] (no singularity hints): plain
/// Gauss-Jacobi, refined until stable or DivergenceError.
cd funk_hecke_multiplier_quadrature(const std::function<cd(double)>& kernel, int j, int n);

// ---------------------------------------------------------------------------
// Closed-form multipliers (gated behind the quadrature oracle)
// ---------------------------------------------------------------------------

/// m_j(lambda) = (-1)^{j/2} Gamma((j - lambda)/2) / Gamma((j + lambda + n)/2).
/// Odd j raises InvalidArgument; lambda in {j, j+2, ...} raises PoleError.
cd cosine_multiplier(int j, int n, cd lambda);
/// Funk transform: m_j(-1) / c_n.
double funk_multiplier(int j, int n);
/// lambda-sine transform: m_j(lambda) m_j(-1).
cd sine_multiplier(int j, int n, cd lambda);
/// Removable value of m_j at lambda = 0; j = 0 raises ExcludedComponent.
double log_cosine_multiplier(int j, int n);
/// Logarithmic sine transform: c_n * log_cosine_multiplier * funk_multiplier.
double log_sine_multiplier(int j, int n);
/// Eigenvalue of the weighted operator of order ell on degree-j harmonics:
/// (-1/4)^ell prod_{m=1..ell} [(lambda+2m)(lambda+2m+n-2) - j(j+n-2)].
cd delta_op_eigenvalue(int j, int n, cd lambda, int ell);
/// Beltrami-Laplace eigenvalue -j(j+n-2).
double beltrami_eigenvalue(int j, int n);

/// Ungated closed form; used by the gate itself and by diagnostics.
cd cosine_multiplier_closed_form(int j, int n, cd lambda);

// ---------------------------------------------------------------------------
// Oracle gate
// ---------------------------------------------------------------------------

struct GateEntry {
    int j;
    int n;
    double lambda;
    cd closed_form;
    cd quadrature;
    double abs_error;
};

struct GateReport {
    std::vector<GateEntry> entries;
    double tolerance;
    bool passed;
    double max_error() const;
};

inline constexpr double kGateTolerance = 1e-9;

/// Runs (once) the comparison of the gamma-ratio cosine multiplier with
/// Funk-Hecke quadrature on j in {0,2,4}, n in {3,4},
/// lambda in {-0.5, 0.5, 1, 1.5}. Every closed-form multiplier throws
/// GateError while this report has passed == false.
const GateReport& multiplier_gate();

/// Throws GateError when the gate failed.
void require_gate();

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

enum class OperatorTag { cosine, sine, funk, log_cosine, log_sine, delta_op };

std::string to_string(OperatorTag tag);
OperatorTag operator_tag_from_string(const std::string& s);

/// Degree-indexed eigenvalues of an O(n)-invariant operator for even j <= J.
struct MultiplierTable {
    OperatorTag tag;
    cd lambda;
    int ell;
    int n;
    std::vector<int> degrees;
    std::vector<cd> values;
};

MultiplierTable make_multiplier_table(OperatorTag tag, int n, int max_degree, cd lambda = 0.0, int ell = 0);

/// Degree-wise action (0 on odd degrees) suitable for HarmonicSpectrum::scaled.
std::function<cd(int)> degreewise(OperatorTag tag, int n, cd lambda = 0.0, int ell = 0);

}  // namespace cosfunk
