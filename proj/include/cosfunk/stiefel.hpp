#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cosfunk/multipliers.hpp"
#include "cosfunk/rng.hpp"
#include "cosfunk/sphere.hpp"

namespace cosfunk {

/// A point of V_{n,k}: an n x k matrix with orthonormal columns (u^T u = I
/// within 1e-12), 1 <= k <= n - 1.
class Frame {
public:
    explicit Frame(Eigen::MatrixXd u);

    int n() const { return static_cast<int>(u_.rows()); }
    int k() const { return static_cast<int>(u_.cols()); }
    const Eigen::MatrixXd& matrix() const { return u_; }

    /// Orthonormal basis of null(u^T): last n - k columns of the Householder
    /// completion of u to an orthogonal matrix. Deterministic in u.
    Eigen::MatrixXd null_basis() const;

private:
    Eigen::MatrixXd u_;
};

/// Haar-distributed frame: QR of a Gaussian n x k array with R_ii > 0.
Frame haar_sample(int n, int k, std::uint64_t seed);
Frame haar_sample(int n, int k, CounterRng& rng);

using FrameFunction = std::function<cd(const Frame&)>;

/// A function on V_{n,k} with a tag saying what it was derived from.
struct StiefelFunction {
    FrameFunction fn;
    std::string derived_from = "raw";
};

// ---------------------------------------------------------------------------
// Test functions
// ---------------------------------------------------------------------------

/// f(v) = sum_p sum_j c_{p,j} Z_j(p.v): finite sum of zonal profiles about
/// several poles. Every O(n)-invariant operator acts by scaling c_{p,j}.
class ZonalSum {
public:
    struct Term {
        Direction pole;
        std::vector<cd> coeffs;  // by degree 0..J
    };

    ZonalSum(int n, int max_degree, std::vector<Term> terms);

    /// Even degrees only, Gaussian coefficients, `poles` random poles.
    static ZonalSum random_even(int n, int max_degree, int poles, std::uint64_t seed);

    int dimension() const { return n_; }
    int max_degree() const { return J_; }
    const std::vector<Term>& terms() const { return terms_; }

    cd operator()(const Eigen::VectorXd& v) const;
    /// Degree components at v: out[j] = sum_p c_{p,j} Z_j(p.v).
    void by_degree(const Eigen::VectorXd& v, std::vector<cd>& out) const;
    ZonalSum scaled(const std::function<cd(int)>& multiplier) const;
    PointFunction as_function() const;

private:
    int n_;
    int J_;
    std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Direct transforms at a frame (deterministic quadrature)
// ---------------------------------------------------------------------------

/// Vector-valued integrand: several functions evaluated at once.
using VectorFunction = std::function<void(const Eigen::VectorXd&, std::vector<cd>&)>;

/// Average of f over the unit sphere of null(u^T), exact for polynomials of
/// degree <= 2 * resolution - 1. resolution = 0 picks band_limit / 2 + 1; a
/// resolution too small for band_limit raises ResolutionError.
cd funk_k(const PointFunction& f, int band_limit, const Frame& u, int resolution = 0);
void funk_k(const VectorFunction& f, int components, int band_limit, const Frame& u, std::vector<cd>& out);

/// gamma_k(lambda) * integral of f(v) |u^T v|^lambda d_*v in coordinates
/// adapted to the frame (v = sqrt(s) u a + sqrt(1 - s) B b). Re lambda > -k
/// (DomainError), lambda off {0, 2, 4, ...} (PoleError).
cd cosine_k(const PointFunction& f, int band_limit, const Frame& u, cd lambda);
void cosine_k(const VectorFunction& f, int components, int band_limit, const Frame& u, cd lambda,
              std::vector<cd>& out);

// ---------------------------------------------------------------------------
// Dual transforms (Monte Carlo over frames orthogonal to v)
// ---------------------------------------------------------------------------

struct McEstimate {
    cd mean;
    double std_error;
    std::int64_t samples;
};

inline constexpr std::int64_t kMinSamples = 100;
inline constexpr std::int64_t kDefaultSamples = 100000;

/// Mean of phi over Haar frames of v^perp. samples < 100 raises InsufficientSamples.
McEstimate dual_funk_k(const FrameFunction& phi, const Direction& v, int k, std::int64_t samples, std::uint64_t seed);

/// gamma_k(lambda) * mean of phi(u) |u^T v|^lambda over Haar frames, sampled
/// with the |u^T v|^lambda factor moved into the law of |u^T v|^2 (a Beta
/// variable), so the estimator has finite variance for every Re lambda > -k.
McEstimate dual_cosine_k(const FrameFunction& phi, const Direction& v, int k, cd lambda, std::int64_t samples,
                         std::uint64_t seed);

/// Constant in front of the reweighted dual estimator:
/// sqrt(pi) Gamma(-lambda/2) / (Gamma(k/2) Gamma((n+lambda)/2)); equals mu_k at lambda = -k.
cd dual_cosine_prefactor(int n, int k, cd lambda);

// ---------------------------------------------------------------------------
// Degree-wise reductions by one-dimensional quadrature
// ---------------------------------------------------------------------------

/// Multiplier of F*_k F_k on degree j: E[Z_j(sigma)], sigma the first
/// coordinate of a uniform point on S^{n-k-1}.
double funk_k_composite_multiplier(int j, int n, int k);

/// Multiplier of C*^lambda_k F_k on degree j (Re lambda > -k).
cd dual_cosine_of_funk_multiplier(int j, int n, int k, cd lambda);

/// Multiplier of F*_k C^lambda_k on degree j (Re lambda > max(-k, 1-n)).
cd dual_funk_of_cosine_multiplier(int j, int n, int k, cd lambda);

// ---------------------------------------------------------------------------
// Identity checks and inversions
// ---------------------------------------------------------------------------

enum class StiefelIdentity { factorization, sine_inversion, funk_k_odd, funk_k_even, cosine1_even, cosine1_odd };

std::string to_string(StiefelIdentity id);
StiefelIdentity stiefel_identity_from_string(const std::string& s);

struct McCheck {
    std::string name;
    cd estimate;
    cd reference;
    double error;
    double sigma;
    bool within_3_sigma() const { return error < 3.0 * sigma; }
};

struct StiefelReport {
    std::string identity;
    int n = 0;
    int k = 0;
    cd lambda = 0.0;
    int max_degree = 0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<int> degrees;
    /// Degree-wise value of the identity chain (1 when the identity holds).
    std::vector<cd> chain;
    double spectral_error = 0.0;
    bool mc_applicable = false;
    std::vector<McCheck> mc_checks;
    /// Worst check (largest error / sigma); zero when not applicable.
    double mc_error = 0.0;
    double mc_sigma = 0.0;
    std::string note;
};

struct StiefelCheckOptions {
    int spectral_degree = 8;
    int mc_degree = 4;
    int poles = 3;
    std::int64_t samples = kDefaultSamples;
    std::uint64_t seed = 1;
    bool run_mc = true;
};

/// Runs one identity at (n, k, lambda); lambda is ignored by identities that
/// fix it. Preconditions of each identity raise InvalidArgument /
/// ExcludedComponent.
StiefelReport stiefel_check(StiefelIdentity id, int n, int k, cd lambda, const StiefelCheckOptions& opt = {});

enum class FunkKMode { odd_codimension, even_codimension };

/// Inversion of F_k: mode odd (n - k odd) f = c_{n,k} mu_k Delta_{1-n,(n-k-1)/2} F*_k F_k f;
/// mode even (n - k even, k > 1) f = c_{n,k} Delta_{1-n,(n-k)/2} C*^{1-k}_k F_k f.
StiefelReport invert_funk_k(int n, int k, FunkKMode mode, const StiefelCheckOptions& opt = {});

/// Inversion of C^1_k: n even f = c_{n,k} Delta_{1-n,n/2} F*_k C^1_k f; n odd
/// f = c F^{-1} (C^1)^{-1} F*_k C^1_k f with c = Gamma(k/2) / sqrt(pi).
StiefelReport invert_cosine1_k(int n, int k, const StiefelCheckOptions& opt = {});

}  // namespace cosfunk
