#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cosfunk/sphere.hpp"

namespace cosfunk {

/// Degree-j zonal profile on S^{n-1}: C_j^{(n-2)/2}(t) / C_j^{(n-2)/2}(1),
/// i.e. the Legendre polynomial P_j for n = 3. |t| > 1 raises DomainError.
double zonal_eval(int j, int n, double t);

/// All profiles 0..max_degree at t (no range check beyond |t| <= 1 + 1e-12).
void zonal_profiles(int max_degree, int n, double t, std::span<double> out);

/// Dimension of the space of degree-j spherical harmonics on S^{n-1}.
double harmonic_dimension(int n, int j);

/// Real spherical harmonics on S^2 orthonormal for the probability measure,
/// all degrees 0..max_degree, indexed j*j + j + m (m < 0: sine part).
void real_harmonics(int max_degree, const Eigen::Vector3d& v, std::span<double> out);

inline int harmonic_index(int j, int m) { return j * j + j + m; }

/// Coefficients of a band-limited function. On S^2 a full real-harmonic table;
/// in any dimension a zonal table about a stored pole.
class HarmonicSpectrum {
public:
    static HarmonicSpectrum full(int max_degree, std::vector<cd> coefficients);
    static HarmonicSpectrum zonal(int n, int max_degree, Direction pole, std::vector<cd> by_degree);

    int dimension() const { return n_; }
    int max_degree() const { return max_degree_; }
    bool is_zonal() const { return pole_.has_value(); }
    const std::optional<Direction>& pole() const { return pole_; }

    /// c[j][m] for full tables; c[j] (m must be 0) for zonal ones.
    cd coefficient(int j, int m = 0) const;
    std::span<const cd> coefficients() const { return coeffs_; }

    /// Value at a unit vector by direct summation.
    cd evaluate(const Eigen::VectorXd& v) const;
    PointFunction as_function() const;

    /// Degree-wise diagonal action: coefficient j scaled by multiplier(j).
    HarmonicSpectrum scaled(const std::function<cd(int)>& multiplier) const;

    /// L2(d_*v) norm of each degree component.
    std::vector<double> degree_norms() const;

    BandLimit band() const;

private:
    HarmonicSpectrum(int n, int max_degree, std::optional<Direction> pole, std::vector<cd> coeffs);

    int n_;
    int max_degree_;
    std::optional<Direction> pole_;
    std::vector<cd> coeffs_;
};

/// Projection coefficients by quadrature. n = 3: full table; n > 3: zonal
/// table about `pole` (falls back to the pole in f's band metadata). Requires
/// grid exactness >= 2 * max_degree, else ResolutionError.
HarmonicSpectrum analyze(const GridFunction& f, int max_degree,
                         std::optional<Direction> pole = std::nullopt);

/// Direct summation on the nodes of `grid`; the result carries the band limit.
GridFunction synthesize(const HarmonicSpectrum& s, GridPtr grid);

/// Default truncation degree used when a grid function carries no band limit.
inline constexpr int kDefaultMaxDegree = 16;

/// Band limit to use for spectral work on f: its own band when present,
/// otherwise min(kDefaultMaxDegree, exactness / 2) with `truncated` set.
struct SpectralBand {
    int degree;
    std::optional<Direction> pole;
    bool truncated;
};
SpectralBand spectral_band(const GridFunction& f);

/// Random even band-limited spectrum with Gaussian coefficients (degree-j
/// components of comparable norm). n = 3: full table; n > 3: zonal about a
/// random pole. Deterministic in `seed`.
HarmonicSpectrum random_even_spectrum(int n, int max_degree, std::uint64_t seed);

/// Degree-j zonal profile about `pole`, as a spectrum (full table on S^2).
HarmonicSpectrum zonal_spectrum(int n, int j, const Direction& pole);

}  // namespace cosfunk
