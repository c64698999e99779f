#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cosfunk {

using cd = std::complex<double>;

/// A unit vector in R^n. Construction checks the norm; `normalized` rescales.
class Direction {
public:
    explicit Direction(Eigen::VectorXd v);
    static Direction normalized(Eigen::VectorXd v);
    /// Standard basis vector e_i in R^n.
    static Direction axis(int n, int i);

    const Eigen::VectorXd& vector() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()); }
    double operator[](int i) const { return v_(i); }
    double dot(const Eigen::VectorXd& w) const { return v_.dot(w); }

private:
    Eigen::VectorXd v_;
};

/// Function on S^{n-1} evaluable at arbitrary unit vectors.
using PointFunction = std::function<cd(const Eigen::VectorXd&)>;

/// Nodes and weights on S^{n-1} normalized to the O(n)-invariant probability
/// measure. Product grids carry an antipodal involution.
class QuadratureGrid {
public:
    QuadratureGrid(Eigen::MatrixXd nodes, std::vector<double> weights, std::vector<int> antipode,
                   int exactness_degree);

    int dimension() const { return static_cast<int>(nodes_.rows()); }
    std::size_t size() const { return weights_.size(); }
    /// Node i as a column of the n x N node matrix.
    auto node(std::size_t i) const { return nodes_.col(static_cast<Eigen::Index>(i)); }
    const Eigen::MatrixXd& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    bool antipodally_paired() const { return !antipode_.empty(); }
    /// Index of -node(i); requires antipodally_paired().
    int antipode(std::size_t i) const { return antipode_.at(i); }
    /// Highest total polynomial degree integrated exactly (-1 when unknown).
    int exactness_degree() const { return exactness_; }

private:
    Eigen::MatrixXd nodes_;
    std::vector<double> weights_;
    std::vector<int> antipode_;
    int exactness_;
};

using GridPtr = std::shared_ptr<const QuadratureGrid>;

/// Product quadrature on S^{d-1} for any d >= 1 with `resolution` Gauss nodes
/// per polar angle and 2 * resolution trapezoid nodes in azimuth; exact up to
/// degree 2 * resolution - 1. d = 1 is the two-point set {+1, -1}.
GridPtr sphere_rule(int d, int resolution);

/// Public grid builder: n >= 3, resolution >= 4. For n = 3 this is
/// Gauss-Legendre (polar) x trapezoid (azimuth); for n > 3 Gauss-Jacobi rules
/// over the hyperspherical angles.
GridPtr build_grid(int n, int resolution);

/// Band-limit metadata carried by a grid function. For n > 3 spectral
/// operations are restricted to functions zonal about `pole`.
struct BandLimit {
    int degree = 0;
    std::optional<Direction> pole;
};

/// Which computational route produced a function (recorded for reproducibility).
struct Provenance {
    std::string operation = "input";
    std::string path;
    bool truncated = false;
};

/// Complex samples of a function at the nodes of a QuadratureGrid.
class GridFunction {
public:
    GridFunction(GridPtr grid, std::vector<cd> values, std::optional<BandLimit> band = std::nullopt);

    static GridFunction sample(GridPtr grid, const PointFunction& f,
                               std::optional<BandLimit> band = std::nullopt);
    static GridFunction constant(GridPtr grid, cd value);

    const QuadratureGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    int dimension() const { return grid_->dimension(); }
    std::size_t size() const { return values_.size(); }
    std::span<const cd> values() const { return values_; }
    cd operator[](std::size_t i) const { return values_[i]; }

    const std::optional<BandLimit>& band() const { return band_; }
    GridFunction with_band(std::optional<BandLimit> band) const;

    const Provenance& provenance() const { return provenance_; }
    GridFunction with_provenance(Provenance p) const;

private:
    GridPtr grid_;
    std::vector<cd> values_;
    std::optional<BandLimit> band_;
    Provenance provenance_;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(cd s, const GridFunction& f);

double max_abs(const GridFunction& f);
double max_abs_diff(const GridFunction& a, const GridFunction& b);

/// Weighted sum of samples: the integral against the probability measure.
cd integrate(const GridFunction& f);

/// (f(v) + f(-v)) / 2 at each node. Throws UnsupportedGrid without pairing.
GridFunction even_project(const GridFunction& f);
GridFunction odd_part(const GridFunction& f);

/// f - integrate(f).
GridFunction remove_mean(const GridFunction& f);

/// E_a f(x) = |x|^a f(x / |x|), principal branch of the complex power.
/// x = 0 raises DomainError.
cd homogeneous_extension_eval(const PointFunction& f, cd a, const Eigen::VectorXd& x);

/// Orthonormal basis (columns) of the complement of u: standard basis vectors
/// in order of increasing |a . u| (ties by index), Gram-Schmidt. For n = 3
/// the second column is u x e1.
Eigen::MatrixXd orthonormal_complement(const Eigen::VectorXd& u);

/// Plain-text grid serialization: header `# sphere-grid n=<n> nodes=<N>
/// exactness=<d>`, then one row per node with n coordinates and the weight
/// (17 significant digits). Headers without exactness load with -1.
void save_grid(const QuadratureGrid& grid, std::ostream& out);
GridPtr load_grid(std::istream& in);

}  // namespace cosfunk
