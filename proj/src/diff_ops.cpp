#include "cosfunk/diff_ops.hpp"

#include <algorithm>
#include <numeric>

#include "cosfunk/errors.hpp"
#include "cosfunk/multipliers.hpp"
#include "cosfunk/parallel.hpp"

namespace cosfunk {

namespace {

struct Band {
    HarmonicSpectrum spectrum;
    bool truncated;
};

Band analyze_band(const GridFunction& f) {
    const SpectralBand b = spectral_band(f);
    std::optional<Direction> pole = f.dimension() == 3 ? std::nullopt : b.pole;
    if (f.dimension() > 3 && !pole) throw InvalidArgument("n > 3 needs a zonal band limit (pole) on the input");
    return {analyze(f, b.degree, pole), b.truncated};
}

GridFunction diagonal(const GridFunction& f, const std::function<cd(int)>& m, const char* op) {
    const Band b = analyze_band(f);
    return synthesize(b.spectrum.scaled(m), f.grid_ptr()).with_provenance(Provenance{op, "spectral", b.truncated});
}

void check_spec(const WeightedOpSpec& spec, int n) {
    if (spec.ell < 0) throw InvalidArgument("weighted operator: ell must be >= 0");
    if (spec.n != n) throw InvalidArgument("weighted operator: spec.n does not match the grid dimension");
}

// Iterated (2n+1)-point Laplacian of g at x, `level` times.
cd iterated_laplacian(const std::function<cd(const Eigen::VectorXd&)>& g, const Eigen::VectorXd& x, double h,
                      int level) {
    if (level == 0) return g(x);
    const auto n = x.size();
    cd sum = -2.0 * double(n) * iterated_laplacian(g, x, h, level - 1);
    Eigen::VectorXd y = x;
    for (Eigen::Index i = 0; i < n; ++i) {
        y(i) = x(i) + h;
        sum += iterated_laplacian(g, y, h, level - 1);
        y(i) = x(i) - h;
        sum += iterated_laplacian(g, y, h, level - 1);
        y(i) = x(i);
    }
    return sum / (h * h);
}

}  // namespace

PointFunction band_limited_evaluator(const GridFunction& f) { return analyze_band(f).spectrum.as_function(); }

GridFunction beltrami(const GridFunction& f) {
    const int n = f.dimension();
    return diagonal(f, [n](int j) { return cd(beltrami_eigenvalue(j, n)); }, "beltrami");
}

GridFunction beltrami_fd(const PointFunction& f, const GridPtr& grid, double h) {
    if (!(h >= 1e-4 && h <= 1e-2)) throw InvalidArgument("beltrami_fd: h must lie in [1e-4, 1e-2]");
    auto ext = [&](const Eigen::VectorXd& x) { return homogeneous_extension_eval(f, 0.0, x); };
    std::vector<cd> v(grid->size());
    parallel_for(v.size(), [&](std::size_t i) { v[i] = iterated_laplacian(ext, grid->node(i), h, 1); });
    return GridFunction(grid, std::move(v)).with_provenance(Provenance{"beltrami", "fd", false});
}

GridFunction weighted_laplacian(const GridFunction& f, const WeightedOpSpec& spec) {
    check_spec(spec, f.dimension());
    return diagonal(
        f, [spec](int j) { return delta_op_eigenvalue(j, spec.n, spec.lambda, spec.ell); }, "weighted-laplacian");
}

GridFunction weighted_laplacian_factored(const GridFunction& f, const WeightedOpSpec& spec, std::vector<int> order) {
    check_spec(spec, f.dimension());
    if (order.empty()) {
        order.resize(spec.ell);
        std::iota(order.rbegin(), order.rend(), 1);
    }
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < int(sorted.size()); ++i)
        if (int(sorted.size()) != spec.ell || sorted[i] != i + 1)
            throw InvalidArgument("weighted_laplacian_factored: order must be a permutation of 1..ell");

    const Band b = analyze_band(f);
    GridFunction g = synthesize(b.spectrum, f.grid_ptr());
    for (int m : order) {
        const cd a = spec.lambda + 2.0 * m;
        g = beltrami(g) + (a * (a + double(spec.n - 2))) * g;
    }
    return (std::pow(cd(-0.25), spec.ell) * g)
        .with_provenance(Provenance{"weighted-laplacian", "factored", b.truncated});
}

GridFunction weighted_laplacian_fd(const PointFunction& f, const GridPtr& grid, const WeightedOpSpec& spec, double h,
                                   bool richardson) {
    check_spec(spec, grid->dimension());
    if (spec.ell > 2) throw Unsupported("weighted_laplacian_fd: ell > 2 is not supported by the stencil path");
    if (!(h >= 1e-4 && h <= 1e-2)) throw InvalidArgument("weighted_laplacian_fd: h must lie in [1e-4, 1e-2]");
    const cd a = spec.lambda + 2.0 * spec.ell;
    auto ext = [&](const Eigen::VectorXd& x) { return homogeneous_extension_eval(f, a, x); };
    const cd scale = std::pow(cd(-0.25), spec.ell);
    std::vector<cd> v(grid->size());
    parallel_for(v.size(), [&](std::size_t i) {
        const Eigen::VectorXd u = grid->node(i);
        cd d = iterated_laplacian(ext, u, h, spec.ell);
        if (richardson) d = (4.0 * iterated_laplacian(ext, u, 0.5 * h, spec.ell) - d) / 3.0;
        v[i] = scale * d;
    });
    return GridFunction(grid, std::move(v)).with_provenance(Provenance{"weighted-laplacian", "fd", false});
}

}  // namespace cosfunk
