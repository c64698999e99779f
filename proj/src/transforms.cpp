#include "cosfunk/transforms.hpp"

#include <cmath>

#include "cosfunk/errors.hpp"
#include "cosfunk/parallel.hpp"

namespace cosfunk {

std::string to_string(Path p) {
    switch (p) {
        case Path::quadrature: return "quadrature";
        case Path::spectral: return "spectral";
        case Path::automatic: return "auto";
    }
    return "unknown";
}

Path path_from_string(const std::string& s) {
    if (s == "quadrature") return Path::quadrature;
    if (s == "spectral") return Path::spectral;
    if (s == "auto" || s == "automatic") return Path::automatic;
    throw InvalidArgument("unknown path '" + s + "'");
}

namespace {

void check_lambda_pole(cd lambda) {
    const double k = std::round(0.5 * lambda.real());
    if (k >= 0.0 && std::abs(lambda - cd(2.0 * k)) <= kLambdaPoleTolerance)
        throw PoleError("lambda lies on the excluded set {0, 2, 4, ...}", lambda);
}

void check_mean_zero(const GridFunction& f, const char* what) {
    const double scale = std::max(1.0, max_abs(f));
    if (std::abs(integrate(f)) > 1e-10 * scale)
        throw PreconditionError(std::string(what) + " requires a mean-zero input");
}

struct Prepared {
    HarmonicSpectrum spectrum;
    bool truncated;
};

// Off-grid values come from band-limited synthesis; n > 3 needs a zonal pole.
Prepared prepare(const GridFunction& f) {
    const SpectralBand b = spectral_band(f);
    std::optional<Direction> pole = f.dimension() == 3 ? std::nullopt : b.pole;
    if (f.dimension() > 3 && !pole)
        throw InvalidArgument("n > 3 transforms need a zonal band limit (pole) on the input");
    return {analyze(f, b.degree, pole), b.truncated};
}

GridFunction finish(const GridFunction& f, std::vector<cd> values, const HarmonicSpectrum& s, const std::string& op,
                    Path path, bool truncated) {
    return GridFunction(f.grid_ptr(), std::move(values), s.band())
        .with_provenance(Provenance{op, to_string(path), truncated});
}

GridFunction spectral_apply(const GridFunction& f, const std::function<cd(int)>& multiplier, const std::string& op) {
    const Prepared p = prepare(f);
    const GridFunction out = synthesize(p.spectrum.scaled(multiplier), f.grid_ptr());
    return out.with_provenance(Provenance{op, "spectral", p.truncated});
}

int nodes_per_half(int J) { return std::max(24, J + 8); }

GridPtr subsphere_rule(int n, int J, int circle_nodes) {
    int res = J / 2 + 1;
    if (n == 3) res = std::max(res, (circle_nodes + 1) / 2);
    return sphere_rule(n - 1, std::max(res, 2));
}

cd adapted_integral(const PointFunction& f, const KernelRule& rule, const QuadratureGrid& inner,
                    const Eigen::VectorXd& u) {
    const Eigen::MatrixXd B = orthonormal_complement(u);
    const Eigen::MatrixXd ring = B * inner.nodes();
    cd sum = 0.0;
    for (std::size_t i = 0; i < rule.t.size(); ++i) {
        const double t = rule.t[i];
        const double s = std::sqrt(std::max(0.0, (1.0 - t) * (1.0 + t)));
        cd avg = 0.0;
        for (std::size_t k = 0; k < inner.size(); ++k) {
            const Eigen::VectorXd v = t * u + s * ring.col(static_cast<Eigen::Index>(k));
            avg += inner.weights()[k] * f(v);
        }
        sum += rule.w[i] * avg;
    }
    return sum;
}

cd subsphere_average(const PointFunction& f, const QuadratureGrid& inner, const Eigen::VectorXd& u) {
    const Eigen::MatrixXd ring = orthonormal_complement(u) * inner.nodes();
    cd avg = 0.0;
    for (std::size_t k = 0; k < inner.size(); ++k)
        avg += inner.weights()[k] * f(ring.col(static_cast<Eigen::Index>(k)));
    return avg;
}

GridFunction quadrature_apply(const GridFunction& f, const KernelProfile& kernel, const std::string& op) {
    const Prepared p = prepare(f);
    const int n = f.dimension();
    const int J = p.spectrum.max_degree();
    const KernelRule rule = kernel_rule(kernel, n, nodes_per_half(J));
    const GridPtr inner = subsphere_rule(n, J, 0);
    const PointFunction eval = p.spectrum.as_function();
    std::vector<cd> values(f.size());
    parallel_for(f.size(), [&](std::size_t i) {
        values[i] = adapted_integral(eval, rule, *inner, f.grid().node(i));
    });
    return finish(f, std::move(values), p.spectrum, op, Path::quadrature, p.truncated);
}

}  // namespace

cd kernel_integral_at(const PointFunction& f, int max_degree, const KernelProfile& kernel, const Eigen::VectorXd& u) {
    const int n = static_cast<int>(u.size());
    const KernelRule rule = kernel_rule(kernel, n, nodes_per_half(max_degree));
    return adapted_integral(f, rule, *subsphere_rule(n, max_degree, 0), u);
}

cd great_subsphere_average(const PointFunction& f, int max_degree, const Eigen::VectorXd& u, int circle_nodes) {
    const int n = static_cast<int>(u.size());
    if (n < 3) throw InvalidArgument("great_subsphere_average: n must be >= 3");
    return subsphere_average(f, *subsphere_rule(n, max_degree, circle_nodes), u);
}

GridFunction cosine_transform(const GridFunction& f, const TransformParams& params) {
    const cd lambda = params.lambda;
    check_lambda_pole(lambda);
    const int n = f.dimension();
    const bool in_domain = lambda.real() > -1.0;
    Path path = params.path;
    if (path == Path::automatic) path = in_domain ? Path::quadrature : Path::spectral;
    if (path == Path::quadrature) {
        if (!in_domain) throw DomainError("cosine quadrature path requires Re lambda > -1");
        return quadrature_apply(f, cosine_kernel(n, lambda), "cosine");
    }
    return spectral_apply(f, degreewise(OperatorTag::cosine, n, lambda), "cosine");
}

GridFunction funk_transform(const GridFunction& f, Path path, int circle_nodes) {
    const int n = f.dimension();
    if (path == Path::spectral) return spectral_apply(f, degreewise(OperatorTag::funk, n), "funk");
    if (circle_nodes < 3) throw InvalidArgument("funk_transform: need at least 3 circle nodes");
    const Prepared p = prepare(f);
    const GridPtr inner = subsphere_rule(n, p.spectrum.max_degree(), circle_nodes);
    const PointFunction eval = p.spectrum.as_function();
    std::vector<cd> values(f.size());
    parallel_for(f.size(), [&](std::size_t i) { values[i] = subsphere_average(eval, *inner, f.grid().node(i)); });
    return finish(f, std::move(values), p.spectrum, "funk", Path::quadrature, p.truncated);
}

GridFunction log_cosine_transform(const GridFunction& f, Path path) {
    check_mean_zero(f, "log_cosine_transform");
    const int n = f.dimension();
    if (path == Path::spectral) return spectral_apply(f, degreewise(OperatorTag::log_cosine, n), "log-cosine");
    return quadrature_apply(f, log_cosine_kernel(n), "log-cosine");
}

GridFunction sine_transform(const GridFunction& f, const TransformParams& params) {
    const cd lambda = params.lambda;
    check_lambda_pole(lambda);
    const int n = f.dimension();
    const bool in_domain = lambda.real() > 1.0 - n;
    Path path = params.path;
    if (path == Path::automatic) path = in_domain ? Path::quadrature : Path::spectral;
    if (path == Path::quadrature) {
        if (!in_domain) throw DomainError("sine quadrature path requires Re lambda > 1 - n");
        return quadrature_apply(f, sine_kernel(n, lambda), "sine");
    }
    return spectral_apply(f, degreewise(OperatorTag::sine, n, lambda), "sine");
}

GridFunction log_sine_transform(const GridFunction& f, Path path) {
    check_mean_zero(f, "log_sine_transform");
    const int n = f.dimension();
    if (path == Path::spectral) return spectral_apply(f, degreewise(OperatorTag::log_sine, n), "log-sine");
    return quadrature_apply(f, log_sine_kernel(n), "log-sine");
}

}  // namespace cosfunk
