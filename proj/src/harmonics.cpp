#include "cosfunk/harmonics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <random>

#include "cosfunk/errors.hpp"
#include "cosfunk/rng.hpp"

namespace cosfunk {

void zonal_profiles(int max_degree, int n, double t, std::span<double> out) {
    const double alpha = 0.5 * (n - 2);
    out[0] = 1.0;
    if (max_degree >= 1) out[1] = t;
    for (int k = 1; k < max_degree; ++k)
        out[k + 1] = (2.0 * (k + alpha) * t * out[k] - k * out[k - 1]) / (k + 2.0 * alpha);
}

double zonal_eval(int j, int n, double t) {
    if (j < 0 || n < 3) throw InvalidArgument("zonal_eval: need j >= 0 and n >= 3");
    if (std::abs(t) > 1.0 + 1e-12) throw DomainError("zonal_eval: |t| > 1");
    std::vector<double> p(j + 1);
    zonal_profiles(j, n, std::clamp(t, -1.0, 1.0), p);
    return p[j];
}

double harmonic_dimension(int n, int j) {
    if (j == 0) return 1.0;
    // (2j + n - 2) (j + n - 3)! / (j! (n - 2)!)
    double binom = 1.0;
    for (int i = 1; i <= n - 3; ++i) binom *= double(j + i) / i;
    return (2.0 * j + n - 2) / (n - 2) * binom;
}

void real_harmonics(int max_degree, const Eigen::Vector3d& v, std::span<double> out) {
    const double t = v(2);
    const double s = std::hypot(v(0), v(1));
    const int L = max_degree;
    // Fully normalized associated Legendre functions Pbar[j][m], 4pi norm.
    std::vector<double> pb((L + 1) * (L + 1), 0.0);
    auto P = [&](int j, int m) -> double& { return pb[j * (L + 1) + m]; };
    P(0, 0) = 1.0;
    if (L >= 1) P(1, 1) = std::sqrt(3.0) * s;
    for (int m = 2; m <= L; ++m) P(m, m) = std::sqrt((2.0 * m + 1) / (2.0 * m)) * s * P(m - 1, m - 1);
    for (int m = 0; m < L; ++m) P(m + 1, m) = std::sqrt(2.0 * m + 3) * t * P(m, m);
    for (int m = 0; m <= L; ++m) {
        for (int j = m + 2; j <= L; ++j) {
            const double a = std::sqrt((2.0 * j - 1) * (2.0 * j + 1) / ((j - m) * double(j + m)));
            const double b = std::sqrt((2.0 * j + 1) * (j + m - 1) * double(j - m - 1) /
                                       ((j - m) * double(j + m) * (2.0 * j - 3)));
            P(j, m) = a * t * P(j - 1, m) - b * P(j - 2, m);
        }
    }
    double cphi = 1.0, sphi = 0.0;
    if (s > 0.0) {
        cphi = v(0) / s;
        sphi = v(1) / s;
    }
    std::vector<double> cm(L + 1), sm(L + 1);
    cm[0] = 1.0;
    sm[0] = 0.0;
    for (int m = 1; m <= L; ++m) {
        cm[m] = cm[m - 1] * cphi - sm[m - 1] * sphi;
        sm[m] = sm[m - 1] * cphi + cm[m - 1] * sphi;
    }
    for (int j = 0; j <= L; ++j) {
        out[harmonic_index(j, 0)] = P(j, 0);
        for (int m = 1; m <= j; ++m) {
            out[harmonic_index(j, m)] = P(j, m) * cm[m];
            out[harmonic_index(j, -m)] = P(j, m) * sm[m];
        }
    }
}

HarmonicSpectrum::HarmonicSpectrum(int n, int max_degree, std::optional<Direction> pole,
                                   std::vector<cd> coeffs)
    : n_(n), max_degree_(max_degree), pole_(std::move(pole)), coeffs_(std::move(coeffs)) {}

HarmonicSpectrum HarmonicSpectrum::full(int max_degree, std::vector<cd> coefficients) {
    if (max_degree < 0) throw InvalidArgument("spectrum: negative degree");
    if (coefficients.size() != std::size_t((max_degree + 1) * (max_degree + 1)))
        throw InvalidArgument("spectrum: full table needs (J+1)^2 coefficients");
    return HarmonicSpectrum(3, max_degree, std::nullopt, std::move(coefficients));
}

HarmonicSpectrum HarmonicSpectrum::zonal(int n, int max_degree, Direction pole, std::vector<cd> by_degree) {
    if (n < 3) throw InvalidArgument("spectrum: n must be >= 3");
    if (pole.dim() != n) throw InvalidArgument("spectrum: pole dimension mismatch");
    if (by_degree.size() != std::size_t(max_degree + 1))
        throw InvalidArgument("spectrum: zonal table needs J+1 coefficients");
    return HarmonicSpectrum(n, max_degree, std::move(pole), std::move(by_degree));
}

cd HarmonicSpectrum::coefficient(int j, int m) const {
    if (j < 0 || j > max_degree_) return 0.0;
    if (is_zonal()) return m == 0 ? coeffs_[j] : cd(0.0);
    if (std::abs(m) > j) return 0.0;
    return coeffs_[harmonic_index(j, m)];
}

cd HarmonicSpectrum::evaluate(const Eigen::VectorXd& v) const {
    if (v.size() != n_) throw InvalidArgument("spectrum: evaluation point has wrong dimension");
    const int L = max_degree_;
    if (is_zonal()) {
        std::vector<double> z(L + 1);
        zonal_profiles(L, n_, std::clamp(pole_->dot(v), -1.0, 1.0), z);
        cd sum = 0.0;
        for (int j = 0; j <= L; ++j) sum += coeffs_[j] * z[j];
        return sum;
    }
    std::vector<double> y((L + 1) * (L + 1));
    real_harmonics(L, v.head<3>(), y);
    cd sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) sum += coeffs_[i] * y[i];
    return sum;
}

PointFunction HarmonicSpectrum::as_function() const {
    return [s = *this](const Eigen::VectorXd& v) { return s.evaluate(v); };
}

HarmonicSpectrum HarmonicSpectrum::scaled(const std::function<cd(int)>& multiplier) const {
    std::vector<cd> c = coeffs_;
    for (int j = 0; j <= max_degree_; ++j) {
        const cd m = multiplier(j);
        if (is_zonal()) {
            c[j] *= m;
        } else {
            for (int k = -j; k <= j; ++k) c[harmonic_index(j, k)] *= m;
        }
    }
    return HarmonicSpectrum(n_, max_degree_, pole_, std::move(c));
}

std::vector<double> HarmonicSpectrum::degree_norms() const {
    std::vector<double> out(max_degree_ + 1, 0.0);
    for (int j = 0; j <= max_degree_; ++j) {
        if (is_zonal()) {
            out[j] = std::abs(coeffs_[j]) / std::sqrt(harmonic_dimension(n_, j));
        } else {
            double s = 0.0;
            for (int m = -j; m <= j; ++m) s += std::norm(coeffs_[harmonic_index(j, m)]);
            out[j] = std::sqrt(s);
        }
    }
    return out;
}

BandLimit HarmonicSpectrum::band() const { return BandLimit{max_degree_, pole_}; }

namespace {

// Harmonic values at every node of a grid, cached per (grid, degree).
std::shared_ptr<const Eigen::MatrixXd> full_basis(const GridPtr& grid, int L) {
    static std::mutex mu;
    static std::map<std::pair<const QuadratureGrid*, int>,
                    std::pair<std::weak_ptr<const QuadratureGrid>, std::shared_ptr<const Eigen::MatrixXd>>>
        cache;
    std::lock_guard lock(mu);
    const auto key = std::make_pair(grid.get(), L);
    if (auto it = cache.find(key); it != cache.end()) {
        if (auto alive = it->second.first.lock(); alive == grid) return it->second.second;
        cache.erase(it);
    }
    const auto count = static_cast<Eigen::Index>(grid->size());
    const int K = (L + 1) * (L + 1);
    auto basis = std::make_shared<Eigen::MatrixXd>(count, K);
    std::vector<double> y(K);
    for (Eigen::Index i = 0; i < count; ++i) {
        real_harmonics(L, grid->node(i).head<3>(), y);
        for (int k = 0; k < K; ++k) (*basis)(i, k) = y[k];
    }
    std::shared_ptr<const Eigen::MatrixXd> out = basis;
    std::erase_if(cache, [](const auto& entry) { return entry.second.first.expired(); });
    cache[key] = {grid, out};
    return out;
}

Eigen::MatrixXd zonal_basis(const QuadratureGrid& grid, int n, int L, const Direction& pole) {
    const auto count = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd basis(count, L + 1);
    std::vector<double> z(L + 1);
    for (Eigen::Index i = 0; i < count; ++i) {
        zonal_profiles(L, n, std::clamp(pole.dot(grid.node(i)), -1.0, 1.0), z);
        for (int j = 0; j <= L; ++j) basis(i, j) = z[j];
    }
    return basis;
}

}  // namespace

HarmonicSpectrum analyze(const GridFunction& f, int max_degree, std::optional<Direction> pole) {
    const auto& grid = f.grid();
    const int n = grid.dimension();
    if (max_degree < 0) throw InvalidArgument("analyze: negative degree");
    if (grid.exactness_degree() >= 0 && grid.exactness_degree() < 2 * max_degree)
        throw ResolutionError("analyze: grid exactness " + std::to_string(grid.exactness_degree()) +
                              " is below 2J = " + std::to_string(2 * max_degree));

    const auto count = static_cast<Eigen::Index>(f.size());
    Eigen::VectorXcd wf(count);
    for (Eigen::Index i = 0; i < count; ++i) wf(i) = grid.weights()[i] * f[i];

    if (n == 3 && !pole) {
        const auto basis = full_basis(f.grid_ptr(), max_degree);
        const Eigen::VectorXcd c = basis->transpose().cast<cd>() * wf;
        return HarmonicSpectrum::full(max_degree, std::vector<cd>(c.data(), c.data() + c.size()));
    }
    if (!pole && f.band()) pole = f.band()->pole;
    if (!pole) throw InvalidArgument("analyze: n > 3 analysis is zonal and needs a pole");
    const Eigen::MatrixXd basis = zonal_basis(grid, n, max_degree, *pole);
    const Eigen::VectorXcd c = basis.transpose().cast<cd>() * wf;
    std::vector<cd> coeffs(c.data(), c.data() + c.size());
    for (int j = 0; j <= max_degree; ++j) coeffs[j] *= harmonic_dimension(n, j);
    return HarmonicSpectrum::zonal(n, max_degree, *pole, std::move(coeffs));
}

GridFunction synthesize(const HarmonicSpectrum& s, GridPtr grid) {
    if (grid->dimension() != s.dimension()) throw InvalidArgument("synthesize: dimension mismatch");
    const auto coeffs = s.coefficients();
    const Eigen::VectorXcd c = Eigen::Map<const Eigen::VectorXcd>(coeffs.data(), coeffs.size());
    Eigen::VectorXcd values;
    if (s.is_zonal()) {
        values = zonal_basis(*grid, s.dimension(), s.max_degree(), *s.pole()).cast<cd>() * c;
    } else {
        values = full_basis(grid, s.max_degree())->cast<cd>() * c;
    }
    std::vector<cd> v(values.data(), values.data() + values.size());
    return GridFunction(std::move(grid), std::move(v), s.band());
}

SpectralBand spectral_band(const GridFunction& f) {
    if (f.band()) return {f.band()->degree, f.band()->pole, false};
    const int ex = f.grid().exactness_degree();
    const int J = ex >= 0 ? std::min(kDefaultMaxDegree, ex / 2) : kDefaultMaxDegree;
    return {J, std::nullopt, true};
}

HarmonicSpectrum random_even_spectrum(int n, int max_degree, std::uint64_t seed) {
    if (n < 3) throw InvalidArgument("random_even_spectrum: n must be >= 3");
    CounterRng rng(seed, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    if (n == 3) {
        std::vector<cd> c((max_degree + 1) * (max_degree + 1), 0.0);
        for (int j = 0; j <= max_degree; j += 2)
            for (int m = -j; m <= j; ++m) c[harmonic_index(j, m)] = normal(rng) / std::sqrt(2.0 * j + 1);
        return HarmonicSpectrum::full(max_degree, std::move(c));
    }
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) p(i) = normal(rng);
    std::vector<cd> c(max_degree + 1, 0.0);
    for (int j = 0; j <= max_degree; j += 2) c[j] = normal(rng);
    return HarmonicSpectrum::zonal(n, max_degree, Direction::normalized(p), std::move(c));
}

HarmonicSpectrum zonal_spectrum(int n, int j, const Direction& pole) {
    if (n == 3) {
        // Addition theorem: P_j(u.p) = sum_m Y_jm(p) Y_jm(u) / (2j + 1).
        std::vector<cd> c((j + 1) * (j + 1), 0.0);
        std::vector<double> y((j + 1) * (j + 1));
        real_harmonics(j, pole.vector().head<3>(), y);
        for (int m = -j; m <= j; ++m) c[harmonic_index(j, m)] = y[harmonic_index(j, m)] / (2.0 * j + 1);
        return HarmonicSpectrum::full(j, std::move(c));
    }
    std::vector<cd> c(j + 1, 0.0);
    c[j] = 1.0;
    return HarmonicSpectrum::zonal(n, j, pole, std::move(c));
}

}  // namespace cosfunk
