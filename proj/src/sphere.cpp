#include "cosfunk/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cosfunk/errors.hpp"
#include "cosfunk/quadrature.hpp"

namespace cosfunk {

Direction::Direction(Eigen::VectorXd v) : v_(std::move(v)) {
    if (v_.size() < 1) throw InvalidArgument("direction must have at least one component");
    if (std::abs(v_.norm() - 1.0) > 1e-14) throw InvalidArgument("direction is not a unit vector");
}

Direction Direction::normalized(Eigen::VectorXd v) {
    const double r = v.norm();
    if (!(r > 0.0)) throw DomainError("cannot normalize the zero vector");
    Eigen::VectorXd u = v / r;
    // One more pass pushes the norm to within an ulp or two of 1.
    u /= u.norm();
    return Direction(std::move(u));
}

Direction Direction::axis(int n, int i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(i) = 1.0;
    return Direction(std::move(e));
}

QuadratureGrid::QuadratureGrid(Eigen::MatrixXd nodes, std::vector<double> weights,
                               std::vector<int> antipode, int exactness_degree)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), antipode_(std::move(antipode)),
      exactness_(exactness_degree) {
    if (static_cast<std::size_t>(nodes_.cols()) != weights_.size())
        throw InvalidArgument("grid: node and weight counts differ");
    if (!antipode_.empty() && antipode_.size() != weights_.size())
        throw InvalidArgument("grid: antipode map has the wrong size");
}

namespace {

struct RawRule {
    Eigen::MatrixXd nodes;
    std::vector<double> weights;
    std::vector<int> antipode;
};

RawRule raw_sphere_rule(int d, int res) {
    RawRule out;
    if (d == 1) {
        out.nodes = Eigen::MatrixXd(1, 2);
        out.nodes << 1.0, -1.0;
        out.weights = {0.5, 0.5};
        out.antipode = {1, 0};
        return out;
    }
    if (d == 2) {
        const int m = 2 * res;
        out.nodes = Eigen::MatrixXd(2, m);
        out.weights.assign(m, 1.0 / m);
        out.antipode.resize(m);
        for (int k = 0; k < m; ++k) {
            const double phi = 2.0 * std::numbers::pi * k / m;
            out.nodes(0, k) = std::cos(phi);
            out.nodes(1, k) = std::sin(phi);
            out.antipode[k] = (k + res) % m;
        }
        // Exact antipodes (cos/sin of phi + pi are not bitwise negatives).
        for (int k = res; k < m; ++k) out.nodes.col(k) = -out.nodes.col(k - res);
        return out;
    }
    const RawRule inner = raw_sphere_rule(d - 1, res);
    const double a = 0.5 * (d - 3);
    const Rule1D polar = gauss_jacobi(res, a, a);
    const double total = polar.total_weight();
    const auto ni = static_cast<int>(inner.weights.size());
    const int count = res * ni;
    out.nodes = Eigen::MatrixXd(d, count);
    out.weights.resize(count);
    out.antipode.resize(count);
    for (int i = 0; i < res; ++i) {
        const double t = polar.nodes[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
        for (int k = 0; k < ni; ++k) {
            const int idx = i * ni + k;
            out.nodes(0, idx) = t;
            out.nodes.block(1, idx, d - 1, 1) = s * inner.nodes.col(k);
            out.weights[idx] = polar.weights[i] / total * inner.weights[k];
            out.antipode[idx] = (res - 1 - i) * ni + inner.antipode[k];
        }
    }
    return out;
}

}  // namespace

GridPtr sphere_rule(int d, int resolution) {
    if (d < 1) throw InvalidArgument("sphere_rule: dimension must be >= 1");
    if (resolution < 1) throw InvalidArgument("sphere_rule: resolution must be >= 1");
    RawRule r = raw_sphere_rule(d, resolution);
    // S^0 integrates every even function exactly and no odd one, but the
    // degree bookkeeping of callers only relies on even integrands.
    const int exact = d == 1 ? 1 : 2 * resolution - 1;
    return std::make_shared<const QuadratureGrid>(std::move(r.nodes), std::move(r.weights),
                                                  std::move(r.antipode), exact);
}

GridPtr build_grid(int n, int resolution) {
    if (n < 3) throw InvalidArgument("build_grid: n must be >= 3");
    if (resolution < 4) throw InvalidArgument("build_grid: resolution must be >= 4");
    return sphere_rule(n, resolution);
}

GridFunction::GridFunction(GridPtr grid, std::vector<cd> values, std::optional<BandLimit> band)
    : grid_(std::move(grid)), values_(std::move(values)), band_(std::move(band)) {
    if (!grid_) throw InvalidArgument("grid function without grid");
    if (values_.size() != grid_->size()) throw InvalidArgument("sample count must equal node count");
}

GridFunction GridFunction::sample(GridPtr grid, const PointFunction& f, std::optional<BandLimit> band) {
    std::vector<cd> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid->node(i));
    return GridFunction(std::move(grid), std::move(v), std::move(band));
}

GridFunction GridFunction::constant(GridPtr grid, cd value) {
    std::vector<cd> v(grid->size(), value);
    return GridFunction(std::move(grid), std::move(v), BandLimit{0, std::nullopt});
}

GridFunction GridFunction::with_band(std::optional<BandLimit> band) const {
    GridFunction g = *this;
    g.band_ = std::move(band);
    return g;
}

GridFunction GridFunction::with_provenance(Provenance p) const {
    GridFunction g = *this;
    g.provenance_ = std::move(p);
    return g;
}

namespace {

void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (a.grid_ptr() != b.grid_ptr() && a.size() != b.size())
        throw InvalidArgument("grid functions live on different grids");
}

std::optional<BandLimit> combine_bands(const GridFunction& a, const GridFunction& b) {
    const auto& ba = a.band();
    const auto& bb = b.band();
    if (!ba || !bb) return std::nullopt;
    BandLimit out{std::max(ba->degree, bb->degree), std::nullopt};
    if (a.dimension() == 3) return out;
    if (ba->pole && bb->pole) {
        if ((ba->pole->vector() - bb->pole->vector()).norm() > 1e-14) return std::nullopt;
        out.pole = ba->pole;
    } else {
        out.pole = ba->pole ? ba->pole : bb->pole;
    }
    return out;
}

template <class Op>
GridFunction combine(const GridFunction& a, const GridFunction& b, Op op) {
    require_same_grid(a, b);
    std::vector<cd> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(a[i], b[i]);
    return GridFunction(a.grid_ptr(), std::move(v), combine_bands(a, b));
}

}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    return combine(a, b, std::plus<cd>{});
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    return combine(a, b, std::minus<cd>{});
}

GridFunction operator*(cd s, const GridFunction& f) {
    std::vector<cd> v(f.values().begin(), f.values().end());
    for (auto& x : v) x *= s;
    return GridFunction(f.grid_ptr(), std::move(v), f.band());
}

double max_abs(const GridFunction& f) {
    double m = 0.0;
    for (cd x : f.values()) m = std::max(m, std::abs(x));
    return m;
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

cd integrate(const GridFunction& f) {
    const auto& w = f.grid().weights();
    cd sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * f[i];
    return sum;
}

GridFunction even_project(const GridFunction& f) {
    const auto& g = f.grid();
    if (!g.antipodally_paired()) throw UnsupportedGrid("even_project needs an antipodally paired grid");
    std::vector<cd> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (f[i] + f[g.antipode(i)]);
    return GridFunction(f.grid_ptr(), std::move(v), f.band()).with_provenance(f.provenance());
}

GridFunction odd_part(const GridFunction& f) {
    const auto& g = f.grid();
    if (!g.antipodally_paired()) throw UnsupportedGrid("odd_part needs an antipodally paired grid");
    std::vector<cd> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (f[i] - f[g.antipode(i)]);
    return GridFunction(f.grid_ptr(), std::move(v), f.band());
}

GridFunction remove_mean(const GridFunction& f) {
    const cd mean = integrate(f);
    std::vector<cd> v(f.values().begin(), f.values().end());
    for (auto& x : v) x -= mean;
    return GridFunction(f.grid_ptr(), std::move(v), f.band()).with_provenance(f.provenance());
}

cd homogeneous_extension_eval(const PointFunction& f, cd a, const Eigen::VectorXd& x) {
    const double r = x.norm();
    if (!(r > 0.0)) throw DomainError("homogeneous extension is undefined at the origin");
    const cd scale = (a == cd(0.0)) ? cd(1.0) : std::exp(a * std::log(r));
    return scale * f(x / r);
}

Eigen::MatrixXd orthonormal_complement(const Eigen::VectorXd& u) {
    const auto n = u.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return std::abs(u(a)) < std::abs(u(b)); });

    Eigen::MatrixXd basis(n, n - 1);
    int filled = 0;
    for (int idx : order) {
        if (filled == n - 1) break;
        Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
        a(idx) = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            a -= u.dot(a) * u;
            for (int c = 0; c < filled; ++c) a -= basis.col(c).dot(a) * basis.col(c);
        }
        const double r = a.norm();
        if (r < 1e-8) continue;
        basis.col(filled++) = a / r;
        if (n == 3 && filled == 1) {
            const Eigen::Vector3d u3 = u.head<3>();
            const Eigen::Vector3d e1 = basis.col(0).head<3>();
            basis.col(1) = u3.cross(e1);
            filled = 2;
        }
    }
    return basis;
}

void save_grid(const QuadratureGrid& grid, std::ostream& out) {
    out << "# sphere-grid n=" << grid.dimension() << " nodes=" << grid.size() << " exactness=" << grid.exactness_degree()
        << '\n';
    char buf[64];
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (int c = 0; c < grid.dimension(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", grid.node(i)(c));
            out << buf << ' ';
        }
        std::snprintf(buf, sizeof buf, "%.17g", grid.weights()[i]);
        out << buf << '\n';
    }
}

GridPtr load_grid(std::istream& in) {
    std::string header;
    std::getline(in, header);
    int n = 0;
    std::size_t count = 0;
    int exactness = -1;  // unknown unless recorded
    if (std::sscanf(header.c_str(), "# sphere-grid n=%d nodes=%zu exactness=%d", &n, &count, &exactness) < 2 || n < 1)
        throw InvalidArgument("load_grid: malformed header");
    Eigen::MatrixXd nodes(n, static_cast<Eigen::Index>(count));
    std::vector<double> weights(count);
    for (std::size_t i = 0; i < count; ++i) {
        for (int c = 0; c < n; ++c)
            if (!(in >> nodes(c, static_cast<Eigen::Index>(i)))) throw InvalidArgument("load_grid: truncated file");
        if (!(in >> weights[i])) throw InvalidArgument("load_grid: truncated file");
    }
    // Recover the antipodal pairing by exact coordinate lookup.
    std::map<std::vector<double>, int> index;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> key(nodes.col(static_cast<Eigen::Index>(i)).data(),
                                nodes.col(static_cast<Eigen::Index>(i)).data() + n);
        index.emplace(std::move(key), static_cast<int>(i));
    }
    std::vector<int> antipode(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> key(n);
        for (int c = 0; c < n; ++c) key[c] = -nodes(c, static_cast<Eigen::Index>(i));
        auto it = index.find(key);
        if (it == index.end()) {
            antipode.clear();
            break;
        }
        antipode[i] = it->second;
    }
    return std::make_shared<const QuadratureGrid>(std::move(nodes), std::move(weights), std::move(antipode), exactness);
}

}  // namespace cosfunk
