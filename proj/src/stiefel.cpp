#include "cosfunk/stiefel.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <random>

#include "cosfunk/errors.hpp"
#include "cosfunk/harmonics.hpp"
#include "cosfunk/inversion.hpp"
#include "cosfunk/parallel.hpp"
#include "cosfunk/quadrature.hpp"

namespace cosfunk {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr std::int64_t kChunk = 1024;

void check_nk(int n, int k) {
    if (n < 3) throw InvalidArgument("n must be >= 3");
    if (k < 1 || k > n - 1) throw InvalidArgument("need 1 <= k <= n - 1");
}

void check_lambda_pole(cd lambda) {
    const double m = std::round(0.5 * lambda.real());
    if (m >= 0.0 && std::abs(lambda - cd(2.0 * m)) <= 1e-10)
        throw PoleError("lambda lies on the excluded set {0, 2, 4, ...}", lambda);
}

GridPtr cached_sphere_rule(int d, int res) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, GridPtr> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{d, res}];
    if (!slot) slot = sphere_rule(d, res);
    return slot;
}

// Probability-normalized Gauss-Jacobi rule in s on [0, 1] for
// s^beta (1 - s)^alpha.
const Rule1D& unit_jacobi(int N, double alpha, double beta) {
    static std::mutex mu;
    static std::map<std::tuple<int, double, double>, Rule1D> cache;
    std::lock_guard lock(mu);
    auto it = cache.find({N, alpha, beta});
    if (it != cache.end()) return it->second;
    Rule1D r = gauss_jacobi(N, alpha, beta);
    const double mass = r.total_weight();
    for (std::size_t i = 0; i < r.size(); ++i) {
        r.nodes[i] = 0.5 * (1.0 + r.nodes[i]);
        r.weights[i] /= mass;
    }
    return cache.emplace(std::make_tuple(N, alpha, beta), std::move(r)).first->second;
}

struct BetaRule {
    std::vector<double> nodes;
    std::vector<cd> weights;
};

// Rule on [0, 1] for s^b (1 - s)^a with complex b, exact for polynomials of
// degree < N. Real b: Gauss-Jacobi. Complex b: the oscillating s^{i Im b}
// stays in the weight and the weights are fixed by the exact moments
// B(b + 1 + m, a + 1) at the Gauss-Jacobi nodes of the real part.
BetaRule beta_rule(int N, double a, cd b) {
    const Rule1D& base = unit_jacobi(N, a, b.real());
    BetaRule r{base.nodes, {}};
    if (b.imag() == 0.0) {
        const double mass = std::real(beta(b + 1.0, a + 1.0));
        for (double w : base.weights) r.weights.push_back(w * mass);
        return r;
    }
    const auto m = static_cast<Eigen::Index>(base.size());
    // Shifted Legendre basis keeps the moment system well conditioned.
    Eigen::MatrixXcd V(m, m);
    Eigen::VectorXcd rhs(m);
    std::vector<std::vector<double>> coeffs(m);  // P_q(2s - 1) in powers of s
    for (Eigen::Index q = 0; q < m; ++q) {
        std::vector<double> c(q + 1);
        for (Eigen::Index i = 0; i <= q; ++i)
            c[i] = ((q - i) % 2 ? -1.0 : 1.0) * std::exp(std::lgamma(q + i + 1.0) - 2.0 * std::lgamma(i + 1.0) -
                                                         std::lgamma(q - i + 1.0));
        cd mom = 0.0;
        for (Eigen::Index i = 0; i <= q; ++i) mom += c[i] * beta(b + 1.0 + double(i), a + 1.0);
        rhs(q) = mom;
        for (Eigen::Index col = 0; col < m; ++col) {
            double val = 0.0;
            for (Eigen::Index i = q; i >= 0; --i) val = val * base.nodes[col] + c[i];
            V(q, col) = val;
        }
    }
    const Eigen::VectorXcd w = V.fullPivLu().solve(rhs);
    for (Eigen::Index i = 0; i < m; ++i) r.weights.push_back(w(i));
    return r;
}

int sphere_resolution(int band_limit) { return std::max(2, band_limit / 2 + 1); }

Eigen::MatrixXd haar_columns(int m, int k, CounterRng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (;;) {
        Eigen::MatrixXd g(m, k);
        for (int c = 0; c < k; ++c)
            for (int r = 0; r < m; ++r) g(r, c) = normal(rng);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
        const Eigen::MatrixXd R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        bool ok = true;
        for (int i = 0; i < k; ++i) ok = ok && std::abs(R(i, i)) > 1e-12 * g.norm();
        if (!ok) continue;  // rank deficient: probability zero, draw again
        Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, k);
        for (int i = 0; i < k; ++i)
            if (R(i, i) < 0.0) q.col(i) = -q.col(i);
        return q;
    }
}

}  // namespace

// ---------------------------------------------------------------------------

Frame::Frame(Eigen::MatrixXd u) : u_(std::move(u)) {
    check_nk(n(), k());
    const Eigen::MatrixXd gram = u_.transpose() * u_;
    if ((gram - Eigen::MatrixXd::Identity(k(), k())).cwiseAbs().maxCoeff() > 1e-12)
        throw InvalidArgument("frame columns are not orthonormal within 1e-12");
}

Eigen::MatrixXd Frame::null_basis() const {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(u_);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n(), n());
    return q.rightCols(n() - k());
}

Frame haar_sample(int n, int k, CounterRng& rng) {
    check_nk(n, k);
    return Frame(haar_columns(n, k, rng));
}

Frame haar_sample(int n, int k, std::uint64_t seed) {
    CounterRng rng(seed, 0);
    return haar_sample(n, k, rng);
}

// ---------------------------------------------------------------------------

ZonalSum::ZonalSum(int n, int max_degree, std::vector<Term> terms)
    : n_(n), J_(max_degree), terms_(std::move(terms)) {
    if (n < 3 || max_degree < 0) throw InvalidArgument("ZonalSum: need n >= 3, J >= 0");
    for (const auto& t : terms_) {
        if (t.pole.dim() != n) throw InvalidArgument("ZonalSum: pole dimension mismatch");
        if (t.coeffs.size() != std::size_t(max_degree + 1)) throw InvalidArgument("ZonalSum: need J+1 coefficients");
    }
}

ZonalSum ZonalSum::random_even(int n, int max_degree, int poles, std::uint64_t seed) {
    CounterRng rng(seed, 0x5A);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Term> terms;
    for (int p = 0; p < poles; ++p) {
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x(i) = normal(rng);
        std::vector<cd> c(max_degree + 1, 0.0);
        for (int j = 0; j <= max_degree; j += 2) c[j] = normal(rng);
        terms.push_back({Direction::normalized(x), std::move(c)});
    }
    return ZonalSum(n, max_degree, std::move(terms));
}

void ZonalSum::by_degree(const Eigen::VectorXd& v, std::vector<cd>& out) const {
    out.assign(J_ + 1, 0.0);
    thread_local std::vector<double> z;
    z.resize(J_ + 1);
    for (const auto& t : terms_) {
        zonal_profiles(J_, n_, std::clamp(t.pole.dot(v), -1.0, 1.0), z);
        for (int j = 0; j <= J_; ++j) out[j] += t.coeffs[j] * z[j];
    }
}

cd ZonalSum::operator()(const Eigen::VectorXd& v) const {
    thread_local std::vector<cd> parts;
    by_degree(v, parts);
    cd s = 0.0;
    for (cd x : parts) s += x;
    return s;
}

ZonalSum ZonalSum::scaled(const std::function<cd(int)>& multiplier) const {
    std::vector<Term> t = terms_;
    for (auto& term : t)
        for (int j = 0; j <= J_; ++j) term.coeffs[j] *= multiplier(j);
    return ZonalSum(n_, J_, std::move(t));
}

PointFunction ZonalSum::as_function() const {
    return [s = *this](const Eigen::VectorXd& v) { return s(v); };
}

// ---------------------------------------------------------------------------

void funk_k(const VectorFunction& f, int components, int band_limit, const Frame& u, std::vector<cd>& out) {
    const GridPtr inner = cached_sphere_rule(u.n() - u.k(), sphere_resolution(band_limit));
    const Eigen::MatrixXd pts = u.null_basis() * inner->nodes();
    out.assign(components, 0.0);
    std::vector<cd> vals(components);
    for (std::size_t i = 0; i < inner->size(); ++i) {
        f(pts.col(static_cast<Eigen::Index>(i)), vals);
        for (int c = 0; c < components; ++c) out[c] += inner->weights()[i] * vals[c];
    }
}

cd funk_k(const PointFunction& f, int band_limit, const Frame& u, int resolution) {
    if (resolution == 0) resolution = sphere_resolution(band_limit);
    if (2 * resolution - 1 < band_limit)
        throw ResolutionError("funk_k: resolution " + std::to_string(resolution) + " cannot integrate degree " +
                              std::to_string(band_limit));
    const GridPtr inner = cached_sphere_rule(u.n() - u.k(), resolution);
    const Eigen::MatrixXd pts = u.null_basis() * inner->nodes();
    cd sum = 0.0;
    for (std::size_t i = 0; i < inner->size(); ++i)
        sum += inner->weights()[i] * f(pts.col(static_cast<Eigen::Index>(i)));
    return sum;
}

void cosine_k(const VectorFunction& f, int components, int band_limit, const Frame& u, cd lambda,
              std::vector<cd>& out) {
    const int n = u.n(), k = u.k();
    if (!(lambda.real() > -double(k))) throw DomainError("cosine_k requires Re lambda > -k");
    check_lambda_pole(lambda);
    const cd g = stiefel_cosine_normalization(n, k, lambda) / std::real(beta(0.5 * k, 0.5 * (n - k)));
    // s = |u^T v|^2 has density s^{k/2-1} (1-s)^{(n-k)/2-1} / B; after the
    // sphere averages the integrand is a polynomial of degree J/2 in s.
    const int res = sphere_resolution(band_limit);
    const BetaRule srule = beta_rule(band_limit / 2 + 1, 0.5 * (n - k) - 1.0, 0.5 * (double(k) + lambda) - 1.0);
    const GridPtr arule = cached_sphere_rule(k, res);
    const GridPtr brule = cached_sphere_rule(n - k, res);
    const Eigen::MatrixXd ua = u.matrix() * arule->nodes();
    const Eigen::MatrixXd bb = u.null_basis() * brule->nodes();

    out.assign(components, 0.0);
    std::vector<cd> vals(components);
    Eigen::VectorXd v(n);
    for (std::size_t si = 0; si < srule.nodes.size(); ++si) {
        const double s = srule.nodes[si];
        const double rs = std::sqrt(s), rc = std::sqrt(1.0 - s);
        for (std::size_t ai = 0; ai < arule->size(); ++ai) {
            for (std::size_t bi = 0; bi < brule->size(); ++bi) {
                v = rs * ua.col(static_cast<Eigen::Index>(ai)) + rc * bb.col(static_cast<Eigen::Index>(bi));
                f(v, vals);
                const cd ww = srule.weights[si] * arule->weights()[ai] * brule->weights()[bi];
                for (int c = 0; c < components; ++c) out[c] += ww * vals[c];
            }
        }
    }
    for (auto& x : out) x *= g;
}

cd cosine_k(const PointFunction& f, int band_limit, const Frame& u, cd lambda) {
    std::vector<cd> out;
    cosine_k([&](const Eigen::VectorXd& v, std::vector<cd>& o) { o[0] = f(v); }, 1, band_limit, u, lambda, out);
    return out[0];
}

// ---------------------------------------------------------------------------

cd dual_cosine_prefactor(int n, int k, cd lambda) {
    check_nk(n, k);
    check_lambda_pole(lambda);
    return kSqrtPi * gamma(-0.5 * lambda) * rgamma(0.5 * k) * rgamma(0.5 * (double(n) + lambda));
}

namespace {

struct Moments {
    std::int64_t count = 0;
    cd mean = 0.0;
    double m2 = 0.0;

    void add(cd x) {
        ++count;
        const cd d = x - mean;
        mean += d / double(count);
        m2 += std::real(std::conj(d) * (x - mean));
    }
    void merge(const Moments& o) {
        if (o.count == 0) return;
        const std::int64_t total = count + o.count;
        const cd d = o.mean - mean;
        m2 += o.m2 + std::norm(d) * double(count) * double(o.count) / double(total);
        mean += d * (double(o.count) / double(total));
        count = total;
    }
};

// Frames of v^perp (tilt == nullopt) or frames with |u^T v|^2 drawn from
// Beta((k + tilt)/2, (n - k)/2) and the remaining directions Haar.
McEstimate mc_over_frames(const FrameFunction& phi, const Direction& v, int k, std::optional<cd> tilt,
                          std::int64_t samples, std::uint64_t seed) {
    const int n = v.dim();
    check_nk(n, k);
    if (samples < kMinSamples)
        throw InsufficientSamples("need at least " + std::to_string(kMinSamples) + " samples");
    const Eigen::MatrixXd C = orthonormal_complement(v.vector());
    const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<Moments> parts(chunks);
    parallel_for(std::size_t(chunks), [&](std::size_t c) {
        CounterRng rng(seed, c + 1);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::optional<std::gamma_distribution<double>> ga, gb;
        if (tilt) {
            ga.emplace(0.5 * (k + tilt->real()), 1.0);
            gb.emplace(0.5 * (n - k), 1.0);
        }
        const std::int64_t begin = std::int64_t(c) * kChunk;
        const std::int64_t end = std::min(samples, begin + kChunk);
        Moments m;
        for (std::int64_t i = begin; i < end; ++i) {
            const Eigen::MatrixXd w0 = C * haar_columns(n - 1, k, rng);
            if (!tilt) {
                m.add(phi(Frame(w0)));
                continue;
            }
            const double x = (*ga)(rng), y = (*gb)(rng);
            const double s = x / (x + y);
            Eigen::VectorXd a(k);
            do {
                for (int r = 0; r < k; ++r) a(r) = normal(rng);
            } while (a.norm() == 0.0);
            a.normalize();
            const double rho = std::sqrt(s);
            const Eigen::MatrixXd M =
                Eigen::MatrixXd::Identity(k, k) - (1.0 - std::sqrt(1.0 - s)) * a * a.transpose();
            const Eigen::MatrixXd u = v.vector() * (rho * a).transpose() + w0 * M;
            cd val = phi(Frame(u));
            if (tilt->imag() != 0.0) val *= std::exp(cd(0.0, tilt->imag() * std::log(rho)));
            m.add(val);
        }
        parts[c] = m;
    });
    Moments total;
    for (const auto& p : parts) total.merge(p);
    const double var = total.count > 1 ? total.m2 / double(total.count - 1) : 0.0;
    return {total.mean, std::sqrt(var / double(total.count)), total.count};
}

}  // namespace

McEstimate dual_funk_k(const FrameFunction& phi, const Direction& v, int k, std::int64_t samples, std::uint64_t seed) {
    return mc_over_frames(phi, v, k, std::nullopt, samples, seed);
}

McEstimate dual_cosine_k(const FrameFunction& phi, const Direction& v, int k, cd lambda, std::int64_t samples,
                         std::uint64_t seed) {
    if (!(lambda.real() > -double(k))) throw DomainError("dual_cosine_k requires Re lambda > -k");
    const int n = v.dim();
    // Sampling uses Beta((k + Re lambda)/2, (n-k)/2); the imaginary part stays
    // in the estimator as rho^{i Im lambda}.
    const cd pre = stiefel_cosine_normalization(n, k, lambda) *
                   std::real(beta(0.5 * (k + lambda.real()), 0.5 * (n - k)) / beta(0.5 * k, 0.5 * (n - k)));
    McEstimate e = mc_over_frames(phi, v, k, lambda, samples, seed);
    e.mean *= pre;
    e.std_error *= std::abs(pre);
    return e;
}

// ---------------------------------------------------------------------------

namespace {

// E[Z_j(r sigma)], sigma the first coordinate of a uniform point on S^{d-1}.
double subsphere_profile_mean(int j, int n, int d, double r) {
    if (d == 1) return 0.5 * (zonal_eval(j, n, r) + zonal_eval(j, n, -r));
    const double a = 0.5 * (d - 3);
    const Rule1D& rule = unit_jacobi(j / 2 + 8, a, a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * zonal_eval(j, n, r * (2.0 * rule.nodes[i] - 1.0));
    return s;
}

}  // namespace

double funk_k_composite_multiplier(int j, int n, int k) {
    check_nk(n, k);
    return subsphere_profile_mean(j, n, n - k, 1.0);
}

cd dual_cosine_of_funk_multiplier(int j, int n, int k, cd lambda) {
    check_nk(n, k);
    if (!(lambda.real() > -double(k))) throw DomainError("reduction requires Re lambda > -k");
    check_lambda_pole(lambda);
    // G_j(sqrt(1 - s)) is a polynomial of degree j/2 in s.
    const BetaRule rule = beta_rule(j / 2 + 1, 0.5 * (n - k) - 1.0, 0.5 * (double(k) + lambda) - 1.0);
    cd sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * subsphere_profile_mean(j, n, n - k, std::sqrt(1.0 - rule.nodes[i]));
    return stiefel_cosine_normalization(n, k, lambda) * sum / std::real(beta(0.5 * k, 0.5 * (n - k)));
}

cd dual_funk_of_cosine_multiplier(int j, int n, int k, cd lambda) {
    check_nk(n, k);
    if (!(lambda.real() > -double(k)) || !(lambda.real() > 1.0 - n))
        throw DomainError("reduction requires Re lambda > max(-k, 1-n)");
    KernelProfile kernel;
    kernel.name = "sine-power";
    kernel.regular = [](double) { return cd(1.0); };
    kernel.sphere_power = 0.5 * lambda;
    const cd tau_mean = funk_hecke_multiplier_quadrature(kernel, j, n);
    cd ratio = 1.0;
    if (k < n - 1) ratio = beta(0.5 * (double(k) + lambda), 0.5 * (n - 1 - k)) / beta(0.5 * k, 0.5 * (n - 1 - k));
    return stiefel_cosine_normalization(n, k, lambda) * tau_mean * ratio;
}

// ---------------------------------------------------------------------------

std::string to_string(StiefelIdentity id) {
    switch (id) {
        case StiefelIdentity::factorization: return "4.8";
        case StiefelIdentity::sine_inversion: return "4.9";
        case StiefelIdentity::funk_k_odd: return "thm4.1-i";
        case StiefelIdentity::funk_k_even: return "thm4.1-ii";
        case StiefelIdentity::cosine1_even: return "4.13";
        case StiefelIdentity::cosine1_odd: return "4.14";
    }
    return "unknown";
}

StiefelIdentity stiefel_identity_from_string(const std::string& s) {
    if (s == "4.8") return StiefelIdentity::factorization;
    if (s == "4.9") return StiefelIdentity::sine_inversion;
    if (s == "thm4.1-i") return StiefelIdentity::funk_k_odd;
    if (s == "thm4.1-ii") return StiefelIdentity::funk_k_even;
    if (s == "4.13") return StiefelIdentity::cosine1_even;
    if (s == "4.14") return StiefelIdentity::cosine1_odd;
    throw InvalidArgument("unknown identity '" + s + "'");
}

namespace {

// Degree-wise weights w_j and the per-degree forward reduction r_j such that
// the identity reads w_j * r_j = 1.
struct Chain {
    std::function<cd(int)> weight;
    std::function<cd(int)> reduction;
};

std::uint64_t substream_seed(std::uint64_t seed, int index) {
    return seed ^ (0x9E3779B97F4A7C15ULL * std::uint64_t(index + 1));
}

Direction test_direction(int n, std::uint64_t seed) {
    CounterRng rng(seed, 0xD1);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = normal(rng);
    return Direction::normalized(x);
}

void finalize(StiefelReport& r) {
    double worst = -1.0;
    for (const auto& c : r.mc_checks) {
        const double ratio = c.sigma > 0.0 ? c.error / c.sigma : (c.error > 0.0 ? INFINITY : 0.0);
        if (ratio > worst) {
            worst = ratio;
            r.mc_error = c.error;
            r.mc_sigma = c.sigma;
        }
    }
}

// Weighted degree sum of a frame transform of f: X(u) = sum_j w_j T f_j(u).
FrameFunction weighted_frame_sum(const ZonalSum& f, const std::function<cd(int)>& weight, bool cosine, cd lambda) {
    const int J = f.max_degree();
    std::vector<cd> w(J + 1);
    for (int j = 0; j <= J; ++j) w[j] = j % 2 ? cd(0.0) : weight(j);
    return [f, w, J, cosine, lambda](const Frame& u) {
        std::vector<cd> parts;
        const VectorFunction fv = [&f](const Eigen::VectorXd& v, std::vector<cd>& o) { f.by_degree(v, o); };
        if (cosine)
            cosine_k(fv, J + 1, J, u, lambda, parts);
        else
            funk_k(fv, J + 1, J, u, parts);
        cd s = 0.0;
        for (int j = 0; j <= J; ++j) s += w[j] * parts[j];
        return s;
    };
}

}  // namespace

StiefelReport stiefel_check(StiefelIdentity id, int n, int k, cd lambda, const StiefelCheckOptions& opt) {
    check_nk(n, k);
    if (opt.spectral_degree < 0 || opt.mc_degree < 0) throw InvalidArgument("degrees must be >= 0");
    StiefelReport r;
    r.identity = to_string(id);
    r.n = n;
    r.k = k;
    r.max_degree = opt.spectral_degree;
    r.samples = opt.samples;
    r.seed = opt.seed;
    const double cnk = stiefel_constant(n, k);

    Chain chain;
    bool mc_possible = true;
    bool dual_is_cosine = false;  // outer dual: C*^{lambda_dual}_k or F*_k
    bool inner_is_cosine = false; // inner frame transform: C^{lambda_inner}_k or F_k
    cd lambda_dual = 0.0, lambda_inner = 0.0;

    switch (id) {
        case StiefelIdentity::factorization: {
            if (!(lambda.real() > -double(k)) || !(lambda.real() > 1.0 - n))
                throw InvalidArgument("4.8 check needs Re lambda > max(-k, 1-n)");
            r.lambda = lambda;
            const auto s = degreewise(OperatorTag::sine, n, lambda);
            for (int j = 0; j <= opt.spectral_degree; j += 2) {
                const cd a = cnk * dual_cosine_of_funk_multiplier(j, n, k, lambda) / s(j);
                const cd b = cnk * dual_funk_of_cosine_multiplier(j, n, k, lambda) / s(j);
                r.degrees.push_back(j);
                r.chain.push_back(a);
                r.spectral_error = std::max({r.spectral_error, std::abs(a - 1.0), std::abs(b - 1.0)});
            }
            break;
        }
        case StiefelIdentity::sine_inversion: {
            r.lambda = 1.0 - n;
            // Continue the quadrature reduction to lambda = 1 - n through the
            // weighted operator when an admissible lambda' = 1 - n + 2 ell exists.
            int ell = -1;
            for (int l = 0; l <= n; ++l) {
                const double lp = 1.0 - n + 2.0 * l;
                const double m = std::round(0.5 * lp);
                if (lp > -double(k) && !(m >= 0.0 && std::abs(lp - 2.0 * m) < 1e-12)) {
                    ell = l;
                    break;
                }
            }
            const auto s = degreewise(OperatorTag::sine, n, 1.0 - n);
            for (int j = 0; j <= opt.spectral_degree; j += 2) {
                cd v;
                if (ell >= 0) {
                    v = cnk * delta_op_eigenvalue(j, n, 1.0 - n, ell) *
                        dual_cosine_of_funk_multiplier(j, n, k, 1.0 - n + 2.0 * ell);
                } else {
                    v = s(j);
                }
                r.degrees.push_back(j);
                r.chain.push_back(v);
                r.spectral_error = std::max(r.spectral_error, std::abs(v - 1.0));
            }
            r.note = ell >= 0 ? "reduction at lambda' = " + std::to_string(1 - n + 2 * ell) +
                                    " continued by the weighted operator of order " + std::to_string(ell)
                              : "no admissible lambda' = 1-n+2l > -k; chain evaluated through the sine multiplier";
            r.note += "; no Monte-Carlo path: lambda = 1-n is outside Re lambda > -k";
            mc_possible = false;
            break;
        }
        case StiefelIdentity::funk_k_odd: {
            if ((n - k) % 2 == 0) throw InvalidArgument("Theorem 4.1(i) needs n - k odd");
            const int ell = (n - k - 1) / 2;
            const double c = cnk * stiefel_limit_constant(n, k);
            chain.weight = [=](int j) { return c * delta_op_eigenvalue(j, n, 1.0 - n, ell); };
            chain.reduction = [=](int j) { return cd(funk_k_composite_multiplier(j, n, k)); };
            r.lambda = 1.0 - n;
            r.note = "f = c_{n,k} mu_k Delta_{1-n," + std::to_string(ell) + "} F*_k F_k f";
            break;
        }
        case StiefelIdentity::funk_k_even: {
            if ((n - k) % 2 != 0) throw InvalidArgument("Theorem 4.1(ii) needs n - k even");
            if (k == 1)
                throw ExcludedComponent("Theorem 4.1(ii) is inapplicable for k = 1: gamma_k(lambda) has a pole at 0");
            const int ell = (n - k) / 2;
            const cd lam = 1.0 - k;
            chain.weight = [=](int j) { return cnk * delta_op_eigenvalue(j, n, 1.0 - n, ell); };
            chain.reduction = [=](int j) { return dual_cosine_of_funk_multiplier(j, n, k, lam); };
            dual_is_cosine = true;
            lambda_dual = lam;
            r.lambda = lam;
            r.note = "f = c_{n,k} Delta_{1-n," + std::to_string(ell) + "} C*^{1-k}_k F_k f";
            break;
        }
        case StiefelIdentity::cosine1_even: {
            if (n % 2 != 0) throw InvalidArgument("4.13 needs n even");
            const int ell = n / 2;
            chain.weight = [=](int j) { return cnk * delta_op_eigenvalue(j, n, 1.0 - n, ell); };
            chain.reduction = [=](int j) { return dual_funk_of_cosine_multiplier(j, n, k, 1.0); };
            inner_is_cosine = true;
            lambda_inner = 1.0;
            r.lambda = 1.0;
            r.note = "f = c_{n,k} Delta_{1-n," + std::to_string(ell) + "} F*_k C^1_k f";
            break;
        }
        case StiefelIdentity::cosine1_odd: {
            if (n % 2 == 0) throw InvalidArgument("4.14 needs n odd");
            const double c = std::tgamma(0.5 * k) / kSqrtPi;
            const double cn = funk_constant(n);
            const double c0 = cosine1_odd_constant(n);
            chain.weight = [=](int j) -> cd {
                if (j == 0) return c * 1.0 * c0;
                const double lc = log_cosine_multiplier(j, n);
                const cd inv_funk = cn * delta_op_eigenvalue(j, n, 1.0 - n, (n - 1) / 2) * lc;
                const cd inv_cos1 = delta_op_eigenvalue(j, n, -1.0 - n, (n + 1) / 2) * lc;
                return c * inv_funk * inv_cos1;
            };
            chain.reduction = [=](int j) { return dual_funk_of_cosine_multiplier(j, n, k, 1.0); };
            inner_is_cosine = true;
            lambda_inner = 1.0;
            r.lambda = 1.0;
            r.note = "f = c F^{-1} (C^1)^{-1} F*_k C^1_k f, inverses by the log branches";
            break;
        }
    }

    if (chain.weight) {
        for (int j = 0; j <= opt.spectral_degree; j += 2) {
            const cd v = chain.weight(j) * chain.reduction(j);
            r.degrees.push_back(j);
            r.chain.push_back(v);
            r.spectral_error = std::max(r.spectral_error, std::abs(v - 1.0));
        }
    }

    r.mc_applicable = mc_possible && opt.run_mc;
    if (!r.mc_applicable) {
        finalize(r);
        return r;
    }

    const ZonalSum f = ZonalSum::random_even(n, opt.mc_degree, opt.poles, opt.seed);
    const Direction v = test_direction(n, opt.seed);

    if (id == StiefelIdentity::factorization) {
        const cd reference = f.scaled(degreewise(OperatorTag::sine, n, lambda))(v.vector());
        const FrameFunction funk_of_f = weighted_frame_sum(f, [](int) { return cd(1.0); }, false, 0.0);
        const FrameFunction cos_of_f = weighted_frame_sum(f, [](int) { return cd(1.0); }, true, lambda);
        const McEstimate a = dual_cosine_k(funk_of_f, v, k, lambda, opt.samples, substream_seed(opt.seed, 0));
        const McEstimate b = dual_funk_k(cos_of_f, v, k, opt.samples, substream_seed(opt.seed, 1));
        r.mc_checks.push_back({"c_{n,k} C*^lambda_k F_k f", cnk * a.mean, reference, std::abs(cnk * a.mean - reference),
                               cnk * a.std_error});
        r.mc_checks.push_back({"c_{n,k} F*_k C^lambda_k f", cnk * b.mean, reference, std::abs(cnk * b.mean - reference),
                               cnk * b.std_error});
    } else {
        const cd reference = f(v.vector());
        const FrameFunction X = weighted_frame_sum(f, chain.weight, inner_is_cosine, lambda_inner);
        const McEstimate e = dual_is_cosine ? dual_cosine_k(X, v, k, lambda_dual, opt.samples, substream_seed(opt.seed, 0))
                                            : dual_funk_k(X, v, k, opt.samples, substream_seed(opt.seed, 0));
        r.mc_checks.push_back({"reconstruction at v", e.mean, reference, std::abs(e.mean - reference), e.std_error});
    }
    finalize(r);
    return r;
}

StiefelReport invert_funk_k(int n, int k, FunkKMode mode, const StiefelCheckOptions& opt) {
    return stiefel_check(mode == FunkKMode::odd_codimension ? StiefelIdentity::funk_k_odd : StiefelIdentity::funk_k_even,
                         n, k, 0.0, opt);
}

StiefelReport invert_cosine1_k(int n, int k, const StiefelCheckOptions& opt) {
    return stiefel_check(n % 2 == 0 ? StiefelIdentity::cosine1_even : StiefelIdentity::cosine1_odd, n, k, 1.0, opt);
}

}  // namespace cosfunk
