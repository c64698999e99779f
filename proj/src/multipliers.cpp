#include "cosfunk/multipliers.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include "cosfunk/errors.hpp"
#include "cosfunk/harmonics.hpp"
#include "cosfunk/quadrature.hpp"

namespace cosfunk {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

double rgamma_real(double x) { return std::real(rgamma(cd(x))); }

void check_n(int n) {
    if (n < 3) throw InvalidArgument("dimension n must be >= 3");
}

void check_even(int j, const char* what) {
    if (j < 0 || j % 2 != 0) throw InvalidArgument(std::string(what) + ": degree must be even and nonnegative");
}

// Gamma(-lambda/2) raises at lambda in {0, 2, 4, ...}; report lambda itself.
cd gamma_neg_half(cd lambda) {
    if (is_gamma_pole(-0.5 * lambda)) throw PoleError("normalization pole at lambda in {0,2,4,...}", lambda);
    return gamma(-0.5 * lambda);
}

}  // namespace

cd cosine_normalization(int n, cd lambda) {
    check_n(n);
    return kSqrtPi * gamma_neg_half(lambda) * rgamma(0.5 * n) * rgamma(0.5 * (lambda + 1.0));
}

cd stiefel_cosine_normalization(int n, int k, cd lambda) {
    check_n(n);
    if (k < 1 || k > n - 1) throw InvalidArgument("need 1 <= k <= n-1");
    return kSqrtPi * gamma_neg_half(lambda) * rgamma(0.5 * n) * rgamma(0.5 * (lambda + double(k)));
}

cd sine_normalization(int n, cd lambda) {
    check_n(n);
    return kSqrtPi * gamma_neg_half(lambda) * rgamma(0.5 * n) * rgamma(0.5 * (double(n) - 1.0 + lambda));
}

double funk_constant(int n) {
    check_n(n);
    return kSqrtPi * rgamma_real(0.5 * (n - 1));
}

double stiefel_constant(int n, int k) {
    check_n(n);
    if (k < 1 || k > n - 1) throw InvalidArgument("need 1 <= k <= n-1");
    return std::tgamma(0.5 * k) * rgamma_real(0.5 * (n - 1));
}

double stiefel_limit_constant(int n, int k) {
    check_n(n);
    if (k < 1 || k > n - 1) throw InvalidArgument("need 1 <= k <= n-1");
    return kSqrtPi * rgamma_real(0.5 * (n - k));
}

double projection_density_constant(int n) {
    check_n(n);
    return std::tgamma(0.5 * n) / (kSqrtPi * std::tgamma(0.5 * (n - 1)));
}

double log_cosine_constant(int n) {
    check_n(n);
    return 2.0 / std::tgamma(0.5 * n);
}

double log_sine_constant(int n) {
    check_n(n);
    return kSqrtPi / (std::tgamma(0.5 * n) * std::tgamma(0.5 * (n - 1)));
}

// ---------------------------------------------------------------------------

cd KernelProfile::operator()(double t) const {
    const double a = std::abs(t);
    cd v = regular(a);
    if (zero_power != 0.0) v *= std::exp(zero_power * std::log(a));
    if (sphere_power != 0.0) v *= std::exp(sphere_power * std::log((1.0 - a) * (1.0 + a)));
    if (log_weight) v *= log_weight(a);
    return v;
}

KernelProfile constant_kernel(cd value) {
    KernelProfile k;
    k.name = "constant";
    k.regular = [value](double) { return value; };
    return k;
}

KernelProfile cosine_kernel(int n, cd lambda) {
    const cd g = cosine_normalization(n, lambda);
    KernelProfile k;
    k.name = "cosine";
    k.zero_power = lambda;
    k.regular = [g](double) { return g; };
    return k;
}

KernelProfile sine_kernel(int n, cd lambda) {
    const cd d = sine_normalization(n, lambda);
    KernelProfile k;
    k.name = "sine";
    k.sphere_power = 0.5 * lambda;
    k.regular = [d](double) { return d; };
    return k;
}

KernelProfile log_cosine_kernel(int n) {
    const double c = log_cosine_constant(n);
    KernelProfile k;
    k.name = "log-cosine";
    k.regular = [c](double) { return cd(c); };
    k.log_weight = [](double a) { return -std::log(a); };
    return k;
}

KernelProfile log_sine_kernel(int n) {
    const double c = log_sine_constant(n);
    KernelProfile k;
    k.name = "log-sine";
    k.regular = [c](double) { return cd(c); };
    k.log_weight = [](double a) { return -std::log((1.0 - a) * (1.0 + a)); };
    return k;
}

namespace {

// Graded composite rule on (0, 1) for t^beta (1 - t^2)^e with complex
// exponents: Gauss-Legendre on dyadic cells toward both ends, and one node
// with the exact leading-order moment on each innermost cell.
void graded_complex_half(cd beta, cd e, int per_cell, std::vector<double>& t, std::vector<cd>& w) {
    const Rule1D gl = gauss_legendre(per_cell);
    auto depth = [](double re) { return std::min(2000, int(std::ceil(50.0 / (re + 1.0)))); };
    // Left half in t, right half in u = 1 - t (weights from u to avoid rounding).
    for (int side = 0; side < 2; ++side) {
        const cd p = side == 0 ? beta : e;
        const int L = depth(p.real());
        for (int l = 1; l <= L; ++l) {
            const double hi = std::ldexp(1.0, -l), lo = std::ldexp(1.0, -l - 1);
            for (std::size_t i = 0; i < gl.size(); ++i) {
                const double s = lo + 0.5 * (hi - lo) * (1.0 + gl.nodes[i]);
                const double ws = 0.5 * (hi - lo) * gl.weights[i];
                const double x = side == 0 ? s : 1.0 - s;
                const double one_minus = side == 0 ? 1.0 - s : s;
                t.push_back(x);
                w.push_back(ws * std::exp(beta * std::log(x) + e * std::log(one_minus * (1.0 + x))));
            }
        }
        const double d = std::ldexp(1.0, -L - 1);
        const double x = side == 0 ? 0.5 * d : 1.0 - 0.5 * d;
        t.push_back(x);
        cd moment = std::exp((p + 1.0) * std::log(d)) / (p + 1.0);
        moment *= side == 0 ? std::exp(e * std::log(1.0 - x * x)) : std::exp(e * std::log(1.0 + x) + beta * std::log(x));
        w.push_back(moment);
    }
}

}  // namespace

KernelRule kernel_rule(const KernelProfile& kernel, int n, int nodes_per_half) {
    check_n(n);
    if (nodes_per_half < 1) throw InvalidArgument("kernel_rule: need at least one node");
    const double A = projection_density_constant(n);
    const cd e = kernel.sphere_power + 0.5 * (n - 3);  // total (1 - t^2) exponent
    const cd beta = kernel.zero_power;
    if (!(beta.real() > -1.0) || !(e.real() > -1.0))
        throw DivergenceError("kernel '" + kernel.name + "' is not integrable against the sphere measure");

    // Half-interval rule on (0, 1) for t^beta (1 - t)^e (1 + t)^e [* log weight].
    std::vector<double> t;
    std::vector<cd> w;
    if (beta.imag() != 0.0 || e.imag() != 0.0) {
        if (kernel.log_weight) throw InvalidArgument("kernel_rule: log weight with complex exponents");
        graded_complex_half(beta, e, std::max(8, nodes_per_half / 3), t, w);
    } else if (!kernel.log_weight) {
        const Rule1D gj = gauss_jacobi(nodes_per_half, e.real(), beta.real());
        const double scale = std::pow(2.0, -(e.real() + beta.real() + 1.0));
        for (int i = 0; i < nodes_per_half; ++i) {
            t.push_back(0.5 * (1.0 + gj.nodes[i]));
            w.push_back(gj.weights[i] * scale * std::pow(1.0 + t.back(), e.real()));
        }
    } else {
        const auto& lw = kernel.log_weight;
        const double b = beta.real(), er = e.real();
        const Rule1D g = gauss_from_weight(
            [&](double x) { return lw(x) * std::pow(x, b) * std::pow((1.0 - x) * (1.0 + x), er); }, nodes_per_half);
        t = g.nodes;
        w.assign(g.weights.begin(), g.weights.end());
    }

    const std::size_t m = t.size();
    KernelRule rule;
    rule.t.reserve(2 * m);
    rule.w.reserve(2 * m);
    for (std::size_t i = m; i-- > 0;) {
        rule.t.push_back(-t[i]);
        rule.w.push_back(A * w[i] * kernel.regular(t[i]));
    }
    for (std::size_t i = 0; i < m; ++i) {
        rule.t.push_back(t[i]);
        rule.w.push_back(A * w[i] * kernel.regular(t[i]));
    }
    return rule;
}

namespace {

cd apply_rule(const KernelRule& rule, int j, int n) {
    std::vector<double> z(j + 1);
    cd sum = 0.0;
    for (std::size_t i = 0; i < rule.t.size(); ++i) {
        zonal_profiles(j, n, rule.t[i], z);
        sum += rule.w[i] * z[j];
    }
    return sum;
}

}  // namespace

cd funk_hecke_multiplier_quadrature(const KernelProfile& kernel, int j, int n) {
    if (j < 0) throw InvalidArgument("funk_hecke: negative degree");
    const int base = std::max(24, j / 2 + 16);
    const cd coarse = apply_rule(kernel_rule(kernel, n, base), j, n);
    const cd fine = apply_rule(kernel_rule(kernel, n, 2 * base), j, n);
    if (!std::isfinite(fine.real()) || !std::isfinite(fine.imag()))
        throw DivergenceError("funk_hecke: quadrature produced a non-finite value");
    if (std::abs(fine - coarse) > 1e-6 * std::max(1.0, std::abs(fine)))
        throw DivergenceError("funk_hecke: refinement does not converge for kernel '" + kernel.name + "'");
    return fine;
}

cd funk_hecke_multiplier_quadrature(const std::function<cd(double)>& kernel, int j, int n) {
    check_n(n);
    if (j < 0) throw InvalidArgument("funk_hecke: negative degree");
    const double A = projection_density_constant(n);
    const double a = 0.5 * (n - 3);
    auto at = [&](int N) {
        const Rule1D r = gauss_jacobi(N, a, a);
        std::vector<double> z(j + 1);
        cd sum = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            zonal_profiles(j, n, r.nodes[i], z);
            sum += r.weights[i] * kernel(r.nodes[i]) * z[j];
        }
        return A * sum;
    };
    // Even node counts avoid t = 0, where |t|^lambda kernels are singular.
    const cd v1 = at(64), v2 = at(256), v3 = at(1024);
    if (!std::isfinite(std::abs(v3))) throw DivergenceError("funk_hecke: non-finite kernel values");
    const double d1 = std::abs(v2 - v1), d2 = std::abs(v3 - v2);
    if (d2 <= 1e-10 * std::max(1.0, std::abs(v3))) return v3;
    if (d2 > 0.95 * d1) throw DivergenceError("funk_hecke: refinement diverges (kernel not integrable)");
    return v3;
}

// ---------------------------------------------------------------------------

cd cosine_multiplier_closed_form(int j, int n, cd lambda) {
    check_n(n);
    if (j < 0) throw InvalidArgument("cosine multiplier: negative degree");
    if (j % 2 != 0) return 0.0;
    const cd a = 0.5 * (double(j) - lambda);
    if (is_gamma_pole(a)) throw PoleError("cosine multiplier pole at lambda in {j, j+2, ...}", lambda);
    const double sign = (j / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * gamma_ratio(a, 0.5 * (double(j) + lambda + double(n)));
}

cd cosine_multiplier(int j, int n, cd lambda) {
    check_even(j, "cosine_multiplier");
    require_gate();
    return cosine_multiplier_closed_form(j, n, lambda);
}

double funk_multiplier(int j, int n) {
    check_even(j, "funk_multiplier");
    require_gate();
    return std::real(cosine_multiplier_closed_form(j, n, -1.0)) / funk_constant(n);
}

cd sine_multiplier(int j, int n, cd lambda) {
    check_even(j, "sine_multiplier");
    require_gate();
    return cosine_multiplier_closed_form(j, n, lambda) * cosine_multiplier_closed_form(j, n, -1.0);
}

double log_cosine_multiplier(int j, int n) {
    check_even(j, "log_cosine_multiplier");
    if (j == 0) throw ExcludedComponent("log-cosine multiplier: the degree-0 component is excluded");
    check_n(n);
    require_gate();
    const double sign = (j / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * std::real(gamma_ratio(0.5 * j, 0.5 * (j + n)));
}

double log_sine_multiplier(int j, int n) {
    return log_cosine_multiplier(j, n) * std::real(cosine_multiplier_closed_form(j, n, -1.0));
}

cd delta_op_eigenvalue(int j, int n, cd lambda, int ell) {
    if (ell < 0) throw InvalidArgument("delta_op_eigenvalue: ell must be >= 0");
    check_n(n);
    const double ev = double(j) * (j + n - 2);
    cd prod = 1.0;
    for (int m = 1; m <= ell; ++m) {
        const cd a = lambda + 2.0 * m;
        prod *= -0.25 * (a * (a + double(n - 2)) - ev);
    }
    return prod;
}

double beltrami_eigenvalue(int j, int n) { return -double(j) * (j + n - 2); }

// ---------------------------------------------------------------------------

double GateReport::max_error() const {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.abs_error);
    return m;
}

namespace {

GateReport run_gate() {
    GateReport report;
    report.tolerance = kGateTolerance;
    report.passed = true;
    for (int n : {3, 4}) {
        for (double lambda : {-0.5, 0.5, 1.0, 1.5}) {
            const KernelProfile kernel = cosine_kernel(n, lambda);
            for (int j : {0, 2, 4}) {
                GateEntry e{j, n, lambda, 0.0, 0.0, 0.0};
                try {
                    e.closed_form = cosine_multiplier_closed_form(j, n, lambda);
                    e.quadrature = funk_hecke_multiplier_quadrature(kernel, j, n);
                    e.abs_error = std::abs(e.closed_form - e.quadrature);
                } catch (const Error&) {
                    e.abs_error = std::numeric_limits<double>::infinity();
                }
                if (!(e.abs_error <= report.tolerance)) report.passed = false;
                report.entries.push_back(e);
            }
        }
    }
    return report;
}

}  // namespace

const GateReport& multiplier_gate() {
    static std::once_flag once;
    static GateReport report;
    std::call_once(once, [] { report = run_gate(); });
    return report;
}

void require_gate() {
    const GateReport& g = multiplier_gate();
    if (!g.passed)
        throw GateError("closed-form multipliers disagree with quadrature (max error " +
                        std::to_string(g.max_error()) + ")");
}

// ---------------------------------------------------------------------------

std::string to_string(OperatorTag tag) {
    switch (tag) {
        case OperatorTag::cosine: return "cosine";
        case OperatorTag::sine: return "sine";
        case OperatorTag::funk: return "funk";
        case OperatorTag::log_cosine: return "log-cosine";
        case OperatorTag::log_sine: return "log-sine";
        case OperatorTag::delta_op: return "delta-op";
    }
    return "unknown";
}

OperatorTag operator_tag_from_string(const std::string& s) {
    if (s == "cosine") return OperatorTag::cosine;
    if (s == "sine") return OperatorTag::sine;
    if (s == "funk") return OperatorTag::funk;
    if (s == "log-cosine" || s == "logcos") return OperatorTag::log_cosine;
    if (s == "log-sine" || s == "logsine") return OperatorTag::log_sine;
    if (s == "delta-op" || s == "delta") return OperatorTag::delta_op;
    throw InvalidArgument("unknown operator '" + s + "'");
}

std::function<cd(int)> degreewise(OperatorTag tag, int n, cd lambda, int ell) {
    check_n(n);
    if (tag != OperatorTag::delta_op) require_gate();
    switch (tag) {
        case OperatorTag::cosine:
            return [=](int j) { return j % 2 ? cd(0.0) : cosine_multiplier_closed_form(j, n, lambda); };
        case OperatorTag::sine:
            return [=](int j) {
                return j % 2 ? cd(0.0)
                             : cosine_multiplier_closed_form(j, n, lambda) * cosine_multiplier_closed_form(j, n, -1.0);
            };
        case OperatorTag::funk:
            return [=](int j) { return j % 2 ? cd(0.0) : cd(funk_multiplier(j, n)); };
        case OperatorTag::log_cosine:
            return [=](int j) { return (j % 2 || j == 0) ? cd(0.0) : cd(log_cosine_multiplier(j, n)); };
        case OperatorTag::log_sine:
            return [=](int j) { return (j % 2 || j == 0) ? cd(0.0) : cd(log_sine_multiplier(j, n)); };
        case OperatorTag::delta_op:
            if (ell < 0) throw InvalidArgument("delta-op: ell must be >= 0");
            return [=](int j) { return delta_op_eigenvalue(j, n, lambda, ell); };
    }
    throw InvalidArgument("unknown operator");
}

MultiplierTable make_multiplier_table(OperatorTag tag, int n, int max_degree, cd lambda, int ell) {
    if (max_degree < 0) throw InvalidArgument("multiplier table: negative max degree");
    const auto m = degreewise(tag, n, lambda, ell);
    MultiplierTable table{tag, lambda, ell, n, {}, {}};
    const bool log_kind = tag == OperatorTag::log_cosine || tag == OperatorTag::log_sine;
    for (int j = log_kind ? 2 : 0; j <= max_degree; j += 2) {
        table.degrees.push_back(j);
        table.values.push_back(m(j));
    }
    return table;
}

}  // namespace cosfunk
