#include "cosfunk/inversion.hpp"

#include <cmath>

#include "cosfunk/diff_ops.hpp"
#include "cosfunk/errors.hpp"

namespace cosfunk {

namespace {

bool on_excluded_set(cd z) {
    const double k = std::round(0.5 * z.real());
    return k >= 0.0 && std::abs(z - cd(2.0 * k)) <= kLambdaPoleTolerance;
}

void require_admissible(cd z, const std::string& condition) {
    if (on_excluded_set(z)) throw PoleError("violated condition: " + condition + " must avoid {0, 2, 4, ...}", z);
}

int check_band(const GridFunction& phi, const InversionOptions& opt) {
    const SpectralBand b = spectral_band(phi);
    if (b.degree > opt.max_degree)
        throw ResolutionError("band limit " + std::to_string(b.degree) + " exceeds the inversion ceiling " +
                              std::to_string(opt.max_degree));
    return b.degree;
}

GridFunction cosine_spectral(const GridFunction& f, cd lambda) { return cosine_transform(f, {lambda, Path::spectral}); }

GridFunction delta(const GridFunction& f, cd lambda, int ell) {
    return weighted_laplacian(f, WeightedOpSpec{lambda, ell, f.dimension()});
}

InversionReport base_report(const GridFunction& phi, const std::string& theorem, const std::string& method, cd lambda,
                            int ell, int J, const std::function<cd(int)>& forward) {
    InversionReport r;
    r.theorem = theorem;
    r.method = method;
    r.lambda = lambda;
    r.ell = ell;
    r.n = phi.dimension();
    r.max_degree = J;
    for (int j = 0; j <= J; j += 2) {
        const double m = std::abs(forward(j));
        r.condition_numbers.push_back(m > 0.0 ? 1.0 / m : std::numeric_limits<double>::infinity());
    }
    if (phi.grid().antipodally_paired()) {
        const GridFunction odd = odd_part(phi);
        double s = 0.0;
        for (std::size_t i = 0; i < odd.size(); ++i) s += phi.grid().weights()[i] * std::norm(odd[i]);
        r.odd_part_norm = std::sqrt(s);
        if (r.odd_part_norm > 1e-10)
            r.warnings.push_back("input has an odd part of norm " + std::to_string(r.odd_part_norm) +
                                 "; it is annihilated by the inversion chain");
    }
    return r;
}

void fill_errors(InversionReport& r, const GridFunction& result, const InversionOptions& opt) {
    if (!opt.reference) return;
    const GridFunction diff = result - *opt.reference;
    r.max_error = max_abs(diff);
    std::optional<Direction> pole;
    if (diff.dimension() > 3) {
        const SpectralBand b = spectral_band(diff);
        pole = b.pole;
        if (!pole) return;
    }
    r.degree_errors = analyze(diff, r.max_degree, pole).degree_norms();
}

}  // namespace

double cosine1_odd_constant(int n) { return std::real(gamma_ratio(0.5 * (n + 1), -0.5)); }

InversionResult invert_general_between(const GridFunction& phi, cd lambda, int ell, const InversionOptions& opt) {
    const int n = phi.dimension();
    if (ell < 0) throw InvalidArgument("ell must be >= 0");
    require_admissible(-lambda - double(n), "-lambda - n");
    require_admissible(lambda + 2.0 * ell, "lambda + 2 ell");
    const int J = check_band(phi, opt);
    const GridFunction f = cosine_spectral(delta(phi, lambda, ell), -lambda - double(n));
    InversionResult out{f, std::nullopt,
                        base_report(phi, "general-between", "between", lambda, ell, J,
                                    degreewise(OperatorTag::cosine, n, lambda + 2.0 * ell))};
    fill_errors(out.report, f, opt);
    return out;
}

InversionResult invert_general_outside(const GridFunction& phi, cd lambda, int ell, const InversionOptions& opt) {
    const int n = phi.dimension();
    if (ell < 0) throw InvalidArgument("ell must be >= 0");
    require_admissible(lambda, "lambda");
    require_admissible(-lambda - double(n) + 2.0 * ell, "-lambda - n + 2 ell");
    const int J = check_band(phi, opt);
    const GridFunction f = delta(cosine_spectral(phi, -lambda - double(n) + 2.0 * ell), -lambda - double(n), ell);
    InversionResult out{f, std::nullopt,
                        base_report(phi, "general-outside", "outside", lambda, ell, J,
                                    degreewise(OperatorTag::cosine, n, lambda))};
    fill_errors(out.report, f, opt);
    return out;
}

InversionResult invert_funk(const GridFunction& phi, const InversionOptions& opt) {
    const int n = phi.dimension();
    if (n < 3) throw InvalidArgument("invert_funk: n must be >= 3");
    const int J = check_band(phi, opt);
    const double cn = funk_constant(n);
    const auto forward = degreewise(OperatorTag::funk, n);
    if (n % 2 == 0) {
        const int ell = (n - 2) / 2;
        auto D = [&](const GridFunction& g) { return (cn * cn) * delta(g, 1.0 - n, ell); };
        const GridFunction a = funk_transform(D(phi), opt.funk_path);
        const GridFunction b = D(funk_transform(phi, opt.funk_path));
        InversionResult out{a, b, base_report(phi, "funk", "even-branch", 1.0 - n, ell, J, forward)};
        out.report.branch_agreement = max_abs_diff(a, b);
        fill_errors(out.report, a, opt);
        return out;
    }
    const int ell = (n - 1) / 2;
    const cd phi0 = integrate(phi);
    const GridFunction centered = remove_mean(phi);
    const GridFunction g = cn * delta(log_cosine_transform(centered, Path::spectral), 1.0 - n, ell);
    const GridFunction f = g + GridFunction::constant(phi.grid_ptr(), phi0);
    InversionResult out{f, std::nullopt, base_report(phi, "funk", "log-branch", 1.0 - n, ell, J, forward)};
    fill_errors(out.report, f, opt);
    return out;
}

InversionResult invert_cosine1(const GridFunction& phi, const InversionOptions& opt) {
    const int n = phi.dimension();
    if (n < 3) throw InvalidArgument("invert_cosine1: n must be >= 3");
    const int J = check_band(phi, opt);
    const double cn = funk_constant(n);
    const auto forward = degreewise(OperatorTag::cosine, n, 1.0);
    if (n % 2 == 0) {
        const int ell = n / 2;
        const GridFunction a = funk_transform(cn * delta(phi, 1.0 - n, ell), opt.funk_path);
        const GridFunction b = cn * delta(funk_transform(phi, opt.funk_path), -1.0 - n, ell);
        InversionResult out{a, b, base_report(phi, "cosine1", "even-branch", 1.0 - n, ell, J, forward)};
        out.report.branch_agreement = max_abs_diff(a, b);
        fill_errors(out.report, a, opt);
        return out;
    }
    const int ell = (n + 1) / 2;
    const cd phi0 = integrate(phi);
    const GridFunction centered = remove_mean(phi);
    const GridFunction g = delta(log_cosine_transform(centered, Path::spectral), -1.0 - n, ell);
    const GridFunction f = g + GridFunction::constant(phi.grid_ptr(), cosine1_odd_constant(n) * phi0);
    InversionResult out{f, std::nullopt, base_report(phi, "cosine1", "log-branch", -1.0 - n, ell, J, forward)};
    fill_errors(out.report, f, opt);
    return out;
}

}  // namespace cosfunk
