#include "cosfunk/cli/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cosfunk/cli/function_spec.hpp"
#include "cosfunk/diff_ops.hpp"
#include "cosfunk/errors.hpp"
#include "cosfunk/inversion.hpp"
#include "cosfunk/stiefel.hpp"
#include "cosfunk/transforms.hpp"

namespace cosfunk::cli {

namespace {

using nlohmann::json;

std::string version() { return COSFUNK_VERSION; }

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

json meta(const ExperimentConfig& c) {
    return {{"version", version()}, {"config_hash", config_hash(c)}, {"config", to_key_values(c)}};
}

std::string csv_header(const ExperimentConfig& c) {
    return "# cosfunk " + version() + " config " + config_hash(c) + "\n";
}

// Writes to `path`, or to `fallback` when path is empty. Output is assembled
// in memory first so a failed run leaves no partial file.
void emit(const std::string& path, std::ostream& fallback, const std::string& content) {
    if (path.empty()) {
        fallback << content;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidArgument("cannot open output file '" + path + "'");
    f << content;
    if (!f) throw InvalidArgument("failed writing '" + path + "'");
}

std::string fmt(double x) { return format_double(x); }

cd lambda_of(const ExperimentConfig& c) { return {c.lambda_re, c.lambda_im}; }

HarmonicSpectrum input_spectrum(const ExperimentConfig& c) {
    const std::string spec =
        c.input.empty() ? "random-even:J=" + std::to_string(c.J) + ",seed=" + std::to_string(c.seed) : c.input;
    return parse_function_spec(spec, c.n);
}

GridFunction sample_on(const HarmonicSpectrum& s, const GridPtr& grid) {
    return GridFunction::sample(grid, s.as_function(), s.band());
}

std::string node_columns(int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += ",x" + std::to_string(i);
    return s;
}

std::string node_values(const QuadratureGrid& g, std::size_t i) {
    std::string s;
    for (int r = 0; r < g.dimension(); ++r) s += "," + fmt(g.node(i)(r));
    return s;
}

std::vector<double> parse_points(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        char* end = nullptr;
        const double x = std::strtod(tok.c_str(), &end);
        if (tok.empty() || end != tok.c_str() + tok.size() || !(x > 0.0))
            throw InvalidArgument("points: bad entry '" + tok + "'");
        v.push_back(x);
    }
    return v;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    const double m = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]) / m;
        my += std::log(y[i]) / m;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    }
    return sxy / sxx;
}

// ---------------------------------------------------------------------------

int cmd_multipliers(const ExperimentConfig& c, std::ostream& out) {
    require_gate();
    const OperatorTag tag = operator_tag_from_string(c.op);
    const MultiplierTable t = make_multiplier_table(tag, c.n, c.J, lambda_of(c), c.ell);
    std::string s = csv_header(c) + "operator,n,j,lambda_re,lambda_im,ell,value_re,value_im\n";
    for (std::size_t i = 0; i < t.degrees.size(); ++i)
        s += to_string(tag) + "," + std::to_string(c.n) + "," + std::to_string(t.degrees[i]) + "," + fmt(c.lambda_re) +
             "," + fmt(c.lambda_im) + "," + std::to_string(c.ell) + "," + fmt(t.values[i].real()) + "," +
             fmt(t.values[i].imag()) + "\n";
    emit(c.out, out, s);
    return kExitOk;
}

int cmd_forward(const ExperimentConfig& c, std::ostream& out) {
    require_gate();
    const GridPtr grid = build_grid(c.n, effective_resolution(c));
    const GridFunction f = sample_on(input_spectrum(c), grid);
    const Path path = path_from_string(c.path);
    GridFunction g = [&] {
        if (c.transform == "cosine") return cosine_transform(f, {lambda_of(c), path});
        if (c.transform == "sine") return sine_transform(f, {lambda_of(c), path});
        if (c.transform == "funk") return funk_transform(f, path);
        if (c.transform == "logcos") return log_cosine_transform(f, path);
        return log_sine_transform(f, path);
    }();
    const Provenance& p = g.provenance();
    std::string s = csv_header(c) + "# operation " + p.operation + " path " + p.path +
                    (p.truncated ? " truncated" : "") + "\n" + "i" + node_columns(c.n) +
                    ",f_re,f_im,value_re,value_im\n";
    for (std::size_t i = 0; i < grid->size(); ++i)
        s += std::to_string(i) + node_values(*grid, i) + "," + fmt(f[i].real()) + "," + fmt(f[i].imag()) + "," +
             fmt(g[i].real()) + "," + fmt(g[i].imag()) + "\n";
    emit(c.out, out, s);
    return kExitOk;
}

int cmd_diffop(const ExperimentConfig& c, std::ostream& out) {
    const GridPtr grid = build_grid(c.n, effective_resolution(c));
    const HarmonicSpectrum spec = input_spectrum(c);
    const GridFunction f = sample_on(spec, grid);
    const WeightedOpSpec op{lambda_of(c), c.ell, c.n};
    const GridFunction ref = weighted_laplacian(f, op);
    GridFunction v = ref;
    double tol = 1e-12;
    if (c.path == "factored") {
        v = weighted_laplacian_factored(f, op);
        tol = 1e-8;
    } else if (c.path == "fd") {
        v = weighted_laplacian_fd(spec.as_function(), grid, op, c.h);
        tol = 1e-3;
    }
    if (c.tolerance) tol = *c.tolerance;
    const double scale = std::max(1.0, max_abs(ref));
    const double err = max_abs_diff(v, ref) / scale;

    std::string s = csv_header(c) + "i" + node_columns(c.n) + ",value_re,value_im,reference_re,reference_im,abs_diff\n";
    for (std::size_t i = 0; i < grid->size(); ++i)
        s += std::to_string(i) + node_values(*grid, i) + "," + fmt(v[i].real()) + "," + fmt(v[i].imag()) + "," +
             fmt(ref[i].real()) + "," + fmt(ref[i].imag()) + "," + fmt(std::abs(v[i] - ref[i])) + "\n";
    emit(c.out, out, s);
    const bool pass = err <= tol;
    if (!c.report.empty()) {
        json j = meta(c);
        j["path"] = c.path;
        j["relative_error"] = err;
        j["tolerance"] = tol;
        j["pass"] = pass;
        emit(c.report, out, j.dump(2) + "\n");
    }
    return pass ? kExitOk : kExitTolerance;
}

int cmd_invert(const ExperimentConfig& c, std::ostream& out) {
    require_gate();
    const GridPtr grid = build_grid(c.n, effective_resolution(c));
    const GridFunction f = sample_on(input_spectrum(c), grid);
    const cd lambda = lambda_of(c);
    InversionOptions opt;
    opt.max_degree = std::max(opt.max_degree, c.J);
    opt.reference = f;
    InversionResult r = [&] {
        if (c.theorem == "funk") return invert_funk(funk_transform(f, Path::spectral), opt);
        if (c.theorem == "cosine1") return invert_cosine1(cosine_transform(f, {1.0, Path::spectral}), opt);
        if (c.theorem == "general-between")
            return invert_general_between(cosine_transform(f, {lambda + 2.0 * c.ell, Path::spectral}), lambda, c.ell,
                                          opt);
        return invert_general_outside(cosine_transform(f, {lambda, Path::spectral}), lambda, c.ell, opt);
    }();
    const InversionReport& rep = r.report;
    const bool log_branch = rep.method == "log-branch";
    const double tol = c.tolerance.value_or(log_branch ? 1e-6 : 1e-8);
    const bool pass = rep.max_error <= tol && rep.branch_agreement <= tol;

    json j = meta(c);
    j["theorem"] = rep.theorem;
    j["method"] = rep.method;
    j["lambda"] = complex_json(rep.lambda);
    j["ell"] = rep.ell;
    j["n"] = rep.n;
    j["max_degree"] = rep.max_degree;
    j["max_error"] = rep.max_error;
    j["degree_errors"] = rep.degree_errors;
    j["condition_numbers"] = rep.condition_numbers;
    j["branch_agreement"] = rep.branch_agreement;
    j["odd_part_norm"] = rep.odd_part_norm;
    j["warnings"] = rep.warnings;
    j["tolerance"] = tol;
    j["pass"] = pass;
    emit(c.report, out, j.dump(2) + "\n");

    if (!c.out.empty()) {
        std::string s = csv_header(c) + "i" + node_columns(c.n) + ",reference_re,reference_im,result_re,result_im" +
                        (r.alternative ? ",alternative_re,alternative_im" : "") + "\n";
        for (std::size_t i = 0; i < grid->size(); ++i) {
            s += std::to_string(i) + node_values(*grid, i) + "," + fmt(f[i].real()) + "," + fmt(f[i].imag()) + "," +
                 fmt(r.f[i].real()) + "," + fmt(r.f[i].imag());
            if (r.alternative) s += "," + fmt((*r.alternative)[i].real()) + "," + fmt((*r.alternative)[i].imag());
            s += "\n";
        }
        emit(c.out, out, s);
    }
    return pass ? kExitOk : kExitTolerance;
}

int cmd_convergence(const ExperimentConfig& c, std::ostream& out) {
    std::string default_points = "0.01,0.003,0.001";
    if (c.study == "quadrature") default_points = "4,6,8,10,12";
    if (c.study == "mc") default_points = "1000,4000,16000,64000";
    const std::vector<double> pts = parse_points(c.points.empty() ? default_points : c.points);
    if (pts.size() < 3) throw InvalidArgument("convergence needs at least 3 data points");

    std::vector<double> errors, sigmas;
    std::string column = "h";
    double expected = 2.0, band = 0.2;
    bool use_slope = true;

    if (c.study == "fd-beltrami" || c.study == "fd-weighted") {
        const GridPtr grid = build_grid(c.n, effective_resolution(c));
        const HarmonicSpectrum spec = input_spectrum(c);
        const GridFunction f = sample_on(spec, grid);
        const WeightedOpSpec op{lambda_of(c), c.ell, c.n};
        const GridFunction ref = c.study == "fd-beltrami" ? beltrami(f) : weighted_laplacian(f, op);
        for (double h : pts) {
            const GridFunction v = c.study == "fd-beltrami" ? beltrami_fd(spec.as_function(), grid, h)
                                                            : weighted_laplacian_fd(spec.as_function(), grid, op, h);
            errors.push_back(max_abs_diff(v, ref));
            sigmas.push_back(0.0);
        }
    } else if (c.study == "quadrature") {
        // Degree-6 zonal harmonic squared: exact mean 1 / dim H_6.
        column = "resolution";
        use_slope = false;
        const Direction pole = Direction::normalized(Eigen::VectorXd::LinSpaced(c.n, 1.0, 2.0));
        for (double r : pts) {
            if (r != std::floor(r)) throw InvalidArgument("quadrature study: resolutions must be integers");
            const GridPtr grid = build_grid(c.n, int(r));
            double s = 0.0;
            for (std::size_t i = 0; i < grid->size(); ++i) {
                const double z = zonal_eval(6, c.n, std::clamp(pole.dot(grid->node(i)), -1.0, 1.0));
                s += grid->weights()[i] * z * z;
            }
            errors.push_back(std::abs(s - 1.0 / harmonic_dimension(c.n, 6)));
            sigmas.push_back(0.0);
        }
    } else {
        // Standard error of dual_funk_k on phi = F_k f for a degree-2 zonal f.
        column = "samples";
        expected = -0.5;
        band = 0.1;
        const int k = std::clamp(c.k, 1, c.n - 1);
        std::vector<cd> coeffs(3, 0.0);
        coeffs[2] = 1.0;
        const ZonalSum f(c.n, 2, {{Direction::normalized(Eigen::VectorXd::LinSpaced(c.n, 1.0, 2.0)), coeffs}});
        const Direction v = Direction::axis(c.n, 0);
        const cd ref = funk_k_composite_multiplier(2, c.n, k) * f(v.vector());
        const FrameFunction phi = [&f](const Frame& u) { return funk_k(f.as_function(), 2, u); };
        for (double m : pts) {
            const McEstimate e = dual_funk_k(phi, v, k, std::int64_t(m), c.seed);
            errors.push_back(std::abs(e.mean - ref));
            sigmas.push_back(e.std_error);
        }
    }

    std::string s = csv_header(c) + column + ",error,sigma\n";
    for (std::size_t i = 0; i < pts.size(); ++i) s += fmt(pts[i]) + "," + fmt(errors[i]) + "," + fmt(sigmas[i]) + "\n";

    bool pass = true;
    json j = meta(c);
    j["study"] = c.study;
    if (use_slope) {
        const double slope = loglog_slope(pts, c.study == "mc" ? sigmas : errors);
        pass = std::abs(slope - expected) <= band;
        j["slope"] = slope;
        j["expected_slope"] = expected;
        j["slope_band"] = band;
        s += "# slope " + fmt(slope) + " expected " + fmt(expected) + " +- " + fmt(band) + "\n";
    } else {
        const double tol = c.tolerance.value_or(1e-12);
        double worst = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (pts[i] >= 8) worst = std::max(worst, errors[i]);
        pass = worst < tol;
        j["max_error_resolution_ge_8"] = worst;
        j["tolerance"] = tol;
        s += "# max error at resolution >= 8: " + fmt(worst) + "\n";
    }
    j["pass"] = pass;
    emit(c.out, out, s);
    if (!c.report.empty()) emit(c.report, out, j.dump(2) + "\n");
    return pass ? kExitOk : kExitTolerance;
}

int cmd_stiefel(const ExperimentConfig& c, std::ostream& out) {
    require_gate();
    StiefelCheckOptions opt;
    opt.spectral_degree = c.J;
    opt.samples = c.samples;
    opt.seed = c.seed;
    const StiefelReport r = stiefel_check(stiefel_identity_from_string(c.identity), c.n, c.k, lambda_of(c), opt);
    const double tol = c.tolerance.value_or(1e-10);
    bool pass = r.spectral_error <= tol;
    for (const auto& m : r.mc_checks) pass = pass && m.within_3_sigma();

    json j = meta(c);
    j["identity"] = r.identity;
    j["params"] = {{"n", r.n}, {"k", r.k}, {"lambda", complex_json(r.lambda)}, {"J", r.max_degree},
                   {"samples", r.samples}, {"seed", r.seed}};
    j["spectral_error"] = r.spectral_error;
    j["mc_applicable"] = r.mc_applicable;
    j["mc_error"] = r.mc_error;
    j["mc_sigma"] = r.mc_sigma;
    json chain = json::array();
    for (std::size_t i = 0; i < r.degrees.size(); ++i)
        chain.push_back({{"j", r.degrees[i]}, {"value", complex_json(r.chain[i])}});
    j["chain"] = chain;
    json checks = json::array();
    for (const auto& m : r.mc_checks)
        checks.push_back({{"name", m.name},
                          {"estimate", complex_json(m.estimate)},
                          {"reference", complex_json(m.reference)},
                          {"error", m.error},
                          {"sigma", m.sigma}});
    j["mc_checks"] = checks;
    j["note"] = r.note;
    j["tolerance"] = tol;
    j["pass"] = pass;
    emit(c.report, out, j.dump(2) + "\n");
    return pass ? kExitOk : kExitTolerance;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void print_error(std::ostream& err, const std::string& kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(const ExperimentConfig& c, std::ostream& out) {
    validate(c);
    if (c.subcommand == "multipliers") return cmd_multipliers(c, out);
    if (c.subcommand == "forward") return cmd_forward(c, out);
    if (c.subcommand == "diffop") return cmd_diffop(c, out);
    if (c.subcommand == "invert") return cmd_invert(c, out);
    if (c.subcommand == "convergence") return cmd_convergence(c, out);
    return cmd_stiefel(c, out);
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spherical cosine, Funk and Stiefel transforms: experiment runner"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");  // -h would clash with the step size flag --h
    app.set_version_flag("--version", version());
    std::string config_path;
    app.add_option("--config", config_path, "key = value file; command-line flags take precedence");
    app.fallthrough();

    std::map<std::string, std::string> flag_values;
    std::vector<std::tuple<CLI::Option*, std::string, std::string>> flags;  // option, key, storage slot
    auto add = [&](CLI::App* sub, const std::string& names, const std::string& key, const std::string& help) {
        const std::string slot = key + "@" + sub->get_name();
        flags.emplace_back(sub->add_option(names, flag_values[slot], help), key, slot);
    };
    struct Sub {
        const char* name;
        const char* help;
        std::vector<const char*> keys;
    };
    const std::map<std::string, std::pair<std::string, std::string>> options{
        {"n", {"--n", "sphere S^{n-1} lives in R^n"}},
        {"k", {"--k", "frame size"}},
        {"J", {"--J", "band limit"}},
        {"lambda-re", {"--lambda,--lambda-re", "real part of lambda"}},
        {"lambda-im", {"--lambda-im", "imaginary part of lambda"}},
        {"ell", {"--ell", "order of the weighted operator"}},
        {"resolution", {"--resolution", "grid resolution (0: from J)"}},
        {"samples", {"--samples", "Monte-Carlo samples"}},
        {"seed", {"--seed", "random seed"}},
        {"h", {"--h", "finite-difference step"}},
        {"path", {"--path", "computation path"}},
        {"transform", {"--transform", "cosine | funk | logcos | sine | logsine"}},
        {"operator", {"--operator", "cosine | sine | funk | logcos | logsine | delta"}},
        {"theorem", {"--theorem", "funk | cosine1 | general-between | general-outside"}},
        {"identity", {"--identity", "4.8 | 4.9 | thm4.1-i | thm4.1-ii | 4.13 | 4.14"}},
        {"study", {"--study", "fd-beltrami | fd-weighted | quadrature | mc"}},
        {"input", {"--input", "function spec"}},
        {"points", {"--points", "comma-separated sweep values"}},
        {"tolerance", {"--tolerance", "override the pass tolerance"}},
        {"out", {"--out", "CSV output path"}},
        {"report", {"--report", "JSON report path"}},
    };
    const std::vector<Sub> subs{
        {"multipliers", "degree-wise multiplier table (CSV)", {"n", "J", "lambda-re", "lambda-im", "ell", "operator", "out", "report"}},
        {"forward", "forward transform on a grid (CSV)",
         {"transform", "n", "J", "lambda-re", "lambda-im", "path", "input", "resolution", "seed", "out", "report"}},
        {"diffop", "weighted differential operator, path vs spectral (CSV)",
         {"n", "J", "lambda-re", "lambda-im", "ell", "path", "h", "input", "resolution", "seed", "tolerance", "out",
          "report"}},
        {"invert", "inversion round trip (JSON report, optional CSV)",
         {"theorem", "n", "J", "lambda-re", "lambda-im", "ell", "input", "resolution", "seed", "tolerance", "out",
          "report"}},
        {"convergence", "convergence study (CSV)",
         {"study", "n", "k", "J", "lambda-re", "lambda-im", "ell", "points", "input", "resolution", "seed", "tolerance",
          "out", "report"}},
        {"stiefel-check", "Stiefel identity check (JSON)",
         {"identity", "n", "k", "J", "lambda-re", "lambda-im", "samples", "seed", "tolerance", "report"}},
    };
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->set_help_flag("--help", "print help");
        for (const char* key : s.keys) {
            const auto& [names, help] = options.at(key);
            add(sub, names, key, help);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << version() << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        print_error(err, "invalid-argument", e.what());
        return kExitError;
    }

    try {
        ExperimentConfig c;
        if (!config_path.empty()) c = apply_key_values(c, parse_key_values(read_file(config_path)));
        KeyValues given;
        for (const auto& [opt, key, slot] : flags)
            if (opt->count() > 0) given[key] = flag_values[slot];
        c = apply_key_values(c, given);
        c.subcommand = app.get_subcommands().front()->get_name();
        return run(c, out);
    } catch (const Error& e) {
        print_error(err, e.kind(), e.what());
    } catch (const std::exception& e) {
        print_error(err, "internal-error", e.what());
    }
    return kExitError;
}

}  // namespace cosfunk::cli
