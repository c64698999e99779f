#include "cosfunk/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

#include "cosfunk/cli/function_spec.hpp"
#include "cosfunk/errors.hpp"
#include "cosfunk/multipliers.hpp"
#include "cosfunk/stiefel.hpp"
#include "cosfunk/transforms.hpp"

namespace cosfunk::cli {

namespace {

template <class Int>
Int parse_int(const std::string& key, const std::string& s) {
    Int v{};
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw InvalidArgument("config key '" + key + "': expected an integer, got '" + s + "'");
    return v;
}

double parse_double(const std::string& key, const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
        throw InvalidArgument("config key '" + key + "': expected a finite number, got '" + s + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void require_one_of(const std::string& key, const std::string& v, const std::set<std::string>& allowed) {
    if (allowed.count(v)) return;
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw InvalidArgument("'" + key + "' must be one of {" + list + "}, got '" + v + "'");
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);  // no "-0"
    return buf;
}

KeyValues to_key_values(const ExperimentConfig& c) {
    KeyValues kv{
        {"subcommand", c.subcommand},
        {"n", std::to_string(c.n)},
        {"k", std::to_string(c.k)},
        {"J", std::to_string(c.J)},
        {"lambda-re", format_double(c.lambda_re)},
        {"lambda-im", format_double(c.lambda_im)},
        {"ell", std::to_string(c.ell)},
        {"resolution", std::to_string(c.resolution)},
        {"samples", std::to_string(c.samples)},
        {"seed", std::to_string(c.seed)},
        {"h", format_double(c.h)},
        {"path", c.path},
        {"transform", c.transform},
        {"operator", c.op},
        {"theorem", c.theorem},
        {"identity", c.identity},
        {"study", c.study},
        {"input", c.input},
        {"points", c.points},
        {"out", c.out},
        {"report", c.report},
    };
    if (c.tolerance) kv["tolerance"] = format_double(*c.tolerance);
    return kv;
}

ExperimentConfig apply_key_values(ExperimentConfig c, const KeyValues& kv) {
    for (const auto& [key, v] : kv) {
        if (key == "subcommand") c.subcommand = v;
        else if (key == "n") c.n = parse_int<int>(key, v);
        else if (key == "k") c.k = parse_int<int>(key, v);
        else if (key == "J") c.J = parse_int<int>(key, v);
        else if (key == "lambda-re" || key == "lambda") c.lambda_re = parse_double(key, v);
        else if (key == "lambda-im") c.lambda_im = parse_double(key, v);
        else if (key == "ell") c.ell = parse_int<int>(key, v);
        else if (key == "resolution") c.resolution = parse_int<int>(key, v);
        else if (key == "samples") c.samples = parse_int<std::int64_t>(key, v);
        else if (key == "seed") c.seed = parse_int<std::uint64_t>(key, v);
        else if (key == "h") c.h = parse_double(key, v);
        else if (key == "path") c.path = v;
        else if (key == "transform") c.transform = v;
        else if (key == "operator") c.op = v;
        else if (key == "theorem") c.theorem = v;
        else if (key == "identity") c.identity = v;
        else if (key == "study") c.study = v;
        else if (key == "input") c.input = v;
        else if (key == "points") c.points = v;
        else if (key == "out") c.out = v;
        else if (key == "report") c.report = v;
        else if (key == "tolerance") c.tolerance = parse_double(key, v);
        else throw InvalidArgument("unknown config key '" + key + "'");
    }
    return c;
}

std::string serialize(const ExperimentConfig& c) {
    std::string s;
    for (const auto& [key, v] : to_key_values(c)) s += key + " = " + v + "\n";
    return s;
}

KeyValues parse_key_values(const std::string& text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument("config line " + std::to_string(lineno) + ": expected 'key = value'");
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return kv;
}

ExperimentConfig parse_config(const std::string& text) { return apply_key_values({}, parse_key_values(text)); }

std::string config_hash(const ExperimentConfig& c) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize(c)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int effective_resolution(const ExperimentConfig& c) { return c.resolution > 0 ? c.resolution : std::max(c.J + 4, 6); }

void validate(const ExperimentConfig& c) {
    require_one_of("subcommand", c.subcommand,
                   {"multipliers", "forward", "diffop", "invert", "convergence", "stiefel-check"});
    if (c.n < 3 || c.n > 8) throw InvalidArgument("n must lie in [3, 8]");
    if (c.J < 0 || c.J > 32) throw InvalidArgument("J must lie in [0, 32]");
    if (c.ell < 0) throw InvalidArgument("ell must be >= 0");
    if (c.resolution < 0) throw InvalidArgument("resolution must be >= 0");
    if (c.tolerance && !(*c.tolerance > 0.0)) throw InvalidArgument("tolerance must be > 0");
    if (!c.input.empty()) parse_function_spec(c.input, c.n);

    if (c.subcommand == "multipliers") {
        operator_tag_from_string(c.op);
    } else if (c.subcommand == "forward") {
        require_one_of("transform", c.transform, {"cosine", "funk", "logcos", "sine", "logsine"});
        path_from_string(c.path);
    } else if (c.subcommand == "diffop") {
        require_one_of("path", c.path, {"spectral", "factored", "fd"});
        if (c.path == "fd" && !(c.h >= 1e-4 && c.h <= 1e-2)) throw InvalidArgument("h must lie in [1e-4, 1e-2]");
    } else if (c.subcommand == "invert") {
        require_one_of("theorem", c.theorem, {"funk", "cosine1", "general-between", "general-outside"});
    } else if (c.subcommand == "convergence") {
        require_one_of("study", c.study, {"fd-beltrami", "fd-weighted", "quadrature", "mc"});
    } else if (c.subcommand == "stiefel-check") {
        stiefel_identity_from_string(c.identity);
        if (c.k < 1 || c.k > c.n - 1) throw InvalidArgument("need 1 <= k <= n - 1");
        if (c.samples < kMinSamples) throw InsufficientSamples("samples must be >= 100");
    }
}

}  // namespace cosfunk::cli
