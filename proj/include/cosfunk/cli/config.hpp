#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace cosfunk::cli {

/// Every parameter a subcommand can take. Defaults apply first, then the
/// config file, then command-line flags.
struct ExperimentConfig {
    std::string subcommand;
    int n = 3;
    int k = 1;
    int J = 8;
    double lambda_re = 1.0;
    double lambda_im = 0.0;
    int ell = 1;
    int resolution = 0;  // 0: chosen from J
    std::int64_t samples = 100000;
    std::uint64_t seed = 1;
    double h = 1e-3;
    std::string path = "automatic";
    std::string transform = "cosine";
    std::string op = "cosine";
    std::string theorem = "funk";
    std::string identity = "4.8";
    std::string study = "fd-beltrami";
    std::string input;    // function spec; empty: random-even:J=<J>,seed=<seed>
    std::string points;   // convergence sweep, comma separated
    std::optional<double> tolerance;
    std::string out;      // CSV path; empty: stdout
    std::string report;   // JSON path; empty: stdout
};

using KeyValues = std::map<std::string, std::string>;

/// Flat key/value view; keys match the long flag names.
KeyValues to_key_values(const ExperimentConfig& c);
/// Applies `kv` on top of `base`. Unknown keys and malformed values raise
/// InvalidArgument.
ExperimentConfig apply_key_values(ExperimentConfig base, const KeyValues& kv);

/// `key = value` lines, sorted by key; '#' starts a comment line.
std::string serialize(const ExperimentConfig& c);
KeyValues parse_key_values(const std::string& text);
ExperimentConfig parse_config(const std::string& text);

/// FNV-1a of serialize(c), as 16 hex digits.
std::string config_hash(const ExperimentConfig& c);

/// Resolution used when c.resolution == 0.
int effective_resolution(const ExperimentConfig& c);

/// Rejects parameter combinations the modules would refuse, before any work.
void validate(const ExperimentConfig& c);

std::string format_double(double x);

}  // namespace cosfunk::cli
