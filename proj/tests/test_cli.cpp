#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "cosfunk/cli/commands.hpp"
#include "cosfunk/cli/function_spec.hpp"
#include "cosfunk/errors.hpp"

using namespace cosfunk;
using namespace cosfunk::cli;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "cosfunk");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = main_entry(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("cosfunk_test_" + name)).string();
}

// CSV rows without the leading comment lines.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST(Config, SerializationRoundTripsLosslessly) {
    ExperimentConfig c;
    c.subcommand = "invert";
    c.n = 5;
    c.lambda_re = 0.1 + 0.2;  // not representable in short decimal
    c.lambda_im = -1.0 / 3.0;
    c.seed = 18446744073709551615ULL;
    c.tolerance = 1e-7;
    c.input = "zonal:j=2,pole=1,0,0,0,0";
    const ExperimentConfig back = parse_config(serialize(c));
    EXPECT_EQ(to_key_values(back), to_key_values(c));
    EXPECT_EQ(back.lambda_re, c.lambda_re);
    EXPECT_EQ(config_hash(back), config_hash(c));
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(parse_config("bogus = 1\n"), InvalidArgument);
    EXPECT_THROW(parse_config("n = four\n"), InvalidArgument);
    EXPECT_THROW(parse_config("just text\n"), InvalidArgument);
    ExperimentConfig c;
    c.subcommand = "forward";
    c.n = 2;
    EXPECT_THROW(validate(c), InvalidArgument);
}

TEST(FunctionSpec, ParsesAllKinds) {
    const HarmonicSpectrum z = parse_function_spec("zonal:j=2,pole=0,0,2", 3);
    Eigen::Vector3d e(0, 0, 1);
    EXPECT_NEAR(std::abs(z.evaluate(e) - 1.0), 0.0, 1e-14);
    const HarmonicSpectrum c = parse_function_spec("const:2.5", 4);
    EXPECT_NEAR(std::abs(c.evaluate(Eigen::Vector4d(0, 1, 0, 0)) - 2.5), 0.0, 1e-14);
    const HarmonicSpectrum r = parse_function_spec("random-even:J=6,seed=3", 5);
    EXPECT_EQ(r.max_degree(), 6);
    for (const char* bad : {"zonal:j=2,pole=1,0", "const:x", "random-even:J=4", "wave:1", "zonal:pole=1,0,0"})
        EXPECT_THROW(parse_function_spec(bad, 3), InvalidArgument) << bad;
}

TEST(Cli, MultipliersDegreeZeroAtMinusOne) {
    const CliRun r = run_cli({"multipliers", "--n", "3", "--J", "8", "--lambda", "-1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_GE(rows.size(), 2u);
    EXPECT_EQ(rows[0][0], "operator");
    EXPECT_EQ(rows[1][2], "0");
    EXPECT_NEAR(std::stod(rows[1][6]), std::sqrt(std::numbers::pi), 1e-10);
    EXPECT_EQ(r.out.rfind("# cosfunk ", 0), 0u);
}

TEST(Cli, InvertIsByteIdenticalAcrossRuns) {
    const CliRun a = run_cli({"invert", "--theorem", "funk", "--n", "4", "--seed", "7"});
    const CliRun b = run_cli({"invert", "--theorem", "funk", "--n", "4", "--seed", "7"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto j = nlohmann::json::parse(a.out);
    EXPECT_LT(j["max_error"].get<double>(), 1e-9);
    EXPECT_EQ(j["version"], COSFUNK_VERSION);
}

TEST(Cli, ConfigFileWithFlagOverride) {
    const std::string path = temp_path("config.txt");
    {
        std::ofstream f(path);
        f << "# sweep\nn = 4\nJ = 6\nlambda-re = 0.5\noperator = sine\n";
    }
    const CliRun a = run_cli({"--config", path, "multipliers"});
    const CliRun b = run_cli({"--config", path, "multipliers", "--n", "5"});
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(csv_rows(a.out)[1][1], "4");
    EXPECT_EQ(csv_rows(b.out)[1][1], "5");
    EXPECT_EQ(csv_rows(a.out)[1][0], "sine");
    std::filesystem::remove(path);
}

TEST(Cli, ErrorsAreJsonWithExitOne) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"forward", "--n", "3", "--lambda", "2", "--path", "spectral"},
             {"invert", "--theorem", "nope"},
             {"multipliers", "--n"},
             {"convergence", "--study", "mc", "--points", "100,200"},
             {"stiefel-check", "--identity", "thm4.1-ii", "--n", "5", "--k", "1"}}) {
        const CliRun r = run_cli(args);
        EXPECT_EQ(r.code, kExitError) << args[0];
        const auto j = nlohmann::json::parse(r.err);
        EXPECT_TRUE(j.contains("error"));
        EXPECT_TRUE(j.contains("message"));
    }
    EXPECT_EQ(nlohmann::json::parse(run_cli({"stiefel-check", "--identity", "thm4.1-ii", "--n", "5", "--k", "1"}).err)["error"],
              "excluded-component");
}

TEST(Cli, ToleranceFailureExitsTwo) {
    const CliRun r = run_cli({"diffop", "--path", "fd", "--n", "3", "--lambda", "-0.5", "--tolerance", "1e-12"});
    EXPECT_EQ(r.code, kExitTolerance);
}

TEST(Cli, OutputFilesAndDiffop) {
    const std::string csv = temp_path("diffop.csv"), js = temp_path("diffop.json");
    const CliRun r = run_cli({"diffop", "--path", "factored", "--n", "4", "--ell", "2", "--out", csv, "--report", js});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(js);
    const auto j = nlohmann::json::parse(f);
    EXPECT_TRUE(j["pass"].get<bool>());
    std::filesystem::remove(csv);
    std::filesystem::remove(js);
}

TEST(Cli, ConvergenceStudies) {
    const CliRun fd = run_cli({"convergence", "--study", "fd-beltrami", "--n", "3"});
    EXPECT_EQ(fd.code, 0) << fd.out;
    const CliRun q = run_cli({"convergence", "--study", "quadrature", "--n", "4"});
    EXPECT_EQ(q.code, 0) << q.out;
    const CliRun mc = run_cli({"convergence", "--study", "mc", "--n", "4", "--k", "1"});
    EXPECT_EQ(mc.code, 0) << mc.out;
}

TEST(Cli, StiefelCheckExample) {
    const CliRun r = run_cli({"stiefel-check", "--identity", "4.8", "--n", "4", "--k", "2", "--lambda", "1", "--samples",
                           "100000", "--seed", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_LT(j["mc_error"].get<double>(), 3.0 * j["mc_sigma"].get<double>());
    EXPECT_LT(j["spectral_error"].get<double>(), 1e-10);
    for (const char* key : {"identity", "params", "spectral_error", "mc_error", "mc_sigma"}) EXPECT_TRUE(j.contains(key));
}

TEST(Cli, BinaryExitCodes) {
    const std::string tool = COSFUNK_TOOL;
    EXPECT_EQ(std::system((tool + " multipliers --n 3 --J 2 > /dev/null").c_str()), 0);
    EXPECT_NE(std::system((tool + " multipliers --n 1 > /dev/null 2>&1").c_str()), 0);
}
