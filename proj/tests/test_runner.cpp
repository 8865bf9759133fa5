#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "semilab/runner.hpp"

using namespace semilab;
namespace fs = std::filesystem;

namespace {

fs::path write_config(const std::string& name, const std::string& body) {
    const fs::path dir = fs::temp_directory_path() / "semilab_runner_test";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream out(p);
    out << body;
    return p;
}

const char* kSmallConfig = R"({
  "grid": {"L": 20.0, "n": 2049},
  "measures": [
    {"name": "delta0", "atoms": [[0.0, 1.0]]},
    {"name": "pair", "atoms": [[1.0, 0.5], [-1.0, 0.5]]}
  ],
  "test_functions": ["const1", "cos_1"],
  "times": [0.5, 1.0],
  "lambdas": [1.0, 8.0],
  "suites": ["al", "oracle"],
  "seed": 3,
  "trials": 25
})";

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("runner") {

TEST_CASE("config loading and validation") {
    const fs::path p = write_config("small.json", kSmallConfig);
    const RunConfig config = load_config(p);
    CHECK(config.grid.size() == 2049);
    CHECK(config.measures.size() == 2);
    CHECK(config.measures[0].first == "delta0");
    CHECK(config.function_names.size() == 2);
    CHECK(!config.perturbation.has_value());
    CHECK(config.trials == 25);
    CHECK(config.suites == std::vector<std::string>{"al", "oracle"});

    CHECK_THROWS_AS(load_config("no_such_file.json"), ConfigError);
    CHECK_THROWS_AS(load_config(write_config("broken.json", "{ not json")), ConfigError);
    CHECK_THROWS_AS(load_config(write_config("badfn.json",
                                             R"({"test_functions": ["sinh_9"]})")),
                    ConfigError);
    CHECK_THROWS_AS(load_config(write_config("badgrid.json", R"({"grid": {"L": 20, "n": 10}})")),
                    ConfigError);
}

TEST_CASE("defaults fill in") {
    const fs::path p = write_config("empty.json", "{}");
    const RunConfig config = load_config(p);
    CHECK(config.grid.size() == 16385);
    CHECK(config.measures.size() == 2);
    CHECK(config.function_names.size() == 6);
    CHECK(config.suites.size() == 8);
}

TEST_CASE("csv shape") {
    std::vector<ReportRow> rows(1);
    rows[0].suite = "demo";
    rows[0].case_id = "one";
    rows[0].value = 0.5;
    const std::string csv = rows_to_csv(rows);
    CHECK(csv.rfind("suite,case,value,reference,abs_error,tolerance,pass\n", 0) == 0);
    CHECK(csv.find("demo,one,0.5,nan,nan,nan,1\n") != std::string::npos);
}

TEST_CASE("evolve references and exit codes") {
    const fs::path p = write_config("small.json", kSmallConfig);
    const RunConfig config = load_config(p);
    const fs::path out = fs::temp_directory_path() / "semilab_runner_test" / "evolve_out";
    CHECK(run_command("evolve", config, out) == 0);
    const std::string csv = slurp(out / "evolve.csv");
    // the cos row against a unit point mass carries the e^{-t/2} reference
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", std::exp(-0.25));
    CHECK(csv.find(std::string("evolve,f=cos_1;mu=delta0;t=0.5;semigroup=T,") + buf) !=
          std::string::npos);
    CHECK(csv.find("semigroup=S") == std::string::npos);  // no perturbation configured
    CHECK(csv.find(",0\n") == std::string::npos);         // nothing failed
}

TEST_CASE("resolvent references") {
    const fs::path p = write_config("small.json", kSmallConfig);
    const RunConfig config = load_config(p);
    const fs::path out = fs::temp_directory_path() / "semilab_runner_test" / "resolvent_out";
    CHECK(run_command("resolvent", config, out) == 0);
    const std::string csv = slurp(out / "resolvent.csv");
    CHECK(csv.find("resolvent,f=const1;mu=delta0;lambda=1,") != std::string::npos);
    CHECK(csv.find(",0\n") == std::string::npos);
}

TEST_CASE("verify runs suites and reruns byte-identically") {
    const fs::path p = write_config("small.json", kSmallConfig);
    const RunConfig config = load_config(p);
    const fs::path out1 = fs::temp_directory_path() / "semilab_runner_test" / "v1";
    const fs::path out2 = fs::temp_directory_path() / "semilab_runner_test" / "v2";
    CHECK(run_command("verify", config, out1) == 0);
    CHECK(run_command("verify", config, out2) == 0);
    const std::string a = slurp(out1 / "verify.csv");
    CHECK(a == slurp(out2 / "verify.csv"));
    CHECK(a.find("al,pair0:norm_gap,") != std::string::npos);
    CHECK(a.find("oracle,voigt_failures;trials=25,0,") != std::string::npos);
}

TEST_CASE("suites missing their prerequisites are config errors") {
    const fs::path p = write_config(
        "needs_b.json",
        R"({"grid": {"L": 20.0, "n": 2049}, "suites": ["mv"], "measures": [{"name": "delta0", "atoms": [[0.0, 1.0]]}]})");
    const RunConfig config = load_config(p);
    const fs::path out = fs::temp_directory_path() / "semilab_runner_test" / "mv_out";
    CHECK_THROWS_AS(run_command("verify", config, out), ConfigError);
    CHECK_THROWS_AS(run_command("frobnicate", config, out), ConfigError);
}

}  // TEST_SUITE
