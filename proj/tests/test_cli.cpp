// End-to-end checks of the specmom binary: exit codes, --check gating, CSV
// determinism and round-trip parsing.  SPECMOM_BIN is injected by CMake.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "specmom/csv.hpp"

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(SPECMOM_BIN) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("check mode passes on healthy configurations") {
    CHECK(run("partitions --k 8 --check --quiet") == 0);
    CHECK(run("theory --k-max 6 --weight constant:1 --check --quiet") == 0);
    CHECK(run("theory --k-max 6 --weight band:0.3 --normalized --check --quiet") == 0);
    CHECK(run("phi --weight periodic:0.25 --tol 1e-6 --check --quiet") == 0);
    CHECK(run("simulate --ensemble wigner --n 64 --trials 8 --k-max 4 --seed 5 --check --quiet") == 0);
    CHECK(run("relation check --relation wigner --sweep 16,32,64 --check --quiet") == 0);
}

TEST_CASE("json ensembles and gaussian entries work end to end") {
    CHECK(run("simulate --ensemble '{\"kind\":\"band\",\"rho\":0.25}' --n 32 --trials 4 --k-max 2 --quiet") == 0);
    CHECK(run("simulate --ensemble periodic:0.25 --n 32 --trials 4 --k-max 2 --dist gaussian --quiet") == 0);
    CHECK(run("simulate --ensemble slowband:0.7 --n 64 --trials 4 --k-max 4 --quiet") == 0);
}

TEST_CASE("usage and configuration errors exit 1") {
    CHECK(run("simulate --ensemble wigner --n 0") == 1);
    CHECK(run("simulate --ensemble unknown:1 --n 16") == 1);
    CHECK(run("theory --k-max 6 --weight nope:1") == 1);
    CHECK(run("partitions --k 7") == 1);
    CHECK(run("simulate --ensemble wigner --n 16 --no-such-flag") == 1);
    CHECK(run("phi --weight band:0.25 --out /nonexistent-dir/x.csv") == 1);
}

TEST_CASE("csv outputs are deterministic and re-parseable") {
    const std::string f1 = "/tmp/specmom_cli_a.csv";
    const std::string f2 = "/tmp/specmom_cli_b.csv";
    const std::string args =
        "simulate --ensemble band:0.25 --n 48 --trials 6 --k-max 4 --seed 11 --quiet --out ";
    REQUIRE(run(args + f1) == 0);
    REQUIRE(run(args + f2) == 0);
    const std::string body = slurp(f1);
    CHECK(body == slurp(f2));
    CHECK(!body.empty());

    const specmom::CsvTable table = specmom::read_csv(f1);
    CHECK(table.header ==
          std::vector<std::string>{"k", "theory", "empirical_mean", "empirical_var", "abs_err"});
    REQUIRE(table.rows.size() == 4);
    CHECK(table.rows[1][0] == 2.0);
    for (const auto& row : table.rows) CHECK(row.size() == 5);

    std::remove(f1.c_str());
    std::remove(f2.c_str());
}

TEST_CASE("theory and phi emit the documented columns") {
    const std::string f = "/tmp/specmom_cli_theory.csv";
    REQUIRE(run("theory --k-max 4 --weight constant:1 --quiet --out " + f) == 0);
    const specmom::CsvTable theory = specmom::read_csv(f);
    CHECK(theory.header == std::vector<std::string>{"k", "mu_theory", "catalan", "gap"});
    CHECK(theory.rows.size() == 4);
    std::remove(f.c_str());

    REQUIRE(run("phi --weight band:0.25 --grid 256 --quiet --out " + f) == 0);
    const specmom::CsvTable phi = specmom::read_csv(f);
    CHECK(phi.header == std::vector<std::string>{"x", "phi", "phi0", "deviation"});
    CHECK(phi.rows.size() == 256);
    std::remove(f.c_str());
}

TEST_CASE("spectrum writes the histogram with the semicircle reference") {
    const std::string f = "/tmp/specmom_cli_hist.csv";
    REQUIRE(run("spectrum --ensemble wigner --n 64 --trials 2 --bins 16 --seed 3 --quiet --out " + f) == 0);
    const specmom::CsvTable hist = specmom::read_csv(f);
    CHECK(hist.header == std::vector<std::string>{"bin_left", "bin_right", "empirical_density",
                                                  "semicircle_density"});
    CHECK(hist.rows.size() == 16);
    std::remove(f.c_str());
}

TEST_CASE("format_double uses 9 significant digits") {
    CHECK(specmom::format_double(0.5) == "0.5");
    CHECK(specmom::format_double(2.0680272108) == "2.06802721");
    CHECK(specmom::format_double(-1.0 / 3.0) == "-0.333333333");
}
