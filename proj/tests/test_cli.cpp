#include "qregress/cli.hpp"
#include "qregress/errors.hpp"

#include "test_support.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace qregress;
using io::json;

namespace {

const std::string kData = QREGRESS_DATA_DIR;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string& header) {
    std::istringstream in(text);
    std::getline(in, header);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

Complex value_of(const json& j) { return {j[0].get<double>(), j[1].get<double>()}; }

}  // namespace

TEST_CASE("parse_mode") {
    for (const char* name : {"qrt-schrodinger", "qrt-heisenberg", "oracle-seq", "oracle-joint"})
        CHECK(cli::mode_name(cli::parse_mode(name)) == name);
    CHECK_THROWS_AS(cli::parse_mode("exact"), ValidationError);
}

TEST_CASE("evolve") {
    const Outcome r = invoke({"evolve", "--model", kData + "/atom_decay.json", "--rho", kData + "/rho_excited.json",
                              "--t-end", "1", "--steps", "2"});
    REQUIRE(r.code == 0);
    std::string header;
    const auto rows = parse_csv(r.out, header);
    CHECK(header == "t,rho_0_0_re,rho_0_0_im,rho_0_1_re,rho_0_1_im,rho_1_0_re,rho_1_0_im,rho_1_1_re,rho_1_1_im,trace");
    REQUIRE(rows.size() == 3);
    const double expected[] = {1.0, std::exp(-0.5), std::exp(-1.0)};
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(std::abs(rows[k][0] - 0.5 * double(k)) <= 1e-15);
        CHECK(std::abs(rows[k][7] - expected[k]) <= 1e-12);
        CHECK(std::abs(rows[k][9] - 1.0) <= 1e-12);
    }

    const Outcome closed = invoke({"evolve", "--model", kData + "/closed_model.json", "--rho",
                                   kData + "/rho_excited.json", "--steps", "5"});
    REQUIRE(closed.code == 0);
    const auto still = parse_csv(closed.out, header);
    REQUIRE(still.size() == 6);
    for (const auto& row : still)
        for (std::size_t c = 1; c < row.size(); ++c) CHECK(row[c] == still[0][c]);

    CHECK(invoke({"evolve", "--model", kData + "/atom_decay.json", "--rho", kData + "/rho_excited.json", "--steps",
                  "0"})
              .code == cli::kValidation);
    CHECK(invoke({"evolve", "--model", kData + "/atom_decay.json", "--rho", kData + "/rho_excited.json", "--steps",
                  "-3"})
              .code == cli::kValidation);
}

TEST_CASE("correlate in every mode") {
    const std::vector<std::string> base = {"correlate", "--model", kData + "/atom_decay.json", "--rho",
                                           kData + "/rho_excited.json", "--query", kData + "/query_dipole.json"};
    for (const char* mode : {"qrt-schrodinger", "qrt-heisenberg"}) {
        auto args = base;
        args.insert(args.end(), {"--mode", mode});
        const Outcome r = invoke(args);
        REQUIRE(r.code == 0);
        const json j = json::parse(r.out);
        CHECK(j["mode"] == mode);
        CHECK(std::abs(value_of(j["value"]) - std::exp(-0.75)) <= 1e-10);
    }
    for (const char* mode : {"oracle-seq", "oracle-joint"}) {
        auto args = base;
        args.insert(args.end(), {"--mode", mode, "--dt", "0.015625"});
        const Outcome r = invoke(args);
        REQUIRE(r.code == 0);
        const json j = json::parse(r.out);
        CHECK(std::abs(value_of(j["value"]) - std::exp(-0.75)) <= 2e-2);
        CHECK(std::abs(value_of(j["reference"]) - std::exp(-0.75)) <= 1e-10);
        REQUIRE(j["trend"].size() == 2);
        CHECK(j["error_ratio"].get<double>() >= 1.7);
        CHECK(j["error_ratio"].get<double>() <= 2.3);
        CHECK(r.err.find("oracle dt=") != std::string::npos);
    }

    // Unordered times: joint mode only.
    const std::vector<std::string> swapped = {"correlate", "--model", kData + "/atom_decay.json", "--rho",
                                              kData + "/rho_excited.json", "--query",
                                              kData + "/query_dipole_swapped.json", "--dt", "0.0625"};
    auto joint = swapped;
    joint.insert(joint.end(), {"--mode", "oracle-joint"});
    const Outcome rj = invoke(joint);
    REQUIRE(rj.code == 0);
    CHECK_FALSE(json::parse(rj.out).contains("reference"));
    CHECK(invoke(swapped).code == cli::kValidation);

    auto bad_grid = base;
    bad_grid.insert(bad_grid.end(), {"--mode", "oracle-seq", "--dt", "0.3"});
    CHECK(invoke(bad_grid).code == cli::kValidation);
    auto bad_mode = base;
    bad_mode.insert(bad_mode.end(), {"--mode", "magic"});
    CHECK(invoke(bad_mode).code == cli::kValidation);
}

TEST_CASE("oracle convergence study") {
    const Outcome r = invoke({"oracle", "--model", kData + "/atom_decay.json", "--rho", kData + "/rho_excited.json",
                              "--query", kData + "/query_dipole.json", "--dt", "0.0625", "--levels", "3"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["runs"].size() == 3);
    REQUIRE(j["error_ratios"].size() == 2);
    for (const auto& ratio : j["error_ratios"]) {
        CHECK(ratio.get<double>() >= 1.7);
        CHECK(ratio.get<double>() <= 2.3);
    }
}

TEST_CASE("joint budget from the environment") {
    const std::vector<std::string> args = {"correlate", "--model", kData + "/atom_decay.json", "--rho",
                                           kData + "/rho_excited.json", "--query", kData + "/query_dipole.json",
                                           "--mode", "oracle-joint", "--dt", "0.0625"};
    ::setenv("QREGRESS_BUDGET", "4", 1);
    CHECK(cli::default_budget() == 4);
    CHECK(invoke(args).code == cli::kValidation);
    auto with_flag = args;
    with_flag.insert(with_flag.end(), {"--budget", "1000"});
    CHECK(invoke(with_flag).code == 0);
    ::setenv("QREGRESS_BUDGET", "lots", 1);
    CHECK(invoke(args).code == cli::kValidation);
    ::unsetenv("QREGRESS_BUDGET");
    CHECK(cli::default_budget() == kDefaultJointBudget);
    CHECK(invoke(args).code == 0);
}

TEST_CASE("ito") {
    const Outcome r = invoke({"ito", "--dt", "0.01", "--trunc", "3"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(std::abs(value_of(j["dB_dBdag"]) - 0.01) <= 1e-15);
    CHECK(j["max_deviation"].get<double>() <= 1e-15);
    CHECK(invoke({"ito", "--dt", "0"}).code == cli::kValidation);
}

TEST_CASE("classical") {
    const Outcome r = invoke({"classical", "--model", kData + "/atom_decay.json", "--rho", kData + "/rho_excited.json",
                              "--query", kData + "/query_three_time.json"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["diff"].get<double>() <= 1e-10);
    CHECK(j["column_generator"] == json::parse("[[0.0, 1.0], [0.0, -1.0]]"));

    CHECK(invoke({"classical", "--model", kData + "/driven_atom.json", "--rho", kData + "/rho_excited.json", "--query",
                  kData + "/query_three_time.json"})
              .code == cli::kValidation);
}

TEST_CASE("exit codes and output files") {
    CHECK(invoke({}).code == cli::kValidation);
    CHECK(invoke({"frobnicate"}).code == cli::kValidation);
    CHECK(invoke({"evolve", "--model", kData + "/missing.json", "--rho", kData + "/rho_excited.json"}).code ==
          cli::kIo);
    const Outcome bad = invoke({"evolve", "--model", kData + "/bad_model_nonhermitian.json", "--rho",
                                kData + "/rho_excited.json"});
    CHECK(bad.code == cli::kValidation);
    CHECK(bad.err.find("bad_model_nonhermitian") != std::string::npos);

    const auto path = std::filesystem::temp_directory_path() / "qregress_cli_out.json";
    std::filesystem::remove(path);
    const Outcome written = invoke({"correlate", "--model", kData + "/atom_decay.json", "--rho",
                                    kData + "/rho_excited.json", "--query", kData + "/query_population.json", "--out",
                                    path.string()});
    CHECK(written.code == 0);
    CHECK(written.out.empty());
    std::ifstream in(path);
    const json j = json::parse(in);
    CHECK(std::abs(value_of(j["value"]) - std::exp(-1.0)) <= 1e-10);
    std::filesystem::remove(path);

    CHECK(invoke({"correlate", "--model", kData + "/atom_decay.json", "--rho", kData + "/rho_excited.json", "--query",
                  kData + "/query_population.json", "--out", "/nonexistent_dir/x.json"})
              .code == cli::kIo);
}

TEST_CASE("verify is deterministic per seed") {
    const Outcome a = invoke({"verify", "--seed", "3"});
    const Outcome b = invoke({"verify", "--seed", "3"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("FAIL") == std::string::npos);
    CHECK(invoke({"verify", "--model", kData + "/bad_model_nonhermitian.json"}).code == cli::kValidation);
}
