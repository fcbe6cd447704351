#include "doctest.h"

#include "cli.hpp"
#include "json.hpp"
#include "scalar_oracle.hpp"
#include "ssf/linalg.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ssf;
using namespace ssf::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "ssf");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("ssf_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string& header) {
    std::ifstream is(p);
    std::getline(is, header);
    std::vector<std::vector<double>> rows;
    for (std::string line; std::getline(is, line);) {
        std::vector<double> row;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("complex parsing accepts the usual spellings") {
    CHECK(parse_complex("0.5") == Complex(0.5, 0.0));
    CHECK(parse_complex("-0.3+0.4i") == Complex(-0.3, 0.4));
    CHECK(parse_complex("2-1e-3i") == Complex(2.0, -1e-3));
    CHECK(parse_complex("1e-2+1e+1i") == Complex(0.01, 10.0));
    CHECK(parse_complex("-i") == Complex(0.0, -1.0));
    CHECK(parse_complex("0.25i") == Complex(0.0, 0.25));
    CHECK(parse_complex("3,-4") == Complex(3.0, -4.0));
    CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
    CHECK_THROWS_AS(parse_complex(""), ConfigError);
}

TEST_CASE("format_real round-trips doubles") {
    for (double x : {0.1, -1.0 / 3.0, 6.283185307179586, 1e-300, 0.0}) CHECK(std::stod(format_real(x)) == x);
}

TEST_CASE("validation rejects bad configurations") {
    RunConfig c;
    CHECK_NOTHROW(validate(c));
    auto bad = [](auto mutate) {
        RunConfig k;
        mutate(k);
        CHECK_THROWS_AS(validate(k), ConfigError);
    };
    bad([](RunConfig& k) { k.dim = 0; });
    bad([](RunConfig& k) { k.scale = 0.0; });
    bad([](RunConfig& k) { k.scale = 3.2; });
    bad([](RunConfig& k) { k.s_nodes = 0; });
    bad([](RunConfig& k) { k.grid = 1; });
    bad([](RunConfig& k) { k.tol = 0.0; });
    bad([](RunConfig& k) { k.ranks = {16, 8}; });
    bad([](RunConfig& k) { k.ranks = {}; });
    bad([](RunConfig& k) { k.threads = 0; });
    bad([](RunConfig& k) {
        k.command = Command::Resolvent;
        k.z = Complex(0.0, 1.0);
    });
    bad([](RunConfig& k) {
        k.command = Command::Converge;
        k.ambient = 128;
    });
}

TEST_CASE("exit status 2 for invalid input") {
    CHECK(invoke({"bogus"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"verify", "--dim", "0"}).code == 2);
    CHECK(invoke({"verify", "--dim", "x"}).code == 2);
    CHECK(invoke({"verify", "--scale", "4"}).code == 2);
    CHECK(invoke({"resolvent", "--z", "0.6+0.8i"}).code == 2);
    CHECK(invoke({"eta", "--format", "xml"}).code == 2);
    CHECK(invoke({"verify", "--config", "/nonexistent/cfg.json"}).code == 2);
    const auto r = invoke({"verify", "--dim", "0"});
    CHECK(r.err.find("dim") != std::string::npos);
}

TEST_CASE("verify on a tiny scalar instance passes") {
    const auto dir = scratch("tiny");
    const auto r = invoke({"verify", "--dim", "1", "--scale", "1e-9", "--trials", "1", "--out", dir.string()});
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(slurp(dir / "verify.json"));
    REQUIRE(doc.is_array());
    CHECK(doc.size() == 2 * 8 + 1 + 3);
    for (const auto& row : doc) {
        CHECK(row["pass"].get<bool>());
        CHECK(std::hypot(row["lhs"][0].get<double>(), row["lhs"][1].get<double>()) <= 1e-9);
    }
}

TEST_CASE("batch verify at dimension 8") {
    const auto dir = scratch("batch");
    CHECK(invoke({"verify", "--dim", "8", "--trials", "100", "--rmax", "8", "--tol", "1e-8", "--out", dir.string()})
              .code == 0);
}

TEST_CASE("output is byte-identical across runs and thread counts") {
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    CHECK(invoke({"verify", "--dim", "3", "--trials", "4", "--out", a.string()}).code == 0);
    CHECK(invoke({"verify", "--dim", "3", "--trials", "4", "--threads", "3", "--out", b.string()}).code == 0);
    CHECK(slurp(a / "verify.json") == slurp(b / "verify.json"));
    CHECK(invoke({"eta", "--dim", "3", "--grid", "65", "--out", a.string()}).code == 0);
    CHECK(invoke({"eta", "--dim", "3", "--grid", "65", "--out", b.string()}).code == 0);
    CHECK(slurp(a / "eta.csv") == slurp(b / "eta.csv"));
    CHECK(slurp(a / "eta.json") == slurp(b / "eta.json"));
}

TEST_CASE("CSV headers") {
    const auto dir = scratch("headers");
    CHECK(invoke({"eta", "--dim", "2", "--grid", "5", "--out", dir.string()}).code == 0);
    CHECK(invoke({"converge", "--ambient", "64", "--ranks", "4,8,16", "--threshold", "1", "--out", dir.string()})
              .code == 0);
    std::string h1, h2;
    const auto eta = read_csv(dir / "eta.csv", h1);
    const auto conv = read_csv(dir / "converge.csv", h2);
    CHECK(h1 == "t,eta,eta0");
    CHECK(h2 == "rank,compressed_trace_re,compressed_trace_im,abs_diff");
    CHECK(eta.size() == 5);
    CHECK(eta.front()[0] == 0.0);
    CHECK(eta.back()[0] == doctest::Approx(kTwoPi).epsilon(1e-15));
    REQUIRE(conv.size() == 3);
    CHECK(conv[0][0] == 4.0);
    CHECK(conv[2][0] == 16.0);
}

TEST_CASE("eta command reproduces the scalar closed form") {
    const auto dir = scratch("scalar");
    CHECK(invoke({"eta", "--dim", "1", "--seed", "7", "--scale", "0.8", "--s-nodes", "1024", "--grid", "257",
                  "--out", dir.string()})
              .code == 0);
    const RandomPair pair = random_pair(7, 1, 0.8);
    const double alpha = pair.a(0, 0).real();
    const double beta = std::arg(pair.u0(0, 0));
    std::string header;
    const auto rows = read_csv(dir / "eta.csv", header);
    REQUIRE(rows.size() == 257);
    for (const auto& row : rows) {
        CHECK(std::abs(row[1] - oracle::scalar_eta(alpha, beta, row[0])) <= 2.0 * std::abs(alpha) / 1024 + 1e-15);
    }
}

TEST_CASE("JSON config supplies defaults and flags override it") {
    const auto dir = scratch("config");
    const fs::path cfg_path = dir / "cfg.json";
    std::ofstream(cfg_path) << R"({"command": "resolvent", "dim": 3, "seed": 5, "z": "2", "format": "json"})";

    const RunConfig merged = apply_json(RunConfig{}, slurp(cfg_path));
    CHECK(merged.command == Command::Resolvent);
    CHECK(merged.dim == 3);
    CHECK(merged.z == Complex(2.0, 0.0));
    CHECK_THROWS_AS(apply_json(RunConfig{}, R"({"dimm": 3})"), ConfigError);
    CHECK_THROWS_AS(apply_json(RunConfig{}, R"({"dim": "three"})"), ConfigError);
    CHECK_THROWS_AS(apply_json(RunConfig{}, "[1, 2"), ConfigError);

    const auto r = invoke({"--config", cfg_path.string(), "--z", "0.5", "--out", dir.string()});
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(slurp(dir / "resolvent.json"));
    CHECK(doc["z"][0].get<double>() == 0.5);
    CHECK(doc["pass"].get<bool>());

    // positional command beats the file; the file's json format still applies
    const auto r2 = invoke({"eta", "--config", cfg_path.string(), "--grid", "9", "--out", dir.string()});
    CHECK(r2.code == 0);
    CHECK_FALSE(fs::exists(dir / "eta.csv"));
    const auto eta = nlohmann::json::parse(slurp(dir / "eta.json"));
    CHECK(eta["t"].size() == 9);
    CHECK(eta["dim"].get<int>() == 3);
}

TEST_CASE("bounds and converge report passing runs") {
    const auto dir = scratch("bounds");
    CHECK(invoke({"bounds", "--ambient", "64", "--ranks", "16", "--out", dir.string()}).code == 0);
    const auto doc = nlohmann::json::parse(slurp(dir / "bounds.json"));
    REQUIRE(doc.size() == 3);
    for (const auto& audit : doc) CHECK(audit["all_hold"].get<bool>());
    // a threshold no finite truncation can reach gives exit 1
    CHECK(invoke({"converge", "--ambient", "64", "--ranks", "2,4", "--threshold", "1e-30", "--out", dir.string()})
              .code == 1);
}
