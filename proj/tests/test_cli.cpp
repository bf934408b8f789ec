#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "mine/error.hpp"
#include "mine/synthetic.hpp"

using namespace mine;
namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "mine_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const auto path = scratch(name);
    std::ofstream(path) << text;
    return path;
}

fs::path write_series(const std::string& name, const std::vector<double>& values) {
    std::ostringstream out;
    out.precision(17);
    for (double v : values) out << v << "\n";
    return write_file(name, out.str());
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "mine");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return cli::main_entry(static_cast<int>(argv.size()), argv.data());
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Io;
}

}  // namespace

TEST_CASE("reading a plain list") {
    const auto path = write_file("plain.txt", "1.5\n\n-2\n3e2\n");
    CHECK(cli::read_values(path.string(), std::nullopt) == std::vector<double>{1.5, -2.0, 300.0});
}

TEST_CASE("reading a CSV column skips the header") {
    const auto path = write_file("table.csv", "time,value\n0,10\n1,11.5\n2,9\n");
    CHECK(cli::read_values(path.string(), 1) == std::vector<double>{10.0, 11.5, 9.0});
    const auto bare = write_file("bare.csv", "0,10\n1,11\n");
    CHECK(cli::read_values(bare.string(), 0) == std::vector<double>{0.0, 1.0});
    CHECK(kind_of([&] { cli::read_values(path.string(), 5); }) == ErrorKind::InvalidParameters);
}

TEST_CASE("reading rejects bad content and missing files") {
    const auto bad = write_file("bad.txt", "1\n2\nabc\n");
    try {
        cli::read_values(bad.string(), std::nullopt);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidParameters);
        CHECK(std::string(e.what()).find('3') != std::string::npos);
    }
    const auto nan = write_file("nan.txt", "1\nnan\n");
    CHECK(kind_of([&] { cli::read_values(nan.string(), std::nullopt); }) == ErrorKind::NonFinite);
    CHECK(kind_of([&] { cli::read_values(scratch("missing.txt").string(), std::nullopt); }) == ErrorKind::Io);
}

TEST_CASE("a million-line file loads") {
    const auto values = mine::synthetic::random_walk(1'000'000, 9);
    const auto path = write_series("million.txt", values);
    cli::JobConfig c;
    c.input = path.string();
    const auto s = cli::load_series(c);
    CHECK(s.size() == 1'000'000);
    CHECK(s[999'999] == values[999'999]);
}

TEST_CASE("exit codes") {
    const auto input = write_series("walk.txt", mine::synthetic::random_walk(400, 2));
    const auto out = scratch("motifs.json");
    CHECK(run({"motifs", "-i", input.string(), "--lmin", "16", "--lmax", "20", "-o", out.string()}) == 0);
    CHECK(run({"motifs", "-i", scratch("nowhere.txt").string(), "--lmin", "16", "--lmax", "20"}) == 2);
    CHECK(run({"motifs", "-i", input.string(), "--lmin", "20", "--lmax", "16"}) == 3);
    CHECK(run({"motifs", "-i", input.string(), "--lmin", "16"}) == 3);
    CHECK(run({"motifs", "-i", input.string(), "--lmin", "16", "--lmax", "20", "--format", "xml"}) == 3);
    CHECK(run({"discords", "-i", input.string(), "--lmin", "16", "--lmax", "20", "--m", "3", "--p", "2"}) == 3);
    CHECK(run({"motif-sets", "-i", input.string(), "--lmin", "16", "--lmax", "20", "--radius", "-1"}) == 3);
    CHECK(run({"mp", "-i", input.string(), "--length", "300"}) == 3);
    CHECK(run({"frobnicate"}) == 3);
    CHECK(run({"--help"}) == 0);
}

TEST_CASE("motif document shape") {
    const auto values = mine::synthetic::random_walk(500, 4);
    const auto input = write_series("shape.txt", values);
    const auto out = scratch("shape.json");
    REQUIRE(run({"motifs", "-i", input.string(), "--lmin", "20", "--lmax", "30", "--trace", "-o", out.string()}) == 0);
    const auto doc = Json::parse(slurp(out));
    CHECK(doc["schema_version"] == cli::schema_version);
    CHECK(doc["command"] == "motifs");
    CHECK(doc["series"]["points"] == 500);
    CHECK(doc["job"]["lmin"] == 20);
    const auto& valmp = doc["result"]["valmp"];
    CHECK(valmp["norm_distances"].size() == 500 - 20 + 1);
    CHECK(valmp["lengths"].size() == 500 - 20 + 1);
    CHECK(doc["result"]["per_length"].size() == 11);
    CHECK(doc["result"]["pruning"]["lengths"].size() == 10);
    CHECK(doc["result"].contains("top_motif"));
    CHECK(doc["run"]["threads"] == 1);
}

TEST_CASE("documents are identical across runs and thread counts") {
    const auto input = write_series("det.txt", mine::synthetic::random_walk(1200, 6));
    cli::JobConfig c;
    c.input = input.string();
    c.lmin = 16;
    c.lmax = 32;
    c.p = 5;
    c.k = 2;
    c.m = 2;
    const auto s = cli::load_series(c);
    cli::JobConfig c4 = c;
    c4.threads = 4;
    const auto a = cli::render(cli::run_motifs(c, s), cli::Format::Json, false);
    const auto b = cli::render(cli::run_motifs(c4, s), cli::Format::Json, false);
    CHECK(a == b);
    CHECK(cli::render(cli::run_discords(c, s), cli::Format::Csv, false) ==
          cli::render(cli::run_discords(c4, s), cli::Format::Csv, false));
}

TEST_CASE("motifs subcommand agrees with the oracle subcommand") {
    const auto input = write_series("cmp.txt", mine::synthetic::random_walk(600, 10));
    const auto fast = scratch("fast.json");
    const auto slow = scratch("slow.json");
    REQUIRE(run({"motifs", "-i", input.string(), "--lmin", "12", "--lmax", "24", "--p", "3", "-o", fast.string()}) == 0);
    REQUIRE(run({"oracle", "motifs", "-i", input.string(), "--lmin", "12", "--lmax", "24", "-o", slow.string()}) == 0);
    const auto a = Json::parse(slurp(fast))["result"];
    const auto b = Json::parse(slurp(slow))["result"];
    CHECK(a["valmp"]["indices"] == b["valmp"]["indices"]);
    CHECK(a["valmp"]["lengths"] == b["valmp"]["lengths"]);
    const auto& x = a["valmp"]["norm_distances"];
    const auto& y = b["valmp"]["norm_distances"];
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i].get<double>() - y[i].get<double>()) < 1e-7);
}

TEST_CASE("CSV output has one row per offset") {
    const auto input = write_series("csv.txt", mine::synthetic::random_walk(300, 12));
    const auto out = scratch("out.csv");
    REQUIRE(run({"motifs", "-i", input.string(), "--lmin", "10", "--lmax", "12", "--format", "csv", "-o",
                 out.string()}) == 0);
    std::istringstream text(slurp(out));
    std::string line;
    std::getline(text, line);
    CHECK(line == "offset,distance,norm_distance,length,index");
    std::size_t rows = 0;
    while (std::getline(text, line)) ++rows;
    CHECK(rows == 300 - 10 + 1);
}

TEST_CASE("environment variables fill in options") {
    const auto input = write_series("env.txt", mine::synthetic::random_walk(300, 13));
    const auto out = scratch("env.json");
    ::setenv("MINE_LMAX", "14", 1);
    const int code = run({"motifs", "-i", input.string(), "--lmin", "10", "-o", out.string()});
    ::unsetenv("MINE_LMAX");
    REQUIRE(code == 0);
    CHECK(Json::parse(slurp(out))["result"]["per_length"].size() == 5);
}

TEST_CASE("validation messages") {
    cli::JobConfig c;
    c.lmin = 3;
    c.lmax = 10;
    CHECK(kind_of([&] { cli::validate(c, "motifs"); }) == ErrorKind::InvalidParameters);
    c.lmin = 8;
    c.threads = 0;
    CHECK(kind_of([&] { cli::validate(c, "motifs"); }) == ErrorKind::InvalidParameters);
    c.threads = 1;
    cli::validate(c, "motifs");
    c.top_k = 0;
    CHECK(kind_of([&] { cli::validate(c, "motif-sets"); }) == ErrorKind::InvalidParameters);
}
