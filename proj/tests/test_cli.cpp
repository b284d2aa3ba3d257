#include "doctest.h"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "mzv/cache.hpp"
#include "mzv/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = mzv::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string &tag) {
        path = fs::temp_directory_path() / ("mzv-test-" + tag + "-" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

double timed_binary(const std::string &cmd) {
    const auto t0 = std::chrono::steady_clock::now();
    const int rc = std::system((cmd + " > /dev/null").c_str());
    REQUIRE(rc == 0);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

TEST_CASE("dims table") {
    auto r = run({"dims", "--max", "10"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j.size() == 11);
    CHECK(j.back()["n"] == 10);
    CHECK(j.back()["d"] == 7);
    CHECK(j[3]["d"] == 1);

    auto csv = run({"dims", "--max", "4", "--csv"});
    CHECK(csv.out == "n,d,gf,op\n0,1,1,1\n1,0,0,0\n2,1,1,0\n3,1,1,1\n4,1,1,0\n");

    auto lemma = run({"dims", "--max", "12", "--check-lemma"});
    CHECK(lemma.code == 0);
    for (const auto &row : json::parse(lemma.out))
        CHECK(row["lemma_ok"] == true);
}

TEST_CASE("eval prints pi^2/6") {
    TempDir dir("eval");
    auto r = run({"--cache-dir", dir.path.string(), "eval", "--index", "2", "--prec", "30"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["value"].get<std::string>().rfind("1.6449340668", 0) == 0);
    CHECK(j["backend"] == "holder");
    CHECK(j["index"] == "2");
    CHECK(std::stod(j["error_bound"].get<std::string>()) < 1e-29);

    auto series = run({"eval", "--index", "2", "--backend", "series", "--no-cache"});
    CHECK(series.code == 0);
    CHECK(json::parse(series.out)["value"].get<std::string>().rfind("1.6449", 0) == 0);
}

TEST_CASE("purity summary") {
    auto r = run({"purity", "--n", "4"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["all_pass"] == true);
    CHECK(j["total_dim"] == 8);
    auto one = json::parse(run({"purity", "--n", "4", "--word", "110"}).out);
    CHECK(one["entries"].size() == 1);
    CHECK(one["entries"][0]["betti"] == json::array({0, 1, 0, 0, 0}));
}

TEST_CASE("relations and pslq") {
    auto r = json::parse(run({"relations", "--weight", "5"}).out);
    CHECK(r["num_words"] == 8);
    CHECK(r["upper_bound"] == 2);
    CHECK(r["d_n"] == 2);
    CHECK(r["all_verified"] == true);
    auto nd = json::parse(run({"relations", "--weight", "5", "--no-duality", "--no-verify"}).out);
    CHECK(nd["upper_bound"] == 6);
    CHECK(nd["all_verified"].is_null());

    auto p = run({"pslq", "--values", "zeta:4,zeta:2^2", "--prec", "60", "--no-cache"});
    REQUIRE(p.code == 0);
    auto pj = json::parse(p.out);
    CHECK(pj["status"] == "found");
    CHECK(pj["coefficients"] == json::array({5, -2}));

    // comma lists continue a zeta index; ';' forces the split
    auto q = json::parse(run({"pslq", "--values", "zeta:2,3,zeta:5,zeta:2*zeta:3", "--prec", "80", "--no-cache"}).out);
    CHECK(q["coefficients"] == json::array({2, 11, -6}));
    auto none = json::parse(run({"pslq", "--values", "zeta:5;zeta:2,3", "--prec", "80", "--no-cache"}).out);
    CHECK(none["status"] == "none_below_bound");

    auto lit = json::parse(run({"pslq", "--values", "pi^2,zeta:2", "--prec", "40", "--no-cache"}).out);
    CHECK(lit["coefficients"] == json::array({1, -6}));
}

TEST_CASE("paths subcommands") {
    auto v = run({"paths", "verify", "--prop", "2", "--n", "2"});
    REQUIRE(v.code == 0);
    auto j = json::parse(v.out);
    CHECK(j["all_pass"] == true);
    CHECK(j["verdicts"].size() == 16);
    auto ch = json::parse(run({"paths", "ch", "--z", "-7/3"}).out);
    CHECK(ch["pass"] == true);
    CHECK(ch["rhs"] == "10/7");
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"eval"}).code == 2);
    CHECK(run({"eval", "--index", "2,1"}).code == 2);
    CHECK(run({"eval", "--index", "2", "--backend", "quad"}).code == 2);
    CHECK(run({"dims", "--max", "x"}).code == 2);
    CHECK(run({"paths", "verify", "--prop", "4", "--n", "2"}).code == 2);
    CHECK(run({"pslq", "--values", "zeta:4,banana"}).code == 2);
    CHECK(run({"sweep", "medium"}).code == 2);
    auto e = run({"eval", "--index", "2,1"});
    CHECK(e.err.find("--index") != std::string::npos);
}

TEST_CASE("output is deterministic") {
    auto a = run({"relations", "--weight", "6", "--list"});
    auto b = run({"relations", "--weight", "6", "--list"});
    CHECK(a.out == b.out);
    CHECK(run({"purity", "--n", "5"}).out == run({"purity", "--n", "5"}).out);
}

TEST_CASE("cache round trip and corrupt lines") {
    TempDir dir("cache");
    const std::string d = dir.path.string();
    auto first = run({"--cache-dir", d, "eval", "--index", "1,3", "--prec", "40"});
    auto second = run({"--cache-dir", d, "eval", "--index", "1,3", "--prec", "40"});
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);

    mzv::ValueCache cache(dir.path);
    auto rec = cache.lookup(mzv::mzv_key("holder", "1,3"), 40);
    REQUIRE(rec.has_value());
    CHECK(rec->value == json::parse(first.out)["value"]);
    CHECK(rec->schema_version == 1);
    CHECK(rec->weight == 4);

    // unknown kinds are kept, junk is skipped with a warning
    {
        std::ofstream f(cache.file(), std::ios::app);
        f << "{not json\n";
        f << R"({"schema_version":2,"kind":"transport_coeff","key":"t:x","precision":10,"value":"1","bound":"0","created_at":"2026-01-01T00:00:00Z"})"
          << "\n";
    }
    auto third = run({"--cache-dir", d, "eval", "--index", "1,3", "--prec", "40"});
    CHECK(third.code == 0);
    CHECK(third.out == first.out);
    CHECK(third.err.find("warning") != std::string::npos);
    auto stats = json::parse(run({"--cache-dir", d, "cache", "stats"}).out);
    CHECK(stats["corrupt"] == 1);
    CHECK(stats["kinds"]["transport_coeff"] == 1);

    CHECK(run({"--cache-dir", d, "cache", "clear"}).code == 0);
    CHECK(json::parse(run({"--cache-dir", d, "cache", "stats"}).out)["records"] == 0);
}

TEST_CASE("cache records keep decimal strings verbatim") {
    mzv::CacheRecord r;
    r.kind = "mzv";
    r.key = mzv::mzv_key("holder", "1,3");
    r.precision = 60;
    r.value = "0.270580808427784547879000924481817178186999971225542543409960";
    r.bound = "5.000e-61";
    r.created_at = "2026-10-18T00:00:00Z";
    r.index = "1,3";
    r.weight = 4;
    r.backend = "holder";
    const auto back = mzv::record_from_line(mzv::record_to_line(r));
    CHECK(back.value == r.value);
    CHECK(back.bound == r.bound);
    CHECK(back.key == "mzv:holder:1,3");
    CHECK(back.weight == 4);
    CHECK_THROWS_AS(mzv::record_from_line("[1,2]"), std::runtime_error);
}

TEST_CASE("a cache hit is at least 10x faster") {
    TempDir dir("speed");
    const std::string cmd = std::string(MZV_BINARY) + " --cache-dir " + dir.path.string() +
                            " eval --index 1,1,3 --backend chen --prec 40";
    const double cold = timed_binary(cmd);
    double warm = 1e9;
    for (int i = 0; i < 3; ++i)
        warm = std::min(warm, timed_binary(cmd));
    MESSAGE("cold " << cold << " s, warm " << warm << " s");
    CHECK(cold >= 10 * warm);
}
