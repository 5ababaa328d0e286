#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "react/cli.hpp"
#include "react/error.hpp"
#include "react/io.hpp"

using namespace react;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("react_test_" + std::to_string(std::rand()) + "_" +
                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
};

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("hypothesis json round trip") {
    Vector w(3);
    w << 1, -1, 0;
    const std::vector<HypothesisRegion> hs{
        HypothesisRegion::band(w, 0.1, 0.5),
        HypothesisRegion::half_space(w, 0.2, Direction::AtLeast, false),
        HypothesisRegion::interval(-1.0, 1.0 / 6.0),
        HypothesisRegion::max_pairwise(0.4, 3),
        complement(HypothesisRegion::max_pairwise(0.4, 3)),
        HypothesisRegion::whole_space(3),
    };
    for (const auto& h : hs) {
        const auto text = io::to_json(h).dump();
        CHECK(io::hypothesis_from_json(io::parse_json(text)) == h);
    }
    CHECK_THROWS_AS(io::hypothesis_from_json(io::parse_json(R"({"type":"blob"})")), io::ParseError);
    CHECK_THROWS_AS(io::hypothesis_from_json(io::parse_json(R"({"type":"band","delta":1})")), io::ParseError);
}

TEST_CASE("json parse errors carry line and column") {
    try {
        io::parse_json("{\n  \"a\": 1,\n  \"b\": ]\n}", "x.json");
        FAIL("expected ParseError");
    } catch (const io::ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() >= 8);
    }
}

TEST_CASE("study csv") {
    const auto s = io::parse_studies_csv("id,events_t,n_t,events_c,n_c\nA,1,10,2,12\r\n\nB, 3 ,30,4,40\n");
    REQUIRE(s.size() == 2);
    CHECK(s[1].id == "B");
    CHECK(s[1].events_treatment == 3);
    CHECK(s[1].n_control == 40);
    try {
        io::parse_studies_csv("id,events_t,n_t,events_c,n_c\nA,1,10,2,12\nB,3,x3,4,40\n", "s.csv");
        FAIL("expected ParseError");
    } catch (const io::ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 5);
    }
    try {
        io::parse_studies_csv("id,events,n_t,events_c,n_c\n", "s.csv");
        FAIL("expected ParseError");
    } catch (const io::ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 4);
    }
}

TEST_CASE("group csv in both layouts") {
    const auto one = io::parse_groups_csv("value\n1.5\n2\n-3e-1\n");
    REQUIRE(one.values.size() == 1);
    CHECK(one.values[0] == std::vector<double>{1.5, 2.0, -0.3});
    const auto longf = io::parse_groups_csv("group,value\nb,1\na,2\nb,3\n");
    REQUIRE(longf.labels == std::vector<std::string>{"b", "a"});
    CHECK(longf.values[0] == std::vector<double>{1.0, 3.0});
    CHECK_THROWS_AS(io::parse_groups_csv("group,value\na,1,2\n"), io::ParseError);
    CHECK_THROWS_AS(io::parse_groups_csv("value\nnan\n"), io::ParseError);
}

TEST_CASE("cli test on straddling data is agnostic") {
    TempDir t;
    const auto a = t.write("a.csv", "value\n1\n2\n3\n4\n5\n");
    const auto b = t.write("b.csv", "value\n1.5\n2.5\n3.5\n4.5\n5.5\n");
    const auto r = invoke({"test", "--delta", "0.5", "--alpha", "0.05", a, b});
    CHECK(r.code == 0);
    const auto j = io::parse_json(r.out);
    CHECK(j["decision"] == "agnostic");
    CHECK(j["results"][0]["decision"] == "agnostic");
}

TEST_CASE("cli exit codes and config errors") {
    TempDir t;
    const auto a = t.write("a.csv", "value\n1\n2\n3\n");
    const auto flat = t.write("flat.csv", "value\n1\n1\n1\n");
    const auto bad = t.write("bad.csv", "value\n1\nx\n");
    auto r = invoke({"test", a, a});
    CHECK(r.code == 2);
    CHECK(r.err.find("--delta") != std::string::npos);
    r = invoke({"test", "--delta", "1", "--nnt", "4", a, a});
    CHECK(r.code == 2);
    r = invoke({"test", "--delta", "1", "--alpha", "1.5", a, a});
    CHECK(r.code == 2);
    CHECK(r.err.find("--alpha") != std::string::npos);
    r = invoke({"test", "--delta", "1", a, bad});
    CHECK(r.code == 2);
    CHECK(r.err.find(":3:") != std::string::npos);
    r = invoke({"test", "--delta", "1", flat, flat});
    CHECK(r.code == 3);
    r = invoke({"nonsense"});
    CHECK(r.code == 2);
    r = invoke({"meta", "--nnt", "-2", t.write("s.csv", "id,events_t,n_t,events_c,n_c\nA,1,10,2,10\n")});
    CHECK(r.code == 2);
    CHECK(r.err.find("--nnt") != std::string::npos);
}

TEST_CASE("cli meta svg marks the region boundary at 1/6") {
    TempDir t;
    const auto s = t.write("s.csv", "id,events_t,n_t,events_c,n_c\nA,10,100,12,100\nB,20,200,18,200\nC,0,50,1,50\n");
    const auto r = invoke({"meta", "--nnt", "6", s, "--format", "svg"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("<svg", 0) == 0);
    CHECK(r.out.find("class=\"region-boundary\" data-value=\"0.1667\"") != std::string::npos);
    CHECK(r.out.find("Pooled (random)") > r.out.find("Pooled (fixed)"));
    CHECK(r.out.find("Pooled (fixed)") > r.out.find(">C<"));
    const auto j = io::parse_json(invoke({"meta", "--nnt", "6", s}).out);
    CHECK(j["region"][1].get<double>() == 1.0 / 6.0);
}

TEST_CASE("cli simulate is byte-reproducible and honours REACT_SEED") {
    TempDir t;
    const auto sc = t.write("sc.json", R"({"group_means":[0,0.2],"group_sds":[1,1],"group_ns":[20,20],"delta":0.5})");
    const auto a = invoke({"simulate", "--reps", "1000", "--seed", "7", sc});
    const auto b = invoke({"simulate", "--reps", "1000", "--seed", "7", sc});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    ::setenv("REACT_SEED", "7", 1);
    const auto c = invoke({"simulate", "--reps", "1000", sc});
    ::unsetenv("REACT_SEED");
    CHECK(c.out == a.out);
    const auto d = invoke({"simulate", "--reps", "1000", "--seed", "8", sc});
    CHECK(d.out != a.out);
    CHECK(invoke({"simulate", "--reps", "10", "--seed", "7", sc}).code == 2);

    const auto curve = t.write("curve.json",
                               R"({"kind":"curve","n_grid":[10,100],"group_means":[0,0],"group_sds":[1,1],"group_ns":[2,2],"delta":0.5})");
    const auto csv = invoke({"simulate", "--reps", "1000", "--seed", "1", "--format", "csv", curve});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("n,accept_rate,reject_rate,agnostic_rate\n10,", 0) == 0);
}

TEST_CASE("cli family and bayes") {
    TempDir t;
    std::string data = "group,value\n";
    for (int k = 0; k < 30; ++k) {
        data += "g1," + std::to_string(0.1 * (k % 7)) + "\n";
        data += "g2," + std::to_string(0.1 * (k % 5) + 0.05) + "\n";
        data += "g3," + std::to_string(0.1 * (k % 6) + 0.1) + "\n";
    }
    const auto f = t.write("g.csv", data);
    auto r = invoke({"family", "--delta", "0.5", f});
    REQUIRE(r.code == 0);
    auto j = io::parse_json(r.out);
    CHECK(j["results"].size() == 4);
    CHECK(j["coherence"]["coherent"] == true);
    r = invoke({"family", "--delta", "0.5", "--format", "svg", f});
    CHECK(r.code == 0);
    CHECK(r.out.find("class=\"ellipse\"") != std::string::npos);

    const auto prior = t.write("p.json", R"({"family":"nig","m":0,"k":1,"a":3,"b":3})");
    r = invoke({"bayes", "--prior", prior, "--delta", "0.5", "--seed", "3", "--draws", "5000", f});
    REQUIRE(r.code == 0);
    j = io::parse_json(r.out);
    CHECK(j["results"].size() == 4);
    CHECK(invoke({"bayes", "--prior", prior, "--delta", "0.5", "--seed", "3", "--draws", "5000", f}).out == r.out);

    const auto jp = t.write("j.json", R"({"family":"beta-jeffreys"})");
    const auto s = t.write("s.csv", "id,events_t,n_t,events_c,n_c\nA,10,100,12,100\n");
    r = invoke({"bayes", "--prior", jp, "--nnt", "6", "--seed", "3", "--draws", "5000", s});
    REQUIRE(r.code == 0);
    j = io::parse_json(r.out);
    CHECK(j["studies"][0]["decision"] == "accept");
    CHECK(invoke({"bayes", "--delta", "0.5", f}).code == 2);
}
