#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "quadrica/certificate_json.hpp"
#include "quadrica/cli.hpp"

using namespace quadrica;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::string temp_path(const char* tag) { return std::string("quadrica_cli_") + tag + ".json"; }

}  // namespace

TEST_CASE("invariants of the canonical chart form") {
    auto r = run({"invariants", "--entries", "y;x;x*y;x^2+y^2+1-2*x*y-2*x-2*y", "--alpha", "x|y"});
    CHECK(r.code == cli::kExitDecided);
    CHECK(r.out.find("discriminant: {x^2-2*x*y+y^2-2*x-2*y+1}") != std::string::npos);
    CHECK(r.out.find("similar to the canonical form via scale 1") != std::string::npos);
    CHECK(r.out.find("alpha residues:\n  {x=0}: [t]") != std::string::npos);

    auto j = run({"invariants", "--entries", "y;x;x*y;x^2+y^2+1-2*x*y-2*x-2*y", "--json"});
    CHECK(j.code == 0);
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["similar_to_canonical"] == true);
    CHECK(parsed["clifford_residues"].size() == 3);
}

TEST_CASE("homogeneous entries report their type") {
    auto r = run({"invariants", "--homogeneous", "--entries", "z^2;x*z;x*y;y*(x^2+y^2+z^2-2*x*y-2*x*z-2*y*z)"});
    CHECK(r.code == 0);
    CHECK(r.out.find("type: 2,2,2,3") != std::string::npos);
}

TEST_CASE("input errors exit with code 2") {
    auto bad = run({"invariants", "--entries", "y;x;x*y;x^^2"});
    CHECK(bad.code == cli::kExitInputError);
    CHECK(bad.err.find("position") != std::string::npos);
    CHECK(run({"invariants", "--entries", "y;x;x*y"}).code == cli::kExitInputError);
    CHECK(run({"certify", "--type", "1,1,1"}).code == cli::kExitInputError);
    CHECK(run({"certify", "--type", "0,0,1,2"}).code == cli::kExitInputError);
    CHECK(run({"certify", "--surface", "p2", "--type", "0:0,0:0,2:2,4:4"}).code == cli::kExitInputError);
    CHECK(run({"certify", "--surface", "p3", "--type", "2,2,2,2"}).code == cli::kExitInputError);
    CHECK(run({"table", "--bound", "21"}).code == cli::kExitInputError);
    CHECK(run({"frobnicate"}).code == cli::kExitInputError);
    CHECK(run({"replay", "--file", "/nonexistent/quadrica.json"}).code == cli::kExitInputError);
    CHECK(run({"invariants", "--entries", "y;x;x*y;x", "--alpha", "x"}).code == cli::kExitInputError);
}

TEST_CASE("help exits cleanly") {
    auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("certify") != std::string::npos);
}

TEST_CASE("certify exit codes follow the verdict") {
    auto hpt = run({"certify", "--type", "2,2,2,2"});
    CHECK(hpt.code == cli::kExitDecided);
    CHECK(hpt.out.find("verdict: NotStablyRational") != std::string::npos);
    CHECK(hpt.out.find("reason: hpt") != std::string::npos);

    auto rat = run({"certify", "--type", "0,0,2,4"});
    CHECK(rat.code == cli::kExitDecided);
    CHECK(rat.out.find("verdict: Rational") != std::string::npos);

    auto open = run({"certify", "--type", "1,1,1,3"});
    CHECK(open.code == cli::kExitDecided);
    CHECK(open.out.find("verdict: Open") != std::string::npos);

    auto unknown = run({"certify", "--surface", "p1xp1", "--type", "0:2,2:0,2:2,4:0"});
    CHECK(unknown.code == cli::kExitUnknown);
    CHECK(unknown.out.find("note:") != std::string::npos);
}

TEST_CASE("table rows") {
    auto zero = run({"table", "--bound", "0"});
    CHECK(zero.code == 0);
    CHECK(lines(zero.out) == std::vector<std::string>{"0,0,0,0\tRational\tsum-at-most-4\t-"});

    auto six = lines(run({"table", "--bound", "6"}).out);
    auto has = [&](const std::string& prefix) {
        for (const auto& l : six)
            if (l.rfind(prefix, 0) == 0) return true;
        return false;
    };
    CHECK(has("0,2,2,2\tOpen\topen-type\t-"));
    CHECK(has("2,2,2,2\tNotStablyRational\thpt\t"));
    CHECK(has("0,0,4,6\tRational\ttwo-zero-degrees\t-"));
    CHECK(has("1,1,1,5\tNotStablyRational\tplane-q3\t"));

    auto js = lines(run({"table", "--bound", "2", "--json"}).out);
    REQUIRE(!js.empty());
    auto row = nlohmann::json::parse(js.front());
    CHECK(row["type"] == "0,0,0,0");
    CHECK(row["digest"] == "-");
}

TEST_CASE("table output does not depend on the job count") {
    auto one = run({"table", "--surface", "p1xp1", "--bound", "3", "--jobs", "1"});
    auto eight = run({"table", "--surface", "p1xp1", "--bound", "3", "--jobs", "8"});
    CHECK(one.code == 0);
    CHECK(one.out == eight.out);
    CHECK(run({"table", "--bound", "6", "--jobs", "1"}).out == run({"table", "--bound", "6", "--jobs", "4"}).out);
}

TEST_CASE("certificate JSON replays and detects tampering") {
    auto r = run({"certify", "--type", "2,2,2,2", "--json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "NotStablyRational");
    Certificate c = certificate_from_json(j["certificate"]);
    CHECK(emit_certificate(c) == j["certificate"].dump());

    const std::string good = temp_path("good");
    std::ofstream(good) << r.out;
    auto ok = run({"replay", "--file", good});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("replay ok") != std::string::npos);

    j["certificate"]["discriminant"] = nlohmann::json::array({"x"});
    const std::string bad = temp_path("bad");
    std::ofstream(bad) << j["certificate"].dump();
    auto mismatch = run({"replay", "--file", bad});
    CHECK(mismatch.code == cli::kExitReplayMismatch);
    CHECK(mismatch.out.find("mismatch: discriminant") != std::string::npos);

    std::remove(good.c_str());
    std::remove(bad.c_str());
}
