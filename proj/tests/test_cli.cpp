#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "cli_test_scratch";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
    fs::path p = scratch() / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p.string();
}

int run(const std::vector<std::string>& args, std::string* out = nullptr,
        std::string* err = nullptr) {
    std::ostringstream o, e;
    int code = seps::cli_run(args, o, e);
    if (out) *out = o.str();
    if (err) *err = e.str();
    return code;
}

const std::string kP3 = "3 2\n0 1\n1 2\n";
const std::string kK4 = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

}  // namespace

TEST_CASE("separations listing on the path") {
    std::string g = write_file("p3.txt", kP3);
    std::string out;
    CHECK(run({"separations", g, "--k", "2"}, &out) == 0);
    json doc = json::parse(out);
    CHECK(doc["kind"] == "report");
    CHECK(doc["payload"]["count"] == 5);
    CHECK(doc["payload"]["separations"].size() == 5);

    // With a family the report also carries the separability summary.
    std::string out2;
    CHECK(run({"separations", g, "--k", "2", "--family", "tstar"}, &out2) == 0);
    json doc2 = json::parse(out2);
    CHECK(doc2["payload"]["separability"]["failures"] == 0);
}

TEST_CASE("duality emits a tree certificate on the path at order 3") {
    std::string g = write_file("p3.txt", kP3);
    std::string out;
    CHECK(run({"duality", g, "--k", "3", "--family", "ustar"}, &out) == 0);
    json doc = json::parse(out);
    CHECK(doc["kind"] == "stree");
    CHECK(doc["payload"]["verdict"] == "stree");

    // And a tangle certificate at order 2.
    std::string out2;
    CHECK(run({"duality", g, "--k", "2", "--family", "tstar"}, &out2) == 0);
    json doc2 = json::parse(out2);
    CHECK(doc2["kind"] == "tangle");
    CHECK(doc2["payload"]["count"] == 1);
}

TEST_CASE("every emitted certificate passes verify") {
    std::string p3 = write_file("p3.txt", kP3);
    std::string k4 = write_file("k4.txt", kK4);
    struct Case {
        std::vector<std::string> cmd;
        std::string graph;
    };
    std::vector<Case> cases = {
        {{"separations", p3, "--k", "2"}, p3},
        {{"separations", k4, "--k", "3", "--family", "uk"}, k4},
        {{"tangles", k4, "--k", "4", "--family", "tstar"}, k4},
        {{"duality", p3, "--k", "3", "--family", "uk"}, p3},
        {{"duality", k4, "--k", "4", "--family", "tstar"}, k4},
        {{"treewidth", k4}, k4},
        {{"bramble", k4, "--k", "4"}, k4},
        {{"refine", k4, "--k", "3"}, k4},
        {{"limits", "grid:2", "5", "--k", "3"}, ""},
        {{"limits", "rayclique:5", "8"}, ""},
        {{"limits", "edgeless", "4", "--k", "1"}, ""},
    };
    for (const auto& c : cases) {
        CAPTURE(c.cmd[0]);
        std::string out, err;
        REQUIRE(run(c.cmd, &out, &err) == 0);
        std::string cert = write_file("cert.json", out);
        std::vector<std::string> v{"verify", cert};
        if (!c.graph.empty()) v.push_back(c.graph);
        std::string vout;
        CHECK(run(v, &vout, &err) == 0);
        CHECK(json::parse(vout)["verified"] == true);
    }
}

TEST_CASE("tampered certificates are rejected") {
    std::string g = write_file("p3.txt", kP3);
    std::string out;
    REQUIRE(run({"duality", g, "--k", "3", "--family", "uk"}, &out) == 0);

    // Any change to the payload text trips the checksum or the re-check.
    auto at = out.find("\"payload\"");
    REQUIRE(at != std::string::npos);
    auto digit = out.find_first_of("0123456789", at);
    REQUIRE(digit != std::string::npos);
    std::string bad = out;
    bad[digit] = bad[digit] == '0' ? '1' : '0';
    std::string cert = write_file("bad.json", bad);
    std::string err;
    CHECK(run({"verify", cert, g}, nullptr, &err) == 1);
    CHECK(err.find("verification failed") != std::string::npos);

    // Wrong graph for a sound certificate.
    std::string k4 = write_file("k4.txt", kK4);
    std::string good = write_file("good.json", out);
    CHECK(run({"verify", good, k4}, nullptr, &err) == 1);
    CHECK(err.find("hash") != std::string::npos);
}

TEST_CASE("custom star family files") {
    std::string g = write_file("p3.txt", kP3);
    // F = { empty set }: the one-node tree always exists.
    std::string stars = write_file("stars.txt", "-\n");
    std::string out;
    CHECK(run({"duality", g, "--k", "2", "--family", "custom", "--stars", stars},
              &out) == 0);
    json doc = json::parse(out);
    CHECK(doc["kind"] == "stree");
    CHECK(doc["payload"]["stree"]["nodes"] == 1);

    std::string cert = write_file("cust.json", out);
    CHECK(run({"verify", cert, g}) == 0);

    CHECK(run({"duality", g, "--k", "2", "--family", "custom"}) == 2);
}

TEST_CASE("byte-identical reruns") {
    std::string g = write_file("k4.txt", kK4);
    for (std::vector<std::string> cmd :
         {std::vector<std::string>{"tangles", g, "--k", "3", "--family", "uk"},
          std::vector<std::string>{"treewidth", g},
          std::vector<std::string>{"limits", "fourcolumns", "4", "--k", "2"}}) {
        std::string a, b;
        CHECK(run(cmd, &a) == 0);
        CHECK(run(cmd, &b) == 0);
        CHECK(a == b);
    }
}

TEST_CASE("exit codes") {
    std::string g = write_file("p3.txt", kP3);
    CHECK(run({"frobnicate", g}) == 2);                     // usage
    CHECK(run({"separations", g}) == 2);                    // missing --k
    CHECK(run({"duality", g, "--k", "2", "--family", "nope"}) == 2);
    CHECK(run({"separations", scratch().string() + "/absent.txt", "--k", "2"}) == 1);
    CHECK(run({"bramble", g, "--k", "3"}) == 1);            // no such bramble
    std::string big = write_file("big.txt", "7 0\n");
    CHECK(run({"bramble", big, "--k", "1"}) == 1);          // search cap

    setenv("TANGLEFORGE_SEED", "42", 1);
    CHECK(run({"treewidth", g}) == 2);
    unsetenv("TANGLEFORGE_SEED");
    CHECK(run({"treewidth", g}) == 0);
}

TEST_CASE("limits report content") {
    std::string out;
    CHECK(run({"limits", "grid:3", "6", "--k", "2"}, &out) == 0);
    json p = json::parse(out)["payload"];
    CHECK(p["proxy"]["disjoint_paths"] == 3);
    CHECK(p["proxy"]["consistent"] == true);
    CHECK(p["sequence"]["labels"] == 5);
    CHECK(p["boundary"] == json::array({15, 16, 17}));

    CHECK(run({"limits", "edgeless", "5", "--k", "1"}, &out) == 0);
    CHECK(json::parse(out)["payload"]["tangle_count"] == 5);
}
