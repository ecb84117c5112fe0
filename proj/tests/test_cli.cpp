#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <sstream>

using json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
    json doc() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = hdensity::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// Command-line arguments reconstructed from an embedded config block.
std::vector<std::string> args_from_config(const json& c) {
    std::vector<std::string> args;
    std::istringstream cmd(c["command"].get<std::string>());
    for (std::string w; cmd >> w;) args.push_back(w);
    const std::string command = args.front();
    auto add = [&](const char* key, const char* flag) {
        if (!c.contains(key)) return;
        args.push_back(flag);
        args.push_back(c[key].is_string() ? c[key].get<std::string>() : c[key].dump());
    };
    add("hypergraph", "--hypergraph");
    add("r", "--r");
    add("format", "--format");
    add("digits", "--digits");
    add("threads", "--threads");
    add("budget", "--budget");
    add("max_exact_digits", "--max-exact-digits");
    if (command != "indep") add("ring", "--ring");
    if (command == "theoretical") add("cutoff", "--cutoff");
    if (command == "empirical" || command == "sweep") {
        add("box_mode", "--box-mode");
        add("samples", "--samples");
        add("seed", "--seed");
    }
    if (command == "empirical") {
        add("box", "--box");
        if (c.value("enumerate", false)) args.push_back("--enumerate");
    }
    if (command == "verify" || command == "sweep") add("S", "--S");
    if (command == "sweep") add("sizes", "--sizes");
    if (c["command"] == "verify prop23") add("q", "--q");
    if (c["command"] == "verify prop33") add("b", "--b");
    return args;
}

}  // namespace

TEST_CASE("indep") {
    auto r = run({"indep", "--hypergraph", "complete:4,2"});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["result"]["independence_counts"] == json({1, 4, 0, 0, 0}));
    CHECK(run({"indep", "--hypergraph", "edgeless:3,2"}).doc()["result"]["independence_counts"] == json({1, 3, 3, 1}));
    const auto p = run({"indep", "--hypergraph", std::string(HDENSITY_TEST_DATA) + "/path3.hg"});
    REQUIRE(p.code == 0);
    CHECK(p.doc()["result"]["independence_counts"] == json({1, 3, 1, 0}));
    CHECK(p.doc()["result"]["edge_count"] == 2);
    CHECK(run({"indep", "--hypergraph", "complete:3,2", "--format", "csv"}).out.find("k,i_k\n0,1\n1,3\n2,0\n") !=
          std::string::npos);
}

TEST_CASE("theoretical") {
    const auto z = run({"theoretical", "--ring", "Z", "--hypergraph", "complete:2,2", "--cutoff", "100000",
                        "--max-exact-digits", "20"}).doc();
    const auto& iv = z["result"]["interval"];
    CHECK(std::stod(iv["lower"]["decimal"].get<std::string>()) <= 0.6079271);
    CHECK(std::stod(iv["upper"]["decimal"].get<std::string>()) >= 0.6079271);
    CHECK(iv["lower"]["num"].is_null());
    CHECK(iv["tail_bound"]["den"] == "100000");

    const auto f = run({"theoretical", "--ring", "Fq[x]:q=2", "--hypergraph", "complete:2,2", "--cutoff", "12"}).doc();
    const auto& fi = f["result"]["interval"];
    CHECK(std::stod(fi["lower"]["decimal"].get<std::string>()) <= 0.5);
    CHECK(std::stod(fi["upper"]["decimal"].get<std::string>()) >= 0.5);

    const auto e = run({"theoretical", "--ring", "Zi", "--hypergraph", "edgeless:3,2", "--cutoff", "50"}).doc();
    CHECK(e["result"]["interval"]["upper"]["num"] == "1");
    CHECK(e["result"]["interval"]["upper"]["den"] == "1");

    const auto ext = run({"theoretical", "--ring", "Fq[x]:q=4,mod=x^2+x+1", "--hypergraph", "complete:2,2",
                          "--cutoff", "6"});
    CHECK(ext.code == 0);
    CHECK(run({"theoretical", "--ring", "Z", "--hypergraph", "complete:2,2"}).code == 2);
    CHECK(run({"theoretical", "--ring", "Q", "--hypergraph", "complete:2,2", "--cutoff", "5"}).code == 2);
    CHECK(run({"theoretical", "--ring", "Fq[x]:q=6", "--hypergraph", "complete:2,2", "--cutoff", "5"}).code == 2);
}

TEST_CASE("empirical") {
    const auto a = run({"empirical", "--ring", "Z", "--hypergraph", "complete:2,2", "--box", "2"});
    REQUIRE(a.code == 0);
    CHECK(a.doc()["result"]["hits"] == "12");
    CHECK(a.doc()["result"]["density"]["num"] == "3");
    CHECK(a.doc()["result"]["density"]["den"] == "4");
    CHECK(a.doc()["result"].contains("theoretical"));
    const auto e = run({"empirical", "--ring", "Zi", "--hypergraph", "edgeless:2,2", "--box", "3"});
    CHECK(e.doc()["result"]["density"]["num"] == "1");
    const std::vector<std::string> mc{"empirical", "--hypergraph", "complete:2,2", "--box", "10000",
                                      "--samples", "1000000", "--seed", "42"};
    const auto m1 = run(mc), m2 = run(mc);
    CHECK(m1.code == 0);
    CHECK(m1.out == m2.out);
    CHECK(m1.doc()["result"]["report"]["seed"] == 42);
    const auto cap = run({"empirical", "--hypergraph", "complete:3,2", "--box", "100000"});
    CHECK(cap.code == 3);
    CHECK(cap.err.find("--samples") != std::string::npos);
    CHECK(run({"empirical", "--hypergraph", "complete:2,2"}).code == 2);
}

TEST_CASE("verify") {
    const auto a = run({"verify", "prop23", "--ring", "Z", "--S", "2", "--r", "1", "--hypergraph", "complete:2,2",
                        "--q", "1"});
    REQUIRE(a.code == 0);
    const json doc = a.doc();
    const auto& v = doc["result"]["verification"];
    CHECK(v["counted"] == "12");
    CHECK(v["formula"] == "12");
    CHECK(v["equal"] == true);
    CHECK(v["extra_power_formula"] == "20");
    const auto b = run({"verify", "prop33", "--ring", "Fq[x]:q=2", "--S", "x", "--r", "1", "--hypergraph",
                        "complete:2,2", "--b", "1"});
    REQUIRE(b.code == 0);
    CHECK(b.doc()["result"]["verification"]["counted"] == "3");
    CHECK(b.doc()["result"]["verification"]["formula"] == "3");
    const auto c = run({"verify", "prop23", "--ring", "Zi", "--S", "3", "--hypergraph", "edgeless:2,2"});
    CHECK(c.doc()["result"]["verification"]["equal"] == true);
    CHECK(c.doc()["result"]["verification"]["counted"] == "1296");  // (6*6)^2
    const auto d = run({"verify", "prop33", "--ring", "Fq[x]:q=3", "--S", "x,x^2+1", "--hypergraph", "path:3"});
    CHECK(d.code == 0);
    CHECK(run({"verify", "prop23", "--ring", "Z", "--S", "4", "--hypergraph", "complete:2,2"}).code == 2);
    CHECK(run({"verify", "prop23", "--ring", "Z", "--S", "2,3,5,7", "--r", "3", "--hypergraph", "complete:2,2",
               "--budget", "1000"}).code == 3);
    CHECK(run({"verify", "--ring", "Z"}).code == 2);
}

TEST_CASE("sweep") {
    const auto z = run({"sweep", "--ring", "Z", "--S", "2", "--hypergraph", "complete:2,2", "--sizes", "1,2,3,4"});
    REQUIRE(z.code == 0);
    for (const auto& row : z.doc()["result"]["rows"]) CHECK(row["density"]["decimal"] == "0.75");
    CHECK(z.doc()["result"]["constant"] == true);
    const auto f = run({"sweep", "--ring", "Fq[x]:q=2", "--S", "x", "--hypergraph", "complete:2,2", "--sizes",
                        "1,2,3", "--format", "csv"});
    CHECK(f.code == 0);
    CHECK(f.out.find("size,box_parameter,num,den,decimal") != std::string::npos);
    CHECK(f.out.find("3,5,3,4,0.75") != std::string::npos);
    const auto full = run({"sweep", "--hypergraph", "complete:2,2", "--sizes", "10,100,1000"});
    CHECK(full.code == 0);
    CHECK(full.doc()["result"]["rows"].size() == 3);
    const auto e = run({"sweep", "--hypergraph", "edgeless:2,2", "--S", "2,3", "--sizes", "1,2"});
    for (const auto& row : e.doc()["result"]["rows"]) CHECK(row["density"]["num"] == "1");
    const auto t = run({"sweep", "--hypergraph", "complete:2,2", "--sizes", "3", "--format", "text"});
    CHECK(t.out.find("# command = sweep") != std::string::npos);
}

TEST_CASE("reports reproduce from their embedded config") {
    const std::vector<std::vector<std::string>> runs{
        {"indep", "--hypergraph", "cycle:5"},
        {"theoretical", "--ring", "Zi", "--hypergraph", "path:3", "--cutoff", "30", "--r", "2"},
        {"empirical", "--ring", "Fq[x]:q=3", "--hypergraph", "complete:2,2", "--box", "20", "--samples", "5000",
         "--seed", "7"},
        {"verify", "prop23", "--ring", "Z", "--S", "2,3", "--hypergraph", "complete:3,2", "--q", "2"},
        {"verify", "prop33", "--ring", "Fq[x]:q=2", "--S", "x+1", "--r", "2", "--hypergraph", "complete:2,2"},
        {"sweep", "--ring", "Z", "--hypergraph", "complete:2,2", "--sizes", "5,6", "--format", "csv"},
    };
    for (const auto& args : runs) {
        const auto first = run(args);
        REQUIRE(first.code == 0);
        json cfg;
        if (first.out.front() == '{') {
            cfg = first.doc()["config"];
        } else {
            // csv: "# key=value" lines
            std::istringstream in(first.out);
            for (std::string line; std::getline(in, line) && line.rfind("# ", 0) == 0;) {
                const auto eq = line.find('=');
                const std::string key = line.substr(2, eq - 2), value = line.substr(eq + 1);
                const bool numeric = !value.empty() && value.find_first_not_of("0123456789") == std::string::npos;
                cfg[key] = numeric && key != "sizes" ? json(std::stoull(value)) : json(value);
            }
        }
        const auto again = run(args_from_config(cfg));
        CHECK(again.code == 0);
        CHECK(again.out == first.out);
    }
}

TEST_CASE("budget from the environment") {
    setenv("HDENSITY_BUDGET", "10", 1);
    const auto r = run({"empirical", "--hypergraph", "complete:2,2", "--box", "5"});
    unsetenv("HDENSITY_BUDGET");
    CHECK(r.code == 3);
    CHECK(run({"empirical", "--hypergraph", "complete:2,2", "--box", "5", "--budget", "10"}).code == 3);
    CHECK(run({"empirical", "--hypergraph", "complete:2,2", "--box", "5"}).code == 0);
}

TEST_CASE("help and unknown flags") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"indep", "--hypergraph", "complete:3,2", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
}
