#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(CURVEMOD_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string data(const std::string& name) { return std::string(CURVEMOD_DATA_DIR) + "/" + name; }

std::vector<std::string> summand_lines(const std::string& out) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < out.size()) {
        std::size_t end = out.find('\n', pos);
        if (end == std::string::npos) end = out.size();
        std::string line = out.substr(pos, end - pos);
        if (!line.empty() && line[0] != '#') lines.push_back(line);
        pos = end + 1;
    }
    return lines;
}

}  // namespace

TEST_CASE("hyperelliptic subcommand with closed-form check") {
    RunResult r = run_cli("hyperelliptic --p 7 --m 2 --expect");
    CHECK(r.exit_code == 0);
    CHECK(summand_lines(r.out).size() == 11);
    CHECK(r.out.find("# total_dimension\t69") != std::string::npos);
    CHECK(r.out.find("# closed_form\tmatch") != std::string::npos);
    CHECK(r.out.find("3\t1\t1") != std::string::npos);
    CHECK(r.out.find("10\t5\t1") != std::string::npos);
}

TEST_CASE("modular subcommand with audit") {
    RunResult r = run_cli("modular --l 7 --m 2 --audit");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("P(eta_1)\t6\t1") != std::string::npos);
    CHECK(r.out.find("# audit\tPASS") != std::string::npos);
    CHECK(summand_lines(r.out).size() == 1);
}

TEST_CASE("file-driven subcommands") {
    RunResult poly = run_cli("poly-diff " + data("hyperelliptic_p7.json"));
    CHECK(poly.exit_code == 0);
    CHECK(poly.out.find("# total_dimension\t69") != std::string::npos);

    RunResult rr = run_cli("riemann-roch " + data("hyperelliptic_p7_riemann_roch.json"));
    CHECK(rr.exit_code == 0);
    CHECK(rr.out.find("# total_dimension\t69") != std::string::npos);
    CHECK(rr.out.find("# degree_e\t92") != std::string::npos);

    RunResult omega = run_cli("diff " + data("etale_z9.json"));
    CHECK(omega.exit_code == 0);
    CHECK(omega.out.find("0\t1\t1") != std::string::npos);
    CHECK(omega.out.find("0\t9\t2") != std::string::npos);

    RunResult tangent = run_cli("tangent " + data("hyperelliptic_p7.json"));
    CHECK(tangent.exit_code == 0);
    CHECK(tangent.out.find("tangent_dimension\t1") != std::string::npos);
}

TEST_CASE("validation failures exit with code 1") {
    RunResult r = run_cli("riemann-roch " + data("degree_too_small.json"));
    CHECK(r.exit_code == 1);
}

TEST_CASE("usage and parse errors exit with code 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("poly-diff /nonexistent.json --m 2").exit_code == 2);
    CHECK(run_cli("modular --l 7 --m 2 --s01 0").exit_code == 2);
}

TEST_CASE("TSV and JSON outputs agree") {
    RunResult tsv = run_cli("hyperelliptic --p 7 --m 2");
    RunResult js = run_cli("hyperelliptic --p 7 --m 2 --json");
    REQUIRE(js.exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(js.out);
    CHECK(doc["total_dimension"] == 69);
    CHECK(doc["genus_x"] == 24);
    CHECK(doc["genus_y"] == 3);
    CHECK(doc["summands"].size() == summand_lines(tsv.out).size());
    // every TSV summand line appears in the JSON document
    for (const auto& line : summand_lines(tsv.out)) {
        std::size_t t1 = line.find('\t'), t2 = line.find('\t', t1 + 1);
        long a = std::stol(line.substr(0, t1));
        long b = std::stol(line.substr(t1 + 1, t2 - t1 - 1));
        long mult = std::stol(line.substr(t2 + 1));
        bool found = false;
        for (const auto& entry : doc["summands"])
            if (entry["a"] == a && entry["b"] == b && entry["multiplicity"] == mult) found = true;
        CHECK(found);
    }
}

TEST_CASE("sweep suites") {
    RunResult hyper = run_cli("sweep hyperelliptic --max 13");
    CHECK(hyper.exit_code == 0);
    CHECK(hyper.out.find("# result\tPASS") != std::string::npos);

    RunResult local = run_cli("sweep local --max 7 --parallel");
    CHECK(local.exit_code == 0);
    CHECK(local.out.find("# result\tPASS") != std::string::npos);

    RunResult synth = run_cli("sweep synthetic --max 25");
    CHECK(synth.exit_code == 0);

    CHECK(run_cli("sweep nonsense").exit_code == 2);
}

TEST_CASE("trace output is emitted on demand") {
    RunResult r = run_cli("poly-diff " + data("hyperelliptic_p7.json") + " --trace");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("# n_j\t0\t1") != std::string::npos);
    CHECK(r.out.find("# n_aj\t3\t1\t0") != std::string::npos);
}
