// Integration tests for the command-line tool: exit-code contract, record
// shape, and byte-identical determinism across seeds and worker counts.
// The binary path comes from the PINGPONG_CLI environment variable (set by
// the test harness).

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string cli_path() {
    const char* p = std::getenv("PINGPONG_CLI");
    REQUIRE(p != nullptr);
    return p;
}

std::string config_dir() {
    const char* p = std::getenv("PINGPONG_CONFIGS");
    REQUIRE(p != nullptr);
    return p;
}

int run_cli(const std::string& args, const std::string& workers = "1") {
    std::string cmd = "PINGPONG_WORKERS=" + workers + " " + cli_path() + " " + args +
                      " > /dev/null 2> /dev/null";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("find-partner on the shipped config: status 0 and a full record") {
    std::string out = "/tmp/pp_cli_fp.json";
    REQUIRE(run_cli("find-partner --config " + config_dir() + "/psl2z.json --output " + out) == 0);
    nlohmann::json rec = nlohmann::json::parse(slurp(out));
    REQUIRE(rec.at("record_version") == 1);
    REQUIRE(rec.at("subcommand") == "find-partner");
    REQUIRE(rec.at("status") == "pass");
    REQUIRE(rec.at("config").contains("bounds"));
    REQUIRE(rec.at("config").contains("seed"));
    REQUIRE(rec.at("result").at("certificates").size() == 2);
    for (const auto& c : rec.at("result").at("certificates")) {
        REQUIRE(c.at("status") == "pass");
        REQUIRE(c.at("oracles").size() == 2);
    }
    REQUIRE(rec.at("result").at("partner").contains("power_N"));
}

TEST_CASE("byte-identical records across runs and worker counts") {
    std::string a = "/tmp/pp_det_a.json", b = "/tmp/pp_det_b.json", c = "/tmp/pp_det_c.json";
    std::string base = "find-partner --config " + config_dir() + "/psl2z.json --output ";
    REQUIRE(run_cli(base + a, "1") == 0);
    REQUIRE(run_cli(base + b, "1") == 0);
    REQUIRE(run_cli(base + c, "4") == 0);
    REQUIRE(slurp(a) == slurp(b));
    REQUIRE(slurp(a) == slurp(c));
    REQUIRE_FALSE(slurp(a).empty());

    std::string cfg = "/tmp/pp_det_cert.json";
    write_file(cfg, R"({
      "model": {"kind": "free_product", "orders": [2, 3]},
      "gamma_n": "stststststst",
      "subgroup": ["s"],
      "bounds": {"syllable_bound": 6, "exponent_bound": 2},
      "seed": 5
    })");
    REQUIRE(run_cli("certify-free --config " + cfg + " --output " + a, "1") == 0);
    REQUIRE(run_cli("certify-free --config " + cfg + " --output " + b, "3") == 0);
    REQUIRE(slurp(a) == slurp(b));
}

TEST_CASE("classify writes a report") {
    std::string out = "/tmp/pp_cli_classify.json";
    REQUIRE(run_cli("classify --config " + config_dir() + "/free2.json --output " + out) == 0);
    nlohmann::json rec = nlohmann::json::parse(slurp(out));
    REQUIRE(rec.at("result").at("class") == "loxodromic");
    REQUIRE(rec.at("result").at("translation_length") == "2");
}

TEST_CASE("certify-free with a planted elliptic: status 1 and a witness") {
    std::string cfg = "/tmp/pp_cli_bad.json";
    write_file(cfg, R"({
      "model": {"kind": "free_product", "orders": [2, 3]},
      "gamma_n": "s",
      "subgroup": ["s"],
      "seed": 1
    })");
    std::string out = "/tmp/pp_cli_bad_out.json";
    REQUIRE(run_cli("certify-free --config " + cfg + " --output " + out) == 1);
    nlohmann::json rec = nlohmann::json::parse(slurp(out));
    REQUIRE(rec.at("status") == "fail");
    REQUIRE(rec.at("result").contains("witness"));
}

TEST_CASE("refusals, parse errors, and capability violations use distinct codes") {
    // enumeration beyond the cap: exit 2
    std::string cfg = "/tmp/pp_cli_cap.json";
    write_file(cfg, R"({
      "model": {"kind": "free_product", "orders": [2, 3]},
      "gamma_n": "stststststst",
      "subgroup": ["s"],
      "bounds": {"syllable_bound": 20, "exponent_bound": 3, "enumeration_cap": 100},
      "seed": 1
    })");
    REQUIRE(run_cli("certify-free --config " + cfg) == 2);

    // malformed JSON: exit 64
    std::string bad = "/tmp/pp_cli_parse.json";
    write_file(bad, "{ not json");
    REQUIRE(run_cli("classify --config " + bad) == 64);

    // missing seed for a randomized search: exit 64
    std::string noseed = "/tmp/pp_cli_noseed.json";
    write_file(noseed, R"({
      "model": {"kind": "free_product", "orders": [2, 3]},
      "subgroups": [["s"]]
    })");
    REQUIRE(run_cli("find-partner --config " + noseed) == 64);

    // certificates on the half-plane model: exit 65
    std::string plane = "/tmp/pp_cli_plane.json";
    write_file(plane, R"({
      "model": {"kind": "half_plane", "generators": [[[1, 1], [0, 1]], [[0, -1], [1, 0]]]},
      "gamma_n": "a",
      "subgroup": [],
      "seed": 1
    })");
    REQUIRE(run_cli("certify-free --config " + plane) == 65);

    // loxodromic elements for the element-wise pipeline: refusal, exit 2
    std::string lox = "/tmp/pp_cli_lox.json";
    write_file(lox, R"({
      "model": {"kind": "free_group", "rank": 2},
      "elements": ["a", "b"],
      "seed": 1
    })");
    REQUIRE(run_cli("find-partner --config " + lox) == 2);
}

TEST_CASE("check-star and check-noloops run from the shipped free group config") {
    REQUIRE(run_cli("check-star --config " + config_dir() + "/free2.json") == 0);
    std::string cfg = "/tmp/pp_cli_noloops.json";
    write_file(cfg, R"({
      "model": {"kind": "free_group", "rank": 2},
      "u": "ab",
      "gs": ["a"],
      "N": 1,
      "bounds": {"exponent_bound": 3},
      "seed": 1
    })");
    std::string out = "/tmp/pp_cli_noloops_out.json";
    REQUIRE(run_cli("check-noloops --config " + cfg + " --output " + out) == 0);
    nlohmann::json rec = nlohmann::json::parse(slurp(out));
    REQUIRE(rec.at("result").at("words_checked") == 36);
}

TEST_CASE("boundary-demo runs and records the trace") {
    std::string out = "/tmp/pp_cli_boundary.json";
    REQUIRE(run_cli("boundary-demo --config " + config_dir() + "/boundary_f2.json --output " +
                    out) == 0);
    nlohmann::json rec = nlohmann::json::parse(slurp(out));
    REQUIRE(rec.at("status") == "pass");
    REQUIRE(rec.at("result").at("minimality").at("pass") == true);
    REQUIRE_FALSE(rec.at("result").at("proximality").at("steps").empty());
}

TEST_CASE("probe-acylindricity reports the frozen free-group count") {
    std::string cfg = "/tmp/pp_cli_probe.json";
    write_file(cfg, R"({
      "model": {"kind": "free_group", "rank": 2},
      "epsilon": 0,
      "min_distance": 2,
      "bounds": {"region_radius": 2, "word_length_cap": 6},
      "seed": 1
    })");
    std::string out = "/tmp/pp_cli_probe_out.json";
    REQUIRE(run_cli("probe-acylindricity --config " + cfg + " --output " + out) == 0);
    nlohmann::json rec = nlohmann::json::parse(slurp(out));
    REQUIRE(rec.at("result").at("max_common_quasi_fixers") == 1);
}
