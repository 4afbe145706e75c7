// Registry completeness, suite configuration handling, report schema and
// determinism, and the command line surface end to end.

#include "mockforms/mockforms.hpp"
#include "support/expected_registry.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace mockforms;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(MOCKFORMS_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult r;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string temp_path(const std::string& stem) {
    return std::string("/tmp/mockforms_test_") + stem;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    REQUIRE(f.good());
    f << text;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

nlohmann::json normalized_report(const std::string& path) {
    nlohmann::json j = nlohmann::json::parse(slurp(path));
    for (auto& e : j) e["runtime_ms"] = 0;
    return j;
}

}  // namespace

TEST_CASE("registry matches the frozen manifest exactly") {
    const auto& reg = check_registry();
    REQUIRE(reg.size() == mockforms_tests::kExpectedChecks.size());
    for (std::size_t i = 0; i < reg.size(); ++i) {
        CAPTURE(i);
        CHECK(reg[i].name == mockforms_tests::kExpectedChecks[i].first);
        CHECK(to_string(reg[i].mode) == mockforms_tests::kExpectedChecks[i].second);
    }
}

TEST_CASE("registry defaults are runnable") {
    for (const auto& d : check_registry()) {
        CAPTURE(d.name);
        if (d.mode == CheckMode::Exact) {
            CHECK(d.defaults.order > 0);
        } else {
            CHECK(d.defaults.samples > 0);
            CHECK(d.defaults.tol > 0.0);
        }
        CHECK(d.name.rfind(std::string(to_string(d.mode)) + ".", 0) == 0);
    }
}

TEST_CASE("check names resolve and unknown names do not") {
    CHECK(find_check("exact.cy_def_matches_closed") != nullptr);
    CHECK(find_check("exact.not_a_check") == nullptr);
    CHECK(find_check("") == nullptr);
}

TEST_CASE("a throwing check is reported as an error, not a crash") {
    CheckDef boom{"unit.boom", CheckMode::Exact, CheckParams{1, 0, 1, 0.0},
                  [](const CheckParams&) -> IdentityReport {
                      throw std::runtime_error("deliberate failure");
                  }};
    const IdentityReport rep = run_check_safe(boom, boom.defaults);
    CHECK(rep.status == CheckStatus::Error);
    CHECK(rep.detail.find("deliberate failure") != std::string::npos);
}

TEST_CASE("suite config parsing") {
    SECTION("malformed json reports a line number") {
        CHECK_THROWS_WITH(parse_suite_config("{\n  \"seed\": 1,\n  oops\n}"),
                          Catch::Matchers::ContainsSubstring("line 3"));
    }
    SECTION("unknown top-level key") {
        CHECK_THROWS_WITH(parse_suite_config("{\"sede\": 1}"),
                          Catch::Matchers::ContainsSubstring("sede"));
    }
    SECTION("unknown check name") {
        CHECK_THROWS_WITH(parse_suite_config("{\"checks\": [\"exact.nope\"]}"),
                          Catch::Matchers::ContainsSubstring("exact.nope"));
    }
    SECTION("unknown mode") {
        CHECK_THROWS_WITH(parse_suite_config("{\"modes\": [\"fuzzy\"]}"),
                          Catch::Matchers::ContainsSubstring("exact, numeric"));
    }
    SECTION("override for unknown check") {
        CHECK_THROWS_WITH(parse_suite_config("{\"overrides\": {\"nope\": {\"order\": 3}}}"),
                          Catch::Matchers::ContainsSubstring("nope"));
    }
    SECTION("override with bad field") {
        const SuiteConfig cfg =
            parse_suite_config("{\"overrides\": {\"exact.eta_pentagonal\": {\"ordre\": 3}}}");
        const CheckDef* def = find_check("exact.eta_pentagonal");
        CHECK_THROWS_WITH(effective_params(*def, cfg),
                          Catch::Matchers::ContainsSubstring("ordre"));
    }
    SECTION("globals and overrides compose") {
        const SuiteConfig cfg = parse_suite_config(
            "{\"seed\": 11, \"samples\": 5, \"tol\": 1e-6,"
            " \"overrides\": {\"numeric.r_evenness\": {\"samples\": 2}}}");
        const CheckParams pr = effective_params(*find_check("numeric.r_evenness"), cfg);
        CHECK(pr.samples == 2);
        CHECK(pr.seed == 11);
        CHECK(pr.tol == 1e-6);
        const CheckParams pe = effective_params(*find_check("exact.eta_pentagonal"), cfg);
        CHECK(pe.order == 200);  // exact checks ignore the sampled globals
        CHECK(pe.seed == 11);
    }
}

TEST_CASE("mode filter selects the right subset") {
    const SuiteConfig cfg = parse_suite_config("{\"modes\": [\"shadow\"]}");
    const auto picked = select_checks(cfg);
    REQUIRE(picked.size() == 4);
    for (const auto* d : picked) CHECK(d->mode == CheckMode::Shadow);
}

TEST_CASE("cli: expand emits the exact text format") {
    const CliResult r = run_cli("expand eta --order 5");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "denom=48 trunc=288\n2 1/1 0/1\n50 -1/1 0/1\n98 -1/1 0/1\n242 1/1 0/1\n");
    const QSeries back = qs_read(r.output);
    CHECK(qs_sub(back, eta(5)).c.empty());
}

TEST_CASE("cli: expand latex") {
    const CliResult r = run_cli("expand c_y --order 3 --latex");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "-q^{3/16} + 3q^{19/16} - 5q^{51/16} + O\\!\\left(q^{4}\\right)\n");
}

TEST_CASE("cli: expand rejects unknown series") {
    const CliResult r = run_cli("expand zeta --order 3");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("unknown series") != std::string::npos);
}

TEST_CASE("cli: verify runs a single check") {
    const CliResult pass = run_cli("verify exact.cyz2_piece_sum --order 12");
    CHECK(pass.exit_code == 0);
    CHECK(pass.output.find("[pass]") != std::string::npos);

    const CliResult unknown = run_cli("verify exact.nope");
    CHECK(unknown.exit_code == 2);

    const CliResult badflag = run_cli("verify exact.cyz2_piece_sum --bogus 3");
    CHECK(badflag.exit_code == 2);
}

TEST_CASE("cli: verify respects sampling overrides") {
    const CliResult r =
        run_cli("verify numeric.r_evenness --samples 3 --seed 123 --tol 1e-6");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("over 3 samples") != std::string::npos);
}

TEST_CASE("cli: suite runs a subset deterministically") {
    const std::string cfg = temp_path("subset.json");
    write_file(cfg, "{\"seed\": 5, \"checks\": [\"exact.cyz2_piece_sum\","
                    " \"numeric.r_evenness\", \"transform.eta_T\","
                    " \"shadow.holomorphic_zero\"],"
                    " \"overrides\": {\"exact.cyz2_piece_sum\": {\"order\": 12}}}");
    const std::string out1 = temp_path("subset1_report.json");
    const std::string out2 = temp_path("subset2_report.json");
    const CliResult r1 = run_cli("suite --config " + cfg + " --out " + out1);
    const CliResult r2 = run_cli("suite --config " + cfg + " --out " + out2);
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(normalized_report(out1) == normalized_report(out2));

    const nlohmann::json j = normalized_report(out1);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 4);
    CHECK(j[0]["name"] == "exact.cyz2_piece_sum");
    CHECK(j[1]["name"] == "numeric.r_evenness");
    CHECK(j[2]["name"] == "transform.eta_T");
    CHECK(j[3]["name"] == "shadow.holomorphic_zero");
}

TEST_CASE("cli: report schema carries mode-appropriate parameters") {
    const std::string cfg = temp_path("schema.json");
    write_file(cfg, "{\"checks\": [\"exact.cyz2_piece_sum\", \"numeric.r_evenness\"],"
                    " \"overrides\": {\"exact.cyz2_piece_sum\": {\"order\": 8}}}");
    const std::string out = temp_path("schema_report.json");
    REQUIRE(run_cli("suite --config " + cfg + " --out " + out).exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(out));
    for (const auto& e : j) {
        CHECK(e.size() == 6);
        for (const char* key : {"name", "mode", "status", "detail", "params", "runtime_ms"})
            CHECK(e.contains(key));
    }
    CHECK(j[0]["mode"] == "exact");
    CHECK(j[0]["params"].size() == 1);
    CHECK(j[0]["params"]["order"] == 8);
    CHECK(j[1]["mode"] == "numeric");
    CHECK(j[1]["params"].size() == 3);
    CHECK(j[1]["params"].contains("samples"));
    CHECK(j[1]["params"].contains("seed"));
    CHECK(j[1]["params"].contains("tol"));
}

TEST_CASE("cli: suite surfaces config problems as exit 2") {
    const std::string bad = temp_path("bad.json");
    write_file(bad, "{\"checks\": [\"exact.nope\"]}");
    const std::string out = temp_path("bad_report.json");
    const CliResult r = run_cli("suite --config " + bad + " --out " + out);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("exact.nope") != std::string::npos);

    const std::string malformed = temp_path("malformed.json");
    write_file(malformed, "{\n  \"seed\": ,\n}");
    const CliResult r2 = run_cli("suite --config " + malformed + " --out " + out);
    CHECK(r2.exit_code == 2);
    CHECK(r2.output.find("line 2") != std::string::npos);

    const CliResult r3 = run_cli("suite --config /nonexistent.json --out " + out);
    CHECK(r3.exit_code == 2);
}

TEST_CASE("cli: mode filtered suite with order overrides runs only that mode") {
    const std::string cfg = temp_path("modes.json");
    write_file(cfg, "{\"modes\": [\"shadow\"], \"order\": 0}");
    const std::string out = temp_path("modes_report.json");
    const CliResult r = run_cli("suite --config " + cfg + " --out " + out);
    CHECK(r.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(out));
    REQUIRE(j.size() == 4);
    for (const auto& e : j) {
        CHECK(e["mode"] == "shadow");
        CHECK(e["status"] == "pass");
    }
}
