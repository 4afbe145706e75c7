// mockforms: expand named q-series, verify named identities, run check suites.

#include "mockforms/mockforms.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int cmd_expand(const std::string& name, long long order, bool latex) {
    const auto& table = mockforms::expand_table();
    auto it = table.find(name);
    if (it == table.end()) {
        std::cerr << "unknown series \"" << name << "\"; available:";
        for (const auto& [k, _] : table) std::cerr << " " << k;
        std::cerr << "\n";
        return 2;
    }
    try {
        const mockforms::QSeries s = it->second(order);
        if (latex)
            std::cout << mockforms::qs_latex(s) << "\n";
        else
            std::cout << mockforms::qs_write(s);
    } catch (const std::exception& e) {
        std::cerr << "expand failed: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int cmd_verify(const std::string& name, const mockforms::CheckParams& overrides, bool has_order,
               bool has_samples, bool has_seed, bool has_tol) {
    const mockforms::CheckDef* def = mockforms::find_check(name);
    if (!def) {
        std::cerr << "unknown check \"" << name << "\"; run the suite command or see README for "
                  << "the check list\n";
        return 2;
    }
    mockforms::CheckParams p = def->defaults;
    if (has_order) p.order = overrides.order;
    if (has_samples) p.samples = overrides.samples;
    if (has_seed) p.seed = overrides.seed;
    if (has_tol) p.tol = overrides.tol;
    const mockforms::IdentityReport rep = mockforms::run_check_safe(*def, p);
    std::cout << "[" << mockforms::to_string(rep.status) << "] " << rep.name << " ("
              << rep.runtime_ms << " ms) " << rep.detail << "\n";
    return rep.status == mockforms::CheckStatus::Pass ? 0 : 1;
}

int cmd_suite(const std::string& config_path, const std::string& out_path) {
    std::ifstream f(config_path);
    if (!f) {
        std::cerr << "cannot open config file " << config_path << "\n";
        return 2;
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    return mockforms::run_suite(buf.str(), out_path, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact q-series engine and identity verifier"};
    app.require_subcommand(1);

    std::string expand_name;
    long long expand_order = 20;
    bool expand_latex = false;
    CLI::App* expand = app.add_subcommand("expand", "Print a named series to a given order");
    expand->add_option("name", expand_name, "series name")->required();
    expand->add_option("--order", expand_order, "q-order to expand through")
        ->check(CLI::NonNegativeNumber);
    expand->add_flag("--latex", expand_latex, "print as a LaTeX sum instead of the text format");

    std::string verify_name;
    mockforms::CheckParams overrides;
    CLI::App* verify = app.add_subcommand("verify", "Run one named check and report pass/fail");
    verify->add_option("check", verify_name, "check name, e.g. exact.cy_def_matches_closed")
        ->required();
    CLI::Option* o_order = verify->add_option("--order", overrides.order, "q-order for exact checks");
    CLI::Option* o_samples =
        verify->add_option("--samples", overrides.samples, "sample count for numeric checks");
    CLI::Option* o_seed = verify->add_option("--seed", overrides.seed, "random seed");
    CLI::Option* o_tol = verify->add_option("--tol", overrides.tol, "numeric tolerance");

    std::string config_path, out_path;
    CLI::App* suite = app.add_subcommand("suite", "Run a configured set of checks, write a report");
    suite->add_option("--config", config_path, "suite config JSON")->required();
    suite->add_option("--out", out_path, "report JSON output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (expand->parsed()) return cmd_expand(expand_name, expand_order, expand_latex);
        if (verify->parsed())
            return cmd_verify(verify_name, overrides, o_order->count() > 0,
                              o_samples->count() > 0, o_seed->count() > 0, o_tol->count() > 0);
        if (suite->parsed()) return cmd_suite(config_path, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
