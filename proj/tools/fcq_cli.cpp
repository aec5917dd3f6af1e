#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fcq/checks.hpp"
#include "fcq/eval.hpp"

namespace {

struct Options {
    int p = 3;
    int n = 1;
    int precision = 0;
    int floor = 1;  // 1 means unset; valid floors are <= 0
    uint64_t seed = 1;
    std::string suite = "all";
    std::string report = "json";
    std::string out;
    bool timing = false;
    std::string expr;
};

void add_algebra_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--p", o.p, "characteristic (3, 5 or 7)")->envname("FCQ_P");
    cmd->add_option("--n", o.n, "half the number of generators")->envname("FCQ_N");
    cmd->add_option("--precision", o.precision, "h-adic precision N (default 2p)")->envname("FCQ_PRECISION");
    cmd->add_option("--floor", o.floor, "lowest admissible h-power (default -(2n+2)(p-1)-1)")->envname("FCQ_FLOOR");
}

fcq::SuiteConfig to_config(const Options& o) {
    fcq::SuiteConfig c;
    c.p = o.p;
    c.n = o.n;
    if (o.precision != 0) c.precision = o.precision;
    if (o.floor != 1) c.floor = o.floor;
    c.seed = o.seed;
    c.suite = o.suite;
    return c;
}

int run_command(const Options& o) {
    fcq::SuiteConfig cfg = to_config(o);
    std::vector<fcq::CheckResult> results;
    try {
        results = fcq::run_suites(cfg);
    } catch (const fcq::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }
    std::string doc = o.report == "markdown" ? fcq::render_markdown(cfg, results, o.timing)
                                             : fcq::render_json(cfg, results, o.timing);
    if (o.out.empty()) {
        std::cout << doc;
    } else {
        std::ofstream f(o.out);
        if (!f) {
            std::cerr << "cannot write " << o.out << "\n";
            return 2;
        }
        f << doc;
    }
    return fcq::summarize(results).ok() ? 0 : 1;
}

int eval_command(const Options& o) {
    fcq::SuiteConfig cfg = to_config(o);
    try {
        fcq::validate_config(cfg);
        std::cout << fcq::evaluate(o.expr, o.p, o.n, cfg.window()).to_string() << "\n";
    } catch (const fcq::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification runner for restricted Weyl algebras in characteristic p"};
    app.require_subcommand(1);
    Options o;

    auto* run = app.add_subcommand("run", "run verification suites and emit a report");
    add_algebra_flags(run, o);
    run->add_option("--suite", o.suite, "all, a suite id, or suite/check-name")->envname("FCQ_SUITE");
    run->add_option("--seed", o.seed, "random seed")->envname("FCQ_SEED");
    run->add_option("--report", o.report, "report format")
        ->check(CLI::IsMember({"json", "markdown"}))
        ->envname("FCQ_REPORT");
    run->add_option("--out", o.out, "write the report to a file")->envname("FCQ_OUT");
    run->add_flag("--timing", o.timing, "include wall times (breaks byte-identical reports)");

    auto* ev = app.add_subcommand("eval", "evaluate an element expression");
    add_algebra_flags(ev, o);
    ev->add_option("expr", o.expr, "expression, e.g. \"[x1, y1]\" or \"exp(tau*x1)*y1\"")->required();

    CLI11_PARSE(app, argc, argv);
    if (run->parsed()) return run_command(o);
    return eval_command(o);
}
