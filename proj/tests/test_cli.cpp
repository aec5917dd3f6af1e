#include <doctest.h>

#include <cstdlib>
#include <set>
#include <sys/wait.h>

#include <json.hpp>

#include "fcq/checks.hpp"
#include "fcq/eval.hpp"

using namespace fcq;

namespace {

SuiteConfig cfg_at(int p, int n, std::string suite = "all") {
    SuiteConfig c;
    c.p = p;
    c.n = n;
    c.suite = std::move(suite);
    return c;
}

int cli_exit(const std::string& args) {
    std::string cmd = std::string("\"") + FCQ_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("configuration guard") {
        CHECK_NOTHROW(validate_config(cfg_at(3, 1)));
        CHECK_NOTHROW(validate_config(cfg_at(3, 3)));
        CHECK_THROWS_AS(validate_config(cfg_at(11, 1)), ConfigError);
        CHECK_THROWS_AS(validate_config(cfg_at(2, 1)), ConfigError);
        CHECK_THROWS_AS(validate_config(cfg_at(3, 0)), ConfigError);
        CHECK_THROWS_AS(validate_config(cfg_at(3, 4)), ConfigError);
        SuiteConfig bad = cfg_at(3, 1);
        bad.precision = 0;
        CHECK_THROWS_AS(validate_config(bad), ConfigError);
        bad = cfg_at(3, 1);
        bad.floor = 2;
        CHECK_THROWS_AS(validate_config(bad), ConfigError);
    }

    TEST_CASE("window overrides") {
        SuiteConfig c = cfg_at(3, 1);
        CHECK(c.window().floor == -9);
        CHECK(c.window().precision == 6);
        c.precision = 4;
        c.floor = -20;
        CHECK(c.window().floor == -20);
        CHECK(c.window().precision == 4);
    }

    TEST_CASE("selectors") {
        CHECK_THROWS_AS(select_checks(cfg_at(5, 1, "autgrp/char3")), ConfigError);
        CHECK_THROWS_AS(select_checks(cfg_at(3, 1, "nosuch")), ConfigError);
        CHECK_THROWS_AS(select_checks(cfg_at(3, 1, "weyl/nosuch")), ConfigError);
        CHECK(select_checks(cfg_at(3, 1, "autgrp/char3")).size() == 1);
        for (const CheckSpec* c : select_checks(cfg_at(3, 1, "weyl"))) CHECK(c->suite == "weyl");
        // Suite-level selection silently drops checks that do not apply.
        CHECK_NOTHROW(select_checks(cfg_at(5, 1, "autgrp")));
    }

    TEST_CASE("every criterion has a check at (3,1)") {
        std::set<std::string> crit;
        for (const CheckSpec* c : select_checks(cfg_at(3, 1))) crit.insert(c->id.substr(0, 3));
        CHECK(crit.size() == 11);
        CHECK(*crit.begin() == "c01");
        CHECK(*crit.rbegin() == "c11");
        std::set<std::string> ids;
        for (const CheckSpec& c : check_registry()) CHECK(ids.insert(c.id).second);
    }

    TEST_CASE("reports") {
        SuiteConfig c = cfg_at(3, 1, "weyl");
        c.seed = 5;
        auto r1 = run_suites(c), r2 = run_suites(c);
        CHECK(render_json(c, r1, false) == render_json(c, r2, false));
        Summary s = summarize(r1);
        CHECK(s.ok());
        CHECK(s.pass == static_cast<int>(r1.size()));

        auto doc = nlohmann::json::parse(render_json(c, r1, false));
        CHECK(doc["version"] == kReportVersion);
        CHECK(doc["config"]["p"] == 3);
        CHECK(doc["summary"]["pass"] == s.pass);
        CHECK_FALSE(doc["results"][0].contains("ms"));
        CHECK(nlohmann::json::parse(render_json(c, r1, true))["results"][0].contains("ms"));

        std::vector<CheckResult> none;
        auto empty = nlohmann::json::parse(render_json(c, none, false));
        CHECK(empty["summary"]["pass"] == 0);
        CHECK(empty["summary"]["fail"] == 0);
        CHECK(empty["summary"]["error"] == 0);

        CheckResult bad{"weyl", "c01.relations", "p=3 n=1", Status::Fail, "x1*y1 != y1*x1", 0};
        auto failing = nlohmann::json::parse(render_json(c, {bad}, false));
        CHECK(failing["results"][0]["status"] == "fail");
        CHECK(failing["results"][0]["witness"] == "x1*y1 != y1*x1");
        CHECK_FALSE(summarize({bad}).ok());

        std::string md = render_markdown(c, r1, false);
        CHECK(md.find("pass") != std::string::npos);
        CHECK(md.find("c01.relations") != std::string::npos);
    }

    TEST_CASE("element evaluation") {
        auto eq = [](const std::string& a, const std::string& b, int p = 3, int n = 1) {
            return evaluate(a, p, n) == evaluate(b, p, n);
        };
        CHECK(eq("y1*x1", "x1*y1 - h"));
        CHECK(eq("[y1, x1]", "-h"));
        CHECK(eq("[x2, y2]", "h", 3, 2));
        CHECK(eq("[x1, y2]", "0", 3, 2));
        CHECK(eq("exp(tau*x1)*y1*exp(-tau*x1)", "y1 + tau"));
        CHECK(eq("{x1^2, y1}", "2*x1"));
        CHECK(eq("h^-1 * h", "1"));
        CHECK(eq("(x1 + y1)^2", "x1^2 + 2*x1*y1 - h + y1^2"));
        // A v or u anywhere selects the flat algebra, so compare within one expression.
        CHECK(evaluate("[v1, x1] - h", 3, 1).is_zero());
        CHECK(evaluate("[u1, y1] - h + [u1, x1]", 3, 1).is_zero());
        CHECK_THROWS_AS(evaluate("x1 +", 3, 1), ParseError);
        CHECK_THROWS_AS(evaluate("x3", 3, 1), ParseError);
        CHECK_THROWS_AS(evaluate("x1^-1", 3, 1), ParseError);
        CHECK_THROWS_AS(evaluate("(x1", 3, 1), ParseError);
        CHECK_THROWS_AS(evaluate("q", 3, 1), ParseError);
    }

    TEST_CASE("executable exit codes") {
        CHECK(cli_exit("run --suite weyl --p 3 --n 1") == 0);
        CHECK(cli_exit("run --suite autgrp/char3 --p 5 --n 1") == 2);
        CHECK(cli_exit("run --p 11") == 2);
        CHECK(cli_exit("eval \"[x1, y1]\"") == 0);
        CHECK(cli_exit("eval \"x1 +\"") == 1);
    }
}
