#ifndef FCQ_CHECKS_HPP
#define FCQ_CHECKS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fcq/laurent.hpp"
#include "fcq/verdict.hpp"

namespace fcq {

/// Raised for unusable runner configurations.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SuiteConfig {
    int p = 3;
    int n = 1;
    std::optional<int> precision;
    std::optional<int> floor;
    uint64_t seed = 1;
    /// "all", a suite id, or "suite/name" selecting checks whose name contains `name`.
    std::string suite = "all";

    /// Window for the algebras built by the sweeps: overrides on top of the default.
    Window window() const;
};

/// Throws ConfigError for unsupported primes, n < 1 or the p^{4n} memory guard.
void validate_config(const SuiteConfig& cfg);

enum class Status { Pass, Fail, Error };
const char* status_name(Status s);

struct CheckResult {
    std::string suite;
    std::string check;
    std::string params;
    Status status = Status::Error;
    std::string witness;
    double ms = 0;
};

struct CheckSpec {
    std::string suite;
    /// "cNN.name" with NN the acceptance criterion the check belongs to.
    std::string id;
    /// Human-readable name used by the markdown report.
    std::string title;
    std::function<bool(const SuiteConfig&)> applies;
    /// Reason shown when an explicitly selected check does not apply.
    std::string requirement;
    std::function<Verdict(const SuiteConfig&)> run;
};

const std::vector<CheckSpec>& check_registry();
/// Suite ids in report order.
const std::vector<std::string>& suite_ids();

/// Checks selected by cfg.suite; ConfigError when the selector names nothing
/// or names a check that cannot run at (p, n).
std::vector<const CheckSpec*> select_checks(const SuiteConfig& cfg);

/// Runs the selected checks concurrently; results sorted by suite then check id.
std::vector<CheckResult> run_suites(const SuiteConfig& cfg);

struct Summary {
    int pass = 0, fail = 0, error = 0;
    bool ok() const { return fail == 0 && error == 0; }
};
Summary summarize(const std::vector<CheckResult>& results);

constexpr int kReportVersion = 1;

std::string render_json(const SuiteConfig& cfg, const std::vector<CheckResult>& results, bool timing);
std::string render_markdown(const SuiteConfig& cfg, const std::vector<CheckResult>& results, bool timing);

}  // namespace fcq

#endif
