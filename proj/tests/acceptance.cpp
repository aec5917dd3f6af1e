// Runs every registered check at the acceptance configurations and prints one
// line per criterion. A criterion passes when it has at least one applicable
// check and all of them pass.
#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "fcq/checks.hpp"

namespace {

const char* kTitles[] = {
    "Weyl relations and quantization axiom",
    "matrix representation",
    "restricted structure cross-check",
    "p-curvature and central reduction",
    "psi homomorphism",
    "Heisenberg identities",
    "connection invariance",
    "Lie lemmas",
    "group homomorphisms",
    "loop-group appendix",
    "involution",
};

struct Tally {
    int run = 0, bad = 0;
    std::vector<std::string> failures;
};

}  // namespace

int main() {
    const std::vector<std::pair<int, int>> configs{{3, 1}, {5, 1}, {3, 2}};
    std::map<int, Tally> tally;
    for (auto [p, n] : configs) {
        fcq::SuiteConfig cfg;
        cfg.p = p;
        cfg.n = n;
        auto t0 = std::chrono::steady_clock::now();
        auto results = fcq::run_suites(cfg);
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("# (p,n)=(%d,%d): %zu checks in %.1fs\n", p, n, results.size(), s);
        for (const auto& r : results) {
            int crit = std::stoi(r.check.substr(1, 2));
            Tally& t = tally[crit];
            ++t.run;
            if (r.status != fcq::Status::Pass) {
                ++t.bad;
                t.failures.push_back(r.check + " [" + r.params + "] " + fcq::status_name(r.status) + ": " + r.witness);
            }
        }
    }
    bool all = true;
    for (int c = 1; c <= 11; ++c) {
        const Tally& t = tally[c];
        bool ok = t.run > 0 && t.bad == 0;
        all = all && ok;
        std::printf("criterion %2d: %s  %s (%d checks)\n", c, ok ? "PASS" : "FAIL", kTitles[c - 1], t.run);
        for (const auto& f : t.failures) std::printf("    %s\n", f.c_str());
    }
    return all ? 0 : 1;
}
