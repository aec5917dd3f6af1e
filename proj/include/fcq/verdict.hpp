#ifndef FCQ_VERDICT_HPP
#define FCQ_VERDICT_HPP

#include <string>

namespace fcq {

/// Outcome of one verification: pass flag plus a witness or diagnostic string.
struct Verdict {
    bool pass = false;
    std::string witness;

    static Verdict ok(std::string w = {}) { return {true, std::move(w)}; }
    static Verdict fail(std::string w) { return {false, std::move(w)}; }
    /// Conjunction; keeps the first failing witness.
    Verdict& operator&=(const Verdict& o) {
        if (pass && !o.pass) witness = o.witness;
        else if (pass && witness.empty()) witness = o.witness;
        pass = pass && o.pass;
        return *this;
    }
};

}  // namespace fcq

#endif
