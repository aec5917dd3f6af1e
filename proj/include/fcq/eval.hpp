#ifndef FCQ_EVAL_HPP
#define FCQ_EVAL_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "fcq/weyl.hpp"

namespace fcq {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Evaluates the canonical element grammar in a Weyl algebra at (p, n).
 *
 * Atoms: integers, x_i y_i (and v_i u_i, which select the flat flavor),
 * parameters eps_i del_i tau t, and h. Operators: + - * ^, [a,b] for the
 * commutator, {a,b} for the Poisson bracket of the symbols (lifted back),
 * exp(g) for e^{g/h}. Only h takes negative exponents.
 */
WeylElem evaluate(const std::string& text, int p, int n, std::optional<Window> window = std::nullopt);

}  // namespace fcq

#endif
