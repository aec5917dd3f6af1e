#ifndef FCQ_WEYL_HPP
#define FCQ_WEYL_HPP

#include <memory>
#include <string>
#include <vector>

#include "fcq/laurent.hpp"
#include "fcq/poisson.hpp"
#include "fcq/verdict.hpp"

namespace fcq {

enum class Flavor { Standard, Flat };

/// One PBW monomial produced by straightening: coefficient * h^k * mono.
struct PbwTerm {
    uint64_t mono;
    int k;
    uint32_t c;
};

/**
 * Restricted Weyl algebra over R((h)) with p-th powers of generators zero.
 *
 * Standard flavor: generators x_1..x_n, y_1..y_n with x_i y_i - y_i x_i = h.
 * Flat flavor: x, y, v, u with v_i x_i - x_i v_i = u_i y_i - y_i u_i = h and
 * all other commutators zero. Both are built from commuting pairs (Q, P)
 * with P Q = Q P + s h; PBW order puts every Q before its P.
 */
class WeylAlgebra {
public:
    static constexpr int kBits = 4;

    WeylAlgebra(int p, int n, Flavor flavor, RingPtr ring, Window window);
    static std::shared_ptr<const WeylAlgebra> make(int p, int n, Flavor flavor, RingPtr ring);
    static std::shared_ptr<const WeylAlgebra> make(int p, int n, Flavor flavor, RingPtr ring, Window window);

    int p() const { return p_; }
    int n() const { return n_; }
    Flavor flavor() const { return flavor_; }
    int ngens() const { return ngens_; }
    const RingPtr& ring() const { return ring_; }
    const Window& window() const { return window_; }

    const std::string& gen_name(int i) const { return names_.at(i); }
    int gen_index(const std::string& name) const;
    int exponent(uint64_t mono, int i) const { return static_cast<int>((mono >> (kBits * i)) & 0xF); }
    uint64_t gen_mono(int i, int e = 1) const { return static_cast<uint64_t>(e) << (kBits * i); }
    int degree(uint64_t mono) const;
    /// All p^{ngens} PBW monomials in increasing packed order.
    std::vector<uint64_t> basis() const;
    std::string mono_string(uint64_t mono) const;

    /// Straightened product of two PBW monomials (appends to out).
    void mono_product(uint64_t a, uint64_t b, std::vector<PbwTerm>& out) const;

    bool compatible(const WeylAlgebra& o) const;

private:
    struct PairRule {
        int q, p, sign;
    };
    int p_, n_;
    Flavor flavor_;
    int ngens_;
    RingPtr ring_;
    Window window_;
    std::vector<std::string> names_;
    std::vector<PairRule> pairs_;
    // table[(qa*p+pa)*p*p + qb*p+pb] -> list of (k, coefficient, q', p')
    struct PairTerm {
        int k;
        uint32_t c;
        int qe, pe;
    };
    std::vector<std::vector<PairTerm>> table_;
};

using WeylPtr = std::shared_ptr<const WeylAlgebra>;

struct WTerm {
    uint64_t pbw;
    int hp;
    uint64_t cr;
    uint32_t c;
};

/**
 * Element Σ c * h^k * (CR monomial) * (PBW monomial) of a WeylAlgebra.
 *
 * Exact elements have precision kExact; terms with h-power at or above the
 * precision are unknown. Poles below the algebra's floor raise WindowError.
 */
class WeylElem {
public:
    WeylElem() = default;
    explicit WeylElem(WeylPtr alg, int prec = kExact);

    static WeylElem scalar(const WeylPtr& alg, const HLaurent& c);
    static WeylElem scalar(const WeylPtr& alg, const CRElem& c);
    static WeylElem scalar(const WeylPtr& alg, long long c);
    static WeylElem gen(const WeylPtr& alg, int i);
    static WeylElem gen(const WeylPtr& alg, const std::string& name);
    /// c * h^k * mono with c a ring element.
    static WeylElem monomial(const WeylPtr& alg, uint64_t mono, const CRElem& c, int k = 0);
    static WeylElem h_power(const WeylPtr& alg, int k);

    const WeylPtr& algebra() const { return alg_; }
    const std::vector<WTerm>& terms() const { return t_; }
    int precision() const { return prec_; }
    bool exact() const { return is_exact_prec(prec_); }
    bool is_zero() const { return t_.empty(); }
    /// Lowest h-power present (precision when zero).
    int valuation() const;

    /// Laurent coefficient of a PBW monomial.
    HLaurent coefficient(uint64_t mono) const;
    /// Distinct PBW monomials with a nonzero coefficient.
    std::vector<uint64_t> support() const;
    bool is_scalar() const;

    WeylElem operator+(const WeylElem& o) const;
    WeylElem operator-(const WeylElem& o) const;
    WeylElem operator-() const;
    WeylElem operator*(const WeylElem& o) const;
    WeylElem& operator+=(const WeylElem& o) { return *this = *this + o; }
    WeylElem& operator*=(const WeylElem& o) { return *this = *this * o; }
    WeylElem scaled(const CRElem& c) const;
    WeylElem scaled(const HLaurent& c) const;
    WeylElem scaled(uint32_t c) const;
    /// Multiply by h^k.
    WeylElem shifted(int k) const;
    WeylElem truncated(int prec) const;
    WeylElem pow(unsigned e) const;
    WeylElem mapped(const CRHom& f, const WeylPtr& target) const;

    bool operator==(const WeylElem& o) const;
    bool operator!=(const WeylElem& o) const { return !(*this == o); }

    std::string to_string() const;

    /// Build from unsorted terms (combines, drops zeros and terms past prec).
    static WeylElem from_terms(const WeylPtr& alg, std::vector<WTerm> terms, int prec);

private:
    WeylPtr alg_;
    int prec_ = kExact;
    std::vector<WTerm> t_;
};

/// Serial reference product.
WeylElem weyl_mul_serial(const WeylElem& a, const WeylElem& b);
/// OpenMP product over the outer term list; identical output to the serial one.
WeylElem weyl_mul_parallel(const WeylElem& a, const WeylElem& b);

WeylElem commutator(const WeylElem& a, const WeylElem& b);

/// e^{g/h} = Σ_{i<p} g^i / (h^i i!); requires g^p = 0.
WeylElem restricted_exp(const WeylElem& g);
/// e^{τ f/h} for a ring element τ.
WeylElem restricted_exp(const CRElem& tau, const WeylElem& f);
/// Σ_{i<p} ad_{g/h}^i(a) / i!.
WeylElem ad_exp(const WeylElem& g, const WeylElem& a);
/// Conjugation u a u^{-1}.
WeylElem conjugate(const WeylElem& u, const WeylElem& a, const WeylElem& u_inv);

/// Anti-automorphism fixing the generators and sending h to -h.
WeylElem op_involution(const WeylElem& a);

/// Largest excess of pole order over floor(PBW degree / 2); <= 0 means the
/// element lies in R[[h]]<x, y, h^{-1} m^2>.
int quadratic_pole_excess(const WeylElem& a);

/// Normal-ordered PBW lift of an A_0 element; the layouts of A0Space and WeylAlgebra share generator order.
WeylElem lift(const WeylPtr& alg, const A0Elem& f);
/// Reduction mod h; throws WindowError when a has poles.
A0Elem symbol(const WeylElem& a, const A0Ptr& sp);

/// Ad_{e^{τf/h}}(g) = Σ_{i<p} ad_{τf/h}^i(g)/i! on every PBW basis element, with no poles in the result.
Verdict ad_exp_check(const WeylElem& f, const CRElem& tau);

}  // namespace fcq

#endif
