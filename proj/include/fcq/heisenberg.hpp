#ifndef FCQ_HEISENBERG_HPP
#define FCQ_HEISENBERG_HPP

#include <vector>

#include "fcq/verdict.hpp"
#include "fcq/weyl.hpp"

namespace fcq {

/// t(ε, δ) = Π e^{ε_i x_i/h} Π e^{δ_i y_i/h}.
WeylElem heisenberg_section(const WeylPtr& alg, const std::vector<CRElem>& eps, const std::vector<CRElem>& del);
/// Exact inverse Π e^{-δ_i y_i/h} Π e^{-ε_i x_i/h}.
WeylElem heisenberg_section_inverse(const WeylPtr& alg, const std::vector<CRElem>& eps,
                                    const std::vector<CRElem>& del);

/// Ad_{t(ε,δ)} sends x_i ↦ x_i - δ_i and y_i ↦ y_i + ε_i.
Verdict verify_section_translates(const WeylPtr& alg, const std::vector<CRElem>& eps, const std::vector<CRElem>& del);

/// t(ε', δ') t(ε, δ) = Π e^{-ε_i δ'_i/h} t(ε + ε', δ + δ') over the universal ring.
Verdict verify_translation_identity(int p, int n);

/// Cubic identity for e^{τx_1^3/h} at p > 3 (n = 1), including that the last factor fixes the origin.
Verdict verify_cubic_identity(int p);

/// e^{c/h} = Σ_{i<p} c^i h^{-i} / i! for nilpotent c.
HLaurent scalar_exp(const CRElem& c);

/**
 * Normal form g = central · t(ε', δ') · s of g = γ̃ · t(ε, δ), where (ε', δ')
 * is read off from Ad_{g^{-1}} on the generators, central is the scalar
 * coefficient of t(ε', δ')^{-1} g, f its Ŵ-part and s = f^{-1} t(ε', δ')^{-1} g.
 */
struct TorsorNormalForm {
    std::vector<CRElem> eps_new, del_new;
    HLaurent central;
    HLaurent f;
    WeylElem s, s_inv;
};

TorsorNormalForm torsor_normal_form(const WeylElem& g, const WeylElem& g_inv);

/// p = 3 setting: ring F_3[τ, ε, δ] and e^{τx^2y/h} t(ε, δ) with its inverse.
struct Char3Setting {
    RingPtr ring;
    WeylPtr alg;
    WeylElem lhs, lhs_inv;
};
Char3Setting char3_setting();
Verdict verify_char3_identity();

/// Conjugation by u (inverse u_inv) keeps R[[h]]<x, y> and sends every generator into the maximal ideal mod h.
Verdict fixes_origin(const WeylElem& u, const WeylElem& u_inv);

/**
 * Scalar-valued 1-form Σ a_j d(gen_j) on the parameter space, gens indexed
 * by CoeffRing generator number. Used for ∇(s) of sections of the torsor.
 */
struct ParamForm {
    RingPtr ring;
    std::vector<int> gens;
    std::vector<HLaurent> comp;

    bool operator==(const ParamForm& o) const;
    ParamForm operator+(const ParamForm& o) const;
    std::string to_string() const;
};

/// η/h = Σ δ_i dε_i / h.
ParamForm eta_over_h(const RingPtr& R, const std::vector<int>& eps, const std::vector<int>& del);
/// c^{-1} dc with d over `gens`.
ParamForm log_derivative(const HLaurent& c, const std::vector<int>& gens);
/// ∇(c · t) = η/h + c^{-1}dc.
ParamForm connection_eval(const HLaurent& c, const std::vector<int>& eps, const std::vector<int>& del);
/// Pullback of Σ δ_i dε_i / h along (ε, δ) ↦ (ε', δ') given by images in R.
ParamForm pullback_eta(const RingPtr& R, const std::vector<int>& eps, const std::vector<int>& del,
                       const std::vector<CRElem>& eps_img, const std::vector<CRElem>& del_img);

/// α-invariance of ∇ at (p, n).
Verdict verify_alpha_invariance(int p, int n);
/// λ-invariance of ∇: cubic identity for p > 3, char-3 decomposition for p = 3.
Verdict verify_lambda_invariance(int p);
/// ∇(c_1 c_2 t) = ∇(c_2 t) + c_1^{-1}dc_1 for random Ŵ gauges.
Verdict verify_gauge_law(int p, uint64_t seed);

}  // namespace fcq

#endif
