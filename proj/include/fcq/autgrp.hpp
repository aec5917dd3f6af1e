#ifndef FCQ_AUTGRP_HPP
#define FCQ_AUTGRP_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fcq/poisson.hpp"
#include "fcq/weyl.hpp"

namespace fcq {

/**
 * Automorphism of A_0 ⊗ R given by the images of x_1..x_n, y_1..y_n.
 * Composition follows (g1 g2)(f) = g1(g2(f)).
 */
class AutA0 {
public:
    AutA0() = default;
    AutA0(A0Ptr sp, std::vector<A0Elem> images);
    static AutA0 identity(const A0Ptr& sp);

    const A0Ptr& space() const { return sp_; }
    const std::vector<A0Elem>& images() const { return img_; }
    const A0Elem& image(int j) const { return img_.at(j); }

    A0Elem apply(const A0Elem& f) const;
    AutA0 compose(const AutA0& inner) const;  // this ∘ inner
    AutA0 operator*(const AutA0& inner) const { return compose(inner); }
    bool operator==(const AutA0& o) const;

    /// Column idx holds the coefficients of g(monomial idx).
    std::vector<std::vector<CRElem>> matrix() const;
    /// Invertible iff the reduction of the matrix modulo the nilradical is.
    bool invertible() const;
    AutA0 inverse() const;

    /// g·w = Σ g(a) d g(z_J).
    KForm push(const KForm& w) const;

    std::string to_string() const;

private:
    A0Ptr sp_;
    std::vector<A0Elem> img_;
};

struct Validation {
    bool invertible = false;
    bool symplectic = false;
    bool exact = false;
    std::string detail;
    bool ok() const { return invertible && symplectic && exact; }
};

/// Membership in G_0 at the point level.
Validation validate(const AutA0& g);

/// The primitive f with g·η = η + df and zero constant term.
std::optional<A0Elem> eta_primitive(const AutA0& g);

/// φ(g) = coordinate of [f ω^n] with g·η = η + df.
CRElem phi_Ga(const AutA0& g);

/// s(t): f ↦ f - (t/2){f, u} with u = Π x_i^{p-1} y_i^{p-1}.
AutA0 section_s(const A0Ptr& sp, const CRElem& t);

/// λ(τ): p > 3 sends y_1 ↦ y_1 + 3τx_1^2; p = 3 is exp(τ H_{-x_1^2 y_1}):
/// x_1 ↦ x_1 + τx_1^2, y_1 ↦ y_1 - 2τx_1y_1 + τ^2x_1^2y_1.
AutA0 lambda_subgroup(const A0Ptr& sp, const CRElem& tau);

/// Translation x_i ↦ x_i + ε_i, y_i ↦ y_i + δ_i.
AutA0 translation(const A0Ptr& sp, const std::vector<CRElem>& eps, const std::vector<CRElem>& del);

/// Linear map z ↦ M z over F_p, M a 2n×2n matrix on (x, y).
AutA0 linear(const A0Ptr& sp, const std::vector<std::vector<uint32_t>>& m);

/// Random element of Sp(2n, F_p) as a product of symplectic transvections.
std::vector<std::vector<uint32_t>> random_sp(int p, int n, std::mt19937_64& rng);

/// Scaling x ↦ x, y ↦ c y: not symplectic for c ≠ 1.
AutA0 scaling(const A0Ptr& sp, uint32_t c);

/// Coefficient of t^1 in the images of a one-parameter family, as a vector field.
VField differential_at_zero(const AutA0& g, int param_gen);

/**
 * Algebra endomorphism of a Weyl algebra determined by images of the generators.
 * Images are multiplied in PBW order.
 */
class WeylMap {
public:
    WeylMap(WeylPtr alg, std::vector<WeylElem> images);
    WeylElem operator()(const WeylElem& a) const;
    const std::vector<WeylElem>& images() const { return img_; }
    const WeylPtr& algebra() const { return alg_; }
    WeylMap compose(const WeylMap& inner) const;  // this ∘ inner

private:
    WeylPtr alg_;
    std::vector<WeylElem> img_;
};

/// Embedding of A_0 ⊗ R into the commuting x, y part of the flat algebra.
WeylElem a0_to_flat(const WeylPtr& flat, const A0Elem& f);

/// ψ_g = φ_{g·η - η} ∘ ψ_{can,g} on A^♭.
WeylMap psi_action(const WeylPtr& flat, const AutA0& g);

/// Relations of the flat algebra hold for the images: commutators and p-th powers.
bool is_flat_endomorphism(const WeylMap& m);

}  // namespace fcq

#endif
