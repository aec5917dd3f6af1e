#ifndef FCQ_LIE_HPP
#define FCQ_LIE_HPP

#include <cstdint>
#include <vector>

#include "fcq/poisson.hpp"
#include "fcq/verdict.hpp"

namespace fcq {

using FpVec = std::vector<uint32_t>;

/// Degree-l monomials of A_0 over F_p; the sp(2n) = m^2/m^3 action is the Poisson bracket.
class GradedPiece {
public:
    GradedPiece(A0Ptr sp, int l);
    int degree() const { return l_; }
    size_t dim() const { return idx_.size(); }
    const std::vector<size_t>& indices() const { return idx_; }
    const A0Ptr& space() const { return sp_; }

    A0Elem embed(const FpVec& v) const;
    /// Degree-l component of f.
    FpVec project(const A0Elem& f) const;
    /// Matrix of v ↦ {X, v} on this piece, row-major dim × dim.
    FpVec action_matrix(const A0Elem& X) const;

private:
    A0Ptr sp_;
    int l_;
    std::vector<size_t> idx_;
};

/// Space of A_0 over F_p (no parameters).
A0Ptr a0_over_fp(int p, int n);

/// {X, v} projected to the degree of v.
FpVec sp_action(const GradedPiece& piece, const A0Elem& X, const FpVec& v);

/// Degree-2 monomials, a basis of sp(2n).
std::vector<A0Elem> sp_basis(const A0Ptr& sp);

/// Dimension of the associative algebra generated by the sp(2n) action on m^l/m^{l+1}.
size_t envelope_dimension(int p, int n, int l);
/// Absolute irreducibility: envelope dimension equals dim^2.
bool irreducibility_check(int p, int n, int l);

struct SpanReport {
    size_t rank = 0;
    size_t expected = 0;       // Σ_{2 ≤ i < 2n(p-1)} dim m^i/m^{i+1}
    size_t m2_dim = 0;
    bool graded = false;       // span lies in the expected degrees
    bool ok() const { return graded && rank == expected && rank + 1 == m2_dim; }
};

/// Span of {f, g} over monomials f, g ∈ m^2.
SpanReport commutator_span(int p, int n);

/// Lie algebra generated by m^2/m^3 and z equals the commutator span.
bool generation_check(int p, int n, const A0Elem& z);

/// Finite-dimensional Lie algebra over F_p by structure constants.
struct StructLie {
    int p = 3;
    size_t dim = 0;
    std::vector<FpVec> table;  // table[i * dim + j] = [e_i, e_j]

    FpVec bracket(const FpVec& a, const FpVec& b) const;
    bool satisfies_jacobi() const;
};

/// V ⊕ k·c with [v, w] = scale · ω(v, w) c, ω the standard symplectic form on F_p^{2n}.
StructLie central_extension(int p, int n, uint32_t scale);
/// sl_2 with basis e, f, hh.
StructLie sl2(int p);

/// s_i(X, Y) for i = 1..p-1: coefficient of t^{i-1} in ad(tX + Y)^{p-1}(X), divided by i.
std::vector<FpVec> jacobson_si(const StructLie& L, const FpVec& X, const FpVec& Y);

/// f ↦ f + η(H_f) + Σ a_i v_i + b_i u_i into the flat layout, H_f = Σ a_i ∂_{x_i} + b_i ∂_{y_i}.
A0Elem moment_lift(const A0Ptr& flat, const A0Elem& f);
/// {L(f), L(g)} ≡ L({f, g}) modulo constants on `pairs` random pairs plus all coordinate pairs.
Verdict moment_lift_check(int p, int n, int pairs, uint64_t seed);

/// Jacobi identity for the Poisson bracket and H_c = 0 for constants, on random triples.
Verdict poisson_lie_model_check(int p, int n, int triples, uint64_t seed);

}  // namespace fcq

#endif
