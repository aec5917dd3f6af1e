#ifndef FCQ_MATREP_HPP
#define FCQ_MATREP_HPP

#include <string>
#include <vector>

#include "fcq/weyl.hpp"

namespace fcq {

/// Square matrix with HLaurent entries over one CoeffRing.
class LaurentMatrix {
public:
    LaurentMatrix() = default;
    LaurentMatrix(RingPtr r, size_t d);
    static LaurentMatrix identity(const RingPtr& r, size_t d);

    size_t size() const { return d_; }
    const RingPtr& ring() const { return r_; }
    HLaurent& at(size_t i, size_t j) { return e_[i * d_ + j]; }
    const HLaurent& at(size_t i, size_t j) const { return e_[i * d_ + j]; }

    LaurentMatrix operator+(const LaurentMatrix& o) const;
    LaurentMatrix operator-(const LaurentMatrix& o) const;
    LaurentMatrix operator*(const LaurentMatrix& o) const;
    LaurentMatrix scaled(const HLaurent& c) const;
    LaurentMatrix mapped(const CRHom& f) const;
    LaurentMatrix truncated(int prec) const;
    bool operator==(const LaurentMatrix& o) const;
    bool operator!=(const LaurentMatrix& o) const { return !(*this == o); }
    /// Smallest valuation over all entries.
    int valuation() const;
    std::string to_string() const;

private:
    RingPtr r_;
    size_t d_ = 0;
    std::vector<HLaurent> e_;
};

/// Images of x_1..x_n, y_1..y_n on the monomial basis of k[x]/(x^p).
/// x_i acts by multiplication and y_i by -h ∂/∂x_i.
std::vector<LaurentMatrix> rep_generators(const WeylPtr& alg);

/// The representation on a standard-flavor element.
LaurentMatrix rep(const WeylElem& a);

/// Division-free determinant (Berkowitz).
HLaurent det_series(const LaurentMatrix& m);

struct RankReport {
    size_t rank = 0;
    size_t expected = 0;
    bool full() const { return rank == expected; }
};

/// Rank over k((h)) of the p^{2n} PBW images, by minimal-valuation pivoting.
RankReport basis_rank_check(int p, int n);

/// Rank over k((h)) of a list of row vectors (field coefficients only).
size_t laurent_rank(std::vector<std::vector<HLaurent>> rows, int rel_prec);

/**
 * Commutator pairing on the infinitesimal translations.
 *
 * Directions 0..n-1 lift to x_i/h and n..2n-1 to y_i/h. The pairing is the
 * vector-field bracket of the lifts, pairing(v, w) = [l_w, l_v], which puts
 * it in the form ω/h with ω = Σ dy_i ∧ dx_i.
 */
HLaurent heisenberg_pairing(const WeylPtr& alg, int v, int w);

/// ω(e_v, e_w) with the same direction labels.
int omega_entry(int n, int v, int w);

/// Lattice Λ ⊆ V((h)) given by the columns of a canonical basis matrix.
struct Lattice {
    /// Upper triangular, diagonal h^{e_i}, entries right of the diagonal in row i reduced below h^{e_i}.
    LaurentMatrix basis;
    /// h^N V[[h]] ⊆ Λ ⊆ h^{-M} V[[h]].
    int N = 0, M = 0;
    bool operator==(const Lattice& o) const { return basis == o.basis; }
};

/// Lattice spanned by the columns of an invertible matrix, in canonical form.
Lattice lattice_from_columns(const LaurentMatrix& b, int prec);

/**
 * Λ = {v : A v ∈ V ⊗ O(G)[[h]]} for a matrix A over O(G)((h)).
 * Works by splitting A into F_p-matrices along the monomials of O(G).
 */
Lattice lattice_from_universal_matrix(const LaurentMatrix& a, int prec);

struct LatticeReport {
    bool lower_bound = false;  // h^N V[[h]] ⊆ Λ
    bool upper_bound = false;  // Λ ⊆ h^{-M} V[[h]]
    bool defining = false;     // A Λ ⊆ V ⊗ O(G)[[h]]
    /// A Λ ⊆ Λ ⊗ O(G)[[h]]; only meaningful when A is Id at the identity point.
    bool invariant = false;
    bool group_case = false;
    std::string detail;
    bool ok() const { return lower_bound && upper_bound && defining && (!group_case || invariant); }
};

LatticeReport check_lattice(const Lattice& l, const LaurentMatrix& a, int prec);

/// A(g) A(g') = A(g + g') after doubling every generator of O(G) (primitive coproduct).
bool universal_matrix_is_multiplicative(const LaurentMatrix& a);

/// Inverse of a matrix over a local coefficient ring, entries at relative precision prec.
LaurentMatrix laurent_inverse(const LaurentMatrix& m, int prec);

}  // namespace fcq

#endif
