#ifndef FCQ_DIFFOPS_HPP
#define FCQ_DIFFOPS_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fcq/poisson.hpp"
#include "fcq/weyl.hpp"

namespace fcq {

enum class CoordMode {
    Frobenius,  ///< A_0-type: x_i^p = 0
    Window      ///< k[x]/(deg >= K) with a sticky overflow flag
};

/// Coordinate ring k[x_1..x_m] truncated by one of the two rules (at most 4 variables).
struct CoordRing {
    int p;
    int m;
    CoordMode mode;
    int K;  // degree cap in window mode
    std::vector<std::string> names;

    static std::shared_ptr<const CoordRing> frobenius(int p, int m);
    static std::shared_ptr<const CoordRing> window(int p, int m, int K);
    /// A_0 coordinates x_1..x_n, y_1..y_n.
    static std::shared_ptr<const CoordRing> a0(int p, int n);
};

using CoordPtr = std::shared_ptr<const CoordRing>;

/**
 * Element of the Rees algebra D_{C,h}: Σ c h^k x^e (h∂)^a with functions to
 * the left. Exponents are packed one byte per variable (x in the low half).
 */
class DOp {
public:
    struct Key {
        uint64_t mono;
        int hp;
        bool operator<(const Key& o) const { return hp != o.hp ? hp < o.hp : mono < o.mono; }
        bool operator==(const Key& o) const { return hp == o.hp && mono == o.mono; }
    };

    DOp() = default;
    explicit DOp(CoordPtr c) : c_(std::move(c)) {}
    static DOp scalar(const CoordPtr& c, long long v);
    static DOp coord(const CoordPtr& c, int i);
    /// h ∂/∂x_i.
    static DOp hdel(const CoordPtr& c, int i);
    static DOp h_power(const CoordPtr& c, int k);
    static DOp term(const CoordPtr& c, const std::vector<int>& xe, const std::vector<int>& de, int hp, uint32_t coef);

    const CoordPtr& ring() const { return c_; }
    const std::map<Key, uint32_t>& terms() const;
    bool overflowed() const { return overflow_; }
    bool is_zero() const;
    int xexp(uint64_t mono, int i) const { return static_cast<int>((mono >> (8 * i)) & 0xFF); }
    int dexp(uint64_t mono, int i) const { return static_cast<int>((mono >> (8 * (4 + i))) & 0xFF); }
    /// True when no derivative appears.
    bool is_function() const;

    DOp operator+(const DOp& o) const;
    DOp operator-(const DOp& o) const;
    DOp operator-() const;
    DOp operator*(const DOp& o) const;
    DOp scaled(uint32_t c) const;
    DOp shifted(int k) const;
    DOp pow(unsigned e) const;
    /// Throws WindowError when either side overflowed.
    bool operator==(const DOp& o) const;
    bool operator!=(const DOp& o) const { return !(*this == o); }
    std::string to_string() const;

    void add_term(uint64_t mono, int hp, uint32_t c);
    void mark_overflow() { overflow_ = true; }

private:
    CoordPtr c_;
    std::map<Key, uint32_t> t_;
    bool overflow_ = false;
};

DOp dop_commutator(const DOp& a, const DOp& b);

/// Polynomial vector field Σ θ_j ∂_j with DOp-function coefficients.
struct DVField {
    std::vector<DOp> comp;
};

/// Apply a vector field to a function.
DOp apply_field(const DVField& theta, const DOp& f);
/// θ^{[p]} by p-fold composition on the coordinates.
DVField field_restricted_power(const DVField& theta);
/// Σ θ_j (h∂_j).
DOp h_field(const DVField& theta);

/// p-curvature of a field: (hθ)^p - h^{p-1}(hθ^{[p]}).
DOp p_curvature(const DVField& theta);
/// p-curvature of a function: f^p.
DOp p_curvature(const DOp& f);

/// Commutes with every generator x_i and h∂_i.
bool is_central(const DOp& z);

/**
 * Central reduction Γ*_η: relations (h∂_i)^p = h^p η_i^p, where η_i^p is
 * central because it is a polynomial in the x_j^p.
 */
class CentralReduction {
public:
    CentralReduction(CoordPtr c, std::vector<DOp> eta);
    DOp reduce(const DOp& a) const;
    DOp mul(const DOp& a, const DOp& b) const { return reduce(a * b); }
    const std::vector<DOp>& eta() const { return eta_; }
    const CoordPtr& ring() const { return c_; }

private:
    CoordPtr c_;
    std::vector<DOp> eta_, eta_p_;
};

/// Algebra map of D_{C,h} given by images of x_i and h∂_i.
class DOpMap {
public:
    DOpMap(CoordPtr c, std::vector<DOp> x_images, std::vector<DOp> d_images);
    DOp operator()(const DOp& a) const;
    DOpMap compose(const DOpMap& inner) const;  // this ∘ inner

    const std::vector<DOp>& x_images() const { return xi_; }
    const std::vector<DOp>& d_images() const { return di_; }

private:
    CoordPtr c_;
    std::vector<DOp> xi_, di_;
};

/// φ_μ for μ = df: x ↦ x, h∂_i ↦ h∂_i + h ∂_i f. Takes the primitive f.
DOpMap phi_mu(const DOp& f);

/// Checks (h∂_i + h ∂_i f)^p = (h∂_i)^p + h^p (∂_i f)^p for each i.
bool katz_identity(const DOp& f);

/// Relation preservation of a map between reductions (η and η').
bool preserves_relations(const DOpMap& phi, const CentralReduction& src, const CentralReduction& dst);

/// Function (no derivatives) from an A_0 element over F_p, in the a0 coordinate ring.
DOp dop_from_a0(const CoordPtr& c, const A0Elem& f);

/// Generator dictionary A^♭ → Γ*_0 D_{A_0,h}: x,y ↦ coordinates, v_i ↦ h∂_{x_i}, u_i ↦ h∂_{y_i}.
DOp flat_to_dop(const CoordPtr& c, const WeylElem& a);

}  // namespace fcq

#endif
