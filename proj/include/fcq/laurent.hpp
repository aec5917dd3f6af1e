#ifndef FCQ_LAURENT_HPP
#define FCQ_LAURENT_HPP

#include <map>
#include <string>

#include "fcq/coeff_ring.hpp"

namespace fcq {

/// Precision value meaning "every coefficient is known" (finite support).
constexpr int kExact = 1 << 28;
constexpr int kNoFloor = -(1 << 28);

inline bool is_exact_prec(int prec) { return prec >= kExact / 2; }

/// Module-wide h-window: coefficients below `floor` are structurally zero,
/// coefficients at or above `precision` are unknown.
struct Window {
    int floor;
    int precision;
};

/// Default window for (p, n): 2n + 2 restricted exponentials of linear exponents, each with poles up to p - 1.
Window default_window(int p, int n);

/**
 * Truncated Laurent series Σ_{floor<=i<precision} a_i h^i over a CoeffRing.
 *
 * Power series (HSeries) are the floor-0 case. Exact elements carry
 * precision kExact. Products keep min(prec_a + val_b, prec_b + val_a) and
 * throw WindowError when a pole would drop below the floor.
 */
class HLaurent {
public:
    HLaurent() = default;
    explicit HLaurent(RingPtr r, int floor = kNoFloor, int prec = kExact);

    static HLaurent constant(const CRElem& c, int floor = kNoFloor, int prec = kExact);
    static HLaurent constant(const RingPtr& r, long long c, int floor = kNoFloor, int prec = kExact);
    /// c * h^k.
    static HLaurent monomial(const CRElem& c, int k, int floor = kNoFloor, int prec = kExact);
    /// Power series with the given coefficients a_0.. and precision N.
    static HLaurent series(const RingPtr& r, const std::vector<CRElem>& coeffs, int prec);

    const RingPtr& ring() const { return r_; }
    int p() const { return r_->p(); }
    int floor() const { return floor_; }
    int precision() const { return prec_; }
    bool exact() const { return is_exact_prec(prec_); }
    const std::map<int, CRElem>& coeffs() const { return c_; }

    /// Coefficient of h^i; throws WindowError outside [floor, precision).
    CRElem coeff(int i) const;
    void set(int i, const CRElem& c);
    void add_to(int i, const CRElem& c);

    /// Lowest index with a nonzero coefficient; precision when none is stored.
    int valuation() const;
    bool is_zero() const { return c_.empty(); }
    bool is_series() const { return c_.empty() || c_.begin()->first >= 0; }
    /// Elements of Ŵ: 1 + Σ_{i>0} a_i h^{-i} with nilpotent a_i.
    bool in_W_hat() const;

    HLaurent operator+(const HLaurent& o) const;
    HLaurent operator-(const HLaurent& o) const;
    HLaurent operator-() const;
    HLaurent operator*(const HLaurent& o) const;
    HLaurent& operator+=(const HLaurent& o) { return *this = *this + o; }
    HLaurent& operator*=(const HLaurent& o) { return *this = *this * o; }
    HLaurent scaled(const CRElem& c) const;
    HLaurent scaled(uint32_t c) const;
    /// Multiply by h^k.
    HLaurent shifted(int k) const;
    HLaurent truncated(int prec) const;
    HLaurent with_floor(int floor) const;
    /// Apply a coefficient ring homomorphism.
    HLaurent mapped(const CRHom& f) const;
    /// Formal derivative of all coefficients in generator i.
    HLaurent deriv(int i) const;
    HLaurent pow(unsigned e) const;
    /// Substitute h -> -h.
    HLaurent h_negated() const;

    /// Equality on the common window of known coefficients.
    bool operator==(const HLaurent& o) const;
    bool operator!=(const HLaurent& o) const { return !(*this == o); }

    /// Unit criterion over a local coefficient ring: some coefficient is a unit.
    bool is_unit() const;
    /// Inverse of a unit; exact inputs are inverted to precision `prec_if_exact`.
    HLaurent inverse(int prec_if_exact) const;

    std::string to_string() const;

private:
    void normalize();
    RingPtr r_;
    int floor_ = kNoFloor;
    int prec_ = kExact;
    std::map<int, CRElem> c_;
};

using HSeries = HLaurent;

/// Power series inverse (floor 0, unit constant term).
HSeries hs_inv(const HSeries& u, int prec_if_exact);

/// u = r * w * h^m * what with r a unit constant, w ∈ 1 + hR[[h]], what ∈ Ŵ.
struct UnitDecomposition {
    CRElem r;
    HLaurent w;
    int m = 0;
    HLaurent what;
    HLaurent recombine() const;
};

UnitDecomposition unit_decompose(const HLaurent& u);

}  // namespace fcq

#endif
