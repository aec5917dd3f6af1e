#ifndef FCQ_POISSON_HPP
#define FCQ_POISSON_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fcq/coeff_ring.hpp"

namespace fcq {

/**
 * A_0 ⊗ R: truncated polynomials in m coordinates with all p-th powers zero,
 * stored densely over the p^m monomials.
 *
 * Standard layout: x_1..x_n, y_1..y_n with {x_i, y_i} = 1.
 * Flat layout: x, y, v, u with {v_i, x_i} = {u_i, y_i} = 1.
 */
class A0Space {
public:
    A0Space(int p, int n, RingPtr ring, bool flat = false);
    static std::shared_ptr<const A0Space> make(int p, int n, RingPtr ring, bool flat = false);

    int p() const { return p_; }
    int n() const { return n_; }
    int m() const { return m_; }
    bool flat() const { return flat_; }
    const RingPtr& ring() const { return ring_; }
    size_t dim() const { return dim_; }
    const std::string& coord_name(int j) const { return names_.at(j); }
    int coord_index(const std::string& name) const;
    int x(int i) const { return i; }
    int y(int i) const { return n_ + i; }

    int digit(size_t idx, int j) const { return digits_[idx * m_ + j]; }
    size_t stride(int j) const { return strides_[j]; }
    int degree(size_t idx) const;
    /// Index of the product monomial, or npos when some exponent reaches p.
    size_t mul_index(size_t a, size_t b) const;
    static constexpr size_t npos = ~size_t{0};
    std::string mono_string(size_t idx) const;
    /// Poisson pairs (a, b) with {z_a, z_b} = 1.
    const std::vector<std::pair<int, int>>& poisson_pairs() const { return pairs_; }
    /// Index of Π (x_i y_i)^{p-1} (standard layout).
    size_t top_index() const { return dim_ - 1; }

private:
    int p_, n_, m_;
    bool flat_;
    RingPtr ring_;
    size_t dim_;
    std::vector<std::string> names_;
    std::vector<uint8_t> digits_;
    std::vector<size_t> strides_;
    std::vector<std::pair<int, int>> pairs_;
};

using A0Ptr = std::shared_ptr<const A0Space>;

class A0Elem {
public:
    A0Elem() = default;
    explicit A0Elem(A0Ptr sp);
    static A0Elem constant(const A0Ptr& sp, const CRElem& c);
    static A0Elem constant(const A0Ptr& sp, long long c);
    static A0Elem coord(const A0Ptr& sp, int j);
    static A0Elem coord(const A0Ptr& sp, const std::string& name);
    static A0Elem monomial(const A0Ptr& sp, size_t idx, const CRElem& c);

    const A0Ptr& space() const { return sp_; }
    const CRElem& operator[](size_t i) const { return c_[i]; }
    CRElem& operator[](size_t i) { return c_[i]; }
    bool is_zero() const;
    const CRElem& constant_term() const { return c_[0]; }

    A0Elem operator+(const A0Elem& o) const;
    A0Elem operator-(const A0Elem& o) const;
    A0Elem operator-() const;
    A0Elem operator*(const A0Elem& o) const;
    A0Elem& operator+=(const A0Elem& o) { return *this = *this + o; }
    A0Elem scaled(const CRElem& c) const;
    A0Elem scaled(uint32_t c) const;
    A0Elem pow(unsigned e) const;
    A0Elem partial(int j) const;
    A0Elem mapped(const CRHom& f, const A0Ptr& target) const;
    bool operator==(const A0Elem& o) const;
    bool operator!=(const A0Elem& o) const { return !(*this == o); }
    std::string to_string() const;

private:
    A0Ptr sp_;
    std::vector<CRElem> c_;
};

/// {f, g} = Σ_{(a,b)} ∂_a f ∂_b g − ∂_b f ∂_a g; standard layout gives Σ f_x g_y − f_y g_x.
A0Elem poisson_bracket(const A0Elem& f, const A0Elem& g);

class VField {
public:
    VField() = default;
    explicit VField(A0Ptr sp);
    static VField coordinate(const A0Ptr& sp, int j);

    const A0Ptr& space() const { return sp_; }
    const A0Elem& operator[](int j) const { return comp_[j]; }
    A0Elem& operator[](int j) { return comp_[j]; }
    /// θ(f) = Σ θ_j ∂_j f.
    A0Elem apply(const A0Elem& f) const;
    VField operator+(const VField& o) const;
    VField operator-(const VField& o) const;
    VField scaled(const A0Elem& f) const;
    bool operator==(const VField& o) const;
    bool is_zero() const;

private:
    A0Ptr sp_;
    std::vector<A0Elem> comp_;
};

/// Derivation with components θ^p(z_j); equals the p-fold composite of θ.
VField vf_restricted_power(const VField& theta);
VField vf_bracket(const VField& a, const VField& b);

/// H_f with H_f(g) = {f, g}.
VField hamiltonian(const A0Elem& f);

/// Differential k-form; components keyed by the bitmask of increasing coordinates.
class KForm {
public:
    KForm() = default;
    KForm(A0Ptr sp, int degree);
    static KForm zero(const A0Ptr& sp, int degree) { return KForm(sp, degree); }
    static KForm function(const A0Elem& f);
    /// f dz_j.
    static KForm basic1(const A0Elem& f, int j);

    const A0Ptr& space() const { return sp_; }
    int degree() const { return deg_; }
    const std::map<uint32_t, A0Elem>& components() const { return comp_; }
    A0Elem component(uint32_t mask) const;
    void add(uint32_t mask, const A0Elem& f);

    KForm operator+(const KForm& o) const;
    KForm operator-(const KForm& o) const;
    KForm scaled(const A0Elem& f) const;
    KForm scaled(uint32_t c) const;
    bool operator==(const KForm& o) const;
    bool operator!=(const KForm& o) const { return !(*this == o); }
    bool is_zero() const;
    std::string to_string() const;

private:
    A0Ptr sp_;
    int deg_ = 0;
    std::map<uint32_t, A0Elem> comp_;
};

KForm d(const KForm& w);
KForm d(const A0Elem& f);
KForm wedge(const KForm& a, const KForm& b);
KForm iota(const VField& theta, const KForm& w);
/// L_θ = d ι_θ + ι_θ d.
KForm lie_derivative(const VField& theta, const KForm& w);
/// Apply an algebra map given on coordinates: Σ a dz_J -> Σ g(a) d g(z_J).
KForm pullback_coords(const KForm& w, const std::vector<A0Elem>& coord_images,
                      const std::function<A0Elem(const A0Elem&)>& apply);

/// ω = Σ dy_i ∧ dx_i.
KForm omega(const A0Ptr& sp);
/// η = Σ y_i dx_i, with dη = ω.
KForm eta_canonical(const A0Ptr& sp);
/// ω^n computed as an n-fold wedge.
KForm omega_power(const A0Ptr& sp, int k);

/// f^{[p]} = L_{H_f}^{p-1} ι_{H_f} η − ι_{H_f^{[p]}} η.
A0Elem restricted_power(const A0Elem& f, const KForm& eta);

/// f with df = μ and zero constant term, or nullopt when μ is not exact.
std::optional<A0Elem> exactness_class(const KForm& mu);

/// Coordinate of a top form on the class [Π (x_i y_i)^{p-1} Π dy_i ∧ dx_i].
CRElem top_derham_class(const KForm& nu);

}  // namespace fcq

#endif
