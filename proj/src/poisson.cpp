#include "fcq/poisson.hpp"

#include <bit>
#include <sstream>

namespace fcq {

A0Space::A0Space(int p, int n, RingPtr ring, bool flat) : p_(p), n_(n), flat_(flat), ring_(std::move(ring)) {
    require_prime(p);
    if (n < 1) throw DomainError("A0Space: n must be positive");
    if (!ring_ || ring_->p() != p) throw DomainError("A0Space: ring characteristic mismatch");
    m_ = flat ? 4 * n : 2 * n;
    if (m_ > 31) throw DomainError("A0Space: too many coordinates");
    dim_ = 1;
    for (int j = 0; j < m_; ++j) {
        strides_.push_back(dim_);
        dim_ *= static_cast<size_t>(p);
        if (dim_ > 2'000'000) throw DomainError("A0Space: dimension too large");
    }
    const char* letters = flat ? "xyvu" : "xy";
    for (int g = 0; g < m_ / n; ++g)
        for (int i = 1; i <= n; ++i) names_.push_back(std::string(1, letters[g]) + std::to_string(i));
    digits_.resize(dim_ * m_);
    for (size_t idx = 0; idx < dim_; ++idx) {
        size_t r = idx;
        for (int j = 0; j < m_; ++j) {
            digits_[idx * m_ + j] = static_cast<uint8_t>(r % p);
            r /= p;
        }
    }
    for (int i = 0; i < n; ++i) {
        if (flat) {
            pairs_.push_back({2 * n + i, i});      // {v, x} = 1
            pairs_.push_back({3 * n + i, n + i});  // {u, y} = 1
        } else {
            pairs_.push_back({i, n + i});  // {x, y} = 1
        }
    }
}

std::shared_ptr<const A0Space> A0Space::make(int p, int n, RingPtr ring, bool flat) {
    return std::make_shared<const A0Space>(p, n, std::move(ring), flat);
}

int A0Space::coord_index(const std::string& name) const {
    for (int j = 0; j < m_; ++j)
        if (names_[j] == name) return j;
    return -1;
}

int A0Space::degree(size_t idx) const {
    int d = 0;
    for (int j = 0; j < m_; ++j) d += digit(idx, j);
    return d;
}

size_t A0Space::mul_index(size_t a, size_t b) const {
    for (int j = 0; j < m_; ++j)
        if (digit(a, j) + digit(b, j) >= p_) return npos;
    return a + b;
}

std::string A0Space::mono_string(size_t idx) const {
    std::string s;
    for (int j = 0; j < m_; ++j) {
        int e = digit(idx, j);
        if (!e) continue;
        if (!s.empty()) s += '*';
        s += names_[j];
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------------------

A0Elem::A0Elem(A0Ptr sp) : sp_(std::move(sp)) {
    if (!sp_) throw DomainError("A0Elem: null space");
    c_.assign(sp_->dim(), CRElem(sp_->ring()));
}

A0Elem A0Elem::constant(const A0Ptr& sp, const CRElem& c) { return monomial(sp, 0, c); }

A0Elem A0Elem::constant(const A0Ptr& sp, long long c) { return constant(sp, CRElem(sp->ring(), c)); }

A0Elem A0Elem::coord(const A0Ptr& sp, int j) {
    if (j < 0 || j >= sp->m()) throw DomainError("A0Elem::coord: index out of range");
    return monomial(sp, sp->stride(j), CRElem(sp->ring(), 1));
}

A0Elem A0Elem::coord(const A0Ptr& sp, const std::string& name) {
    int j = sp->coord_index(name);
    if (j < 0) throw DomainError("A0 has no coordinate " + name);
    return coord(sp, j);
}

A0Elem A0Elem::monomial(const A0Ptr& sp, size_t idx, const CRElem& c) {
    A0Elem e(sp);
    e.c_.at(idx) = c;
    return e;
}

bool A0Elem::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

namespace {
void same_space(const A0Elem& a, const A0Elem& b) {
    if (a.space() != b.space() &&
        (a.space()->p() != b.space()->p() || a.space()->m() != b.space()->m() || a.space()->flat() != b.space()->flat() ||
         !a.space()->ring()->same_as(*b.space()->ring())))
        throw DomainError("A0Elem: mixing elements of different spaces");
}
}  // namespace

A0Elem A0Elem::operator+(const A0Elem& o) const {
    same_space(*this, o);
    A0Elem e(sp_);
    for (size_t i = 0; i < c_.size(); ++i) e.c_[i] = c_[i] + o.c_[i];
    return e;
}

A0Elem A0Elem::operator-() const {
    A0Elem e(sp_);
    for (size_t i = 0; i < c_.size(); ++i) e.c_[i] = -c_[i];
    return e;
}

A0Elem A0Elem::operator-(const A0Elem& o) const { return *this + (-o); }

A0Elem A0Elem::operator*(const A0Elem& o) const {
    same_space(*this, o);
    A0Elem e(sp_);
    std::vector<size_t> nz_a, nz_b;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i].is_zero()) nz_a.push_back(i);
        if (!o.c_[i].is_zero()) nz_b.push_back(i);
    }
    for (size_t i : nz_a)
        for (size_t j : nz_b) {
            size_t k = sp_->mul_index(i, j);
            if (k != A0Space::npos) e.c_[k] += c_[i] * o.c_[j];
        }
    return e;
}

A0Elem A0Elem::scaled(const CRElem& c) const {
    A0Elem e(sp_);
    for (size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) e.c_[i] = c_[i] * c;
    return e;
}

A0Elem A0Elem::scaled(uint32_t c) const {
    A0Elem e(sp_);
    for (size_t i = 0; i < c_.size(); ++i) e.c_[i] = c_[i].scaled(c);
    return e;
}

A0Elem A0Elem::pow(unsigned k) const {
    A0Elem r = constant(sp_, 1);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

A0Elem A0Elem::partial(int j) const {
    A0Elem e(sp_);
    const int p = sp_->p();
    for (size_t i = 0; i < c_.size(); ++i) {
        int d = sp_->digit(i, j);
        if (d == 0 || c_[i].is_zero()) continue;
        e.c_[i - sp_->stride(j)] = c_[i].scaled(static_cast<uint32_t>(d % p));
    }
    return e;
}

A0Elem A0Elem::mapped(const CRHom& f, const A0Ptr& target) const {
    A0Elem e(target);
    for (size_t i = 0; i < c_.size(); ++i) e.c_[i] = f(c_[i]);
    return e;
}

bool A0Elem::operator==(const A0Elem& o) const {
    same_space(*this, o);
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

std::string A0Elem::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << '(' << c_[i].to_string() << ')';
        if (i) os << '*' << sp_->mono_string(i);
    }
    if (first) os << '0';
    return os.str();
}

A0Elem poisson_bracket(const A0Elem& f, const A0Elem& g) {
    A0Elem r(f.space());
    for (const auto& [a, b] : f.space()->poisson_pairs()) r += f.partial(a) * g.partial(b) - f.partial(b) * g.partial(a);
    return r;
}

// ---------------------------------------------------------------------------

VField::VField(A0Ptr sp) : sp_(std::move(sp)) { comp_.assign(sp_->m(), A0Elem(sp_)); }

VField VField::coordinate(const A0Ptr& sp, int j) {
    VField v(sp);
    v.comp_.at(j) = A0Elem::constant(sp, 1);
    return v;
}

A0Elem VField::apply(const A0Elem& f) const {
    A0Elem r(sp_);
    for (int j = 0; j < sp_->m(); ++j)
        if (!comp_[j].is_zero()) r += comp_[j] * f.partial(j);
    return r;
}

VField VField::operator+(const VField& o) const {
    VField v(sp_);
    for (int j = 0; j < sp_->m(); ++j) v.comp_[j] = comp_[j] + o.comp_[j];
    return v;
}

VField VField::operator-(const VField& o) const {
    VField v(sp_);
    for (int j = 0; j < sp_->m(); ++j) v.comp_[j] = comp_[j] - o.comp_[j];
    return v;
}

VField VField::scaled(const A0Elem& f) const {
    VField v(sp_);
    for (int j = 0; j < sp_->m(); ++j) v.comp_[j] = comp_[j] * f;
    return v;
}

bool VField::operator==(const VField& o) const {
    for (int j = 0; j < sp_->m(); ++j)
        if (comp_[j] != o.comp_[j]) return false;
    return true;
}

bool VField::is_zero() const {
    for (const auto& c : comp_)
        if (!c.is_zero()) return false;
    return true;
}

VField vf_restricted_power(const VField& theta) {
    const A0Ptr& sp = theta.space();
    VField r(sp);
    for (int j = 0; j < sp->m(); ++j) {
        A0Elem f = A0Elem::coord(sp, j);
        for (int k = 0; k < sp->p(); ++k) f = theta.apply(f);
        r[j] = f;
    }
    return r;
}

VField vf_bracket(const VField& a, const VField& b) {
    const A0Ptr& sp = a.space();
    VField r(sp);
    for (int j = 0; j < sp->m(); ++j) r[j] = a.apply(b[j]) - b.apply(a[j]);
    return r;
}

VField hamiltonian(const A0Elem& f) {
    const A0Ptr& sp = f.space();
    VField v(sp);
    // {f, g} = Σ f_a g_b − f_b g_a: coefficient of ∂_b is f_a, of ∂_a is −f_b.
    for (const auto& [a, b] : sp->poisson_pairs()) {
        v[b] += f.partial(a);
        v[a] += -f.partial(b);
    }
    return v;
}

// ---------------------------------------------------------------------------

KForm::KForm(A0Ptr sp, int degree) : sp_(std::move(sp)), deg_(degree) {
    if (degree < 0 || degree > sp_->m()) throw DomainError("KForm: degree out of range");
}

KForm KForm::function(const A0Elem& f) {
    KForm w(f.space(), 0);
    w.add(0, f);
    return w;
}

KForm KForm::basic1(const A0Elem& f, int j) {
    KForm w(f.space(), 1);
    w.add(1u << j, f);
    return w;
}

A0Elem KForm::component(uint32_t mask) const {
    auto it = comp_.find(mask);
    return it == comp_.end() ? A0Elem(sp_) : it->second;
}

void KForm::add(uint32_t mask, const A0Elem& f) {
    if (std::popcount(mask) != deg_) throw DomainError("KForm: component of wrong degree");
    if (f.is_zero()) return;
    auto it = comp_.find(mask);
    if (it == comp_.end()) {
        comp_.emplace(mask, f);
    } else {
        it->second += f;
        if (it->second.is_zero()) comp_.erase(it);
    }
}

KForm KForm::operator+(const KForm& o) const {
    if (deg_ != o.deg_) throw DomainError("KForm: adding forms of different degree");
    KForm w(*this);
    for (const auto& [m, f] : o.comp_) w.add(m, f);
    return w;
}

KForm KForm::operator-(const KForm& o) const { return *this + o.scaled(static_cast<uint32_t>(sp_->p() - 1)); }

KForm KForm::scaled(const A0Elem& f) const {
    KForm w(sp_, deg_);
    for (const auto& [m, a] : comp_) w.add(m, a * f);
    return w;
}

KForm KForm::scaled(uint32_t c) const {
    KForm w(sp_, deg_);
    for (const auto& [m, a] : comp_) w.add(m, a.scaled(c));
    return w;
}

bool KForm::operator==(const KForm& o) const { return deg_ == o.deg_ && (*this - o).is_zero(); }

bool KForm::is_zero() const { return comp_.empty(); }

std::string KForm::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, f] : comp_) {
        if (!first) os << " + ";
        first = false;
        os << '(' << f.to_string() << ')';
        for (int j = 0; j < sp_->m(); ++j)
            if (m >> j & 1) os << " d" << sp_->coord_name(j);
    }
    if (first) os << '0';
    return os.str();
}

namespace {
// Sign of dz_j ∧ dz_J relative to the sorted basis.
int insert_sign(int j, uint32_t mask) { return (std::popcount(mask & ((1u << j) - 1)) % 2) ? -1 : 1; }

int merge_sign(uint32_t a, uint32_t b) {
    int inv = 0;
    for (int j = 0; j < 32; ++j)
        if (b >> j & 1) inv += std::popcount(a >> (j + 1));
    return inv % 2 ? -1 : 1;
}

uint32_t sgn_coeff(int s, int p) { return s > 0 ? 1u : static_cast<uint32_t>(p - 1); }
}  // namespace

KForm d(const KForm& w) {
    const A0Ptr& sp = w.space();
    KForm r(sp, w.degree() + 1);
    for (const auto& [m, f] : w.components())
        for (int j = 0; j < sp->m(); ++j) {
            if (m >> j & 1) continue;
            A0Elem df = f.partial(j);
            if (df.is_zero()) continue;
            r.add(m | (1u << j), df.scaled(sgn_coeff(insert_sign(j, m), sp->p())));
        }
    return r;
}

KForm d(const A0Elem& f) { return d(KForm::function(f)); }

KForm wedge(const KForm& a, const KForm& b) {
    const A0Ptr& sp = a.space();
    KForm r(sp, a.degree() + b.degree());
    for (const auto& [ma, fa] : a.components())
        for (const auto& [mb, fb] : b.components()) {
            if (ma & mb) continue;
            r.add(ma | mb, (fa * fb).scaled(sgn_coeff(merge_sign(ma, mb), sp->p())));
        }
    return r;
}

KForm iota(const VField& theta, const KForm& w) {
    const A0Ptr& sp = w.space();
    if (w.degree() == 0) return KForm(sp, 0);
    KForm r(sp, w.degree() - 1);
    for (const auto& [m, f] : w.components()) {
        int pos = 0;
        for (int j = 0; j < sp->m(); ++j) {
            if (!(m >> j & 1)) continue;
            if (!theta[j].is_zero())
                r.add(m & ~(1u << j), (theta[j] * f).scaled(sgn_coeff(pos % 2 ? -1 : 1, sp->p())));
            ++pos;
        }
    }
    return r;
}

KForm lie_derivative(const VField& theta, const KForm& w) {
    KForm a = d(iota(theta, w));
    if (w.degree() == w.space()->m()) return a;
    KForm b = iota(theta, d(w));
    return w.degree() == 0 ? b : a + b;
}

KForm pullback_coords(const KForm& w, const std::vector<A0Elem>& coord_images,
                      const std::function<A0Elem(const A0Elem&)>& apply) {
    const A0Ptr& sp = w.space();
    std::vector<KForm> dimg;
    for (const auto& g : coord_images) dimg.push_back(d(g));
    KForm r(sp, w.degree());
    for (const auto& [m, f] : w.components()) {
        KForm term = KForm::function(apply(f));
        for (int j = 0; j < sp->m(); ++j)
            if (m >> j & 1) term = wedge(term, dimg[j]);
        r = r + term;
    }
    return r;
}

KForm omega(const A0Ptr& sp) {
    KForm w(sp, 2);
    for (const auto& [a, b] : sp->poisson_pairs()) {
        // dz_b ∧ dz_a for each pair; standard layout gives Σ dy_i ∧ dx_i.
        KForm t = wedge(KForm::basic1(A0Elem::constant(sp, 1), b), KForm::basic1(A0Elem::constant(sp, 1), a));
        w = w + t;
    }
    return w;
}

KForm eta_canonical(const A0Ptr& sp) {
    KForm w(sp, 1);
    for (const auto& [a, b] : sp->poisson_pairs()) w = w + KForm::basic1(A0Elem::coord(sp, b), a);
    return w;
}

KForm omega_power(const A0Ptr& sp, int k) {
    KForm r = KForm::function(A0Elem::constant(sp, 1));
    KForm w = omega(sp);
    for (int i = 0; i < k; ++i) r = wedge(r, w);
    return r;
}

A0Elem restricted_power(const A0Elem& f, const KForm& eta) {
    VField H = hamiltonian(f);
    A0Elem a = iota(H, eta).component(0);
    for (int i = 0; i < f.space()->p() - 1; ++i) a = H.apply(a);
    A0Elem b = iota(vf_restricted_power(H), eta).component(0);
    return a - b;
}

std::optional<A0Elem> exactness_class(const KForm& mu) {
    if (mu.degree() != 1) throw DomainError("exactness_class: expects a 1-form");
    const A0Ptr& sp = mu.space();
    const int p = sp->p();
    A0Elem f(sp);
    std::vector<A0Elem> comp;
    for (int j = 0; j < sp->m(); ++j) comp.push_back(mu.component(1u << j));
    for (size_t D = 1; D < sp->dim(); ++D) {
        int k = 0;
        while (sp->digit(D, k) == 0) ++k;
        const CRElem& c = comp[k][D - sp->stride(k)];
        if (!c.is_zero()) f[D] = c.scaled(fp_inv(static_cast<uint32_t>(sp->digit(D, k)), p));
    }
    if (d(f) != mu) return std::nullopt;
    return f;
}

CRElem top_derham_class(const KForm& nu) {
    const A0Ptr& sp = nu.space();
    if (nu.degree() != sp->m()) throw DomainError("top_derham_class: expects a top-degree form");
    // Basis form Π dy_i ∧ dx_i in terms of the sorted volume form.
    KForm basis = KForm::function(A0Elem::constant(sp, 1));
    for (const auto& [a, b] : sp->poisson_pairs())
        basis = wedge(basis, wedge(KForm::basic1(A0Elem::constant(sp, 1), b), KForm::basic1(A0Elem::constant(sp, 1), a)));
    uint32_t full = (sp->m() == 32) ? ~0u : ((1u << sp->m()) - 1);
    CRElem s = basis.component(full)[0];
    A0Elem g = nu.component(full);
    return g[sp->top_index()] * s.inverse();
}

}  // namespace fcq
