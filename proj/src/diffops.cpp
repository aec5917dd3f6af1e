#include "fcq/diffops.hpp"

#include <sstream>

namespace fcq {

namespace {

constexpr int kMaxVars = 4;

uint64_t xbit(int i, int e) { return static_cast<uint64_t>(e) << (8 * i); }
uint64_t dbit(int i, int e) { return static_cast<uint64_t>(e) << (8 * (kMaxVars + i)); }

}  // namespace

CoordPtr CoordRing::frobenius(int p, int m) {
    require_prime(p);
    if (m < 1 || m > kMaxVars) throw DomainError("CoordRing: 1..4 variables supported");
    auto c = std::make_shared<CoordRing>();
    c->p = p;
    c->m = m;
    c->mode = CoordMode::Frobenius;
    c->K = 0;
    for (int i = 1; i <= m; ++i) c->names.push_back("x" + std::to_string(i));
    return c;
}

CoordPtr CoordRing::window(int p, int m, int K) {
    auto c = std::const_pointer_cast<CoordRing>(frobenius(p, m));
    if (K < 1 || K > 250) throw DomainError("CoordRing: degree cap out of range");
    c->mode = CoordMode::Window;
    c->K = K;
    return c;
}

CoordPtr CoordRing::a0(int p, int n) {
    auto c = std::const_pointer_cast<CoordRing>(frobenius(p, 2 * n));
    for (int i = 0; i < n; ++i) {
        c->names[i] = "x" + std::to_string(i + 1);
        c->names[n + i] = "y" + std::to_string(i + 1);
    }
    return c;
}

// ---------------------------------------------------------------------------

DOp DOp::scalar(const CoordPtr& c, long long v) {
    DOp d(c);
    d.add_term(0, 0, fp_norm(v, c->p));
    return d;
}

DOp DOp::coord(const CoordPtr& c, int i) {
    DOp d(c);
    d.add_term(xbit(i, 1), 0, 1);
    return d;
}

DOp DOp::hdel(const CoordPtr& c, int i) {
    DOp d(c);
    d.add_term(dbit(i, 1), 0, 1);
    return d;
}

DOp DOp::h_power(const CoordPtr& c, int k) {
    DOp d(c);
    d.add_term(0, k, 1);
    return d;
}

DOp DOp::term(const CoordPtr& c, const std::vector<int>& xe, const std::vector<int>& de, int hp, uint32_t coef) {
    uint64_t m = 0;
    for (size_t i = 0; i < xe.size(); ++i) m |= xbit(static_cast<int>(i), xe[i]);
    for (size_t i = 0; i < de.size(); ++i) m |= dbit(static_cast<int>(i), de[i]);
    DOp d(c);
    d.add_term(m, hp, coef % c->p);
    return d;
}

void DOp::add_term(uint64_t mono, int hp, uint32_t c) {
    if (!c) return;
    int deg = 0;
    for (int i = 0; i < c_->m; ++i) {
        int e = xexp(mono, i);
        if (c_->mode == CoordMode::Frobenius && e >= c_->p) return;
        deg += e;
    }
    if (c_->mode == CoordMode::Window && deg >= c_->K) {
        overflow_ = true;
        return;
    }
    Key k{mono, hp};
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, c);
    } else {
        it->second = fp_add(it->second, c, c_->p);
        if (!it->second) t_.erase(it);
    }
}

const std::map<DOp::Key, uint32_t>& DOp::terms() const {
    if (overflow_) throw WindowError("DOp: read of an element whose degree overflowed the window");
    return t_;
}

bool DOp::is_zero() const { return terms().empty(); }

bool DOp::is_function() const {
    for (const auto& [k, c] : terms())
        if (k.mono >> (8 * kMaxVars)) return false;
    return true;
}

DOp DOp::operator+(const DOp& o) const {
    DOp r(*this);
    r.overflow_ = overflow_ || o.overflow_;
    for (const auto& [k, c] : o.t_) r.add_term(k.mono, k.hp, c);
    return r;
}

DOp DOp::operator-() const { return scaled(static_cast<uint32_t>(c_->p - 1)); }

DOp DOp::operator-(const DOp& o) const { return *this + (-o); }

DOp DOp::scaled(uint32_t s) const {
    DOp r(c_);
    r.overflow_ = overflow_;
    for (const auto& [k, c] : t_) r.add_term(k.mono, k.hp, fp_mul(c, s % c_->p, c_->p));
    return r;
}

DOp DOp::shifted(int k) const {
    DOp r(c_);
    r.overflow_ = overflow_;
    for (const auto& [key, c] : t_) r.add_term(key.mono, key.hp + k, c);
    return r;
}

DOp DOp::operator*(const DOp& o) const {
    const int p = c_->p, m = c_->m;
    DOp r(c_);
    r.overflow_ = overflow_ || o.overflow_;
    for (const auto& [ka, ca] : t_)
        for (const auto& [kb, cb] : o.t_) {
            // x^e (h∂)^a · x^c (h∂)^b = Σ_k Π C(a,k) falling(c,k) h^{|k|} x^{e+c-k} (h∂)^{a-k+b}.
            int a[kMaxVars], cexp[kMaxVars], k[kMaxVars] = {0, 0, 0, 0};
            for (int i = 0; i < m; ++i) {
                a[i] = dexp(ka.mono, i);
                cexp[i] = xexp(kb.mono, i);
            }
            const uint32_t base = fp_mul(ca, cb, p);
            while (true) {
                uint32_t coef = base;
                int hk = 0;
                uint64_t mono = 0;
                for (int i = 0; i < m && coef; ++i) {
                    coef = fp_mul(coef, fp_mul(fp_binom(a[i], k[i], p), fp_falling(cexp[i], k[i], p), p), p);
                    hk += k[i];
                    mono |= xbit(i, xexp(ka.mono, i) + cexp[i] - k[i]);
                    mono |= dbit(i, a[i] - k[i] + dexp(kb.mono, i));
                }
                if (coef) r.add_term(mono, ka.hp + kb.hp + hk, coef);
                int i = 0;
                while (i < m) {
                    if (k[i] < std::min(a[i], cexp[i])) {
                        ++k[i];
                        break;
                    }
                    k[i] = 0;
                    ++i;
                }
                if (i == m) break;
            }
        }
    return r;
}

DOp DOp::pow(unsigned e) const {
    DOp r = scalar(c_, 1);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

bool DOp::operator==(const DOp& o) const { return (*this - o).is_zero(); }

std::string DOp::to_string() const {
    if (overflow_) return "<overflow>";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << c;
        if (k.hp) os << "*h^" << k.hp;
        for (int i = 0; i < c_->m; ++i) {
            int e = xexp(k.mono, i);
            if (e) os << '*' << c_->names[i] << (e > 1 ? "^" + std::to_string(e) : "");
        }
        for (int i = 0; i < c_->m; ++i) {
            int e = dexp(k.mono, i);
            if (e) os << "*(hd" << c_->names[i] << ')' << (e > 1 ? "^" + std::to_string(e) : "");
        }
    }
    if (first) os << '0';
    return os.str();
}

DOp dop_commutator(const DOp& a, const DOp& b) { return a * b - b * a; }

// ---------------------------------------------------------------------------

namespace {

DOp partial(const DOp& f, int i) {
    const int p = f.ring()->p;
    DOp r(f.ring());
    if (f.overflowed()) r.mark_overflow();
    for (const auto& [k, c] : f.terms()) {
        int e = f.xexp(k.mono, i);
        if (!e) continue;
        r.add_term(k.mono - xbit(i, 1), k.hp, fp_mul(c, fp_norm(e, p), p));
    }
    return r;
}

}  // namespace

DOp apply_field(const DVField& theta, const DOp& f) {
    DOp r(f.ring());
    for (size_t j = 0; j < theta.comp.size(); ++j) r = r + theta.comp[j] * partial(f, static_cast<int>(j));
    return r;
}

DVField field_restricted_power(const DVField& theta) {
    const CoordPtr& c = theta.comp.at(0).ring();
    DVField r;
    for (int j = 0; j < c->m; ++j) {
        DOp f = DOp::coord(c, j);
        for (int k = 0; k < c->p; ++k) f = apply_field(theta, f);
        r.comp.push_back(f);
    }
    return r;
}

DOp h_field(const DVField& theta) {
    const CoordPtr& c = theta.comp.at(0).ring();
    DOp r(c);
    for (int j = 0; j < c->m; ++j) r = r + theta.comp[j] * DOp::hdel(c, j);
    return r;
}

DOp p_curvature(const DVField& theta) {
    const int p = theta.comp.at(0).ring()->p;
    return h_field(theta).pow(p) - h_field(field_restricted_power(theta)).shifted(p - 1);
}

DOp p_curvature(const DOp& f) {
    if (!f.is_function()) throw DomainError("p_curvature: expected a function");
    return f.pow(f.ring()->p);
}

bool is_central(const DOp& z) {
    const CoordPtr& c = z.ring();
    for (int i = 0; i < c->m; ++i) {
        if (!dop_commutator(z, DOp::coord(c, i)).is_zero()) return false;
        if (!dop_commutator(z, DOp::hdel(c, i)).is_zero()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

CentralReduction::CentralReduction(CoordPtr c, std::vector<DOp> eta) : c_(std::move(c)), eta_(std::move(eta)) {
    if (static_cast<int>(eta_.size()) != c_->m) throw DomainError("CentralReduction: one component per coordinate");
    for (const auto& e : eta_) {
        if (!e.is_function()) throw DomainError("CentralReduction: η must have function components");
        eta_p_.push_back(e.pow(c_->p).shifted(c_->p));
    }
}

DOp CentralReduction::reduce(const DOp& a) const {
    const int p = c_->p, m = c_->m;
    DOp out(c_);
    std::vector<DOp> work{a};
    while (!work.empty()) {
        DOp cur = work.back();
        work.pop_back();
        for (const auto& [k, c] : cur.terms()) {
            int hit = -1;
            for (int i = 0; i < m; ++i)
                if (cur.dexp(k.mono, i) >= p) {
                    hit = i;
                    break;
                }
            if (hit < 0) {
                out.add_term(k.mono, k.hp, c);
                continue;
            }
            // x^e h^k (h∂)^a with a_hit >= p: (h∂_hit)^p → h^p η_hit^p, which is central.
            DOp lead(c_);
            lead.add_term(k.mono & ((uint64_t{1} << (8 * kMaxVars)) - 1), k.hp, c);
            DOp lowered(c_);
            lowered.add_term(((k.mono >> (8 * kMaxVars)) << (8 * kMaxVars)) - dbit(hit, p), 0, 1);
            work.push_back(lead * eta_p_[hit] * lowered);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

DOpMap::DOpMap(CoordPtr c, std::vector<DOp> x_images, std::vector<DOp> d_images)
    : c_(std::move(c)), xi_(std::move(x_images)), di_(std::move(d_images)) {
    if (static_cast<int>(xi_.size()) != c_->m || static_cast<int>(di_.size()) != c_->m)
        throw DomainError("DOpMap: one image per generator");
}

DOp DOpMap::operator()(const DOp& a) const {
    const int m = c_->m;
    DOp r(c_);
    for (const auto& [k, c] : a.terms()) {
        DOp t = DOp::h_power(c_, k.hp).scaled(c);
        for (int i = 0; i < m; ++i) t = t * xi_[i].pow(a.xexp(k.mono, i));
        for (int i = 0; i < m; ++i) t = t * di_[i].pow(a.dexp(k.mono, i));
        r = r + t;
    }
    return r;
}

DOpMap DOpMap::compose(const DOpMap& inner) const {
    std::vector<DOp> xs, ds;
    for (const auto& x : inner.xi_) xs.push_back((*this)(x));
    for (const auto& d : inner.di_) ds.push_back((*this)(d));
    return DOpMap(c_, xs, ds);
}

DOpMap phi_mu(const DOp& f) {
    if (!f.is_function()) throw DomainError("phi_mu: primitive must be a function");
    const CoordPtr& c = f.ring();
    std::vector<DOp> xs, ds;
    for (int i = 0; i < c->m; ++i) {
        xs.push_back(DOp::coord(c, i));
        ds.push_back(DOp::hdel(c, i) + partial(f, i).shifted(1));
    }
    return DOpMap(c, xs, ds);
}

bool katz_identity(const DOp& f) {
    const CoordPtr& c = f.ring();
    const int p = c->p;
    for (int i = 0; i < c->m; ++i) {
        DOp g = partial(f, i);
        DOp lhs = (DOp::hdel(c, i) + g.shifted(1)).pow(p);
        DOp rhs = DOp::hdel(c, i).pow(p) + g.pow(p).shifted(p);
        if (lhs != rhs) return false;
    }
    return true;
}

bool preserves_relations(const DOpMap& phi, const CentralReduction& src, const CentralReduction& dst) {
    const CoordPtr& c = src.ring();
    const int m = c->m, p = c->p;
    std::vector<DOp> gens, imgs;
    for (int i = 0; i < m; ++i) {
        gens.push_back(DOp::coord(c, i));
        imgs.push_back(phi.x_images()[i]);
    }
    for (int i = 0; i < m; ++i) {
        gens.push_back(DOp::hdel(c, i));
        imgs.push_back(phi.d_images()[i]);
    }
    for (size_t a = 0; a < gens.size(); ++a)
        for (size_t b = 0; b < gens.size(); ++b) {
            DOp lhs = dst.reduce(dop_commutator(imgs[a], imgs[b]));
            DOp rhs = dst.reduce(phi(src.reduce(dop_commutator(gens[a], gens[b]))));
            if (lhs != rhs) return false;
        }
    for (int i = 0; i < m; ++i) {
        DOp rel = DOp::hdel(c, i).pow(p) - src.eta()[i].pow(p).shifted(p);
        if (!dst.reduce(phi(rel)).is_zero()) return false;
    }
    return true;
}

DOp dop_from_a0(const CoordPtr& c, const A0Elem& f) {
    const A0Ptr& sp = f.space();
    if (sp->m() != c->m) throw DomainError("dop_from_a0: coordinate count mismatch");
    DOp r(c);
    for (size_t idx = 0; idx < sp->dim(); ++idx) {
        const CRElem& v = f[idx];
        if (v.is_zero()) continue;
        if (!v.is_constant()) throw DomainError("dop_from_a0: coefficients must be constants");
        uint64_t mono = 0;
        for (int j = 0; j < sp->m(); ++j) mono |= xbit(j, sp->digit(idx, j));
        r.add_term(mono, 0, v.constant_term());
    }
    return r;
}

DOp flat_to_dop(const CoordPtr& c, const WeylElem& a) {
    const WeylAlgebra& alg = *a.algebra();
    if (alg.flavor() != Flavor::Flat) throw DomainError("flat_to_dop: expected the flat flavor");
    const int n = alg.n();
    if (c->m != 2 * n) throw DomainError("flat_to_dop: coordinate count mismatch");
    DOp r(c);
    for (const auto& t : a.terms()) {
        if (t.cr != 0) throw DomainError("flat_to_dop: coefficients must be constants");
        uint64_t mono = 0;
        for (int i = 0; i < 2 * n; ++i) mono |= xbit(i, alg.exponent(t.pbw, i));
        for (int i = 0; i < 2 * n; ++i) mono |= dbit(i, alg.exponent(t.pbw, 2 * n + i));
        r.add_term(mono, t.hp, t.c);
    }
    return r;
}

}  // namespace fcq
