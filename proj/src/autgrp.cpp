#include "fcq/autgrp.hpp"

#include <map>
#include <sstream>

#include "fcq/linalg.hpp"

namespace fcq {

AutA0::AutA0(A0Ptr sp, std::vector<A0Elem> images) : sp_(std::move(sp)), img_(std::move(images)) {
    if (sp_->flat()) throw DomainError("AutA0: expects the standard layout");
    if (static_cast<int>(img_.size()) != sp_->m()) throw DomainError("AutA0: need one image per coordinate");
    for (const auto& f : img_)
        if (!f.pow(sp_->p()).is_zero()) throw DomainError("AutA0: generator image has nonzero p-th power");
}

AutA0 AutA0::identity(const A0Ptr& sp) {
    std::vector<A0Elem> imgs;
    for (int j = 0; j < sp->m(); ++j) imgs.push_back(A0Elem::coord(sp, j));
    return AutA0(sp, imgs);
}

A0Elem AutA0::apply(const A0Elem& f) const {
    const int p = sp_->p(), m = sp_->m();
    std::vector<std::vector<A0Elem>> pw(m);
    for (int j = 0; j < m; ++j) {
        pw[j].push_back(A0Elem::constant(sp_, 1));
        for (int e = 1; e < p; ++e) pw[j].push_back(pw[j].back() * img_[j]);
    }
    A0Elem r(sp_);
    for (size_t idx = 0; idx < sp_->dim(); ++idx) {
        if (f[idx].is_zero()) continue;
        A0Elem t = A0Elem::constant(sp_, f[idx]);
        for (int j = 0; j < m && !t.is_zero(); ++j) {
            int e = sp_->digit(idx, j);
            if (e) t = t * pw[j][e];
        }
        r += t;
    }
    return r;
}

AutA0 AutA0::compose(const AutA0& inner) const {
    std::vector<A0Elem> imgs;
    for (const auto& f : inner.img_) imgs.push_back(apply(f));
    return AutA0(sp_, imgs);
}

bool AutA0::operator==(const AutA0& o) const {
    for (size_t j = 0; j < img_.size(); ++j)
        if (img_[j] != o.img_[j]) return false;
    return true;
}

std::vector<std::vector<CRElem>> AutA0::matrix() const {
    const size_t d = sp_->dim();
    std::vector<std::vector<CRElem>> m(d, std::vector<CRElem>(d, CRElem(sp_->ring())));
    for (size_t c = 0; c < d; ++c) {
        A0Elem img = apply(A0Elem::monomial(sp_, c, CRElem(sp_->ring(), 1)));
        for (size_t r = 0; r < d; ++r) m[r][c] = img[r];
    }
    return m;
}

bool AutA0::invertible() const {
    auto m = matrix();
    FpMatrix f(sp_->p(), m.size(), m.size());
    for (size_t r = 0; r < m.size(); ++r)
        for (size_t c = 0; c < m.size(); ++c) f(r, c) = m[r][c].constant_term();
    return rank_serial(f) == m.size();
}

AutA0 AutA0::inverse() const {
    auto m = matrix();
    const size_t d = m.size();
    const RingPtr& R = sp_->ring();
    std::vector<std::vector<CRElem>> inv(d, std::vector<CRElem>(d, CRElem(R)));
    for (size_t i = 0; i < d; ++i) inv[i][i] = CRElem(R, 1);
    for (size_t c = 0; c < d; ++c) {
        size_t piv = d;
        for (size_t r = c; r < d; ++r)
            if (m[r][c].is_unit()) {
                piv = r;
                break;
            }
        if (piv == d) throw DomainError("AutA0::inverse: not invertible");
        std::swap(m[c], m[piv]);
        std::swap(inv[c], inv[piv]);
        CRElem s = m[c][c].inverse();
        for (size_t k = 0; k < d; ++k) {
            m[c][k] *= s;
            inv[c][k] *= s;
        }
        for (size_t r = 0; r < d; ++r) {
            if (r == c || m[r][c].is_zero()) continue;
            CRElem f = m[r][c];
            for (size_t k = 0; k < d; ++k) {
                if (!m[c][k].is_zero()) m[r][k] -= f * m[c][k];
                if (!inv[c][k].is_zero()) inv[r][k] -= f * inv[c][k];
            }
        }
    }
    std::vector<A0Elem> imgs;
    for (int j = 0; j < sp_->m(); ++j) {
        A0Elem e(sp_);
        size_t col = sp_->stride(j);
        for (size_t r = 0; r < d; ++r) e[r] = inv[r][col];
        imgs.push_back(e);
    }
    return AutA0(sp_, imgs);
}

KForm AutA0::push(const KForm& w) const {
    return pullback_coords(w, img_, [this](const A0Elem& f) { return apply(f); });
}

std::string AutA0::to_string() const {
    std::ostringstream os;
    for (int j = 0; j < sp_->m(); ++j) os << (j ? ", " : "") << sp_->coord_name(j) << " -> " << img_[j].to_string();
    return os.str();
}

// ---------------------------------------------------------------------------

std::optional<A0Elem> eta_primitive(const AutA0& g) {
    const A0Ptr& sp = g.space();
    KForm eta = eta_canonical(sp);
    return exactness_class(g.push(eta) - eta);
}

Validation validate(const AutA0& g) {
    Validation v;
    std::ostringstream os;
    const A0Ptr& sp = g.space();
    v.invertible = g.invertible();
    if (!v.invertible) os << "not invertible; ";
    KForm w = omega(sp);
    KForm gw = g.push(w);
    v.symplectic = gw == w;
    if (!v.symplectic) os << "g*omega = " << gw.to_string() << "; ";
    v.exact = eta_primitive(g).has_value();
    if (!v.exact) os << "g*eta - eta not exact; ";
    v.detail = os.str();
    return v;
}

CRElem phi_Ga(const AutA0& g) {
    Validation v = validate(g);
    if (!v.ok()) throw DomainError("phi_Ga: not a point of G_0: " + v.detail);
    A0Elem f = *eta_primitive(g);
    const A0Ptr& sp = g.space();
    return top_derham_class(omega_power(sp, sp->n()).scaled(f));
}

namespace {

A0Elem socle(const A0Ptr& sp) {
    A0Elem u = A0Elem::constant(sp, 1);
    for (int j = 0; j < sp->m(); ++j) u = u * A0Elem::coord(sp, j).pow(sp->p() - 1);
    return u;
}

}  // namespace

AutA0 section_s(const A0Ptr& sp, const CRElem& t) {
    const int p = sp->p();
    A0Elem u = socle(sp);
    CRElem half = t.scaled(fp_inv(2, p));
    std::vector<A0Elem> imgs;
    for (int j = 0; j < sp->m(); ++j) {
        A0Elem z = A0Elem::coord(sp, j);
        imgs.push_back(z - poisson_bracket(z, u).scaled(half));
    }
    return AutA0(sp, imgs);
}

AutA0 lambda_subgroup(const A0Ptr& sp, const CRElem& tau) {
    const int p = sp->p();
    std::vector<A0Elem> imgs;
    for (int j = 0; j < sp->m(); ++j) imgs.push_back(A0Elem::coord(sp, j));
    A0Elem x = A0Elem::coord(sp, sp->x(0)), y = A0Elem::coord(sp, sp->y(0));
    if (p > 3) {
        imgs[sp->y(0)] = y + (x * x).scaled(tau.scaled(3));
    } else {
        imgs[sp->x(0)] = x + (x * x).scaled(tau);
        imgs[sp->y(0)] = y - (x * y).scaled(tau.scaled(2)) + (x * x * y).scaled(tau * tau);
    }
    return AutA0(sp, imgs);
}

AutA0 translation(const A0Ptr& sp, const std::vector<CRElem>& eps, const std::vector<CRElem>& del) {
    const int n = sp->n();
    if (static_cast<int>(eps.size()) != n || static_cast<int>(del.size()) != n)
        throw DomainError("translation: need n parameters of each kind");
    std::vector<A0Elem> imgs;
    for (int i = 0; i < n; ++i) imgs.push_back(A0Elem::coord(sp, i) + A0Elem::constant(sp, eps[i]));
    for (int i = 0; i < n; ++i) imgs.push_back(A0Elem::coord(sp, n + i) + A0Elem::constant(sp, del[i]));
    return AutA0(sp, imgs);
}

AutA0 linear(const A0Ptr& sp, const std::vector<std::vector<uint32_t>>& m) {
    const int k = sp->m();
    std::vector<A0Elem> imgs;
    for (int r = 0; r < k; ++r) {
        A0Elem e(sp);
        for (int c = 0; c < k; ++c)
            if (m.at(r).at(c)) e += A0Elem::coord(sp, c).scaled(m[r][c]);
        imgs.push_back(e);
    }
    return AutA0(sp, imgs);
}

std::vector<std::vector<uint32_t>> random_sp(int p, int n, std::mt19937_64& rng) {
    const int k = 2 * n;
    std::vector<std::vector<uint32_t>> m(k, std::vector<uint32_t>(k, 0));
    for (int i = 0; i < k; ++i) m[i][i] = 1;
    auto mul_left = [&](const std::vector<std::vector<uint32_t>>& e) {
        std::vector<std::vector<uint32_t>> r(k, std::vector<uint32_t>(k, 0));
        for (int i = 0; i < k; ++i)
            for (int l = 0; l < k; ++l)
                if (e[i][l])
                    for (int j = 0; j < k; ++j) r[i][j] = (r[i][j] + e[i][l] * m[l][j]) % p;
        m = r;
    };
    std::uniform_int_distribution<int> coef(1, p - 1), pick(0, n - 1), kind(0, n > 1 ? 2 : 1);
    for (int step = 0; step < 6; ++step) {
        std::vector<std::vector<uint32_t>> e(k, std::vector<uint32_t>(k, 0));
        for (int i = 0; i < k; ++i) e[i][i] = 1;
        uint32_t c = static_cast<uint32_t>(coef(rng));
        int i = pick(rng);
        switch (kind(rng)) {
            case 0: e[i][n + i] = c; break;  // x_i ↦ x_i + c y_i
            case 1: e[n + i][i] = c; break;  // y_i ↦ y_i + c x_i
            default: {
                int j = (i + 1) % n;  // x_i ↦ x_i + c x_j, y_j ↦ y_j - c y_i
                e[i][j] = c;
                e[n + j][n + i] = fp_neg(c, p);
            }
        }
        mul_left(e);
    }
    return m;
}

AutA0 scaling(const A0Ptr& sp, uint32_t c) {
    std::vector<A0Elem> imgs;
    for (int j = 0; j < sp->m(); ++j) {
        A0Elem z = A0Elem::coord(sp, j);
        imgs.push_back(j >= sp->n() ? z.scaled(c) : z);
    }
    return AutA0(sp, imgs);
}

VField differential_at_zero(const AutA0& g, int param_gen) {
    const A0Ptr& sp = g.space();
    const RingPtr& R = sp->ring();
    auto F = CoeffRing::make(R->p(), {});
    auto fsp = A0Space::make(sp->p(), sp->n(), F);
    VField v(fsp);
    uint64_t lin = R->gen_mono(param_gen, 1);
    for (int j = 0; j < sp->m(); ++j) {
        A0Elem c(fsp);
        for (size_t idx = 0; idx < sp->dim(); ++idx) c[idx] = CRElem(F, g.image(j)[idx].coeff(lin));
        v[j] = c;
    }
    return v;
}

// ---------------------------------------------------------------------------

WeylMap::WeylMap(WeylPtr alg, std::vector<WeylElem> images) : alg_(std::move(alg)), img_(std::move(images)) {
    if (static_cast<int>(img_.size()) != alg_->ngens()) throw DomainError("WeylMap: need one image per generator");
}

WeylElem WeylMap::operator()(const WeylElem& a) const {
    const int ng = alg_->ngens();
    WeylElem out(alg_, a.precision());
    // Group terms by PBW monomial so each monomial image is built once.
    std::map<uint64_t, std::vector<WTerm>> by_mono;
    for (const auto& t : a.terms()) by_mono[t.pbw].push_back(t);
    for (const auto& [mono, terms] : by_mono) {
        WeylElem img = WeylElem::scalar(alg_, 1);
        for (int g = 0; g < ng; ++g)
            for (int e = 0; e < alg_->exponent(mono, g); ++e) img = img * img_[g];
        std::vector<WTerm> coeff_terms;
        for (const auto& t : terms) coeff_terms.push_back({0, t.hp, t.cr, t.c});
        WeylElem coef = WeylElem::from_terms(alg_, coeff_terms, a.precision());
        out += coef * img;
    }
    return out;
}

WeylMap WeylMap::compose(const WeylMap& inner) const {
    std::vector<WeylElem> imgs;
    for (const auto& f : inner.img_) imgs.push_back((*this)(f));
    return WeylMap(alg_, imgs);
}

WeylElem a0_to_flat(const WeylPtr& flat, const A0Elem& f) {
    if (flat->flavor() != Flavor::Flat || flat->n() != f.space()->n()) throw DomainError("a0_to_flat: shape mismatch");
    // Standard coordinates are the first 2n flat generators.
    const A0Ptr& sp = f.space();
    auto wide = A0Space::make(sp->p(), sp->n(), sp->ring(), true);
    A0Elem g(wide);
    for (size_t idx = 0; idx < sp->dim(); ++idx) {
        if (f[idx].is_zero()) continue;
        size_t t = 0;
        for (int j = 0; j < sp->m(); ++j) t += sp->digit(idx, j) * wide->stride(j);
        g[t] = f[idx];
    }
    return lift(flat, g);
}

WeylMap psi_action(const WeylPtr& flat, const AutA0& g) {
    const A0Ptr& sp = g.space();
    const int n = sp->n(), m = sp->m();
    Validation v = validate(g);
    if (!v.ok()) throw DomainError("psi_action: not a point of G_0: " + v.detail);
    AutA0 ginv = g.inverse();
    KForm eta = eta_canonical(sp);
    KForm mu = g.push(eta) - eta;
    std::vector<WeylElem> imgs(flat->ngens());
    for (int j = 0; j < m; ++j) imgs[j] = a0_to_flat(flat, g.image(j));
    auto hdel = [&](int k) { return WeylElem::gen(flat, 2 * n + k); };  // v_i for k < n, u_i otherwise
    for (int j = 0; j < m; ++j) {
        WeylElem img(flat);
        A0Elem twist(sp);
        for (int k = 0; k < m; ++k) {
            A0Elem c = g.apply(ginv.image(k).partial(j));
            if (c.is_zero()) continue;
            img += a0_to_flat(flat, c) * hdel(k);
            twist += c * mu.component(1u << k);
        }
        img += a0_to_flat(flat, twist).shifted(1);
        imgs[2 * n + j] = img;
    }
    return WeylMap(flat, imgs);
}

bool is_flat_endomorphism(const WeylMap& mp) {
    const WeylPtr& alg = mp.algebra();
    const int ng = alg->ngens(), p = alg->p();
    for (int a = 0; a < ng; ++a) {
        if (!mp.images()[a].pow(p).is_zero()) return false;
        for (int b = a + 1; b < ng; ++b) {
            WeylElem ga = WeylElem::gen(alg, a), gb = WeylElem::gen(alg, b);
            if (commutator(mp.images()[a], mp.images()[b]) != mp(commutator(ga, gb))) return false;
        }
    }
    return true;
}

}  // namespace fcq
