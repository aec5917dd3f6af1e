#include "fcq/weyl.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fcq {

WeylAlgebra::WeylAlgebra(int p, int n, Flavor flavor, RingPtr ring, Window window)
    : p_(p), n_(n), flavor_(flavor), ring_(std::move(ring)), window_(window) {
    require_prime(p);
    if (n < 1) throw DomainError("WeylAlgebra: n must be positive");
    if (!ring_ || ring_->p() != p) throw DomainError("WeylAlgebra: coefficient ring characteristic mismatch");
    ngens_ = flavor == Flavor::Standard ? 2 * n : 4 * n;
    if (ngens_ * kBits > 64) throw DomainError("WeylAlgebra: too many generators");
    const char* letters = flavor == Flavor::Standard ? "xy" : "xyvu";
    for (int g = 0; g < ngens_ / n; ++g)
        for (int i = 1; i <= n; ++i) names_.push_back(std::string(1, letters[g]) + std::to_string(i));
    for (int i = 0; i < n; ++i) {
        if (flavor == Flavor::Standard) {
            pairs_.push_back({i, n + i, p - 1});  // y x = x y - h
        } else {
            pairs_.push_back({i, 2 * n + i, 1});      // v x = x v + h
            pairs_.push_back({n + i, 3 * n + i, 1});  // u y = y u + h
        }
    }
    // P^a Q^b = Σ_k C(a,k) b!/(b-k)! (s h)^k Q^{b-k} P^{a-k}
    table_.resize(static_cast<size_t>(p) * p * p * p);
    for (int qa = 0; qa < p; ++qa)
        for (int pa = 0; pa < p; ++pa)
            for (int qb = 0; qb < p; ++qb)
                for (int pb = 0; pb < p; ++pb) {
                    auto& cell = table_[((qa * p + pa) * p + qb) * p + pb];
                    for (int k = 0; k <= std::min(pa, qb); ++k) {
                        int qe = qa + qb - k, pe = pa + pb - k;
                        if (qe >= p || pe >= p) continue;
                        uint32_t c = fp_mul(fp_binom(pa, k, p), fp_falling(qb, k, p), p);
                        if (c) cell.push_back({k, c, qe, pe});
                    }
                }
}

std::shared_ptr<const WeylAlgebra> WeylAlgebra::make(int p, int n, Flavor flavor, RingPtr ring) {
    return std::make_shared<const WeylAlgebra>(p, n, flavor, std::move(ring), default_window(p, n));
}

std::shared_ptr<const WeylAlgebra> WeylAlgebra::make(int p, int n, Flavor flavor, RingPtr ring, Window window) {
    return std::make_shared<const WeylAlgebra>(p, n, flavor, std::move(ring), window);
}

int WeylAlgebra::gen_index(const std::string& name) const {
    for (int i = 0; i < ngens_; ++i)
        if (names_[i] == name) return i;
    return -1;
}

int WeylAlgebra::degree(uint64_t mono) const {
    int d = 0;
    for (int i = 0; i < ngens_; ++i) d += exponent(mono, i);
    return d;
}

std::vector<uint64_t> WeylAlgebra::basis() const {
    std::vector<uint64_t> out{0};
    for (int i = 0; i < ngens_; ++i) {
        std::vector<uint64_t> next;
        for (uint64_t m : out)
            for (int e = 0; e < p_; ++e) next.push_back(m | gen_mono(i, e));
        out.swap(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string WeylAlgebra::mono_string(uint64_t mono) const {
    std::string s;
    for (int i = 0; i < ngens_; ++i) {
        int e = exponent(mono, i);
        if (!e) continue;
        if (!s.empty()) s += '*';
        s += names_[i];
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

bool WeylAlgebra::compatible(const WeylAlgebra& o) const {
    return this == &o || (p_ == o.p_ && n_ == o.n_ && flavor_ == o.flavor_ && ring_->same_as(*o.ring_));
}

void WeylAlgebra::mono_product(uint64_t a, uint64_t b, std::vector<PbwTerm>& out) const {
    const int p = p_;
    // Pairs act on disjoint generators, so the product factorises over pairs.
    PbwTerm start{0, 0, 1};
    size_t begin = out.size();
    out.push_back(start);
    for (const auto& pr : pairs_) {
        int qa = exponent(a, pr.q), pa = exponent(a, pr.p), qb = exponent(b, pr.q), pb = exponent(b, pr.p);
        const auto& cell = table_[((qa * p + pa) * p + qb) * p + pb];
        size_t end = out.size();
        if (cell.empty()) {
            out.resize(begin);
            return;
        }
        if (cell.size() == 1 && cell[0].k == 0) {
            uint64_t bits = gen_mono(pr.q, cell[0].qe) | gen_mono(pr.p, cell[0].pe);
            for (size_t i = begin; i < end; ++i) out[i].mono |= bits;
            continue;
        }
        for (size_t i = begin; i < end; ++i) {
            PbwTerm base = out[i];
            for (size_t t = 0; t < cell.size(); ++t) {
                const auto& pt = cell[t];
                uint32_t sc = fp_mul(pt.c, fp_pow(static_cast<uint32_t>(pr.sign), pt.k, p), p);
                PbwTerm nt{base.mono | gen_mono(pr.q, pt.qe) | gen_mono(pr.p, pt.pe), base.k + pt.k, fp_mul(base.c, sc, p)};
                if (t == 0)
                    out[i] = nt;
                else
                    out.push_back(nt);
            }
        }
    }
}

// ---------------------------------------------------------------------------

namespace {

bool term_less(const WTerm& a, const WTerm& b) {
    if (a.pbw != b.pbw) return a.pbw < b.pbw;
    if (a.hp != b.hp) return a.hp < b.hp;
    return a.cr < b.cr;
}

bool same_key(const WTerm& a, const WTerm& b) { return a.pbw == b.pbw && a.hp == b.hp && a.cr == b.cr; }

void compact(std::vector<WTerm>& v, int p) {
    std::sort(v.begin(), v.end(), term_less);
    size_t w = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (w > 0 && same_key(v[w - 1], v[i])) {
            v[w - 1].c = fp_add(v[w - 1].c, v[i].c, p);
        } else {
            if (w > 0 && v[w - 1].c == 0) --w;
            v[w++] = v[i];
        }
    }
    if (w > 0 && v[w - 1].c == 0) --w;
    v.resize(w);
}

int sat(long long v) { return v >= kExact / 2 ? kExact : static_cast<int>(v); }

void check_compat(const WeylElem& a, const WeylElem& b) {
    if (!a.algebra() || !b.algebra()) throw DomainError("WeylElem: uninitialised algebra");
    if (!a.algebra()->compatible(*b.algebra())) throw DomainError("WeylElem: mixing elements of different algebras");
}

int product_precision(const WeylElem& a, const WeylElem& b) {
    return sat(std::min<long long>(static_cast<long long>(a.precision()) + b.valuation(),
                                   static_cast<long long>(b.precision()) + a.valuation()));
}

void expand_range(const WeylElem& a, const WeylElem& b, size_t lo, size_t hi, int prec, std::vector<WTerm>& acc) {
    const WeylAlgebra& alg = *a.algebra();
    const CoeffRing& R = *alg.ring();
    const int p = alg.p();
    std::vector<PbwTerm> buf;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (size_t i = lo; i < hi; ++i) {
        for (const auto& y : tb) {
            uint64_t cr;
            if (!R.mul_mono(ta[i].cr, y.cr, cr)) continue;
            int hp0 = ta[i].hp + y.hp;
            if (hp0 >= prec) continue;
            uint32_t c0 = fp_mul(ta[i].c, y.c, p);
            buf.clear();
            alg.mono_product(ta[i].pbw, y.pbw, buf);
            for (const auto& pt : buf) {
                int hp = hp0 + pt.k;
                if (hp >= prec) continue;
                acc.push_back({pt.mono, hp, cr, fp_mul(c0, pt.c, p)});
            }
        }
        if (acc.size() > (1u << 22)) compact(acc, p);
    }
}

}  // namespace

WeylElem::WeylElem(WeylPtr alg, int prec) : alg_(std::move(alg)), prec_(sat(prec)) {
    if (!alg_) throw DomainError("WeylElem: null algebra");
}

WeylElem WeylElem::from_terms(const WeylPtr& alg, std::vector<WTerm> terms, int prec) {
    WeylElem e(alg, prec);
    const int p = alg->p();
    for (auto& t : terms) t.c %= p;
    terms.erase(std::remove_if(terms.begin(), terms.end(), [&](const WTerm& t) { return t.c == 0 || t.hp >= e.prec_; }),
                terms.end());
    compact(terms, p);
    for (const auto& t : terms)
        if (t.hp < alg->window().floor)
            throw WindowError("pole h^" + std::to_string(t.hp) + " below floor " + std::to_string(alg->window().floor));
    e.t_ = std::move(terms);
    return e;
}

WeylElem WeylElem::scalar(const WeylPtr& alg, const HLaurent& c) {
    std::vector<WTerm> v;
    for (const auto& [i, a] : c.coeffs())
        for (const auto& t : a.terms()) v.push_back({0, i, t.m, t.c});
    return from_terms(alg, std::move(v), c.precision());
}

WeylElem WeylElem::scalar(const WeylPtr& alg, const CRElem& c) { return monomial(alg, 0, c, 0); }

WeylElem WeylElem::scalar(const WeylPtr& alg, long long c) { return scalar(alg, CRElem(alg->ring(), c)); }

WeylElem WeylElem::gen(const WeylPtr& alg, int i) {
    if (i < 0 || i >= alg->ngens()) throw DomainError("WeylElem::gen: index out of range");
    return monomial(alg, alg->gen_mono(i), CRElem(alg->ring(), 1));
}

WeylElem WeylElem::gen(const WeylPtr& alg, const std::string& name) {
    int i = alg->gen_index(name);
    if (i < 0) throw DomainError("WeylAlgebra has no generator " + name);
    return gen(alg, i);
}

WeylElem WeylElem::monomial(const WeylPtr& alg, uint64_t mono, const CRElem& c, int k) {
    std::vector<WTerm> v;
    for (const auto& t : c.terms()) v.push_back({mono, k, t.m, t.c});
    return from_terms(alg, std::move(v), kExact);
}

WeylElem WeylElem::h_power(const WeylPtr& alg, int k) { return monomial(alg, 0, CRElem(alg->ring(), 1), k); }

int WeylElem::valuation() const {
    int v = prec_;
    for (const auto& t : t_) v = std::min(v, t.hp);
    return v;
}

HLaurent WeylElem::coefficient(uint64_t mono) const {
    HLaurent c(alg_->ring(), alg_->window().floor, prec_);
    auto it = std::lower_bound(t_.begin(), t_.end(), mono, [](const WTerm& t, uint64_t m) { return t.pbw < m; });
    std::map<int, std::vector<CRTerm>> by_h;
    for (; it != t_.end() && it->pbw == mono; ++it) by_h[it->hp].push_back({it->cr, it->c});
    for (auto& [h, v] : by_h) c.set(h, CRElem::from_terms(alg_->ring(), std::move(v)));
    return c;
}

std::vector<uint64_t> WeylElem::support() const {
    std::vector<uint64_t> s;
    for (const auto& t : t_)
        if (s.empty() || s.back() != t.pbw) s.push_back(t.pbw);
    return s;
}

bool WeylElem::is_scalar() const {
    for (const auto& t : t_)
        if (t.pbw != 0) return false;
    return true;
}

WeylElem WeylElem::operator+(const WeylElem& o) const {
    check_compat(*this, o);
    std::vector<WTerm> v(t_);
    v.insert(v.end(), o.t_.begin(), o.t_.end());
    return from_terms(alg_, std::move(v), std::min(prec_, o.prec_));
}

WeylElem WeylElem::operator-() const {
    WeylElem e(*this);
    for (auto& t : e.t_) t.c = fp_neg(t.c, alg_->p());
    return e;
}

WeylElem WeylElem::operator-(const WeylElem& o) const { return *this + (-o); }

WeylElem weyl_mul_serial(const WeylElem& a, const WeylElem& b) {
    check_compat(a, b);
    int prec = product_precision(a, b);
    std::vector<WTerm> acc;
    expand_range(a, b, 0, a.terms().size(), prec, acc);
    return WeylElem::from_terms(a.algebra(), std::move(acc), prec);
}

WeylElem weyl_mul_parallel(const WeylElem& a, const WeylElem& b) {
#ifdef _OPENMP
    check_compat(a, b);
    int prec = product_precision(a, b);
    const size_t n = a.terms().size();
    int nt = omp_get_max_threads();
    std::vector<std::vector<WTerm>> parts(static_cast<size_t>(nt));
#pragma omp parallel num_threads(nt)
    {
        int id = omp_get_thread_num();
        size_t lo = n * id / nt, hi = n * (id + 1) / nt;
        expand_range(a, b, lo, hi, prec, parts[id]);
        compact(parts[id], a.algebra()->p());
    }
    std::vector<WTerm> acc;
    for (auto& part : parts) acc.insert(acc.end(), part.begin(), part.end());
    return WeylElem::from_terms(a.algebra(), std::move(acc), prec);
#else
    return weyl_mul_serial(a, b);
#endif
}

WeylElem WeylElem::operator*(const WeylElem& o) const {
#ifdef _OPENMP
    if (t_.size() * o.t_.size() > 20000 && omp_get_max_threads() > 1) return weyl_mul_parallel(*this, o);
#endif
    return weyl_mul_serial(*this, o);
}

WeylElem WeylElem::scaled(const CRElem& c) const { return *this * scalar(alg_, c); }

WeylElem WeylElem::scaled(const HLaurent& c) const { return *this * scalar(alg_, c); }

WeylElem WeylElem::scaled(uint32_t c) const {
    WeylElem e(*this);
    for (auto& t : e.t_) t.c = fp_mul(t.c, c % alg_->p(), alg_->p());
    std::vector<WTerm> v(std::move(e.t_));
    return from_terms(alg_, std::move(v), prec_);
}

WeylElem WeylElem::shifted(int k) const {
    std::vector<WTerm> v(t_);
    for (auto& t : v) t.hp += k;
    return from_terms(alg_, std::move(v), exact() ? kExact : prec_ + k);
}

WeylElem WeylElem::truncated(int prec) const { return from_terms(alg_, t_, std::min(prec_, prec)); }

WeylElem WeylElem::pow(unsigned e) const {
    WeylElem r = scalar(alg_, 1);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

WeylElem WeylElem::mapped(const CRHom& f, const WeylPtr& target) const {
    std::vector<WTerm> v;
    for (const auto& t : t_) {
        CRElem img = f(CRElem::monomial(alg_->ring(), t.cr, t.c));
        for (const auto& it : img.terms()) v.push_back({t.pbw, t.hp, it.m, it.c});
    }
    return from_terms(target, std::move(v), prec_);
}

bool WeylElem::operator==(const WeylElem& o) const {
    check_compat(*this, o);
    int prec = std::min(prec_, o.prec_);
    auto keep = [&](const WTerm& t) { return t.hp < prec; };
    auto ia = t_.begin(), ib = o.t_.begin();
    while (true) {
        while (ia != t_.end() && !keep(*ia)) ++ia;
        while (ib != o.t_.end() && !keep(*ib)) ++ib;
        if (ia == t_.end() || ib == o.t_.end()) return ia == t_.end() && ib == o.t_.end();
        if (!same_key(*ia, *ib) || ia->c != ib->c) return false;
        ++ia;
        ++ib;
    }
}

std::string WeylElem::to_string() const {
    std::ostringstream os;
    bool first = true;
    size_t i = 0;
    while (i < t_.size()) {
        size_t j = i;
        std::vector<CRTerm> cr;
        while (j < t_.size() && t_[j].pbw == t_[i].pbw && t_[j].hp == t_[i].hp) {
            cr.push_back({t_[j].cr, t_[j].c});
            ++j;
        }
        CRElem c = CRElem::from_terms(alg_->ring(), cr);
        if (!first) os << " + ";
        first = false;
        os << '(' << c.to_string() << ')';
        if (t_[i].hp != 0) os << "*h^" << t_[i].hp;
        if (t_[i].pbw != 0) os << '*' << alg_->mono_string(t_[i].pbw);
        i = j;
    }
    if (first) os << '0';
    if (!exact()) os << " + O(h^" << prec_ << ")";
    return os.str();
}

WeylElem commutator(const WeylElem& a, const WeylElem& b) { return a * b - b * a; }

WeylElem restricted_exp(const WeylElem& g) {
    const WeylPtr& alg = g.algebra();
    const int p = alg->p();
    WeylElem sum = WeylElem::scalar(alg, 1), pw = WeylElem::scalar(alg, 1);
    for (int i = 1; i < p; ++i) {
        pw = pw * g;
        sum += pw.scaled(fp_inv(fp_fact(i, p), p)).shifted(-i);
    }
    if (!(pw * g).is_zero()) throw DomainError("restricted_exp: exponent is not p-nilpotent");
    return sum;
}

WeylElem restricted_exp(const CRElem& tau, const WeylElem& f) { return restricted_exp(f.scaled(tau)); }

WeylElem ad_exp(const WeylElem& g, const WeylElem& a) {
    const int p = g.algebra()->p();
    WeylElem sum = a, term = a;
    for (int i = 1; i < p; ++i) {
        term = commutator(g, term).shifted(-1);
        sum += term.scaled(fp_inv(fp_fact(i, p), p));
    }
    return sum;
}

WeylElem conjugate(const WeylElem& u, const WeylElem& a, const WeylElem& u_inv) { return u * a * u_inv; }

WeylElem op_involution(const WeylElem& a) {
    const WeylPtr& alg = a.algebra();
    std::map<uint64_t, WeylElem> reversed;
    WeylElem out(alg, a.precision());
    std::vector<WTerm> acc;
    for (const auto& t : a.terms()) {
        auto it = reversed.find(t.pbw);
        if (it == reversed.end()) {
            WeylElem r = WeylElem::scalar(alg, 1);
            for (int g = alg->ngens() - 1; g >= 0; --g)
                for (int e = 0; e < alg->exponent(t.pbw, g); ++e) r = r * WeylElem::gen(alg, g);
            it = reversed.emplace(t.pbw, r).first;
        }
        uint32_t c = (t.hp % 2) ? fp_neg(t.c, alg->p()) : t.c;
        for (const auto& rt : it->second.terms()) {
            uint64_t cr;
            if (!alg->ring()->mul_mono(t.cr, rt.cr, cr)) continue;
            acc.push_back({rt.pbw, rt.hp + t.hp, cr, fp_mul(c, rt.c, alg->p())});
        }
    }
    return WeylElem::from_terms(alg, std::move(acc), a.precision());
}

int quadratic_pole_excess(const WeylElem& a) {
    int worst = -kExact;
    for (const auto& t : a.terms()) worst = std::max(worst, -t.hp - a.algebra()->degree(t.pbw) / 2);
    return worst;
}

}  // namespace fcq

namespace fcq {

WeylElem lift(const WeylPtr& alg, const A0Elem& f) {
    const A0Ptr& sp = f.space();
    if (sp->m() != alg->ngens() || sp->flat() != (alg->flavor() == Flavor::Flat))
        throw DomainError("lift: layout mismatch");
    std::vector<WTerm> terms;
    for (size_t idx = 0; idx < sp->dim(); ++idx) {
        if (f[idx].is_zero()) continue;
        uint64_t mono = 0;
        for (int j = 0; j < sp->m(); ++j) mono |= alg->gen_mono(j, sp->digit(idx, j));
        for (const auto& t : f[idx].terms()) terms.push_back({mono, 0, t.m, t.c});
    }
    return WeylElem::from_terms(alg, std::move(terms), kExact);
}

A0Elem symbol(const WeylElem& a, const A0Ptr& sp) {
    const WeylPtr& alg = a.algebra();
    if (sp->m() != alg->ngens()) throw DomainError("symbol: layout mismatch");
    A0Elem f(sp);
    for (const auto& t : a.terms()) {
        if (t.hp < 0) throw WindowError("symbol: element has a pole");
        if (t.hp > 0) continue;
        size_t idx = 0;
        for (int j = 0; j < sp->m(); ++j) idx += alg->exponent(t.pbw, j) * sp->stride(j);
        f[idx] += CRElem::monomial(sp->ring(), t.cr, t.c);
    }
    return f;
}

Verdict ad_exp_check(const WeylElem& f, const CRElem& tau) {
    const WeylPtr& alg = f.algebra();
    WeylElem e = restricted_exp(tau, f), e_inv = restricted_exp(-tau, f);
    WeylElem g = f.scaled(tau);
    for (uint64_t mono : alg->basis()) {
        WeylElem b = WeylElem::monomial(alg, mono, CRElem(alg->ring(), 1));
        WeylElem lhs = e * b * e_inv, rhs = ad_exp(g, b);
        if (lhs != rhs) return Verdict::fail("Ad vs ad-series at " + b.to_string() + ": " + lhs.to_string() + " vs " + rhs.to_string());
        if (lhs.valuation() < 0) return Verdict::fail("pole after conjugating " + b.to_string() + ": " + lhs.to_string());
    }
    return Verdict::ok(std::to_string(alg->basis().size()) + " basis elements");
}

}  // namespace fcq
