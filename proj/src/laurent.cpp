#include "fcq/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace fcq {

Window default_window(int p, int n) {
    require_prime(p);
    if (n < 1) throw DomainError("n must be positive");
    return Window{-(2 * n + 2) * (p - 1) - 1, 2 * p};
}

namespace {

int sat(long long v) { return v >= kExact / 2 ? kExact : static_cast<int>(v); }

}  // namespace

HLaurent::HLaurent(RingPtr r, int floor, int prec) : r_(std::move(r)), floor_(floor), prec_(sat(prec)) {
    if (!r_) throw DomainError("HLaurent: null ring");
    if (prec_ < floor_) throw DomainError("HLaurent: precision below floor");
}

HLaurent HLaurent::constant(const CRElem& c, int floor, int prec) { return monomial(c, 0, floor, prec); }

HLaurent HLaurent::constant(const RingPtr& r, long long c, int floor, int prec) {
    return monomial(CRElem(r, c), 0, floor, prec);
}

HLaurent HLaurent::monomial(const CRElem& c, int k, int floor, int prec) {
    HLaurent e(c.ring(), floor, prec);
    e.set(k, c);
    return e;
}

HLaurent HLaurent::series(const RingPtr& r, const std::vector<CRElem>& coeffs, int prec) {
    if (prec <= 0) throw DomainError("HSeries: precision must be positive");
    HLaurent e(r, 0, prec);
    for (size_t i = 0; i < coeffs.size() && static_cast<int>(i) < prec; ++i) e.set(static_cast<int>(i), coeffs[i]);
    return e;
}

CRElem HLaurent::coeff(int i) const {
    if (i < floor_) throw WindowError("read of h^" + std::to_string(i) + " below floor " + std::to_string(floor_));
    if (i >= prec_) throw WindowError("read of h^" + std::to_string(i) + " beyond precision " + std::to_string(prec_));
    auto it = c_.find(i);
    return it == c_.end() ? CRElem(r_) : it->second;
}

void HLaurent::set(int i, const CRElem& c) {
    if (i >= prec_) return;  // beyond precision: dropped
    if (c.is_zero()) {
        c_.erase(i);
        return;
    }
    if (i < floor_) throw WindowError("pole h^" + std::to_string(i) + " below floor " + std::to_string(floor_));
    c_[i] = c;
}

void HLaurent::add_to(int i, const CRElem& c) {
    if (i >= prec_ || c.is_zero()) return;
    auto it = c_.find(i);
    if (it == c_.end()) {
        set(i, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

void HLaurent::normalize() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->second.is_zero() || it->first >= prec_) {
            it = c_.erase(it);
        } else {
            if (it->first < floor_)
                throw WindowError("pole h^" + std::to_string(it->first) + " below floor " + std::to_string(floor_));
            ++it;
        }
    }
}

int HLaurent::valuation() const { return c_.empty() ? prec_ : c_.begin()->first; }

bool HLaurent::in_W_hat() const {
    for (const auto& [i, c] : c_) {
        if (i > 0) return false;
        if (i == 0 && c != CRElem(r_, 1)) return false;
        if (i < 0 && !c.is_nilpotent()) return false;
    }
    return c_.count(0) == 1 && prec_ > 0;
}

HLaurent HLaurent::operator+(const HLaurent& o) const {
    HLaurent e(r_, std::min(floor_, o.floor_), std::min(prec_, o.prec_));
    for (const auto& [i, c] : c_) e.add_to(i, c);
    for (const auto& [i, c] : o.c_) e.add_to(i, c);
    e.normalize();
    return e;
}

HLaurent HLaurent::operator-() const {
    HLaurent e(*this);
    for (auto& [i, c] : e.c_) c = -c;
    return e;
}

HLaurent HLaurent::operator-(const HLaurent& o) const { return *this + (-o); }

HLaurent HLaurent::operator*(const HLaurent& o) const {
    long long va = valuation(), vb = o.valuation();
    int prec = sat(std::min<long long>(static_cast<long long>(prec_) + vb, static_cast<long long>(o.prec_) + va));
    HLaurent e(r_, std::min(floor_, o.floor_), std::max(prec, std::min(floor_, o.floor_)));
    for (const auto& [i, a] : c_)
        for (const auto& [j, b] : o.c_)
            if (i + j < e.prec_) e.add_to(i + j, a * b);
    e.normalize();
    return e;
}

HLaurent HLaurent::scaled(const CRElem& c) const {
    HLaurent e(r_, floor_, prec_);
    for (const auto& [i, a] : c_) e.add_to(i, a * c);
    return e;
}

HLaurent HLaurent::scaled(uint32_t c) const { return scaled(CRElem(r_, c)); }

HLaurent HLaurent::shifted(int k) const {
    HLaurent e(r_, floor_, exact() ? kExact : prec_ + k);
    for (const auto& [i, a] : c_) e.set(i + k, a);
    return e;
}

HLaurent HLaurent::truncated(int prec) const {
    HLaurent e(r_, floor_, std::min(prec_, prec));
    for (const auto& [i, a] : c_) e.set(i, a);
    return e;
}

HLaurent HLaurent::with_floor(int floor) const {
    HLaurent e(r_, floor, std::max(prec_, floor));
    for (const auto& [i, a] : c_) e.set(i, a);
    return e;
}

HLaurent HLaurent::mapped(const CRHom& f) const {
    HLaurent e(f.target(), floor_, prec_);
    for (const auto& [i, a] : c_) e.add_to(i, f(a));
    return e;
}

HLaurent HLaurent::deriv(int g) const {
    HLaurent e(r_, floor_, prec_);
    for (const auto& [i, a] : c_) e.add_to(i, a.deriv(g));
    return e;
}

HLaurent HLaurent::pow(unsigned k) const {
    HLaurent r = HLaurent::constant(r_, 1, floor_);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

HLaurent HLaurent::h_negated() const {
    HLaurent e(r_, floor_, prec_);
    for (const auto& [i, a] : c_) e.set(i, (i % 2) ? -a : a);
    return e;
}

bool HLaurent::operator==(const HLaurent& o) const {
    int prec = std::min(prec_, o.prec_);
    auto ia = c_.begin(), ib = o.c_.begin();
    while (true) {
        while (ia != c_.end() && ia->first >= prec) ia = c_.end();
        while (ib != o.c_.end() && ib->first >= prec) ib = o.c_.end();
        if (ia == c_.end() || ib == o.c_.end()) return ia == c_.end() && ib == o.c_.end();
        if (ia->first != ib->first || ia->second != ib->second) return false;
        ++ia;
        ++ib;
    }
}

bool HLaurent::is_unit() const {
    for (const auto& [i, c] : c_)
        if (c.is_unit()) return true;
    if (!exact()) throw WindowError("unit test undetermined: no unit coefficient below precision " + std::to_string(prec_));
    return false;
}

HSeries hs_inv(const HSeries& u, int prec_if_exact) {
    if (!u.is_series()) throw DomainError("hs_inv: argument has a pole");
    CRElem a0 = u.coeff(0);
    if (!a0.is_unit()) throw DomainError("hs_inv: constant term is not a unit");
    int N = u.exact() ? prec_if_exact : u.precision();
    if (N <= 0) throw DomainError("hs_inv: precision must be positive");
    CRElem a0i = a0.inverse();
    std::vector<CRElem> b(N, CRElem(u.ring()));
    b[0] = a0i;
    for (int k = 1; k < N; ++k) {
        CRElem s(u.ring());
        for (const auto& [j, a] : u.coeffs())
            if (j >= 1 && j <= k) s += a * b[k - j];
        b[k] = -(s * a0i);
    }
    HLaurent r(u.ring(), std::max(0, u.floor()), N);
    for (int k = 0; k < N; ++k) r.set(k, b[k]);
    return r;
}

HLaurent UnitDecomposition::recombine() const {
    return (w.scaled(r) * what).shifted(m);
}

UnitDecomposition unit_decompose(const HLaurent& u) {
    const RingPtr& R = u.ring();
    int i0 = kExact;
    for (const auto& [i, c] : u.coeffs())
        if (c.is_unit()) {
            i0 = i;
            break;
        }
    if (i0 == kExact) {
        if (u.exact()) throw DomainError("unit_decompose: not a unit");
        throw WindowError("unit_decompose: no unit coefficient inside the window");
    }
    HLaurent v = u.shifted(-i0).with_floor(kNoFloor);
    CRElem v0inv = v.coeff(0).inverse();
    // q = 1 + Σ_{j<0} c_j h^j with (v q)_j = 0 for j < 0; fixed point over the nilradical.
    std::map<int, CRElem> c;
    for (int iter = 0; iter < 256; ++iter) {
        std::map<int, CRElem> nc;
        int lo = v.valuation();
        for (const auto& [i, ci] : c) lo = std::min(lo, i + v.valuation());
        for (int j = lo; j < 0; ++j) {
            CRElem s = v.coeffs().count(j) ? v.coeffs().at(j) : CRElem(R);
            for (const auto& [i, ci] : c)
                if (i != j) s += ci * v.coeff(j - i);
            s = -(s * v0inv);
            if (!s.is_zero()) nc[j] = s;
        }
        if (nc.size() == c.size() && std::equal(nc.begin(), nc.end(), c.begin(), [](const auto& a, const auto& b) {
                return a.first == b.first && a.second == b.second;
            })) {
            break;
        }
        c.swap(nc);
        if (iter == 255) throw DomainError("unit_decompose: iteration did not converge");
    }
    HLaurent q = HLaurent::constant(R, 1);
    for (const auto& [j, cj] : c) q.set(j, cj);
    HLaurent P = v * q;
    for (const auto& [i, a] : P.coeffs())
        if (i < 0) throw WindowError("unit_decompose: negative part did not cancel (insufficient precision)");
    UnitDecomposition d;
    d.m = i0;
    d.r = P.coeff(0);
    d.w = P.scaled(d.r.inverse()).with_floor(0);
    // what = q^{-1} = Σ (1 - q)^k, finite since 1 - q has nilpotent coefficients.
    HLaurent one = HLaurent::constant(R, 1);
    HLaurent n = one - q, term = one, what = one;
    for (int k = 0; k < 4096; ++k) {
        term = term * n;
        if (term.is_zero()) break;
        what += term;
    }
    d.what = what;
    return d;
}

HLaurent HLaurent::inverse(int prec_if_exact) const {
    UnitDecomposition d = unit_decompose(*this);
    HLaurent winv = hs_inv(d.w, prec_if_exact);
    HLaurent one = HLaurent::constant(r_, 1);
    HLaurent n = one - d.what, term = one, q = one;
    // what^{-1} = Σ n^k with n = 1 - what nilpotent.
    for (int k = 0; k < 4096; ++k) {
        term = term * n;
        if (term.is_zero()) break;
        q += term;
    }
    HLaurent r = (winv * q).scaled(d.r.inverse()).shifted(-d.m);
    return r.with_floor(floor_);
}

std::string HLaurent::to_string() const {
    std::ostringstream os;
    if (c_.empty()) {
        os << "0";
    } else {
        bool first = true;
        for (const auto& [i, c] : c_) {
            if (!first) os << " + ";
            first = false;
            bool simple = c.terms().size() == 1;
            if (i == 0) {
                os << (simple ? c.to_string() : "(" + c.to_string() + ")");
            } else {
                std::string cs = c.to_string();
                if (cs != "1") os << (simple ? cs : "(" + cs + ")") << '*';
                os << "h";
                if (i != 1) os << '^' << i;
            }
        }
    }
    if (!exact()) os << " + O(h^" << prec_ << ")";
    return os.str();
}

}  // namespace fcq
