#include "fcq/coeff_ring.hpp"

#include <algorithm>
#include <sstream>

namespace fcq {

CoeffRing::CoeffRing(int p, std::vector<std::string> names, std::vector<int> caps)
    : p_(p), names_(std::move(names)), caps_(std::move(caps)) {
    require_prime(p_);
    if (names_.size() != caps_.size()) throw DomainError("CoeffRing: names/caps length mismatch");
    if (static_cast<int>(names_.size()) > kMaxGens) throw DomainError("CoeffRing: too many generators");
    for (size_t i = 0; i < caps_.size(); ++i) {
        if (caps_[i] < 2 || caps_[i] > 8) throw DomainError("CoeffRing: cap must lie in [2, 8]");
        for (size_t j = 0; j < i; ++j)
            if (names_[i] == names_[j]) throw DomainError("CoeffRing: duplicate generator " + names_[i]);
        // Field holds sum <= 2(cap-1); adding 8 - cap sets bit 3 exactly when sum >= cap.
        bias_ |= static_cast<uint64_t>(8 - caps_[i]) << (kBits * i);
        high_ |= uint64_t{8} << (kBits * i);
    }
}

std::shared_ptr<const CoeffRing> CoeffRing::make(int p, const std::vector<std::string>& names) {
    return std::make_shared<const CoeffRing>(p, names, std::vector<int>(names.size(), p));
}

std::shared_ptr<const CoeffRing> CoeffRing::make(int p, std::vector<std::string> names, std::vector<int> caps) {
    return std::make_shared<const CoeffRing>(p, std::move(names), std::move(caps));
}

RingPtr param_ring(int p, const std::vector<std::string>& names) { return CoeffRing::make(p, names); }

int CoeffRing::index_of(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return -1;
}

uint64_t CoeffRing::dimension() const {
    uint64_t d = 1;
    for (int c : caps_) d *= static_cast<uint64_t>(c);
    return d;
}

uint64_t CoeffRing::gen_mono(int i, int e) const {
    if (i < 0 || i >= ngens()) throw DomainError("CoeffRing: generator index out of range");
    if (e < 0 || e >= caps_[i]) return ~uint64_t{0};
    return static_cast<uint64_t>(e) << (kBits * i);
}

int CoeffRing::total_degree(uint64_t m) const {
    int d = 0;
    for (int i = 0; i < ngens(); ++i) d += exponent(m, i);
    return d;
}

std::vector<uint64_t> CoeffRing::monomials() const {
    std::vector<uint64_t> out{0};
    for (int i = 0; i < ngens(); ++i) {
        std::vector<uint64_t> next;
        next.reserve(out.size() * caps_[i]);
        for (uint64_t m : out)
            for (int e = 0; e < caps_[i]; ++e) next.push_back(m | (static_cast<uint64_t>(e) << (kBits * i)));
        out.swap(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

CRElem::CRElem(RingPtr r, long long c) : r_(std::move(r)) {
    uint32_t v = fp_norm(c, r_->p());
    if (v) t_.push_back({0, v});
}

CRElem CRElem::gen(const RingPtr& r, int i) { return monomial(r, r->gen_mono(i, 1), 1); }

CRElem CRElem::gen(const RingPtr& r, const std::string& name) {
    int i = r->index_of(name);
    if (i < 0) throw DomainError("CoeffRing has no generator " + name);
    return gen(r, i);
}

CRElem CRElem::monomial(const RingPtr& r, uint64_t m, uint32_t c) {
    CRElem e(r);
    c %= r->p();
    if (c && m != ~uint64_t{0}) e.t_.push_back({m, c});
    return e;
}

uint32_t CRElem::coeff(uint64_t m) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const CRTerm& t, uint64_t k) { return t.m < k; });
    return (it != t_.end() && it->m == m) ? it->c : 0;
}

void CRElem::check_same(const CRElem& o) const {
    if (!r_ || !o.r_) throw DomainError("CRElem: uninitialised ring");
    if (r_ != o.r_ && !r_->same_as(*o.r_)) throw DomainError("CRElem: mixing elements of different rings");
}

CRElem CRElem::from_terms(const RingPtr& r, std::vector<CRTerm> terms) {
    const int p = r->p();
    std::sort(terms.begin(), terms.end(), [](const CRTerm& a, const CRTerm& b) { return a.m < b.m; });
    CRElem e(r);
    for (const auto& t : terms) {
        if (!e.t_.empty() && e.t_.back().m == t.m) {
            e.t_.back().c = fp_add(e.t_.back().c, t.c % p, p);
            if (!e.t_.back().c) e.t_.pop_back();
        } else if (t.c % p) {
            e.t_.push_back({t.m, t.c % p});
        }
    }
    return e;
}

CRElem CRElem::operator+(const CRElem& o) const {
    check_same(o);
    const int p = r_->p();
    CRElem e(r_);
    e.t_.reserve(t_.size() + o.t_.size());
    size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
        if (j == o.t_.size() || (i < t_.size() && t_[i].m < o.t_[j].m)) {
            e.t_.push_back(t_[i++]);
        } else if (i == t_.size() || o.t_[j].m < t_[i].m) {
            e.t_.push_back(o.t_[j++]);
        } else {
            uint32_t c = fp_add(t_[i].c, o.t_[j].c, p);
            if (c) e.t_.push_back({t_[i].m, c});
            ++i;
            ++j;
        }
    }
    return e;
}

CRElem CRElem::operator-() const {
    CRElem e(*this);
    for (auto& t : e.t_) t.c = fp_neg(t.c, r_->p());
    return e;
}

CRElem CRElem::operator-(const CRElem& o) const { return *this + (-o); }

CRElem CRElem::scaled(uint32_t c) const {
    const int p = r_->p();
    c %= p;
    CRElem e(r_);
    if (!c) return e;
    e.t_ = t_;
    for (auto& t : e.t_) t.c = fp_mul(t.c, c, p);
    return e;
}

CRElem CRElem::operator*(const CRElem& o) const {
    check_same(o);
    if (t_.empty() || o.t_.empty()) return CRElem(r_);
    if (o.is_constant()) return scaled(o.t_[0].c);
    if (is_constant()) return o.scaled(t_[0].c);
    const int p = r_->p();
    std::vector<CRTerm> acc;
    acc.reserve(t_.size() * o.t_.size());
    uint64_t m;
    for (const auto& a : t_)
        for (const auto& b : o.t_)
            if (r_->mul_mono(a.m, b.m, m)) acc.push_back({m, fp_mul(a.c, b.c, p)});
    return from_terms(r_, std::move(acc));
}

bool CRElem::operator==(const CRElem& o) const {
    check_same(o);
    return t_ == o.t_;
}

CRElem CRElem::pow(unsigned e) const {
    CRElem r(r_, 1), b(*this);
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

CRElem CRElem::inverse() const {
    const int p = r_->p();
    uint32_t c = constant_term();
    if (!c) throw DomainError("CRElem::inverse: element is not a unit (zero constant term)");
    uint32_t ci = fp_inv(c, p);
    CRElem n = scaled(ci) - CRElem(r_, 1);  // u/c = 1 + n
    CRElem result(r_, 1), term(r_, 1), mn = -n;
    while (true) {
        term = term * mn;
        if (term.is_zero()) break;
        result += term;
    }
    return result.scaled(ci);
}

CRElem CRElem::deriv(int i) const {
    const int p = r_->p();
    std::vector<CRTerm> acc;
    for (const auto& t : t_) {
        int e = r_->exponent(t.m, i);
        if (!e) continue;
        uint32_t c = fp_mul(t.c, static_cast<uint32_t>(e % p), p);
        if (c) acc.push_back({t.m - r_->gen_mono(i, 1), c});
    }
    return from_terms(r_, std::move(acc));
}

std::string CRElem::to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : t_) {
        if (!first) os << " + ";
        first = false;
        bool any = false;
        if (t.c != 1 || t.m == 0) {
            os << t.c;
            any = true;
        }
        for (int i = 0; i < r_->ngens(); ++i) {
            int e = r_->exponent(t.m, i);
            if (!e) continue;
            if (any) os << '*';
            os << r_->name(i);
            if (e > 1) os << '^' << e;
            any = true;
        }
    }
    return os.str();
}

CRHom::CRHom(RingPtr source, RingPtr target, std::vector<CRElem> images)
    : src_(std::move(source)), tgt_(std::move(target)) {
    if (static_cast<int>(images.size()) != src_->ngens()) throw DomainError("CRHom: wrong number of images");
    for (int i = 0; i < src_->ngens(); ++i) {
        const CRElem& g = images[i];
        if (g.ring() != tgt_ && !g.ring()->same_as(*tgt_)) throw DomainError("CRHom: image in wrong ring");
        if (!g.pow(src_->cap(i)).is_zero())
            throw DomainError("CRHom: image of " + src_->name(i) + " does not respect its nilpotency cap");
        std::vector<CRElem> pw{CRElem(tgt_, 1)};
        for (int e = 1; e < src_->cap(i); ++e) pw.push_back(pw.back() * g);
        powers_.push_back(std::move(pw));
    }
}

CRElem CRHom::operator()(const CRElem& a) const {
    if (a.ring() != src_ && !a.ring()->same_as(*src_)) throw DomainError("CRHom: argument in wrong ring");
    CRElem out(tgt_);
    for (const auto& t : a.terms()) {
        CRElem term(tgt_, t.c);
        for (int i = 0; i < src_->ngens() && !term.is_zero(); ++i) {
            int e = src_->exponent(t.m, i);
            if (e) term = term * powers_[i][e];
        }
        out += term;
    }
    return out;
}

CRHom ring_inclusion(const RingPtr& source, const RingPtr& target) {
    std::vector<CRElem> imgs;
    for (int i = 0; i < source->ngens(); ++i) {
        int j = target->index_of(source->name(i));
        if (j < 0) throw DomainError("ring_inclusion: target lacks generator " + source->name(i));
        if (target->cap(j) != source->cap(i)) throw DomainError("ring_inclusion: cap mismatch for " + source->name(i));
        imgs.push_back(CRElem::gen(target, j));
    }
    return CRHom(source, target, std::move(imgs));
}

}  // namespace fcq
