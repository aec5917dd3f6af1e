#ifndef FCQ_COEFF_RING_HPP
#define FCQ_COEFF_RING_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fcq/fp.hpp"

namespace fcq {

/**
 * Truncated polynomial ring F_p[g_1..g_k]/(g_i^{c_i}).
 *
 * Monomials are packed four bits per generator, so at most 16 generators
 * with caps up to 8. The ring is local: an element is a unit iff its
 * constant term is nonzero, otherwise it is nilpotent.
 */
class CoeffRing {
public:
    static constexpr int kBits = 4;
    static constexpr int kMaxGens = 64 / kBits;

    CoeffRing(int p, std::vector<std::string> names, std::vector<int> caps);

    /// Ring with every generator capped at p.
    static std::shared_ptr<const CoeffRing> make(int p, const std::vector<std::string>& names);
    static std::shared_ptr<const CoeffRing> make(int p, std::vector<std::string> names, std::vector<int> caps);

    int p() const { return p_; }
    int ngens() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(i); }
    int cap(int i) const { return caps_.at(i); }
    int index_of(const std::string& name) const;
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& caps() const { return caps_; }

    /// Number of monomials, i.e. F_p-dimension.
    uint64_t dimension() const;

    int exponent(uint64_t m, int i) const { return static_cast<int>((m >> (kBits * i)) & 0xF); }
    uint64_t gen_mono(int i, int e) const;

    /// Product of monomials; false when some exponent reaches its cap.
    bool mul_mono(uint64_t a, uint64_t b, uint64_t& out) const {
        uint64_t s = a + b;
        if ((s + bias_) & high_) return false;
        out = s;
        return true;
    }

    int total_degree(uint64_t m) const;
    /// Enumerate every monomial (mixed radix order).
    std::vector<uint64_t> monomials() const;

    bool same_as(const CoeffRing& o) const { return p_ == o.p_ && names_ == o.names_ && caps_ == o.caps_; }

private:
    int p_;
    std::vector<std::string> names_;
    std::vector<int> caps_;
    uint64_t bias_ = 0;
    uint64_t high_ = 0;
};

using RingPtr = std::shared_ptr<const CoeffRing>;

struct CRTerm {
    uint64_t m;
    uint32_t c;
    bool operator==(const CRTerm& o) const { return m == o.m && c == o.c; }
};

/// Element of a CoeffRing: sorted sparse list of (monomial, coefficient).
class CRElem {
public:
    CRElem() = default;
    explicit CRElem(RingPtr r) : r_(std::move(r)) {}
    CRElem(RingPtr r, long long c);

    static CRElem gen(const RingPtr& r, int i);
    static CRElem gen(const RingPtr& r, const std::string& name);
    static CRElem monomial(const RingPtr& r, uint64_t m, uint32_t c);

    const RingPtr& ring() const { return r_; }
    int p() const { return r_->p(); }
    const std::vector<CRTerm>& terms() const { return t_; }

    bool is_zero() const { return t_.empty(); }
    uint32_t constant_term() const { return (!t_.empty() && t_[0].m == 0) ? t_[0].c : 0; }
    bool is_unit() const { return constant_term() != 0; }
    bool is_nilpotent() const { return constant_term() == 0; }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m == 0); }
    uint32_t coeff(uint64_t m) const;

    CRElem operator+(const CRElem& o) const;
    CRElem operator-(const CRElem& o) const;
    CRElem operator-() const;
    CRElem operator*(const CRElem& o) const;
    CRElem scaled(uint32_t c) const;
    CRElem& operator+=(const CRElem& o) { return *this = *this + o; }
    CRElem& operator-=(const CRElem& o) { return *this = *this - o; }
    CRElem& operator*=(const CRElem& o) { return *this = *this * o; }
    bool operator==(const CRElem& o) const;
    bool operator!=(const CRElem& o) const { return !(*this == o); }

    CRElem pow(unsigned e) const;
    /// Inverse of a unit: c^{-1} Σ (-n/c)^k, finite because n is nilpotent.
    CRElem inverse() const;
    /// Formal partial derivative in generator i.
    CRElem deriv(int i) const;

    std::string to_string() const;

    /// Build from unsorted terms (combines duplicates, drops zeros).
    static CRElem from_terms(const RingPtr& r, std::vector<CRTerm> terms);

private:
    void check_same(const CRElem& o) const;
    RingPtr r_;
    std::vector<CRTerm> t_;
};

/// Ring homomorphism determined by generator images.
class CRHom {
public:
    /// Throws DomainError unless every image satisfies img^cap = 0.
    CRHom(RingPtr source, RingPtr target, std::vector<CRElem> images);
    CRElem operator()(const CRElem& a) const;
    const RingPtr& target() const { return tgt_; }
    const RingPtr& source() const { return src_; }

private:
    RingPtr src_, tgt_;
    std::vector<std::vector<CRElem>> powers_;
};

/// Inclusion of a ring into one carrying a superset of its generator names.
CRHom ring_inclusion(const RingPtr& source, const RingPtr& target);

/// Parameter ring helper: names with per-name caps, or cap p by default.
RingPtr param_ring(int p, const std::vector<std::string>& names);

}  // namespace fcq

#endif
