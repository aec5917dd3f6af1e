#include "fcq/matrep.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace fcq {

LaurentMatrix::LaurentMatrix(RingPtr r, size_t d) : r_(std::move(r)), d_(d) {
    e_.assign(d * d, HLaurent(r_));
}

LaurentMatrix LaurentMatrix::identity(const RingPtr& r, size_t d) {
    LaurentMatrix m(r, d);
    for (size_t i = 0; i < d; ++i) m.at(i, i) = HLaurent::constant(r, 1);
    return m;
}

namespace {
void same_shape(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.size() != b.size()) throw DomainError("LaurentMatrix: size mismatch");
    if (!a.ring()->same_as(*b.ring())) throw DomainError("LaurentMatrix: ring mismatch");
}
}  // namespace

LaurentMatrix LaurentMatrix::operator+(const LaurentMatrix& o) const {
    same_shape(*this, o);
    LaurentMatrix m(r_, d_);
    for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] + o.e_[k];
    return m;
}

LaurentMatrix LaurentMatrix::operator-(const LaurentMatrix& o) const {
    same_shape(*this, o);
    LaurentMatrix m(r_, d_);
    for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] - o.e_[k];
    return m;
}

LaurentMatrix LaurentMatrix::operator*(const LaurentMatrix& o) const {
    same_shape(*this, o);
    LaurentMatrix m(r_, d_);
    for (size_t i = 0; i < d_; ++i)
        for (size_t k = 0; k < d_; ++k) {
            const HLaurent& a = at(i, k);
            if (a.is_zero() && a.exact()) continue;
            for (size_t j = 0; j < d_; ++j) {
                const HLaurent& b = o.at(k, j);
                if (b.is_zero() && b.exact()) continue;
                m.at(i, j) += a * b;
            }
        }
    return m;
}

LaurentMatrix LaurentMatrix::scaled(const HLaurent& c) const {
    LaurentMatrix m(r_, d_);
    for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] * c;
    return m;
}

LaurentMatrix LaurentMatrix::mapped(const CRHom& f) const {
    LaurentMatrix m(f.target(), d_);
    for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k].mapped(f);
    return m;
}

LaurentMatrix LaurentMatrix::truncated(int prec) const {
    LaurentMatrix m(r_, d_);
    for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k].truncated(prec);
    return m;
}

bool LaurentMatrix::operator==(const LaurentMatrix& o) const {
    if (d_ != o.d_) return false;
    for (size_t k = 0; k < e_.size(); ++k)
        if (e_[k] != o.e_[k]) return false;
    return true;
}

int LaurentMatrix::valuation() const {
    int v = kExact;
    for (const auto& e : e_) v = std::min(v, e.valuation());
    return v;
}

std::string LaurentMatrix::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < d_; ++i) {
        os << '[';
        for (size_t j = 0; j < d_; ++j) os << (j ? ", " : "") << at(i, j).to_string();
        os << "]\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

size_t vdim(const WeylAlgebra& alg) {
    size_t d = 1;
    for (int i = 0; i < alg.n(); ++i) d *= static_cast<size_t>(alg.p());
    return d;
}

int vdigit(size_t c, int i, int p) {
    for (int k = 0; k < i; ++k) c /= p;
    return static_cast<int>(c % p);
}

// Image of basis vector c under PBW monomial x^a y^b: coefficient and target, or false.
bool mono_action(const WeylAlgebra& alg, uint64_t mono, size_t c, uint32_t& coef, int& hpow, size_t& target) {
    const int p = alg.p(), n = alg.n();
    coef = 1;
    hpow = 0;
    size_t t = 0, stride = 1;
    for (int i = 0; i < n; ++i, stride *= p) {
        int ci = vdigit(c, i, p);
        int a = alg.exponent(mono, i), b = alg.exponent(mono, n + i);
        if (b > ci) return false;
        coef = fp_mul(coef, fp_falling(ci, b, p), p);
        if (b % 2) coef = fp_neg(coef, p);  // y acts by -h d/dx
        hpow += b;
        int e = ci - b + a;
        if (e >= p) return false;
        t += static_cast<size_t>(e) * stride;
    }
    target = t;
    return coef != 0;
}

HLaurent inv_entry(const HLaurent& x, int prec) {
    if (x.coeffs().size() == 1 && x.exact()) {
        const auto& [k, c] = *x.coeffs().begin();
        if (c.is_unit()) return HLaurent::monomial(c.inverse(), -k);
    }
    return x.with_floor(kNoFloor).inverse(prec);
}

bool known_zero(const HLaurent& x) { return x.is_zero(); }

}  // namespace

std::vector<LaurentMatrix> rep_generators(const WeylPtr& alg) {
    std::vector<LaurentMatrix> out;
    for (int g = 0; g < alg->ngens(); ++g) out.push_back(rep(WeylElem::gen(alg, g)));
    return out;
}

LaurentMatrix rep(const WeylElem& a) {
    const WeylAlgebra& alg = *a.algebra();
    if (alg.flavor() != Flavor::Standard) throw DomainError("rep: only the standard flavor has this representation");
    const size_t d = vdim(alg);
    const RingPtr& R = alg.ring();
    const int floor = alg.window().floor;
    LaurentMatrix m(R, d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) m.at(i, j) = HLaurent(R, floor, a.precision());
    for (const auto& t : a.terms())
        for (size_t c = 0; c < d; ++c) {
            uint32_t coef;
            int hp;
            size_t tgt;
            if (!mono_action(alg, t.pbw, c, coef, hp, tgt)) continue;
            m.at(tgt, c).add_to(t.hp + hp, CRElem::monomial(R, t.cr, fp_mul(coef, t.c, alg.p())));
        }
    return m;
}

HLaurent det_series(const LaurentMatrix& a) {
    const size_t n = a.size();
    const RingPtr& R = a.ring();
    if (n == 0) return HLaurent::constant(R, 1);
    // Berkowitz: char poly of leading principal blocks via Toeplitz products.
    std::vector<HLaurent> poly{HLaurent::constant(R, 1)};
    for (size_t i = 0; i < n; ++i) {
        // col[0] = 1, col[1] = -a_ii, col[k+2] = -R M^k C.
        std::vector<HLaurent> col{HLaurent::constant(R, 1), -a.at(i, i)};
        std::vector<HLaurent> v(i, HLaurent(R));
        for (size_t r = 0; r < i; ++r) v[r] = a.at(r, i);
        for (size_t k = 0; k < i; ++k) {
            HLaurent s(R);
            for (size_t r = 0; r < i; ++r) s += a.at(i, r) * v[r];
            col.push_back(-s);
            std::vector<HLaurent> nv(i, HLaurent(R));
            for (size_t r = 0; r < i; ++r)
                for (size_t c = 0; c < i; ++c) nv[r] += a.at(r, c) * v[c];
            v.swap(nv);
        }
        std::vector<HLaurent> np(i + 2, HLaurent(R));
        for (size_t r = 0; r < i + 2; ++r)
            for (size_t c = 0; c <= std::min(r, i); ++c) np[r] += col[r - c] * poly[c];
        poly.swap(np);
    }
    HLaurent d = poly[n];
    return (n % 2) ? -d : d;
}

size_t laurent_rank(std::vector<std::vector<HLaurent>> rows, int rel_prec) {
    size_t rank = 0;
    std::vector<bool> used(rows.size(), false);
    const size_t cols = rows.empty() ? 0 : rows[0].size();
    while (true) {
        // Full minimal-valuation pivoting among unused rows.
        int best = kExact;
        size_t pr = 0, pc = 0;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (used[r]) continue;
            for (size_t c = 0; c < cols; ++c)
                if (!known_zero(rows[r][c]) && rows[r][c].valuation() < best) {
                    best = rows[r][c].valuation();
                    pr = r;
                    pc = c;
                }
        }
        if (best == kExact) break;
        const HLaurent piv = rows[pr][pc];
        if (!piv.coeff(best).is_unit())
            throw DomainError("laurent_rank: pivot with nilpotent leading coefficient (ring splitting needed)");
        HLaurent pinv = inv_entry(piv, best + rel_prec);
        used[pr] = true;
        ++rank;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (used[r] || known_zero(rows[r][pc])) continue;
            HLaurent f = rows[r][pc].with_floor(kNoFloor) * pinv;
            for (size_t c = 0; c < cols; ++c)
                if (!known_zero(rows[pr][c])) rows[r][c] = rows[r][c].with_floor(kNoFloor) - f * rows[pr][c];
            rows[r][pc] = HLaurent(rows[r][pc].ring());
        }
    }
    return rank;
}

RankReport basis_rank_check(int p, int n) {
    auto R = CoeffRing::make(p, {});
    auto alg = WeylAlgebra::make(p, n, Flavor::Standard, R);
    std::vector<std::vector<HLaurent>> rows;
    for (uint64_t mono : alg->basis()) {
        LaurentMatrix m = rep(WeylElem::monomial(alg, mono, CRElem(R, 1)));
        std::vector<HLaurent> row;
        for (size_t i = 0; i < m.size(); ++i)
            for (size_t j = 0; j < m.size(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    RankReport r;
    r.expected = rows.size();
    r.rank = laurent_rank(std::move(rows), 2 * p);
    return r;
}

int omega_entry(int n, int v, int w) {
    // ω = Σ dy_i ∧ dx_i: ω(e_{x_i}, e_{y_i}) = -1, ω(e_{y_i}, e_{x_i}) = 1.
    if (v < n && w == v + n) return -1;
    if (v >= n && w == v - n) return 1;
    return 0;
}

HLaurent heisenberg_pairing(const WeylPtr& alg, int v, int w) {
    const int n = alg->n();
    if (v < 0 || w < 0 || v >= 2 * n || w >= 2 * n) throw DomainError("heisenberg_pairing: direction out of range");
    WeylElem lv = WeylElem::gen(alg, v).shifted(-1);
    WeylElem lw = WeylElem::gen(alg, w).shifted(-1);
    WeylElem c = commutator(lw, lv);
    if (!c.is_scalar()) throw DomainError("heisenberg_pairing: bracket is not central");
    return c.coefficient(0);
}

// ---------------------------------------------------------------------------

namespace {

using Mat = std::vector<std::vector<HLaurent>>;

Mat to_rows(const LaurentMatrix& m) {
    Mat r(m.size(), std::vector<HLaurent>(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j) r[i][j] = m.at(i, j).with_floor(kNoFloor);
    return r;
}

LaurentMatrix from_rows(const RingPtr& R, const Mat& r) {
    LaurentMatrix m(R, r.size());
    for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = 0; j < r.size(); ++j) m.at(i, j) = r[i][j];
    return m;
}

// Split of a unit Laurent series over F_p: u = c h^v (1 + ...); returns leading data.
void require_field_entry(const HLaurent& x) {
    if (x.ring()->ngens() != 0) throw DomainError("lattice: expected coefficients in F_p");
}

// The part of x with exponent >= e, divided by h^e.
HLaurent high_part(const HLaurent& x, int e) {
    HLaurent q(x.ring(), kNoFloor, x.exact() ? kExact : x.precision() - e);
    for (const auto& [i, c] : x.coeffs())
        if (i >= e) q.set(i - e, c);
    return q;
}

}  // namespace

Lattice lattice_from_columns(const LaurentMatrix& b, int prec) {
    const size_t d = b.size();
    const RingPtr& R = b.ring();
    Mat m = to_rows(b);
    for (auto& row : m)
        for (auto& e : row) {
            require_field_entry(e);
            e = e.truncated(prec);
        }
    // Column operations over k[[h]] to upper triangular form, bottom row first.
    std::vector<size_t> order(d);
    for (size_t k = 0; k < d; ++k) order[k] = k;
    for (size_t step = 0; step < d; ++step) {
        size_t row = d - 1 - step;
        size_t target = row;
        int best = kExact;
        size_t bc = d;
        for (size_t c = 0; c <= target; ++c)
            if (!m[row][c].is_zero() && m[row][c].valuation() < best) {
                best = m[row][c].valuation();
                bc = c;
            }
        if (bc == d) throw DomainError("lattice: columns do not span (singular matrix within precision)");
        if (bc != target)
            for (size_t r = 0; r < d; ++r) std::swap(m[r][bc], m[r][target]);
        HLaurent pinv = inv_entry(m[row][target], best + prec);
        for (size_t c = 0; c < target; ++c) {
            if (m[row][c].is_zero()) continue;
            HLaurent f = (m[row][c] * pinv).truncated(prec);
            for (size_t r = 0; r <= row; ++r) m[r][c] = (m[r][c] - f * m[r][target]).truncated(prec);
            m[row][c] = HLaurent(R, kNoFloor, prec);
        }
    }
    // Normalize each diagonal entry to h^{e} by a unit column scaling.
    std::vector<int> ex(d);
    for (size_t j = 0; j < d; ++j) {
        int v = m[j][j].valuation();
        ex[j] = v;
        HLaurent u = m[j][j].shifted(-v);
        HLaurent uinv = inv_entry(u, prec);
        for (size_t r = 0; r <= j; ++r) m[r][j] = (m[r][j] * uinv).truncated(prec);
        m[j][j] = HLaurent::monomial(CRElem(R, 1), v);
    }
    // Reduce entries right of the diagonal, last row first.
    for (size_t jj = d; jj-- > 0;)
        for (size_t k = jj + 1; k < d; ++k) {
            HLaurent q = high_part(m[jj][k], ex[jj]);
            if (q.is_zero()) continue;
            for (size_t r = 0; r <= jj; ++r) m[r][k] = (m[r][k] - q * m[r][jj]).truncated(prec);
        }
    Lattice l;
    l.basis = from_rows(R, m);
    l.M = std::max(0, -l.basis.valuation());
    int n = 0;
    for (size_t j = 0; j < d; ++j) n = std::max(n, ex[j]);
    LaurentMatrix inv = laurent_inverse(l.basis, prec);
    l.N = std::max(n, -inv.valuation());
    return l;
}

Lattice lattice_from_universal_matrix(const LaurentMatrix& a, int prec) {
    const size_t d = a.size();
    const RingPtr& OG = a.ring();
    auto F = CoeffRing::make(OG->p(), {});
    // Split A = Σ_k g^k A_k along CR monomials.
    std::map<uint64_t, Mat> parts;
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            for (const auto& [k, c] : a.at(i, j).coeffs())
                for (const auto& t : c.terms()) {
                    auto it = parts.find(t.m);
                    if (it == parts.end())
                        it = parts.emplace(t.m, Mat(d, std::vector<HLaurent>(d, HLaurent(F, kNoFloor, prec)))).first;
                    it->second[i][j].add_to(k, CRElem(F, t.c));
                }
    Mat m;
    for (auto& [k, part] : parts)
        for (auto& row : part) m.push_back(row);
    // Integral row operations: T upper triangular with Λ = T^{-1} O^d.
    for (size_t j = 0; j < d; ++j) {
        int best = kExact;
        size_t br = m.size();
        for (size_t r = j; r < m.size(); ++r)
            if (!m[r][j].is_zero() && m[r][j].valuation() < best) {
                best = m[r][j].valuation();
                br = r;
            }
        if (br == m.size()) throw DomainError("lattice_from_universal_matrix: matrix is not invertible");
        std::swap(m[j], m[br]);
        HLaurent pinv = inv_entry(m[j][j], best + prec);
        for (size_t r = j + 1; r < m.size(); ++r) {
            if (m[r][j].is_zero()) continue;
            HLaurent f = (m[r][j] * pinv).truncated(prec);
            for (size_t c = j; c < d; ++c) m[r][c] = (m[r][c] - f * m[j][c]).truncated(prec);
            m[r][j] = HLaurent(F, kNoFloor, prec);
        }
    }
    Mat t(m.begin(), m.begin() + static_cast<long>(d));
    LaurentMatrix binv = laurent_inverse(from_rows(F, t), prec);
    return lattice_from_columns(binv, prec);
}

LaurentMatrix laurent_inverse(const LaurentMatrix& in, int prec) {
    const size_t d = in.size();
    const RingPtr& R = in.ring();
    Mat m = to_rows(in);
    Mat inv = to_rows(LaurentMatrix::identity(R, d));
    for (size_t j = 0; j < d; ++j) {
        // Pivot: an entry with a unit coefficient at the lowest possible index.
        size_t br = d;
        int best = kExact;
        for (size_t r = j; r < d; ++r)
            for (const auto& [i, c] : m[r][j].coeffs())
                if (c.is_unit()) {
                    if (i < best) {
                        best = i;
                        br = r;
                    }
                    break;
                }
        if (br == d) throw DomainError("laurent_inverse: matrix is not invertible");
        std::swap(m[j], m[br]);
        std::swap(inv[j], inv[br]);
        HLaurent pinv = inv_entry(m[j][j], prec);
        for (size_t c = 0; c < d; ++c) {
            m[j][c] = (m[j][c] * pinv).truncated(prec);
            inv[j][c] = (inv[j][c] * pinv).truncated(prec);
        }
        for (size_t r = 0; r < d; ++r) {
            if (r == j || m[r][j].is_zero()) continue;
            HLaurent f = m[r][j];
            for (size_t c = 0; c < d; ++c) {
                m[r][c] = (m[r][c] - f * m[j][c]).truncated(prec);
                inv[r][c] = (inv[r][c] - f * inv[j][c]).truncated(prec);
            }
        }
    }
    return from_rows(R, inv);
}

LatticeReport check_lattice(const Lattice& l, const LaurentMatrix& a, int prec) {
    LatticeReport rep;
    std::ostringstream os;
    const LaurentMatrix& b = l.basis;
    rep.upper_bound = b.valuation() >= -l.M;
    LaurentMatrix binv = laurent_inverse(b, prec);
    rep.lower_bound = binv.valuation() >= -l.N;
    CRHom inc = ring_inclusion(b.ring(), a.ring());
    LaurentMatrix bb = b.mapped(inc), bbinv = binv.mapped(inc);
    LaurentMatrix ab = (a * bb).truncated(prec);
    rep.defining = ab.valuation() >= 0;
    LaurentMatrix conj = (bbinv * ab).truncated(prec);
    rep.invariant = conj.valuation() >= 0;
    auto F = CoeffRing::make(a.ring()->p(), {});
    CRHom at_identity(a.ring(), F, std::vector<CRElem>(a.ring()->ngens(), CRElem(F)));
    rep.group_case = a.mapped(at_identity) == LaurentMatrix::identity(F, a.size());
    os << "M=" << l.M << " N=" << l.N << " min val of A B = " << ab.valuation()
       << " min val of B^-1 A B = " << conj.valuation() << (rep.group_case ? "" : " (A(e) != Id: invariance not applicable)");
    rep.detail = os.str();
    return rep;
}

bool universal_matrix_is_multiplicative(const LaurentMatrix& a) {
    const RingPtr& R = a.ring();
    std::vector<std::string> names = R->names();
    std::vector<int> caps = R->caps();
    for (int i = 0; i < R->ngens(); ++i) {
        names.push_back(R->name(i) + "'");
        caps.push_back(R->cap(i));
    }
    auto D = CoeffRing::make(R->p(), names, caps);
    const int k = R->ngens();
    std::vector<CRElem> first, second, sum;
    for (int i = 0; i < k; ++i) {
        first.push_back(CRElem::gen(D, i));
        second.push_back(CRElem::gen(D, k + i));
        sum.push_back(CRElem::gen(D, i) + CRElem::gen(D, k + i));
    }
    LaurentMatrix a1 = a.mapped(CRHom(R, D, first));
    LaurentMatrix a2 = a.mapped(CRHom(R, D, second));
    LaurentMatrix a12 = a.mapped(CRHom(R, D, sum));
    return a1 * a2 == a12;
}

}  // namespace fcq
