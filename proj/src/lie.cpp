#include "fcq/lie.hpp"

#include <random>

#include "fcq/linalg.hpp"

namespace fcq {

A0Ptr a0_over_fp(int p, int n) { return A0Space::make(p, n, CoeffRing::make(p, {})); }

GradedPiece::GradedPiece(A0Ptr sp, int l) : sp_(std::move(sp)), l_(l) {
    for (size_t i = 0; i < sp_->dim(); ++i)
        if (sp_->degree(i) == l) idx_.push_back(i);
}

A0Elem GradedPiece::embed(const FpVec& v) const {
    A0Elem f(sp_);
    for (size_t k = 0; k < idx_.size(); ++k)
        if (v[k]) f[idx_[k]] = CRElem(sp_->ring(), v[k]);
    return f;
}

FpVec GradedPiece::project(const A0Elem& f) const {
    FpVec v(idx_.size());
    for (size_t k = 0; k < idx_.size(); ++k) v[k] = f[idx_[k]].constant_term();
    return v;
}

FpVec GradedPiece::action_matrix(const A0Elem& X) const {
    const size_t d = dim();
    FpVec m(d * d, 0);
    for (size_t c = 0; c < d; ++c) {
        FpVec e(d, 0);
        e[c] = 1;
        FpVec col = sp_action(*this, X, e);
        for (size_t r = 0; r < d; ++r) m[r * d + c] = col[r];
    }
    return m;
}

FpVec sp_action(const GradedPiece& piece, const A0Elem& X, const FpVec& v) {
    return piece.project(poisson_bracket(X, piece.embed(v)));
}

std::vector<A0Elem> sp_basis(const A0Ptr& sp) {
    std::vector<A0Elem> b;
    for (size_t i = 0; i < sp->dim(); ++i)
        if (sp->degree(i) == 2) b.push_back(A0Elem::monomial(sp, i, CRElem(sp->ring(), 1)));
    return b;
}

namespace {

FpVec matmul(const FpVec& a, const FpVec& b, size_t d, int p) {
    FpVec c(d * d, 0);
    for (size_t i = 0; i < d; ++i)
        for (size_t k = 0; k < d; ++k) {
            uint64_t aik = a[i * d + k];
            if (!aik) continue;
            for (size_t j = 0; j < d; ++j) c[i * d + j] = static_cast<uint32_t>((c[i * d + j] + aik * b[k * d + j]) % p);
        }
    return c;
}

FpVec to_vec(const A0Elem& f) {
    FpVec v(f.space()->dim());
    for (size_t i = 0; i < v.size(); ++i) v[i] = f[i].constant_term();
    return v;
}

}  // namespace

size_t envelope_dimension(int p, int n, int l) {
    auto sp = a0_over_fp(p, n);
    GradedPiece piece(sp, l);
    const size_t d = piece.dim();
    if (d == 0) return 0;
    std::vector<FpVec> gens;
    for (const auto& X : sp_basis(sp)) gens.push_back(piece.action_matrix(X));
    FpVec id(d * d, 0);
    for (size_t i = 0; i < d; ++i) id[i * d + i] = 1;
    FpBasis env(p, d * d);
    env.insert(id);
    std::vector<FpVec> frontier{id};
    // Spin up: left multiplication by generators until no new directions appear.
    for (size_t round = 0; !frontier.empty(); ++round) {
        if (round > d * d) throw DomainError("envelope_dimension: spin-up did not stabilize");
        std::vector<FpVec> next;
        for (const auto& m : frontier)
            for (const auto& g : gens) {
                FpVec prod = matmul(g, m, d, p);
                if (env.insert(prod)) next.push_back(prod);
            }
        frontier = std::move(next);
    }
    return env.size();
}

bool irreducibility_check(int p, int n, int l) {
    auto sp = a0_over_fp(p, n);
    size_t d = GradedPiece(sp, l).dim();
    return d > 0 && envelope_dimension(p, n, l) == d * d;
}

SpanReport commutator_span(int p, int n) {
    auto sp = a0_over_fp(p, n);
    const int top = 2 * n * (p - 1);
    SpanReport r;
    std::vector<size_t> m2;
    for (size_t i = 0; i < sp->dim(); ++i) {
        int deg = sp->degree(i);
        if (deg >= 2) m2.push_back(i);
        if (deg >= 2 && deg < top) ++r.expected;
    }
    r.m2_dim = m2.size();
    FpBasis span(p, sp->dim());
    r.graded = true;
    for (size_t a = 0; a < m2.size(); ++a)
        for (size_t b = a + 1; b < m2.size(); ++b) {
            A0Elem f = A0Elem::monomial(sp, m2[a], CRElem(sp->ring(), 1));
            A0Elem g = A0Elem::monomial(sp, m2[b], CRElem(sp->ring(), 1));
            FpVec v = to_vec(poisson_bracket(f, g));
            for (size_t i = 0; i < v.size(); ++i)
                if (v[i] && (sp->degree(i) < 2 || sp->degree(i) >= top)) r.graded = false;
            span.insert(v);
        }
    r.rank = span.size();
    return r;
}

bool generation_check(int p, int n, const A0Elem& z) {
    auto sp = z.space();
    if (z.is_zero()) return false;
    std::vector<A0Elem> gens = sp_basis(sp);
    gens.push_back(z);
    FpBasis lie(p, sp->dim());
    std::vector<A0Elem> frontier;
    for (const auto& g : gens)
        if (lie.insert(to_vec(g))) frontier.push_back(g);
    const size_t cap = sp->dim();
    for (size_t round = 0; !frontier.empty(); ++round) {
        if (round > cap) throw DomainError("generation_check: closure did not stabilize");
        std::vector<A0Elem> next;
        for (const auto& f : frontier)
            for (const auto& g : gens) {
                A0Elem b = poisson_bracket(g, f);
                if (lie.insert(to_vec(b))) next.push_back(b);
            }
        frontier = std::move(next);
    }
    SpanReport target = commutator_span(p, n);
    if (lie.size() != target.rank) return false;
    // Same dimension; containment in the graded description finishes the comparison.
    const int top = 2 * n * (p - 1);
    for (const auto& row : lie.rows())
        for (size_t i = 0; i < row.size(); ++i)
            if (row[i] && (sp->degree(i) < 2 || sp->degree(i) >= top)) return false;
    return true;
}

// ---------------------------------------------------------------------------

FpVec StructLie::bracket(const FpVec& a, const FpVec& b) const {
    FpVec r(dim, 0);
    for (size_t i = 0; i < dim; ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < dim; ++j) {
            if (!b[j]) continue;
            uint64_t c = static_cast<uint64_t>(a[i]) * b[j] % p;
            const FpVec& t = table[i * dim + j];
            for (size_t k = 0; k < dim; ++k)
                if (t[k]) r[k] = static_cast<uint32_t>((r[k] + c * t[k]) % p);
        }
    }
    return r;
}

bool StructLie::satisfies_jacobi() const {
    auto e = [&](size_t i) {
        FpVec v(dim, 0);
        v[i] = 1;
        return v;
    };
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) {
            FpVec s = bracket(e(i), e(j)), t = bracket(e(j), e(i));
            for (size_t k = 0; k < dim; ++k)
                if ((s[k] + t[k]) % p) return false;
            for (size_t k = 0; k < dim; ++k) {
                FpVec a = bracket(e(i), bracket(e(j), e(k)));
                FpVec b = bracket(e(j), bracket(e(k), e(i)));
                FpVec c = bracket(e(k), bracket(e(i), e(j)));
                for (size_t q = 0; q < dim; ++q)
                    if ((a[q] + b[q] + c[q]) % p) return false;
            }
        }
    return true;
}

StructLie central_extension(int p, int n, uint32_t scale) {
    StructLie L;
    L.p = p;
    L.dim = 2 * n + 1;
    L.table.assign(L.dim * L.dim, FpVec(L.dim, 0));
    const size_t c = 2 * n;
    for (int i = 0; i < n; ++i) {
        // ω(x_i, y_i) = 1 on the basis x_1..x_n, y_1..y_n.
        L.table[i * L.dim + (n + i)][c] = scale % p;
        L.table[(n + i) * L.dim + i][c] = fp_neg(scale % p, p);
    }
    return L;
}

StructLie sl2(int p) {
    StructLie L;
    L.p = p;
    L.dim = 3;  // e, f, hh
    L.table.assign(9, FpVec(3, 0));
    auto set = [&](size_t i, size_t j, size_t k, long long c) {
        L.table[i * 3 + j][k] = fp_norm(c, p);
        L.table[j * 3 + i][k] = fp_norm(-c, p);
    };
    set(0, 1, 2, 1);   // [e, f] = hh
    set(2, 0, 0, 2);   // [hh, e] = 2e
    set(2, 1, 1, -2);  // [hh, f] = -2f
    return L;
}

std::vector<FpVec> jacobson_si(const StructLie& L, const FpVec& X, const FpVec& Y) {
    const int p = L.p;
    // poly[k] = coefficient of t^k in ad(tX + Y)^j (X).
    std::vector<FpVec> poly{X};
    for (int j = 0; j < p - 1; ++j) {
        std::vector<FpVec> next(poly.size() + 1, FpVec(L.dim, 0));
        for (size_t k = 0; k < poly.size(); ++k) {
            FpVec a = L.bracket(X, poly[k]), b = L.bracket(Y, poly[k]);
            for (size_t q = 0; q < L.dim; ++q) {
                next[k + 1][q] = (next[k + 1][q] + a[q]) % p;
                next[k][q] = (next[k][q] + b[q]) % p;
            }
        }
        poly = std::move(next);
    }
    std::vector<FpVec> s;
    for (int i = 1; i < p; ++i) {
        FpVec v = poly[i - 1];
        uint32_t inv = fp_inv(static_cast<uint32_t>(i), p);
        for (auto& c : v) c = static_cast<uint32_t>(static_cast<uint64_t>(c) * inv % p);
        s.push_back(v);
    }
    return s;
}

// ---------------------------------------------------------------------------

A0Elem moment_lift(const A0Ptr& flat, const A0Elem& f) {
    const A0Ptr& sp = f.space();
    const int n = sp->n();
    if (!flat->flat() || flat->n() != n) throw DomainError("moment_lift: target must be the flat layout");
    // Standard monomials sit inside the flat space on the same x, y digits.
    auto embed = [&](const A0Elem& g) {
        A0Elem r(flat);
        for (size_t idx = 0; idx < sp->dim(); ++idx) {
            if (g[idx].is_zero()) continue;
            size_t t = 0;
            for (int j = 0; j < sp->m(); ++j) t += sp->digit(idx, j) * flat->stride(j);
            r[t] = g[idx];
        }
        return r;
    };
    A0Elem r = embed(f);
    for (int i = 0; i < n; ++i) {
        A0Elem a = -f.partial(sp->y(i));  // H_f(x_i)
        A0Elem b = f.partial(sp->x(i));   // H_f(y_i)
        // η = Σ y_i dx_i, so η(H_f) = Σ y_i a_i.
        r += embed(A0Elem::coord(sp, sp->y(i)) * a);
        r += embed(a) * A0Elem::coord(flat, 2 * n + i);
        r += embed(b) * A0Elem::coord(flat, 3 * n + i);
    }
    return r;
}

namespace {

A0Elem random_elem(const A0Ptr& sp, std::mt19937_64& rng, int terms) {
    std::uniform_int_distribution<size_t> pick(0, sp->dim() - 1);
    std::uniform_int_distribution<int> coef(1, sp->p() - 1);
    A0Elem f(sp);
    for (int k = 0; k < terms; ++k) f[pick(rng)] += CRElem(sp->ring(), coef(rng));
    return f;
}

bool equal_mod_constants(A0Elem a, A0Elem b) {
    a[0] = CRElem(a.space()->ring());
    b[0] = CRElem(b.space()->ring());
    return a == b;
}

}  // namespace

Verdict moment_lift_check(int p, int n, int pairs, uint64_t seed) {
    auto R = CoeffRing::make(p, {});
    auto sp = A0Space::make(p, n, R), flat = A0Space::make(p, n, R, true);
    std::vector<std::pair<A0Elem, A0Elem>> cases;
    for (int a = 0; a < sp->m(); ++a)
        for (int b = 0; b < sp->m(); ++b) cases.emplace_back(A0Elem::coord(sp, a), A0Elem::coord(sp, b));
    std::mt19937_64 rng(seed);
    for (int k = 0; k < pairs; ++k) cases.emplace_back(random_elem(sp, rng, 4), random_elem(sp, rng, 4));
    for (const auto& [f, g] : cases) {
        A0Elem lhs = poisson_bracket(moment_lift(flat, f), moment_lift(flat, g));
        A0Elem rhs = moment_lift(flat, poisson_bracket(f, g));
        if (!equal_mod_constants(lhs, rhs))
            return Verdict::fail("f = " + f.to_string() + ", g = " + g.to_string() + ": " + lhs.to_string() + " vs " +
                                 rhs.to_string());
    }
    A0Elem c = A0Elem::constant(sp, 1);
    if (moment_lift(flat, c) != A0Elem::constant(flat, 1)) return Verdict::fail("lift of a constant is not constant");
    return Verdict::ok(std::to_string(cases.size()) + " pairs");
}

Verdict poisson_lie_model_check(int p, int n, int triples, uint64_t seed) {
    auto sp = a0_over_fp(p, n);
    std::mt19937_64 rng(seed);
    for (int k = 0; k < triples; ++k) {
        A0Elem f = random_elem(sp, rng, 5), g = random_elem(sp, rng, 5), h = random_elem(sp, rng, 5);
        A0Elem j = poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f)) +
                   poisson_bracket(h, poisson_bracket(f, g));
        if (!j.is_zero()) return Verdict::fail("Jacobi fails for " + f.to_string() + ", " + g.to_string() + ", " + h.to_string());
        if (!poisson_bracket(A0Elem::constant(sp, 1), f).is_zero()) return Verdict::fail("constants act nontrivially");
    }
    return Verdict::ok();
}

}  // namespace fcq
