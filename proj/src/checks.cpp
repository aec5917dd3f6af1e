#include "fcq/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "fcq/autgrp.hpp"
#include "fcq/diffops.hpp"
#include "fcq/heisenberg.hpp"
#include "fcq/lie.hpp"
#include "fcq/matrep.hpp"

namespace fcq {

Window SuiteConfig::window() const {
    Window w = default_window(p, n);
    if (floor) w.floor = *floor;
    if (precision) w.precision = *precision;
    return w;
}

void validate_config(const SuiteConfig& cfg) {
    if (!supported_prime(cfg.p)) throw ConfigError("p must be one of 3, 5, 7; got " + std::to_string(cfg.p));
    if (cfg.n < 1) throw ConfigError("n must be positive; got " + std::to_string(cfg.n));
    double size = std::pow(static_cast<double>(cfg.p), 4.0 * cfg.n);
    if (size > 1e6)
        throw ConfigError("memory guard: p^(4n) = " + std::to_string(static_cast<long long>(size)) + " exceeds 10^6");
    if (cfg.precision && *cfg.precision < 1) throw ConfigError("precision must be positive");
    if (cfg.floor && *cfg.floor > 0) throw ConfigError("floor must be <= 0");
}

const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        default: return "error";
    }
}

namespace {

using Rng = std::mt19937_64;

Rng rng_for(const SuiteConfig& cfg, const std::string& salt) {
    std::seed_seq seq{static_cast<uint32_t>(cfg.seed), static_cast<uint32_t>(cfg.seed >> 32),
                      static_cast<uint32_t>(std::hash<std::string>{}(salt))};
    return Rng(seq);
}

uint32_t rand_fp(Rng& rng, int p, bool nonzero = false) {
    if (nonzero) return 1 + static_cast<uint32_t>(rng() % (p - 1));
    return static_cast<uint32_t>(rng() % p);
}

/// Random F_p-combination of the generators (a nilpotent element of degree 1).
CRElem rand_linear(const RingPtr& R, Rng& rng) {
    CRElem c(R);
    for (int i = 0; i < R->ngens(); ++i) c += CRElem::gen(R, i).scaled(rand_fp(rng, R->p()));
    return c;
}

/// Random element with a few monomials; nilpotent when `nil` is set.
CRElem rand_cr(const RingPtr& R, Rng& rng, bool nil, int terms = 3) {
    auto monos = R->monomials();
    CRElem c(R);
    for (int k = 0; k < terms; ++k) {
        uint64_t m = monos[rng() % monos.size()];
        if (nil && m == 0) continue;
        c += CRElem::monomial(R, m, rand_fp(rng, R->p()));
    }
    return c;
}

WeylElem rand_weyl(const WeylPtr& alg, Rng& rng, int terms = 4, int kmin = -1, int kmax = 1) {
    auto basis = alg->basis();
    WeylElem a(alg);
    for (int t = 0; t < terms; ++t) {
        uint64_t m = basis[rng() % basis.size()];
        int k = kmin + static_cast<int>(rng() % (kmax - kmin + 1));
        a += WeylElem::monomial(alg, m, CRElem(alg->ring(), rand_fp(rng, alg->p(), true)), k);
    }
    return a;
}

std::string params_of(int p, int n) { return "p=" + std::to_string(p) + " n=" + std::to_string(n); }

/// Heavy sweeps stay at desk scale.
bool small(const SuiteConfig& c) { return std::pow(c.p, 2 * c.n) <= 81; }
bool any(const SuiteConfig&) { return true; }
/// Universal identities whose coefficient rings stay manageable.
bool universal_ok(const SuiteConfig& c) { return c.n == 1 || (c.p == 3 && c.n == 2); }

Verdict mismatch(const std::string& what, const std::string& a, const std::string& b) {
    return Verdict::fail(what + ": " + a + " != " + b);
}

RingPtr fp_ring(int p) { return CoeffRing::make(p, std::vector<std::string>{}); }

// ---------------------------------------------------------------- c01

Verdict c01_relations(const SuiteConfig& cfg) {
    Verdict v = Verdict::ok();
    int checked = 0;
    for (Flavor fl : {Flavor::Standard, Flavor::Flat}) {
        auto alg = WeylAlgebra::make(cfg.p, cfg.n, fl, fp_ring(cfg.p), cfg.window());
        const int n = cfg.n, g = alg->ngens();
        auto expected = [&](int a, int b) -> int {
            // Coefficient of h in [gen_a, gen_b].
            if (fl == Flavor::Standard) {
                if (a < n && b == a + n) return 1;
                if (b < n && a == b + n) return -1;
                return 0;
            }
            int ta = a / n, tb = b / n, ia = a % n, ib = b % n;
            if (ia != ib) return 0;
            if ((ta == 2 && tb == 0) || (ta == 3 && tb == 1)) return 1;
            if ((ta == 0 && tb == 2) || (ta == 1 && tb == 3)) return -1;
            return 0;
        };
        for (int a = 0; a < g; ++a) {
            WeylElem ga = WeylElem::gen(alg, a);
            if (!ga.pow(cfg.p).is_zero()) return Verdict::fail(alg->gen_name(a) + "^p != 0");
            for (int b = 0; b < g; ++b) {
                WeylElem c = commutator(ga, WeylElem::gen(alg, b));
                WeylElem e = WeylElem::h_power(alg, 1).scaled(fp_norm(expected(a, b), cfg.p));
                if (c != e)
                    return mismatch("[" + alg->gen_name(a) + "," + alg->gen_name(b) + "]", c.to_string(), e.to_string());
                ++checked;
            }
        }
        Rng rng = rng_for(cfg, "assoc");
        for (int t = 0; t < 20; ++t) {
            WeylElem a = rand_weyl(alg, rng, 3, 0, 1), b = rand_weyl(alg, rng, 3, 0, 1), c = rand_weyl(alg, rng, 3, 0, 1);
            if ((a * b) * c != a * (b * c)) return Verdict::fail("associativity fails on " + a.to_string());
        }
    }
    v.witness = std::to_string(checked) + " generator pairs, 40 associativity triples";
    return v;
}

Verdict c01_quantization(const SuiteConfig& cfg) {
    auto R = fp_ring(cfg.p);
    auto alg = WeylAlgebra::make(cfg.p, cfg.n, Flavor::Standard, R, cfg.window());
    auto sp = A0Space::make(cfg.p, cfg.n, R);
    std::vector<A0Elem> mon;
    std::vector<WeylElem> lifts;
    for (size_t i = 0; i < sp->dim(); ++i) {
        mon.push_back(A0Elem::monomial(sp, i, CRElem(R, 1)));
        lifts.push_back(lift(alg, mon.back()));
    }
    std::vector<std::pair<size_t, size_t>> pairs;
    if (mon.size() * mon.size() <= 10000) {
        for (size_t i = 0; i < mon.size(); ++i)
            for (size_t j = 0; j < mon.size(); ++j) pairs.emplace_back(i, j);
    } else {
        Rng rng = rng_for(cfg, "quant");
        for (int t = 0; t < 2000; ++t) pairs.emplace_back(rng() % mon.size(), rng() % mon.size());
    }
    for (auto [i, j] : pairs) {
        WeylElem c = commutator(lifts[i], lifts[j]);
        if (c.valuation() < 1) return Verdict::fail("[lift f, lift g] not divisible by h for f=" + mon[i].to_string());
        A0Elem s = symbol(c.shifted(-1).truncated(1), sp);
        A0Elem b = poisson_bracket(mon[i], mon[j]);
        if (s != b) return mismatch("{" + mon[i].to_string() + ", " + mon[j].to_string() + "}", s.to_string(), b.to_string());
    }
    return Verdict::ok(std::to_string(pairs.size()) + " basis pairs");
}

// ---------------------------------------------------------------- c02

Verdict c02_rep(const SuiteConfig& cfg) {
    auto alg = WeylAlgebra::make(cfg.p, cfg.n, Flavor::Standard, fp_ring(cfg.p), cfg.window());
    std::vector<std::pair<WeylElem, WeylElem>> pairs;
    if (cfg.n == 1) {
        auto basis = alg->basis();
        for (auto a : basis)
            for (auto b : basis)
                pairs.emplace_back(WeylElem::monomial(alg, a, CRElem(alg->ring(), 1)),
                                   WeylElem::monomial(alg, b, CRElem(alg->ring(), 1)));
    } else {
        Rng rng = rng_for(cfg, "rep");
        for (int t = 0; t < 200; ++t) pairs.emplace_back(rand_weyl(alg, rng), rand_weyl(alg, rng));
    }
    for (const auto& [a, b] : pairs) {
        LaurentMatrix l = rep(a * b), r = rep(a) * rep(b);
        if (l != r) return mismatch("rep(" + a.to_string() + " * " + b.to_string() + ")", l.to_string(), r.to_string());
    }
    return Verdict::ok(std::to_string(pairs.size()) + " pairs");
}

Verdict c02_rank(const SuiteConfig& cfg) {
    RankReport r = basis_rank_check(cfg.p, cfg.n);
    std::string w = "rank " + std::to_string(r.rank) + " of " + std::to_string(r.expected);
    return r.full() ? Verdict::ok(w) : Verdict::fail(w);
}

Verdict c02_det(const SuiteConfig& cfg) {
    // Units 1 + (nilpotent-free perturbation) keep the determinant invertible.
    auto alg = WeylAlgebra::make(cfg.p, cfg.n, Flavor::Standard, fp_ring(cfg.p), cfg.window());
    Rng rng = rng_for(cfg, "det");
    int tested = 0;
    for (int t = 0; t < 50; ++t) {
        WeylElem a = WeylElem::scalar(alg, 1) + rand_weyl(alg, rng, 3, 1, 2);
        WeylElem b = WeylElem::scalar(alg, 1) + rand_weyl(alg, rng, 3, -1, 1);
        HLaurent l = det_series(rep(a * b)), r = det_series(rep(a)) * det_series(rep(b));
        if (l != r) return mismatch("det(rep(ab))", l.to_string(), r.to_string());
        ++tested;
    }
    return Verdict::ok(std::to_string(tested) + " pairs");
}

// ---------------------------------------------------------------- c03

Verdict c03_restricted(const SuiteConfig& cfg) {
    const int p = cfg.p;
    auto R = fp_ring(p);
    auto alg = WeylAlgebra::make(p, cfg.n, Flavor::Standard, R, cfg.window());
    auto sp = A0Space::make(p, cfg.n, R);
    KForm eta = eta_canonical(sp);
    // Constants are excluded: c^p = c^p has no h^{p-1} factor.
    for (size_t i = 1; i < sp->dim(); ++i) {
        A0Elem f = A0Elem::monomial(sp, i, CRElem(R, 1));
        WeylElem P = lift(alg, f).pow(p);
        if (P.valuation() < p - 1) return Verdict::fail("lift(f)^p has valuation below p-1 for f=" + f.to_string());
        A0Elem g = symbol(P.shifted(-(p - 1)).truncated(1), sp);
        A0Elem r = restricted_power(f, eta);
        if (g != r) return mismatch("(" + f.to_string() + ")^[p]", g.to_string(), r.to_string());
    }
    if (p == 3) {
        A0Elem xy = A0Elem::coord(sp, sp->x(0)) * A0Elem::coord(sp, sp->y(0));
        A0Elem r = restricted_power(xy, eta);
        if (r != xy) return mismatch("(x1*y1)^[3]", r.to_string(), xy.to_string());
    }
    return Verdict::ok(std::to_string(sp->dim() - 1) + " nonconstant monomials");
}

Verdict c03_hamiltonian(const SuiteConfig& cfg) {
    // H_{f^[p]} = (H_f)^[p] on random f.
    auto R = fp_ring(cfg.p);
    auto sp = A0Space::make(cfg.p, cfg.n, R);
    KForm eta = eta_canonical(sp);
    Rng rng = rng_for(cfg, "ham");
    for (int t = 0; t < 20; ++t) {
        A0Elem f(sp);
        for (int k = 0; k < 4; ++k) f[rng() % sp->dim()] = CRElem(R, rand_fp(rng, cfg.p));
        if (!(hamiltonian(restricted_power(f, eta)) == vf_restricted_power(hamiltonian(f))))
            return Verdict::fail("H_{f^[p]} != (H_f)^[p] for f=" + f.to_string());
    }
    return Verdict::ok("20 random functions");
}

// ---------------------------------------------------------------- c04

Verdict c04_centrality(const SuiteConfig& cfg) {
    const int p = cfg.p, m = cfg.n;
    auto C = CoordRing::window(p, m, 3 * p);
    std::vector<DOp> funcs{DOp::scalar(C, 1)};
    for (int i = 0; i < m; ++i) {
        funcs.push_back(DOp::coord(C, i));
        for (int j = i; j < m; ++j) funcs.push_back(DOp::coord(C, i) * DOp::coord(C, j));
    }
    int count = 0;
    for (const auto& f : funcs) {
        if (!is_central(p_curvature(f))) return Verdict::fail("f^p not central for f=" + f.to_string());
        ++count;
        for (int i = 0; i < m; ++i) {
            DVField th;
            th.comp.assign(m, DOp(C));
            th.comp[i] = f;
            if (!is_central(p_curvature(th)))
                return Verdict::fail("p-curvature not central for " + f.to_string() + " d/dx" + std::to_string(i + 1));
            ++count;
        }
    }
    DVField mix;
    mix.comp.assign(m, DOp(C));
    for (int i = 0; i < m; ++i) mix.comp[i] = funcs[(i + 2) % funcs.size()] + funcs[1];
    if (!is_central(p_curvature(mix))) return Verdict::fail("p-curvature of a mixed field is not central");
    return Verdict::ok(std::to_string(count + 1) + " elements, window K=" + std::to_string(3 * p));
}

DOp rand_poly(const CoordPtr& C, Rng& rng, int deg) {
    DOp f(C);
    for (int t = 0; t < 4; ++t) {
        std::vector<int> xe(C->m, 0), de(C->m, 0);
        int d = 1 + static_cast<int>(rng() % deg);
        for (int k = 0; k < d; ++k) ++xe[rng() % C->m];
        f = f + DOp::term(C, xe, de, 0, rand_fp(rng, C->p, true));
    }
    return f;
}

/// Components of -df.
std::vector<DOp> minus_gradient(const DOp& f) {
    const CoordPtr& C = f.ring();
    std::vector<DOp> g;
    for (int i = 0; i < C->m; ++i) g.push_back(-dop_commutator(DOp::hdel(C, i), f).shifted(-1));
    return g;
}

Verdict c04_katz(const SuiteConfig& cfg) {
    const int p = cfg.p, m = cfg.n;
    auto C = CoordRing::window(p, m, 3 * p);
    Rng rng = rng_for(cfg, "katz");
    std::vector<DOp> zero(m, DOp(C));
    CentralReduction flat(C, zero);
    for (int t = 0; t < 30; ++t) {
        DOp f = rand_poly(C, rng, 3), g = rand_poly(C, rng, 3);
        if (!katz_identity(f)) return Verdict::fail("Katz identity fails for f=" + f.to_string());
        DOpMap fg = phi_mu(f).compose(phi_mu(g)), sum = phi_mu(f + g);
        for (int i = 0; i < m; ++i)
            if (fg.d_images()[i] != sum.d_images()[i] || fg.x_images()[i] != sum.x_images()[i])
                return mismatch("phi_df o phi_dg on d" + std::to_string(i + 1), fg.d_images()[i].to_string(),
                                sum.d_images()[i].to_string());
        // h d + h df satisfies (h d + h df)^p = h^p (df)^p, the relation of eta = -df.
        CentralReduction twisted(C, minus_gradient(f));
        if (!preserves_relations(phi_mu(f), flat, twisted))
            return Verdict::fail("phi_mu does not carry eta=0 to eta=-df for f=" + f.to_string());
    }
    return Verdict::ok("30 random exact forms");
}

Verdict c04_flat_iso(const SuiteConfig& cfg) {
    auto C = CoordRing::a0(cfg.p, cfg.n);
    auto flat = WeylAlgebra::make(cfg.p, cfg.n, Flavor::Flat, fp_ring(cfg.p), cfg.window());
    std::vector<DOp> zero(C->m, DOp(C));
    CentralReduction red(C, zero);
    const int g = flat->ngens();
    std::vector<WeylElem> gens;
    for (int a = 0; a < g; ++a) gens.push_back(WeylElem::gen(flat, a));
    int count = 0;
    for (int a = 0; a < g; ++a) {
        if (!red.reduce(flat_to_dop(C, gens[a].pow(cfg.p))).is_zero() ||
            !red.reduce(flat_to_dop(C, gens[a]).pow(cfg.p)).is_zero())
            return Verdict::fail("p-th power of " + flat->gen_name(a) + " survives the reduction");
        for (int b = 0; b < g; ++b) {
            DOp l = red.reduce(flat_to_dop(C, gens[a] * gens[b]));
            DOp r = red.mul(flat_to_dop(C, gens[a]), flat_to_dop(C, gens[b]));
            if (l != r) return mismatch(flat->gen_name(a) + "*" + flat->gen_name(b), l.to_string(), r.to_string());
            ++count;
        }
    }
    return Verdict::ok(std::to_string(count) + " generator pairs");
}

// ---------------------------------------------------------------- c05

AutA0 random_point(const A0Ptr& sp, Rng& rng, bool with_section) {
    const RingPtr& R = sp->ring();
    const int p = sp->p(), n = sp->n();
    int kind = static_cast<int>(rng() % (with_section ? 4 : 3));
    switch (kind) {
        case 0: return linear(sp, random_sp(p, n, rng));
        case 1: {
            std::vector<CRElem> e, d;
            for (int i = 0; i < n; ++i) {
                e.push_back(rand_linear(R, rng));
                d.push_back(rand_linear(R, rng));
            }
            return translation(sp, e, d);
        }
        case 2: return lambda_subgroup(sp, rand_linear(R, rng));
        default: return section_s(sp, rand_linear(R, rng));
    }
}

AutA0 random_word(const A0Ptr& sp, Rng& rng, bool with_section) {
    AutA0 g = random_point(sp, rng, with_section);
    if (rng() % 2) g = g * random_point(sp, rng, with_section);
    return g;
}

Verdict c05_psi(const SuiteConfig& cfg) {
    auto R = CoeffRing::make(cfg.p, {"t", "e", "d"});
    auto sp = A0Space::make(cfg.p, cfg.n, R);
    auto flat = WeylAlgebra::make(cfg.p, cfg.n, Flavor::Flat, R, cfg.window());
    Rng rng = rng_for(cfg, "psi");
    for (int t = 0; t < 20; ++t) {
        AutA0 g1 = random_word(sp, rng, false), g2 = random_word(sp, rng, false);
        WeylMap a = psi_action(flat, g1), b = psi_action(flat, g2), c = psi_action(flat, g1 * g2);
        WeylMap ab = a.compose(b);
        for (int i = 0; i < flat->ngens(); ++i)
            if (ab.images()[i] != c.images()[i])
                return mismatch("psi_{g1 g2}(" + flat->gen_name(i) + ")", c.images()[i].to_string(),
                                ab.images()[i].to_string());
        if (!is_flat_endomorphism(a)) return Verdict::fail("psi_g breaks the flat relations for g=" + g1.to_string());
    }
    return Verdict::ok("20 random pairs");
}

// ---------------------------------------------------------------- c06

Verdict c06_translation(const SuiteConfig& cfg) { return verify_translation_identity(cfg.p, cfg.n); }
Verdict c06_cubic(const SuiteConfig& cfg) { return verify_cubic_identity(cfg.p); }
Verdict c06_char3(const SuiteConfig&) { return verify_char3_identity(); }

Verdict c06_translates(const SuiteConfig& cfg) {
    std::vector<std::string> names;
    for (int i = 1; i <= cfg.n; ++i) names.push_back("eps" + std::to_string(i));
    for (int i = 1; i <= cfg.n; ++i) names.push_back("del" + std::to_string(i));
    auto R = CoeffRing::make(cfg.p, names);
    auto alg = WeylAlgebra::make(cfg.p, cfg.n, Flavor::Standard, R,
                                 Window{-R->ngens() * (cfg.p - 1) - 1, 2 * cfg.p});
    std::vector<CRElem> e, d;
    for (int i = 0; i < cfg.n; ++i) {
        e.push_back(CRElem::gen(R, i));
        d.push_back(CRElem::gen(R, cfg.n + i));
    }
    return verify_section_translates(alg, e, d);
}

Verdict c06_ad_exp(const SuiteConfig& cfg) {
    auto R = CoeffRing::make(cfg.p, {"tau"});
    auto alg = WeylAlgebra::make(cfg.p, cfg.n, Flavor::Standard, R, cfg.window());
    CRElem tau = CRElem::gen(R, 0);
    WeylElem x = WeylElem::gen(alg, 0);
    Verdict v = ad_exp_check(x, tau);
    v &= ad_exp_check(x.pow((cfg.p + 1) / 2), tau);
    if (v.pass) v.witness = "f = x1 and x1^" + std::to_string((cfg.p + 1) / 2);
    return v;
}

// ---------------------------------------------------------------- c07

Verdict c07_alpha(const SuiteConfig& cfg) { return verify_alpha_invariance(cfg.p, cfg.n); }
Verdict c07_lambda(const SuiteConfig& cfg) { return verify_lambda_invariance(cfg.p); }
Verdict c07_gauge(const SuiteConfig& cfg) { return verify_gauge_law(cfg.p, cfg.seed); }

// ---------------------------------------------------------------- c08

Verdict c08_span(const SuiteConfig& cfg) {
    SpanReport r = commutator_span(cfg.p, cfg.n);
    std::string w = "span " + std::to_string(r.rank) + "/" + std::to_string(r.m2_dim) + ", graded expectation " +
                    std::to_string(r.expected) + (r.graded ? "" : ", not graded as expected");
    return r.ok() ? Verdict::ok(w) : Verdict::fail(w);
}

Verdict c08_generation(const SuiteConfig& cfg) {
    auto sp = a0_over_fp(cfg.p, cfg.n);
    A0Elem x = A0Elem::coord(sp, sp->x(0)), y = A0Elem::coord(sp, sp->y(0));
    A0Elem z = cfg.p == 3 ? x * x * y : x * x * x;
    if (!generation_check(cfg.p, cfg.n, z)) return Verdict::fail("m^2/m^3 and " + z.to_string() + " do not generate");
    if (generation_check(cfg.p, cfg.n, A0Elem(sp))) return Verdict::fail("m^2/m^3 alone generates the span");
    return Verdict::ok("z = " + z.to_string() + "; z = 0 falls short");
}

Verdict c08_irreducibility(const SuiteConfig& cfg) {
    std::string w;
    for (int l = 0; l < 2 * (cfg.p - 1); ++l) {
        if (!irreducibility_check(cfg.p, cfg.n, l)) return Verdict::fail("m^" + std::to_string(l) + "/m^" + std::to_string(l + 1) + " reducible");
        w += (w.empty() ? "" : ",") + std::to_string(l);
    }
    return Verdict::ok("irreducible for l = " + w);
}

Verdict c08_jacobson(const SuiteConfig& cfg) {
    StructLie L = central_extension(cfg.p, cfg.n, 1);
    if (!L.satisfies_jacobi()) return Verdict::fail("central extension violates Jacobi");
    Rng rng = rng_for(cfg, "si");
    for (int t = 0; t < 10; ++t) {
        FpVec X(L.dim), Y(L.dim);
        for (auto& c : X) c = rand_fp(rng, cfg.p);
        for (auto& c : Y) c = rand_fp(rng, cfg.p);
        for (const auto& s : jacobson_si(L, X, Y))
            for (auto c : s)
                if (c) return Verdict::fail("nonzero s_i on the central extension");
    }
    StructLie S = sl2(cfg.p);
    bool nonzero = false;
    for (const auto& s : jacobson_si(S, {1, 0, 0}, {0, 1, 0}))
        for (auto c : s) nonzero = nonzero || c;
    if (!nonzero) return Verdict::fail("s_i vanish on sl2 (control case)");
    return Verdict::ok("s_i = 0 on 10 random pairs; sl2 control nonzero");
}

Verdict c08_moment(const SuiteConfig& cfg) { return moment_lift_check(cfg.p, cfg.n, 30, cfg.seed); }
Verdict c08_poisson_model(const SuiteConfig& cfg) { return poisson_lie_model_check(cfg.p, cfg.n, 20, cfg.seed); }

// ---------------------------------------------------------------- c09

Verdict c09_phi_additive(const SuiteConfig& cfg) {
    auto R = CoeffRing::make(cfg.p, {"a", "b", "c"});
    auto sp = A0Space::make(cfg.p, cfg.n, R);
    Rng rng = rng_for(cfg, "phi");
    for (int t = 0; t < 30; ++t) {
        AutA0 g1 = random_word(sp, rng, true), g2 = random_word(sp, rng, true);
        CRElem l = phi_Ga(g1 * g2), r = phi_Ga(g1) + phi_Ga(g2);
        if (l != r) return mismatch("phi(g1 g2) with g1=" + g1.to_string(), l.to_string(), r.to_string());
    }
    return Verdict::ok("30 random pairs");
}

Verdict c09_one_parameter(const SuiteConfig& cfg) {
    auto R = CoeffRing::make(cfg.p, {"t1", "t2"});
    auto sp = A0Space::make(cfg.p, cfg.n, R);
    CRElem t1 = CRElem::gen(R, 0), t2 = CRElem::gen(R, 1);
    if (!(section_s(sp, t1) * section_s(sp, t2) == section_s(sp, t1 + t2))) return Verdict::fail("s(t1)s(t2) != s(t1+t2)");
    if (!(lambda_subgroup(sp, t1) * lambda_subgroup(sp, t2) == lambda_subgroup(sp, t1 + t2)))
        return Verdict::fail("lambda(t1)lambda(t2) != lambda(t1+t2)");
    for (const AutA0& g : {section_s(sp, t1), lambda_subgroup(sp, t1)}) {
        Validation v = validate(g);
        if (!v.ok()) return Verdict::fail("one-parameter point rejected: " + v.detail);
    }
    return Verdict::ok("s and lambda over F_p[t1,t2]");
}

Verdict c09_rejects_scaling(const SuiteConfig& cfg) {
    auto sp = A0Space::make(cfg.p, cfg.n, fp_ring(cfg.p));
    Validation v = validate(scaling(sp, 2));
    if (v.ok()) return Verdict::fail("scaling y -> 2y accepted");
    if (v.symplectic) return Verdict::fail("scaling y -> 2y reported symplectic");
    return Verdict::ok("rejected: " + v.detail);
}

Verdict c09_phi_section(const SuiteConfig& cfg) {
    auto R = CoeffRing::make(cfg.p, {"t"});
    auto sp = A0Space::make(cfg.p, cfg.n, R);
    CRElem t = CRElem::gen(R, 0);
    uint32_t c = fp_mul(fp_mul(fp_norm(cfg.n + 1, cfg.p), fp_fact(cfg.n, cfg.p), cfg.p), fp_inv(2, cfg.p), cfg.p);
    CRElem got = phi_Ga(section_s(sp, t)), want = t.scaled(c);
    if (got != want) return mismatch("phi(s(t))", got.to_string(), want.to_string());
    return Verdict::ok("phi(s(t)) = " + got.to_string());
}

Verdict c09_lambda_differential(const SuiteConfig& cfg) {
    auto R = CoeffRing::make(cfg.p, {"t"});
    auto sp = A0Space::make(cfg.p, cfg.n, R);
    auto fsp = a0_over_fp(cfg.p, cfg.n);
    A0Elem x = A0Elem::coord(fsp, fsp->x(0)), y = A0Elem::coord(fsp, fsp->y(0));
    A0Elem f = cfg.p == 3 ? -(x * x * y) : x * x * x;
    VField got = differential_at_zero(lambda_subgroup(sp, CRElem::gen(R, 0)), 0);
    if (!(got == hamiltonian(f))) return Verdict::fail("d lambda/dt at 0 is not H_" + f.to_string());
    return Verdict::ok("H_" + f.to_string());
}

// ---------------------------------------------------------------- c10

Verdict c10_unit_roundtrip(const SuiteConfig& cfg) {
    const int p = cfg.p;
    auto R = CoeffRing::make(p, {"a", "b"});
    Rng rng = rng_for(cfg, "units");
    for (int t = 0; t < 100; ++t) {
        CRElem r = CRElem(R, rand_fp(rng, p, true)) + rand_cr(R, rng, true);
        HLaurent w = HLaurent::constant(R, 1);
        for (int i = 1; i <= 3; ++i) w.set(i, rand_cr(R, rng, false));
        int m = static_cast<int>(rng() % 5) - 2;
        HLaurent what = HLaurent::constant(R, 1);
        for (int i = 1; i <= 2; ++i) what.set(-i, rand_cr(R, rng, true));
        HLaurent u = (w.scaled(r) * what).shifted(m);
        if (!u.is_unit()) return Verdict::fail("constructed unit reported non-unit: " + u.to_string());
        UnitDecomposition d = unit_decompose(u);
        if (d.recombine() != u) return mismatch("recombine", d.recombine().to_string(), u.to_string());
        if (d.m != m || d.r != r || d.w != w || d.what != what)
            return Verdict::fail("decomposition not the constructed one for u=" + u.to_string());
        HLaurent inv = u.inverse(12);
        HLaurent one = (u * inv).truncated(8);
        if (one != HLaurent::constant(R, 1).truncated(8)) return Verdict::fail("u * u^-1 != 1 for u=" + u.to_string());
    }
    return Verdict::ok("100 random units");
}

/// Every element of a ring enumerated by coefficient vectors.
std::vector<CRElem> all_elements(const RingPtr& R) {
    auto monos = R->monomials();
    std::vector<CRElem> out{CRElem(R)};
    for (uint64_t m : monos) {
        std::vector<CRElem> next;
        for (const auto& e : out)
            for (int c = 0; c < R->p(); ++c) next.push_back(e + CRElem::monomial(R, m, c));
        out.swap(next);
    }
    return out;
}

Verdict c10_unit_bruteforce(const SuiteConfig&) {
    std::vector<RingPtr> rings{CoeffRing::make(3, {"a"}, {2}), CoeffRing::make(3, {"a"}, {3}),
                               CoeffRing::make(3, {"a", "b"}, {2, 2}), CoeffRing::make(3, {"a"}, {4}),
                               CoeffRing::make(5, {"a"}, {2}), CoeffRing::make(7, {"a"}, {2})};
    size_t total = 0;
    for (const auto& R : rings) {
        auto elems = all_elements(R);
        CRElem one(R, 1);
        for (const auto& u : elems) {
            bool found = false;
            for (const auto& v : elems)
                if (u * v == one) {
                    found = true;
                    break;
                }
            if (found != u.is_unit()) return Verdict::fail("unit criterion disagrees on " + u.to_string());
            ++total;
        }
    }
    return Verdict::ok(std::to_string(total) + " elements across " + std::to_string(rings.size()) + " rings");
}

Verdict c10_pairing(const SuiteConfig& cfg) {
    auto R = fp_ring(cfg.p);
    auto alg = WeylAlgebra::make(cfg.p, cfg.n, Flavor::Standard, R, cfg.window());
    for (int v = 0; v < 2 * cfg.n; ++v)
        for (int w = 0; w < 2 * cfg.n; ++w) {
            HLaurent got = heisenberg_pairing(alg, v, w);
            HLaurent want = HLaurent::monomial(CRElem(R, omega_entry(cfg.n, v, w)), -1);
            if (got != want)
                return mismatch("pairing(" + std::to_string(v) + "," + std::to_string(w) + ")", got.to_string(),
                                want.to_string());
        }
    return Verdict::ok("pairing = omega/h on all " + std::to_string(4 * cfg.n * cfg.n) + " entries");
}

Verdict check_example(const std::string& name, const LaurentMatrix& a, const Lattice* expected) {
    Lattice L = lattice_from_universal_matrix(a, 8);
    LatticeReport r = check_lattice(L, a, 8);
    if (!r.ok()) return Verdict::fail(name + ": " + r.detail);
    if (expected && !(L == *expected)) return mismatch(name, L.basis.to_string(), expected->basis.to_string());
    return Verdict::ok(name + " N=" + std::to_string(L.N) + " M=" + std::to_string(L.M));
}

Verdict c10_lattices(const SuiteConfig&) {
    auto F = fp_ring(3);
    Lattice id;
    id.basis = LaurentMatrix::identity(F, 3);
    Verdict v = check_example("identity", LaurentMatrix::identity(F, 3), &id);

    LaurentMatrix D(F, 2);
    D.at(0, 0) = HLaurent::monomial(CRElem(F, 1), -1);
    D.at(1, 1) = HLaurent::constant(F, 1);
    Lattice diag;
    diag.basis = LaurentMatrix(F, 2);
    diag.basis.at(0, 0) = HLaurent::monomial(CRElem(F, 1), 1);
    diag.basis.at(1, 1) = HLaurent::constant(F, 1);
    v &= check_example("diag(h^-1,1)", D, &diag);

    auto R = CoeffRing::make(3, {"eps"});
    auto alg = WeylAlgebra::make(3, 1, Flavor::Standard, R);
    LaurentMatrix M = rep(restricted_exp(CRElem::gen(R, 0), WeylElem::gen(alg, 0)));
    v &= check_example("translation conjugation", M, nullptr);
    if (!universal_matrix_is_multiplicative(M)) v &= Verdict::fail("translation matrix is not multiplicative");
    if (v.pass) v.witness = "3 examples";
    return v;
}

// ---------------------------------------------------------------- c11

Verdict c11_involution(const SuiteConfig& cfg) {
    auto alg = WeylAlgebra::make(cfg.p, cfg.n, Flavor::Standard, fp_ring(cfg.p), cfg.window());
    WeylElem h = WeylElem::h_power(alg, 1);
    if (op_involution(h) != -h) return Verdict::fail("alpha(h) != -h");
    for (int g = 0; g < alg->ngens(); ++g)
        if (op_involution(WeylElem::gen(alg, g)) != WeylElem::gen(alg, g))
            return Verdict::fail("alpha moves " + alg->gen_name(g));
    Rng rng = rng_for(cfg, "alpha");
    for (int t = 0; t < 20; ++t) {
        WeylElem a = rand_weyl(alg, rng), b = rand_weyl(alg, rng);
        if (op_involution(op_involution(a)) != a) return Verdict::fail("alpha(alpha(a)) != a for a=" + a.to_string());
        WeylElem l = op_involution(a * b), r = op_involution(b) * op_involution(a);
        if (l != r) return mismatch("alpha(ab)", l.to_string(), r.to_string());
    }
    return Verdict::ok("20 random pairs");
}

std::vector<CheckSpec> build_registry() {
    auto p3 = [](const SuiteConfig& c) { return c.p == 3; };
    auto pgt3 = [](const SuiteConfig& c) { return c.p > 3; };
    auto n_le2 = [](const SuiteConfig& c) { return c.n <= 2; };
    auto small_n1 = [](const SuiteConfig& c) { return c.p == 3 && c.n == 1; };
    const std::string desk = "p^(2n) <= 81";
    return {
        {"coeff-rings", "c10.unit_decomposition", "Unit decomposition round trip", any, "", c10_unit_roundtrip},
        {"coeff-rings", "c10.unit_criterion_bruteforce", "Unit criterion against exhaustive inverse search", any, "",
         c10_unit_bruteforce},
        {"poisson", "c03.restricted_power", "Restricted power from the p-th power of a lift", small, desk, c03_restricted},
        {"poisson", "c03.hamiltonian_of_power", "Hamiltonian of a restricted power", small, desk, c03_hamiltonian},
        {"poisson", "c08.poisson_lie_model", "Poisson bracket as a Lie algebra", small, desk, c08_poisson_model},
        {"weyl", "c01.relations", "Generator relations and associativity", any, "", c01_relations},
        {"weyl", "c01.quantization_axiom", "Commutator reduces to the Poisson bracket", small, desk, c01_quantization},
        {"weyl", "c06.ad_exp", "Conjugation by a restricted exponential", small, desk, c06_ad_exp},
        {"weyl", "c11.involution", "Anti-involution with h -> -h", any, "", c11_involution},
        {"matrep", "c02.rep_multiplicative", "Matrix representation is multiplicative", small, desk, c02_rep},
        {"matrep", "c02.basis_rank", "PBW images have full rank", small, desk, c02_rank},
        {"matrep", "c02.det_multiplicative", "Determinant of the representation is multiplicative", small, desk, c02_det},
        {"matrep", "c10.heisenberg_pairing", "Commutator pairing equals omega/h", any, "", c10_pairing},
        {"matrep", "c10.lattice_examples", "Invariant lattices of the three examples", any, "", c10_lattices},
        {"diffops", "c04.centrality", "p-curvature is central", n_le2, "n <= 2", c04_centrality},
        {"diffops", "c04.katz_cocycle", "Katz identity and the phi_mu cocycle", n_le2, "n <= 2", c04_katz},
        {"diffops", "c04.flat_reduction_iso", "Flat reduction matches the flat Weyl algebra", n_le2, "n <= 2",
         c04_flat_iso},
        {"autgrp", "c05.psi_homomorphism", "psi is a homomorphism", small_n1, "p = 3 and n = 1", c05_psi},
        {"autgrp", "c06.section_translates", "Heisenberg section acts by translation", small, desk, c06_translates},
        {"autgrp", "c06.translation_identity", "Product of Heisenberg sections", universal_ok, "n = 1, or p = 3 and n = 2",
         c06_translation},
        {"autgrp", "c06.cubic_identity", "Cubic exponential identity", pgt3, "p > 3", c06_cubic},
        {"autgrp", "c06.char3_identity", "Characteristic 3 decomposition and cocycle", p3, "p = 3", c06_char3},
        {"autgrp", "c07.alpha_invariance", "Connection is invariant under translations", universal_ok,
         "n = 1, or p = 3 and n = 2", c07_alpha},
        {"autgrp", "c07.lambda_invariance", "Connection is invariant under lambda", any, "", c07_lambda},
        {"autgrp", "c07.gauge_law", "Gauge law of the connection", any, "", c07_gauge},
        {"autgrp", "c09.phi_additive", "phi is additive", small, desk, c09_phi_additive},
        {"autgrp", "c09.one_parameter_subgroups", "s and lambda are one-parameter subgroups", small, desk,
         c09_one_parameter},
        {"autgrp", "c09.rejects_scaling", "Validation rejects a non-symplectic scaling", small, desk,
         c09_rejects_scaling},
        {"autgrp", "c09.phi_of_section", "phi of the section s", small, desk, c09_phi_section},
        {"autgrp", "c09.lambda_differential", "Differential of lambda at the identity", small, desk,
         c09_lambda_differential},
        {"lie", "c08.commutator_span", "Span of brackets of m^2", small, desk, c08_span},
        {"lie", "c08.generation", "Generation by m^2/m^3 and one extra element", small, desk, c08_generation},
        {"lie", "c08.irreducibility", "Irreducibility of the graded pieces", small, desk, c08_irreducibility},
        {"lie", "c08.jacobson_si", "Jacobson s_i on the central extension", any, "", c08_jacobson},
        {"lie", "c08.moment_lift", "Moment lift is a Lie map", small, desk, c08_moment},
    };
}

}  // namespace

const std::vector<CheckSpec>& check_registry() {
    static const std::vector<CheckSpec> reg = build_registry();
    return reg;
}

const std::vector<std::string>& suite_ids() {
    static const std::vector<std::string> ids{"coeff-rings", "poisson", "weyl", "matrep", "diffops", "autgrp", "lie"};
    return ids;
}

std::vector<const CheckSpec*> select_checks(const SuiteConfig& cfg) {
    std::string suite = cfg.suite, name;
    if (auto slash = suite.find('/'); slash != std::string::npos) {
        name = suite.substr(slash + 1);
        suite = suite.substr(0, slash);
    }
    if (suite != "all" && std::find(suite_ids().begin(), suite_ids().end(), suite) == suite_ids().end())
        throw ConfigError("unknown suite '" + suite + "'");
    const bool explicit_pick = !name.empty();
    std::vector<const CheckSpec*> out;
    bool matched = false;
    for (const auto& c : check_registry()) {
        if (suite != "all" && c.suite != suite) continue;
        if (explicit_pick && c.id.find(name) == std::string::npos) continue;
        matched = true;
        if (c.applies(cfg)) {
            out.push_back(&c);
        } else if (explicit_pick) {
            throw ConfigError(c.suite + "/" + c.id + " requires " + c.requirement + "; got " + params_of(cfg.p, cfg.n));
        }
    }
    if (explicit_pick && !matched) throw ConfigError("no check matches '" + cfg.suite + "'");
    return out;
}

std::vector<CheckResult> run_suites(const SuiteConfig& cfg) {
    validate_config(cfg);
    auto chosen = select_checks(cfg);
    std::vector<CheckResult> results(chosen.size());
    const long count = static_cast<long>(chosen.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        const CheckSpec& c = *chosen[i];
        CheckResult& r = results[i];
        r.suite = c.suite;
        r.check = c.id;
        r.params = params_of(cfg.p, cfg.n);
        auto t0 = std::chrono::steady_clock::now();
        try {
            Verdict v = c.run(cfg);
            r.status = v.pass ? Status::Pass : Status::Fail;
            r.witness = v.witness;
            if (!v.pass && r.witness.empty()) r.witness = "check failed without a recorded witness";
        } catch (const std::exception& e) {
            r.status = Status::Error;
            r.witness = e.what();
        }
        r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
    auto rank = [](const std::string& s) {
        return std::find(suite_ids().begin(), suite_ids().end(), s) - suite_ids().begin();
    };
    std::sort(results.begin(), results.end(), [&](const CheckResult& a, const CheckResult& b) {
        if (a.suite != b.suite) return rank(a.suite) < rank(b.suite);
        return a.check < b.check;
    });
    return results;
}

Summary summarize(const std::vector<CheckResult>& results) {
    Summary s;
    for (const auto& r : results) {
        if (r.status == Status::Pass) ++s.pass;
        else if (r.status == Status::Fail) ++s.fail;
        else ++s.error;
    }
    return s;
}

namespace {

nlohmann::ordered_json config_json(const SuiteConfig& cfg) {
    Window w = cfg.window();
    nlohmann::ordered_json c;
    c["p"] = cfg.p;
    c["n"] = cfg.n;
    c["N"] = w.precision;
    c["floor"] = w.floor;
    c["seed"] = cfg.seed;
    c["suite"] = cfg.suite;
    return c;
}

std::string title_of(const CheckResult& r) {
    for (const auto& c : check_registry())
        if (c.suite == r.suite && c.id == r.check) return c.title;
    return r.check;
}

}  // namespace

std::string render_json(const SuiteConfig& cfg, const std::vector<CheckResult>& results, bool timing) {
    nlohmann::ordered_json doc;
    doc["version"] = kReportVersion;
    doc["config"] = config_json(cfg);
    doc["results"] = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json j;
        j["suite"] = r.suite;
        j["check"] = r.check;
        j["params"] = r.params;
        j["status"] = status_name(r.status);
        if (r.status != Status::Pass || !r.witness.empty()) j["witness"] = r.witness;
        if (timing) j["ms"] = std::round(r.ms * 1000) / 1000;
        doc["results"].push_back(j);
    }
    Summary s = summarize(results);
    doc["summary"] = {{"pass", s.pass}, {"fail", s.fail}, {"error", s.error}};
    return doc.dump(2) + "\n";
}

std::string render_markdown(const SuiteConfig& cfg, const std::vector<CheckResult>& results, bool timing) {
    Window w = cfg.window();
    std::ostringstream os;
    os << "# Verification report\n\n";
    os << "p = " << cfg.p << ", n = " << cfg.n << ", N = " << w.precision << ", floor = " << w.floor
       << ", seed = " << cfg.seed << ", suite = " << cfg.suite << "\n\n";
    os << "| suite | check | description | status |" << (timing ? " ms |" : "") << " witness |\n";
    os << "|---|---|---|---|" << (timing ? "---|" : "") << "---|\n";
    for (const auto& r : results) {
        std::string wit = r.witness;
        std::replace(wit.begin(), wit.end(), '|', '/');
        std::replace(wit.begin(), wit.end(), '\n', ' ');
        os << "| " << r.suite << " | " << r.check << " | " << title_of(r) << " | " << status_name(r.status) << " |";
        if (timing) os << " " << static_cast<long long>(std::llround(r.ms)) << " |";
        os << " " << wit << " |\n";
    }
    Summary s = summarize(results);
    os << "\n**Summary:** " << s.pass << " pass, " << s.fail << " fail, " << s.error << " error\n";
    return os.str();
}

}  // namespace fcq
