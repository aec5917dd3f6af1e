#include <doctest.h>

#include <random>
#include <set>

#include "fcq/poisson.hpp"

using namespace fcq;

namespace {

RingPtr fp(int p) { return CoeffRing::make(p, std::vector<std::string>{}); }

struct Coords {
    A0Ptr sp;
    std::vector<A0Elem> x, y;
    Coords(int p, int n, RingPtr R = nullptr) : sp(A0Space::make(p, n, R ? R : fp(p))) {
        for (int i = 0; i < n; ++i) {
            x.push_back(A0Elem::coord(sp, sp->x(i)));
            y.push_back(A0Elem::coord(sp, sp->y(i)));
        }
    }
    A0Elem c(long long v) const { return A0Elem::constant(sp, v); }
};

A0Elem random_f(const A0Ptr& sp, std::mt19937_64& rng, int terms = 4) {
    A0Elem f(sp);
    for (int k = 0; k < terms; ++k) f[rng() % sp->dim()] += CRElem(sp->ring(), rng() % sp->p());
    return f;
}

KForm random_1form(const A0Ptr& sp, std::mt19937_64& rng) {
    KForm w(sp, 1);
    for (int j = 0; j < sp->m(); ++j) w = w + KForm::basic1(random_f(sp, rng, 2), j);
    return w;
}

}  // namespace

TEST_SUITE("poisson") {
    TEST_CASE("bracket identities from the commutator lemma") {
        for (int p : {3, 5, 7}) {
            Coords c(p, 2);
            auto &x = c.x, &y = c.y;
            CHECK(poisson_bracket(x[0] * y[0], x[0] * x[1]) == -(x[0] * x[1]));
            for (int a = 1; a < p; ++a)
                for (int b = 0; b + 1 < p; ++b) {
                    A0Elem lhs = poisson_bracket(x[0].pow(a - 1) * y[0].pow(b), x[0] * x[0] * y[0]);
                    CHECK(lhs == (x[0].pow(a) * y[0].pow(b)).scaled(fp_norm(a - 1 - 2 * b, p)));
                    if (b >= 1) {
                        A0Elem l2 = poisson_bracket(x[0].pow(a) * y[0].pow(b - 1), x[0] * y[0] * y[0]);
                        CHECK(l2 == (x[0].pow(a) * y[0].pow(b)).scaled(fp_norm(2 * a - b + 1, p)));
                    }
                }
            A0Elem lhs = poisson_bracket(x[0].pow(p - 1) * y[0].pow(p - 3) * x[1], y[0] * y[0] * y[1]);
            A0Elem rhs = x[0].pow(p - 1) * y[0].pow(p - 1) +
                         (x[0].pow(p - 2) * y[0].pow(p - 2) * x[1] * y[1]).scaled(fp_norm(2 * (p - 1), p));
            CHECK(lhs == rhs);
            lhs = poisson_bracket(x[0].pow(p - 1) * y[0].pow(p - 3) * x[1] * x[1], y[0] * y[0] * y[1]);
            rhs = (x[0].pow(p - 2) * y[0].pow(p - 2) * x[1] * x[1] * y[1]).scaled(fp_norm(2 * (p - 1), p)) +
                  (x[0].pow(p - 1) * y[0].pow(p - 1) * x[1]).scaled(2);
            CHECK(lhs == rhs);
            CHECK(poisson_bracket(x[0], x[0]).is_zero());
        }
    }

    TEST_CASE("recomputed values where the printed bullets disagree") {
        Coords c(5, 1);
        auto x = c.x[0], y = c.y[0];
        // Printed as 2x^2y; the pinned convention gives 4x^2y.
        CHECK(poisson_bracket(x * x, x * y * y) == (x * x * y).scaled(4));
        // Printed with factor 3a; the bracket gives 3(a+1).
        int a = 1, b = 3;
        CHECK(poisson_bracket(x.pow(a + 1) * y.pow(b - 2), y.pow(3)) == (x.pow(a) * y.pow(b)).scaled(3 * (a + 1) % 5));
    }

    TEST_CASE("bracket axioms on random triples") {
        for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {3, 2}}) {
            Coords c(p, n);
            std::mt19937_64 rng(p * 10 + n);
            for (int t = 0; t < 20; ++t) {
                A0Elem f = random_f(c.sp, rng), g = random_f(c.sp, rng), k = random_f(c.sp, rng);
                CHECK(poisson_bracket(f, g) == -poisson_bracket(g, f));
                CHECK((poisson_bracket(f, poisson_bracket(g, k)) + poisson_bracket(g, poisson_bracket(k, f)) +
                       poisson_bracket(k, poisson_bracket(f, g)))
                          .is_zero());
                CHECK(poisson_bracket(f, g * k) == poisson_bracket(f, g) * k + g * poisson_bracket(f, k));
            }
        }
    }

    TEST_CASE("forms calculus") {
        Coords c(3, 1);
        auto x = c.x[0], y = c.y[0];
        KForm eta = eta_canonical(c.sp);
        CHECK(d(eta) == omega(c.sp));
        CHECK(d(d(eta_canonical(Coords(3, 2).sp))).is_zero());
        CHECK(omega(c.sp) == wedge(d(y), d(x)));
        VField dx = VField::coordinate(c.sp, c.sp->x(0));
        CHECK(iota(dx, omega(c.sp)) == d(y).scaled(2u));  // -dy at p = 3
        CHECK(lie_derivative(hamiltonian(x * x), omega(c.sp)).is_zero());

        std::mt19937_64 rng(1);
        Coords c2(3, 2);
        for (int t = 0; t < 10; ++t) {
            KForm w = random_1form(c2.sp, rng);
            VField th(c2.sp);
            for (int j = 0; j < c2.sp->m(); ++j) th[j] = random_f(c2.sp, rng, 2);
            CHECK(lie_derivative(th, w) == d(iota(th, w)) + iota(th, d(w)));
            CHECK(d(d(w)).is_zero());
        }
    }

    TEST_CASE("Hamiltonian vector fields") {
        Coords c(3, 1);
        auto x = c.x[0], y = c.y[0];
        VField h = hamiltonian(x * y);
        CHECK(h[c.sp->x(0)] == -x);
        CHECK(h[c.sp->y(0)] == y);
        CHECK(hamiltonian(c.c(2)).is_zero());
        VField hx = hamiltonian(x);
        CHECK(hx == VField::coordinate(c.sp, c.sp->y(0)));
        std::mt19937_64 rng(4);
        for (int t = 0; t < 20; ++t) {
            A0Elem f = random_f(c.sp, rng), g = random_f(c.sp, rng);
            CHECK(hamiltonian(f).apply(g) == poisson_bracket(f, g));
            CHECK(iota(hamiltonian(f), omega(c.sp)) == d(f));
        }
    }

    TEST_CASE("restricted power of vector fields") {
        Coords c(5, 1);
        auto x = c.x[0], y = c.y[0];
        CHECK(vf_restricted_power(VField::coordinate(c.sp, 0)).is_zero());
        VField e = VField::coordinate(c.sp, 0).scaled(x);
        CHECK(vf_restricted_power(e) == e);
        VField mixed = VField::coordinate(c.sp, 0).scaled(-x) + VField::coordinate(c.sp, 1).scaled(y);
        CHECK(vf_restricted_power(mixed) == mixed);
        // p-fold composite on every monomial.
        std::mt19937_64 rng(8);
        VField th(c.sp);
        for (int j = 0; j < 2; ++j) th[j] = random_f(c.sp, rng, 3);
        VField tp = vf_restricted_power(th);
        for (size_t i = 0; i < c.sp->dim(); ++i) {
            A0Elem m = A0Elem::monomial(c.sp, i, CRElem(c.sp->ring(), 1)), r = m;
            for (int k = 0; k < 5; ++k) r = th.apply(r);
            CHECK(tp.apply(m) == r);
        }
    }

    TEST_CASE("exactness examples") {
        Coords c(3, 1);
        auto x = c.x[0], y = c.y[0];
        auto xi = c.sp->x(0), yi = c.sp->y(0);
        auto f = exactness_class(KForm::basic1(y, xi) + KForm::basic1(x, yi));
        REQUIRE(f.has_value());
        CHECK(*f == x * y);
        CHECK_FALSE(exactness_class(KForm::basic1(y, xi)).has_value());
        CHECK_FALSE(exactness_class(KForm::basic1(x.pow(2), xi)).has_value());
    }

    TEST_CASE("exactness agrees with exhaustive search over all primitives") {
        Coords c(3, 1);
        const A0Ptr& sp = c.sp;
        std::set<std::string> exact;
        std::vector<uint32_t> digits(sp->dim(), 0);
        for (size_t count = 0; count < 19683; ++count) {
            A0Elem f(sp);
            for (size_t i = 0; i < sp->dim(); ++i) f[i] = CRElem(sp->ring(), digits[i]);
            exact.insert(d(f).to_string());
            for (size_t i = 0; i < digits.size(); ++i) {
                if (++digits[i] < 3) break;
                digits[i] = 0;
            }
        }
        std::mt19937_64 rng(13);
        int hits = 0;
        for (int t = 0; t < 200; ++t) {
            KForm mu = (t % 2) ? random_1form(sp, rng) : d(random_f(sp, rng, 5));
            auto prim = exactness_class(mu);
            CHECK(prim.has_value() == (exact.count(mu.to_string()) == 1));
            if (prim) {
                CHECK(d(*prim) == mu);
                CHECK(prim->constant_term().is_zero());
                ++hits;
            }
        }
        CHECK(hits >= 100);
    }

    TEST_CASE("restricted power examples") {
        Coords c(3, 1);
        KForm eta = eta_canonical(c.sp);
        CHECK(restricted_power(c.x[0], eta).is_zero());
        CHECK(restricted_power(c.y[0], eta).is_zero());
        CHECK(restricted_power(c.x[0] * c.y[0], eta) == c.x[0] * c.y[0]);
    }

    TEST_CASE("restricted power properties") {
        for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {3, 2}}) {
            Coords c(p, n);
            KForm eta = eta_canonical(c.sp);
            std::mt19937_64 rng(p + n);
            for (size_t i = 0; i < c.sp->dim(); ++i) {
                A0Elem f = A0Elem::monomial(c.sp, i, CRElem(c.sp->ring(), 1));
                CHECK(hamiltonian(restricted_power(f, eta)) == vf_restricted_power(hamiltonian(f)));
            }
            for (int t = 0; t < 5; ++t) {
                A0Elem f = random_f(c.sp, rng), g = random_f(c.sp, rng);
                CHECK(restricted_power(f, eta + d(g)) == restricted_power(f, eta));
            }
        }
    }

    TEST_CASE("restricted Lie axiom with Jacobson's s_i") {
        const int p = 3;
        auto T = CoeffRing::make(p, {"t"});
        Coords c(p, 1), ct(p, 1, T);
        KForm eta = eta_canonical(c.sp);
        CRHom up = ring_inclusion(fp(p), T);
        std::mt19937_64 rng(21);
        for (int trial = 0; trial < 20; ++trial) {
            A0Elem f = random_f(c.sp, rng), g = random_f(c.sp, rng);
            A0Elem ft = f.mapped(up, ct.sp), gt = g.mapped(up, ct.sp);
            A0Elem z = ft.scaled(CRElem::gen(T, 0)) + gt, acc = ft;
            for (int k = 0; k < p - 1; ++k) acc = poisson_bracket(z, acc);
            A0Elem corr(c.sp);
            for (int i = 1; i < p; ++i) {
                A0Elem si(c.sp);
                for (size_t idx = 0; idx < c.sp->dim(); ++idx)
                    si[idx] = CRElem(c.sp->ring(), acc[idx].coeff(T->gen_mono(0, i - 1)));
                corr += si.scaled(fp_inv(i, p));
            }
            CHECK(restricted_power(f + g, eta) == restricted_power(f, eta) + restricted_power(g, eta) + corr);
        }
    }

    TEST_CASE("top de Rham class") {
        for (int n : {1, 2}) {
            Coords c(3, n);
            A0Elem u = A0Elem::monomial(c.sp, c.sp->top_index(), CRElem(c.sp->ring(), 1));
            KForm top = omega_power(c.sp, n).scaled(u);
            if (n == 2) top = top.scaled(fp_inv(2, 3));
            CHECK(top_derham_class(top) == CRElem(c.sp->ring(), 1));
            std::mt19937_64 rng(n);
            KForm w(c.sp, 2 * n - 1);
            for (int t = 0; t < 3; ++t) w = w + (n == 1 ? KForm::basic1(random_f(c.sp, rng), t % 2)
                                                        : wedge(random_1form(c.sp, rng), wedge(random_1form(c.sp, rng), random_1form(c.sp, rng))));
            CHECK(top_derham_class(d(w)).is_zero());
            KForm low = omega_power(c.sp, n).scaled(c.x[0]);
            CHECK(top_derham_class(low).is_zero());
        }
    }
}
