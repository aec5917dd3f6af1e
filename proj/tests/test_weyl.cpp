#include <doctest.h>

#include <random>

#include "fcq/weyl.hpp"

using namespace fcq;

namespace {

RingPtr fp(int p) { return CoeffRing::make(p, std::vector<std::string>{}); }

WeylPtr std_alg(int p, int n, RingPtr R = nullptr) { return WeylAlgebra::make(p, n, Flavor::Standard, R ? R : fp(p)); }

WeylElem random_elem(const WeylPtr& alg, std::mt19937_64& rng, int terms = 4) {
    auto basis = alg->basis();
    WeylElem a(alg);
    for (int t = 0; t < terms; ++t)
        a += WeylElem::monomial(alg, basis[rng() % basis.size()], CRElem(alg->ring(), 1 + rng() % (alg->p() - 1)),
                                static_cast<int>(rng() % 3) - 1);
    return a;
}

/// Closed-form product of standard PBW monomials: y^b x^c = Σ_k (-1)^k k! C(b,k) C(c,k) h^k x^{c-k} y^{b-k}.
WeylElem oracle_product(const WeylPtr& alg, uint64_t m1, uint64_t m2) {
    const int p = alg->p(), n = alg->n();
    struct Partial {
        uint64_t mono;
        int k;
        long long coef;
    };
    std::vector<Partial> acc{{0, 0, 1}};
    for (int i = 0; i < n; ++i) {
        int a = alg->exponent(m1, i), b = alg->exponent(m1, n + i);
        int c = alg->exponent(m2, i), d = alg->exponent(m2, n + i);
        std::vector<Partial> next;
        for (int k = 0; k <= std::min(b, c); ++k) {
            int xe = a + c - k, ye = b + d - k;
            if (xe >= p || ye >= p) continue;
            long long coef = (k % 2 ? -1 : 1) * static_cast<long long>(fp_fact(k, p)) * fp_binom(b, k, p) * fp_binom(c, k, p);
            for (const auto& s : acc)
                next.push_back({s.mono | alg->gen_mono(i, xe) | alg->gen_mono(n + i, ye), s.k + k, s.coef * coef});
        }
        acc.swap(next);
    }
    WeylElem r(alg);
    for (const auto& s : acc) r += WeylElem::monomial(alg, s.mono, CRElem(alg->ring(), fp_norm(s.coef, p)), s.k);
    return r;
}

}  // namespace

TEST_SUITE("weyl") {
    TEST_CASE("generator relations") {
        auto A = std_alg(3, 1);
        auto x = WeylElem::gen(A, "x1"), y = WeylElem::gen(A, "y1");
        WeylElem h = WeylElem::h_power(A, 1);
        CHECK(y * x == x * y - h);
        CHECK(x.pow(2) * x == WeylElem(A));
        CHECK((x * y).pow(3) == (x * y).shifted(2));
        CHECK(commutator(x, y) == h);
        CHECK(commutator(y, x) == -h);
        CHECK(commutator(x, x).is_zero());
    }

    TEST_CASE("flat flavor relations") {
        auto F = WeylAlgebra::make(3, 1, Flavor::Flat, fp(3));
        auto x = WeylElem::gen(F, "x1"), y = WeylElem::gen(F, "y1"), v = WeylElem::gen(F, "v1"), u = WeylElem::gen(F, "u1");
        WeylElem h = WeylElem::h_power(F, 1);
        CHECK(commutator(v, x) == h);
        CHECK(commutator(u, y) == h);
        CHECK(commutator(x, y).is_zero());
        CHECK(commutator(u, x).is_zero());
        CHECK(commutator(v, y).is_zero());
        CHECK(commutator(u, v).is_zero());
    }

    TEST_CASE("products agree with the closed-form normal ordering") {
        for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {3, 2}}) {
            auto A = std_alg(p, n);
            auto basis = A->basis();
            std::mt19937_64 rng(p * n);
            for (int t = 0; t < 300; ++t) {
                uint64_t a = basis[rng() % basis.size()], b = basis[rng() % basis.size()];
                WeylElem l = WeylElem::monomial(A, a, CRElem(A->ring(), 1)) * WeylElem::monomial(A, b, CRElem(A->ring(), 1));
                CHECK(l == oracle_product(A, a, b));
            }
        }
    }

    TEST_CASE("serial and parallel products coincide") {
        auto A = std_alg(5, 2);
        std::mt19937_64 rng(3);
        for (int t = 0; t < 10; ++t) {
            WeylElem a = random_elem(A, rng, 30), b = random_elem(A, rng, 30);
            CHECK(weyl_mul_serial(a, b) == weyl_mul_parallel(a, b));
        }
    }

    TEST_CASE("algebra axioms on random elements") {
        auto R = CoeffRing::make(3, {"s"});
        auto A = std_alg(3, 2, R);
        std::mt19937_64 rng(9);
        for (int t = 0; t < 20; ++t) {
            WeylElem a = random_elem(A, rng), b = random_elem(A, rng), c = random_elem(A, rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a.scaled(CRElem::gen(R, 0)) * b) == (a * b).scaled(CRElem::gen(R, 0)));
        }
    }

    TEST_CASE("quantization axiom on lifts") {
        auto A = std_alg(3, 1);
        auto sp = A0Space::make(3, 1, A->ring());
        auto x = A0Elem::coord(sp, 0), y = A0Elem::coord(sp, 1);
        WeylElem c = commutator(lift(A, x * x * y), lift(A, y * y));
        CHECK(c.valuation() >= 1);
        CHECK(symbol(c.shifted(-1).truncated(1), sp) == poisson_bracket(x * x * y, y * y));
        WeylElem cube = lift(A, x * y).pow(3);
        CHECK(cube == lift(A, x * y).shifted(2));
        CHECK(lift(A, x).pow(3).is_zero());
    }

    TEST_CASE("op involution") {
        auto A = std_alg(3, 1);
        auto x = WeylElem::gen(A, "x1"), y = WeylElem::gen(A, "y1");
        WeylElem h = WeylElem::h_power(A, 1);
        CHECK(op_involution(x) == x);
        CHECK(op_involution(h) == -h);
        // α(xy) = yx = xy - h.
        CHECK(op_involution(x * y) == x * y - h);
        CHECK(op_involution(x * y + h) == x * y - h - h);
        std::mt19937_64 rng(12);
        for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {3, 2}}) {
            auto B = std_alg(p, n);
            for (int t = 0; t < 20; ++t) {
                WeylElem a = random_elem(B, rng), b = random_elem(B, rng);
                CHECK(op_involution(op_involution(a)) == a);
                CHECK(op_involution(a * b) == op_involution(b) * op_involution(a));
            }
        }
    }

    TEST_CASE("restricted exponentials") {
        auto R = CoeffRing::make(3, {"eps"});
        auto A = std_alg(3, 1, R);
        CRElem e = CRElem::gen(R, 0);
        auto x = WeylElem::gen(A, "x1"), y = WeylElem::gen(A, "y1");
        CHECK(restricted_exp(WeylElem(A)) == WeylElem::scalar(A, 1));
        CHECK(restricted_exp(e, x) * restricted_exp(-e, x) == WeylElem::scalar(A, 1));
        // Ad_{e^{εx/h}}(y) = y + ε under xy - yx = h.
        CHECK(conjugate(restricted_exp(e, x), y, restricted_exp(-e, x)) == y + WeylElem::scalar(A, e));
        CHECK(ad_exp(x.scaled(e), y) == y + WeylElem::scalar(A, e));
        CHECK(ad_exp(x.scaled(e), x) == x);
        CHECK_THROWS_AS(restricted_exp(WeylElem::scalar(A, 1)), DomainError);
        for (int p : {3, 5}) {
            auto T = CoeffRing::make(p, {"tau"});
            auto B = std_alg(p, 1, T);
            CHECK(ad_exp_check(WeylElem::gen(B, 0), CRElem::gen(T, 0)).pass);
            if (p == 5) CHECK(ad_exp_check(WeylElem::gen(B, 0).pow(3), CRElem::gen(T, 0)).pass);
        }
    }

    TEST_CASE("poles below the floor raise") {
        auto A = WeylAlgebra::make(3, 1, Flavor::Standard, fp(3), Window{-2, 6});
        WeylElem a = WeylElem::h_power(A, -2);
        CHECK_THROWS_AS(a * a, WindowError);
    }

    TEST_CASE("quadratic pole excess") {
        auto R = CoeffRing::make(3, {"eps"});
        auto A = std_alg(3, 1, R);
        CRElem e = CRElem::gen(R, 0);
        auto x = WeylElem::gen(A, "x1");
        CHECK(quadratic_pole_excess((x * x).shifted(-1)) <= 0);
        CHECK(quadratic_pole_excess(x.shifted(-1)) > 0);
        CHECK(quadratic_pole_excess(restricted_exp(e, x)) > 0);
    }
}
