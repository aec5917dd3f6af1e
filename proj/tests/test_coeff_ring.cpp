#include <doctest.h>

#include <random>

#include "fcq/laurent.hpp"

using namespace fcq;

namespace {

RingPtr eps_ring() { return CoeffRing::make(3, {"eps"}); }

std::vector<CRElem> every_element(const RingPtr& R) {
    std::vector<CRElem> out{CRElem(R)};
    for (uint64_t m : R->monomials()) {
        std::vector<CRElem> next;
        for (const auto& e : out)
            for (int c = 0; c < R->p(); ++c) next.push_back(e + CRElem::monomial(R, m, c));
        out.swap(next);
    }
    return out;
}

CRElem random_elem(const RingPtr& R, std::mt19937_64& rng) {
    CRElem c(R);
    auto monos = R->monomials();
    for (int k = 0; k < 4; ++k) c += CRElem::monomial(R, monos[rng() % monos.size()], rng() % R->p());
    return c;
}

/// Schoolbook product of coefficient maps, independent of HLaurent::operator*.
std::map<int, CRElem> convolve(const HLaurent& a, const HLaurent& b) {
    std::map<int, CRElem> out;
    for (const auto& [i, x] : a.coeffs())
        for (const auto& [j, y] : b.coeffs()) {
            auto it = out.find(i + j);
            if (it == out.end()) out.emplace(i + j, x * y);
            else it->second += x * y;
        }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace

TEST_SUITE("coeff-rings") {
    TEST_CASE("F_p helpers agree with naive modular arithmetic") {
        for (int p : {3, 5, 7})
            for (uint32_t a = 0; a < static_cast<uint32_t>(p); ++a) {
                if (a) CHECK(fp_mul(a, fp_inv(a, p), p) == 1);
                for (uint32_t b = 0; b < static_cast<uint32_t>(p); ++b) {
                    CHECK(fp_add(a, b, p) == (a + b) % p);
                    CHECK(fp_mul(a, b, p) == (a * b) % p);
                    CHECK(fp_sub(a, b, p) == (a + p - b) % p);
                }
            }
        CHECK(fp_norm(-7, 5) == 3);
        CHECK(fp_fact(4, 5) == 4);
        CHECK(fp_fact(5, 5) == 0);
        CHECK_THROWS_AS(require_prime(11), DomainError);
    }

    TEST_CASE("truncated ring arithmetic") {
        auto R = eps_ring();
        CRElem e = CRElem::gen(R, 0), one(R, 1);
        CHECK((e * e.pow(2)).is_zero());
        CHECK((one + e) * (one - e) == one - e * e);
        CHECK((one + e).pow(3) == one);
        CHECK(R->dimension() == 3);
    }

    TEST_CASE("unit criterion matches exhaustive inverse search") {
        for (auto R : {CoeffRing::make(3, {"a"}, {2}), CoeffRing::make(3, {"a", "b"}, {2, 2}),
                       CoeffRing::make(5, {"a"}, {2}), CoeffRing::make(3, {"a"}, {4})}) {
            auto all = every_element(R);
            CHECK(all.size() <= 81);
            CRElem one(R, 1);
            for (const auto& u : all) {
                bool found = false;
                for (const auto& v : all) found = found || u * v == one;
                CHECK(found == u.is_unit());
                if (u.is_unit()) CHECK(u * u.inverse() == one);
            }
        }
    }

    TEST_CASE("ring axioms on random triples") {
        auto R = CoeffRing::make(5, {"a", "b", "c"}, {3, 2, 4});
        std::mt19937_64 rng(5);
        for (int t = 0; t < 100; ++t) {
            CRElem a = random_elem(R, rng), b = random_elem(R, rng), c = random_elem(R, rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
        }
        // d/da is a derivation only when the cap on a equals p.
        auto S = CoeffRing::make(5, {"a", "b"});
        for (int t = 0; t < 100; ++t) {
            CRElem a = random_elem(S, rng), b = random_elem(S, rng);
            CHECK((a * b).deriv(0) == a.deriv(0) * b + a * b.deriv(0));
            CHECK((a * b).deriv(1) == a.deriv(1) * b + a * b.deriv(1));
        }
        auto T = CoeffRing::make(5, {"a"}, {3});
        CRElem a = CRElem::gen(T, 0);
        CHECK((a * a.pow(2)).deriv(0).is_zero());
        CHECK_FALSE((a.deriv(0) * a.pow(2) + a * a.pow(2).deriv(0)).is_zero());
    }

    TEST_CASE("ring homomorphisms respect products") {
        auto S = CoeffRing::make(3, {"s"});
        auto T = CoeffRing::make(3, {"u", "v"});
        CRHom f(S, T, {CRElem::gen(T, 0) + CRElem::gen(T, 1)});
        std::mt19937_64 rng(2);
        for (int t = 0; t < 30; ++t) {
            CRElem a = random_elem(S, rng), b = random_elem(S, rng);
            CHECK(f(a * b) == f(a) * f(b));
            CHECK(f(a + b) == f(a) + f(b));
        }
        CHECK_THROWS_AS(CRHom(S, T, {CRElem(T, 1)}), DomainError);
    }

    TEST_CASE("power series inverse") {
        auto F = CoeffRing::make(3, std::vector<std::string>{});
        HLaurent u = HLaurent::series(F, {CRElem(F, 1), CRElem(F, 1)}, 3);
        HLaurent want = HLaurent::series(F, {CRElem(F, 1), CRElem(F, 2), CRElem(F, 1)}, 3);
        CHECK(hs_inv(u, 3) == want);
        CHECK(hs_inv(HLaurent::constant(F, 1), 4) == HLaurent::constant(F, 1).truncated(4));
        auto R = eps_ring();
        CHECK_THROWS_AS(hs_inv(HLaurent::constant(CRElem::gen(R, 0)), 3), DomainError);
    }

    TEST_CASE("Laurent unit criterion") {
        auto R = eps_ring();
        CRElem e = CRElem::gen(R, 0);
        HLaurent a = HLaurent::monomial(e, -1) + HLaurent::constant(R, 1);
        CHECK(a.is_unit());
        CHECK_FALSE(HLaurent(R).is_unit());
        HLaurent nil = HLaurent::constant(e) + HLaurent::monomial(e, 1);
        CHECK_FALSE(nil.is_unit());
        // Non-unit: the mod-eps reduction vanishes, so no product reaches 1.
        CHECK((nil * nil * nil).is_zero());
        CHECK_THROWS_AS(nil.truncated(2).is_unit(), WindowError);
    }

    TEST_CASE("unit decomposition examples") {
        auto F = CoeffRing::make(3, std::vector<std::string>{});
        UnitDecomposition d = unit_decompose(HLaurent::monomial(CRElem(F, 1), 1));
        CHECK(d.m == 1);
        CHECK(d.r == CRElem(F, 1));
        CHECK(d.w == HLaurent::constant(F, 1));
        CHECK(d.what == HLaurent::constant(F, 1));

        auto R = eps_ring();
        CRElem e = CRElem::gen(R, 0);
        HLaurent what = HLaurent::constant(R, 1) + HLaurent::monomial(e, -1);
        d = unit_decompose(what);
        CHECK(d.m == 0);
        CHECK(d.r == CRElem(R, 1));
        CHECK(d.w == HLaurent::constant(R, 1));
        CHECK(d.what == what);
        CHECK(what.in_W_hat());

        HLaurent u = (HLaurent::constant(R, 2) + HLaurent::monomial(CRElem(R, 1), 1)) * what * HLaurent::monomial(CRElem(R, 1), 2);
        d = unit_decompose(u);
        CHECK(d.r == CRElem(R, 2));
        CHECK(d.m == 2);
        CHECK(d.w == HLaurent::constant(R, 1) + HLaurent::monomial(CRElem(R, fp_inv(2, 3)), 1));
        CHECK(d.what == what);
        CHECK(d.recombine() == u);
    }

    TEST_CASE("unit decomposition round trip on random units") {
        auto R = CoeffRing::make(5, {"a", "b"});
        std::mt19937_64 rng(17);
        for (int t = 0; t < 100; ++t) {
            HLaurent u(R);
            int lo = -3 + static_cast<int>(rng() % 3);
            for (int i = lo; i < lo + 5; ++i) {
                CRElem c = random_elem(R, rng);
                u.set(i, c - CRElem(R, c.constant_term()));
            }
            // One coefficient gets a unit constant term.
            CRElem nil = random_elem(R, rng);
            nil -= CRElem(R, nil.constant_term());
            u.set(lo + static_cast<int>(rng() % 5), CRElem(R, 1 + rng() % 4) + nil);
            UnitDecomposition d = unit_decompose(u);
            CHECK(d.recombine() == u);
            CHECK(d.what.in_W_hat());
            CHECK(d.r.is_unit());
            CHECK(d.w.coeff(0) == CRElem(R, 1));
        }
    }

    TEST_CASE("Laurent products agree with schoolbook convolution") {
        auto R = CoeffRing::make(3, {"a"});
        std::mt19937_64 rng(3);
        for (int t = 0; t < 50; ++t) {
            HLaurent x(R), y(R);
            for (int i = -2; i < 3; ++i) {
                x.set(i, random_elem(R, rng));
                y.set(i, random_elem(R, rng));
            }
            CHECK((x * y).coeffs() == convolve(x, y));
        }
    }

    TEST_CASE("window violations raise") {
        auto F = CoeffRing::make(3, std::vector<std::string>{});
        HLaurent a = HLaurent::monomial(CRElem(F, 1), -2, -3);
        CHECK_THROWS_AS(a * a, WindowError);
        CHECK(default_window(3, 1).floor == -9);
        CHECK(default_window(3, 1).precision == 6);
    }
}
