#include <doctest.h>

#include "fcq/fp.hpp"
#include "fcq/lie.hpp"

using namespace fcq;

TEST_SUITE("lie") {
    TEST_CASE("sp action on graded pieces") {
        auto sp = a0_over_fp(3, 1);
        A0Elem x = A0Elem::coord(sp, 0), y = A0Elem::coord(sp, 1);
        GradedPiece g1(sp, 1);
        REQUIRE(g1.dim() == 2);
        // {x^2, y} = 2x
        CHECK(g1.embed(sp_action(g1, x * x, g1.project(y))) == x.scaled(2u));
        CHECK(sp_basis(sp).size() == 3);
        CHECK(sp_basis(a0_over_fp(3, 2)).size() == 10);
        GradedPiece g2(sp, 2);
        CHECK(g2.dim() == 3);
        // Top degree of F3[x,y]/(x^3,y^3) is x^2y^2.
        CHECK(GradedPiece(sp, 4).dim() == 1);
        CHECK(GradedPiece(sp, 5).dim() == 0);
    }

    TEST_CASE("sl2 triple inside degree two") {
        for (int p : {3, 5, 7}) {
            auto sp = a0_over_fp(p, 1);
            A0Elem x = A0Elem::coord(sp, 0), y = A0Elem::coord(sp, 1);
            uint32_t half = fp_inv(2, p);
            A0Elem E = (x * x).scaled(half), F = -(y * y).scaled(half);
            A0Elem H = poisson_bracket(E, F);
            CHECK(H == -(x * y));
            CHECK(poisson_bracket(H, E) == E.scaled(2u));
            CHECK(poisson_bracket(H, F) == -F.scaled(2u));
        }
    }

    TEST_CASE("irreducibility of graded pieces") {
        CHECK(irreducibility_check(3, 1, 0));
        CHECK(envelope_dimension(3, 1, 1) == 4);
        for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {3, 2}})
            for (int l = 0; l < 2 * (p - 1); ++l) CHECK_MESSAGE(irreducibility_check(p, n, l), p << " " << n << " " << l);
    }

    TEST_CASE("commutator span") {
        SpanReport r = commutator_span(3, 1);
        CHECK(r.rank == 5);
        CHECK(r.m2_dim == 6);
        CHECK(r.ok());
        r = commutator_span(5, 1);
        CHECK(r.rank == 21);
        CHECK(r.m2_dim == 22);
        CHECK(r.ok());
        CHECK(commutator_span(3, 2).ok());
    }

    TEST_CASE("generation") {
        auto s3 = a0_over_fp(3, 1);
        A0Elem x = A0Elem::coord(s3, 0), y = A0Elem::coord(s3, 1);
        CHECK(generation_check(3, 1, x * x * y));
        CHECK_FALSE(generation_check(3, 1, A0Elem(s3)));
        auto s5 = a0_over_fp(5, 1);
        A0Elem x5 = A0Elem::coord(s5, 0);
        CHECK(generation_check(5, 1, x5 * x5 * x5));
    }

    TEST_CASE("Jacobson correction terms") {
        for (int p : {3, 5}) {
            StructLie heis = central_extension(p, 1, 1);
            CHECK(heis.satisfies_jacobi());
            FpVec X{1, 0, 0}, Y{0, 1, 0};
            for (const FpVec& s : jacobson_si(heis, X, Y)) CHECK(s == FpVec(3, 0));
            StructLie L = sl2(p);
            CHECK(L.satisfies_jacobi());
            bool any = false;
            for (const FpVec& s : jacobson_si(L, {1, 0, 0}, {0, 1, 0}))
                if (s != FpVec(3, 0)) any = true;
            CHECK(any);
        }
    }

    TEST_CASE("moment lift") {
        auto R = CoeffRing::make(3, std::vector<std::string>{});
        auto sp = A0Space::make(3, 1, R);
        auto flat = A0Space::make(3, 1, R, true);
        A0Elem x = A0Elem::coord(sp, "x1"), y = A0Elem::coord(sp, "y1");
        A0Elem fx = A0Elem::coord(flat, "x1"), fy = A0Elem::coord(flat, "y1");
        A0Elem fv = A0Elem::coord(flat, "v1"), fu = A0Elem::coord(flat, "u1");
        CHECK(moment_lift(flat, A0Elem::constant(sp, 2)) == A0Elem::constant(flat, 2));
        // H_x = ∂_y and H_y = -∂_x.
        CHECK(moment_lift(flat, x) == fx + fu);
        CHECK(moment_lift(flat, y) == -fv);
        CHECK(poisson_bracket(moment_lift(flat, x), moment_lift(flat, y)) == A0Elem::constant(flat, 1));
        CHECK(moment_lift_check(3, 1, 40, 1).pass);
        CHECK(moment_lift_check(5, 1, 20, 2).pass);
        CHECK(poisson_lie_model_check(3, 2, 20, 3).pass);
    }
}
