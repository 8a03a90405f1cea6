#include <doctest.h>

#include "drin/algebra.hpp"
#include "drin/errors.hpp"
#include "drin/nuclear.hpp"

using namespace drin;

namespace {

DrinfeldModule mod(const char* alpha, int q, int s = -1) { return DrinfeldModule::parse(alpha, q, s); }
UPoly up(const Field* F, const char* text) { return parse_apoly(text, F, 0).to_upoly(); }

}  // namespace

TEST_CASE("nuclear: prime determinant examples") {
    auto phi = mod("1", 3, 0);
    const Field* F = phi.F;
    auto d = prime_det(phi, up(F, "X"), 5);
    ZPoly expect = ZPoly::one(F, 0, 5);
    expect.c[1] = TPoly::constant(F, 0, F->neg(1));
    CHECK(d == expect);
    // (theta - 1)/theta = 1 - 1/theta
    auto v = d.at_inverse_theta();
    CHECK(v.prec() == 5);
    CHECK(v.coeff(1) == TPoly::constant(F, 0, 2));
    CHECK(v.coeff(2).is_zero());
    // Primes of degree >= nz contribute 1.
    CHECK(prime_det(phi, up(F, "X^3+2*X+1"), 3) == ZPoly::one(F, 0, 3));
    CHECK(prime_det(mod("t1", 2), up(Field::get(2), "X^2+X+1"), 2) == ZPoly::one(Field::get(2), 1, 2));
    CHECK_THROWS_AS(prime_det(phi, up(F, "X^2"), 3), NotPrime);
    CHECK(ZPoly::one(F, 0, 1).to_string() == "1 mod Z^1");
}

TEST_CASE("nuclear: prime determinants match the local factors") {
    const int nz = 7;
    for (int q : {2, 3}) {
        for (const char* a : {"1", "t1", "t1-X", "X^2+t1", "(t1-X)*(t2-X)"}) {
            CAPTURE(q);
            CAPTURE(a);
            auto phi = mod(a, q);
            RhoTable rho(phi.alpha);
            for (int d = 1; d <= 3; ++d)
                for (const UPoly& P : enumerate_primes(phi.F, d)) {
                    ZPoly det = prime_det(phi, P, nz);
                    CHECK(det.lowest_nonconstant() >= d);
                    // 1 - rho(P)/P below exponent nz.
                    TateElem expect = TateElem::one(phi.F, phi.s) -
                                      inv(TateElem::from_upoly(P, phi.s), nz + d).scaled(rho(P));
                    CHECK(agree(det.at_inverse_theta(), expect, nz));
                }
        }
    }
}

TEST_CASE("nuclear: infinity determinant and depth independence") {
    auto phi = mod("t1", 2);
    CHECK(infinity_det(phi, 1, nucleus_floor(phi, 1)) == ZPoly::one(phi.F, 1, 1));
    const int fl = nucleus_floor(phi, 4);
    CHECK(fl >= 4);
    auto base = infinity_det(phi, 4, fl);
    CHECK(infinity_det(phi, 4, fl + 1) == base);
    CHECK(infinity_det(phi, 4, fl + 3) == base);
    CHECK_THROWS_AS(infinity_det(phi, 4, fl - 1), QuotientTooShallow);
    for (int q : {2, 3})
        for (const char* a : {"1", "t1-X", "X^3+t1*X", "(t1-X)*(t2-X)*(t3-X)"})
            for (int nz : {2, 3, 5}) {
                CAPTURE(q);
                CAPTURE(a);
                CAPTURE(nz);
                auto p = mod(a, q);
                const int f = nucleus_floor(p, nz);
                CHECK(f >= std::max(p.u + 2, nz));
                auto d0 = infinity_det(p, nz, f);
                CHECK(infinity_det(p, nz, f + 1) == d0);
                CHECK(infinity_det(p, nz, f + 3) == d0);
            }
    // Below the contraction floor the truncated determinant is not yet stable.
    auto q2 = mod("t1-X", 2);
    CHECK(det_one_plus(infinity_operator(q2, 5, 5), q2.F, q2.s) != infinity_det(q2, 5, nucleus_floor(q2, 5)));
}

TEST_CASE("nuclear: trace formula") {
    auto one = mod("1", 3, 0);
    ZPoly prod = ZPoly::one(one.F, 0, 3);
    for (int d = 1; d <= 2; ++d)
        for (const UPoly& P : enumerate_primes(one.F, d)) prod = prod * prime_det(one, P, 3);
    CHECK(infinity_det(one, 3, nucleus_floor(one, 3)) == prod.inverse());

    struct Case {
        const char* alpha;
        int q, nz;
    };
    for (const Case& c : {Case{"1", 2, 4}, Case{"t1", 3, 3}, Case{"t1", 2, 5}, Case{"t1-X", 2, 5},
                          Case{"t1-X", 3, 4}, Case{"X^2+t1", 3, 4}, Case{"(t1-X)*(t2-X)*(t3-X)", 2, 4},
                          Case{"t1*X^3+1", 2, 5}, Case{"X", 4, 3}, Case{"1", 2, 1}}) {
        CAPTURE(c.alpha);
        CAPTURE(c.q);
        auto phi = mod(c.alpha, c.q);
        auto rep = trace_formula_check(phi, c.nz);
        CHECK(rep.equal);
        CHECK(rep.primes_side == rep.infinity_side);
        auto par = trace_formula_check(phi, c.nz, rep.depth + 2, 3);
        CHECK(par.primes_side == rep.primes_side);
        CHECK(par.equal);
    }
    CHECK_THROWS_AS(trace_formula_check(mod("1", 3, 0), 3, 2), QuotientTooShallow);
}
