#include <doctest.h>

#include "drin/carlitz.hpp"
#include "drin/errors.hpp"
#include "drin/lseries.hpp"

using namespace drin;

namespace {

DrinfeldModule mod(const char* alpha, int q, int s = -1) { return DrinfeldModule::parse(alpha, q, s); }

// Unpruned sum over every monic a with n deg a < prec, rho from the determinant.
TateElem naive_l(const DrinfeldModule& phi, int n, std::int64_t prec) {
    const Field* F = Field::get(phi.q());
    TateElem acc = TateElem::zero(F, phi.s, prec);
    for (int d = 0; n * d < prec; ++d)
        for (const UPoly& a : enumerate_monic(F, d)) {
            TateElem x = pow(inv(TateElem::from_upoly(a, phi.s), d + prec), static_cast<unsigned>(n));
            acc = acc + x.scaled(resultant_theta(a, phi.alpha)).truncated(prec);
        }
    return acc;
}

APoly naive_lneg(const DrinfeldModule& phi, int j, int dmax) {
    const Field* F = Field::get(phi.q());
    APoly acc(F, phi.s);
    for (int d = 0; d <= dmax; ++d)
        for (const UPoly& a : enumerate_monic(F, d))
            acc = acc + pow(APoly::from_upoly(a, phi.s), static_cast<unsigned>(j)).scaled(resultant_theta(a, phi.alpha));
    return acc;
}

}  // namespace

TEST_CASE("lseries: pruned block sum equals the naive sum") {
    struct Case {
        const char* alpha;
        int q, n;
        std::int64_t prec;
    };
    for (Case c : {Case{"1", 2, 1, 9}, Case{"1", 3, 1, 7}, Case{"1", 3, 2, 8}, Case{"t1", 3, 1, 6},
                   Case{"t1-X", 3, 1, 7}, Case{"t1-X", 2, 2, 9}, Case{"(t1-X)*(t2-X)", 3, 1, 6},
                   Case{"X^2+t1*X+t2", 2, 1, 8}, Case{"t1*X-1", 3, 1, 6}}) {
        CAPTURE(c.alpha);
        CAPTURE(c.q);
        auto phi = mod(c.alpha, c.q);
        auto fast = l_value(phi, c.n, c.prec);
        CHECK(fast.prec() == c.prec);
        CHECK(agree(fast, naive_l(phi, c.n, c.prec), c.prec));
    }
}

TEST_CASE("lseries: threads do not change the sum") {
    auto phi = mod("(t1-X)*(t2-X)", 3);
    auto a = l_value(phi, 1, 10, 1);
    auto b = l_value(phi, 1, 10, 4);
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("lseries: Euler product") {
    for (const char* alpha : {"1", "t1", "t1-X"}) {
        CAPTURE(alpha);
        auto phi = mod(alpha, 3);
        auto l = l_value(phi, 1, 8);
        auto e = euler_product(phi, 1, 8, 8);
        CHECK(agree(l, e, 8));
    }
    auto phi = mod("t1-X", 2);
    CHECK(agree(l_value(phi, 2, 10), euler_product(phi, 2, 5, 10), 10));
}

TEST_CASE("lseries: Carlitz zeta and the omega identity") {
    for (int q : {2, 3}) {
        const Field* F = Field::get(q);
        auto z = l_value(mod("1", q), 1, 10);
        auto e = exp_c_apply(z, 10);
        CHECK(agree(e, TateElem::one(F, 0), 10));
    }
    // (theta - t1) L(1, phi) omega = pi~ for alpha = t1 - theta
    auto phi = mod("t1-X", 3);
    const Field* F = phi.F;
    auto L = l_value(phi, 1, 10);
    auto w = omega_alpha(phi, 10).omega;
    auto lhs = TateElem::from_apoly(-phi.alpha) * L * w;
    auto pi = pi_tilde(F, 1, 10);
    std::int64_t P = std::min(lhs.prec(), pi.prec());
    CHECK(P >= 8);
    CHECK(agree(lhs, pi, P));
}

TEST_CASE("lseries: values at negative integers") {
    // zeta(0) = 1 for the Carlitz module.
    auto z0 = l_negative(mod("1", 3), 0);
    CHECK(z0.value == APoly::constant(TPoly::constant(Field::get(3), 0, 1)));
    for (int q : {2, 3}) {
        for (const char* alpha : {"1", "t1", "t1-X", "(t1-X)*(t2-X)"}) {
            auto phi = mod(alpha, q);
            for (int j = 0; j <= 3; ++j) {
                CAPTURE(alpha);
                CAPTURE(j);
                auto r = l_negative(phi, j);
                CHECK(r.vanishing_bound == (phi.r + j) / (q - 1));
                CHECK(r.last_degree >= r.vanishing_bound + 3);
                CHECK(r.value == naive_lneg(phi, j, r.vanishing_bound + 3));
                // Blocks past the bound are zero, checked one further.
                CHECK(naive_lneg(phi, j, r.vanishing_bound + 4) == r.value);
            }
        }
    }
}

TEST_CASE("lseries: B polynomial") {
    // r = 1 closed form
    auto p1 = b_poly(mod("t1-X", 3), 8);
    CHECK(p1.closed_form);
    CHECK(p1.poly == parse_apoly("X-t1", Field::get(3), 1));
    // s = q gives B = 1
    auto p3 = b_poly(mod("(t1-X)*(t2-X)*(t3-X)", 3), 8);
    CHECK_FALSE(p3.closed_form);
    CHECK(p3.poly == parse_apoly("1", Field::get(3), 3));
    CHECK(p3.checked_to >= 8);
    CHECK(p3.monic_of_degree_u);
    auto p2 = b_poly(mod("(t1-X)*(t2-X)", 2), 10);
    CHECK(p2.poly == parse_apoly("1", Field::get(2), 2));
    auto q2 = b_poly(mod("(t1-X)*(t2-X)*(t3-X)", 2), 8);
    CHECK(q2.monic_of_degree_u);
    CHECK(q2.poly.deg() == 1);
    CHECK_THROWS_AS(b_poly(mod("t1", 3), 6), NotTorsionCase);
    CHECK_THROWS_AS(b_poly(mod("(t1-X)*(t2-X)", 3), 6), NotTorsionCase);
}

TEST_CASE("lseries: exp of L(1)") {
    const Field* F = Field::get(3);
    for (const char* alpha : {"t1-X", "(t1-X)*(t2-X)", "t1", "1"}) {
        CAPTURE(alpha);
        auto r = exp_of_l(mod(alpha, 3), 9, 9);
        CHECK(r.value == APoly::constant(TPoly::constant(F, mod(alpha, 3).s, 1)));
    }
    auto c3 = exp_of_l(mod("(t1-X)*(t2-X)*(t3-X)", 3), 8, 8);
    CHECK(c3.value.is_zero());
}

TEST_CASE("lseries: local factors") {
    for (int q : {2, 3}) {
        const Field* F = Field::get(q);
        for (const char* alpha : {"1", "t1", "t1-X", "(t1-X)*(t2-X)"}) {
            auto phi = mod(alpha, q);
            for (int d = 1; d <= 3; ++d)
                for (const UPoly& P : enumerate_primes(F, d)) {
                    CAPTURE(alpha);
                    CAPTURE(P.to_string());
                    auto lf = local_factor(phi, P);
                    CHECK(lf.matches);
                    CHECK(lf.charpoly.deg() == d);
                }
        }
        CHECK_THROWS_AS(local_factor(mod("t1", q), UPoly::monomial(F, 2)), NotPrime);
    }
    // The Fitting generator of theta acting on F[theta]/(P) is P.
    const Field* F = Field::get(3);
    UPoly P = UPoly(F, {1, 0, 1});
    auto tm = theta_matrix(P);
    Matrix<TPoly> M(2, std::vector<TPoly>(2, TPoly(F, 0)));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) M[i][j] = TPoly::constant(F, 0, tm[i][j]);
    CHECK(fitting_generator(M, F, 0) == APoly::from_upoly(P, 0));
}
