#include <doctest.h>

#include <random>

#include "drin/carlitz.hpp"
#include "drin/errors.hpp"
#include "test_util.hpp"

using namespace drin;

namespace {

UPoly up(const Field* F, const char* text) { return parse_apoly(text, F, 0).to_upoly(); }

// Coefficients of the composite tau-polynomial sum a_i tau^i o sum b_j tau^j.
std::vector<UPoly> compose(const std::vector<UPoly>& a, const std::vector<UPoly>& b) {
    const Field* F = a[0].F;
    std::vector<UPoly> out(a.size() + b.size() - 1, UPoly(F));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * tau(b[j], static_cast<int>(i));
    return out;
}

}  // namespace

TEST_CASE("carlitz: D and l degrees") {
    for (int q : {2, 3}) {
        const Field* F = Field::get(q);
        CHECK(carlitz_D(F, 0).is_one());
        CHECK(carlitz_l(F, 0).is_one());
        long long qi = 1;
        for (int i = 0; i <= 6; ++i, qi *= q) {
            CHECK(carlitz_D(F, i).deg() == i * qi);
            CHECK(carlitz_l(F, i).deg() == q * (qi - 1) / (q - 1));
            CHECK(carlitz_D(F, i).is_monic());
        }
    }
}

TEST_CASE("carlitz: factorial") {
    const Field* F = Field::get(3);
    CHECK(carlitz_factorial(F, 0).is_one());
    CHECK(carlitz_factorial(F, 2).is_one());
    CHECK(carlitz_factorial(F, 6) == pow(up(F, "X^3-X"), 2));
    CHECK(carlitz_factorial(F, 7) == pow(up(F, "X^3-X"), 2));
    CHECK(carlitz_factorial(F, 9) == carlitz_D(F, 2));
}

TEST_CASE("carlitz: action coefficients") {
    const Field* F = Field::get(3);
    auto c = carlitz_coeffs(up(F, "X"));
    REQUIRE(c.size() == 2);
    CHECK(c[0] == up(F, "X"));
    CHECK(c[1].is_one());
    CHECK(carlitz_coeffs(up(F, "1")).size() == 1);
    auto c2 = carlitz_coeffs(up(F, "X^2"));
    REQUIRE(c2.size() == 3);
    CHECK(c2[1] == up(F, "X^3+X"));
    CHECK(c2[2].is_one());

    std::mt19937_64 rng(1);
    for (int q : {2, 3}) {
        const Field* G = Field::get(q);
        for (int it = 0; it < 30; ++it) {
            int da = 1 + static_cast<int>(rng() % 3), db = 1 + static_cast<int>(rng() % 3);
            UPoly a = monic_from_index(G, da, rng() % count_monic(q, da));
            UPoly b = monic_from_index(G, db, rng() % count_monic(q, db));
            CHECK(carlitz_coeffs(a * b) == compose(carlitz_coeffs(a), carlitz_coeffs(b)));
        }
    }
}

TEST_CASE("carlitz: pi tilde") {
    for (int q : {2, 3, 4, 5}) {
        const Field* F = Field::get(q);
        auto pi = pi_tilde(F, 0, 20);
        CHECK(pi.prec() == 20);
        CHECK(pi.norm_num() == q);  // ||pi~|| = q^(q/(q-1))
        // pi~ / (theta lambda) is a 1-unit
        auto u = div(pi, TateElem::lambda_power(F, 0, 1).times_theta(1), 30);
        CHECK(u.grade() == 0);
        CHECK(u.vmin() == 0);
        CHECK(u.coeff(0).is_one());
    }
    // Kernel of exp_C contains pi~ A.
    for (int q : {2, 3}) {
        const Field* F = Field::get(q);
        auto pi = pi_tilde(F, 0, 24);
        for (const char* a : {"1", "X", "X+1"}) {
            auto x = pi * TateElem::from_upoly(up(F, a), 0);
            auto e = exp_c_apply(x, 24);
            CHECK(e.is_zero());
            CHECK(e.prec() >= 20);
        }
        // exp_C(pi~/theta) = lambda
        auto l = exp_c_apply(pi.times_theta(-1), 10);
        CHECK(agree(l, TateElem::lambda_power(F, 0, 1), 10));
    }
}

TEST_CASE("carlitz: exp and log are inverse isometries") {
    std::mt19937_64 rng(8);
    for (int q : {2, 3}) {
        const Field* F = Field::get(q);
        for (int it = 0; it < 25; ++it) {
            std::vector<TPoly> c;
            for (int e = 0; e < 12; ++e) c.push_back(testutil::random_tpoly(rng, F, 1, 2, 2));
            c[0] = TPoly::constant(F, 1, 1 + static_cast<Elt>(rng() % (q - 1)));
            auto x = TateElem::from_coeffs(F, 1, 0, 0, std::move(c), 12);
            auto e = exp_c_apply(x, 12);
            CHECK(e.vmin() == x.vmin());
            CHECK(agree(log_c_apply(e, 12), x, 12));
            CHECK(agree(exp_c_apply(log_c_apply(x, 12), 12), x, 12));
        }
    }
    const Field* F = Field::get(3);
    CHECK(exp_c_apply(TateElem::zero(F, 0, 10), 10).is_zero());
    CHECK_THROWS_AS(log_c_apply(pi_tilde(F, 0, 10), 10), OutsideLogDomain);
    CHECK_THROWS_AS(log_c_apply(TateElem::theta_power(F, 0, 2), 10), OutsideLogDomain);
}

TEST_CASE("carlitz: formal exponential and BC numbers") {
    for (int q : {2, 3, 4}) {
        const Field* F = Field::get(q);
        auto fe = carlitz_exp_formal(F, 3 * q);
        CHECK(fe.recip[0] == RatFunc(UPoly::constant(F, 1)));
        CHECK(bc_classical(F, 0) == RatFunc(UPoly::constant(F, 1)));
        UPoly d1 = UPoly::monomial(F, q) - UPoly::theta(F);
        CHECK(bc_classical(F, q - 1) == -RatFunc(UPoly::constant(F, 1), d1));
        for (int i = 1; i <= 3 * q; ++i)
            if (i % (q - 1) != 0) CHECK(fe.recip[static_cast<std::size_t>(i)].is_zero());
        // Product of the series and its reciprocal is 1.
        for (int n = 1; n <= 3 * q - 1; ++n) {
            RatFunc acc(F);
            for (int k = 0; k <= n; ++k)
                acc = acc + fe.exp[static_cast<std::size_t>(k + 1)] * fe.recip[static_cast<std::size_t>(n - k)];
            CHECK(acc.is_zero());
        }
    }
}
