#include <doctest.h>

#include <random>

#include "drin/errors.hpp"
#include "drin/tate.hpp"
#include "test_util.hpp"

using namespace drin;

namespace {

TateElem random_series(std::mt19937_64& rng, const Field* F, int s, std::int64_t vmin, std::int64_t prec,
                       bool unit = false) {
    std::vector<TPoly> c;
    for (std::int64_t e = vmin; e < prec; ++e) c.push_back(testutil::random_tpoly(rng, F, s, 2, 2));
    if (unit) c[0] = TPoly::constant(F, s, 1 + static_cast<Elt>(rng() % (F->order() - 1)));
    return TateElem::from_coeffs(F, s, 0, vmin, std::move(c), prec);
}

TateElem geom(const Field* F, int s, const TPoly& a, std::int64_t prec) {
    // sum_k a^k theta^{-k}
    std::vector<TPoly> c;
    TPoly p = TPoly::constant(F, s, 1);
    for (std::int64_t k = 0; k < prec; ++k) {
        c.push_back(p);
        p = p * a;
    }
    return TateElem::from_coeffs(F, s, 0, 0, std::move(c), prec);
}

}  // namespace

TEST_CASE("tate: basic sums and the zero element") {
    const Field* F = Field::get(3);
    auto x = TateElem::theta_power(F, 0, -1).truncated(10);
    auto z = x + (-x);
    CHECK(z.is_zero());
    CHECK(z.prec() == 10);
    auto zero = TateElem::zero(F, 0);
    CHECK(agree(x + zero, x, 10));
    CHECK_THROWS_AS(TateElem::lambda_power(F, 0, 1) + TateElem::one(F, 0), GradeMismatch);
}

TEST_CASE("tate: grade wrap and lambda powers") {
    for (int q : {2, 3, 4, 5}) {
        const Field* F = Field::get(q);
        auto l = TateElem::lambda_power(F, 0, 1);
        auto lq2 = TateElem::lambda_power(F, 0, q - 2);
        auto prod = l * lq2;
        CHECK(prod.grade() == 0);
        // lambda^(q-1) = -theta
        CHECK(agree(prod, TateElem::theta_power(F, 0, 1).scaled(TPoly::constant(F, 0, F->neg(1))), 10));
        CHECK(TateElem::lambda_power(F, 0, q).grade() == (q == 2 ? 0 : 1));
    }
}

TEST_CASE("tate: multiplication examples and valuation additivity") {
    const Field* F = Field::get(3);
    // (1 - theta^-1) * geometric series = 1
    auto a = TateElem::from_coeffs(F, 0, 0, 0, {TPoly::constant(F, 0, 1), TPoly::constant(F, 0, 2)}, kExact);
    auto g = geom(F, 0, TPoly::constant(F, 0, 1), 15);
    auto p = a * g;
    CHECK(p.prec() == 15);
    CHECK(agree(p, TateElem::one(F, 0), 15));

    std::mt19937_64 rng(11);
    for (int it = 0; it < 100; ++it) {
        const Field* G = Field::get(it % 2 ? 2 : 3);
        auto x = random_series(rng, G, 2, static_cast<int>(rng() % 5) - 2, 8, true);
        auto y = random_series(rng, G, 2, static_cast<int>(rng() % 5) - 2, 9, true);
        auto xy = x * y;
        CHECK(xy.vmin() == x.vmin() + y.vmin());
        CHECK(xy.norm_num() == x.norm_num() + y.norm_num());
    }
}

TEST_CASE("tate: ring laws and precision honesty") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 60; ++it) {
        const Field* F = Field::get(3);
        auto x = random_series(rng, F, 1, -1, 7);
        auto y = random_series(rng, F, 1, 0, 8);
        auto z = random_series(rng, F, 1, 1, 9);
        auto l = (x * y) * z, r = x * (y * z);
        std::int64_t P = std::min(l.prec(), r.prec());
        CHECK(agree(l, r, P));
        auto d1 = x * (y + z), d2 = x * y + x * z;
        CHECK(agree(d1, d2, std::min(d1.prec(), d2.prec())));
        // Computing from more coefficients and truncating agrees with the low-precision product.
        auto xh = random_series(rng, F, 1, -1, 12);
        auto yh = random_series(rng, F, 1, 0, 12);
        auto lo = xh.truncated(6) * yh.truncated(7);
        auto hi = xh * yh;
        CHECK(lo.prec() <= hi.prec());
        CHECK(agree(lo, hi, lo.prec()));
    }
}

TEST_CASE("tate: inverse") {
    const Field* F = Field::get(3);
    auto one = TateElem::one(F, 1);
    CHECK(agree(inv(one.truncated(10)), one, 10));
    auto th = TateElem::theta_power(F, 1, 1);
    auto ith = inv(th);
    CHECK(ith.vmin() == 1);
    CHECK(ith.is_exact());
    // 1 - t1 theta^-1
    TPoly t1 = TPoly::var(F, 1, 1);
    auto u = TateElem::from_coeffs(F, 1, 0, 0, {TPoly::constant(F, 1, 1), -t1}, kExact);
    auto ui = inv(u, 12);
    CHECK(agree(ui, geom(F, 1, t1, 12), 12));
    CHECK_THROWS_AS(inv(TateElem::constant(t1)), NotAUnit);
    CHECK_THROWS_AS(inv(TateElem::zero(F, 1, 5)), NotAUnit);

    std::mt19937_64 rng(9);
    for (int it = 0; it < 50; ++it) {
        auto x = random_series(rng, F, 2, static_cast<int>(rng() % 4) - 2, 10, true);
        auto xi = inv(x);
        CHECK(xi.prec() == x.prec() - 2 * x.vmin());
        auto p = x * xi;
        CHECK(agree(p, TateElem::one(F, 2), p.prec()));
    }
    // Inverse of lambda: grade q-2 with a (-theta)^-1 shift.
    auto l = TateElem::lambda_power(F, 0, 1);
    auto li = inv(l, 10);
    CHECK(li.grade() == 1);
    CHECK(agree(l * li, TateElem::one(F, 0), (l * li).prec()));
}

TEST_CASE("tate: tau") {
    const Field* F = Field::get(3);
    auto x = TateElem::theta_power(F, 0, -1);
    auto tx = tau(x);
    CHECK(tx.vmin() == 3);
    // tau(lambda) = -theta lambda
    auto l = TateElem::lambda_power(F, 0, 1);
    auto tl = tau(l);
    CHECK(tl.grade() == 1);
    CHECK(tl.vmin() == -1);
    CHECK(tl.coeff(-1) == TPoly::constant(F, 0, 2));
    std::mt19937_64 rng(3);
    for (int it = 0; it < 50; ++it) {
        auto f = random_series(rng, F, 1, static_cast<int>(rng() % 5) - 2, 6, true);
        for (int n = 1; n <= 2; ++n) {
            auto tf = tau(f, n);
            CHECK(tf.norm_num() == f.norm_num() * (n == 1 ? 3 : 9));
            CHECK(tf.prec() == f.prec() * (n == 1 ? 3 : 9));
        }
        // tau is multiplicative
        auto g = random_series(rng, F, 1, 0, 6);
        auto a = tau(f * g), b = tau(f) * tau(g);
        CHECK(agree(a, b, std::min(a.prec(), b.prec())));
    }
    // Over an extension the coefficients are Frobenius-twisted.
    const Field* F9 = Field::get(3, 2);
    Elt z = 3;  // the class of x in F_3[x]/(x^2+1)
    auto c = TateElem::constant(TPoly::constant(F9, 0, z));
    CHECK(tau(c).coeff(0) == TPoly::constant(F9, 0, F9->frob(z)));
}

TEST_CASE("tate: roots of 1-units") {
    const Field* F = Field::get(3);
    CHECK(agree(root_of_one_unit(TateElem::one(F, 0), 2), TateElem::one(F, 0), 20));
    // (1 - theta^-2)^(1/2): square back to the input at precision 12.
    auto x = TateElem::from_coeffs(F, 0, 0, 0,
                                   {TPoly::constant(F, 0, 1), TPoly(F, 0), TPoly::constant(F, 0, 2)}, 12);
    auto y = root_of_one_unit(x, 2);
    CHECK(y.coeff(2) == TPoly::constant(F, 0, 1));
    CHECK(agree(y * y, x, 12));
    std::mt19937_64 rng(17);
    for (int it = 0; it < 30; ++it) {
        int q = it % 2 ? 5 : 3;
        const Field* G = Field::get(q);
        auto yy = random_series(rng, G, 1, 0, 10);
        yy = yy - TateElem::constant(yy.coeff(0)) + TateElem::one(G, 1);
        yy = yy.truncated(10);
        int n = q - 1;
        auto r = root_of_one_unit(pow(yy, static_cast<unsigned>(n)), n);
        CHECK(agree(r, yy, 10));
    }
    CHECK_THROWS_AS(root_of_one_unit(x, 3), RootOrderDivisibleByP);
    CHECK_THROWS_AS(root_of_one_unit(TateElem::theta_power(F, 0, 1).truncated(5), 2), NotOneUnit);
}

TEST_CASE("tate: recognize_polynomial") {
    const Field* F = Field::get(3);
    APoly p = parse_apoly("X^2+t1", F, 1);
    auto r = recognize_polynomial(TateElem::from_apoly(p), 5);
    CHECK(r.ok);
    CHECK(r.poly == p);
    auto x = TateElem::from_coeffs(F, 0, 0, 0, {TPoly::constant(F, 0, 1), TPoly(F, 0), TPoly(F, 0), TPoly(F, 0),
                                                TPoly(F, 0), TPoly::constant(F, 0, 1)},
                                   10);
    auto r2 = recognize_polynomial(x, 10);
    CHECK_FALSE(r2.ok);
    CHECK(r2.bad_exponent == 5);
    CHECK_THROWS_AS(recognize_polynomial(x, 11), InsufficientPrecision);
}

TEST_CASE("tate: norm from vmin matches coefficient maximum") {
    std::mt19937_64 rng(23);
    const Field* F = Field::get(3);
    for (int it = 0; it < 50; ++it) {
        auto x = random_series(rng, F, 2, static_cast<int>(rng() % 4), 10);
        if (x.is_zero()) continue;
        std::int64_t best = kExact;
        for (std::int64_t e = 0; e < 10; ++e)
            if (!x.coeff(e).is_zero()) best = std::min(best, e);
        CHECK(x.vmin() == best);
    }
}

TEST_CASE("tate: JSON round trip") {
    std::mt19937_64 rng(31);
    for (int q : {2, 3, 4}) {
        const Field* F = Field::get(q);
        auto x = random_series(rng, F, 3, -2, 7);
        auto y = TateElem::from_json(x.to_json());
        CHECK(y.to_json() == x.to_json());
        CHECK(agree(x, y, 7));
    }
    const Field* F9 = Field::get(3, 2);
    auto c = TateElem::constant(TPoly::constant(F9, 2, 5)) * TateElem::lambda_power(F9, 2, 1);
    auto d = TateElem::from_json(c.to_json());
    CHECK(d.to_json() == c.to_json());
    CHECK(d.grade() == 1);
    auto z = TateElem::zero(Field::get(3), 1, 9);
    CHECK(TateElem::from_json(z.to_json()).to_json() == z.to_json());
    CHECK_THROWS_AS(TateElem::from_json("{nope"), ParseError);
}
