#include <doctest.h>

#include <random>

#include "drin/carlitz.hpp"
#include "drin/drinfeld.hpp"
#include "drin/errors.hpp"
#include "test_util.hpp"

using namespace drin;

namespace {

TateElem random_unit_disk(std::mt19937_64& rng, const Field* F, int s, std::int64_t vmin, std::int64_t prec) {
    std::vector<TPoly> c;
    for (std::int64_t e = vmin; e < prec; ++e) c.push_back(testutil::random_tpoly(rng, F, s, 2, 2));
    c[0] = TPoly::constant(F, s, 1);
    return TateElem::from_coeffs(F, s, 0, vmin, std::move(c), prec);
}

std::vector<APoly> padded(std::vector<APoly> v, std::size_t n, const Field* F, int s) {
    while (v.size() < n) v.emplace_back(F, s);
    return v;
}

}  // namespace

TEST_CASE("drinfeld: module data") {
    auto phi = DrinfeldModule::parse("(t1-X)*(t2-X)*(t3-X)*(t4-X)*(t5-X)", 3);
    CHECK(phi.s == 5);
    CHECK(phi.r == 5);
    CHECK(phi.u == 1);
    CHECK(phi.monic_negated);
    CHECK_FALSE(DrinfeldModule::parse("(t1-X)*(t2-X)", 3).monic_negated);
    auto psi = DrinfeldModule::parse("t1-X", 3);
    CHECK(psi.monic_negated);
    CHECK(psi.u == 0);
    for (int q : {2, 3, 4}) {
        for (int r = 0; r <= 4 * q; ++r) {
            std::string text = "1";
            for (int i = 0; i < r; ++i) text += "*(X+1)";
            auto m = DrinfeldModule::parse(text, q, 0);
            CHECK((m.u > 0) == (r >= 2 * q - 1));
        }
    }
    CHECK_THROWS_AS(DrinfeldModule::parse("0", 3, 1), ZeroParameter);
}

TEST_CASE("drinfeld: phi is a ring homomorphism") {
    std::mt19937_64 rng(4);
    for (int q : {2, 3}) {
        const Field* F = Field::get(q);
        for (int it = 0; it < 15; ++it) {
            APoly al = testutil::random_apoly(rng, F, 2, 1 + static_cast<int>(rng() % 2), 1);
            if (al.is_zero()) continue;
            auto phi = DrinfeldModule::make(al);
            int da = 1 + static_cast<int>(rng() % 3), db = 1 + static_cast<int>(rng() % 3);
            UPoly a = monic_from_index(F, da, rng() % count_monic(q, da));
            UPoly b = monic_from_index(F, db, rng() % count_monic(q, db));
            CHECK(phi_coeffs(phi, a * b) == compose_tau(phi_coeffs(phi, a), phi_coeffs(phi, b)));
            auto sa = phi_coeffs(phi, a + b);
            std::size_t n = std::max({sa.size(), phi_coeffs(phi, a).size(), phi_coeffs(phi, b).size()});
            auto pa = padded(phi_coeffs(phi, a), n, F, 2), pb = padded(phi_coeffs(phi, b), n, F, 2);
            sa = padded(sa, n, F, 2);
            for (std::size_t i = 0; i < n; ++i) CHECK(sa[i] == pa[i] + pb[i]);
        }
    }
}

TEST_CASE("drinfeld: phi_apply") {
    std::mt19937_64 rng(6);
    const Field* F = Field::get(3);
    auto phi = DrinfeldModule::parse("t1-X", 3);
    for (int it = 0; it < 10; ++it) {
        auto x = random_unit_disk(rng, F, 1, 0, 10);
        auto lhs = phi_apply(phi, UPoly::theta(F), x);
        auto rhs = x * TateElem::theta_power(F, 1, 1) + tau(x) * TateElem::from_apoly(phi.alpha);
        CHECK(agree(lhs, rhs, lhs.prec()));
        auto sq = phi_apply(phi, UPoly::monomial(F, 2), x);
        auto twice = phi_apply(phi, UPoly::theta(F), phi_apply(phi, UPoly::theta(F), x));
        CHECK(agree(sq, twice, std::min(sq.prec(), twice.prec())));
    }
    // C_theta(lambda) = 0
    auto C = DrinfeldModule::parse("1", 3, 0);
    auto l = TateElem::lambda_power(F, 0, 1).truncated(10);
    CHECK(phi_apply(C, UPoly::theta(F), l).is_zero());
}

TEST_CASE("drinfeld: exp and log") {
    std::mt19937_64 rng(12);
    for (int q : {2, 3}) {
        const Field* F = Field::get(q);
        auto phi = DrinfeldModule::parse("t1", q);
        CHECK(exp_phi_apply(phi, TateElem::zero(F, 1, 10), 10).is_zero());
        for (int it = 0; it < 15; ++it) {
            auto x = random_unit_disk(rng, F, 1, 0, 12);
            auto e = exp_phi_apply(phi, x, 12);
            CHECK(e.vmin() == x.vmin());
            CHECK(agree(log_phi_apply(phi, e, 12), x, 12));
            // exp_phi(theta x) = phi_theta(exp_phi(x))
            auto lhs = exp_phi_apply(phi, x * TateElem::theta_power(F, 1, 1), 11);
            auto rhs = phi_apply(phi, UPoly::theta(F), exp_phi_apply(phi, x, 12));
            CHECK(agree(lhs, rhs, std::min(lhs.prec(), rhs.prec())));
        }
        // Rank 2 parameter shrinks the log disk to q^((q-2)/(q-1)).
        auto psi = DrinfeldModule::parse("(t1-X)*(t2-X)", q);
        auto x = random_unit_disk(rng, F, 2, 1, 14);
        auto e = exp_phi_apply(psi, x, 14);
        CHECK(agree(log_phi_apply(psi, e, 14), x, 14));
        if (q == 2) CHECK_THROWS_AS(log_phi_apply(psi, random_unit_disk(rng, F, 2, 0, 8), 8), OutsideLogDomain);
    }
    // Functional equation with a random polynomial parameter.
    const Field* F = Field::get(3);
    for (int it = 0; it < 10; ++it) {
        APoly al = testutil::random_apoly(rng, F, 2, 2, 1);
        if (al.is_zero()) continue;
        auto phi = DrinfeldModule::make(al);
        auto x = random_unit_disk(rng, F, 2, 2, 14);
        auto lhs = exp_phi_apply(phi, x * TateElem::theta_power(F, 2, 1), 13);
        auto rhs = phi_apply(phi, UPoly::theta(F), exp_phi_apply(phi, x, 14));
        std::int64_t P = std::min(lhs.prec(), rhs.prec());
        CHECK(P >= 10);
        CHECK(agree(lhs, rhs, P));
    }
}

TEST_CASE("drinfeld: uniformizability") {
    CHECK(is_uniformizable(DrinfeldModule::parse("1", 3, 0)));
    CHECK_FALSE(is_uniformizable(DrinfeldModule::parse("t1", 3)));
    CHECK(is_uniformizable(DrinfeldModule::parse("(t1-X)*(t2-X)", 3)));
    CHECK_FALSE(is_uniformizable(DrinfeldModule::parse("t1*X+1", 3)));
    CHECK_THROWS_AS(omega_alpha(DrinfeldModule::parse("t1", 3), 10), NotUniformizable);
}

TEST_CASE("drinfeld: omega") {
    for (int q : {2, 3, 5}) {
        const Field* F = Field::get(q);
        auto phi = DrinfeldModule::parse("t1-X", q);
        auto w = omega_alpha(phi, 12).omega;
        CHECK(w.prec() == 12);
        CHECK(w.norm_num() == 1);
        auto tw = tau(w).truncated(11);
        auto aw = w * TateElem::from_apoly(phi.alpha);
        CHECK(agree(tw, aw, std::min(tw.prec(), aw.prec())));
        // omega at t = 0 is lambda
        auto w0 = omega_alpha(DrinfeldModule::parse("-X", q, 0), 20).omega;
        CHECK(agree(w0, TateElem::lambda_power(F, 0, 1), 20));
        // omega for (t1-X)(t2-X) is omega(t1) omega(t2)
        auto w12 = omega_alpha(DrinfeldModule::parse("(t1-X)*(t2-X)", q), 10).omega;
        auto wa = omega_alpha(DrinfeldModule::parse("t1-X", q, 2), 12).omega;
        auto wb = omega_alpha(DrinfeldModule::parse("t2-X", q, 2), 12).omega;
        CHECK(agree(w12, wa * wb, 10));
    }
    // tau(omega) = alpha omega for random unit parameters.
    std::mt19937_64 rng(19);
    const Field* F = Field::get(3);
    for (int it = 0; it < 20; ++it) {
        int r = 1 + static_cast<int>(rng() % 4);
        APoly al = testutil::random_apoly(rng, F, 2, r - 1, 1) + APoly::from_upoly(UPoly::monomial(F, r, 2), 2);
        auto phi = DrinfeldModule::make(al);
        OmegaInfo oi;
        try {
            oi = omega_alpha(phi, 14);
        } catch (const RootNotInField&) {
            // (-1)^r rho = -1 has no square root in F_3; it does in F_9.
            oi = omega_alpha(phi, 14, Field::get(3, 2));
            CHECK(Field::get(3, 2)->pow(oi.rho_tilde, 2) == 2);
        }
        const Field* G = oi.omega.field();
        CHECK(oi.omega.norm_num() == r);
        auto tw = tau(oi.omega).truncated(12);
        auto aw = oi.omega * TateElem::from_apoly(G == F ? al : al.embed(G));
        CHECK(agree(tw, aw, std::min<std::int64_t>(12, aw.prec())));
    }
}

TEST_CASE("drinfeld: pi~/omega in T(K_inf) exactly in the torsion shape") {
    for (int q : {2, 3, 4}) {
        const Field* F = Field::get(q);
        auto pi = pi_tilde(F, 2, 30);
        for (int r = 1; r <= 2 * q + 1; ++r) {
            for (Elt lead = 1; lead < static_cast<Elt>(q); ++lead) {
                // alpha = lead * theta^r + t1 theta^(r-1) + t2
                std::vector<TPoly> c(static_cast<std::size_t>(r + 1), TPoly(F, 2));
                c[0] = TPoly::var(F, 2, 2);
                c[static_cast<std::size_t>(r - 1)] = c[static_cast<std::size_t>(r - 1)] + TPoly::var(F, 2, 1);
                c[static_cast<std::size_t>(r)] = c[static_cast<std::size_t>(r)] + TPoly::constant(F, 2, lead);
                auto phi = DrinfeldModule::make(APoly(F, 2, c));
                bool expected = (r % (q - 1) == 1 % (q - 1)) && phi.monic_negated;
                bool in_ring = false;
                try {
                    auto w = omega_alpha(phi, 30).omega;
                    auto ratio = div(pi, w, 20);
                    in_ring = ratio.grade() == 0;
                    if (in_ring) CHECK(ratio.vmin() * (q - 1) == r - q);
                } catch (const RootNotInField&) {
                    in_ring = false;
                }
                CHECK(in_ring == expected);
            }
        }
    }
}

TEST_CASE("drinfeld: exp preimage for alpha = t") {
    for (int q : {2, 3}) {
        const Field* F = Field::get(q);
        auto phi = DrinfeldModule::parse("t1", q);
        auto z = exp_preimage_alpha_t(phi, TateElem::zero(F, 0, 10), 4);
        for (auto& x : z.x) CHECK(x.is_zero());
        // y = 1: |y| = q^((q - eps)/(q - 1)) with eps = q.
        auto one = exp_preimage_alpha_t(phi, TateElem::one(F, 0).truncated(10), 4);
        CHECK(one.norms_decay);
        long long qn = q;
        for (int n = 0; n <= 4; ++n, qn *= q) CHECK(one.x[static_cast<std::size_t>(n)].vmin() * (q - 1) == qn - q);
        // y = theta: eps = 1, still inside T.
        auto th = exp_preimage_alpha_t(phi, TateElem::theta_power(F, 0, 1).truncated(10), 4);
        CHECK(th.norms_decay);
        qn = 1;
        for (int n = 0; n <= 4; ++n, qn *= q) CHECK(th.x[static_cast<std::size_t>(n)].vmin() * (q - 1) == qn - q);
        // y = theta^2 is outside the disk: norms grow.
        auto th2 = exp_preimage_alpha_t(phi, TateElem::theta_power(F, 0, 2).truncated(10), 4);
        CHECK_FALSE(th2.norms_decay);
    }
}
