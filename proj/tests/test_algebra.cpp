#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "drin/algebra.hpp"
#include "drin/errors.hpp"
#include "test_util.hpp"

using namespace drin;

namespace {

// Laplace expansion, independent of the Berkowitz code.
TPoly laplace_det(const Matrix<TPoly>& M, const Field* F, int s) {
    std::size_t n = M.size();
    if (n == 0) return TPoly::constant(F, s, 1);
    if (n == 1) return M[0][0];
    TPoly acc(F, s);
    for (std::size_t j = 0; j < n; ++j) {
        if (M[0][j].is_zero()) continue;
        Matrix<TPoly> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<TPoly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(M[i][k]);
            sub.push_back(row);
        }
        TPoly term = M[0][j] * laplace_det(sub, F, s);
        if (j % 2) acc -= term;
        else acc += term;
    }
    return acc;
}

// Sylvester resultant Res(a, alpha) = lc(a)^r prod alpha(roots of a).
TPoly sylvester_resultant(const UPoly& a, const APoly& alpha) {
    const Field* F = a.F;
    int s = alpha.nvars();
    int d = a.deg(), r = alpha.deg();
    int n = d + r;
    Matrix<TPoly> S(n, std::vector<TPoly>(n, TPoly(F, s)));
    for (int i = 0; i < r; ++i)
        for (int k = 0; k <= d; ++k) S[i][i + k] = TPoly::constant(F, s, a.coeff(d - k));
    for (int i = 0; i < d; ++i)
        for (int k = 0; k <= r; ++k) S[r + i][i + k] = alpha.coeff(r - k);
    return laplace_det(S, F, s);
}

}  // namespace

TEST_CASE("finite fields: axioms and Frobenius order") {
    for (auto [q, m] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {4, 1}, {9, 1}, {3, 2}, {2, 4}, {3, 4}, {4, 2}}) {
        const Field* F = Field::get(q, m);
        CHECK(F->order() == static_cast<std::uint32_t>(std::pow(q, m) + 0.5));
        std::mt19937_64 rng(q * 100 + m);
        for (int it = 0; it < 200; ++it) {
            Elt a = rng() % F->order(), b = rng() % F->order(), c = rng() % F->order();
            CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            CHECK(F->add(a, F->neg(a)) == 0);
            if (a) CHECK(F->mul(a, F->inv(a)) == 1);
            CHECK(F->frob(a, m) == a);
            CHECK(F->frob(a) == F->pow(a, q));
        }
        // Frobenius has exact order m on a generator of the extension.
        if (m > 1) {
            Elt x = q;  // the class of x in F_q[x]/(modulus)
            Elt y = x;
            int order = 0;
            do {
                y = F->frob(y);
                ++order;
            } while (y != x);
            CHECK(order == m);
        }
    }
}

TEST_CASE("extension moduli are the least irreducible of their degree") {
    const Field* F9 = Field::get(3, 2);
    // Degree-2 monic polynomials over F_3 in index order: x^2, x^2+1, ...; x^2+1 is the first irreducible.
    CHECK(UPoly(Field::get(3), F9->modulus()).to_string() == "X^2+1");
    const Field* F4 = Field::get(2, 2);
    CHECK(UPoly(Field::get(2), F4->modulus()).to_string() == "X^2+X+1");
}

TEST_CASE("enumerate_monic") {
    const Field* F3 = Field::get(3);
    auto d0 = enumerate_monic(F3, 0);
    REQUIRE(d0.size() == 1);
    CHECK(d0[0].to_string() == "1");
    auto d1 = enumerate_monic(F3, 1);
    REQUIRE(d1.size() == 3);
    CHECK(d1[0].to_string() == "X");
    CHECK(d1[1].to_string() == "X+1");
    CHECK(d1[2].to_string() == "X+2");
    auto d3 = enumerate_monic(Field::get(2), 3);
    CHECK(d3.size() == 8);
    for (std::size_t i = 1; i < d3.size(); ++i) CHECK(d3[i - 1] < d3[i]);
}

TEST_CASE("enumerate_primes counts and membership") {
    const Field* F3 = Field::get(3);
    CHECK(enumerate_primes(F3, 1).size() == 3);
    auto p2 = enumerate_primes(F3, 2);
    CHECK(p2.size() == 3);
    bool has = false;
    for (auto& P : p2) has = has || P.to_string() == "X^2+1";
    CHECK(has);
    CHECK(enumerate_primes(Field::get(2), 4).size() == 3);
    for (int q : {2, 3})
        for (int d = 1; d <= 6; ++d) {
            const Field* F = Field::get(q);
            auto ps = enumerate_primes(F, d);
            CHECK(ps.size() == prime_count(q, d));
            // Same primes from the root-based enumeration.
            auto& pr = primes_with_roots(F, d);
            REQUIRE(pr.size() == ps.size());
            for (std::size_t i = 0; i < ps.size(); ++i) {
                CHECK(pr[i].P == ps[i]);
                CHECK(eval(embed(ps[i], Field::get(q, d)), pr[i].root) == 0);
            }
        }
}

TEST_CASE("brute-force irreducibility agrees with the gcd criterion") {
    const Field* F = Field::get(3);
    for (int d = 1; d <= 4; ++d)
        for (auto& f : enumerate_monic(F, d)) {
            bool brute = true;
            for (int k = 1; 2 * k <= d && brute; ++k)
                for (auto& g : enumerate_monic(F, k))
                    if ((f % g).is_zero()) {
                        brute = false;
                        break;
                    }
            CHECK(brute == is_irreducible(f));
        }
}

TEST_CASE("splitting_root") {
    const Field* F3 = Field::get(3);
    CHECK(splitting_root(parse_apoly("X", F3).to_upoly()) == 0);
    CHECK(splitting_root(parse_apoly("X+1", F3).to_upoly()) == 2);
    UPoly P = parse_apoly("X^2+1", F3).to_upoly();
    Elt z = splitting_root(P);
    const Field* F9 = Field::get(3, 2);
    CHECK(F9->add(F9->mul(z, z), 1) == 0);
    // Least root by index, and the other root is its Frobenius image.
    for (Elt w = 0; w < z; ++w) CHECK(eval(embed(P, F9), w) != 0);
    CHECK(eval(embed(P, F9), F9->frob(z)) == 0);
    CHECK(F9->frob(z) != z);
    CHECK_THROWS_AS(splitting_root(parse_apoly("X^2+2*X+1", F3).to_upoly()), NotIrreducible);
}

TEST_CASE("charpoly_fraction_free") {
    const Field* F3 = Field::get(3);
    Matrix<TPoly> one{{TPoly::var(F3, 1, 1)}};
    CHECK(charpoly_fraction_free(one, F3, 1).to_string() == "X+2*t1");
    Matrix<TPoly> z2(2, std::vector<TPoly>(2, TPoly(F3, 0)));
    CHECK(charpoly_fraction_free(z2, F3, 0).to_string() == "X^2");
    UPoly P = parse_apoly("X^2+1", F3).to_upoly();
    auto C = theta_matrix(P);
    Matrix<TPoly> Ct(2, std::vector<TPoly>(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) Ct[i][j] = TPoly::constant(F3, 0, C[i][j]);
    CHECK(charpoly_fraction_free(Ct, F3, 0) == APoly::from_upoly(P, 0));
}

TEST_CASE("Berkowitz determinant matches Laplace expansion on random TPoly matrices") {
    std::mt19937_64 rng(7);
    for (int q : {2, 3}) {
        const Field* F = Field::get(q);
        for (int it = 0; it < 30; ++it) {
            int n = 1 + rng() % 4;
            Matrix<TPoly> M(n, std::vector<TPoly>(n));
            for (auto& row : M)
                for (auto& x : row) x = testutil::random_tpoly(rng, F, 2, 2, 3);
            CHECK(determinant(M, TPolyOps{F, 2}) == laplace_det(M, F, 2));
        }
    }
}

TEST_CASE("resultant_theta examples") {
    const Field* F3 = Field::get(3);
    APoly a2 = parse_apoly("(t1-X)*(t2-X)", F3);
    CHECK(resultant_theta(parse_apoly("X", F3).to_upoly(), a2).to_string() == "t1*t2");
    CHECK(resultant_theta(UPoly::constant(F3, 1), a2).is_one());
    APoly a1 = parse_apoly("t1-X", F3);
    CHECK(resultant_theta(parse_apoly("X^2+1", F3).to_upoly(), a1).to_string() == "t1^2+1");
    CHECK_THROWS_AS(resultant_theta(parse_apoly("X", F3).to_upoly(), APoly(F3, 1)), ZeroParameter);
}

TEST_CASE("resultant agrees with the Sylvester oracle and the root-norm table") {
    std::mt19937_64 rng(11);
    for (int q : {2, 3}) {
        const Field* F = Field::get(q);
        for (int it = 0; it < 40; ++it) {
            APoly alpha = testutil::random_apoly(rng, F, 2, 2, 2);
            if (alpha.is_zero()) continue;
            int d = 1 + rng() % 3;
            UPoly a = monic_from_index(F, d, rng() % count_monic(q, d));
            TPoly r = resultant_theta(a, alpha);
            CHECK(r == sylvester_resultant(a, alpha));
            RhoTable tab(alpha);
            CHECK(tab(a) == r);
        }
    }
}

TEST_CASE("property: rho is multiplicative (100 random pairs)") {
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int it = 0; it < 100; ++it) {
        int q = (it % 2) ? 3 : 2;
        const Field* F = Field::get(q);
        APoly alpha = testutil::random_apoly(rng, F, 2, 2, 2);
        if (alpha.is_zero()) alpha = parse_apoly("t1-X", F, 2);
        int da = 1 + rng() % 2, db = 1 + rng() % 2;  // deg(ab) <= 4
        UPoly a = monic_from_index(F, da, rng() % count_monic(q, da));
        UPoly b = monic_from_index(F, db, rng() % count_monic(q, db));
        CHECK(resultant_theta(a * b, alpha) == resultant_theta(a, alpha) * resultant_theta(b, alpha));
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("rho vanishes at P exactly when P divides alpha") {
    for (int q : {2, 3}) {
        const Field* F = Field::get(q);
        std::vector<APoly> alphas{parse_apoly("t1-X", F, 2), parse_apoly("(X^2+1)*(t1-X)", F, 2),
                                  parse_apoly("X*(X+1)*t2", F, 2), parse_apoly("(X^3+X+1)*t1+X^3+X+1", F, 2)};
        for (auto& alpha : alphas)
            for (int d = 1; d <= 3; ++d)
                for (auto& P : enumerate_primes(F, d)) {
                    // P | alpha in A[t] iff P divides the theta-polynomial attached to every t-monomial.
                    bool divides = true;
                    std::map<std::pair<std::uint64_t, std::uint64_t>, UPoly> bymono;
                    for (int k = 0; k <= alpha.deg(); ++k)
                        for (auto& [m, c] : alpha.coeffs()[k].terms()) {
                            auto& u = bymono[{m.w[0], m.w[1]}];
                            u.F = F;
                            u = u + UPoly::monomial(F, k, c);
                        }
                    for (auto& [key, u] : bymono) divides = divides && (u % P).is_zero();
                    CHECK(resultant_theta(P, alpha).is_zero() == divides);
                }
    }
}

TEST_CASE("polynomial grammar round trips") {
    const Field* F3 = Field::get(3);
    APoly a = parse_apoly("(t1-X)*(t2-X)", F3);
    CHECK(a.nvars() == 2);
    CHECK(parse_apoly(a.to_string(), F3, 2) == a);
    CHECK(parse_apoly("4*X + 5", F3).to_string() == "X+2");
    CHECK(parse_apoly("2X^2-t1", F3).to_string() == "2*X^2+2*t1");
    CHECK_THROWS_AS(parse_apoly("X+", F3), ParseError);
    CHECK_THROWS_AS(parse_apoly("t3", F3, 2), ParseError);
    const Field* F9 = Field::get(3, 2);
    APoly e = parse_apoly("[1,2]*X+[0,1]", F9);
    CHECK(parse_apoly(e.to_string(), F9) == e);
}
