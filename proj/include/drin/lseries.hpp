#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "drin/algebra.hpp"
#include "drin/apoly.hpp"
#include "drin/drinfeld.hpp"
#include "drin/tate.hpp"

namespace drin {

// Weighted sums  sum_{d <= dmax} sum_{a in A+,d} w(a) / a^n  below exponent prec.
// w(a) must be a polynomial in the coefficients of a of degree <= coeff_degree(d)
// with theta-degree <= theta_degree(d); blocks whose low coefficients cannot
// survive the power sums over F_q are skipped exactly.
struct DirichletSum {
    const Field* F = nullptr;  // base field of a
    const Field* G = nullptr;  // coefficient field of the weights
    int s = 0;
    int n = 1;
    std::int64_t prec = 1;
    int dmax = 0;
    std::function<int(int)> theta_degree = [](int) { return 0; };
    std::function<int(int)> coeff_degree;
    // Called once per worker; the returned function need not be thread-safe.
    std::function<std::function<APoly(const UPoly&)>()> make_weight;
    int threads = 1;
};
TateElem dirichlet_sum(const DirichletSum& sum);

// L(n, phi) = sum rho_alpha(a) / a^n below exponent prec (n >= 1).
TateElem l_value(const DrinfeldModule& phi, int n, std::int64_t prec, int threads = 1);

// prod over primes of degree <= maxdeg of (1 - rho(P)/P^n)^-1, below exponent prec.
TateElem euler_product(const DrinfeldModule& phi, int n, int maxdeg, std::int64_t prec);

struct LNegative {
    APoly value;
    int last_degree = 0;   // highest block summed
    int vanishing_bound = 0;  // blocks beyond this vanish by the power-sum argument
};
// L(-j, phi) = sum rho_alpha(a) a^j, exact.  Throws NoStabilization.
LNegative l_negative(const DrinfeldModule& phi, int j, int window = 3);

struct BPoly {
    bool closed_form = false;  // r = 1: B = 1/(theta - x) with x = alpha + theta
    APoly poly;                // B when !closed_form; theta - x otherwise
    bool monic_of_degree_u = false;
    std::int64_t checked_to = 0;  // tail verified zero for 1 <= e < checked_to
    TateElem series;              // (-1)^((r-1)/(q-1)) L(1,phi) omega / pi~
};
// Throws NotTorsionCase or TailNotVanishing.
BPoly b_poly(const DrinfeldModule& phi, std::int64_t tail, int threads = 1);

struct ExpOfL {
    APoly value;
    std::int64_t checked_to = 0;
};
// exp_phi(L(1, phi)) recognized as a polynomial; throws TailNotVanishing.
ExpOfL exp_of_l(const DrinfeldModule& phi, std::int64_t prec, std::int64_t margin, int threads = 1);

// Matrix of x -> theta x + alpha tau(x) on F[t][theta]/(P), basis 1..theta^(d-1).
Matrix<TPoly> phi_theta_matrix(const DrinfeldModule& phi, const UPoly& P);

struct LocalFactor {
    APoly charpoly;  // [phi(R/PR)]
    APoly expected;  // P - rho_alpha(P)
    bool matches = false;
};
// Throws NotPrime.
LocalFactor local_factor(const DrinfeldModule& phi, const UPoly& P);

// Monic generator of the Fitting ideal of a finite module given by its theta-action.
APoly fitting_generator(const Matrix<TPoly>& M, const Field* F, int s);

}  // namespace drin
