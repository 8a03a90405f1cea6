#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "drin/apoly.hpp"
#include "drin/tpoly.hpp"
#include "drin/upoly.hpp"

namespace drin {

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Division-free characteristic polynomial (Berkowitz).  Works over any
// commutative ring given by Ops: zero(), one(), add, sub, mul, neg.
// Returns c[0..n] with det(x I - A) = sum_k c[k] x^(n-k), c[0] = 1.
template <class T, class Ops>
std::vector<T> berkowitz(const Matrix<T>& A, const Ops& ops) {
    const std::size_t n = A.size();
    std::vector<T> vect{ops.one()};
    if (n == 0) return vect;
    vect.push_back(ops.neg(A[0][0]));
    for (std::size_t r = 1; r < n; ++r) {
        std::vector<T> t(r + 2, ops.zero());
        t[0] = ops.one();
        t[1] = ops.neg(A[r][r]);
        std::vector<T> v(r);
        for (std::size_t i = 0; i < r; ++i) v[i] = A[i][r];
        for (std::size_t k = 2; k <= r + 1; ++k) {
            if (k > 2) {
                std::vector<T> w(r, ops.zero());
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < r; ++j) w[i] = ops.add(w[i], ops.mul(A[i][j], v[j]));
                v = std::move(w);
            }
            T dot = ops.zero();
            for (std::size_t j = 0; j < r; ++j) dot = ops.add(dot, ops.mul(A[r][j], v[j]));
            t[k] = ops.neg(dot);
        }
        std::vector<T> nv(r + 2, ops.zero());
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= std::min(i, r); ++j) nv[i] = ops.add(nv[i], ops.mul(t[i - j], vect[j]));
        vect = std::move(nv);
    }
    return vect;
}

template <class T, class Ops>
T determinant(const Matrix<T>& A, const Ops& ops) {
    auto c = berkowitz(A, ops);
    T d = c.back();
    return (A.size() % 2) ? ops.neg(d) : d;
}

struct TPolyOps {
    const Field* F;
    int s;
    TPoly zero() const { return TPoly(F, s); }
    TPoly one() const { return TPoly::constant(F, s, 1); }
    TPoly add(const TPoly& a, const TPoly& b) const { return a + b; }
    TPoly sub(const TPoly& a, const TPoly& b) const { return a - b; }
    TPoly mul(const TPoly& a, const TPoly& b) const { return a * b; }
    TPoly neg(const TPoly& a) const { return -a; }
};

// det(theta I - M) as a monic theta-polynomial with TPoly coefficients.
APoly charpoly_fraction_free(const Matrix<TPoly>& M, const Field* F, int s);

// Companion-style matrix of multiplication by theta on F[theta]/(P), basis 1..theta^(d-1).
Matrix<Elt> theta_matrix(const UPoly& P);
// Matrix of multiplication by alpha on F[t][theta]/(P).
Matrix<TPoly> multiplication_matrix(const APoly& alpha, const UPoly& P);

// rho_alpha(a) = prod over roots z of a of alpha(z), a monic; computed as the
// determinant of multiplication by alpha modulo a.
TPoly resultant_theta(const UPoly& a, const APoly& alpha);

// Least root (by element index) of the prime P in F_{q^d} with the canonical modulus.
Elt splitting_root(const UPoly& P);
const Field* splitting_field(const UPoly& P);

struct PrimeRoot {
    UPoly P;
    Elt root;  // least root, in Field::get(q, deg P)
};
// All primes of degree d together with their least roots, in index order.
// Found by running over F_{q^d} and collecting minimal polynomials.
const std::vector<PrimeRoot>& primes_with_roots(const Field* F, int d);

// alpha(z) alpha(z^q) ... alpha(z^(q^(d-1))), folded back to the base field.
TPoly norm_at_root(const APoly& alpha, const Field* ext, Elt root, int d);

// Memoised rho_alpha over monic polynomials, using multiplicativity and
// norms at roots for primes.
class RhoTable {
public:
    explicit RhoTable(const APoly& alpha);
    const TPoly& operator()(const UPoly& a);
    const APoly& alpha() const { return alpha_; }

private:
    APoly alpha_;
    const Field* F_;
    std::map<std::pair<int, std::uint64_t>, TPoly> memo_;
};

}  // namespace drin
