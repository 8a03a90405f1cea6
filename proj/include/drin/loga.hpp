#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "drin/apoly.hpp"
#include "drin/ratfunc.hpp"

namespace drin {

// prod tau^m(X_j)^mult * tau^z(Z); x maps (j, m) -> mult with j in 1..r.
struct OpMonomial {
    std::map<std::pair<int, int>, int> x;
    int z = 0;

    bool operator<(const OpMonomial& o) const {
        if (z != o.z) return z < o.z;
        return x < o.x;
    }
    bool operator==(const OpMonomial& o) const { return z == o.z && x == o.x; }
    OpMonomial operator*(const OpMonomial& o) const;  // z indices add; used for products of X-parts
    OpMonomial tau(int n = 1) const;
    std::string to_string() const;  // "X1*tau(X2)*tau^2(Z)"
};

// Sum of c * monomial with c in F_q(theta), truncated to z <= nmax.
struct OperatorSeries {
    const Field* F = nullptr;
    int r = 0;
    int nmax = 0;
    bool truncated = false;  // some term beyond nmax was dropped
    std::map<OpMonomial, RatFunc> terms;

    OperatorSeries() = default;
    OperatorSeries(const Field* f, int r_, int nmax_) : F(f), r(r_), nmax(nmax_) {}

    void add(const OpMonomial& m, const RatFunc& c);
    bool is_zero() const { return terms.empty(); }
    bool operator==(const OperatorSeries& o) const { return terms == o.terms; }
    int max_z() const;                   // -1 when zero
    OperatorSeries block(int z) const;  // the tau^z(Z) part
    std::vector<std::pair<std::string, std::string>> serialize() const;
};

OperatorSeries operator+(const OperatorSeries& a, const OperatorSeries& b);
OperatorSeries operator-(const OperatorSeries& a, const OperatorSeries& b);
OperatorSeries scale(const OperatorSeries& a, const RatFunc& c);
// tau on coefficients (theta -> theta^q) and on every symbol.
OperatorSeries tau(const OperatorSeries& a, int n = 1);

// t_i^j acting on x; i in 1..r acts on X_i through C_{theta^j}, i = r+1 shifts Z.
OperatorSeries t_action(int i, int j, const OperatorSeries& x);
// g in A[t_1..t_{r+1}] acting on x.
OperatorSeries apply_tpoly(const APoly& g, const OperatorSeries& x);

// sum_{d <= dmax} (sum_{a in A+,d} C_a(X_1)...C_a(X_r) / a) tau^d(Z).
OperatorSeries build_script_l(const Field* F, int r, int dmax);

struct LogAlgebraic {
    OperatorSeries S;
    int dmax = 0;
    int max_z = -1;               // largest nonzero zIndex of S
    bool trailing_zero = false;   // the two last blocks vanish
};
// S_r = exp_C(L_r) through zIndex dmax.  dmax < 0 picks the least dmax >= 2 whose
// last two blocks vanish (up to 8).  Throws NonIntegralCoefficient.
LogAlgebraic log_algebraic_poly(const Field* F, int r, int dmax = -1);

// Commutative polynomial in Y_1..Y_k, z over A; key is (exponents of Y, exponent of z).
struct CommPoly {
    const Field* F = nullptr;
    int k = 0;
    std::map<std::pair<std::vector<int>, int>, UPoly> terms;

    void add(const std::vector<int>& ye, int ze, const UPoly& c);
    bool operator==(const CommPoly& o) const { return terms == o.terms; }
    std::string to_string() const;
};
// psi: tau^m(X_j) -> Y_j^(q^m), tau^m(Z) -> z^(q^m).  With one_variable all Y_j
// become a single Y.  Requires integral coefficients.
CommPoly specialize(const OperatorSeries& S, bool one_variable);
CommPoly frobenius(const CommPoly& p);  // f -> f^q

}  // namespace drin
