#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drin/algebra.hpp"
#include "drin/drinfeld.hpp"
#include "drin/tate.hpp"

namespace drin {

// Polynomial in Z with TPoly coefficients, truncated mod Z^nz.
struct ZPoly {
    const Field* F = nullptr;
    int s = 0;
    int nz = 0;
    std::vector<TPoly> c;  // length nz

    ZPoly() = default;
    ZPoly(const Field* F, int s, int nz);
    static ZPoly one(const Field* F, int s, int nz);

    bool operator==(const ZPoly& o) const { return c == o.c; }
    bool operator!=(const ZPoly& o) const { return !(*this == o); }
    friend ZPoly operator+(const ZPoly& a, const ZPoly& b);
    friend ZPoly operator-(const ZPoly& a, const ZPoly& b);
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
    ZPoly operator-() const;
    // Requires constant term 1.
    ZPoly inverse() const;
    // Lowest k >= 1 with a nonzero Z^k coefficient, nz when there is none.
    int lowest_nonconstant() const;
    // Substitution Z = 1/theta, known below exponent nz.
    TateElem at_inverse_theta() const;
    std::string to_string() const;
};

// 1 + sum_{n=1}^{nz-1} M_n Z^n on a space of dimension dim.
struct ZSeriesMat {
    int dim = 0;
    int nz = 0;
    std::vector<Matrix<TPoly>> mats;  // mats[n-1] = M_n
};

// Matrices of f_n = -alpha tau theta^(n-1) on R/PR with basis 1..theta^(d-1).
ZSeriesMat prime_operator(const DrinfeldModule& phi, const UPoly& P, int nz);
// The same operators on K(t)_inf / R modulo the image of m^M, basis theta^-1..theta^-(M-1).
ZSeriesMat infinity_operator(const DrinfeldModule& phi, int nz, int M);
ZPoly det_one_plus(const ZSeriesMat& op, const Field* F, int s);

// Throws NotPrime.
ZPoly prime_det(const DrinfeldModule& phi, const UPoly& P, int nz);
// Least M for which m^M is a common nucleus of f_1..f_{nz-1}.
int nucleus_floor(const DrinfeldModule& phi, int nz);
// Throws QuotientTooShallow when M < nucleus_floor.
ZPoly infinity_det(const DrinfeldModule& phi, int nz, int M);

struct TraceReport {
    int nz = 0;
    int depth = 0;
    int primes_used = 0;
    ZPoly primes_side;    // prod over deg P < nz of det(1+F | R/PR)
    ZPoly infinity_side;  // det(1+F | K(t)_inf/R)^-1
    bool equal = false;
};
// depth <= 0 selects nucleus_floor.
TraceReport trace_formula_check(const DrinfeldModule& phi, int nz, int depth = 0, int threads = 1);

}  // namespace drin
