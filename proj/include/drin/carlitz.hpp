#pragma once

#include <cstdint>
#include <vector>

#include "drin/apoly.hpp"
#include "drin/ratfunc.hpp"
#include "drin/tate.hpp"
#include "drin/upoly.hpp"

namespace drin {

// D_0 = 1, D_i = (theta^(q^i) - theta) D_{i-1}^q.  Cached per field.
const UPoly& carlitz_D(const Field* F, int i);
// l_0 = 1, l_i = (theta - theta^(q^i)) l_{i-1}.
const UPoly& carlitz_l(const Field* F, int i);

// prod D_i^(n_i) over the base-q digits n_i of N.
UPoly carlitz_factorial(const Field* F, std::uint64_t N);

// Coefficients (a)_0 .. (a)_deg of C_a = sum (a)_i tau^i.
std::vector<UPoly> carlitz_coeffs(const UPoly& a);

// pi~ as an element of grade 1, known below exponent prec.
TateElem pi_tilde(const Field* F, int s, std::int64_t prec);

enum class TauSeries { Exp, Log };

// sum_i alpha tau(alpha) ... tau^(i-1)(alpha) tau^i(x) / den_i, with den_i = D_i
// (Exp) or l_i (Log), computed below exponent prec.  For Log the caller is
// responsible for the domain check.
TateElem tau_alpha_series(const TateElem& x, const APoly& alpha, TauSeries kind, std::int64_t prec);

TateElem exp_c_apply(const TateElem& x, std::int64_t prec);
// Throws OutsideLogDomain unless ||x|| < q^(q/(q-1)).
TateElem log_c_apply(const TateElem& x, std::int64_t prec);

struct FormalExp {
    std::vector<RatFunc> exp;    // coefficients of X^0..X^dmax in exp_C(X)
    std::vector<RatFunc> recip;  // coefficients of X/exp_C(X)
};
FormalExp carlitz_exp_formal(const Field* F, int dmax);
// Pi(n) times the coefficient of X^n in X/exp_C(X).
RatFunc bc_classical(const Field* F, int n);

}  // namespace drin
