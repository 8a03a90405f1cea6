#pragma once

#include <cstdint>
#include <vector>

#include "drin/apoly.hpp"
#include "drin/tate.hpp"
#include "drin/upoly.hpp"

namespace drin {

// Rank-one Drinfeld module over F_q[theta][t_1..t_s] with phi_theta = theta + alpha tau.
struct DrinfeldModule {
    const Field* F = nullptr;
    int s = 0;
    APoly alpha;
    int r = 0;  // deg_theta alpha
    int u = 0;  // max(0, floor((r - q) / (q - 1)))
    bool monic_negated = false;

    static DrinfeldModule make(const APoly& alpha);  // throws ZeroParameter
    static DrinfeldModule parse(const std::string& alpha_text, int q, int s = -1);
    int q() const { return F->q(); }
};

// phi_a = sum_i c_i tau^i with c_i = (a)_i alpha tau(alpha) ... tau^(i-1)(alpha).
std::vector<APoly> phi_coeffs(const DrinfeldModule& phi, const UPoly& a);
// Composition of tau-polynomials given by coefficient lists.
std::vector<APoly> compose_tau(const std::vector<APoly>& a, const std::vector<APoly>& b);
TateElem phi_apply(const DrinfeldModule& phi, const UPoly& a, const TateElem& x);

TateElem exp_phi_apply(const DrinfeldModule& phi, const TateElem& x, std::int64_t prec);
// Throws OutsideLogDomain unless ||x|| < q^((q - r)/(q - 1)).
TateElem log_phi_apply(const DrinfeldModule& phi, const TateElem& x, std::int64_t prec);

bool is_uniformizable(const DrinfeldModule& phi);

struct OmegaInfo {
    TateElem omega;
    Elt rho_tilde = 1;  // in the coefficient field used
};
// omega_alpha, known below exponent prec, over the coefficient field of alpha
// (or `coeff_field` when given, which must contain it).  Throws
// NotUniformizable or RootNotInField.
OmegaInfo omega_alpha(const DrinfeldModule& phi, std::int64_t prec, const Field* coeff_field = nullptr);

struct ExpPreimage {
    std::vector<TateElem> x;  // x_0 .. x_nmax in K_infinity
    bool norms_decay = true;  // v(x_n) strictly increasing over the computed range
};
// For alpha = t_1 (s = 1): the unique x = sum x_n t^n with exp_phi(x) = y.
ExpPreimage exp_preimage_alpha_t(const DrinfeldModule& phi, const TateElem& y, int nmax);

}  // namespace drin
