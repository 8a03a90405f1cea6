#pragma once

#include <string>

#include "drin/upoly.hpp"

namespace drin {

// Element of F_q(theta) in lowest terms with a monic denominator.
struct RatFunc {
    UPoly num, den;

    RatFunc() = default;
    explicit RatFunc(const Field* F) : num(F), den(UPoly::constant(F, 1)) {}
    RatFunc(const UPoly& n);  // NOLINT: polynomials are rational functions
    RatFunc(const UPoly& n, const UPoly& d);

    const Field* field() const { return num.F; }
    bool is_zero() const { return num.is_zero(); }
    bool is_polynomial() const { return den.deg() == 0; }
    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }
    // theta-adic valuation at infinity: deg den - deg num.
    long long valuation() const;
    std::string to_string() const;
};

RatFunc operator+(const RatFunc& a, const RatFunc& b);
RatFunc operator-(const RatFunc& a, const RatFunc& b);
RatFunc operator-(const RatFunc& a);
RatFunc operator*(const RatFunc& a, const RatFunc& b);
RatFunc operator/(const RatFunc& a, const RatFunc& b);  // throws ZeroParameter on b = 0
RatFunc tau(const RatFunc& a, int n = 1);

}  // namespace drin
