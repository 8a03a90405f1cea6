#include "drin/ratfunc.hpp"

#include "drin/errors.hpp"

namespace drin {

RatFunc::RatFunc(const UPoly& n) : num(n), den(UPoly::constant(n.F, 1)) {}

RatFunc::RatFunc(const UPoly& n, const UPoly& d) {
    if (d.is_zero()) throw ZeroParameter("rational function with zero denominator");
    const Field* F = d.F;
    if (n.is_zero()) {
        num = UPoly(F);
        den = UPoly::constant(F, 1);
        return;
    }
    UPoly g = gcd(n, d);
    num = n / g;
    den = d / g;
    Elt l = F->inv(den.lc());
    num = scale(num, l);
    den = scale(den, l);
}

long long RatFunc::valuation() const {
    if (num.is_zero()) return 1LL << 60;
    return den.deg() - num.deg();
}

std::string RatFunc::to_string() const {
    if (is_polynomial()) return num.to_string();
    return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den == b.den) return RatFunc(a.num + b.num, a.den);
    return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
}

RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    r.num = -r.num;
    return r;
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc(a.field());
    // Cross-cancel first to keep degrees small.
    UPoly g1 = gcd(a.num, b.den), g2 = gcd(b.num, a.den);
    return RatFunc((a.num / g1) * (b.num / g2), (a.den / g2) * (b.den / g1));
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw ZeroParameter("division by the zero rational function");
    return a * RatFunc(b.den, b.num);
}

RatFunc tau(const RatFunc& a, int n) { return RatFunc(tau(a.num, n), tau(a.den, n)); }

}  // namespace drin
