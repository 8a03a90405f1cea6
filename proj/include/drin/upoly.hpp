#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drin/field.hpp"

namespace drin {

// Univariate polynomial in theta over a finite field; c[i] is the coefficient
// of theta^i, with no trailing zeros.
struct UPoly {
    const Field* F = nullptr;
    std::vector<Elt> c;

    UPoly() = default;
    explicit UPoly(const Field* f) : F(f) {}
    UPoly(const Field* f, std::vector<Elt> coeffs) : F(f), c(std::move(coeffs)) { trim(); }

    static UPoly constant(const Field* f, Elt a) { return UPoly(f, {a}); }
    static UPoly monomial(const Field* f, int deg, Elt a = 1);
    static UPoly theta(const Field* f) { return monomial(f, 1); }

    int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    Elt lc() const { return c.empty() ? 0 : c.back(); }
    Elt coeff(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : 0; }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool operator==(const UPoly& o) const { return c == o.c; }
    bool operator!=(const UPoly& o) const { return c != o.c; }
    bool operator<(const UPoly& o) const;  // the enumeration order

    std::string to_string(const std::string& var = "X") const;
};

UPoly operator+(const UPoly& a, const UPoly& b);
UPoly operator-(const UPoly& a, const UPoly& b);
UPoly operator-(const UPoly& a);
UPoly operator*(const UPoly& a, const UPoly& b);
UPoly scale(const UPoly& a, Elt s);
UPoly shift(const UPoly& a, int k);  // times theta^k
void divmod(const UPoly& a, const UPoly& b, UPoly& quo, UPoly& rem);
UPoly operator/(const UPoly& a, const UPoly& b);  // exact; throws InexactDivision
UPoly operator%(const UPoly& a, const UPoly& b);
UPoly gcd(const UPoly& a, const UPoly& b);       // monic, or zero
UPoly make_monic(const UPoly& a);
UPoly pow(const UPoly& a, long long n);
UPoly powmod(const UPoly& a, std::uint64_t n, const UPoly& mod);
UPoly derivative(const UPoly& a);
Elt eval(const UPoly& a, Elt x);
// Image of a under the field embedding F -> G (G an extension of F's base).
UPoly embed(const UPoly& a, const Field* G);
// theta -> theta^(q^n), coefficients raised to q^n.
UPoly tau(const UPoly& a, int n = 1);

// Irreducibility by gcd with theta^(q^i) - theta, i <= deg/2.
bool is_irreducible(const UPoly& f);

// Monic polynomials of degree d over F_q are indexed by the integer
// sum_{j<d} c_j q^j; the lexicographic order compares c_{d-1} first.
UPoly monic_from_index(const Field* F, int d, std::uint64_t idx);
std::uint64_t monic_index(const UPoly& a);
std::uint64_t count_monic(int q, int d);

// All monic polynomials of degree d, in index order.
std::vector<UPoly> enumerate_monic(const Field* F, int d);
// All primes (monic irreducibles) of degree d, in index order.
std::vector<UPoly> enumerate_primes(const Field* F, int d);
// (1/d) sum_{c | d} mu(c) q^{d/c}
std::uint64_t prime_count(int q, int d);

}  // namespace drin
