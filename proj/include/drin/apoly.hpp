#pragma once

#include <string>
#include <vector>

#include "drin/tpoly.hpp"
#include "drin/upoly.hpp"

namespace drin {

// Polynomial in theta with coefficients in F[t_1..t_s]; c[i] multiplies theta^i.
class APoly {
public:
    APoly() = default;
    APoly(const Field* F, int s) : F_(F), s_(s) {}
    APoly(const Field* F, int s, std::vector<TPoly> c);
    static APoly from_upoly(const UPoly& a, int s);
    static APoly constant(const TPoly& c);

    const Field* field() const { return F_; }
    int nvars() const { return s_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<TPoly>& coeffs() const { return c_; }
    TPoly coeff(int i) const;
    const TPoly& lc() const { return c_.back(); }
    // True if every coefficient is a constant, i.e. the polynomial lies in F[theta].
    bool is_t_free() const;
    UPoly to_upoly() const;  // requires is_t_free()

    bool operator==(const APoly& o) const { return c_ == o.c_; }
    bool operator!=(const APoly& o) const { return !(*this == o); }

    friend APoly operator+(const APoly& a, const APoly& b);
    friend APoly operator-(const APoly& a, const APoly& b);
    friend APoly operator*(const APoly& a, const APoly& b);
    APoly operator-() const;
    APoly scaled(const TPoly& c) const;

    APoly tau(int n = 1) const;  // theta -> theta^(q^n), coefficients to the q^n
    APoly with_nvars(int s) const;
    APoly embed(const Field* G) const;
    // Coefficients of the remainder mod a monic P in F[theta], as TPolys (length deg P).
    std::vector<TPoly> reduce_mod(const UPoly& P) const;
    // Substitute t_i -> the given theta-polynomials.
    APoly substitute_t(const std::vector<APoly>& vals) const;
    // Evaluate each coefficient at t = vals (a point over the field), leaving a theta-polynomial.
    UPoly evaluate_t(const std::vector<Elt>& vals) const;

    std::string to_string() const;

private:
    void trim();
    const Field* F_ = nullptr;
    int s_ = 0;
    std::vector<TPoly> c_;
};

APoly pow(const APoly& a, unsigned n);

// Text grammar: X is theta, t1..t9 are the t-variables, integers are reduced
// mod p, '#k' is the base-field element of index k, '[c0,c1,...]' an element
// of the coefficient field given by coordinates.  Operators + - * ^ and parens.
APoly parse_apoly(const std::string& text, const Field* F, int s = -1);
// Highest t-index used in the text (0 when there is none).
int max_t_index(const std::string& text);

}  // namespace drin
