#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drin/apoly.hpp"
#include "drin/tpoly.hpp"

namespace drin {

// Precision value meaning "every coefficient is known" (exact elements).
constexpr std::int64_t kExact = 1000000000000000LL;

// lambda^grade * ( sum_e c_e theta^{-e} + O(theta^{-prec}) ), with
// lambda^(q-1) = -theta.  Stored coefficients run over [vmin, vmin + size);
// everything between the last stored one and prec is zero.
class TateElem {
public:
    TateElem() = default;
    TateElem(const Field* F, int s, std::int64_t prec = kExact);

    static TateElem zero(const Field* F, int s, std::int64_t prec = kExact) { return TateElem(F, s, prec); }
    static TateElem one(const Field* F, int s);
    static TateElem constant(const TPoly& c);
    static TateElem from_apoly(const APoly& a);
    static TateElem from_upoly(const UPoly& a, int s);
    static TateElem theta_power(const Field* F, int s, std::int64_t k);  // theta^k
    // lambda^g for any g >= 0, reduced to a grade in [0, q-2].
    static TateElem lambda_power(const Field* F, int s, std::int64_t g);
    // Raw constructor: coefficient list starting at exponent vmin.
    static TateElem from_coeffs(const Field* F, int s, int grade, std::int64_t vmin, std::vector<TPoly> c,
                                std::int64_t prec);

    const Field* field() const { return F_; }
    int nvars() const { return s_; }
    int q() const { return F_->q(); }
    int grade() const { return grade_; }
    std::int64_t vmin() const { return vmin_; }
    std::int64_t prec() const { return prec_; }
    bool is_exact() const { return prec_ >= kExact; }
    bool is_zero() const { return c_.empty(); }  // zero up to precision
    std::int64_t vmax() const { return vmin_ + static_cast<std::int64_t>(c_.size()); }  // one past the last stored
    TPoly coeff(std::int64_t e) const;
    const std::vector<TPoly>& stored() const { return c_; }

    // (q-1) * log_q ||x|| = grade - (q-1) vmin, for nonzero x.
    std::int64_t norm_num() const { return grade_ - static_cast<std::int64_t>(q() - 1) * vmin_; }

    TateElem truncated(std::int64_t prec) const;
    TateElem with_nvars(int s) const;
    TateElem embed(const Field* G) const;
    TateElem times_theta(std::int64_t k) const;  // multiply by theta^k
    TateElem scaled(const TPoly& c) const;
    TateElem frob_coeffs(int n) const;

    TateElem operator-() const;
    friend TateElem operator+(const TateElem& a, const TateElem& b);
    friend TateElem operator-(const TateElem& a, const TateElem& b);
    friend TateElem operator*(const TateElem& a, const TateElem& b);

    std::string to_json() const;
    static TateElem from_json(const std::string& text);
    std::string to_string(int max_terms = 12) const;

private:
    void normalize();
    void wrap_grade();  // bring grade into [0, q-2]

    const Field* F_ = nullptr;
    int s_ = 0;
    int grade_ = 0;
    std::int64_t vmin_ = kExact;
    std::int64_t prec_ = kExact;
    std::vector<TPoly> c_;
};

// Inverse of a unit: the leading stored coefficient must be a nonzero constant.
// prec_out = prec - 2 vmin; exact inputs need an explicit target precision.
TateElem inv(const TateElem& x, std::int64_t prec_cap = kExact);
// x / y with y a unit; the precision follows from both operands (capped).
TateElem div(const TateElem& x, const TateElem& y, std::int64_t prec_cap = kExact);
// tau^n: theta -> theta^(q^n), coefficients to the q^n, t fixed.
TateElem tau(const TateElem& x, int n = 1);
// The 1-unit n-th root of a 1-unit of grade 0 (p does not divide n).
TateElem root_of_one_unit(const TateElem& x, int n);
TateElem pow(const TateElem& x, unsigned n);

// x == y below the given exponent (both must be known there).
bool agree(const TateElem& x, const TateElem& y, std::int64_t upto);
// Least exponent below `upto` where x and y differ, or upto if none.
std::int64_t first_difference(const TateElem& x, const TateElem& y, std::int64_t upto);

struct Recognized {
    bool ok = false;
    APoly poly;                  // the part with e <= 0, when ok
    std::int64_t bad_exponent = 0;  // first nonzero tail exponent otherwise
    std::int64_t checked_to = 0;    // tail known to vanish for 1 <= e < checked_to
};
Recognized recognize_polynomial(const TateElem& x, std::int64_t margin);

}  // namespace drin
