#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "drin/field.hpp"

namespace drin {

constexpr int kMaxVars = 16;

// Exponent vector for t_1..t_16, one byte per variable.  Packed so that
// comparing (w[0], w[1]) is lexicographic with t_1 most significant.
struct Mono {
    std::uint64_t w[2] = {0, 0};

    int exp(int i) const { return static_cast<int>((w[i >> 3] >> (56 - 8 * (i & 7))) & 0xff); }
    void set(int i, int e);
    int total_degree() const;
    bool is_one() const { return w[0] == 0 && w[1] == 0; }
    Mono operator*(const Mono& o) const;  // exponent addition; throws on overflow past 255

    bool operator==(const Mono& o) const { return w[0] == o.w[0] && w[1] == o.w[1]; }
    bool operator!=(const Mono& o) const { return !(*this == o); }
    bool operator<(const Mono& o) const { return w[0] != o.w[0] ? w[0] < o.w[0] : w[1] < o.w[1]; }
};

// Polynomial in t_1..t_s with coefficients in a finite field.  Terms are kept
// sorted by monomial with no zero coefficients.
class TPoly {
public:
    using Term = std::pair<Mono, Elt>;

    TPoly() = default;
    TPoly(const Field* F, int s) : F_(F), s_(s) {}
    static TPoly constant(const Field* F, int s, Elt c);
    static TPoly var(const Field* F, int s, int i);  // t_i, 1-based

    const Field* field() const { return F_; }
    int nvars() const { return s_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
    Elt constant_term() const;
    bool is_one() const { return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1; }
    int total_degree() const;
    int degree_in(int i) const;  // 1-based variable

    // Build from arbitrary terms; sorts, merges and drops zeros.
    static TPoly from_terms(const Field* F, int s, std::vector<Term> raw);

    bool operator==(const TPoly& o) const { return terms_ == o.terms_ && (terms_.empty() || F_ == o.F_); }
    bool operator!=(const TPoly& o) const { return !(*this == o); }

    TPoly& operator+=(const TPoly& o);
    TPoly& operator-=(const TPoly& o);
    TPoly& operator*=(const TPoly& o) { return *this = *this * o; }
    friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
    friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
    friend TPoly operator*(const TPoly& a, const TPoly& b);
    TPoly operator-() const;
    TPoly scaled(Elt c) const;

    TPoly frob(int n) const;                       // coefficients to the q^n
    TPoly embed(const Field* G) const;             // same polynomial over an extension
    TPoly with_nvars(int s) const;                 // widen or narrow (narrowing requires unused vars)
    // Substitute t_i -> vals[i-1] for every variable; result is a constant.
    Elt evaluate(const std::vector<Elt>& vals) const;
    // Substitute a subset of variables by constants; map[i] < 0 keeps t_i renamed to t_{-map[i]}.
    TPoly substitute(const std::vector<std::pair<int, Elt>>& fixed, int new_s,
                     const std::vector<int>& rename) const;

    std::string to_string() const;

private:
    const Field* F_ = nullptr;
    int s_ = 0;
    std::vector<Term> terms_;
    friend void addmul_into(std::vector<TPoly::Term>& acc, const TPoly& a, const TPoly& b);
};

TPoly pow(const TPoly& a, unsigned n);
// Accumulate raw products; call TPoly::from_terms once at the end.
void addmul_into(std::vector<TPoly::Term>& acc, const TPoly& a, const TPoly& b);
void normalize_terms(const Field* F, std::vector<TPoly::Term>& raw);

}  // namespace drin
