#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace drin {

// Field elements are small integers: the base-p digits of the index are the
// coordinates over F_p.  For F_{q^m} = F_q[x]/(modulus) the index is
// sum_j c_j q^j with c_j in F_q, so F_q sits inside as the indices below q.
using Elt = std::uint32_t;

class Field {
public:
    // Cached; the returned pointer lives for the whole program.
    static const Field* get(int q, int m = 1);

    int p() const { return p_; }
    int e() const { return e_; }  // q = p^e
    int q() const { return q_; }
    int m() const { return m_; }  // degree over F_q
    std::uint32_t order() const { return order_; }

    // Defining polynomial over F_q, low degree first, monic, length m+1.
    const std::vector<Elt>& modulus() const { return modulus_; }
    const Field* base() const { return base_; }
    bool is_base() const { return m_ == 1; }

    Elt zero() const { return 0; }
    Elt one() const { return 1; }
    Elt from_int(long long v) const;

    Elt add(Elt a, Elt b) const {
        if (!add_table_.empty()) return add_table_[a * order_ + b];
        return add_slow(a, b);
    }
    Elt neg(Elt a) const { return neg_table_[a]; }
    Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
    Elt mul(Elt a, Elt b) const {
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = log_[a] + log_[b];
        if (s >= order_ - 1) s -= order_ - 1;
        return exp_[s];
    }
    Elt inv(Elt a) const;
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    Elt pow(Elt a, long long n) const;
    // a^(q^n)
    Elt frob(Elt a, int n = 1) const;

    // True when a lies in the subfield F_q.
    bool in_base(Elt a) const { return a < static_cast<Elt>(q_); }
    std::vector<Elt> coords(Elt a) const;  // over F_q, length m
    Elt from_coords(const std::vector<Elt>& c) const;

    std::string elt_to_string(Elt a) const;  // "2" in the base field, "[c0,c1,...]" otherwise
    std::string describe() const;            // e.g. "F_3" or "F_3[x]/(x^2+1)"

private:
    Field(int q, int m);
    Elt add_slow(Elt a, Elt b) const;
    Elt poly_mul(Elt a, Elt b) const;  // multiplication without tables, used to build them

    int p_ = 0, e_ = 0, q_ = 0, m_ = 0;
    std::uint32_t order_ = 0;
    const Field* base_ = nullptr;
    std::vector<Elt> modulus_;
    std::vector<int> prime_modulus_;  // modulus of F_q over F_p when e > 1
    std::vector<std::uint32_t> log_, exp_;
    std::vector<Elt> add_table_, neg_table_;
};

bool is_prime_int(long long n);
// Returns (p, e) with q = p^e, or throws PreconditionViolated.
std::pair<int, int> prime_power(int q);

}  // namespace drin
