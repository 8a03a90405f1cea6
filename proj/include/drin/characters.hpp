#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drin/apoly.hpp"
#include "drin/ratfunc.hpp"
#include "drin/tate.hpp"

namespace drin {

// Teichmueller factor theta_P^N of a Dirichlet character.
struct CharFactor {
    UPoly P;                 // monic prime over F_q
    int d = 0;               // deg P
    std::uint64_t N = 0;     // 1 <= N <= q^d - 2
    std::vector<int> digits; // base-q digits n_0..n_{d-1}
    Elt zeta = 0;            // least root of P in k_a
};

struct DirichletCharacter {
    const Field* base = nullptr;  // F_q
    const Field* ka = nullptr;    // field generated by the roots of the conductor
    std::vector<CharFactor> factors;
    int type_s = 0;

    // Throws NotPrime, PreconditionViolated.  `ka` may name a larger field to
    // work in (it must contain the roots).
    static DirichletCharacter make(const Field* F, const std::vector<std::pair<UPoly, std::uint64_t>>& parts,
                                   const Field* ka = nullptr);
    // "(P1)^N1*(P2)^N2" with the primes in the polynomial grammar; "" or "1" is trivial.
    static DirichletCharacter parse(const std::string& text, int q, const Field* ka = nullptr);

    bool is_trivial() const { return factors.empty(); }
    UPoly conductor() const;
    // zeta_{P_i}^{q^j} repeated n_{i,j} times, blocks ordered by (i, j).
    std::vector<Elt> point() const;
    // chi(b) = prod b(zeta_i)^{N_i} in k_a.
    Elt value(const UPoly& b) const;
    std::string to_string() const;
};

int digit_sum(std::uint64_t N, int q);  // l_q(N)

Elt ev_chi(const DirichletCharacter& chi, const TPoly& x);
UPoly ev_chi(const DirichletCharacter& chi, const APoly& x);
// Throws ArityMismatch unless x has type_s variables.
TateElem ev_chi(const DirichletCharacter& chi, const TateElem& x);

// omega(z) = lambda prod_{i >= 0} (1 - z / theta^{q^i})^{-1} for z in a finite field.
TateElem omega_at(const Field* G, Elt z, std::int64_t prec);
// omega(t_1)...omega(t_s) over F_q, known below exponent prec.
TateElem omega_product(const Field* F, int s, std::int64_t prec);
// Gauss-Thakur sum from the product formula with omega at the roots.
TateElem gauss_sum(const DirichletCharacter& chi, std::int64_t prec);
// The k_a-linear twist: tau on theta, identity on k_a.
TateElem phi_twist(const TateElem& x);

// L(n, chi) = sum over monic b of chi(b) / b^n below exponent prec.
TateElem l_chi(const DirichletCharacter& chi, int n, std::int64_t prec, int threads = 1);

struct Reconstruction {
    bool ok = false;
    UPoly num, den;  // over k_a, lowest terms, den monic
    int bound = 0;
    std::int64_t verified_to = 0;
};
// Pade reconstruction of a grade-0 series as num/den with numerator and
// denominator degrees <= bound, verified below verify_to.
Reconstruction reconstruct_rational(const TateElem& x, int bound, std::int64_t verify_to);

struct BCValue {
    bool zero_by_residue = false;  // i != s mod q-1 (value 0)
    TateElem series;               // Pi(i) L(i,chi) g(chi) pi~^-i
    Reconstruction exact;          // filled when requested
};
// Throws GradeResidue when i != s mod (q-1) unless allow_zero; throws
// ReconstructionFailed when reconstruct is set and no bound up to 64 works.
BCValue bc_general(const DirichletCharacter& chi, int i, std::int64_t prec, bool reconstruct = true,
                   bool allow_zero = false, int threads = 1);

struct EvNIdentity {
    int s = 0, s_prime = 0;
    std::uint64_t N = 0;
    APoly b_num, b_den;  // ev_N(B_{s'}) = b_num / b_den
    bool part1_ok = false;
    std::int64_t part1_checked_to = 0;
    int d = 0;           // 0 when part (2) was skipped
    bool part2_ok = false;
    std::int64_t part2_checked_to = 0;
};
// Both parts of the ev_N identities for B_{s'}, s' = type(chi) + l_q(N).
// Part (2) runs when d >= 1 (requires q^d > N).  Throws PreconditionViolated.
EvNIdentity ev_n_bpoly(const DirichletCharacter& chi, std::uint64_t N, std::int64_t prec, int d = 0);

enum class BCRoute { Exact, Series };
struct HRVerdict {
    int bc_index = 0;     // q^d - N
    UPoly num, den;       // BC_{q^d - N, chi~^-1} over k_a
    bool integral = false;
    bool divisible = false;
    UPoly residue;        // BC mod P
    BCRoute route = BCRoute::Exact;
};
// Throws PreconditionViolated, NotPIntegral, ReconstructionFailed.
HRVerdict herbrand_ribet(const UPoly& P, std::uint64_t N, const DirichletCharacter& chi_tilde, BCRoute route,
                         int threads = 1);

}  // namespace drin
