#include "drin/characters.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <numeric>

#include "drin/algebra.hpp"
#include "drin/carlitz.hpp"
#include "drin/drinfeld.hpp"
#include "drin/errors.hpp"
#include "drin/lseries.hpp"

namespace drin {

namespace {

std::uint64_t ipow_u(std::uint64_t q, int k) {
    std::uint64_t r = 1;
    while (k-- > 0) r *= q;
    return r;
}

Elt least_root(const UPoly& P, const Field* G) {
    UPoly Pg = embed(P, G);
    for (Elt z = 0; z < G->order(); ++z)
        if (eval(Pg, z) == 0) return z;
    throw RootNotInField(P.to_string() + " has no root in " + G->describe());
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool odd_sign(std::uint64_t N, int s_prime, int q) {
    return ((N + static_cast<std::uint64_t>((s_prime - 1) / (q - 1))) & 1U) != 0;
}

TateElem signed_if(const TateElem& x, bool neg) { return neg ? -x : x; }

// pi~^-e over G, known to roughly exponent P.
TateElem pi_power(const Field* base, const Field* G, std::int64_t e, std::int64_t P) {
    TateElem pi = pi_tilde(base, 0, P + 2 * std::llabs(e) + 4);
    if (G != base) pi = pi.embed(G);
    if (e == 0) return TateElem::one(G, 0);
    if (e < 0) return pow(pi, static_cast<unsigned>(-e));
    return inv(pow(pi, static_cast<unsigned>(e)), P + 4 * e + 4);
}

}  // namespace

// omega(t_1)...omega(t_s) = lambda^s prod_{i,k} (1 - t_k / theta^{q^i})^{-1}.
TateElem omega_product(const Field* F, int s, std::int64_t prec) {
    const int q = F->q();
    const std::int64_t P = prec + s + 2;
    TateElem acc = TateElem::one(F, s);
    for (std::int64_t qi = 1; qi < P; qi *= q) {
        TateElem f = TateElem::one(F, s);
        for (int k = 1; k <= s; ++k) {
            std::vector<TPoly> c(static_cast<std::size_t>(qi + 1), TPoly(F, s));
            c[0] = TPoly::constant(F, s, 1);
            c[static_cast<std::size_t>(qi)] = -TPoly::var(F, s, k);
            f = f * TateElem::from_coeffs(F, s, 0, 0, std::move(c), kExact);
        }
        acc = (acc * inv(f, P)).truncated(P);
    }
    return (acc * TateElem::lambda_power(F, s, s)).truncated(prec);
}

int digit_sum(std::uint64_t N, int q) {
    int s = 0;
    for (; N > 0; N /= static_cast<std::uint64_t>(q)) s += static_cast<int>(N % static_cast<std::uint64_t>(q));
    return s;
}

DirichletCharacter DirichletCharacter::make(const Field* F, const std::vector<std::pair<UPoly, std::uint64_t>>& parts,
                                            const Field* ka) {
    if (!F->is_base()) throw PreconditionViolated("characters are defined over F_q");
    const int q = F->q();
    DirichletCharacter chi;
    chi.base = F;
    int m = 1;
    for (const auto& [P, N] : parts) {
        if (P.deg() < 1 || !P.is_monic() || !is_irreducible(P)) throw NotPrime(P.to_string() + " is not a monic prime");
        const int d = P.deg();
        if (N < 1 || N > ipow_u(static_cast<std::uint64_t>(q), d) - 2)
            throw PreconditionViolated("exponent " + std::to_string(N) + " outside 1..q^d-2 for " + P.to_string());
        for (const auto& f : chi.factors)
            if (f.P == P) throw PreconditionViolated("repeated prime " + P.to_string());
        CharFactor f;
        f.P = P;
        f.d = d;
        f.N = N;
        std::uint64_t n = N;
        for (int j = 0; j < d; ++j, n /= static_cast<std::uint64_t>(q))
            f.digits.push_back(static_cast<int>(n % static_cast<std::uint64_t>(q)));
        chi.type_s += digit_sum(N, q);
        m = std::lcm(m, d);
        chi.factors.push_back(std::move(f));
    }
    if (ka) {
        if (ka->q() != q || ka->m() % m != 0)
            throw PreconditionViolated(ka->describe() + " does not contain the roots of the conductor");
        chi.ka = ka;
    } else {
        chi.ka = Field::get(q, m);
    }
    for (auto& f : chi.factors) f.zeta = least_root(f.P, chi.ka);
    return chi;
}

DirichletCharacter DirichletCharacter::parse(const std::string& text, int q, const Field* ka) {
    const Field* F = Field::get(q);
    std::string t = trim(text);
    std::vector<std::pair<UPoly, std::uint64_t>> parts;
    if (t.empty() || t == "1") return make(F, parts, ka);
    std::size_t i = 0;
    while (i < t.size()) {
        while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
        if (i >= t.size() || t[i] != '(') throw ParseError("character factors look like (P)^N: " + text);
        int depth = 0;
        std::size_t j = i;
        for (; j < t.size(); ++j) {
            if (t[j] == '(') ++depth;
            if (t[j] == ')' && --depth == 0) break;
        }
        if (j >= t.size()) throw ParseError("unbalanced parenthesis in " + text);
        UPoly P = parse_apoly(t.substr(i + 1, j - i - 1), F, 0).to_upoly();
        i = j + 1;
        std::uint64_t N = 1;
        while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
        if (i < t.size() && t[i] == '^') {
            ++i;
            std::size_t k = i;
            while (k < t.size() && std::isdigit(static_cast<unsigned char>(t[k]))) ++k;
            if (k == i) throw ParseError("missing exponent in " + text);
            N = std::stoull(t.substr(i, k - i));
            i = k;
        }
        parts.emplace_back(P, N);
        while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
        if (i < t.size()) {
            if (t[i] != '*') throw ParseError("expected '*' in " + text);
            ++i;
        }
    }
    return make(F, parts, ka);
}

UPoly DirichletCharacter::conductor() const {
    UPoly a = UPoly::constant(base, 1);
    for (const auto& f : factors) a = a * f.P;
    return a;
}

std::vector<Elt> DirichletCharacter::point() const {
    std::vector<Elt> pt;
    for (const auto& f : factors)
        for (int j = 0; j < f.d; ++j)
            for (int k = 0; k < f.digits[static_cast<std::size_t>(j)]; ++k) pt.push_back(ka->frob(f.zeta, j));
    return pt;
}

Elt DirichletCharacter::value(const UPoly& b) const {
    UPoly bg = embed(b, ka);
    Elt v = 1;
    for (const auto& f : factors) v = ka->mul(v, ka->pow(eval(bg, f.zeta), static_cast<long long>(f.N)));
    return v;
}

std::string DirichletCharacter::to_string() const {
    if (factors.empty()) return "1";
    std::string out;
    for (const auto& f : factors) {
        if (!out.empty()) out += "*";
        out += "(" + f.P.to_string() + ")^" + std::to_string(f.N);
    }
    return out;
}

Elt ev_chi(const DirichletCharacter& chi, const TPoly& x) {
    if (x.nvars() != chi.type_s)
        throw ArityMismatch("ev_chi needs " + std::to_string(chi.type_s) + " variables, got " + std::to_string(x.nvars()));
    return x.embed(chi.ka).evaluate(chi.point());
}

UPoly ev_chi(const DirichletCharacter& chi, const APoly& x) {
    if (x.nvars() != chi.type_s)
        throw ArityMismatch("ev_chi needs " + std::to_string(chi.type_s) + " variables, got " + std::to_string(x.nvars()));
    return x.embed(chi.ka).evaluate_t(chi.point());
}

TateElem ev_chi(const DirichletCharacter& chi, const TateElem& x) {
    if (x.nvars() != chi.type_s)
        throw ArityMismatch("ev_chi needs " + std::to_string(chi.type_s) + " variables, got " + std::to_string(x.nvars()));
    const auto pt = chi.point();
    std::vector<TPoly> c;
    c.reserve(x.stored().size());
    for (const auto& t : x.stored()) c.push_back(TPoly::constant(chi.ka, 0, t.embed(chi.ka).evaluate(pt)));
    if (c.empty()) return TateElem::zero(chi.ka, 0, x.prec());
    return TateElem::from_coeffs(chi.ka, 0, x.grade(), x.vmin(), std::move(c), x.prec());
}

TateElem omega_at(const Field* G, Elt z, std::int64_t prec) {
    const int q = G->q();
    const std::int64_t P = prec + 2;
    TateElem acc = TateElem::one(G, 0);
    if (z == 0) return TateElem::lambda_power(G, 0, 1).truncated(prec);
    for (std::int64_t qi = 1; qi < P; qi *= q) {
        std::vector<TPoly> c(static_cast<std::size_t>(qi + 1), TPoly(G, 0));
        c[0] = TPoly::constant(G, 0, 1);
        c[static_cast<std::size_t>(qi)] = TPoly::constant(G, 0, G->neg(z));
        acc = (acc * inv(TateElem::from_coeffs(G, 0, 0, 0, std::move(c), kExact), P)).truncated(P);
    }
    return (acc * TateElem::lambda_power(G, 0, 1)).truncated(prec);
}

TateElem gauss_sum(const DirichletCharacter& chi, std::int64_t prec) {
    const Field* G = chi.ka;
    if (chi.is_trivial()) return TateElem::one(G, 0);
    const std::int64_t P = prec + chi.type_s + 2;
    Elt c = 1;
    TateElem acc = TateElem::one(G, 0);
    for (const auto& f : chi.factors) {
        Elt dz = eval(embed(derivative(f.P), G), f.zeta);
        c = G->mul(c, G->inv(G->pow(dz, static_cast<long long>(f.N))));
        for (int j = 0; j < f.d; ++j) {
            int nj = f.digits[static_cast<std::size_t>(j)];
            if (nj == 0) continue;
            TateElem w = omega_at(G, G->frob(f.zeta, j), P);
            for (int k = 0; k < nj; ++k) acc = acc * w;
        }
    }
    return acc.scaled(TPoly::constant(G, 0, c)).truncated(prec);
}

TateElem phi_twist(const TateElem& x) {
    const int m = x.field()->m();
    TateElem y = tau(x, 1);
    return m > 1 ? y.frob_coeffs(m - 1) : y;
}

TateElem l_chi(const DirichletCharacter& chi, int n, std::int64_t prec, int threads) {
    if (n < 1) throw PreconditionViolated("l_chi needs n >= 1");
    if (prec < 1) throw PreconditionViolated("l_chi needs prec >= 1");
    DirichletSum sp;
    sp.F = chi.base;
    sp.G = chi.ka;
    sp.s = 0;
    sp.n = n;
    sp.prec = prec;
    sp.dmax = static_cast<int>((prec + n - 1) / n) - 1;
    const int ts = chi.type_s;
    sp.coeff_degree = [ts](int) { return ts; };
    auto shared = std::make_shared<DirichletCharacter>(chi);
    sp.make_weight = [shared]() {
        return std::function<APoly(const UPoly&)>([shared](const UPoly& b) {
            return APoly::constant(TPoly::constant(shared->ka, 0, shared->value(b)));
        });
    };
    sp.threads = threads;
    return dirichlet_sum(sp);
}

Reconstruction reconstruct_rational(const TateElem& x, int bound, std::int64_t verify_to) {
    if (x.grade() != 0 || x.nvars() != 0) throw PreconditionViolated("reconstruction needs a grade-0 series in no variables");
    const Field* G = x.field();
    Reconstruction out;
    out.bound = bound;
    if (x.is_zero()) {
        if (x.prec() < verify_to) throw InsufficientPrecision("series known below " + std::to_string(x.prec()));
        out.ok = true;
        out.num = UPoly(G);
        out.den = UPoly::constant(G, 1);
        out.verified_to = verify_to;
        return out;
    }
    const std::int64_t v = x.vmin();
    const int M = 2 * bound + 1;
    if (x.prec() < std::max(v + M, verify_to))
        throw InsufficientPrecision("reconstruction at bound " + std::to_string(bound) + " needs more terms");
    // x = theta^-v f(1/theta) with f a power series in u = 1/theta.
    std::vector<Elt> fc;
    for (int k = 0; k < M; ++k) fc.push_back(x.coeff(v + k).constant_term());
    UPoly r0 = UPoly::monomial(G, M), r1(G, fc);
    UPoly t0(G), t1 = UPoly::constant(G, 1);
    while (r1.deg() > bound) {
        UPoly qq, rr;
        divmod(r0, r1, qq, rr);
        r0 = r1;
        r1 = rr;
        UPoly tn = t0 - qq * t1;
        t0 = t1;
        t1 = tn;
    }
    if (t1.deg() > bound || t1.coeff(0) == 0) return out;
    UPoly nt = r1, dt = t1;
    auto reverse = [&](const UPoly& p, int deg) {
        std::vector<Elt> c(static_cast<std::size_t>(deg + 1), 0);
        for (int k = 0; k <= p.deg(); ++k) c[static_cast<std::size_t>(deg - k)] = p.c[static_cast<std::size_t>(k)];
        return UPoly(G, c);
    };
    const int Bn = nt.deg(), Bd = dt.deg();
    UPoly num = reverse(nt, Bn), den = reverse(dt, Bd);
    const std::int64_t E = Bd - Bn - v;
    if (E >= 0)
        num = shift(num, static_cast<int>(E));
    else
        den = shift(den, static_cast<int>(-E));
    RatFunc rf(num, den);
    TateElem back = TateElem::from_upoly(rf.num, 0) *
                    inv(TateElem::from_upoly(rf.den, 0), verify_to + std::max(0, rf.num.deg()) + 1);
    if (!agree(back, x, verify_to)) return out;
    out.ok = true;
    out.num = rf.num;
    out.den = rf.den;
    out.verified_to = verify_to;
    return out;
}

namespace {

// Pi(i) L(i, chi) g(chi) pi~^-i, known below exponent T.
TateElem bc_series(const DirichletCharacter& chi, int i, std::int64_t T, int threads) {
    const Field* G = chi.ka;
    UPoly Pi = embed(carlitz_factorial(chi.base, static_cast<std::uint64_t>(i)), G);
    std::int64_t P = T + Pi.deg() + 2;
    for (int attempt = 0; attempt < 6; ++attempt) {
        TateElem L = l_chi(chi, i, P, threads);
        TateElem g = gauss_sum(chi, P + chi.type_s + 2);
        TateElem pin = pi_power(chi.base, G, i, P);
        TateElem bc = (TateElem::from_upoly(Pi, 0) * L * g * pin).truncated(T);
        if (bc.grade() != 0) throw GradeResidue("BC series is not of grade 0");
        if (bc.prec() >= T) return bc;
        P += T - bc.prec() + 2;
    }
    throw InsufficientPrecision("BC series did not reach exponent " + std::to_string(T));
}

}  // namespace

BCValue bc_general(const DirichletCharacter& chi, int i, std::int64_t prec, bool reconstruct, bool allow_zero,
                   int threads) {
    const int q = chi.base->q();
    const Field* G = chi.ka;
    if (i < 0) throw PreconditionViolated("BC index must be >= 0");
    BCValue out;
    auto zero_value = [&](bool tagged) {
        out.zero_by_residue = tagged;
        out.series = TateElem::zero(G, 0);
        out.exact.ok = true;
        out.exact.num = UPoly(G);
        out.exact.den = UPoly::constant(G, 1);
        out.exact.verified_to = kExact;
        return out;
    };
    if (((i - chi.type_s) % (q - 1) + (q - 1)) % (q - 1) != 0) {
        if (!allow_zero)
            throw GradeResidue("i = " + std::to_string(i) + " is not congruent to the type " +
                               std::to_string(chi.type_s) + " mod q-1");
        return zero_value(true);
    }
    if (i == 0) {
        if (chi.type_s >= 1) return zero_value(false);
        out.series = TateElem::one(G, 0);
        out.exact.ok = true;
        out.exact.num = UPoly::constant(G, 1);
        out.exact.den = UPoly::constant(G, 1);
        out.exact.verified_to = kExact;
        return out;
    }
    out.series = bc_series(chi, i, prec, threads);
    if (!reconstruct) return out;
    for (int B = 4; B <= 64; B *= 2) {
        std::int64_t v = out.series.is_zero() ? 0 : out.series.vmin();
        std::int64_t need = std::max(prec, v + 2 * B + 8);
        if (out.series.prec() < need) out.series = bc_series(chi, i, need, threads);
        auto rec = reconstruct_rational(out.series, B, need);
        if (rec.ok) {
            out.exact = rec;
            return out;
        }
    }
    throw ReconstructionFailed("no rational function with degrees <= 64 matches BC_" + std::to_string(i));
}

EvNIdentity ev_n_bpoly(const DirichletCharacter& chi, std::uint64_t N, std::int64_t prec, int d) {
    const Field* F = chi.base;
    const int q = F->q();
    const int s = chi.type_s;
    const int ell = digit_sum(N, q);
    EvNIdentity out;
    out.s = s;
    out.N = N;
    out.s_prime = s + ell;
    const int sp = out.s_prime;
    if (sp < 1 || (sp - 1) % (q - 1) != 0)
        throw PreconditionViolated("s' = " + std::to_string(sp) + " is not 1 mod q-1");
    if (s == 0 && ell == 1 && N < 2) throw PreconditionViolated("s = 0 and N = 1 leave ev_N(B_1) undefined");

    // B_{s'} as num/den in s' variables.
    APoly num, den;
    if (sp == 1) {
        num = APoly::constant(TPoly::constant(F, 1, 1));
        den = APoly::from_upoly(UPoly::theta(F), 1) - APoly::constant(TPoly::var(F, 1, 1));
    } else {
        APoly alpha = APoly::constant(TPoly::constant(F, sp, 1));
        for (int k = 1; k <= sp; ++k)
            alpha = alpha * (APoly::constant(TPoly::var(F, sp, k)) - APoly::from_upoly(UPoly::theta(F), sp));
        num = b_poly(DrinfeldModule::make(alpha), 6).poly;
        den = APoly::constant(TPoly::constant(F, sp, 1));
    }
    // t_{s+1..s'} -> theta^{q^j}, each repeated n_j times.
    std::vector<APoly> vals;
    for (int k = 1; k <= s; ++k) vals.push_back(APoly::constant(TPoly::var(F, s, k)));
    std::vector<int> ndig;
    for (std::uint64_t n = N; n > 0; n /= static_cast<std::uint64_t>(q))
        ndig.push_back(static_cast<int>(n % static_cast<std::uint64_t>(q)));
    for (std::size_t j = 0; j < ndig.size(); ++j)
        for (int k = 0; k < ndig[j]; ++k)
            vals.push_back(APoly::from_upoly(UPoly::monomial(F, static_cast<int>(ipow_u(static_cast<std::uint64_t>(q), static_cast<int>(j)))), s));
    auto ev_n = [&](const APoly& x) { return x.substitute_t(vals).with_nvars(s); };
    out.b_num = ev_n(num);
    out.b_den = ev_n(den);
    const bool neg = odd_sign(N, sp, q);

    // Part (1): sum rho_{C_s}(b) (b')^N / b with provably vanishing blocks dropped.
    {
        const std::int64_t T = prec;
        UPoly PiN = carlitz_factorial(F, N);
        APoly alpha_s = APoly::constant(TPoly::constant(F, s, 1));
        for (int k = 1; k <= s; ++k)
            alpha_s = alpha_s * (APoly::constant(TPoly::var(F, s, k)) - APoly::from_upoly(UPoly::theta(F), s));
        const auto Ni = static_cast<std::int64_t>(N);
        auto emax = [&](std::int64_t dd) {
            std::int64_t e = -dd + Ni * (dd - 1);
            if (dd > sp) e -= static_cast<std::int64_t>(q - 1) * (dd - sp) * (dd - sp + 1) / 2;
            return e;
        };
        std::int64_t P = T + 4;
        bool done = false;
        for (int attempt = 0; attempt < 8 && !done; ++attempt) {
            int dmax = 1;
            for (std::int64_t dd = 1;; ++dd) {
                if (-emax(dd) < P) dmax = static_cast<int>(dd);
                if (dd > sp + Ni + 1 && -emax(dd) >= P) break;
            }
            DirichletSum ds;
            ds.F = F;
            ds.G = F;
            ds.s = s;
            ds.n = 1;
            ds.prec = P;
            ds.dmax = dmax;
            ds.theta_degree = [Ni](int dd) { return static_cast<int>(std::max<std::int64_t>(0, Ni * (dd - 1))); };
            ds.coeff_degree = [s, ell](int) { return s + ell; };
            ds.make_weight = [alpha_s, N, s]() {
                auto table = std::make_shared<RhoTable>(alpha_s);
                return std::function<APoly(const UPoly&)>([table, N, s](const UPoly& b) {
                    UPoly db = derivative(b);
                    if (db.is_zero()) return APoly(b.F, s);
                    return APoly::from_upoly(pow(db, static_cast<long long>(N)), s).scaled((*table)(b));
                });
            };
            TateElem S = dirichlet_sum(ds);
            TateElem R = S * omega_product(F, s, P) * pi_power(F, F, 1 - Ni, P + 2).with_nvars(s) *
                         inv(TateElem::from_upoly(PiN, s), P + 2 * PiN.deg() + 2);
            R = signed_if(R, neg);
            TateElem lhs = TateElem::from_apoly(out.b_den) * R;
            if (lhs.prec() < T) {
                P += T - lhs.prec() + 2;
                continue;
            }
            out.part1_ok = agree(lhs, TateElem::from_apoly(out.b_num), T);
            out.part1_checked_to = T;
            done = true;
        }
        if (!done) throw InsufficientPrecision("part (1) did not reach exponent " + std::to_string(T));
    }

    // Part (2): rho_{N,chi,d} against the Dirichlet L-value.
    if (d >= 1) {
        const Field* G = chi.ka;
        const std::uint64_t qd = ipow_u(static_cast<std::uint64_t>(q), d);
        if (qd <= N) throw PreconditionViolated("part (2) needs q^d > N");
        out.d = d;
        const std::int64_t T = prec;
        UPoly num2 = ev_chi(chi, ev_n(num.tau(d)));
        UPoly den2 = ev_chi(chi, ev_n(den.tau(d)));
        Elt c = 1;
        for (const auto& f : chi.factors)
            c = G->mul(c, G->pow(eval(embed(derivative(f.P), G), f.zeta), static_cast<long long>(f.N)));
        // ev_chi(b_d(t_1)...b_d(t_s)) and prod l_{d-1-i}^{n_i q^i}.
        UPoly bprod = UPoly::constant(G, 1);
        for (Elt z : chi.point())
            for (int j = 0; j < d; ++j)
                bprod = bprod * (UPoly::constant(G, z) - embed(UPoly::monomial(F, static_cast<int>(ipow_u(static_cast<std::uint64_t>(q), j))), G));
        UPoly lprod = UPoly::constant(F, 1);
        for (std::size_t i = 0; i < ndig.size(); ++i)
            if (ndig[i] > 0)
                lprod = lprod * pow(carlitz_l(F, d - 1 - static_cast<int>(i)),
                                    static_cast<long long>(ndig[i]) * static_cast<long long>(ipow_u(static_cast<std::uint64_t>(q), static_cast<int>(i))));
        UPoly fixed = bprod * embed(lprod, G);
        const int n = static_cast<int>(qd - N);
        std::int64_t P = T + 4;
        bool done = false;
        for (int attempt = 0; attempt < 8 && !done; ++attempt) {
            TateElem L = l_chi(chi, n, P);
            TateElem g = gauss_sum(chi, P + s + 2);
            TateElem R = L * g * pi_power(F, G, n, P) * TateElem::from_upoly(fixed, 0);
            R = signed_if(R, neg);
            TateElem lhs = TateElem::from_upoly(scale(den2, c), 0) * R;
            if (lhs.prec() < T) {
                P += T - lhs.prec() + 2;
                continue;
            }
            out.part2_ok = agree(lhs, TateElem::from_upoly(num2, 0), T);
            out.part2_checked_to = T;
            done = true;
        }
        if (!done) throw InsufficientPrecision("part (2) did not reach exponent " + std::to_string(T));
    }
    return out;
}

HRVerdict herbrand_ribet(const UPoly& P, std::uint64_t N, const DirichletCharacter& chi_tilde, BCRoute route,
                         int threads) {
    const Field* F = chi_tilde.base;
    const int q = F->q();
    if (P.deg() < 1 || !P.is_monic() || !is_irreducible(P)) throw NotPrime(P.to_string() + " is not a monic prime");
    const int d = P.deg();
    const std::uint64_t qd = ipow_u(static_cast<std::uint64_t>(q), d);
    if (N < 1 || N > qd - 2) throw PreconditionViolated("N must lie in 1..q^d-2");
    if (!chi_tilde.is_trivial() && gcd(P, chi_tilde.conductor()).deg() > 0)
        throw PreconditionViolated("the character's conductor is not coprime to P");
    const int sp = digit_sum(N, q) + chi_tilde.type_s;
    if ((sp - 1) % (q - 1) != 0) throw PreconditionViolated("s' = " + std::to_string(sp) + " is not 1 mod q-1");
    if (sp == 1 && chi_tilde.is_trivial() && N < 2) throw PreconditionViolated("N = 1 needs a nontrivial character");

    const Field* G = chi_tilde.ka;
    HRVerdict out;
    out.route = route;
    out.bc_index = static_cast<int>(qd - N);
    if (route == BCRoute::Exact && chi_tilde.is_trivial()) {
        RatFunc bc = bc_classical(F, static_cast<std::uint64_t>(out.bc_index));
        out.num = embed(bc.num, G);
        out.den = embed(bc.den, G);
    } else {
        auto bc = bc_general(chi_tilde, out.bc_index, 16, true, false, threads);
        out.num = bc.exact.num;
        out.den = bc.exact.den;
    }
    UPoly Pg = embed(P, G);
    out.integral = gcd(out.den, Pg).deg() == 0;
    if (!out.integral) throw NotPIntegral("denominator " + out.den.to_string() + " shares a factor with " + P.to_string());
    // num * den^-1 mod P over k_a.
    UPoly dr = out.den % Pg;
    UPoly inv_d(G);
    {
        // Extended Euclid for den^-1 mod P.
        UPoly r0 = Pg, r1 = dr, s0(G), s1 = UPoly::constant(G, 1);
        while (!r1.is_zero()) {
            UPoly qq, rr;
            divmod(r0, r1, qq, rr);
            r0 = r1;
            r1 = rr;
            UPoly sn = s0 - qq * s1;
            s0 = s1;
            s1 = sn;
        }
        inv_d = scale(s0, G->inv(r0.lc()));
    }
    out.residue = (out.num * inv_d) % Pg;
    out.divisible = out.residue.is_zero();
    return out;
}

}  // namespace drin
