#include "drin/nuclear.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "drin/errors.hpp"

namespace drin {

namespace {

struct ZOps {
    const Field* F;
    int s, nz;
    ZPoly zero() const { return ZPoly(F, s, nz); }
    ZPoly one() const { return ZPoly::one(F, s, nz); }
    ZPoly add(const ZPoly& a, const ZPoly& b) const { return a + b; }
    ZPoly sub(const ZPoly& a, const ZPoly& b) const { return a - b; }
    ZPoly mul(const ZPoly& a, const ZPoly& b) const { return a * b; }
    ZPoly neg(const ZPoly& a) const { return -a; }
};

void require_base(const DrinfeldModule& phi) {
    if (!phi.F->is_base()) throw PreconditionViolated("trace formula operators need alpha over F_q");
}

}  // namespace

ZPoly::ZPoly(const Field* F_, int s_, int nz_) : F(F_), s(s_), nz(nz_), c(static_cast<std::size_t>(nz_), TPoly(F_, s_)) {}

ZPoly ZPoly::one(const Field* F, int s, int nz) {
    ZPoly z(F, s, nz);
    if (nz > 0) z.c[0] = TPoly::constant(F, s, 1);
    return z;
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    for (int k = 0; k < a.nz; ++k) r.c[static_cast<std::size_t>(k)] += b.c[static_cast<std::size_t>(k)];
    return r;
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    for (int k = 0; k < a.nz; ++k) r.c[static_cast<std::size_t>(k)] -= b.c[static_cast<std::size_t>(k)];
    return r;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    ZPoly r(a.F, a.s, a.nz);
    for (int i = 0; i < a.nz; ++i) {
        if (a.c[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int j = 0; i + j < a.nz; ++j)
            if (!b.c[static_cast<std::size_t>(j)].is_zero())
                r.c[static_cast<std::size_t>(i + j)] += a.c[static_cast<std::size_t>(i)] * b.c[static_cast<std::size_t>(j)];
    }
    return r;
}

ZPoly ZPoly::operator-() const {
    ZPoly r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

ZPoly ZPoly::inverse() const {
    if (nz == 0) return *this;
    if (!c[0].is_one()) throw NotAUnit("Z-series inverse needs constant term 1");
    ZPoly r = one(F, s, nz);
    for (int k = 1; k < nz; ++k) {
        TPoly acc(F, s);
        for (int i = 1; i <= k; ++i) acc += c[static_cast<std::size_t>(i)] * r.c[static_cast<std::size_t>(k - i)];
        r.c[static_cast<std::size_t>(k)] = -acc;
    }
    return r;
}

int ZPoly::lowest_nonconstant() const {
    for (int k = 1; k < nz; ++k)
        if (!c[static_cast<std::size_t>(k)].is_zero()) return k;
    return nz;
}

TateElem ZPoly::at_inverse_theta() const { return TateElem::from_coeffs(F, s, 0, 0, c, nz); }

std::string ZPoly::to_string() const {
    std::string out;
    for (int k = 0; k < nz; ++k) {
        const TPoly& x = c[static_cast<std::size_t>(k)];
        if (x.is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string cs = x.to_string();
        if (k == 0)
            out += cs;
        else
            out += (x.is_one() ? "" : "(" + cs + ")*") + "Z" + (k > 1 ? "^" + std::to_string(k) : "");
    }
    if (out.empty()) out = "0";
    return out + " mod Z^" + std::to_string(nz);
}

ZSeriesMat prime_operator(const DrinfeldModule& phi, const UPoly& P, int nz) {
    require_base(phi);
    if (P.deg() < 1 || !P.is_monic() || !is_irreducible(P)) throw NotPrime(P.to_string() + " is not a monic prime");
    const int d = P.deg(), q = phi.q(), s = phi.s;
    const Field* F = phi.F;
    ZSeriesMat op;
    op.dim = d;
    op.nz = nz;
    UPoly th = UPoly::theta(F);
    for (int n = 1; n < nz; ++n) {
        Matrix<TPoly> M(static_cast<std::size_t>(d), std::vector<TPoly>(static_cast<std::size_t>(d), TPoly(F, s)));
        for (int j = 0; j < d; ++j) {
            // tau(theta^(n-1+j)) = theta^(q(n-1+j)), then times -alpha.
            UPoly x = powmod(th, static_cast<std::uint64_t>(q) * static_cast<std::uint64_t>(n - 1 + j), P);
            auto col = (-(phi.alpha * APoly::from_upoly(x, s))).reduce_mod(P);
            for (int i = 0; i < d; ++i) M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col[static_cast<std::size_t>(i)];
        }
        op.mats.push_back(std::move(M));
    }
    return op;
}

ZSeriesMat infinity_operator(const DrinfeldModule& phi, int nz, int M) {
    require_base(phi);
    const int q = phi.q(), s = phi.s, dim = std::max(0, M - 1);
    const Field* F = phi.F;
    ZSeriesMat op;
    op.dim = dim;
    op.nz = nz;
    for (int n = 1; n < nz; ++n) {
        Matrix<TPoly> A(static_cast<std::size_t>(dim), std::vector<TPoly>(static_cast<std::size_t>(dim), TPoly(F, s)));
        for (int j = 1; j <= dim; ++j)
            for (int k = 0; k <= phi.alpha.deg(); ++k) {
                // -a_k theta^(k + q(n-1-j)), kept when it lands in theta^-1..theta^-(M-1).
                const int e = k + q * (n - 1 - j);
                if (e > -1 || e < -dim) continue;
                auto& cell = A[static_cast<std::size_t>(-e - 1)][static_cast<std::size_t>(j - 1)];
                cell -= phi.alpha.coeff(k);
            }
        op.mats.push_back(std::move(A));
    }
    return op;
}

ZPoly det_one_plus(const ZSeriesMat& op, const Field* F, int s) {
    const int n = op.dim;
    ZOps ops{F, s, op.nz};
    Matrix<ZPoly> A(static_cast<std::size_t>(n), std::vector<ZPoly>(static_cast<std::size_t>(n), ops.zero()));
    for (int i = 0; i < n; ++i) {
        A[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = ops.one();
        for (std::size_t m = 0; m < op.mats.size(); ++m) {
            const int z = static_cast<int>(m) + 1;
            for (int j = 0; j < n; ++j) {
                const TPoly& e = op.mats[m][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (!e.is_zero()) A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].c[static_cast<std::size_t>(z)] += e;
            }
        }
    }
    if (n == 0) return ops.one();
    return determinant(A, ops);
}

ZPoly prime_det(const DrinfeldModule& phi, const UPoly& P, int nz) {
    return det_one_plus(prime_operator(phi, P, nz), phi.F, phi.s);
}

int nucleus_floor(const DrinfeldModule& phi, int nz) {
    const int q = phi.q();
    int floor = std::max(phi.u + 2, nz);
    // f_n(theta^-j) has valuation qj - q(n-1) - r; it must exceed j for every j >= M and n < nz.
    const int need = q * std::max(0, nz - 2) + phi.r + 1;
    floor = std::max(floor, (need + q - 2) / (q - 1));
    return floor;
}

ZPoly infinity_det(const DrinfeldModule& phi, int nz, int M) {
    const int floor = nucleus_floor(phi, nz);
    if (M < floor)
        throw QuotientTooShallow("depth " + std::to_string(M) + " is below the nucleus floor " + std::to_string(floor));
    return det_one_plus(infinity_operator(phi, nz, M), phi.F, phi.s);
}

TraceReport trace_formula_check(const DrinfeldModule& phi, int nz, int depth, int threads) {
    require_base(phi);
    if (nz < 1) throw PreconditionViolated("trace formula check needs nz >= 1");
    TraceReport rep;
    rep.nz = nz;
    rep.depth = depth > 0 ? depth : nucleus_floor(phi, nz);
    std::vector<UPoly> primes;
    for (int d = 1; d < nz; ++d)
        for (auto& P : enumerate_primes(phi.F, d)) primes.push_back(P);
    rep.primes_used = static_cast<int>(primes.size());
    const int T = std::max(1, std::min(threads, static_cast<int>(primes.size())));
    std::vector<ZPoly> parts(static_cast<std::size_t>(T), ZPoly::one(phi.F, phi.s, nz));
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(T));
    auto work = [&](int t) {
        try {
            for (std::size_t i = static_cast<std::size_t>(t); i < primes.size(); i += static_cast<std::size_t>(T))
                parts[static_cast<std::size_t>(t)] = parts[static_cast<std::size_t>(t)] * prime_det(phi, primes[i], nz);
        } catch (...) {
            errs[static_cast<std::size_t>(t)] = std::current_exception();
        }
    };
    if (T == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < T; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    rep.primes_side = ZPoly::one(phi.F, phi.s, nz);
    for (auto& p : parts) rep.primes_side = rep.primes_side * p;
    rep.infinity_side = infinity_det(phi, nz, rep.depth).inverse();
    rep.equal = rep.primes_side == rep.infinity_side;
    return rep;
}

}  // namespace drin
