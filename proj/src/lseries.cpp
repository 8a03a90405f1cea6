#include "drin/lseries.hpp"

#include <algorithm>
#include <memory>
#include <thread>

#include "drin/carlitz.hpp"
#include "drin/errors.hpp"

namespace drin {

namespace {

std::uint64_t ipow_u(std::uint64_t q, int k) {
    std::uint64_t r = 1;
    while (k-- > 0) r *= q;
    return r;
}

// One degree block of a Dirichlet sum, restricted to the prefixes h with h % T == tid.
TateElem block_part(const DirichletSum& sp, int d, std::int64_t W, int nhigh, int tid, int T,
                    const std::function<APoly(const UPoly&)>& w) {
    const int q = sp.F->q();
    const int nlow = d - nhigh;
    const std::uint64_t nh = ipow_u(static_cast<std::uint64_t>(q), nhigh);
    const std::uint64_t nl = ipow_u(static_cast<std::uint64_t>(q), nlow);
    TateElem acc = TateElem::zero(sp.G, sp.s, sp.prec);
    for (std::uint64_t h = static_cast<std::uint64_t>(tid); h < nh; h += static_cast<std::uint64_t>(T)) {
        APoly wsum(sp.G, sp.s);
        for (std::uint64_t l = 0; l < nl; ++l) wsum = wsum + w(monic_from_index(sp.F, d, h * nl + l));
        if (wsum.is_zero()) continue;
        // 1/a^n only sees the top nhigh coefficients below the working precision.
        UPoly ah = monic_from_index(sp.F, d, h * nl);
        TateElem x = inv(TateElem::from_upoly(ah, sp.s), d + W);
        x = pow(x, static_cast<unsigned>(sp.n));
        if (sp.G != sp.F) x = x.embed(sp.G);
        acc = acc + (x * TateElem::from_apoly(wsum)).truncated(sp.prec);
    }
    return acc;
}

}  // namespace

TateElem dirichlet_sum(const DirichletSum& sp) {
    if (sp.n < 1) throw PreconditionViolated("dirichlet_sum needs n >= 1");
    const int q = sp.F->q();
    const int T = std::max(1, sp.threads);
    TateElem total = TateElem::zero(sp.G, sp.s, sp.prec);
    for (int d = 0; d <= sp.dmax; ++d) {
        const std::int64_t delta = sp.theta_degree(d);
        const std::int64_t W = sp.prec - static_cast<std::int64_t>(sp.n) * d + delta;
        if (W <= 0) continue;
        const int nhigh = static_cast<int>(std::min<std::int64_t>(d, W - 1));
        const int nlow = d - nhigh;
        // Every low coefficient needs exponent >= q-1 to survive the sum over F_q.
        if (static_cast<std::int64_t>(q - 1) * nlow > sp.coeff_degree(d)) continue;
        std::uint64_t work = ipow_u(static_cast<std::uint64_t>(q), d);
        int nt = work < 256 ? 1 : T;
        std::vector<TateElem> parts(static_cast<std::size_t>(nt));
        if (nt == 1) {
            parts[0] = block_part(sp, d, W, nhigh, 0, 1, sp.make_weight());
        } else {
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errs(static_cast<std::size_t>(nt));
            for (int t = 0; t < nt; ++t)
                pool.emplace_back([&, t] {
                    try {
                        parts[static_cast<std::size_t>(t)] = block_part(sp, d, W, nhigh, t, nt, sp.make_weight());
                    } catch (...) {
                        errs[static_cast<std::size_t>(t)] = std::current_exception();
                    }
                });
            for (auto& th : pool) th.join();
            for (auto& e : errs)
                if (e) std::rethrow_exception(e);
        }
        for (auto& p : parts) total = total + p;
    }
    return total.truncated(sp.prec);
}

TateElem l_value(const DrinfeldModule& phi, int n, std::int64_t prec, int threads) {
    if (n < 1) throw PreconditionViolated("l_value needs n >= 1");
    if (prec < 1) throw PreconditionViolated("l_value needs prec >= 1");
    DirichletSum sp;
    sp.F = Field::get(phi.q());
    sp.G = phi.F;
    sp.s = phi.s;
    sp.n = n;
    sp.prec = prec;
    sp.dmax = static_cast<int>((prec + n - 1) / n) - 1;
    const int r = phi.r;
    sp.coeff_degree = [r](int) { return r; };
    APoly alpha = phi.alpha;
    sp.make_weight = [alpha]() {
        auto table = std::make_shared<RhoTable>(alpha);
        return std::function<APoly(const UPoly&)>(
            [table](const UPoly& a) { return APoly::constant((*table)(a)); });
    };
    sp.threads = threads;
    return dirichlet_sum(sp);
}

TateElem euler_product(const DrinfeldModule& phi, int n, int maxdeg, std::int64_t prec) {
    if (n < 1) throw PreconditionViolated("euler_product needs n >= 1");
    const Field* base = Field::get(phi.q());
    RhoTable rho(phi.alpha);
    TateElem acc = TateElem::one(phi.F, phi.s).truncated(prec);
    TateElem one = TateElem::one(phi.F, phi.s);
    for (int d = 1; d <= maxdeg; ++d) {
        if (static_cast<std::int64_t>(n) * d >= prec) break;  // factor is 1 below prec
        for (const auto& pr : primes_with_roots(base, d)) {
            TateElem x = pow(inv(TateElem::from_upoly(pr.P, phi.s), d + prec), static_cast<unsigned>(n));
            if (phi.F != base) x = x.embed(phi.F);
            TateElem y = x.scaled(rho(pr.P)).truncated(prec);
            acc = (acc * inv(one - y, prec)).truncated(prec);
        }
    }
    return acc;
}

LNegative l_negative(const DrinfeldModule& phi, int j, int window) {
    if (j < 0) throw PreconditionViolated("l_negative needs j >= 0");
    const int q = phi.q();
    const Field* base = Field::get(q);
    RhoTable rho(phi.alpha);
    LNegative out;
    out.value = APoly(phi.F, phi.s);
    out.vanishing_bound = (phi.r + j) / (q - 1);
    const int cap = 2 * (std::max(phi.s, phi.r) + j + window);
    int zeros = 0;
    for (int d = 0;; ++d) {
        if (d > cap) throw NoStabilization("L(-j) blocks did not vanish by degree " + std::to_string(cap));
        APoly block(phi.F, phi.s);
        for (const UPoly& a : enumerate_monic(base, d)) {
            APoly ap = APoly::from_upoly(phi.F == base ? a : embed(a, phi.F), phi.s);
            block = block + pow(ap, static_cast<unsigned>(j)).scaled(rho(a));
        }
        out.value = out.value + block;
        out.last_degree = d;
        zeros = block.is_zero() ? zeros + 1 : 0;
        if (zeros >= window && d > out.vanishing_bound + window - 1) break;
    }
    return out;
}

BPoly b_poly(const DrinfeldModule& phi, std::int64_t tail, int threads) {
    const int q = phi.q();
    if (!phi.monic_negated || (phi.r - 1) % (q - 1) != 0)
        throw NotTorsionCase("b_poly needs -alpha monic and deg alpha = 1 mod q-1");
    BPoly out;
    if (phi.r == 1) {
        out.closed_form = true;
        out.poly = -phi.alpha;  // theta - x
        out.monic_of_degree_u = true;
        out.checked_to = kExact;
        return out;
    }
    const std::int64_t k = (phi.r - 1) / (q - 1);
    std::int64_t pl = tail - 1 + k, pw = tail + 1, pp = tail + k;
    for (int attempt = 0; attempt < 4; ++attempt) {
        TateElem L = l_value(phi, 1, pl, threads);
        TateElem w = omega_alpha(phi, pw).omega;
        TateElem pi = pi_tilde(phi.F, phi.s, pp);
        TateElem E = div(L * w, pi, tail);
        if (k % 2) E = -E;
        if (E.prec() < tail) {
            std::int64_t gap = tail - E.prec();
            pl += gap;
            pw += gap;
            pp += gap;
            continue;
        }
        auto rec = recognize_polynomial(E, tail);
        if (!rec.ok)
            throw TailNotVanishing("coefficient of theta^-" + std::to_string(rec.bad_exponent) + " is nonzero");
        out.series = E;
        out.poly = rec.poly;
        out.checked_to = rec.checked_to;
        out.monic_of_degree_u = rec.poly.deg() == phi.u && rec.poly.lc().is_one();
        return out;
    }
    throw InsufficientPrecision("could not reach the requested tail precision");
}

ExpOfL exp_of_l(const DrinfeldModule& phi, std::int64_t prec, std::int64_t margin, int threads) {
    TateElem L = l_value(phi, 1, prec, threads);
    TateElem e = exp_phi_apply(phi, L, prec);
    auto rec = recognize_polynomial(e, margin);
    if (!rec.ok) throw TailNotVanishing("coefficient of theta^-" + std::to_string(rec.bad_exponent) + " is nonzero");
    return {rec.poly, rec.checked_to};
}

Matrix<TPoly> phi_theta_matrix(const DrinfeldModule& phi, const UPoly& P) {
    const int d = P.deg();
    const Field* G = phi.F;
    Matrix<TPoly> M(static_cast<std::size_t>(d), std::vector<TPoly>(static_cast<std::size_t>(d), TPoly(G, phi.s)));
    UPoly Pg = G == P.F ? P : embed(P, G);
    for (int j = 0; j < d; ++j) {
        APoly img = APoly::from_upoly(UPoly::monomial(G, j + 1), phi.s) +
                    phi.alpha * APoly::from_upoly(UPoly::monomial(G, j * phi.q()), phi.s);
        auto col = img.reduce_mod(Pg);
        for (int i = 0; i < d; ++i) M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col[static_cast<std::size_t>(i)];
    }
    return M;
}

LocalFactor local_factor(const DrinfeldModule& phi, const UPoly& P) {
    if (!phi.F->is_base()) throw PreconditionViolated("local_factor needs alpha over F_q");
    if (P.deg() < 1 || !P.is_monic() || !is_irreducible(P)) throw NotPrime(P.to_string() + " is not a monic prime");
    LocalFactor out;
    out.charpoly = fitting_generator(phi_theta_matrix(phi, P), phi.F, phi.s);
    RhoTable rho(phi.alpha);
    out.expected = APoly::from_upoly(P, phi.s) - APoly::constant(rho(P));
    out.matches = out.charpoly == out.expected;
    return out;
}

APoly fitting_generator(const Matrix<TPoly>& M, const Field* F, int s) { return charpoly_fraction_free(M, F, s); }

}  // namespace drin
