#include "drin/algebra.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <set>

#include "drin/errors.hpp"

namespace drin {

APoly charpoly_fraction_free(const Matrix<TPoly>& M, const Field* F, int s) {
    for (auto& row : M)
        if (row.size() != M.size()) throw PreconditionViolated("charpoly needs a square matrix");
    auto c = berkowitz(M, TPolyOps{F, s});
    std::vector<TPoly> co(c.rbegin(), c.rend());
    return APoly(F, s, std::move(co));
}

Matrix<Elt> theta_matrix(const UPoly& P) {
    const Field* F = P.F;
    int d = P.deg();
    Matrix<Elt> C(d, std::vector<Elt>(d, 0));
    for (int j = 0; j + 1 < d; ++j) C[j + 1][j] = 1;
    // theta * theta^(d-1) = theta^d = -(p_0 + ... + p_{d-1} theta^(d-1))
    Elt il = F->inv(P.lc());
    for (int i = 0; i < d; ++i) C[i][d - 1] = F->neg(F->mul(P.c[i], il));
    return C;
}

Matrix<TPoly> multiplication_matrix(const APoly& alpha, const UPoly& P) {
    const Field* F = P.F;
    int d = P.deg(), s = alpha.nvars();
    Matrix<TPoly> M(d, std::vector<TPoly>(d, TPoly(F, s)));
    if (d == 0) return M;
    Matrix<Elt> C = theta_matrix(P);
    Matrix<Elt> pw(d, std::vector<Elt>(d, 0));
    for (int i = 0; i < d; ++i) pw[i][i] = 1;
    for (int k = 0; k <= alpha.deg(); ++k) {
        const TPoly& ak = alpha.coeffs()[k];
        if (!ak.is_zero())
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    if (pw[i][j]) M[i][j] += ak.scaled(pw[i][j]);
        Matrix<Elt> nx(d, std::vector<Elt>(d, 0));
        for (int i = 0; i < d; ++i)
            for (int l = 0; l < d; ++l)
                if (C[i][l])
                    for (int j = 0; j < d; ++j) nx[i][j] = F->add(nx[i][j], F->mul(C[i][l], pw[l][j]));
        pw = std::move(nx);
    }
    return M;
}

TPoly resultant_theta(const UPoly& a, const APoly& alpha) {
    if (alpha.is_zero()) throw ZeroParameter("alpha must be nonzero");
    if (!a.is_monic()) throw PreconditionViolated("resultant_theta expects a monic polynomial");
    const Field* F = a.F;
    int s = alpha.nvars();
    if (a.deg() == 0) return TPoly::constant(F, s, 1);
    return determinant(multiplication_matrix(alpha, a), TPolyOps{F, s});
}

const Field* splitting_field(const UPoly& P) { return Field::get(P.F->q(), std::max(1, P.deg())); }

Elt splitting_root(const UPoly& P) {
    if (!P.F->is_base()) throw PreconditionViolated("splitting_root expects a polynomial over F_q");
    if (!is_irreducible(P)) throw NotIrreducible(P.to_string() + " is not irreducible");
    const Field* G = splitting_field(P);
    UPoly Pg = embed(P, G);
    for (Elt z = 0; z < G->order(); ++z)
        if (eval(Pg, z) == 0) return z;
    throw NotIrreducible("no root found for " + P.to_string());
}

const std::vector<PrimeRoot>& primes_with_roots(const Field* F, int d) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<std::vector<PrimeRoot>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(F->q(), d);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto out = std::make_unique<std::vector<PrimeRoot>>();
    const Field* G = Field::get(F->q(), d);
    std::map<std::uint64_t, Elt> found;  // prime index -> least root
    std::vector<Elt> conj(d);
    for (Elt z = 0; z < G->order(); ++z) {
        conj[0] = z;
        bool full = true;
        for (int j = 1; j < d; ++j) {
            conj[j] = G->frob(conj[j - 1]);
            if (conj[j] == z) {
                full = false;
                break;
            }
        }
        if (!full) continue;
        if (d > 1 && G->frob(conj[d - 1]) != z) continue;
        // Minimal polynomial prod (x - z^(q^j)).
        std::vector<Elt> mp{1};
        for (int j = 0; j < d; ++j) {
            std::vector<Elt> nx(mp.size() + 1, 0);
            Elt nz = G->neg(conj[j]);
            for (std::size_t k = 0; k < mp.size(); ++k) {
                nx[k + 1] = G->add(nx[k + 1], mp[k]);
                nx[k] = G->add(nx[k], G->mul(mp[k], nz));
            }
            mp = std::move(nx);
        }
        UPoly P(F);
        for (Elt c : mp) {
            if (!G->in_base(c)) throw PreconditionViolated("minimal polynomial left the base field");
            P.c.push_back(c);
        }
        P.trim();
        found.emplace(monic_index(P), z);
    }
    for (auto& [idx, z] : found) out->push_back({monic_from_index(F, d, idx), z});
    auto& ref = *out;
    cache.emplace(key, std::move(out));
    return ref;
}

TPoly norm_at_root(const APoly& alpha, const Field* G, Elt root, int d) {
    const Field* F = alpha.field();
    int s = alpha.nvars();
    TPoly prod = TPoly::constant(G, s, 1);
    Elt z = root;
    for (int j = 0; j < d; ++j) {
        // alpha evaluated at theta = z, coefficients embedded into G.
        std::vector<TPoly::Term> raw;
        Elt zp = 1;
        for (int k = 0; k <= alpha.deg(); ++k) {
            for (auto& [m, c] : alpha.coeffs()[k].terms()) raw.push_back({m, G->mul(c, zp)});
            zp = G->mul(zp, z);
        }
        prod = prod * TPoly::from_terms(G, s, std::move(raw));
        z = G->frob(z);
    }
    std::vector<TPoly::Term> back;
    for (auto& [m, c] : prod.terms()) {
        if (!G->in_base(c)) throw PreconditionViolated("norm did not descend to the base field");
        back.push_back({m, c});
    }
    return TPoly::from_terms(F, s, std::move(back));
}

RhoTable::RhoTable(const APoly& alpha) : alpha_(alpha), F_(alpha.field()) {
    if (alpha.is_zero()) throw ZeroParameter("alpha must be nonzero");
}

const TPoly& RhoTable::operator()(const UPoly& a) {
    auto key = std::make_pair(a.deg(), monic_index(a));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    int d = a.deg();
    TPoly val;
    if (d == 0) {
        val = TPoly::constant(F_, alpha_.nvars(), 1);
    } else {
        bool factored = false;
        for (int k = 1; 2 * k <= d && !factored; ++k) {
            for (auto& pr : primes_with_roots(F_, k)) {
                UPoly quo, rem;
                divmod(a, pr.P, quo, rem);
                if (rem.is_zero()) {
                    TPoly rp = (*this)(pr.P);
                    val = rp * (*this)(quo);
                    factored = true;
                    break;
                }
            }
        }
        if (!factored) {
            const auto& prs = primes_with_roots(F_, d);
            std::uint64_t idx = monic_index(a);
            auto pit = std::lower_bound(prs.begin(), prs.end(), idx,
                                        [](const PrimeRoot& pr, std::uint64_t v) { return monic_index(pr.P) < v; });
            if (pit == prs.end() || pit->P != a) throw NotIrreducible("no factor found for " + a.to_string());
            val = norm_at_root(alpha_, Field::get(F_->q(), d), pit->root, d);
        }
    }
    return memo_.emplace(key, std::move(val)).first->second;
}

}  // namespace drin
