#include "drin/loga.hpp"

#include "drin/carlitz.hpp"
#include "drin/errors.hpp"

namespace drin {

namespace {

using Expansion = std::map<OpMonomial, UPoly>;

void add_into(Expansion& e, const OpMonomial& m, const UPoly& c) {
    if (c.is_zero()) return;
    auto it = e.find(m);
    if (it == e.end()) {
        e.emplace(m, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) e.erase(it);
}

Expansion mul(const Expansion& a, const Expansion& b) {
    Expansion out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) add_into(out, ma * mb, ca * cb);
    return out;
}

Expansion unit_expansion(const Field* F) { return {{OpMonomial{}, UPoly::constant(F, 1)}}; }

std::string tau_symbol(int m, const std::string& inner) {
    if (m == 0) return inner;
    if (m == 1) return "tau(" + inner + ")";
    return "tau^" + std::to_string(m) + "(" + inner + ")";
}

UPoly lcm(const UPoly& a, const UPoly& b) { return (a / gcd(a, b)) * b; }

// Block d of L_r over the common denominator lcm(A+,d).
struct ScriptBlock {
    UPoly den;
    Expansion num;
};

ScriptBlock script_block(const Field* F, int r, int d) {
    ScriptBlock b;
    auto monics = enumerate_monic(F, d);
    b.den = UPoly::constant(F, 1);
    for (const UPoly& a : monics) b.den = lcm(b.den, a);
    for (const UPoly& a : monics) {
        UPoly cof = b.den / a;
        auto cc = carlitz_coeffs(a);
        std::vector<int> k(static_cast<std::size_t>(r), 0);
        while (true) {
            OpMonomial m;
            m.z = d;
            UPoly c = cof;
            for (int j = 0; j < r; ++j) {
                int kj = k[static_cast<std::size_t>(j)];
                m.x[{j + 1, kj}] += 1;
                c = c * cc[static_cast<std::size_t>(kj)];
            }
            add_into(b.num, m, c);
            int j = 0;
            while (j < r && ++k[static_cast<std::size_t>(j)] > d) k[static_cast<std::size_t>(j++)] = 0;
            if (j == r) break;
        }
    }
    return b;
}

}  // namespace

OpMonomial OpMonomial::operator*(const OpMonomial& o) const {
    OpMonomial r = *this;
    for (const auto& [k, e] : o.x) r.x[k] += e;
    r.z += o.z;
    return r;
}

OpMonomial OpMonomial::tau(int n) const {
    OpMonomial r;
    for (const auto& [k, e] : x) r.x[{k.first, k.second + n}] = e;
    r.z = z + n;
    return r;
}

std::string OpMonomial::to_string() const {
    std::string s;
    for (const auto& [k, e] : x) {
        if (!s.empty()) s += "*";
        s += tau_symbol(k.second, "X" + std::to_string(k.first));
        if (e > 1) s += "^" + std::to_string(e);
    }
    if (!s.empty()) s += "*";
    return s + tau_symbol(z, "Z");
}

void OperatorSeries::add(const OpMonomial& m, const RatFunc& c) {
    if (c.is_zero()) return;
    if (m.z > nmax) {
        truncated = true;
        return;
    }
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms.erase(it);
}

int OperatorSeries::max_z() const { return terms.empty() ? -1 : terms.rbegin()->first.z; }

OperatorSeries OperatorSeries::block(int z) const {
    OperatorSeries out(F, r, nmax);
    for (const auto& [m, c] : terms)
        if (m.z == z) out.terms.emplace(m, c);
    return out;
}

std::vector<std::pair<std::string, std::string>> OperatorSeries::serialize() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [m, c] : terms) out.emplace_back(m.to_string(), c.to_string());
    return out;
}

OperatorSeries operator+(const OperatorSeries& a, const OperatorSeries& b) {
    OperatorSeries out = a;
    out.nmax = std::min(a.nmax, b.nmax);
    out.truncated = a.truncated || b.truncated;
    for (const auto& [m, c] : b.terms) out.add(m, c);
    return out;
}

OperatorSeries operator-(const OperatorSeries& a, const OperatorSeries& b) { return a + scale(b, -RatFunc(UPoly::constant(b.F, 1))); }

OperatorSeries scale(const OperatorSeries& a, const RatFunc& c) {
    OperatorSeries out(a.F, a.r, a.nmax);
    out.truncated = a.truncated;
    if (c.is_zero()) return out;
    for (const auto& [m, v] : a.terms) out.terms.emplace(m, v * c);
    return out;
}

OperatorSeries tau(const OperatorSeries& a, int n) {
    OperatorSeries out(a.F, a.r, a.nmax);
    out.truncated = a.truncated;
    for (const auto& [m, c] : a.terms) out.add(m.tau(n), tau(c, n));
    return out;
}

OperatorSeries t_action(int i, int j, const OperatorSeries& x) {
    if (i < 1 || i > x.r + 1) throw PreconditionViolated("t_action index out of range");
    if (j < 0) throw PreconditionViolated("t_action needs a nonnegative power");
    OperatorSeries out(x.F, x.r, x.nmax);
    out.truncated = x.truncated;
    if (i == x.r + 1) {
        for (const auto& [m, c] : x.terms) {
            OpMonomial mm = m;
            mm.z += j;
            out.add(mm, c);
        }
        return out;
    }
    auto cc = carlitz_coeffs(UPoly::monomial(x.F, j));
    for (const auto& [m, c] : x.terms) {
        OpMonomial rest;
        rest.z = m.z;
        Expansion e = unit_expansion(x.F);
        for (const auto& [k, mult] : m.x) {
            if (k.first != i) {
                rest.x[k] = mult;
                continue;
            }
            // tau^m(C_{theta^j}(X_i)) = sum_k tau^m(c_k) tau^{m+k}(X_i)
            Expansion f;
            for (std::size_t kk = 0; kk < cc.size(); ++kk) {
                OpMonomial s;
                s.x[{i, k.second + static_cast<int>(kk)}] = 1;
                add_into(f, s, tau(cc[kk], k.second));
            }
            for (int t = 0; t < mult; ++t) e = mul(e, f);
        }
        for (const auto& [em, ec] : e) out.add(em * rest, c * RatFunc(ec));
    }
    return out;
}

OperatorSeries apply_tpoly(const APoly& g, const OperatorSeries& x) {
    if (g.nvars() > x.r + 1) throw ArityMismatch("polynomial uses more than r+1 variables");
    OperatorSeries out(x.F, x.r, x.nmax);
    out.truncated = x.truncated;
    for (int k = 0; k <= g.deg(); ++k) {
        const TPoly gk = g.coeff(k);
        for (const auto& [mono, c] : gk.terms()) {
            OperatorSeries y = x;
            for (int i = 1; i <= g.nvars(); ++i)
                if (mono.exp(i - 1) > 0) y = t_action(i, mono.exp(i - 1), y);
            out = out + scale(y, RatFunc(UPoly::monomial(x.F, k, c)));
        }
    }
    return out;
}

OperatorSeries build_script_l(const Field* F, int r, int dmax) {
    if (dmax < 0) throw PreconditionViolated("dmax must be nonnegative");
    OperatorSeries out(F, r, dmax);
    for (int d = 0; d <= dmax; ++d) {
        auto b = script_block(F, r, d);
        for (const auto& [m, n] : b.num) out.add(m, RatFunc(n, b.den));
    }
    return out;
}

LogAlgebraic log_algebraic_poly(const Field* F, int r, int dmax) {
    const bool autod = dmax < 0;
    const int limit = autod ? 8 : dmax;
    LogAlgebraic res;
    res.S = OperatorSeries(F, r, limit);
    std::vector<ScriptBlock> L;
    std::vector<bool> zero_block;
    for (int n = 0; n <= limit; ++n) {
        L.push_back(script_block(F, r, n));
        // Block n of exp_C(L_r) collects tau^i(L_d) / D_i with d + i = n.
        std::vector<UPoly> dens;
        UPoly den = UPoly::constant(F, 1);
        for (int i = 0; i <= n; ++i) {
            dens.push_back(tau(L[static_cast<std::size_t>(n - i)].den, i) * carlitz_D(F, i));
            den = lcm(den, dens.back());
        }
        Expansion acc;
        for (int i = 0; i <= n; ++i) {
            UPoly cof = den / dens[static_cast<std::size_t>(i)];
            for (const auto& [m, c] : L[static_cast<std::size_t>(n - i)].num) add_into(acc, m.tau(i), tau(c, i) * cof);
        }
        for (const auto& [m, c] : acc) {
            UPoly quo, rem;
            divmod(c, den, quo, rem);
            if (!rem.is_zero())
                throw NonIntegralCoefficient("coefficient of " + m.to_string() + " is " + RatFunc(c, den).to_string());
            res.S.add(m, RatFunc(quo));
        }
        zero_block.push_back(acc.empty());
        if (autod && n >= 2 && zero_block[static_cast<std::size_t>(n)] && zero_block[static_cast<std::size_t>(n - 1)]) {
            res.S.nmax = n;
            break;
        }
    }
    res.dmax = res.S.nmax;
    res.max_z = res.S.max_z();
    int nb = static_cast<int>(zero_block.size());
    res.trailing_zero = nb >= 2 && zero_block[static_cast<std::size_t>(nb - 1)] && zero_block[static_cast<std::size_t>(nb - 2)];
    return res;
}

void CommPoly::add(const std::vector<int>& ye, int ze, const UPoly& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(ye, ze);
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(key, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms.erase(it);
}

std::string CommPoly::to_string() const {
    if (terms.empty()) return "0";
    std::string s;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& [key, c] = *it;
        std::string mono;
        for (int j = 0; j < k; ++j) {
            int e = key.first[static_cast<std::size_t>(j)];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += k == 1 ? std::string("Y") : "Y" + std::to_string(j + 1);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (key.second > 0) {
            if (!mono.empty()) mono += "*";
            mono += "z";
            if (key.second > 1) mono += "^" + std::to_string(key.second);
        }
        std::string cs = c.to_string();
        if (!s.empty()) s += " + ";
        if (mono.empty())
            s += "(" + cs + ")";
        else if (c.is_one())
            s += mono;
        else
            s += "(" + cs + ")*" + mono;
    }
    return s;
}

CommPoly specialize(const OperatorSeries& S, bool one_variable) {
    CommPoly out;
    out.F = S.F;
    out.k = one_variable ? 1 : S.r;
    const long long q = S.F->q();
    auto qpow = [q](int m) {
        long long v = 1;
        while (m-- > 0) v *= q;
        return static_cast<int>(v);
    };
    for (const auto& [m, c] : S.terms) {
        if (!c.is_polynomial()) throw NonIntegralCoefficient("coefficient of " + m.to_string() + " is not in A");
        std::vector<int> ye(static_cast<std::size_t>(out.k), 0);
        for (const auto& [key, e] : m.x) ye[static_cast<std::size_t>(one_variable ? 0 : key.first - 1)] += e * qpow(key.second);
        out.add(ye, qpow(m.z), c.num);
    }
    return out;
}

CommPoly frobenius(const CommPoly& p) {
    CommPoly out;
    out.F = p.F;
    out.k = p.k;
    const int q = p.F->q();
    for (const auto& [key, c] : p.terms) {
        std::vector<int> ye = key.first;
        for (int& e : ye) e *= q;
        out.add(ye, key.second * q, tau(c, 1));
    }
    return out;
}

}  // namespace drin
