#include "drin/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "drin/errors.hpp"

namespace drin {

UPoly UPoly::monomial(const Field* f, int deg, Elt a) {
    UPoly r(f);
    if (a == 0) return r;
    r.c.assign(deg + 1, 0);
    r.c[deg] = a;
    return r;
}

bool UPoly::operator<(const UPoly& o) const {
    if (deg() != o.deg()) return deg() < o.deg();
    for (int i = deg(); i >= 0; --i)
        if (c[i] != o.c[i]) return c[i] < o.c[i];
    return false;
}

std::string UPoly::to_string(const std::string& var) const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(); i >= 0; --i) {
        Elt a = c[i];
        if (a == 0) continue;
        if (!first) os << '+';
        first = false;
        bool unit = (a == 1);
        if (!unit || i == 0) {
            os << F->elt_to_string(a);
            if (i > 0) os << '*';
        }
        if (i > 0) {
            os << var;
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    const Field* F = a.F ? a.F : b.F;
    UPoly r(F);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = F->add(a.coeff(i), b.coeff(i));
    r.trim();
    return r;
}

UPoly operator-(const UPoly& a) {
    UPoly r = a;
    for (auto& x : r.c) x = a.F->neg(x);
    return r;
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
    const Field* F = a.F ? a.F : b.F;
    UPoly r(F);
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            if (b.c[j]) r.c[i + j] = F->add(r.c[i + j], F->mul(a.c[i], b.c[j]));
    }
    r.trim();
    return r;
}

UPoly scale(const UPoly& a, Elt s) {
    UPoly r = a;
    for (auto& x : r.c) x = a.F->mul(x, s);
    r.trim();
    return r;
}

UPoly shift(const UPoly& a, int k) {
    UPoly r = a;
    if (r.is_zero()) return r;
    if (k >= 0) {
        r.c.insert(r.c.begin(), k, 0);
    } else {
        int drop = std::min<int>(-k, static_cast<int>(r.c.size()));
        r.c.erase(r.c.begin(), r.c.begin() + drop);
    }
    r.trim();
    return r;
}

void divmod(const UPoly& a, const UPoly& b, UPoly& quo, UPoly& rem) {
    if (b.is_zero()) throw InexactDivision("polynomial division by zero");
    const Field* F = b.F;
    rem = a;
    rem.F = F;
    quo = UPoly(F);
    int db = b.deg();
    if (rem.deg() < db) return;
    quo.c.assign(rem.deg() - db + 1, 0);
    Elt ilc = F->inv(b.lc());
    for (int k = rem.deg(); k >= db; --k) {
        Elt c = rem.c[k];
        if (c == 0) continue;
        Elt f = F->mul(c, ilc);
        quo.c[k - db] = f;
        for (int j = 0; j <= db; ++j) rem.c[k - db + j] = F->sub(rem.c[k - db + j], F->mul(f, b.c[j]));
    }
    rem.trim();
    quo.trim();
}

UPoly operator/(const UPoly& a, const UPoly& b) {
    UPoly q, r;
    divmod(a, b, q, r);
    if (!r.is_zero()) throw InexactDivision("inexact division " + a.to_string() + " / " + b.to_string());
    return q;
}

UPoly operator%(const UPoly& a, const UPoly& b) {
    UPoly q, r;
    divmod(a, b, q, r);
    return r;
}

UPoly make_monic(const UPoly& a) {
    if (a.is_zero()) return a;
    return scale(a, a.F->inv(a.lc()));
}

UPoly gcd(const UPoly& a, const UPoly& b) {
    UPoly x = a, y = b;
    while (!y.is_zero()) {
        UPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return make_monic(x);
}

UPoly pow(const UPoly& a, long long n) {
    UPoly r = UPoly::constant(a.F, 1), b = a;
    while (n > 0) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

UPoly powmod(const UPoly& a, std::uint64_t n, const UPoly& mod) {
    UPoly r = UPoly::constant(mod.F, 1) % mod, b = a % mod;
    while (n > 0) {
        if (n & 1) r = (r * b) % mod;
        n >>= 1;
        if (n) b = (b * b) % mod;
    }
    return r;
}

UPoly derivative(const UPoly& a) {
    UPoly r(a.F);
    if (a.deg() < 1) return r;
    r.c.resize(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = a.F->mul(a.F->from_int(static_cast<long long>(i)), a.c[i]);
    r.trim();
    return r;
}

Elt eval(const UPoly& a, Elt x) {
    Elt r = 0;
    for (int i = a.deg(); i >= 0; --i) r = a.F->add(a.F->mul(r, x), a.c[i]);
    return r;
}

UPoly embed(const UPoly& a, const Field* G) {
    // Base-field indices coincide in every extension of the same q.
    UPoly r(G, a.c);
    return r;
}

UPoly tau(const UPoly& a, int n) {
    UPoly r(a.F);
    if (a.is_zero()) return r;
    long long qn = 1;
    for (int i = 0; i < n; ++i) qn *= a.F->q();
    r.c.assign(static_cast<std::size_t>(a.deg() * qn + 1), 0);
    for (int i = 0; i <= a.deg(); ++i) r.c[static_cast<std::size_t>(i * qn)] = a.F->frob(a.c[i], n);
    return r;
}

bool is_irreducible(const UPoly& f) {
    int d = f.deg();
    if (d < 1) return false;
    if (d == 1) return true;
    UPoly x = UPoly::theta(f.F);
    UPoly xp = x % f;
    for (int i = 1; 2 * i <= d; ++i) {
        xp = powmod(xp, static_cast<std::uint64_t>(f.F->order()), f);
        UPoly g = gcd(xp - x, f);
        if (g.deg() > 0) return false;
    }
    return true;
}

std::uint64_t count_monic(int q, int d) {
    std::uint64_t r = 1;
    for (int i = 0; i < d; ++i) r *= static_cast<std::uint64_t>(q);
    return r;
}

UPoly monic_from_index(const Field* F, int d, std::uint64_t idx) {
    UPoly r(F);
    r.c.assign(d + 1, 0);
    r.c[d] = 1;
    for (int j = 0; j < d; ++j) {
        r.c[j] = static_cast<Elt>(idx % F->q());
        idx /= F->q();
    }
    return r;
}

std::uint64_t monic_index(const UPoly& a) {
    std::uint64_t idx = 0;
    for (int j = a.deg() - 1; j >= 0; --j) idx = idx * a.F->q() + a.c[j];
    return idx;
}

std::vector<UPoly> enumerate_monic(const Field* F, int d) {
    std::vector<UPoly> out;
    if (d < 0) return out;
    std::uint64_t n = count_monic(F->q(), d);
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(monic_from_index(F, d, i));
    return out;
}

std::vector<UPoly> enumerate_primes(const Field* F, int d) {
    std::vector<UPoly> out;
    if (d < 1) return out;
    std::uint64_t n = count_monic(F->q(), d);
    for (std::uint64_t i = 0; i < n; ++i) {
        UPoly f = monic_from_index(F, d, i);
        if (is_irreducible(f)) out.push_back(std::move(f));
    }
    return out;
}

namespace {
int mobius(int n) {
    int r = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            r = -r;
        }
    }
    if (n > 1) r = -r;
    return r;
}
}  // namespace

std::uint64_t prime_count(int q, int d) {
    long long s = 0;
    for (int c = 1; c <= d; ++c)
        if (d % c == 0) s += mobius(c) * static_cast<long long>(count_monic(q, d / c));
    return static_cast<std::uint64_t>(s / d);
}

}  // namespace drin
