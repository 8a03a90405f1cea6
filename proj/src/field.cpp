#include "drin/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "drin/errors.hpp"
#include "drin/upoly.hpp"

namespace drin {

bool is_prime_int(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::pair<int, int> prime_power(int q) {
    if (q < 2) throw PreconditionViolated("q must be a prime power, got " + std::to_string(q));
    int p = 2;
    while (q % p != 0) ++p;
    int e = 0, r = q;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    if (r != 1) throw PreconditionViolated("q must be a prime power, got " + std::to_string(q));
    return {p, e};
}

namespace {

std::uint64_t ipow(std::uint64_t b, int n) {
    std::uint64_t r = 1;
    while (n-- > 0) r *= b;
    return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Polynomials over F_p as digit vectors, used only to build F_q when e > 1.
std::vector<int> fp_mulmod(const std::vector<int>& a, const std::vector<int>& b,
                           const std::vector<int>& mod, int p) {
    int e = static_cast<int>(mod.size()) - 1;
    std::vector<int> r(2 * e, 0);
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    for (int k = 2 * e - 1; k >= e; --k) {
        int c = r[k];
        if (c == 0) continue;
        for (int j = 0; j <= e; ++j) r[k - e + j] = ((r[k - e + j] - c * mod[j]) % p + p) % p;
    }
    r.resize(e);
    return r;
}

bool fp_irreducible(const std::vector<int>& f, int p) {
    // Trial division by every monic polynomial of degree 1..deg/2.
    int n = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= n; ++d) {
        std::uint64_t cnt = ipow(p, d);
        for (std::uint64_t idx = 0; idx < cnt; ++idx) {
            std::vector<int> g(d + 1, 0);
            g[d] = 1;
            std::uint64_t t = idx;
            for (int j = 0; j < d; ++j) {
                g[j] = static_cast<int>(t % p);
                t /= p;
            }
            std::vector<int> r = f;
            for (int k = n; k >= d; --k) {
                int c = r[k];
                if (c == 0) continue;
                for (int j = 0; j <= d; ++j) r[k - d + j] = ((r[k - d + j] - c * g[j]) % p + p) % p;
            }
            bool zero = true;
            for (int j = 0; j < d; ++j) zero = zero && r[j] == 0;
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace

const Field* Field::get(int q, int m) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<Field>> cache;
    if (m < 1) throw PreconditionViolated("extension degree must be >= 1");
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({q, m});
        if (it != cache.end()) return it->second.get();
    }
    // Build the base outside the lock; construction recurses into get(q, 1).
    if (m > 1) get(q, 1);
    std::unique_ptr<Field> f(new Field(q, m));
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(std::make_pair(q, m), std::move(f));
    return it->second.get();
}

Field::Field(int q, int m) {
    auto [p, e] = prime_power(q);
    p_ = p;
    e_ = e;
    q_ = q;
    m_ = m;
    std::uint64_t order = ipow(q, m);
    if (order > (1u << 21)) throw PreconditionViolated("field too large for table arithmetic: " + std::to_string(order));
    order_ = static_cast<std::uint32_t>(order);
    const int n = e * m;

    neg_table_.resize(order_);
    for (Elt a = 0; a < order_; ++a) {
        Elt r = 0, t = a, w = 1;
        for (int i = 0; i < n; ++i) {
            Elt d = t % p;
            t /= p;
            r += ((p - d) % p) * w;
            w *= p;
        }
        neg_table_[a] = r;
    }
    if (order_ <= 729) {
        add_table_.resize(static_cast<std::size_t>(order_) * order_);
        for (Elt a = 0; a < order_; ++a)
            for (Elt b = 0; b < order_; ++b) add_table_[a * order_ + b] = add_slow(a, b);
    }

    if (m == 1) {
        base_ = this;
        modulus_ = {0, 1};
        if (e > 1) {
            std::uint64_t cnt = ipow(p, e);
            for (std::uint64_t idx = 0; idx < cnt; ++idx) {
                std::vector<int> g(e + 1, 0);
                g[e] = 1;
                std::uint64_t t = idx;
                for (int j = 0; j < e; ++j) {
                    g[j] = static_cast<int>(t % p);
                    t /= p;
                }
                if (fp_irreducible(g, p)) {
                    prime_modulus_ = g;
                    break;
                }
            }
        }
    } else {
        base_ = get(q, 1);
        for (std::uint64_t idx = 0;; ++idx) {
            UPoly f = monic_from_index(base_, m, idx);
            if (is_irreducible(f)) {
                modulus_ = f.c;
                break;
            }
        }
    }

    // Discrete log tables from a primitive element.
    log_.assign(order_, 0);
    exp_.assign(order_, 0);
    auto factors = prime_factors(order_ - 1);
    auto slow_pow = [&](Elt a, std::uint64_t k) {
        Elt r = 1;
        while (k) {
            if (k & 1) r = poly_mul(r, a);
            a = poly_mul(a, a);
            k >>= 1;
        }
        return r;
    };
    Elt gen = 0;
    for (Elt c = 1; c < order_; ++c) {
        bool ok = true;
        for (auto f : factors)
            if (slow_pow(c, (order_ - 1) / f) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            gen = c;
            break;
        }
    }
    if (order_ == 2) gen = 1;
    Elt x = 1;
    for (std::uint32_t k = 0; k + 1 < order_; ++k) {
        exp_[k] = x;
        log_[x] = k;
        x = poly_mul(x, gen);
    }
    exp_[order_ - 1] = 1;
}

Elt Field::add_slow(Elt a, Elt b) const {
    if (p_ == 2) return a ^ b;
    Elt r = 0, w = 1;
    while (a || b) {
        Elt d = (a % p_ + b % p_) % p_;
        r += d * w;
        w *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

Elt Field::poly_mul(Elt a, Elt b) const {
    if (m_ == 1) {
        if (e_ == 1) return static_cast<Elt>((static_cast<std::uint64_t>(a) * b) % p_);
        std::vector<int> da(e_), db(e_);
        for (int i = 0; i < e_; ++i) {
            da[i] = a % p_;
            a /= p_;
            db[i] = b % p_;
            b /= p_;
        }
        auto r = fp_mulmod(da, db, prime_modulus_, p_);
        Elt out = 0;
        for (int i = e_ - 1; i >= 0; --i) out = out * p_ + r[i];
        return out;
    }
    auto ca = coords(a), cb = coords(b);
    std::vector<Elt> r(2 * m_, 0);
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) r[i + j] = base_->add(r[i + j], base_->mul(ca[i], cb[j]));
    for (int k = 2 * m_ - 1; k >= m_; --k) {
        Elt c = r[k];
        if (c == 0) continue;
        for (int j = 0; j <= m_; ++j) r[k - m_ + j] = base_->sub(r[k - m_ + j], base_->mul(c, modulus_[j]));
    }
    r.resize(m_);
    return from_coords(r);
}

Elt Field::from_int(long long v) const {
    long long r = v % p_;
    if (r < 0) r += p_;
    return static_cast<Elt>(r);
}

Elt Field::inv(Elt a) const {
    if (a == 0) throw InexactDivision("division by zero in " + describe());
    std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : (order_ - 1) - l];
}

Elt Field::pow(Elt a, long long n) const {
    if (n == 0) return 1;
    if (a == 0) {
        if (n < 0) throw InexactDivision("zero to a negative power");
        return 0;
    }
    long long mod = order_ - 1;
    long long k = (static_cast<long long>(log_[a]) * (n % mod)) % mod;
    if (k < 0) k += mod;
    return exp_[k];
}

Elt Field::frob(Elt a, int n) const {
    if (a == 0 || order_ == static_cast<std::uint32_t>(q_)) return a;
    std::uint64_t mod = order_ - 1, k = 1, b = q_ % mod;
    int t = n % m_;
    while (t-- > 0) k = (k * b) % mod;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * k) % mod];
}

std::vector<Elt> Field::coords(Elt a) const {
    std::vector<Elt> c(m_);
    for (int i = 0; i < m_; ++i) {
        c[i] = a % q_;
        a /= q_;
    }
    return c;
}

Elt Field::from_coords(const std::vector<Elt>& c) const {
    Elt r = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) r = r * q_ + c[i];
    return r;
}

std::string Field::elt_to_string(Elt a) const {
    if (m_ == 1) {
        if (e_ == 1) return std::to_string(a);
        return "#" + std::to_string(a);
    }
    std::ostringstream os;
    os << '[';
    auto c = coords(a);
    for (int i = 0; i < m_; ++i) {
        if (i) os << ',';
        os << base_->elt_to_string(c[i]);
    }
    os << ']';
    return os.str();
}

std::string Field::describe() const {
    std::string s = "F_" + std::to_string(q_);
    if (m_ > 1) s += "[x]/(" + UPoly(base_, modulus_).to_string("x") + ")";
    return s;
}

}  // namespace drin
