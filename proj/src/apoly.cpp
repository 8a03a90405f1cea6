#include "drin/apoly.hpp"

#include <cctype>
#include <sstream>

#include "drin/errors.hpp"

namespace drin {

APoly::APoly(const Field* F, int s, std::vector<TPoly> c) : F_(F), s_(s), c_(std::move(c)) {
    for (auto& x : c_) x = x.with_nvars(s_);
    trim();
}

void APoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

APoly APoly::from_upoly(const UPoly& a, int s) {
    APoly r(a.F, s);
    for (auto x : a.c) r.c_.push_back(TPoly::constant(a.F, s, x));
    r.trim();
    return r;
}

APoly APoly::constant(const TPoly& c) {
    APoly r(c.field(), c.nvars());
    r.c_.push_back(c);
    r.trim();
    return r;
}

TPoly APoly::coeff(int i) const {
    if (i >= 0 && i < static_cast<int>(c_.size())) return c_[i];
    return TPoly(F_, s_);
}

bool APoly::is_t_free() const {
    for (auto& x : c_)
        if (!x.is_constant()) return false;
    return true;
}

UPoly APoly::to_upoly() const {
    UPoly r(F_);
    for (auto& x : c_) {
        if (!x.is_constant()) throw PreconditionViolated("polynomial depends on t: " + to_string());
        r.c.push_back(x.constant_term());
    }
    r.trim();
    return r;
}

APoly operator+(const APoly& a, const APoly& b) {
    const Field* F = a.F_ ? a.F_ : b.F_;
    int s = std::max(a.s_, b.s_);
    std::vector<TPoly> c(std::max(a.c_.size(), b.c_.size()), TPoly(F, s));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < a.c_.size()) c[i] += a.c_[i];
        if (i < b.c_.size()) c[i] += b.c_[i];
    }
    return APoly(F, s, std::move(c));
}

APoly APoly::operator-() const {
    APoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

APoly operator-(const APoly& a, const APoly& b) { return a + (-b); }

APoly operator*(const APoly& a, const APoly& b) {
    const Field* F = a.F_ ? a.F_ : b.F_;
    int s = std::max(a.s_, b.s_);
    if (a.is_zero() || b.is_zero()) return APoly(F, s);
    std::vector<std::vector<TPoly::Term>> acc(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) addmul_into(acc[i + j], a.c_[i], b.c_[j]);
    std::vector<TPoly> c;
    c.reserve(acc.size());
    for (auto& raw : acc) c.push_back(TPoly::from_terms(F, s, std::move(raw)));
    return APoly(F, s, std::move(c));
}

APoly APoly::scaled(const TPoly& k) const {
    APoly r = *this;
    for (auto& x : r.c_) x = x * k;
    r.trim();
    return r;
}

APoly APoly::tau(int n) const {
    if (is_zero()) return *this;
    long long qn = 1;
    for (int i = 0; i < n; ++i) qn *= F_->q();
    std::vector<TPoly> c(static_cast<std::size_t>(deg() * qn + 1), TPoly(F_, s_));
    for (int i = 0; i <= deg(); ++i) c[static_cast<std::size_t>(i * qn)] = c_[i].frob(n);
    return APoly(F_, s_, std::move(c));
}

APoly APoly::with_nvars(int s) const {
    APoly r = *this;
    r.s_ = s;
    for (auto& x : r.c_) x = x.with_nvars(s);
    return r;
}

APoly APoly::embed(const Field* G) const {
    APoly r = *this;
    r.F_ = G;
    for (auto& x : r.c_) x = x.embed(G);
    return r;
}

std::vector<TPoly> APoly::reduce_mod(const UPoly& P) const {
    int d = P.deg();
    std::vector<TPoly> r(d, TPoly(F_, s_));
    // theta^i mod P, built incrementally.
    UPoly pw = UPoly::constant(P.F, 1) % P;
    UPoly th = UPoly::theta(P.F);
    for (int i = 0; i <= deg(); ++i) {
        if (!c_[i].is_zero())
            for (int j = 0; j < d; ++j) {
                Elt e = pw.coeff(j);
                if (e) r[j] += c_[i].scaled(e);
            }
        pw = (pw * th) % P;
    }
    return r;
}

APoly APoly::substitute_t(const std::vector<APoly>& vals) const {
    if (static_cast<int>(vals.size()) < s_) throw ArityMismatch("substitution needs " + std::to_string(s_) + " values");
    int s_out = 0;
    for (auto& v : vals) s_out = std::max(s_out, v.nvars());
    APoly out(F_, s_out);
    APoly th = APoly::from_upoly(UPoly::theta(F_), s_out);
    APoly thpow = APoly::from_upoly(UPoly::constant(F_, 1), s_out);
    for (int i = 0; i <= deg(); ++i) {
        for (auto& [m, c] : c_[i].terms()) {
            APoly term = APoly::from_upoly(UPoly::constant(F_, c), s_out);
            for (int v = 0; v < s_; ++v) {
                int e = m.exp(v);
                if (e) term = term * pow(vals[v], e);
            }
            out = out + term * thpow;
        }
        thpow = thpow * th;
    }
    return out;
}

UPoly APoly::evaluate_t(const std::vector<Elt>& vals) const {
    UPoly r(F_);
    for (auto& x : c_) r.c.push_back(x.evaluate(vals));
    r.trim();
    return r;
}

std::string APoly::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(); i >= 0; --i) {
        const TPoly& x = c_[i];
        if (x.is_zero()) continue;
        if (!first) os << '+';
        first = false;
        std::string cs = x.to_string();
        bool one = x.is_one();
        if (i == 0) {
            os << cs;
            continue;
        }
        if (!one) {
            if (x.size() > 1)
                os << '(' << cs << ")*";
            else
                os << cs << '*';
        }
        os << 'X';
        if (i > 1) os << '^' << i;
    }
    return os.str();
}

APoly pow(const APoly& a, unsigned n) {
    APoly r = APoly::from_upoly(UPoly::constant(a.field(), 1), a.nvars()), b = a;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

namespace {

// Recursive-descent parser over the grammar documented in the header.
class Parser {
public:
    Parser(const std::string& s, const Field* F, int nv) : src_(s), F_(F), s_(nv) {}

    APoly parse() {
        APoly r = expr();
        skip();
        if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return r;
    }

private:
    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("cannot parse '" + src_ + "' at " + std::to_string(pos_) + ": " + msg);
    }
    long long number() {
        skip();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) fail("number expected");
        long long v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            v = v * 10 + (src_[pos_++] - '0');
            if (v > (1ll << 40)) fail("number too large");
        }
        return v;
    }
    APoly scalar(Elt c) { return APoly::constant(TPoly::constant(F_, s_, c)); }

    APoly expr() {
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        APoly r = term();
        if (neg) r = -r;
        for (;;) {
            if (eat('+')) r = r + term();
            else if (eat('-')) r = r - term();
            else break;
        }
        return r;
    }
    APoly term() {
        APoly r = factor();
        for (;;) {
            skip();
            if (eat('*')) {
                r = r * factor();
            } else if (pos_ < src_.size() && (src_[pos_] == '(' || src_[pos_] == 'X' || src_[pos_] == 't')) {
                r = r * factor();  // implicit product such as 2X or (t1-X)(t2-X)
            } else {
                break;
            }
        }
        return r;
    }
    APoly factor() {
        APoly b = atom();
        if (eat('^')) {
            long long e = number();
            b = pow(b, static_cast<unsigned>(e));
        }
        return b;
    }
    APoly atom() {
        skip();
        if (pos_ >= src_.size()) fail("operand expected");
        char ch = src_[pos_];
        if (ch == '(') {
            ++pos_;
            APoly r = expr();
            if (!eat(')')) fail("')' expected");
            return r;
        }
        if (ch == '-') {
            ++pos_;
            return -factor();
        }
        if (ch == 'X' || ch == 'x') {
            ++pos_;
            return APoly::from_upoly(UPoly::theta(F_), s_);
        }
        if (ch == 't') {
            ++pos_;
            long long i = number();
            if (i < 1 || i > s_) fail("variable t" + std::to_string(i) + " outside t1..t" + std::to_string(s_));
            return APoly::constant(TPoly::var(F_, s_, static_cast<int>(i)));
        }
        if (ch == '#') {
            ++pos_;
            long long k = number();
            if (k >= F_->q()) fail("base-field index out of range");
            return scalar(static_cast<Elt>(k));
        }
        if (ch == '[') {
            ++pos_;
            std::vector<Elt> co;
            do {
                long long k = number();
                if (k >= F_->q()) fail("coordinate out of range");
                co.push_back(static_cast<Elt>(k));
            } while (eat(','));
            if (!eat(']')) fail("']' expected");
            if (static_cast<int>(co.size()) != F_->m()) fail("coordinate vector has wrong length");
            return scalar(F_->from_coords(co));
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) return scalar(F_->from_int(number()));
        fail("unexpected '" + std::string(1, ch) + "'");
    }

    std::string src_;
    std::size_t pos_ = 0;
    const Field* F_;
    int s_;
};

}  // namespace

int max_t_index(const std::string& text) {
    int mx = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != 't') continue;
        std::size_t j = i + 1;
        int v = 0;
        bool any = false;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
            v = v * 10 + (text[j++] - '0');
            any = true;
        }
        if (any) mx = std::max(mx, v);
    }
    return mx;
}

APoly parse_apoly(const std::string& text, const Field* F, int s) {
    if (s < 0) s = max_t_index(text);
    if (s > kMaxVars) throw ParseError("at most " + std::to_string(kMaxVars) + " t-variables");
    return Parser(text, F, s).parse();
}

}  // namespace drin
