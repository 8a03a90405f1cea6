#include "drin/tpoly.hpp"

#include <algorithm>
#include <sstream>

#include "drin/errors.hpp"

namespace drin {

void Mono::set(int i, int e) {
    if (e < 0 || e > 255) throw PreconditionViolated("t-exponent out of range: " + std::to_string(e));
    int sh = 56 - 8 * (i & 7);
    w[i >> 3] = (w[i >> 3] & ~(std::uint64_t{0xff} << sh)) | (static_cast<std::uint64_t>(e) << sh);
}

int Mono::total_degree() const {
    int d = 0;
    for (int i = 0; i < kMaxVars; ++i) d += exp(i);
    return d;
}

Mono Mono::operator*(const Mono& o) const {
    constexpr std::uint64_t hi = 0x8080808080808080ull;
    Mono r;
    for (int k = 0; k < 2; ++k) {
        // Bytewise add; a carry out of any byte means an exponent passed 255.
        std::uint64_t a = w[k], b = o.w[k];
        std::uint64_t low = (a & ~hi) + (b & ~hi);
        std::uint64_t s = low ^ ((a ^ b) & hi);
        std::uint64_t carry = ((a & b) | ((a | b) & ~s)) & hi;
        if (carry) throw PreconditionViolated("t-exponent overflow");
        r.w[k] = s;
    }
    return r;
}

void normalize_terms(const Field* F, std::vector<TPoly::Term>& raw) {
    if (raw.empty()) return;
    std::sort(raw.begin(), raw.end(), [](const TPoly::Term& a, const TPoly::Term& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < raw.size();) {
        Mono m = raw[i].first;
        Elt c = raw[i].second;
        std::size_t j = i + 1;
        for (; j < raw.size() && raw[j].first == m; ++j) c = F->add(c, raw[j].second);
        if (c != 0) raw[out++] = {m, c};
        i = j;
    }
    raw.resize(out);
}

TPoly TPoly::from_terms(const Field* F, int s, std::vector<Term> raw) {
    TPoly r(F, s);
    normalize_terms(F, raw);
    r.terms_ = std::move(raw);
    return r;
}

TPoly TPoly::constant(const Field* F, int s, Elt c) {
    TPoly r(F, s);
    if (c != 0) r.terms_.push_back({Mono{}, c});
    return r;
}

TPoly TPoly::var(const Field* F, int s, int i) {
    if (i < 1 || i > s) throw ArityMismatch("variable t" + std::to_string(i) + " outside 1.." + std::to_string(s));
    TPoly r(F, s);
    Mono m;
    m.set(i - 1, 1);
    r.terms_.push_back({m, 1});
    return r;
}

Elt TPoly::constant_term() const {
    if (!terms_.empty() && terms_[0].first.is_one()) return terms_[0].second;
    return 0;
}

int TPoly::total_degree() const {
    int d = -1;
    for (auto& t : terms_) d = std::max(d, t.first.total_degree());
    return d;
}

int TPoly::degree_in(int i) const {
    int d = -1;
    for (auto& t : terms_) d = std::max(d, t.first.exp(i - 1));
    return d;
}

namespace {
const Field* pick(const Field* a, const Field* b) {
    if (!a) return b;
    if (!b) return a;
    if (a != b) throw FieldMismatch("coefficient fields differ: " + a->describe() + " vs " + b->describe());
    return a;
}
}  // namespace

TPoly& TPoly::operator+=(const TPoly& o) {
    if (o.terms_.empty()) return *this;
    F_ = pick(F_, o.F_);
    s_ = std::max(s_, o.s_);
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            out.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            out.push_back(o.terms_[j++]);
        } else {
            Elt c = F_->add(terms_[i].second, o.terms_[j].second);
            if (c) out.push_back({terms_[i].first, c});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

TPoly TPoly::operator-() const {
    TPoly r = *this;
    for (auto& t : r.terms_) t.second = F_->neg(t.second);
    return r;
}

TPoly& TPoly::operator-=(const TPoly& o) { return *this += -o; }

void addmul_into(std::vector<TPoly::Term>& acc, const TPoly& a, const TPoly& b) {
    if (a.terms_.empty() || b.terms_.empty()) return;
    const Field* F = pick(a.F_, b.F_);
    acc.reserve(acc.size() + a.terms_.size() * b.terms_.size());
    for (auto& x : a.terms_)
        for (auto& y : b.terms_) acc.push_back({x.first * y.first, F->mul(x.second, y.second)});
}

TPoly operator*(const TPoly& a, const TPoly& b) {
    if (a.terms_.empty() || b.terms_.empty()) return TPoly(a.F_ ? a.F_ : b.F_, std::max(a.s_, b.s_));
    const Field* F = pick(a.F_, b.F_);
    int s = std::max(a.s_, b.s_);
    if (a.is_constant()) return b.scaled(a.terms_[0].second).with_nvars(s);
    if (b.is_constant()) return a.scaled(b.terms_[0].second).with_nvars(s);
    std::vector<TPoly::Term> acc;
    addmul_into(acc, a, b);
    return TPoly::from_terms(F, s, std::move(acc));
}

TPoly TPoly::scaled(Elt c) const {
    if (c == 0) return TPoly(F_, s_);
    TPoly r = *this;
    if (c == 1) return r;
    for (auto& t : r.terms_) t.second = F_->mul(t.second, c);
    return r;
}

TPoly TPoly::frob(int n) const {
    TPoly r = *this;
    if (!F_ || F_->order() == static_cast<std::uint32_t>(F_->q())) return r;
    for (auto& t : r.terms_) t.second = F_->frob(t.second, n);
    return r;
}

TPoly TPoly::embed(const Field* G) const {
    TPoly r = *this;
    r.F_ = G;
    return r;
}

TPoly TPoly::with_nvars(int s) const {
    TPoly r = *this;
    if (s < s_) {
        for (auto& t : terms_)
            for (int i = s; i < s_; ++i)
                if (t.first.exp(i)) throw ArityMismatch("cannot drop a variable that occurs");
    }
    r.s_ = s;
    return r;
}

Elt TPoly::evaluate(const std::vector<Elt>& vals) const {
    if (static_cast<int>(vals.size()) < s_) throw ArityMismatch("evaluation needs " + std::to_string(s_) + " values");
    Elt r = 0;
    for (auto& t : terms_) {
        Elt v = t.second;
        for (int i = 0; i < s_ && v; ++i) {
            int e = t.first.exp(i);
            if (e) v = F_->mul(v, F_->pow(vals[i], e));
        }
        r = F_->add(r, v);
    }
    return r;
}

TPoly TPoly::substitute(const std::vector<std::pair<int, Elt>>& fixed, int new_s, const std::vector<int>& rename) const {
    std::vector<Term> raw;
    raw.reserve(terms_.size());
    for (auto& t : terms_) {
        Elt v = t.second;
        Mono m;
        for (int i = 0; i < s_; ++i) {
            int e = t.first.exp(i);
            if (!e) continue;
            bool done = false;
            for (auto& [idx, val] : fixed)
                if (idx == i + 1) {
                    v = F_->mul(v, F_->pow(val, e));
                    done = true;
                    break;
                }
            if (!done) {
                int to = rename.at(i);
                if (to < 1 || to > new_s) throw ArityMismatch("substitution leaves t" + std::to_string(i + 1) + " unmapped");
                m.set(to - 1, m.exp(to - 1) + e);
            }
        }
        if (v) raw.push_back({m, v});
    }
    return from_terms(F_, new_s, std::move(raw));
}

std::string TPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    // Highest monomial first reads naturally (t1^2 before t1).
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Mono& m = it->first;
        Elt c = it->second;
        if (!first) os << '+';
        first = false;
        bool wrote = false;
        if (c != 1 || m.is_one()) {
            os << F_->elt_to_string(c);
            wrote = true;
        }
        for (int i = 0; i < kMaxVars; ++i) {
            int e = m.exp(i);
            if (!e) continue;
            if (wrote) os << '*';
            os << 't' << (i + 1);
            if (e > 1) os << '^' << e;
            wrote = true;
        }
    }
    return os.str();
}

TPoly pow(const TPoly& a, unsigned n) {
    TPoly r = TPoly::constant(a.field(), a.nvars(), 1), b = a;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

}  // namespace drin
