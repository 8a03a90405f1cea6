#include "drin/tate.hpp"

#include <algorithm>
#include <sstream>

#include "drin/errors.hpp"
#include "json.hpp"

namespace drin {

namespace {

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    if (a >= kExact || b >= kExact) return kExact;
    std::int64_t s = a + b;
    return s >= kExact ? kExact : s;
}

std::int64_t sat_mul(std::int64_t a, std::int64_t k) {
    if (a >= kExact) return kExact;
    if (a > 0 && a > kExact / k) return kExact;
    return a * k;
}

void check_compatible(const TateElem& a, const TateElem& b) {
    if (a.field() != b.field()) throw FieldMismatch("Tate elements over different coefficient fields");
    if (a.nvars() != b.nvars()) throw FieldMismatch("Tate elements with different variable counts");
}

}  // namespace

TateElem::TateElem(const Field* F, int s, std::int64_t prec) : F_(F), s_(s), vmin_(prec), prec_(prec) {}

TateElem TateElem::from_coeffs(const Field* F, int s, int grade, std::int64_t vmin, std::vector<TPoly> c,
                               std::int64_t prec) {
    TateElem x(F, s, prec);
    x.grade_ = grade;
    x.vmin_ = vmin;
    x.c_ = std::move(c);
    x.wrap_grade();
    x.normalize();
    return x;
}

TateElem TateElem::one(const Field* F, int s) { return constant(TPoly::constant(F, s, 1)); }

TateElem TateElem::constant(const TPoly& c) {
    return from_coeffs(c.field(), c.nvars(), 0, 0, {c}, kExact);
}

TateElem TateElem::from_apoly(const APoly& a) {
    std::vector<TPoly> c(a.coeffs().rbegin(), a.coeffs().rend());
    return from_coeffs(a.field(), a.nvars(), 0, -static_cast<std::int64_t>(a.deg()), std::move(c), kExact);
}

TateElem TateElem::from_upoly(const UPoly& a, int s) { return from_apoly(APoly::from_upoly(a, s)); }

TateElem TateElem::theta_power(const Field* F, int s, std::int64_t k) {
    return from_coeffs(F, s, 0, -k, {TPoly::constant(F, s, 1)}, kExact);
}

TateElem TateElem::lambda_power(const Field* F, int s, std::int64_t g) {
    if (g < 0) throw PreconditionViolated("lambda_power expects a nonnegative exponent");
    std::int64_t qm1 = F->q() - 1;
    std::int64_t k = g / qm1;
    Elt c = (k % 2) ? F->neg(1) : 1;  // (-theta)^k
    TateElem x = from_coeffs(F, s, 0, -k, {TPoly::constant(F, s, c)}, kExact);
    x.grade_ = static_cast<int>(g % qm1);
    return x;
}

void TateElem::wrap_grade() {
    int qm1 = F_->q() - 1;
    while (grade_ >= qm1) {
        // lambda^(q-1) = -theta
        grade_ -= qm1;
        vmin_ -= 1;
        if (prec_ < kExact) prec_ -= 1;
        for (auto& t : c_) t = -t;
    }
    while (grade_ < 0) {
        grade_ += qm1;
        vmin_ += 1;
        prec_ = sat_add(prec_, 1);
        for (auto& t : c_) t = -t;
    }
}

void TateElem::normalize() {
    // Drop everything at or beyond prec.
    if (prec_ < kExact) {
        std::int64_t keep = prec_ - vmin_;
        if (keep <= 0) c_.clear();
        else if (static_cast<std::int64_t>(c_.size()) > keep) c_.resize(static_cast<std::size_t>(keep));
    }
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero()) ++lead;
    if (lead == c_.size()) {
        c_.clear();
        vmin_ = prec_;
        return;
    }
    if (lead) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
        vmin_ += static_cast<std::int64_t>(lead);
    }
    while (c_.back().is_zero()) c_.pop_back();
}

TPoly TateElem::coeff(std::int64_t e) const {
    if (e >= prec_) throw InsufficientPrecision("coefficient at exponent " + std::to_string(e) +
                                                " is beyond precision " + std::to_string(prec_));
    if (e < vmin_ || e >= vmax()) return TPoly(F_, s_);
    return c_[static_cast<std::size_t>(e - vmin_)];
}

TateElem TateElem::truncated(std::int64_t prec) const {
    if (prec >= prec_) return *this;
    TateElem x = *this;
    x.prec_ = prec;
    x.normalize();
    return x;
}

TateElem TateElem::with_nvars(int s) const {
    TateElem x = *this;
    x.s_ = s;
    for (auto& t : x.c_) t = t.with_nvars(s);
    return x;
}

TateElem TateElem::embed(const Field* G) const {
    TateElem x = *this;
    x.F_ = G;
    for (auto& t : x.c_) t = t.embed(G);
    return x;
}

TateElem TateElem::times_theta(std::int64_t k) const {
    TateElem x = *this;
    x.vmin_ -= k;
    if (x.prec_ < kExact) x.prec_ -= k;
    if (x.c_.empty()) x.vmin_ = x.prec_;
    return x;
}

TateElem TateElem::scaled(const TPoly& c) const {
    if (c.field() != F_ && !c.is_zero()) throw FieldMismatch("scaling by a polynomial over another field");
    TateElem x = *this;
    for (auto& t : x.c_) t = t * c;
    x.normalize();
    return x;
}

TateElem TateElem::frob_coeffs(int n) const {
    TateElem x = *this;
    for (auto& t : x.c_) t = t.frob(n);
    return x;
}

TateElem TateElem::operator-() const {
    TateElem x = *this;
    for (auto& t : x.c_) t = -t;
    return x;
}

static TateElem add_sub(const TateElem& a, const TateElem& b, bool sub) {
    check_compatible(a, b);
    if (a.grade() != b.grade())
        throw GradeMismatch("adding grades " + std::to_string(a.grade()) + " and " + std::to_string(b.grade()));
    std::int64_t prec = std::min(a.prec(), b.prec());
    std::int64_t lo = std::min(a.vmin(), b.vmin());
    std::int64_t hi = std::min(prec, std::max(a.vmax(), b.vmax()));
    std::vector<TPoly> c;
    if (hi > lo) {
        c.assign(static_cast<std::size_t>(hi - lo), TPoly(a.field(), a.nvars()));
        for (std::int64_t e = std::max(lo, a.vmin()); e < std::min(hi, a.vmax()); ++e)
            c[static_cast<std::size_t>(e - lo)] = a.stored()[static_cast<std::size_t>(e - a.vmin())];
        for (std::int64_t e = std::max(lo, b.vmin()); e < std::min(hi, b.vmax()); ++e) {
            auto& dst = c[static_cast<std::size_t>(e - lo)];
            const auto& src = b.stored()[static_cast<std::size_t>(e - b.vmin())];
            if (sub) dst -= src;
            else dst += src;
        }
    }
    return TateElem::from_coeffs(a.field(), a.nvars(), a.grade(), lo, std::move(c), prec);
}

TateElem operator+(const TateElem& a, const TateElem& b) { return add_sub(a, b, false); }
TateElem operator-(const TateElem& a, const TateElem& b) { return add_sub(a, b, true); }

TateElem operator*(const TateElem& a, const TateElem& b) {
    check_compatible(a, b);
    std::int64_t prec = std::min(sat_add(a.prec(), b.vmin()), sat_add(b.prec(), a.vmin()));
    std::int64_t lo = a.vmin() + b.vmin();
    if (a.is_zero() || b.is_zero()) return TateElem::from_coeffs(a.field(), a.nvars(), a.grade() + b.grade(), prec, {}, prec);
    std::int64_t hi = std::min(prec, a.vmax() + b.vmax() - 1);
    std::vector<TPoly> c;
    if (hi > lo) {
        c.reserve(static_cast<std::size_t>(hi - lo));
        std::vector<TPoly::Term> acc;
        const auto& ac = a.stored();
        const auto& bc = b.stored();
        for (std::int64_t k = 0; k < hi - lo; ++k) {
            acc.clear();
            std::int64_t i0 = std::max<std::int64_t>(0, k - static_cast<std::int64_t>(bc.size()) + 1);
            std::int64_t i1 = std::min<std::int64_t>(k, static_cast<std::int64_t>(ac.size()) - 1);
            for (std::int64_t i = i0; i <= i1; ++i) {
                const auto& x = ac[static_cast<std::size_t>(i)];
                const auto& y = bc[static_cast<std::size_t>(k - i)];
                if (!x.is_zero() && !y.is_zero()) addmul_into(acc, x, y);
            }
            c.push_back(TPoly::from_terms(a.field(), a.nvars(), std::move(acc)));
            acc = {};
        }
    }
    return TateElem::from_coeffs(a.field(), a.nvars(), a.grade() + b.grade(), lo, std::move(c), prec);
}

namespace {

// Power series quotient ignoring grades: num / den with den's leading
// coefficient a nonzero constant.  Result has `terms` coefficients from
// exponent num.vmin - den.vmin.
std::vector<TPoly> series_quotient(const TateElem& num, const TateElem& den, std::int64_t terms) {
    const Field* F = num.field();
    int s = num.nvars();
    Elt d0inv = F->inv(den.stored()[0].constant_term());
    std::vector<TPoly> z;
    z.reserve(static_cast<std::size_t>(std::max<std::int64_t>(terms, 0)));
    const auto& dc = den.stored();
    std::vector<TPoly::Term> acc;
    for (std::int64_t k = 0; k < terms; ++k) {
        std::int64_t e = num.vmin() + k;
        TPoly cur = (e < num.vmax()) ? num.stored()[static_cast<std::size_t>(k)] : TPoly(F, s);
        acc.clear();
        std::int64_t jmax = std::min<std::int64_t>(k, static_cast<std::int64_t>(dc.size()) - 1);
        for (std::int64_t j = 1; j <= jmax; ++j) {
            const auto& dj = dc[static_cast<std::size_t>(j)];
            const auto& zk = z[static_cast<std::size_t>(k - j)];
            if (!dj.is_zero() && !zk.is_zero()) addmul_into(acc, dj, zk);
        }
        if (!acc.empty()) cur -= TPoly::from_terms(F, s, std::move(acc));
        acc = {};
        z.push_back(cur.scaled(d0inv));
    }
    return z;
}

void require_unit(const TateElem& y) {
    if (y.is_zero()) throw NotAUnit("division by an element that is zero to precision");
    const TPoly& lead = y.stored()[0];
    if (!lead.is_constant()) throw NotAUnit("leading coefficient " + lead.to_string() + " involves t");
}

}  // namespace

TateElem div(const TateElem& x, const TateElem& y, std::int64_t prec_cap) {
    check_compatible(x, y);
    require_unit(y);
    const Field* F = x.field();
    int qm1 = F->q() - 1;
    std::int64_t shift = x.vmin() - y.vmin();
    std::int64_t rel = std::min(x.prec() >= kExact ? kExact : x.prec() - x.vmin(),
                                y.prec() >= kExact ? kExact : y.prec() - y.vmin());
    std::int64_t prec = std::min(sat_add(shift, rel), prec_cap);
    if (prec >= kExact) {
        // Exact quotient only when the divisor is a monomial.
        if (y.stored().size() != 1)
            throw InsufficientPrecision("quotient of exact elements needs a target precision");
    }
    int g = x.grade() - y.grade();
    std::int64_t extra = 0;
    if (g < 0) {
        g += qm1;
        extra = 1;  // lambda^(-1) = lambda^(q-2) / (-theta)
    }
    std::int64_t out_prec = prec >= kExact ? kExact : prec + extra;
    std::int64_t terms = 0;
    if (!x.is_zero()) terms = prec >= kExact ? static_cast<std::int64_t>(x.stored().size()) : prec - shift;
    std::vector<TPoly> z = series_quotient(x, y, std::max<std::int64_t>(terms, 0));
    if (extra)
        for (auto& t : z) t = -t;
    return TateElem::from_coeffs(F, x.nvars(), g, shift + extra, std::move(z), out_prec);
}

TateElem inv(const TateElem& x, std::int64_t prec_cap) { return div(TateElem::one(x.field(), x.nvars()), x, prec_cap); }

TateElem tau(const TateElem& x, int n) {
    if (n < 0) throw PreconditionViolated("tau needs a nonnegative power");
    if (n == 0) return x;
    const Field* F = x.field();
    std::int64_t qn = 1;
    for (int i = 0; i < n; ++i) qn *= F->q();
    std::int64_t g = x.grade();
    // tau^n(lambda^g) = lambda^g (-theta)^(g (q^n - 1)/(q - 1))
    std::int64_t k = g * ((qn - 1) / (F->q() - 1));
    std::int64_t prec = x.prec() >= kExact ? kExact : sat_mul(x.prec(), qn) - k;
    if (x.is_zero()) return TateElem::from_coeffs(F, x.nvars(), static_cast<int>(g), prec, {}, prec);
    std::int64_t lo = x.vmin() * qn;
    std::size_t len = static_cast<std::size_t>((x.stored().size() - 1) * qn + 1);
    std::vector<TPoly> c(len, TPoly(F, x.nvars()));
    for (std::size_t i = 0; i < x.stored().size(); ++i) {
        const TPoly& t = x.stored()[i];
        if (!t.is_zero()) c[i * static_cast<std::size_t>(qn)] = (k % 2) ? -t.frob(n) : t.frob(n);
    }
    return TateElem::from_coeffs(F, x.nvars(), static_cast<int>(g), lo - k, std::move(c), prec);
}

TateElem pow(const TateElem& x, unsigned n) {
    TateElem r = TateElem::one(x.field(), x.nvars());
    TateElem b = x;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

TateElem root_of_one_unit(const TateElem& x, int n) {
    const Field* F = x.field();
    if (n <= 0 || n % F->p() == 0) throw RootOrderDivisibleByP("root order " + std::to_string(n) + " in characteristic " +
                                                                std::to_string(F->p()));
    if (x.grade() != 0 || x.is_zero() || x.vmin() != 0 || !x.stored()[0].is_one())
        throw NotOneUnit("root_of_one_unit expects 1 + (terms of positive exponent)");
    if (x.prec() >= kExact) {
        if (x.stored().size() == 1) return x;
        throw InsufficientPrecision("root of an exact element needs a target precision");
    }
    // Newton iteration y <- y - (y^n - x) / (n y^(n-1)), doubling the known part.
    const std::int64_t P = x.prec();
    const int s = x.nvars();
    TateElem y = TateElem::one(F, s).truncated(1);
    std::int64_t known = 1;
    while (known < P) {
        known = std::min(P, 2 * known);
        TateElem yk = TateElem::from_coeffs(F, s, 0, 0, y.stored(), known);
        TateElem f = pow(yk, static_cast<unsigned>(n)) - x.truncated(known);
        TateElem fp = pow(yk, static_cast<unsigned>(n - 1)).scaled(TPoly::constant(F, s, F->from_int(n)));
        y = yk - div(f, fp, known);
    }
    return y;
}

bool agree(const TateElem& x, const TateElem& y, std::int64_t upto) { return first_difference(x, y, upto) >= upto; }

std::int64_t first_difference(const TateElem& x, const TateElem& y, std::int64_t upto) {
    if (x.grade() != y.grade()) return std::min(x.vmin(), y.vmin());
    if (upto > x.prec() || upto > y.prec())
        throw InsufficientPrecision("comparison to " + std::to_string(upto) + " beyond known precision");
    std::int64_t lo = std::min(x.vmin(), y.vmin());
    for (std::int64_t e = lo; e < upto; ++e)
        if (x.coeff(e) != y.coeff(e)) return e;
    return upto;
}

Recognized recognize_polynomial(const TateElem& x, std::int64_t margin) {
    if (x.grade() != 0) throw GradeMismatch("recognize_polynomial expects grade 0");
    if (x.prec() < margin)
        throw InsufficientPrecision("precision " + std::to_string(x.prec()) + " below margin " + std::to_string(margin));
    Recognized r;
    r.checked_to = x.prec();
    for (std::int64_t e = std::max<std::int64_t>(1, x.vmin()); e < x.vmax(); ++e) {
        if (!x.coeff(e).is_zero()) {
            r.ok = false;
            r.bad_exponent = e;
            return r;
        }
    }
    r.ok = true;
    std::vector<TPoly> c;
    if (!x.is_zero() && x.vmin() <= 0) {
        std::int64_t deg = -x.vmin();
        c.assign(static_cast<std::size_t>(deg + 1), TPoly(x.field(), x.nvars()));
        for (std::int64_t k = 0; k <= deg; ++k) c[static_cast<std::size_t>(k)] = x.coeff(-k);
    }
    r.poly = APoly(x.field(), x.nvars(), std::move(c));
    return r;
}

std::string TateElem::to_json() const {
    nlohmann::ordered_json j;
    j["q"] = F_->q();
    j["m"] = F_->m();
    if (F_->m() > 1) j["modulus"] = F_->modulus();
    j["s"] = s_;
    j["grade"] = grade_;
    j["vmin"] = vmin_;
    j["prec"] = prec_;
    auto terms = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        nlohmann::ordered_json t;
        t["e"] = vmin_ + static_cast<std::int64_t>(i);
        t["coeff"] = c_[i].to_string();
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j.dump();
}

TateElem TateElem::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& ex) {
        throw ParseError(std::string("bad TateElem JSON: ") + ex.what());
    }
    try {
        const Field* F = Field::get(j.at("q").get<int>(), j.at("m").get<int>());
        if (j.contains("modulus") && j["modulus"].get<std::vector<Elt>>() != F->modulus())
            throw FieldMismatch("serialized modulus differs from the canonical one");
        int s = j.at("s").get<int>();
        int grade = j.at("grade").get<int>();
        std::int64_t vmin = j.at("vmin").get<std::int64_t>();
        std::int64_t prec = j.at("prec").get<std::int64_t>();
        std::vector<std::pair<std::int64_t, TPoly>> items;
        for (auto& t : j.at("terms")) {
            APoly a = parse_apoly(t.at("coeff").get<std::string>(), F, s);
            if (a.deg() > 0) throw ParseError("coefficient of a Tate element may not contain X");
            items.emplace_back(t.at("e").get<std::int64_t>(), a.coeff(0));
        }
        std::vector<TPoly> c;
        if (!items.empty()) {
            std::int64_t hi = items.back().first;
            for (auto& it : items)
                if (it.first < vmin) throw ParseError("term below vmin");
            for (auto& it : items) hi = std::max(hi, it.first);
            c.assign(static_cast<std::size_t>(hi - vmin + 1), TPoly(F, s));
            for (auto& it : items) c[static_cast<std::size_t>(it.first - vmin)] = it.second;
        }
        return from_coeffs(F, s, grade, vmin, std::move(c), prec);
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("bad TateElem JSON: ") + ex.what());
    }
}

std::string TateElem::to_string(int max_terms) const {
    std::ostringstream os;
    if (grade_) os << "lambda^" << grade_ << "*(";
    int shown = 0;
    for (std::size_t i = 0; i < c_.size() && shown < max_terms; ++i) {
        if (c_[i].is_zero()) continue;
        if (shown) os << " + ";
        std::int64_t e = vmin_ + static_cast<std::int64_t>(i);
        os << "(" << c_[i].to_string() << ")";
        if (e != 0) os << "*X^" << -e;
        ++shown;
    }
    if (!shown) os << "0";
    if (prec_ < kExact) os << " + O(X^" << -prec_ << ")";
    if (grade_) os << ")";
    return os.str();
}

}  // namespace drin
