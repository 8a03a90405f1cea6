#include "drin/carlitz.hpp"

#include <deque>
#include <map>
#include <mutex>

#include "drin/errors.hpp"

namespace drin {

namespace {

struct Tables {
    std::deque<UPoly> D, l;
};

std::mutex tables_mu;
std::map<const Field*, Tables> tables;

UPoly theta_pow(const Field* F, std::int64_t k) { return UPoly::monomial(F, static_cast<int>(k)); }

std::int64_t ipow(std::int64_t q, int i) {
    std::int64_t r = 1;
    while (i-- > 0) {
        if (r > (std::int64_t{1} << 50) / q) throw PreconditionViolated("q^i overflows the supported range");
        r *= q;
    }
    return r;
}

}  // namespace

const UPoly& carlitz_D(const Field* F, int i) {
    std::lock_guard<std::mutex> lock(tables_mu);
    auto& T = tables[F];
    if (T.D.empty()) T.D.push_back(UPoly::constant(F, 1));
    while (static_cast<int>(T.D.size()) <= i) {
        int k = static_cast<int>(T.D.size());
        UPoly f = theta_pow(F, ipow(F->q(), k)) - UPoly::theta(F);
        T.D.push_back(f * pow(T.D.back(), F->q()));
    }
    return T.D[static_cast<std::size_t>(i)];
}

const UPoly& carlitz_l(const Field* F, int i) {
    std::lock_guard<std::mutex> lock(tables_mu);
    auto& T = tables[F];
    if (T.l.empty()) T.l.push_back(UPoly::constant(F, 1));
    while (static_cast<int>(T.l.size()) <= i) {
        int k = static_cast<int>(T.l.size());
        UPoly f = UPoly::theta(F) - theta_pow(F, ipow(F->q(), k));
        T.l.push_back(f * T.l.back());
    }
    return T.l[static_cast<std::size_t>(i)];
}

UPoly carlitz_factorial(const Field* F, std::uint64_t N) {
    UPoly r = UPoly::constant(F, 1);
    for (int i = 0; N; ++i, N /= static_cast<std::uint64_t>(F->q())) {
        auto digit = static_cast<long long>(N % static_cast<std::uint64_t>(F->q()));
        if (digit) r = r * pow(carlitz_D(F, i), digit);
    }
    return r;
}

std::vector<UPoly> carlitz_coeffs(const UPoly& a) {
    const Field* F = a.F;
    std::vector<UPoly> out{a};
    for (int i = 1; i <= a.deg(); ++i) {
        UPoly den = theta_pow(F, ipow(F->q(), i)) - UPoly::theta(F);
        out.push_back((tau(out.back()) - out.back()) / den);
    }
    return out;
}

TateElem pi_tilde(const Field* F, int s, std::int64_t prec) {
    const int q = F->q();
    const std::int64_t P = prec + 2;  // relative precision of the 1-unit part (q = 2 wraps lambda into theta)
    std::vector<TPoly> c(static_cast<std::size_t>(q), TPoly(F, s));
    c[0] = TPoly::constant(F, s, 1);
    c[static_cast<std::size_t>(q - 1)] = TPoly::constant(F, s, F->neg(1));
    TateElem u = root_of_one_unit(TateElem::from_coeffs(F, s, 0, 0, std::move(c), P), q - 1);
    for (int i = 1;; ++i) {
        std::int64_t qi = ipow(q, i);
        if (qi * (q - 1) >= P) break;
        std::int64_t qi1 = qi * q;
        TateElem num = TateElem::from_upoly(theta_pow(F, qi1) - theta_pow(F, qi), s);
        TateElem den = TateElem::from_upoly(theta_pow(F, qi1) - UPoly::theta(F), s);
        u = u * div(num, den, P);
    }
    return (TateElem::lambda_power(F, s, 1) * u.times_theta(1)).truncated(prec);
}

TateElem tau_alpha_series(const TateElem& x, const APoly& alpha, TauSeries kind, std::int64_t prec) {
    const Field* F = x.field();
    const int s = x.nvars();
    if (alpha.field() != F || alpha.nvars() != s) throw FieldMismatch("parameter and argument live in different rings");
    if (alpha.is_zero()) throw ZeroParameter("alpha must be nonzero");
    const std::int64_t q = F->q(), g = x.grade(), r = alpha.deg();
    const std::int64_t P = std::min(prec, x.prec());
    TateElem acc = TateElem::from_coeffs(F, s, static_cast<int>(g), P, {}, P);
    if (x.is_zero()) return acc;
    auto bound = [&](int i, std::int64_t qi) {
        std::int64_t deg_num = r * ((qi - 1) / (q - 1));
        std::int64_t deg_den = kind == TauSeries::Exp ? i * qi : q * ((qi - 1) / (q - 1));
        return qi * x.vmin() - g * ((qi - 1) / (q - 1)) - deg_num + deg_den;
    };
    APoly num = APoly::constant(TPoly::constant(F, s, 1));
    for (int i = 0;; ++i) {
        std::int64_t qi = ipow(q, i);
        std::int64_t lb = bound(i, qi);
        if (lb >= P) {
            if (bound(i + 1, qi * q) >= lb) break;
        } else {
            UPoly den = kind == TauSeries::Exp ? carlitz_D(F, i) : carlitz_l(F, i);
            std::int64_t delta = den.deg() - num.deg();
            std::int64_t k = g * ((qi - 1) / (q - 1));
            std::int64_t lim = P - delta + k;
            std::int64_t need = lim >= 0 ? (lim + qi - 1) / qi : -((-lim) / qi);
            TateElem term = tau(x.truncated(need), i) * TateElem::from_apoly(num);
            term = div(term, TateElem::from_upoly(den, s), P);
            acc = acc + term.truncated(P);
        }
        num = num * alpha.tau(i);
    }
    return acc;
}

TateElem exp_c_apply(const TateElem& x, std::int64_t prec) {
    return tau_alpha_series(x, APoly::constant(TPoly::constant(x.field(), x.nvars(), 1)), TauSeries::Exp, prec);
}

TateElem log_c_apply(const TateElem& x, std::int64_t prec) {
    if (!x.is_zero() && x.norm_num() >= x.q())
        throw OutsideLogDomain("log_C needs ||x|| < q^(q/(q-1))");
    return tau_alpha_series(x, APoly::constant(TPoly::constant(x.field(), x.nvars(), 1)), TauSeries::Log, prec);
}

FormalExp carlitz_exp_formal(const Field* F, int dmax) {
    if (dmax < 1) throw PreconditionViolated("dmax must be at least 1");
    FormalExp out;
    out.exp.assign(static_cast<std::size_t>(dmax + 1), RatFunc(F));
    for (int i = 0;; ++i) {
        std::int64_t qi = ipow(F->q(), i);
        if (qi > dmax) break;
        out.exp[static_cast<std::size_t>(qi)] = RatFunc(UPoly::constant(F, 1), carlitz_D(F, i));
    }
    // X / exp_C(X) = 1 / E, where E = exp_C(X) / X has E_(q^i - 1) = 1 / D_i.
    std::vector<std::pair<int, RatFunc>> E;
    for (int i = 1;; ++i) {
        std::int64_t qi = ipow(F->q(), i);
        if (qi - 1 > dmax) break;
        E.emplace_back(static_cast<int>(qi - 1), RatFunc(UPoly::constant(F, 1), carlitz_D(F, i)));
    }
    out.recip.assign(static_cast<std::size_t>(dmax + 1), RatFunc(F));
    out.recip[0] = RatFunc(UPoly::constant(F, 1));
    for (int n = 1; n <= dmax; ++n) {
        RatFunc acc(F);
        for (auto& [k, e] : E)
            if (k <= n) acc = acc + e * out.recip[static_cast<std::size_t>(n - k)];
        out.recip[static_cast<std::size_t>(n)] = -acc;
    }
    return out;
}

RatFunc bc_classical(const Field* F, int n) {
    if (n < 0) throw PreconditionViolated("BC index must be nonnegative");
    if (n == 0) return RatFunc(UPoly::constant(F, 1));
    FormalExp fe = carlitz_exp_formal(F, n);
    return fe.recip[static_cast<std::size_t>(n)] * RatFunc(carlitz_factorial(F, static_cast<std::uint64_t>(n)));
}

}  // namespace drin
