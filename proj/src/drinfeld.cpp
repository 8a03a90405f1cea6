#include "drin/drinfeld.hpp"

#include "drin/carlitz.hpp"
#include "drin/errors.hpp"

namespace drin {

DrinfeldModule DrinfeldModule::make(const APoly& alpha) {
    if (alpha.is_zero()) throw ZeroParameter("the parameter alpha must be nonzero");
    DrinfeldModule m;
    m.F = alpha.field();
    m.s = alpha.nvars();
    m.alpha = alpha;
    m.r = alpha.deg();
    int q = m.F->q();
    m.u = m.r >= q ? (m.r - q) / (q - 1) : 0;
    const TPoly& lc = alpha.lc();
    m.monic_negated = lc.is_constant() && lc.constant_term() == m.F->neg(1);
    return m;
}

DrinfeldModule DrinfeldModule::parse(const std::string& alpha_text, int q, int s) {
    const Field* F = Field::get(q);
    if (s < 0) s = max_t_index(alpha_text);
    return make(parse_apoly(alpha_text, F, s));
}

std::vector<APoly> phi_coeffs(const DrinfeldModule& phi, const UPoly& a) {
    std::vector<APoly> out;
    if (a.is_zero()) return out;
    auto ca = carlitz_coeffs(a);
    APoly num = APoly::constant(TPoly::constant(phi.F, phi.s, 1));
    for (std::size_t i = 0; i < ca.size(); ++i) {
        out.push_back(APoly::from_upoly(ca[i], phi.s) * num);
        num = num * phi.alpha.tau(static_cast<int>(i));
    }
    return out;
}

std::vector<APoly> compose_tau(const std::vector<APoly>& a, const std::vector<APoly>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<APoly> out(a.size() + b.size() - 1, APoly(a[0].field(), a[0].nvars()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j].tau(static_cast<int>(i));
    return out;
}

namespace {

APoly alpha_over(const DrinfeldModule& phi, const TateElem& x) {
    if (x.nvars() != phi.s) throw FieldMismatch("argument has a different number of t variables");
    if (x.field() == phi.F) return phi.alpha;
    return phi.alpha.embed(x.field());
}

}  // namespace

TateElem phi_apply(const DrinfeldModule& phi, const UPoly& a, const TateElem& x) {
    APoly al = alpha_over(phi, x);
    DrinfeldModule ph = phi;
    ph.alpha = al;
    ph.F = x.field();
    UPoly ae = x.field() == phi.F ? a : embed(a, x.field());
    auto c = phi_coeffs(ph, ae);
    TateElem acc = TateElem::from_coeffs(x.field(), x.nvars(), x.grade(), x.prec(), {}, x.prec());
    for (std::size_t i = 0; i < c.size(); ++i) acc = acc + tau(x, static_cast<int>(i)) * TateElem::from_apoly(c[i]);
    return acc;
}

TateElem exp_phi_apply(const DrinfeldModule& phi, const TateElem& x, std::int64_t prec) {
    return tau_alpha_series(x, alpha_over(phi, x), TauSeries::Exp, prec);
}

TateElem log_phi_apply(const DrinfeldModule& phi, const TateElem& x, std::int64_t prec) {
    if (!x.is_zero() && x.norm_num() >= phi.q() - phi.r)
        throw OutsideLogDomain("log_phi needs ||x|| < q^((q-r)/(q-1))");
    return tau_alpha_series(x, alpha_over(phi, x), TauSeries::Log, prec);
}

bool is_uniformizable(const DrinfeldModule& phi) {
    const TPoly& lc = phi.alpha.lc();
    return lc.is_constant() && !lc.is_zero();
}

OmegaInfo omega_alpha(const DrinfeldModule& phi, std::int64_t prec, const Field* coeff_field) {
    if (!is_uniformizable(phi)) throw NotUniformizable("alpha is not a unit of the Tate algebra");
    const Field* G = coeff_field ? coeff_field : phi.F;
    const int q = phi.q();
    const int s = phi.s;
    const int r = phi.r;
    Elt rho = phi.alpha.lc().constant_term();
    Elt target = (r % 2) ? phi.F->neg(rho) : rho;  // (-1)^r rho, in F_q
    Elt rt = 0;
    if (target == 1) {
        rt = 1;
    } else {
        for (Elt z = 1; z < G->order(); ++z)
            if (G->pow(z, q - 1) == target) {
                rt = z;
                break;
            }
        if (!rt)
            throw RootNotInField("no (q-1)-th root of " + phi.F->elt_to_string(target) + " in " + G->describe());
    }
    APoly al = G == phi.F ? phi.alpha : phi.alpha.embed(G);
    // beta = alpha / (rho theta^r), a 1-unit in theta^-1.
    TateElem beta = TateElem::from_apoly(al).times_theta(-r).scaled(TPoly::constant(G, s, G->inv(rho)));
    const std::int64_t P = prec + r + 2;
    std::int64_t dev = (beta - TateElem::one(G, s)).vmin();  // >= 1, or exact zero
    TateElem prod = TateElem::one(G, s).truncated(P);
    if (dev < kExact) {
        std::int64_t qi = 1;
        for (int i = 0; qi * dev < P; ++i, qi *= q) prod = prod * tau(beta.truncated((P + qi - 1) / qi), i).truncated(P);
    }
    TateElem w = inv(prod, P) * TateElem::lambda_power(G, s, r);
    w = w.scaled(TPoly::constant(G, s, rt)).truncated(prec);
    return {w, rt};
}

ExpPreimage exp_preimage_alpha_t(const DrinfeldModule& phi, const TateElem& y, int nmax) {
    if (phi.s != 1 || phi.alpha != APoly::constant(TPoly::var(phi.F, 1, 1)))
        throw PreconditionViolated("exp_preimage_alpha_t expects alpha = t1");
    if (y.nvars() != 0 || y.grade() != 0) throw PreconditionViolated("y must be an element of K_infinity");
    if (y.is_exact()) throw InsufficientPrecision("y must carry a finite precision");
    ExpPreimage out;
    out.x.push_back(y);
    const Field* F = y.field();
    for (int n = 1; n <= nmax; ++n) {
        TateElem acc = TateElem::zero(F, 0);
        for (int i = 1; i <= n; ++i) {
            TateElem t = tau(out.x[static_cast<std::size_t>(n - i)], i);
            const UPoly& D = carlitz_D(F, i);
            acc = acc + div(t, TateElem::from_upoly(D, 0));
        }
        TateElem xn = -acc;
        if (!y.is_zero() && xn.is_zero())
            throw InsufficientPrecision("x_" + std::to_string(n) + " is not determined at this precision");
        out.x.push_back(xn);
    }
    for (int n = 1; n <= nmax; ++n)
        if (!y.is_zero() && out.x[static_cast<std::size_t>(n)].vmin() <= out.x[static_cast<std::size_t>(n - 1)].vmin())
            out.norms_decay = false;
    return out;
}

}  // namespace drin
