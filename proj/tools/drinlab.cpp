// drinlab: batch front-end over the drin library.  Every run prints one JSON
// document; results are cached by the SHA-256 of the normalized request.
#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "cache.hpp"
#include "drin/acceptance.hpp"
#include "drin/carlitz.hpp"
#include "drin/characters.hpp"
#include "drin/drinfeld.hpp"
#include "drin/errors.hpp"
#include "drin/loga.hpp"
#include "drin/lseries.hpp"
#include "drin/nuclear.hpp"

using nlohmann::ordered_json;
using namespace drin;

namespace {

constexpr const char* kVersion = "0.3.0";

struct Params {
    int q = 3;
    int s = -1;
    std::string alpha;
    int n = 1;
    long long prec = 12;
    std::string prime;
    unsigned long long N = 0;
    std::string chi = "1";
    int r = 1;
    int dmax = -1;
    int zprec = 4;
    int depth = 0;
    std::string route = "exact";
    std::vector<int> only;
    std::string out;
    std::string cache;
    bool no_cache = false;
    int threads = 1;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ordered_json series_json(const TateElem& x) { return ordered_json::parse(x.to_json()); }

UPoly parse_prime(const std::string& text, int q) {
    if (text.empty()) throw UsageError("--prime is required");
    APoly a = parse_apoly(text, Field::get(q), 0);
    return a.to_upoly();
}

ordered_json character_choices(const DirichletCharacter& chi) {
    ordered_json roots = ordered_json::array();
    for (const auto& f : chi.factors)
        roots.push_back({{"prime", f.P.to_string()}, {"N", f.N}, {"zeta", chi.ka->elt_to_string(f.zeta)}});
    return {{"k_a", chi.ka->describe()}, {"root_rule", "least root by element index"}, {"roots", roots}};
}

std::string default_alpha(int s) {
    if (s <= 0) return "1";
    std::string a;
    for (int i = 1; i <= s; ++i) a += (i > 1 ? "*" : "") + std::string("(t") + std::to_string(i) + "-X)";
    return a;
}

// The normalized request: only the parameters the subcommand reads.
ordered_json canonical_request(const std::string& cmd, const Params& p) {
    ordered_json j = {{"command", cmd}, {"q", p.q}};
    if (cmd == "zeta") {
        j["n"] = p.n;
        j["prec"] = p.prec;
    } else if (cmd == "lvalue") {
        j["alpha"] = p.alpha.empty() ? default_alpha(p.s) : p.alpha;
        j["s"] = p.s;
        j["n"] = p.n;
        j["prec"] = p.prec;
    } else if (cmd == "bpoly") {
        j["alpha"] = p.alpha.empty() ? default_alpha(p.s) : p.alpha;
        j["s"] = p.s;
        j["prec"] = p.prec;
    } else if (cmd == "loga") {
        j["r"] = p.r;
        j["dmax"] = p.dmax;
    } else if (cmd == "bc") {
        j["chi"] = p.chi;
        j["n"] = p.n;
        j["prec"] = p.prec;
    } else if (cmd == "gauss") {
        j["chi"] = p.chi;
        j["prec"] = p.prec;
    } else if (cmd == "hr") {
        j["prime"] = p.prime;
        j["N"] = p.N;
        j["chi"] = p.chi;
        j["route"] = p.route;
    } else if (cmd == "localfactor") {
        j["alpha"] = p.alpha.empty() ? "1" : p.alpha;
        j["s"] = p.s;
        j["prime"] = p.prime;
    } else if (cmd == "trace") {
        j["alpha"] = p.alpha.empty() ? "1" : p.alpha;
        j["s"] = p.s;
        j["zprec"] = p.zprec;
        j["depth"] = p.depth;
    }
    return j;
}

ordered_json run_command(const std::string& cmd, const Params& p, const ordered_json& req) {
    ordered_json out = {{"tool", "drinlab"}, {"version", kVersion}, {"command", cmd}, {"q", p.q}};
    if (req.contains("prec")) out["prec"] = p.prec;
    out["request"] = req;
    ordered_json res, trunc = ordered_json::object(), choices = ordered_json::object();

    if (cmd == "zeta") {
        auto C = DrinfeldModule::parse("1", p.q, 0);
        auto z = l_value(C, p.n, p.prec, p.threads);
        res["series"] = series_json(z);
        if (p.n == 1) {
            auto rec = recognize_polynomial(exp_c_apply(z, p.prec), 0);
            res["exp_c"] = {{"polynomial", rec.ok ? rec.poly.to_string() : ""},
                            {"recognized", rec.ok},
                            {"checked_to", rec.checked_to}};
        }
        trunc = {{"theta_exponent_below", p.prec}, {"max_degree_summed", (p.prec + p.n - 1) / p.n - 1}};
    } else if (cmd == "lvalue") {
        auto phi = DrinfeldModule::parse(req["alpha"].get<std::string>(), p.q, p.s);
        auto L = l_value(phi, p.n, p.prec, p.threads);
        res["alpha"] = phi.alpha.to_string();
        res["series"] = series_json(L);
        trunc = {{"theta_exponent_below", p.prec}, {"max_degree_summed", (p.prec + p.n - 1) / p.n - 1}};
    } else if (cmd == "bpoly") {
        auto phi = DrinfeldModule::parse(req["alpha"].get<std::string>(), p.q, p.s);
        auto B = b_poly(phi, p.prec, p.threads);
        res = {{"alpha", phi.alpha.to_string()},
               {"polynomial", B.poly.to_string()},
               {"closed_form", B.closed_form},
               {"monic_of_degree_u", B.monic_of_degree_u},
               {"u", phi.u}};
        if (B.closed_form) res["note"] = "B = 1 / polynomial";
        trunc = {{"tail_zero_below", B.checked_to}};
    } else if (cmd == "loga") {
        auto la = log_algebraic_poly(Field::get(p.q), p.r, p.dmax);
        ordered_json terms = ordered_json::array();
        for (const auto& [m, c] : la.S.serialize()) terms.push_back({{"monomial", m}, {"coefficient", c}});
        res = {{"r", p.r},
               {"terms", terms},
               {"max_z", la.max_z},
               {"specialization", specialize(la.S, false).to_string()},
               {"specialization_one_variable", specialize(la.S, true).to_string()}};
        trunc = {{"dmax", la.dmax}, {"trailing_blocks_zero", la.trailing_zero}};
    } else if (cmd == "bc") {
        auto chi = DirichletCharacter::parse(p.chi, p.q);
        auto bc = bc_general(chi, p.n, p.prec, true, true, p.threads);
        res = {{"chi", chi.to_string()}, {"i", p.n}, {"zero_by_residue", bc.zero_by_residue}};
        if (bc.zero_by_residue) {
            res["num"] = "0";
            res["den"] = "1";
        } else {
            res["num"] = bc.exact.num.to_string();
            res["den"] = bc.exact.den.to_string();
            res["series"] = series_json(bc.series);
            trunc = {{"pade_bound", bc.exact.bound}, {"verified_below", bc.exact.verified_to}};
        }
        choices = character_choices(chi);
    } else if (cmd == "gauss") {
        auto chi = DirichletCharacter::parse(p.chi, p.q);
        res = {{"chi", chi.to_string()}, {"series", series_json(gauss_sum(chi, p.prec))}};
        trunc = {{"theta_exponent_below", p.prec}};
        choices = character_choices(chi);
    } else if (cmd == "hr") {
        UPoly P = parse_prime(p.prime, p.q);
        auto chi = DirichletCharacter::parse(p.chi, p.q);
        if (p.route != "exact" && p.route != "series") throw UsageError("--route must be exact or series");
        auto v = herbrand_ribet(P, p.N, chi, p.route == "exact" ? BCRoute::Exact : BCRoute::Series, p.threads);
        res = {{"prime", P.to_string()},
               {"N", p.N},
               {"bc_index", v.bc_index},
               {"num", v.num.to_string()},
               {"den", v.den.to_string()},
               {"integral", v.integral},
               {"residue", v.residue.to_string()},
               {"divisible", v.divisible},
               {"verdict", v.divisible ? "divisible" : "non-divisible"}};
        choices = character_choices(chi);
    } else if (cmd == "localfactor") {
        auto phi = DrinfeldModule::parse(req["alpha"].get<std::string>(), p.q, p.s);
        UPoly P = parse_prime(p.prime, p.q);
        auto lf = local_factor(phi, P);
        res = {{"alpha", phi.alpha.to_string()},
               {"prime", P.to_string()},
               {"charpoly", lf.charpoly.to_string()},
               {"expected", lf.expected.to_string()},
               {"matches", lf.matches}};
    } else if (cmd == "trace") {
        auto phi = DrinfeldModule::parse(req["alpha"].get<std::string>(), p.q, p.s);
        auto rep = trace_formula_check(phi, p.zprec, p.depth, p.threads);
        res = {{"alpha", phi.alpha.to_string()},
               {"primes_used", rep.primes_used},
               {"primes_side", rep.primes_side.to_string()},
               {"infinity_side", rep.infinity_side.to_string()},
               {"equal", rep.equal}};
        trunc = {{"zprec", rep.nz}, {"depth", rep.depth}, {"nucleus_floor", nucleus_floor(phi, rep.nz)}};
    }
    out["result"] = res;
    out["truncation"] = trunc;
    out["choices"] = choices;
    return out;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
    if (!f) throw std::runtime_error("write failed for " + path);
}

std::string error_json(const std::string& kind, const std::string& msg) {
    ordered_json j = {{"tool", "drinlab"}, {"version", kVersion}, {"error", {{"kind", kind}, {"message", msg}}}};
    return j.dump(2) + "\n";
}

int run_verify(const Params& p) {
    ordered_json crit = ordered_json::array();
    bool all = true;
    run_acceptance(p.threads, [&](const CriterionResult& r) {
        std::cerr << format_result(r) << "\n";
        all = all && r.pass;
        crit.push_back({{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"seconds", r.seconds},
                        {"limit_seconds", r.limit},
                        {"detail", r.detail}});
    }, p.only);
    ordered_json j = {{"tool", "drinlab"}, {"version", kVersion}, {"command", "verify"}, {"all_pass", all},
                      {"criteria", crit}};
    emit(j.dump(2) + "\n", p.out);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"drinlab: special values and class modules for rank-one Drinfeld modules"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    Params p;
    app.add_option("--q", p.q, "field size")->check(CLI::Range(2, 64));
    app.add_option("--s", p.s, "number of t-variables");
    app.add_option("--alpha", p.alpha, "parameter alpha, e.g. \"(t1-X)*(t2-X)\"");
    app.add_option("--n", p.n, "L-value argument, or BC index for bc");
    app.add_option("--prec", p.prec, "theta-adic precision (tail length for bpoly)")->check(CLI::Range(1LL, 100000LL));
    app.add_option("--prime", p.prime, "monic prime of F_q[X]");
    app.add_option("--N", p.N, "exponent N for hr");
    app.add_option("--chi", p.chi, "character \"(P)^N*(P2)^N2\", \"1\" for trivial");
    app.add_option("--r", p.r, "number of X-variables for loga")->check(CLI::Range(0, 8));
    app.add_option("--dmax", p.dmax, "tau^d(Z) cutoff for loga (-1 picks it)");
    app.add_option("--zprec", p.zprec, "Z-adic precision Nz for trace")->check(CLI::Range(1, 12));
    app.add_option("--depth", p.depth, "quotient depth for trace (0 picks the nucleus floor)");
    app.add_option("--route", p.route, "hr route: exact or series");
    app.add_option("--only", p.only, "verify: run these criteria only");
    app.add_option("--out", p.out, "write JSON here instead of stdout");
    app.add_option("--cache", p.cache, "cache directory (default $DRINLAB_CACHE)");
    app.add_flag("--no-cache", p.no_cache, "bypass the cache");
    app.add_option("--threads", p.threads, "worker threads")->check(CLI::Range(1, 256));
    for (const char* c : {"zeta", "lvalue", "bpoly", "loga", "bc", "gauss", "hr", "localfactor", "trace", "verify"})
        app.add_subcommand(c)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    try {
        if (cmd == "verify") return run_verify(p);
        if (cmd == "hr" && p.N == 0) throw UsageError("--N is required for hr");
        if ((cmd == "hr" || cmd == "localfactor") && p.prime.empty()) throw UsageError("--prime is required");
        const std::string req = canonical_request(cmd, p).dump();

        std::optional<drinlab::ResultCache> cache;
        if (!p.no_cache) {
            std::string dir = p.cache;
            if (dir.empty())
                if (const char* env = std::getenv("DRINLAB_CACHE")) dir = env;
            if (!dir.empty()) cache.emplace(dir);
        }
        if (cache) {
            if (auto hit = cache->load(req)) {
                emit(*hit, p.out);
                return 0;
            }
        }
        std::string text = run_command(cmd, p, ordered_json::parse(req)).dump(2) + "\n";
        if (cache) cache->store(req, text);
        emit(text, p.out);
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "drinlab: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cout << error_json(e.kind(), e.what());
        return 2;
    } catch (const Error& e) {
        std::cout << error_json(e.kind(), e.what());
        return 1;
    } catch (const std::exception& e) {
        std::cout << error_json("IOError", e.what());
        return 1;
    }
}
