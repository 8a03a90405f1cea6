#pragma once

#include <random>

#include "drin/apoly.hpp"
#include "drin/tpoly.hpp"

namespace testutil {

inline drin::TPoly random_tpoly(std::mt19937_64& rng, const drin::Field* F, int s, int maxdeg, int nterms) {
    std::vector<drin::TPoly::Term> raw;
    for (int k = 0; k < nterms; ++k) {
        drin::Mono m;
        for (int i = 0; i < s; ++i) m.set(i, static_cast<int>(rng() % (maxdeg + 1)));
        raw.push_back({m, static_cast<drin::Elt>(rng() % F->order())});
    }
    return drin::TPoly::from_terms(F, s, std::move(raw));
}

inline drin::APoly random_apoly(std::mt19937_64& rng, const drin::Field* F, int s, int degtheta, int maxdeg) {
    std::vector<drin::TPoly> c;
    for (int i = 0; i <= degtheta; ++i) c.push_back(random_tpoly(rng, F, s, maxdeg, 2));
    return drin::APoly(F, s, std::move(c));
}

}  // namespace testutil
