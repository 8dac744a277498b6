#pragma once

#include "weylforge/forms.hpp"
#include "weylforge/series.hpp"
#include "weylforge/weyl.hpp"

#include <random>

namespace wft {

using namespace wf;

inline std::mt19937& rng() {
    static std::mt19937 g(20240917u);
    return g;
}

inline int rint(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Rational rrat(int lim = 5) {
    int num = rint(-lim, lim), den = rint(1, 3);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rrat_nz(int lim = 5) {
    Rational q;
    do q = rrat(lim);
    while (is_zero(q));
    return q;
}

// Random series with h in [hlo, hhi], u in [0, umax].
inline HUSeries rseries(int hlo, int hhi, int umax, int ht, int ut = HUSeries::kNoTrunc, int nterms = 4) {
    HUSeries s(ht, ut);
    for (int i = 0; i < nterms; ++i) s.add_term(rint(hlo, hhi), rint(0, umax), rrat());
    return s;
}

inline WMono rmono(int n, int maxdeg, int cmin, int cmax) {
    WMono m;
    int deg = rint(0, maxdeg);
    for (int t = 0; t < deg; ++t) {
        int v = rint(0, 2 * n - 1);
        if (v < n)
            m.a(v) += 1;
        else
            m.b(v - n) += 1;
    }
    m.c = rint(cmin, cmax);
    return m;
}

inline WeylElement rweyl(int n, int wtrunc, int nterms = 5, int maxdeg = 3, int cmin = 0, int cmax = 1) {
    WeylElement a(n, wtrunc, cmin);
    for (int i = 0; i < nterms; ++i) a.add(rmono(n, maxdeg, cmin, cmax), rrat());
    return a;
}

inline QPoly rpoly(int nv, int maxdeg, int nterms) {
    QPoly p(nv);
    for (int i = 0; i < nterms; ++i) {
        Exps e(nv, 0);
        int d = rint(0, maxdeg);
        for (int t = 0; t < d; ++t) e[rint(0, nv - 1)] += 1;
        p.add(e, rrat());
    }
    return p;
}

inline FormalForm rform(int n, int maxdeg, int nterms, int form_deg = -1) {
    FormalForm f(n);
    for (int i = 0; i < nterms; ++i) {
        Exps e(2 * n, 0);
        int d = rint(0, maxdeg);
        for (int t = 0; t < d; ++t) e[rint(0, 2 * n - 1)] += 1;
        std::uint32_t mask = 0;
        if (form_deg < 0) {
            mask = static_cast<std::uint32_t>(rint(0, (1 << (2 * n)) - 1));
        } else {
            while (popcount(mask) < form_deg) mask |= 1u << rint(0, 2 * n - 1);
        }
        f.add(e, mask, HUSeries::constant(rrat()));
    }
    return f;
}

}  // namespace wft
