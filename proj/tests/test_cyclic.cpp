#include "doctest.h"
#include "support.hpp"

#include "weylforge/cyclic.hpp"
#include "weylforge/errors.hpp"

using namespace wft;

namespace {

HUSeries one() { return HUSeries::constant(1); }

// Random normalized chain with words of the given lengths and u-exponents in [0, umax].
ChainTensor rchain(const FinAlgebra& A, int lmin, int lmax, int nterms, int umax = 0) {
    ChainTensor c;
    for (int t = 0; t < nterms; ++t) {
        int l = rint(lmin, lmax);
        ChainTensor::Word w{rint(0, A.dim() - 1)};
        for (int s = 0; s < l; ++s) {
            int k;
            do k = rint(0, A.dim() - 1);
            while (k == A.pivot());
            w.push_back(k);
        }
        c.add(w, HUSeries::monomial(rrat_nz(), 0, rint(0, umax)));
    }
    return c;
}

// Same, but bar slots may hold any basis index (including the unit direction).
ChainTensor rraw(const FinAlgebra& A, int lmin, int lmax, int nterms) {
    ChainTensor c;
    for (int t = 0; t < nterms; ++t) {
        int l = rint(lmin, lmax);
        ChainTensor::Word w;
        for (int s = 0; s <= l; ++s) w.push_back(rint(0, A.dim() - 1));
        c.add(w, HUSeries::constant(rrat_nz()));
    }
    return c;
}

std::vector<FinAlgebra> algebras() { return {FinAlgebra::matrices(2), FinAlgebra::truncated_poly(3)}; }

}  // namespace

TEST_CASE("algebra construction checks") {
    auto gl2 = FinAlgebra::matrices(2);
    CHECK(gl2.dim() == 4);
    CHECK(gl2.pivot() == 0);
    // E_00 in A-bar is -E_11.
    CHECK(gl2.reduce(0) == RVec{Rational(0), Rational(0), Rational(-1)});

    std::vector<std::vector<RVec>> m(2, std::vector<RVec>(2, RVec(2, Rational(0))));
    m[0][0][0] = 1;
    m[0][1][1] = 1;
    m[1][0][1] = 1;
    CHECK_NOTHROW(FinAlgebra(2, RVec{Rational(1), Rational(0)}, m));
    try {
        FinAlgebra(2, RVec{Rational(0), Rational(1)}, m);
        FAIL("expected NotUnital");
    } catch (const Error& e) {
        CHECK(e.kind() == "NotUnital");
    }
    // k[x]/(x^2 - x - 1)
    auto fib = m;
    fib[1][1][0] = 1;
    fib[1][1][1] = 1;
    CHECK_NOTHROW(FinAlgebra(2, RVec{Rational(1), Rational(0)}, fib));
    std::vector<std::vector<RVec>> na(3, std::vector<RVec>(3, RVec(3, Rational(0))));
    for (int i = 0; i < 3; ++i) {
        na[0][i][i] = 1;
        na[i][0][i] = 1;
    }
    na[1][1][2] = 1;  // x*x = z, x*z = x, z*x = 0
    na[1][2][1] = 1;
    try {
        FinAlgebra(3, RVec{Rational(1), Rational(0), Rational(0)}, na);
        FAIL("expected NotAssociative");
    } catch (const Error& e) {
        CHECK(e.kind() == "NotAssociative");
    }
}

TEST_CASE("hochschild b examples") {
    auto A = FinAlgebra::matrices(2);
    // b(E_01 (x) E_10) = E_01 E_10 - E_10 E_01 = E_00 - E_11.
    ChainTensor c;
    c.add({1, 2}, one());
    ChainTensor want;
    want.add({0}, one());
    want.add({3}, -one());
    CHECK(hochschild_b(c, A) == want);

    // Direct two-term expansion for random a_0 (x) a_1.
    for (int t = 0; t < 20; ++t) {
        int i = rint(0, 3), j;
        do j = rint(0, 3);
        while (j == A.pivot());
        ChainTensor x;
        x.add({i, j}, one());
        ChainTensor o;
        for (int k = 0; k < 4; ++k) {
            Rational v = A.mul(i, j)[k] - A.mul(j, i)[k];
            if (!is_zero(v)) o.add({k}, HUSeries::constant(v));
        }
        CHECK(hochschild_b(x, A) == o);
    }

    ChainTensor z;
    z.add({2}, one());
    CHECK(hochschild_b(z, A).is_zero());
}

TEST_CASE("connes B examples") {
    for (const auto& A : algebras()) {
        CHECK(connes_B(unit_chain(A), A).is_zero());
        for (int k = 0; k < A.dim(); ++k) {
            if (k == A.pivot()) continue;
            ChainTensor c;
            c.add({k}, one());
            // 1 (x) a_0, with 1 expanded in the basis.
            ChainTensor want;
            for (int j = 0; j < A.dim(); ++j)
                if (!is_zero(A.unit()[j])) want.add({j, k}, HUSeries::constant(A.unit()[j]));
            CHECK(connes_B(c, A) == want);
        }
    }
}

TEST_CASE("b and B square to zero and anticommute") {
    for (const auto& A : algebras()) {
        for (int t = 0; t < 25; ++t) {
            auto c = rchain(A, 0, 4, 4);
            REQUIRE(is_normalized(c, A));
            auto bc = hochschild_b(c, A);
            auto Bc = connes_B(c, A);
            CHECK(is_normalized(bc, A));
            CHECK(is_normalized(Bc, A));
            CHECK(hochschild_b(bc, A).is_zero());
            CHECK(connes_B(Bc, A).is_zero());
            CHECK((hochschild_b(Bc, A) + connes_B(bc, A)).is_zero());
        }
    }
}

TEST_CASE("cyclic differential") {
    for (const auto& A : algebras()) {
        for (auto v : {CyclicVariant::Negative, CyclicVariant::Periodic})
            CHECK(cyclic_differential(unit_chain(A), A, v).is_zero());
        for (int t = 0; t < 20; ++t) {
            auto c = rchain(A, 0, 3, 4, 2);
            auto dc = cyclic_differential(c, A, CyclicVariant::Negative);
            CHECK(cyclic_differential(dc, A, CyclicVariant::Negative).is_zero());
            auto u = HUSeries::monomial(1, 0, 1);
            CHECK(cyclic_differential(c.scaled(u), A, CyclicVariant::Periodic) == dc.scaled(u));
        }
    }
    auto A = FinAlgebra::truncated_poly(3);
    ChainTensor neg;
    neg.add({1, 2}, HUSeries::monomial(1, 0, -1));
    CHECK_NOTHROW(cyclic_differential(neg, A, CyclicVariant::Periodic));
    try {
        cyclic_differential(neg, A, CyclicVariant::Negative);
        FAIL("expected NegativeUPowerInNegativeComplex");
    } catch (const Error& e) {
        CHECK(e.kind() == "NegativeUPowerInNegativeComplex");
    }
    auto d = cyclic_differential(neg, A, CyclicVariant::Periodic);
    CHECK(cyclic_differential(d, A, CyclicVariant::Periodic).is_zero());
}

TEST_CASE("normalization coherence") {
    for (const auto& A : algebras()) {
        for (int t = 0; t < 25; ++t) {
            auto raw = rraw(A, 0, 3, 4);
            auto nrm = normalize(raw, A);
            CHECK(is_normalized(nrm, A));
            CHECK(normalize(nrm, A) == nrm);
            CHECK(hochschild_b(raw, A) == hochschild_b(nrm, A));
            CHECK(connes_B(raw, A) == connes_B(nrm, A));
        }
    }
}
