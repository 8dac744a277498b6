#pragma once

#include "weylforge/rational.hpp"
#include "weylforge/series.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace wf {

// Polynomials in commuting generators (Chern classes "E.c2", abstract classes "w0")
// with HUSeries coefficients, truncated at complex degree d (c_k and abstract
// generators of real degree 2k count as degree k).
class ChernClassExpr {
public:
    using Mono = std::vector<std::pair<std::string, int>>;  // sorted by name
    using Terms = std::map<Mono, HUSeries>;

    ChernClassExpr() = default;
    explicit ChernClassExpr(int d) : d_(d) {}

    static ChernClassExpr constant(const HUSeries& c, int d);
    static ChernClassExpr constant(const Rational& c, int d) { return constant(HUSeries::constant(c), d); }
    static ChernClassExpr generator(const std::string& name, int degree, int d);

    int d() const { return d_; }
    const Terms& terms() const { return terms_; }
    const std::map<std::string, int>& generators() const { return gens_; }
    bool is_zero() const { return terms_.empty(); }
    int degree(const Mono& m) const;
    HUSeries coef(const Mono& m) const;

    void add(const Mono& m, const HUSeries& c);
    void declare(const std::string& name, int degree);

    ChernClassExpr& operator+=(const ChernClassExpr& o);
    ChernClassExpr& operator-=(const ChernClassExpr& o);
    ChernClassExpr operator-() const;
    friend ChernClassExpr operator+(ChernClassExpr a, const ChernClassExpr& b) { return a += b; }
    friend ChernClassExpr operator-(ChernClassExpr a, const ChernClassExpr& b) { return a -= b; }
    friend ChernClassExpr operator*(const ChernClassExpr& a, const ChernClassExpr& b);
    ChernClassExpr scaled(const HUSeries& s) const;
    ChernClassExpr scaled(const Rational& s) const { return scaled(HUSeries::constant(s)); }

    // Degree-k part.
    ChernClassExpr component(int k) const;
    // exp of an expression without degree-0 part.
    ChernClassExpr exp() const;
    // Replace generators by expressions; unlisted generators stay.
    ChernClassExpr substitute(const std::map<std::string, ChernClassExpr>& sub) const;
    ChernClassExpr truncated(int d) const;

    // Equality modulo the coarser truncation (degree and h/u).
    bool operator==(const ChernClassExpr& o) const;
    std::string str() const;

private:
    std::map<std::string, int> gens_;
    Terms terms_;
    int d_ = 0;
};

// c_0 = 1, c_1, .., c_d of a bundle symbol (c_k = 0 for k > rank).
std::vector<ChernClassExpr> chern_classes(const std::string& bundle, int rank, int d);
// Power sums p_1..p_d of the roots (index 0 holds the rank) and back.
std::vector<ChernClassExpr> power_sums(const std::vector<ChernClassExpr>& c, const Rational& rank, int d);
std::vector<ChernClassExpr> elementary_from_power_sums(const std::vector<ChernClassExpr>& p, int d);

// prod G(z_i) over the roots; G is a z-series known past z^d with G(0) = 1.
ChernClassExpr genus_from_chern(const HUSeries& G, const std::vector<ChernClassExpr>& c, int d);
ChernClassExpr genus_from_series(const HUSeries& G, const std::string& bundle, int rank, int d);

HUSeries ahat_series(int d);  // sqrt((z/2)/sinh(z/2)) mod z^{d+1}
HUSeries todd_series(int d);  // z/(1 - e^{-z}) mod z^{d+1}

ChernClassExpr chern_character_from(const std::vector<ChernClassExpr>& c, int rank, int d);
ChernClassExpr chern_character(const std::string& bundle, int rank, int d);

struct BundleSymbol {
    std::string name;
    int rank = 0;
};

struct QuantClassTerm {
    std::string name;  // abstract degree-1 generator
    int hpow = 0;      // contributes h^hpow * [name]
};

// A(Q) exp(-c_1(N)/2) exp(-sum h^hpow w) ch(E), components up to degree d.
ChernClassExpr tau_Y_assemble(const BundleSymbol& Q, const BundleSymbol& N, const BundleSymbol& E,
                              const std::vector<QuantClassTerm>& quant, int d);

// A(T_M|_Y)/Td(N) = A(Q) A(N)^2/Td(N) = A(Q) exp(-c_1(N)/2), with
// T_M|_Y glued from N^dual, Q (rank 2p) and N (rank q); checked with root
// variables and by Chern class substitution.
bool grr_identity_check(int d, int p, int q);

}  // namespace wf
