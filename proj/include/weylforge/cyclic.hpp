#pragma once

#include "weylforge/rational.hpp"
#include "weylforge/series.hpp"

#include <map>
#include <vector>

namespace wf {

// Finite-dimensional unital algebra given by structure constants e_i e_j = sum_k m[i][j][k] e_k.
class FinAlgebra {
public:
    FinAlgebra(int dim, RVec unit, std::vector<std::vector<RVec>> mult);

    int dim() const { return dim_; }
    const RVec& unit() const { return unit_; }
    const RVec& mul(int i, int j) const { return mult_[i][j]; }
    RVec mul(const RVec& a, const RVec& b) const;
    // Index removed in A-bar = A / k 1.
    int pivot() const { return pivot_; }
    // Image of e_i in A-bar, as coefficients on the basis with the pivot dropped.
    const RVec& reduce(int i) const { return reduced_[i]; }

    static FinAlgebra matrices(int m);         // gl_m, basis E_ij at index i*m + j
    static FinAlgebra truncated_poly(int m);   // k[x]/(x^m), basis 1, x, .., x^{m-1}

private:
    int dim_;
    RVec unit_;
    std::vector<std::vector<RVec>> mult_;
    int pivot_ = 0;
    std::vector<RVec> reduced_;
};

// Sum of words (a_0, a_1, .., a_l) with HUSeries coefficients (u lives in the u slot).
// Words of several lengths may coexist.
class ChainTensor {
public:
    using Word = std::vector<int>;
    using Terms = std::map<Word, HUSeries>;

    void add(const Word& w, const HUSeries& c);
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int max_length() const;

    ChainTensor& operator+=(const ChainTensor& o);
    ChainTensor operator-() const;
    friend ChainTensor operator+(ChainTensor a, const ChainTensor& b) { return a += b; }
    friend ChainTensor operator-(ChainTensor a, const ChainTensor& b) { return a += -b; }
    ChainTensor scaled(const HUSeries& s) const;
    bool operator==(const ChainTensor& o) const;

private:
    Terms terms_;
};

// Reduce all slots a_1..a_l modulo the unit (words may carry the pivot index there).
ChainTensor normalize(const ChainTensor& c, const FinAlgebra& A);
bool is_normalized(const ChainTensor& c, const FinAlgebra& A);
ChainTensor unit_chain(const FinAlgebra& A);

ChainTensor hochschild_b(const ChainTensor& c, const FinAlgebra& A);
ChainTensor connes_B(const ChainTensor& c, const FinAlgebra& A);

enum class CyclicVariant { Negative, Periodic };
ChainTensor cyclic_differential(const ChainTensor& c, const FinAlgebra& A, CyclicVariant v);

}  // namespace wf
