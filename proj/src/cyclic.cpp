#include "weylforge/cyclic.hpp"

#include "weylforge/errors.hpp"

namespace wf {

FinAlgebra::FinAlgebra(int dim, RVec unit, std::vector<std::vector<RVec>> mult)
    : dim_(dim), unit_(std::move(unit)), mult_(std::move(mult)) {
    if (static_cast<int>(unit_.size()) != dim_ || static_cast<int>(mult_.size()) != dim_)
        fail("MalformedInput", "algebra data has the wrong shape");
    for (const auto& row : mult_) {
        if (static_cast<int>(row.size()) != dim_) fail("MalformedInput", "algebra data has the wrong shape");
        for (const auto& v : row)
            if (static_cast<int>(v.size()) != dim_) fail("MalformedInput", "algebra data has the wrong shape");
    }
    pivot_ = -1;
    for (int i = 0; i < dim_ && pivot_ < 0; ++i)
        if (!is_zero(unit_[i])) pivot_ = i;
    if (pivot_ < 0) fail("NotUnital", "unit is zero");
    for (int i = 0; i < dim_; ++i) {
        RVec e(dim_, Rational(0));
        e[i] = 1;
        if (mul(unit_, e) != e || mul(e, unit_) != e) fail("NotUnital", "unit does not act as identity");
        for (int j = 0; j < dim_; ++j)
            for (int k = 0; k < dim_; ++k) {
                RVec ek(dim_, Rational(0)), ej(dim_, Rational(0));
                ek[k] = 1;
                ej[j] = 1;
                if (mul(mul(e, ej), ek) != mul(e, mul(ej, ek))) fail("NotAssociative", "structure constants");
            }
    }
    for (int i = 0; i < dim_; ++i) {
        RVec r(dim_ - 1, Rational(0));
        for (int k = 0, s = 0; k < dim_; ++k) {
            if (k == pivot_) continue;
            Rational v = (k == i ? Rational(1) : Rational(0));
            if (i == pivot_) v -= unit_[k] / unit_[pivot_];
            r[s++] = v;
        }
        reduced_.push_back(r);
    }
}

RVec FinAlgebra::mul(const RVec& a, const RVec& b) const {
    RVec r(dim_, Rational(0));
    for (int i = 0; i < dim_; ++i) {
        if (is_zero(a[i])) continue;
        for (int j = 0; j < dim_; ++j) {
            if (is_zero(b[j])) continue;
            Rational s = a[i] * b[j];
            const RVec& m = mult_[i][j];
            for (int k = 0; k < dim_; ++k)
                if (!is_zero(m[k])) r[k] += s * m[k];
        }
    }
    return r;
}

FinAlgebra FinAlgebra::matrices(int m) {
    int d = m * m;
    std::vector<std::vector<RVec>> mult(d, std::vector<RVec>(d, RVec(d, Rational(0))));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < m; ++l) mult[i * m + j][j * m + l][i * m + l] = 1;
    RVec unit(d, Rational(0));
    for (int i = 0; i < m; ++i) unit[i * m + i] = 1;
    return FinAlgebra(d, unit, mult);
}

FinAlgebra FinAlgebra::truncated_poly(int m) {
    std::vector<std::vector<RVec>> mult(m, std::vector<RVec>(m, RVec(m, Rational(0))));
    for (int i = 0; i < m; ++i)
        for (int j = 0; i + j < m; ++j) mult[i][j][i + j] = 1;
    RVec unit(m, Rational(0));
    unit[0] = 1;
    return FinAlgebra(m, unit, mult);
}

void ChainTensor::add(const Word& w, const HUSeries& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int ChainTensor::max_length() const {
    int l = -1;
    for (const auto& kv : terms_) l = std::max(l, static_cast<int>(kv.first.size()) - 1);
    return l;
}

ChainTensor& ChainTensor::operator+=(const ChainTensor& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

ChainTensor ChainTensor::operator-() const {
    ChainTensor r = *this;
    for (auto& kv : r.terms_) kv.second = -kv.second;
    return r;
}

ChainTensor ChainTensor::scaled(const HUSeries& s) const {
    ChainTensor r;
    for (const auto& [w, c] : terms_) r.add(w, c * s);
    return r;
}

bool ChainTensor::operator==(const ChainTensor& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (auto i = terms_.begin(), j = o.terms_.begin(); i != terms_.end(); ++i, ++j)
        if (i->first != j->first || !i->second.agrees(j->second)) return false;
    return true;
}

namespace {

// Expands c * (v_0 (x) v_1 (x) .. (x) v_l); slots >= 1 are reduced modulo the unit.
void add_tensor(ChainTensor& out, const std::vector<RVec>& slots, const HUSeries& c, const FinAlgebra& A) {
    int p = A.pivot(), dim = A.dim();
    std::vector<std::vector<std::pair<int, Rational>>> sparse(slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) {
        if (s == 0) {
            for (int k = 0; k < dim; ++k)
                if (!is_zero(slots[s][k])) sparse[s].push_back({k, slots[s][k]});
        } else {
            RVec red(dim - 1, Rational(0));
            for (int k = 0; k < dim; ++k)
                if (!is_zero(slots[s][k])) {
                    const RVec& r = A.reduce(k);
                    for (int t = 0; t < dim - 1; ++t) red[t] += slots[s][k] * r[t];
                }
            for (int t = 0; t < dim - 1; ++t)
                if (!is_zero(red[t])) sparse[s].push_back({t < p ? t : t + 1, red[t]});
        }
        if (sparse[s].empty()) return;
    }
    ChainTensor::Word w(slots.size());
    std::vector<std::size_t> idx(slots.size(), 0);
    while (true) {
        Rational coef = 1;
        for (std::size_t s = 0; s < slots.size(); ++s) {
            w[s] = sparse[s][idx[s]].first;
            coef *= sparse[s][idx[s]].second;
        }
        out.add(w, c * coef);
        std::size_t s = 0;
        while (s < slots.size() && ++idx[s] == sparse[s].size()) idx[s++] = 0;
        if (s == slots.size()) break;
    }
}

RVec basis(const FinAlgebra& A, int i) {
    RVec e(A.dim(), Rational(0));
    e[i] = 1;
    return e;
}

}  // namespace

ChainTensor normalize(const ChainTensor& c, const FinAlgebra& A) {
    ChainTensor out;
    for (const auto& [w, coef] : c.terms()) {
        std::vector<RVec> slots;
        for (int i : w) slots.push_back(basis(A, i));
        add_tensor(out, slots, coef, A);
    }
    return out;
}

bool is_normalized(const ChainTensor& c, const FinAlgebra& A) {
    for (const auto& kv : c.terms())
        for (std::size_t s = 1; s < kv.first.size(); ++s)
            if (kv.first[s] == A.pivot()) return false;
    return true;
}

ChainTensor unit_chain(const FinAlgebra& A) {
    ChainTensor c;
    add_tensor(c, {A.unit()}, HUSeries::constant(1), A);
    return c;
}

ChainTensor hochschild_b(const ChainTensor& c, const FinAlgebra& A) {
    ChainTensor out;
    for (const auto& [w, coef] : c.terms()) {
        int l = static_cast<int>(w.size()) - 1;
        if (l == 0) continue;
        std::vector<RVec> v;
        for (int i : w) v.push_back(basis(A, i));
        for (int i = 0; i < l; ++i) {
            std::vector<RVec> s;
            for (int j = 0; j < i; ++j) s.push_back(v[j]);
            s.push_back(A.mul(v[i], v[i + 1]));
            for (int j = i + 2; j <= l; ++j) s.push_back(v[j]);
            add_tensor(out, s, i % 2 ? -coef : coef, A);
        }
        std::vector<RVec> s{A.mul(v[l], v[0])};
        for (int j = 1; j < l; ++j) s.push_back(v[j]);
        add_tensor(out, s, l % 2 ? -coef : coef, A);
    }
    return out;
}

ChainTensor connes_B(const ChainTensor& c, const FinAlgebra& A) {
    ChainTensor out;
    for (const auto& [w, coef] : c.terms()) {
        int n = static_cast<int>(w.size()) - 1;
        for (int i = 0; i <= n; ++i) {
            std::vector<RVec> s{A.unit()};
            for (int j = i; j <= n; ++j) s.push_back(basis(A, w[j]));
            for (int j = 0; j < i; ++j) s.push_back(basis(A, w[j]));
            add_tensor(out, s, (n * i) % 2 ? -coef : coef, A);
        }
    }
    return out;
}

ChainTensor cyclic_differential(const ChainTensor& c, const FinAlgebra& A, CyclicVariant v) {
    if (v == CyclicVariant::Negative)
        for (const auto& kv : c.terms())
            for (const auto& t : kv.second.terms())
                if (t.first.second < 0)
                    fail("NegativeUPowerInNegativeComplex", "negative cyclic chains are power series in u");
    return hochschild_b(c, A) + connes_B(c, A).scaled(HUSeries::monomial(1, 0, 1));
}

}  // namespace wf
