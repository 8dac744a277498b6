#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace wf {

using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

Rational factorial(int n);
Rational binomial(int n, int k);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// Exact square root if q is the square of a rational.
bool rational_sqrt(const Rational& q, Rational& out);

using RVec = std::vector<Rational>;
using RMat = std::vector<RVec>;

RMat mat_zero(int r, int c);
RMat mat_identity(int n);
RMat mat_mul(const RMat& a, const RMat& b);
RMat mat_add(const RMat& a, const RMat& b);
RMat mat_sub(const RMat& a, const RMat& b);
RMat mat_scale(const RMat& a, const Rational& s);
RMat mat_transpose(const RMat& a);
RMat mat_commutator(const RMat& a, const RMat& b);
Rational mat_trace(const RMat& a);
bool mat_is_zero(const RMat& a);

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RMat& m);
int mat_rank(RMat m);
// Basis of {v : m v = 0}.
std::vector<RVec> nullspace(const RMat& m);
// Solve m x = b; false if inconsistent. Free variables set to zero.
bool solve_linear(const RMat& m, const RVec& b, RVec& x);
// Inverse; throws Singular.
RMat mat_inverse(const RMat& m);

}  // namespace wf
