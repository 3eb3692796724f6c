#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wpl/error.hpp"
#include "wpl/rational.hpp"

namespace wpl {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMat = Mat<std::int64_t>;
using IntVec = Vec<std::int64_t>;
using RatMat = Mat<Rational>;
using RatVec = Vec<Rational>;

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in add");
    return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in mul");
    return r;
}

RatMat to_rational(const IntMat& a);

// Fraction-free determinant (Bareiss). Intermediate values are exact minors.
std::int64_t det_bareiss(const IntMat& a);

// Characteristic polynomial det(tI - A) by the Faddeev-LeVerrier recurrence;
// every division is exact over Z. Coefficients ascending in t, size n+1,
// leading coefficient 1.
std::vector<std::int64_t> char_poly(const IntMat& a);

// Adjugate from the same recurrence: A * adj(A) = det(A) * I.
IntMat adjugate(const IntMat& a);

// Inverse of a matrix with det = +-1; throws NotUnimodular otherwise.
IntMat unimodular_inverse(const IntMat& a);

// Smallest k in [1, bound] with A^k = I, or nullopt. Entry growth past the
// overflow guard also reports nullopt (such a matrix has unbounded order for
// any bound this toolkit uses).
std::optional<int> matrix_order(const IntMat& a, int bound);

IntMat int_matrix_power(const IntMat& a, int k);

// Row-reduce in place over Q; returns pivot column indices.
std::vector<int> rref_in_place(RatMat& a);

int rank(const RatMat& a);

// Columns form a basis of the right kernel (may have zero columns).
RatMat kernel_basis(const RatMat& a);

// One exact solution of A x = b with free variables set to zero, or nullopt
// if the system is inconsistent.
std::optional<RatVec> solve(const RatMat& a, const RatVec& b);

// Integral solution of A x = b for square invertible A; throws
// NonIntegralSolution if the unique rational solution is not integral.
IntVec solve_integral(const IntMat& a, const IntVec& b);

// --- dense polynomial helpers (coefficients ascending) ---------------------

using IntPoly = std::vector<std::int64_t>;
using RatPoly = std::vector<Rational>;

std::string poly_to_string(const IntPoly& p, const std::string& var = "t");

RatPoly to_rational(const IntPoly& p);
RatPoly poly_trim(RatPoly p);
RatPoly poly_add(const RatPoly& a, const RatPoly& b);
RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
// Quotient and remainder of a by b (b nonzero).
std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b);
RatPoly poly_derivative(const RatPoly& a);
// Monic gcd; gcd(0,0) = 0.
RatPoly poly_gcd(RatPoly a, RatPoly b);
Rational poly_eval(const RatPoly& p, const Rational& x);
RatMat poly_eval_matrix(const RatPoly& p, const RatMat& a);

// Extended Euclid: returns (g, u, v) monic g with u*a + v*b = g.
std::tuple<RatPoly, RatPoly, RatPoly> poly_ext_gcd(const RatPoly& a, const RatPoly& b);

// Monic minimal polynomial of a square rational matrix.
RatPoly min_poly(const RatMat& a);

// All rational roots of a nonzero rational polynomial.
std::vector<Rational> rational_roots(const RatPoly& p);

}  // namespace wpl
