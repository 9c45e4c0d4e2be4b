#pragma once

// Dense matrices over the exact scalar types, with group operations and
// exact linear solves. All routines are exact; nothing is rounded.

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "kcomm/ring.hpp"

namespace kcomm {

using Index = Eigen::Index;

template <class F>
using Mat = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>;
template <class F>
using Vec = Eigen::Matrix<F, Eigen::Dynamic, 1>;

template <class F>
Mat<F> identity(const RingCtx<F>& ctx, Index n);
template <class F>
Mat<F> zeros(const RingCtx<F>& ctx, Index rows, Index cols);
/// Entries attached to ctx, so that formatting and comparisons are canonical.
template <class F>
Mat<F> bound(const RingCtx<F>& ctx, const Mat<F>& a);

template <class F>
bool is_upper_triangular(const Mat<F>& a);
template <class F>
bool is_lower_triangular(const Mat<F>& a);
template <class F>
bool is_unitriangular(const Mat<F>& a);
template <class F>
bool is_diagonal(const Mat<F>& a);
/// a == c * I for some scalar c.
template <class F>
bool is_scalar(const Mat<F>& a);
template <class F>
bool is_identity(const Mat<F>& a);
/// Shape and entrywise equality.
template <class F>
bool same(const Mat<F>& a, const Mat<F>& b);

/// Product that skips zero entries; triangular inputs cost about a third.
template <class F>
Mat<F> mul(const Mat<F>& a, const Mat<F>& b);
/// Throws Singular when a is not invertible.
template <class F>
Mat<F> inverse(const Mat<F>& a);
/// a^e by repeated squaring; negative e goes through the inverse.
template <class F>
Mat<F> power(const Mat<F>& a, long e);
/// X Y X^-1 Y^-1.
template <class F>
Mat<F> commutator(const Mat<F>& x, const Mat<F>& y);
/// H X H^-1.
template <class F>
Mat<F> conjugate(const Mat<F>& x, const Mat<F>& h);
template <class F>
bool order_divides(const Mat<F>& x, unsigned k);
template <class F>
F determinant(const Mat<F>& a);
/// The first superdiagonal of a, zero elsewhere.
template <class F>
Mat<F> jpart(const Mat<F>& a);
/// Block diagonal diag(a, b).
template <class F>
Mat<F> direct_sum(const Mat<F>& a, const Mat<F>& b);

template <class F>
struct Rref {
  Mat<F> r;
  std::vector<Index> pivots;  // pivot column of each nonzero row
};

template <class F>
Rref<F> rref(Mat<F> a);
template <class F>
Index rank(const Mat<F>& a);
/// Columns form a basis of the right kernel.
template <class F>
Mat<F> nullspace(const Mat<F>& a);
/// A solution of a x = b with free variables set to 0, or nullopt.
template <class F>
std::optional<Vec<F>> solve(const Mat<F>& a, const Vec<F>& b);
/// As solve, but free variable i takes the value free_values(i).
template <class F>
std::optional<Vec<F>> solve(const Mat<F>& a, const Vec<F>& b, const Vec<F>& free_values);

}  // namespace kcomm
