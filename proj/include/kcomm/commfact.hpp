#pragma once

// Factorization of unitriangular matrices into commutators of order-k elements.
//
// Every routine works on oracles; the Mat overloads run the same construction
// on g (+) I and keep the n-window, which is exact by triangular locality.

#include "kcomm/certificate.hpp"

namespace kcomm {

template <class F>
struct BCPair {
  Oracle<F> b, c;
};

/// Order-k pair with superdiagonal of (BC)^k equal to the superdiagonal of j.
template <class F>
BCPair<F> bc_pair(const Oracle<F>& j);

/// Unitriangular X with X a X^-1 = b, free parameters zero.
template <class F>
Mat<F> conjugator_coherent(const RingCtx<F>& ctx, const Mat<F>& a, const Mat<F>& b);

/// X with X^-1 a X = diag(a) + superdiagonal of ones.
template <class F>
Mat<F> conjugator_to_bidiagonal(const RingCtx<F>& ctx, const Mat<F>& a);

/// A = I + J(A): 2k - 3 commutators of two generators.
template <class F>
Certificate<F> factor_superdiag(const Oracle<F>& a);
template <class F>
Certificate<F> factor_superdiag(const RingCtx<F>& ctx, const Mat<F>& a);

/// Unitriangular with unit superdiagonal: 2k - 3 commutators.
template <class F>
Certificate<F> factor_unit_superdiag(const Oracle<F>& a);
template <class F>
Certificate<F> factor_unit_superdiag(const RingCtx<F>& ctx, const Mat<F>& a);

/// Unitriangular: 4k - 6 commutators of four generators.
template <class F>
Certificate<F> factor_unitriangular(const Oracle<F>& a);
template <class F>
Certificate<F> factor_unitriangular(const RingCtx<F>& ctx, const Mat<F>& a);

}  // namespace kcomm
