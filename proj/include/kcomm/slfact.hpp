#pragma once

// Factorization of determinant-one matrices: scalar matrices through the
// parity split into two diagonal matrices, nonscalar ones through an LU
// similarity followed by the unitriangular factorizations.

#include "kcomm/commfact.hpp"

namespace kcomm {

template <class F>
struct JBlocks {
  Mat<F> j1, j2;
};

/// 2 x 2 blocks of trace theta + theta^-1 and determinant one with j1 j2 = diag(a, a^-1).
/// `printed_j2` selects the uncorrected (1,2) entry a (a t / (a + 1))^2 - 1 of j2.
template <class F>
JBlocks<F> j_block(const RingCtx<F>& ctx, const F& a, const F& theta, bool printed_j2 = false);
/// Same blocks from the trace t alone; t is rational for k = 3, 4, 6.
template <class F>
JBlocks<F> j_block_trace(const RingCtx<F>& ctx, const F& a, const F& t, bool printed_j2 = false);

template <class F>
struct ScalarSplit {
  Mat<F> f, g;
  /// Diagonal blocks of f and g: 2 for a pair (x, x^-1), 1 for a lone 1.
  std::vector<int> f_blocks, g_blocks;
};

/// Diagonal f, g with f g = alpha I, following the parity of n.
template <class F>
ScalarSplit<F> scalar_split(const RingCtx<F>& ctx, const F& alpha, std::size_t n);

/// alpha I_n as 4k - 6 commutators. Needs k >= 3 and alpha^n = 1.
template <class F>
Certificate<F> scalar_factor(const RingCtx<F>& ctx, const F& alpha, std::size_t n);

template <class F>
struct LUSimilarity {
  Mat<F> p, l, u;
};

/// p a p^-1 = l u with l unit lower and u unit upper triangular. Prefers
/// results where l and u are regular (nonzero first off-diagonal).
template <class F>
LUSimilarity<F> sourour_lu_similarity(const RingCtx<F>& ctx, const Mat<F>& a);

/// Unit upper triangular u with nonzero superdiagonal.
template <class F>
bool is_regular_unitriangular(const Mat<F>& u);

/// Determinant-one matrix as a product of commutators of order-k elements:
/// 4k - 6 in the regular case, at most 8k - 12 otherwise (flagged).
template <class F>
Certificate<F> factor_sl(const RingCtx<F>& ctx, const Mat<F>& a);

}  // namespace kcomm
