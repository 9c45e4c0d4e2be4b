#pragma once

// Coherent expansions A = sum_i D_i J(A)^i with diagonal coefficients D_i.
//
// Diagonals are stored as periodic sequences. The exchange rule J D = S(D) J,
// with S the left shift, turns products of expansions into convolutions.

#include "kcomm/oracle.hpp"

namespace kcomm {

template <class F>
struct DiagSeq {
  std::vector<PeriodicSeq<F>> terms;

  /// The sequence (I, I, 0, ...) of I + J.
  static DiagSeq unit_superdiag(const RingCtx<F>& ctx) {
    return {{PeriodicSeq<F>::constant(ctx.one()), PeriodicSeq<F>::constant(ctx.one())}};
  }
  PeriodicSeq<F> term(std::size_t i) const {
    return i < terms.size() ? terms[i] : PeriodicSeq<F>::constant(F(0));
  }
  /// Equality with implicit zero terms past the end.
  friend bool operator==(const DiagSeq& a, const DiagSeq& b) {
    for (std::size_t i = 0; i < std::max(a.terms.size(), b.terms.size()); ++i) {
      if (!(a.term(i) == b.term(i))) return false;
    }
    return true;
  }
};

/// Entry i of the result is entry i + times of d.
template <class F>
PeriodicSeq<F> shiftS(const PeriodicSeq<F>& d, std::size_t times = 1) {
  return d.shifted(times);
}

/// result_i = sum_{j=0}^{i} P_j S^j(Q_{i-j}).
template <class F>
DiagSeq<F> seq_product(const DiagSeq<F>& p, const DiagSeq<F>& q);

/// Expansion of A^l in powers of J(A); coefficient 1 is l I.
template <class F>
DiagSeq<F> power_seq(const DiagSeq<F>& p, unsigned l);

/// Top-left n x n block of sum_i D_i J^i, J the superdiagonal matrix of `superdiag`.
template <class F>
Mat<F> realize(const RingCtx<F>& ctx, const DiagSeq<F>& d, const PeriodicSeq<F>& superdiag,
               std::size_t n);

/// Normalized coefficients with A = sum_{i <= max_offset} D_i J(A)^i on the
/// n-window. Positions where J(A)^i vanishes get coefficient 0; a nonzero
/// entry there raises NotCoherent. Finite results have period [0].
template <class F>
DiagSeq<F> coherent_solve(const Oracle<F>& a, std::size_t max_offset, std::size_t n);
template <class F>
DiagSeq<F> coherent_solve(const RingCtx<F>& ctx, const Mat<F>& a, std::size_t max_offset);

}  // namespace kcomm
