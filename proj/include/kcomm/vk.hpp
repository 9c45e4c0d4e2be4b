#pragma once

// Vershik-Kerov matrices [[M1, M2], [0, M3]]: M1 finite invertible, M2 a
// periodic coupling, M3 infinite unitriangular.

#include "kcomm/poly.hpp"
#include "kcomm/slfact.hpp"

namespace kcomm {

template <class F>
struct VKMat {
  Mat<F> m1;
  PeriodicColumns<F> m2;
  Oracle<F> m3;

  std::size_t n() const { return static_cast<std::size_t>(m1.rows()); }
  Oracle<F> oracle(const RingCtx<F>& ctx) const { return vk_oracle(ctx, m1, m2, m3); }
};

template <class F>
struct SpectralSplit {
  Mat<F> a;   // no eigenvalue 1
  Mat<F> nu;  // unitriangular
  Mat<F> q;   // q m1 q^-1 = diag(a, nu)
  Poly<F> g;  // charpoly(m1) = (x - 1)^m g, g(1) != 0
};

/// Splits off the generalized eigenspace of 1 with polynomial projectors.
template <class F>
SpectralSplit<F> spectral_split(const RingCtx<F>& ctx, const Mat<F>& m1, bool require_det_one = true);

/// Y with a Y - Y t = -bc on the given columns, t unitriangular.
template <class F>
Mat<F> sylvester_decouple(const RingCtx<F>& ctx, const Mat<F>& a, const Mat<F>& bc, const Mat<F>& t);

template <class F>
struct VKReduction {
  std::size_t split = 0;  // size of the finite block a
  Mat<F> a;
  Oracle<F> tail;       // unitriangular tail, Nu absorbed
  Oracle<F> conjugator; // h with h m h^-1 = diag(a, tail)
  Oracle<F> reduced;    // h m h^-1
};

template <class F>
VKReduction<F> vk_reduce(const RingCtx<F>& ctx, const VKMat<F>& m);

/// Commutator factorization: the finite part through factor_sl, the tail
/// through factor_unitriangular, zipped term by term as direct sums.
template <class F>
Certificate<F> factor_vk(const RingCtx<F>& ctx, const VKMat<F>& m);

}  // namespace kcomm
