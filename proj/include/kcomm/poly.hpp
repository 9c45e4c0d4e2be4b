#pragma once

// Dense univariate polynomials, lowest degree first.

#include "kcomm/dense.hpp"

namespace kcomm {

template <class F>
using Poly = std::vector<F>;

/// Drops leading zero coefficients; the zero polynomial is empty.
template <class F>
Poly<F> trim(Poly<F> p);
template <class F>
Poly<F> poly_add(const Poly<F>& a, const Poly<F>& b);
template <class F>
Poly<F> poly_sub(const Poly<F>& a, const Poly<F>& b);
template <class F>
Poly<F> poly_mul(const Poly<F>& a, const Poly<F>& b);
/// Quotient and remainder; throws Precondition on division by zero.
template <class F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const Poly<F>& a, const Poly<F>& b);

template <class F>
struct PolyBezout {
  Poly<F> gcd, s, t;  // s a + t b = gcd, gcd monic
};
template <class F>
PolyBezout<F> poly_ext_gcd(const Poly<F>& a, const Poly<F>& b);

template <class F>
F poly_eval(const Poly<F>& p, const F& x);
template <class F>
Mat<F> poly_eval(const RingCtx<F>& ctx, const Poly<F>& p, const Mat<F>& m);

/// det(x I - m) through a Hessenberg reduction.
template <class F>
Poly<F> charpoly(const RingCtx<F>& ctx, const Mat<F>& m);

}  // namespace kcomm
