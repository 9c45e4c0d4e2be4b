#include "kcomm/poly.hpp"

namespace kcomm {

template <class F>
Poly<F> trim(Poly<F> p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

template <class F>
Poly<F> poly_add(const Poly<F>& a, const Poly<F>& b) {
  Poly<F> out(std::max(a.size(), b.size()), F(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return trim(std::move(out));
}

template <class F>
Poly<F> poly_sub(const Poly<F>& a, const Poly<F>& b) {
  Poly<F> out(std::max(a.size(), b.size()), F(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return trim(std::move(out));
}

template <class F>
Poly<F> poly_mul(const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> out(a.size() + b.size() - 1, F(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return trim(std::move(out));
}

template <class F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const Poly<F>& a, const Poly<F>& b_in) {
  const Poly<F> b = trim(b_in);
  if (b.empty()) throw Error(Errc::Precondition, "polynomial division by zero");
  Poly<F> r = trim(a);
  if (r.size() < b.size()) return {{}, r};
  Poly<F> q(r.size() - b.size() + 1, F(0));
  const F lead_inv = b.back().inverse();
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const F c = r.back() * lead_inv;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    r.pop_back();
    r = trim(std::move(r));
  }
  return {trim(std::move(q)), r};
}

template <class F>
PolyBezout<F> poly_ext_gcd(const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r0 = trim(a), r1 = trim(b);
  Poly<F> s0{F(1)}, s1{}, t0{}, t1{F(1)};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, poly_sub(s0, poly_mul(q, s1)));
    t0 = std::exchange(t1, poly_sub(t0, poly_mul(q, t1)));
  }
  if (r0.empty()) return {{}, {}, {}};
  const Poly<F> norm{r0.back().inverse()};
  return {poly_mul(r0, norm), poly_mul(s0, norm), poly_mul(t0, norm)};
}

template <class F>
F poly_eval(const Poly<F>& p, const F& x) {
  F acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

template <class F>
Mat<F> poly_eval(const RingCtx<F>& ctx, const Poly<F>& p, const Mat<F>& m) {
  const Index n = m.rows();
  Mat<F> acc = zeros(ctx, n, n);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = mul(acc, m);
    for (Index i = 0; i < n; ++i) acc(i, i) += *it;
  }
  return acc;
}

template <class F>
Poly<F> charpoly(const RingCtx<F>& ctx, const Mat<F>& m) {
  const Index n = m.rows();
  Mat<F> h = bound(ctx, m);
  // Similarity reduction to upper Hessenberg form.
  for (Index j = 0; j + 2 < n; ++j) {
    Index piv = -1;
    for (Index i = j + 1; i < n && piv < 0; ++i) {
      if (!h(i, j).is_zero()) piv = i;
    }
    if (piv < 0) continue;
    if (piv != j + 1) {
      h.row(piv).swap(h.row(j + 1));
      h.col(piv).swap(h.col(j + 1));
    }
    const F inv = h(j + 1, j).inverse();
    for (Index i = j + 2; i < n; ++i) {
      if (h(i, j).is_zero()) continue;
      const F f = h(i, j) * inv;
      for (Index c = 0; c < n; ++c) h(i, c) -= f * h(j + 1, c);
      for (Index r = 0; r < n; ++r) h(r, j + 1) += f * h(r, i);
    }
  }
  // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{l=i+1}^{m} h_{l,l-1}) p_{i-1}, 1-based.
  std::vector<Poly<F>> p{{ctx.one()}};
  for (Index mm = 0; mm < n; ++mm) {
    Poly<F> next = poly_mul(Poly<F>{-h(mm, mm), ctx.one()}, p.back());
    F prod = ctx.one();
    for (Index i = mm - 1; i >= 0; --i) {
      prod *= h(i + 1, i);
      if (prod.is_zero()) break;
      next = poly_sub(next, poly_mul(Poly<F>{h(i, mm) * prod}, p[static_cast<std::size_t>(i)]));
    }
    p.push_back(std::move(next));
  }
  Poly<F> out = p.back();
  out.resize(static_cast<std::size_t>(n) + 1, ctx.zero());
  for (auto& c : out) c = ctx.bind(c);
  return out;
}

#define KCOMM_INSTANTIATE_POLY(F)                                                        \
  template Poly<F> trim(Poly<F>);                                                        \
  template Poly<F> poly_add(const Poly<F>&, const Poly<F>&);                             \
  template Poly<F> poly_sub(const Poly<F>&, const Poly<F>&);                             \
  template Poly<F> poly_mul(const Poly<F>&, const Poly<F>&);                             \
  template std::pair<Poly<F>, Poly<F>> poly_divmod(const Poly<F>&, const Poly<F>&);      \
  template PolyBezout<F> poly_ext_gcd(const Poly<F>&, const Poly<F>&);                   \
  template F poly_eval(const Poly<F>&, const F&);                                        \
  template Mat<F> poly_eval(const RingCtx<F>&, const Poly<F>&, const Mat<F>&);           \
  template Poly<F> charpoly(const RingCtx<F>&, const Mat<F>&);

KCOMM_INSTANTIATE_POLY(Rational)
KCOMM_INSTANTIATE_POLY(PrimeField)
KCOMM_INSTANTIATE_POLY(Cyclotomic)

}  // namespace kcomm
