#include "kcomm/commfact.hpp"

namespace kcomm {

namespace {

template <class F>
void require_unitriangular(const Mat<F>& a) {
  if (a.rows() != a.cols() || !is_unitriangular(a)) {
    throw Error(Errc::Precondition, "input must be unitriangular");
  }
}

/// g (+) I with ones on the superdiagonal from position n - 1 on.
template <class F>
Oracle<F> unit_superdiag_extension(const RingCtx<F>& ctx, const Mat<F>& a) {
  const std::size_t n = static_cast<std::size_t>(a.rows());
  std::vector<F> zero_prefix(n > 0 ? n - 1 : 0, ctx.zero());
  return sum<F>({dense_oracle(ctx, a), superdiag_oracle(ctx, PeriodicSeq<F>(std::move(zero_prefix), {ctx.one()}))});
}

template <class F>
std::size_t size_of(const Mat<F>& a) {
  return static_cast<std::size_t>(a.rows());
}

}  // namespace

template <class F>
BCPair<F> bc_pair(const Oracle<F>& j) {
  return {bc_b(j), bc_c(j)};
}

template <class F>
Mat<F> conjugator_coherent(const RingCtx<F>& ctx, const Mat<F>& a, const Mat<F>& b) {
  require_unitriangular(a);
  require_unitriangular(b);
  if (a.rows() != b.rows()) throw Error(Errc::Precondition, "sizes differ");
  return window(conj_coherent(dense_oracle(ctx, a), dense_oracle(ctx, b)), size_of(a));
}

template <class F>
Mat<F> conjugator_to_bidiagonal(const RingCtx<F>& ctx, const Mat<F>& a) {
  if (!is_upper_triangular(a)) throw Error(Errc::Precondition, "input must be upper triangular");
  for (Index i = 0; i + 1 < a.rows(); ++i) {
    if (!a(i, i + 1).is_one()) throw Error(Errc::Precondition, "superdiagonal must be all ones");
  }
  return window(conj_bidiag(unit_superdiag_extension(ctx, a)), size_of(a));
}

template <class F>
Certificate<F> factor_superdiag(const Oracle<F>& a) {
  const auto& ctx = a->ctx();
  const auto j = jpart(a);
  const auto [b, c] = bc_pair(j);
  const auto m = power(product<F>({b, c}), static_cast<long>(ctx.k()));
  const auto x = conj_coherent(m, a);
  return make_certificate<F>(ctx, {conjugate(b, x), conjugate(c, x)}, f_word(ctx.k()), Producer::Superdiagonal);
}

template <class F>
Certificate<F> factor_superdiag(const RingCtx<F>& ctx, const Mat<F>& a) {
  require_unitriangular(a);
  if (!same(a, Mat<F>(identity(ctx, a.rows()) + jpart(a)))) {
    throw Error(Errc::Precondition, "input must be I plus its superdiagonal");
  }
  return finite_certificate(factor_superdiag(dense_oracle(ctx, a)), size_of(a));
}

template <class F>
Certificate<F> factor_unit_superdiag(const Oracle<F>& a) {
  const auto& ctx = a->ctx();
  const auto x = conj_bidiag(a);
  auto inner = factor_superdiag(unit_superdiag_oracle(ctx, PeriodicSeq<F>::constant(ctx.one())));
  auto out = conjugate_certificate(inner, x);
  out.producer = Producer::UnitSuperdiagonal;
  return out;
}

template <class F>
Certificate<F> factor_unit_superdiag(const RingCtx<F>& ctx, const Mat<F>& a) {
  require_unitriangular(a);
  for (Index i = 0; i + 1 < a.rows(); ++i) {
    if (!a(i, i + 1).is_one()) throw Error(Errc::Precondition, "superdiagonal must be all ones");
  }
  return finite_certificate(factor_unit_superdiag(unit_superdiag_extension(ctx, a)), size_of(a));
}

template <class F>
Certificate<F> factor_unitriangular(const Oracle<F>& a) {
  const auto& ctx = a->ctx();
  // I + sum (a_{i,i+1} - 1) E_{i,i+1}; the remaining factor has unit superdiagonal.
  const auto split = sum<F>({identity_oracle(ctx), jpart(a),
                             scale(ctx.from_int(-1), superdiag_oracle(ctx, PeriodicSeq<F>::constant(ctx.one())))});
  const auto rest = product<F>({inverse(split), a});
  return concat(factor_superdiag(split), factor_unit_superdiag(rest), Producer::UnitTriangular);
}

template <class F>
Certificate<F> factor_unitriangular(const RingCtx<F>& ctx, const Mat<F>& a) {
  require_unitriangular(a);
  return finite_certificate(factor_unitriangular(dense_oracle(ctx, a)), size_of(a));
}

#define KCOMM_INSTANTIATE_COMMFACT(F)                                                     \
  template BCPair<F> bc_pair(const Oracle<F>&);                                           \
  template Mat<F> conjugator_coherent(const RingCtx<F>&, const Mat<F>&, const Mat<F>&);   \
  template Mat<F> conjugator_to_bidiagonal(const RingCtx<F>&, const Mat<F>&);             \
  template Certificate<F> factor_superdiag(const Oracle<F>&);                             \
  template Certificate<F> factor_superdiag(const RingCtx<F>&, const Mat<F>&);             \
  template Certificate<F> factor_unit_superdiag(const Oracle<F>&);                        \
  template Certificate<F> factor_unit_superdiag(const RingCtx<F>&, const Mat<F>&);        \
  template Certificate<F> factor_unitriangular(const Oracle<F>&);                         \
  template Certificate<F> factor_unitriangular(const RingCtx<F>&, const Mat<F>&);

KCOMM_INSTANTIATE_COMMFACT(Rational)
KCOMM_INSTANTIATE_COMMFACT(PrimeField)
KCOMM_INSTANTIATE_COMMFACT(Cyclotomic)

}  // namespace kcomm
