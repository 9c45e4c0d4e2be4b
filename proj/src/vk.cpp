#include "kcomm/vk.hpp"

namespace kcomm {

namespace {

/// Basis of the column space, as the pivot columns of m.
template <class F>
Mat<F> column_basis(const Mat<F>& m) {
  const auto r = rref(m);
  Mat<F> out(m.rows(), static_cast<Index>(r.pivots.size()));
  for (std::size_t i = 0; i < r.pivots.size(); ++i) out.col(static_cast<Index>(i)) = m.col(r.pivots[i]);
  return out;
}

template <class F>
Mat<F> hcat(const RingCtx<F>& ctx, const Mat<F>& a, const Mat<F>& b) {
  Mat<F> out = zeros(ctx, std::max(a.rows(), b.rows()), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

}  // namespace

template <class F>
SpectralSplit<F> spectral_split(const RingCtx<F>& ctx, const Mat<F>& m1, bool require_det_one) {
  const Index n = m1.rows();
  if (m1.cols() != n) throw Error(Errc::Precondition, "corner block must be square");
  if (require_det_one && determinant(m1) != ctx.one()) throw Error(Errc::Precondition, "det(M1) must be 1");
  Poly<F> g = trim(charpoly(ctx, m1));
  const Poly<F> x_minus_1{-ctx.one(), ctx.one()};
  Poly<F> unipotent_part{ctx.one()};
  Index mult = 0;
  for (;;) {
    auto [q, r] = poly_divmod(g, x_minus_1);
    if (!r.empty()) break;
    g = q;
    unipotent_part = poly_mul(unipotent_part, x_minus_1);
    ++mult;
  }
  const auto bez = poly_ext_gcd(unipotent_part, g);
  if (bez.gcd.size() != 1) throw Error(Errc::Internal, "spectral factors are not coprime");
  const Mat<F> shifted = m1 - identity(ctx, n);
  const Mat<F> e_g = poly_eval(ctx, poly_mul(bez.s, unipotent_part), m1);
  const Mat<F> v_g = column_basis(e_g);
  if (v_g.cols() != n - mult) throw Error(Errc::Internal, "projector rank mismatch");
  // Kernel chain of m1 - I on its generalized eigenspace gives a triangular basis.
  Mat<F> v_1(n, 0);
  Mat<F> nil_power = identity(ctx, n);
  while (v_1.cols() < mult) {
    nil_power = mul(nil_power, shifted);
    const Mat<F> ker = nullspace(nil_power);
    for (Index c = 0; c < ker.cols(); ++c) {
      Mat<F> trial = hcat(ctx, v_1, Mat<F>(ker.col(c)));
      if (rank(trial) == trial.cols()) v_1 = trial;
    }
  }
  const Mat<F> s = hcat(ctx, v_g, v_1);
  const Mat<F> q = inverse(s);
  const Mat<F> d = mul(mul(q, m1), s);
  const Index c = n - mult;
  SpectralSplit<F> out{d.topLeftCorner(c, c), d.bottomRightCorner(mult, mult), q, g};
  if (!same(d, direct_sum(out.a, out.nu)) || !is_unitriangular(out.nu)) {
    throw Error(Errc::Internal, "spectral split failed its postcondition");
  }
  return out;
}

template <class F>
Mat<F> sylvester_decouple(const RingCtx<F>& ctx, const Mat<F>& a, const Mat<F>& bc, const Mat<F>& t) {
  const Index c = a.rows();
  Mat<F> solver;
  try {
    solver = inverse(Mat<F>(a - identity(ctx, c)));
  } catch (const Error& e) {
    if (e.code() != Errc::Singular) throw;
    throw Error(Errc::EigenvalueOne, "A - I is singular");
  }
  Mat<F> y = zeros(ctx, c, bc.cols());
  for (Index j = 0; j < bc.cols(); ++j) {
    Mat<F> rhs = -bc.col(j);
    for (Index i = 0; i < j; ++i) {
      if (!t(i, j).is_zero()) rhs += y.col(i) * t(i, j);
    }
    y.col(j) = mul(solver, rhs);
  }
  return y;
}

template <class F>
VKReduction<F> vk_reduce(const RingCtx<F>& ctx, const VKMat<F>& m) {
  const auto split = spectral_split(ctx, m.m1);
  const std::size_t c = static_cast<std::size_t>(split.a.rows());
  const auto d = dense_oracle(ctx, split.q);
  const auto w = product<F>({d, m.oracle(ctx), inverse(d)});
  const auto h = decouple(w, c);
  VKReduction<F> out;
  out.split = c;
  out.a = split.a;
  out.tail = tail(w, c);
  out.conjugator = product<F>({h, d});
  out.reduced = product<F>({out.conjugator, m.oracle(ctx), inverse(out.conjugator)});
  return out;
}

template <class F>
Certificate<F> factor_vk(const RingCtx<F>& ctx, const VKMat<F>& m) {
  const auto red = vk_reduce(ctx, m);
  const Index c = static_cast<Index>(red.split);
  std::optional<Certificate<F>> fin;
  if (c > 0) fin = factor_sl(ctx, red.a);
  const auto inf = factor_unitriangular(red.tail);
  const std::size_t len = std::max(fin ? fin->word.size() : 0, inf.word.size());
  const Mat<F> id = identity(ctx, c);
  // Finite-side generator powers, identity when the word is exhausted.
  auto fin_power = [&](std::size_t t, bool left) -> Mat<F> {
    if (!fin || t >= fin->word.size()) return id;
    const auto& term = fin->word[t];
    const auto g = window(fin->generators[left ? term.x : term.y], static_cast<std::size_t>(c));
    return power(g, left ? term.xexp : term.yexp);
  };
  auto inf_power = [&](std::size_t t, bool left) -> Oracle<F> {
    if (t >= inf.word.size()) return identity_oracle(ctx);
    const auto& term = inf.word[t];
    return power(inf.generators[left ? term.x : term.y], left ? term.xexp : term.yexp);
  };
  const auto back = inverse(red.conjugator);
  std::vector<Oracle<F>> gens;
  CommutatorWord word;
  for (std::size_t t = 0; t < len; ++t) {
    for (bool left : {true, false}) {
      gens.push_back(conjugate(direct_sum(fin_power(t, left), inf_power(t, left)), back));
    }
    word.push_back({2 * t, 1, 2 * t + 1, 1});
  }
  auto cert = make_certificate(ctx, std::move(gens), std::move(word), Producer::VershikKerov);
  cert.exceeds_bound = fin && fin->exceeds_bound;
  return cert;
}

#define KCOMM_INSTANTIATE_VK(F)                                                                   \
  template SpectralSplit<F> spectral_split(const RingCtx<F>&, const Mat<F>&, bool);               \
  template Mat<F> sylvester_decouple(const RingCtx<F>&, const Mat<F>&, const Mat<F>&, const Mat<F>&); \
  template VKReduction<F> vk_reduce(const RingCtx<F>&, const VKMat<F>&);                          \
  template Certificate<F> factor_vk(const RingCtx<F>&, const VKMat<F>&);

KCOMM_INSTANTIATE_VK(Rational)
KCOMM_INSTANTIATE_VK(PrimeField)
KCOMM_INSTANTIATE_VK(Cyclotomic)

}  // namespace kcomm
