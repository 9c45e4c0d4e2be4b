#include "kcomm/coherent.hpp"

namespace kcomm {

template <class F>
DiagSeq<F> seq_product(const DiagSeq<F>& p, const DiagSeq<F>& q) {
  DiagSeq<F> out;
  if (p.terms.empty() || q.terms.empty()) return out;
  const std::size_t len = p.terms.size() + q.terms.size() - 1;
  auto times = [](const F& a, const F& b) { return a * b; };
  auto plus = [](const F& a, const F& b) { return a + b; };
  for (std::size_t i = 0; i < len; ++i) {
    PeriodicSeq<F> acc = PeriodicSeq<F>::constant(F(0));
    for (std::size_t j = 0; j <= i; ++j) {
      if (j >= p.terms.size() || i - j >= q.terms.size()) continue;
      acc = PeriodicSeq<F>::zip(acc, PeriodicSeq<F>::zip(p.terms[j], shiftS(q.terms[i - j], j), times),
                                plus);
    }
    out.terms.push_back(std::move(acc));
  }
  return out;
}

template <class F>
DiagSeq<F> power_seq(const DiagSeq<F>& p, unsigned l) {
  if (l == 0) throw Error(Errc::Precondition, "power_seq needs l >= 1");
  DiagSeq<F> acc = p;
  for (unsigned i = 1; i < l; ++i) acc = seq_product(acc, p);
  return acc;
}

template <class F>
Mat<F> realize(const RingCtx<F>& ctx, const DiagSeq<F>& d, const PeriodicSeq<F>& superdiag,
               std::size_t n) {
  Mat<F> out = zeros(ctx, static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t i = 0; i < d.terms.size(); ++i) {
    for (std::size_t p = 0; p + i < n; ++p) {
      F v = d.terms[i].at(p);
      for (std::size_t s = p; s < p + i && !v.is_zero(); ++s) v *= superdiag.at(s);
      out(static_cast<Index>(p), static_cast<Index>(p + i)) = ctx.bind(v);
    }
  }
  return out;
}

namespace {

template <class F, class Entry>
DiagSeq<F> solve_coefficients(const RingCtx<F>& ctx, Entry entry, std::size_t max_offset,
                              std::size_t n) {
  for (std::size_t p = 0; p < n; ++p) {
    if (!entry(p, p).is_one()) throw Error(Errc::Precondition, "coherent_solve needs a unitriangular matrix");
  }
  DiagSeq<F> out = DiagSeq<F>::unit_superdiag(ctx);
  std::vector<F> sup;
  for (std::size_t p = 0; p + 1 < n; ++p) sup.push_back(entry(p, p + 1));
  for (std::size_t i = 2; i <= max_offset && i < n; ++i) {
    std::vector<F> coeff;
    for (std::size_t p = 0; p + i < n; ++p) {
      F prod = ctx.one();
      for (std::size_t s = p; s < p + i; ++s) prod *= sup[s];
      F a = entry(p, p + i);
      if (prod.is_zero()) {
        if (!a.is_zero()) {
          throw Error(Errc::NotCoherent, "entry (" + std::to_string(p + 1) + "," +
                                             std::to_string(p + i + 1) +
                                             ") is nonzero where J(A)^" + std::to_string(i) + " vanishes");
        }
        coeff.push_back(ctx.zero());
      } else {
        coeff.push_back(a / prod);
      }
    }
    out.terms.push_back(PeriodicSeq<F>::finite(std::move(coeff)));
  }
  return out;
}

}  // namespace

template <class F>
DiagSeq<F> coherent_solve(const Oracle<F>& a, std::size_t max_offset, std::size_t n) {
  return solve_coefficients<F>(a->ctx(), [&](std::size_t i, std::size_t j) { return a->entry(i, j); },
                               max_offset, n);
}

template <class F>
DiagSeq<F> coherent_solve(const RingCtx<F>& ctx, const Mat<F>& a, std::size_t max_offset) {
  if (!is_upper_triangular(a)) throw Error(Errc::Precondition, "coherent_solve needs a triangular matrix");
  return solve_coefficients<F>(
      ctx, [&](std::size_t i, std::size_t j) { return a(static_cast<Index>(i), static_cast<Index>(j)); },
      max_offset, static_cast<std::size_t>(a.rows()));
}

#define KCOMM_INSTANTIATE_COHERENT(F)                                                          \
  template DiagSeq<F> seq_product(const DiagSeq<F>&, const DiagSeq<F>&);                       \
  template DiagSeq<F> power_seq(const DiagSeq<F>&, unsigned);                                  \
  template Mat<F> realize(const RingCtx<F>&, const DiagSeq<F>&, const PeriodicSeq<F>&,         \
                          std::size_t);                                                        \
  template DiagSeq<F> coherent_solve(const Oracle<F>&, std::size_t, std::size_t);              \
  template DiagSeq<F> coherent_solve(const RingCtx<F>&, const Mat<F>&, std::size_t);

KCOMM_INSTANTIATE_COHERENT(Rational)
KCOMM_INSTANTIATE_COHERENT(PrimeField)
KCOMM_INSTANTIATE_COHERENT(Cyclotomic)

}  // namespace kcomm
