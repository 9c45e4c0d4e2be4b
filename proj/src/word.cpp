#include "kcomm/word.hpp"

#include <map>

namespace kcomm {

CommutatorWord f_word(unsigned i, std::size_t b, std::size_t c) {
  if (i < 2) throw Error(Errc::Precondition, "f_word needs i >= 2");
  CommutatorWord w{{b, 1, c, 1}};
  for (unsigned s = 2; s < i; ++s) {
    w.push_back({c, static_cast<long>(s) - 1, b, static_cast<long>(s)});
    w.push_back({b, static_cast<long>(s), c, static_cast<long>(s)});
  }
  return w;
}

CommutatorWord transpose_word(const CommutatorWord& w) {
  CommutatorWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->y, it->yexp, it->x, it->xexp});
  return out;
}

CommutatorWord offset_word(const CommutatorWord& w, std::size_t offset) {
  CommutatorWord out = w;
  for (auto& t : out) {
    t.x += offset;
    t.y += offset;
  }
  return out;
}

template <class F>
Mat<F> eval_word(const RingCtx<F>& ctx, const CommutatorWord& w, const std::vector<Mat<F>>& gens,
                 Index n) {
  std::map<std::pair<std::size_t, long>, Mat<F>> powers;
  auto pw = [&](std::size_t g, long e) -> const Mat<F>& {
    if (g >= gens.size()) throw Error(Errc::Precondition, "word references a missing generator");
    auto it = powers.find({g, e});
    if (it == powers.end()) it = powers.emplace(std::make_pair(g, e), power(gens[g], e)).first;
    return it->second;
  };
  Mat<F> acc = identity(ctx, n);
  for (const auto& t : w) {
    acc = mul(mul(mul(mul(acc, pw(t.x, t.xexp)), pw(t.y, t.yexp)), pw(t.x, -t.xexp)), pw(t.y, -t.yexp));
  }
  return acc;
}

template <class F>
Oracle<F> eval_word(const RingCtx<F>& ctx, const CommutatorWord& w, const std::vector<Oracle<F>>& gens) {
  if (w.empty()) return identity_oracle(ctx);
  std::vector<Oracle<F>> factors;
  for (const auto& t : w) {
    if (t.x >= gens.size() || t.y >= gens.size()) {
      throw Error(Errc::Precondition, "word references a missing generator");
    }
    factors.push_back(commutator(power(gens[t.x], t.xexp), power(gens[t.y], t.yexp)));
  }
  return factors.size() == 1 ? factors.front() : product(std::move(factors));
}

#define KCOMM_INSTANTIATE_WORD(F)                                                                   \
  template Mat<F> eval_word(const RingCtx<F>&, const CommutatorWord&, const std::vector<Mat<F>>&, \
                            Index);                                                                 \
  template Oracle<F> eval_word(const RingCtx<F>&, const CommutatorWord&, const std::vector<Oracle<F>>&);

KCOMM_INSTANTIATE_WORD(Rational)
KCOMM_INSTANTIATE_WORD(PrimeField)
KCOMM_INSTANTIATE_WORD(Cyclotomic)

}  // namespace kcomm
