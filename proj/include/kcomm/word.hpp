#pragma once

// Commutator words over indexed generators.

#include <vector>

#include "kcomm/oracle.hpp"

namespace kcomm {

/// The commutator [g_x^xexp, g_y^yexp].
struct CommTerm {
  std::size_t x = 0;
  long xexp = 1;
  std::size_t y = 0;
  long yexp = 1;
  friend bool operator==(const CommTerm&, const CommTerm&) = default;
};

using CommutatorWord = std::vector<CommTerm>;

/// F_2 = [B, C], F_{i+1} = F_i [C^(i-1), B^i] [B^i, C^i]; length 2i - 3.
CommutatorWord f_word(unsigned i, std::size_t b = 0, std::size_t c = 1);

/// Word whose value is the transpose of the original value once every generator
/// g is replaced by (g^T)^-1: order reversed and arguments exchanged.
CommutatorWord transpose_word(const CommutatorWord& w);

/// Generator indices shifted by `offset`.
CommutatorWord offset_word(const CommutatorWord& w, std::size_t offset);

/// Ordered product of the commutators; the empty word gives the n x n identity.
template <class F>
Mat<F> eval_word(const RingCtx<F>& ctx, const CommutatorWord& w, const std::vector<Mat<F>>& gens,
                 Index n);

/// Composition node for the same product.
template <class F>
Oracle<F> eval_word(const RingCtx<F>& ctx, const CommutatorWord& w, const std::vector<Oracle<F>>& gens);

}  // namespace kcomm
