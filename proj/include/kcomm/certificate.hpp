#pragma once

// Certificates: named order-k generators and a commutator word whose value is
// the target matrix. Finite certificates carry a size and dense generators.

#include <optional>
#include <string>

#include "kcomm/word.hpp"

namespace kcomm {

enum class Producer { UnitTriangular, Superdiagonal, UnitSuperdiagonal, SpecialLinear, VershikKerov };

/// Serialized tag: theorem1, cor77, cor79, theorem2 or theorem3.
const char* producer_tag(Producer p);
Producer parse_producer(const std::string& tag);
/// Word length bound of the producing construction (4k - 6 or 2k - 3).
std::size_t producer_bound(Producer p, unsigned k);

template <class F>
struct Certificate {
  RingCtx<F> ctx;
  std::vector<std::string> names;
  std::vector<Oracle<F>> generators;
  CommutatorWord word;
  Producer producer = Producer::UnitTriangular;
  std::size_t claimed_length = 0;
  std::optional<std::size_t> size;
  /// Set when a fallback route exceeded producer_bound (allowed up to twice the bound).
  bool exceeds_bound = false;

  unsigned k() const { return ctx.k(); }
};

/// Names g1, g2, ... and claimed length equal to the word size.
template <class F>
Certificate<F> make_certificate(const RingCtx<F>& ctx, std::vector<Oracle<F>> gens, CommutatorWord word,
                                Producer producer, std::optional<std::size_t> size = std::nullopt);

/// Generators and word of `b` appended after those of `a`.
template <class F>
Certificate<F> concat(const Certificate<F>& a, const Certificate<F>& b, Producer producer);

/// Generators replaced by h g h^-1, so the value becomes h * target * h^-1.
template <class F>
Certificate<F> conjugate_certificate(const Certificate<F>& c, const Oracle<F>& h);

/// Finite certificates only: value becomes the transpose of the target.
template <class F>
Certificate<F> transpose_certificate(const Certificate<F>& c);

/// Generators replaced by their n-windows as dense generators of a size-n certificate.
template <class F>
Certificate<F> finite_certificate(const Certificate<F>& c, std::size_t n);

template <class F>
std::vector<Mat<F>> generator_windows(const Certificate<F>& c, std::size_t n);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::size_t window = 0;
  std::vector<CheckResult> checks;
  bool passed() const;
  /// First failing check, if any.
  const CheckResult* failure() const;
};

/// Checks generator orders, the word value against `target` and the claimed length.
/// Finite certificates are checked at their size; infinite ones on the N-window,
/// enlarged to cover every finite corner.
template <class F>
VerifyReport verify_certificate(const Certificate<F>& c, const Oracle<F>& target, std::size_t n);

}  // namespace kcomm
