#pragma once

// Coefficient rings carrying a distinguished k-th root of unity.

#include <random>
#include <string>

#include "kcomm/error.hpp"
#include "kcomm/scalar.hpp"

namespace kcomm {

enum class RingKind { Rationals, PrimeField, Cyclotomic };

/// Ring descriptor as written on the command line: "Q", "Fp:<p>" or "cyclo:<m>".
struct RingSpec {
  RingKind kind = RingKind::Rationals;
  unsigned param = 0;  // p or m; unused for Q

  static RingSpec parse(const std::string& text);
  std::string str() const;

  friend bool operator==(const RingSpec& a, const RingSpec& b) {
    return a.kind == b.kind && a.param == b.param;
  }
};

template <class F>
class RingCtx {
 public:
  RingCtx() = default;

  const RingSpec& spec() const { return spec_; }
  unsigned k() const { return k_; }
  /// False only for contexts built with require_root = false that lack a root.
  bool has_root() const { return has_root_; }
  const F& omega() const;
  const F& omega_inv() const;
  const F& k_inv() const;

  F from_int(long v) const;
  F zero() const { return from_int(0); }
  F one() const { return from_int(1); }
  /// Attach this context to an unbound constant; bound values pass through.
  F bind(const F& x) const;

  F parse(const std::string& text) const;
  std::string format(const F& x) const;
  /// Random element with numerators and denominators bounded by `bound`.
  F random(std::mt19937_64& rng, int bound = 9) const;
  /// Random nonzero element.
  F random_unit(std::mt19937_64& rng, int bound = 9) const;

  template <class G>
  friend RingCtx<G> make_ring(const RingSpec& spec, unsigned k, bool require_root);

 private:
  RingSpec spec_;
  unsigned k_ = 2;
  bool has_root_ = false;
  F omega_, omega_inv_, k_inv_;
  const CyclotomicField* field_ = nullptr;
};

/// Builds a ring context for the order parameter k.
///
/// With require_root = false the omega-related checks are skipped; such a
/// context can parse and compare scalars but not run factorizations.
template <class F>
RingCtx<F> make_ring(const RingSpec& spec, unsigned k, bool require_root = true);

/// b with b^k = a, chosen as b0 * omega^branch. Cyclotomic rings only.
template <class F>
F kth_root(const F& a, const RingCtx<F>& ctx, unsigned branch);

/// Exponentiation by squaring; negative exponents invert.
template <class F>
F scalar_pow(const F& x, long e) {
  F base = e < 0 ? x.inverse() : x;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  F acc(1);
  while (n) {
    if (n & 1) acc *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return acc;
}

bool is_prime(unsigned long p);

/// The C++ scalar type for a ring kind.
template <RingKind K>
struct ScalarFor;
template <>
struct ScalarFor<RingKind::Rationals> { using type = Rational; };
template <>
struct ScalarFor<RingKind::PrimeField> { using type = PrimeField; };
template <>
struct ScalarFor<RingKind::Cyclotomic> { using type = Cyclotomic; };

/// Calls fn.template operator()<F>() with the scalar type matching spec.kind.
template <class Fn>
decltype(auto) dispatch_ring(const RingSpec& spec, Fn&& fn) {
  switch (spec.kind) {
    case RingKind::Rationals: return fn.template operator()<Rational>();
    case RingKind::PrimeField: return fn.template operator()<PrimeField>();
    case RingKind::Cyclotomic: return fn.template operator()<Cyclotomic>();
  }
  throw Error(Errc::Internal, "unknown ring kind");
}

}  // namespace kcomm
