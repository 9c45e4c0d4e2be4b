#pragma once

// Exact scalar types used as Eigen coefficients.
//
// Three fields are provided: the rationals, prime fields F_p and cyclotomic
// fields Q(zeta_m). Values built from bare integers (Eigen's Scalar(0) and
// Scalar(1), literals in user code) are "unbound": they carry no modulus or
// field and adopt the context of the other operand on first contact.

#include <gmpxx.h>

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace kcomm {

class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class v);

  const mpq_class& value() const { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  Rational inverse() const;
  std::string str() const { return v_.get_str(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

 private:
  mpq_class v_;
};

/// Element of F_p. A modulus of 0 marks an unbound integer constant.
class PrimeField {
 public:
  PrimeField() = default;
  PrimeField(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  PrimeField(long v, std::uint32_t p);

  std::uint32_t modulus() const { return p_; }
  /// Residue in [0, p) once bound; the raw integer otherwise.
  std::int64_t residue() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  PrimeField inverse() const;
  std::string str() const { return std::to_string(v_); }

  PrimeField& operator+=(const PrimeField& o);
  PrimeField& operator-=(const PrimeField& o);
  PrimeField& operator*=(const PrimeField& o);
  PrimeField& operator/=(const PrimeField& o) { return *this *= o.inverse(); }
  PrimeField operator-() const;

  friend PrimeField operator+(PrimeField a, const PrimeField& b) { return a += b; }
  friend PrimeField operator-(PrimeField a, const PrimeField& b) { return a -= b; }
  friend PrimeField operator*(PrimeField a, const PrimeField& b) { return a *= b; }
  friend PrimeField operator/(PrimeField a, const PrimeField& b) { return a /= b; }
  friend bool operator==(const PrimeField& a, const PrimeField& b);
  friend bool operator!=(const PrimeField& a, const PrimeField& b) { return !(a == b); }

 private:
  std::int64_t v_ = 0;
  std::uint32_t p_ = 0;
};

/// Q(zeta_m) presented as Q[x] / Phi_m(x).
struct CyclotomicField {
  unsigned m = 1;
  unsigned phi = 1;
  std::vector<long> phi_poly;                      // Phi_m, low to high, monic
  std::vector<std::vector<long>> reduce;           // x^e mod Phi_m, e < 2*phi - 1
  std::vector<std::vector<mpq_class>> zeta_pow;    // zeta^j, j < m
};

/// Interned field descriptor; addresses are stable for the process lifetime.
const CyclotomicField& cyclotomic_field(unsigned m);

std::vector<long> cyclotomic_polynomial(unsigned m);

class Cyclotomic {
 public:
  Cyclotomic() : c_(1) {}
  Cyclotomic(long v) : c_(1, mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(const CyclotomicField& field, std::vector<mpq_class> coeffs);
  Cyclotomic(const CyclotomicField& field, const mpq_class& constant);

  /// zeta_m^j, any integer j.
  static Cyclotomic zeta(const CyclotomicField& field, long j);

  const CyclotomicField* field() const { return field_; }
  /// Coefficients over the power basis; length phi once bound, 1 when unbound.
  const std::vector<mpq_class>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_one() const;
  Cyclotomic inverse() const;
  Cyclotomic bound_to(const CyclotomicField& field) const;
  std::string str() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }
  Cyclotomic operator-() const;

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

 private:
  void adopt(const Cyclotomic& o);

  const CyclotomicField* field_ = nullptr;
  std::vector<mpq_class> c_;
};

std::string format_rational(const mpq_class& q);
mpq_class parse_rational(const std::string& text);

}  // namespace kcomm

namespace Eigen {

#define KCOMM_EXACT_NUMTRAITS(T, ADD, MUL)                                              \
  template <>                                                                          \
  struct NumTraits<T> : GenericNumTraits<T> {                                          \
    using Real = T;                                                                    \
    using NonInteger = T;                                                              \
    using Literal = T;                                                                 \
    using Nested = T;                                                                  \
    enum {                                                                             \
      IsComplex = 0,                                                                   \
      IsInteger = 0,                                                                   \
      IsSigned = 1,                                                                    \
      RequireInitialization = 1,                                                       \
      ReadCost = 1,                                                                    \
      AddCost = ADD,                                                                   \
      MulCost = MUL                                                                    \
    };                                                                                 \
  };

KCOMM_EXACT_NUMTRAITS(kcomm::Rational, 10, 20)
KCOMM_EXACT_NUMTRAITS(kcomm::PrimeField, 2, 4)
KCOMM_EXACT_NUMTRAITS(kcomm::Cyclotomic, 40, 200)

#undef KCOMM_EXACT_NUMTRAITS

}  // namespace Eigen
