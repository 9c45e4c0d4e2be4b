#include "kcomm/scalar.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "kcomm/error.hpp"

namespace kcomm {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NoRootOfUnity: return "NoRootOfUnity";
    case Errc::KNotInvertible: return "KNotInvertible";
    case Errc::RootNotInRing: return "RootNotInRing";
    case Errc::Singular: return "Singular";
    case Errc::NotCoherent: return "NotCoherent";
    case Errc::NotConjugate: return "NotConjugate";
    case Errc::DegenerateBlock: return "DegenerateBlock";
    case Errc::KTooSmall: return "KTooSmall";
    case Errc::ScalarInput: return "ScalarInput";
    case Errc::EigenvalueOne: return "EigenvalueOne";
    case Errc::Precondition: return "Precondition";
    case Errc::Parse: return "Parse";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Rational

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(Errc::Singular, "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational Rational::inverse() const {
  if (is_zero()) throw Error(Errc::Singular, "inverse of zero");
  return Rational(mpq_class(1 / v_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(Errc::Singular, "division by zero");
  v_ /= o.v_;
  return *this;
}

std::string format_rational(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(const std::string& text) {
  auto first = text.find_first_not_of(" \t\n");
  auto last = text.find_last_not_of(" \t\n");
  if (first == std::string::npos) throw Error(Errc::Parse, "empty rational");
  std::string s = text.substr(first, last - first + 1);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  auto slash = s.find('/');
  auto digits_ok = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t start = (allow_sign && part[0] == '-') ? 1 : 0;
    if (start == part.size()) return false;
    for (std::size_t i = start; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') return false;
    }
    return true;
  };
  if (slash == std::string::npos ? !digits_ok(s, true)
                                 : !digits_ok(s.substr(0, slash), true) ||
                                       !digits_ok(s.substr(slash + 1), false)) {
    throw Error(Errc::Parse, "malformed rational '" + text + "'");
  }
  mpq_class q(s, 10);
  if (sgn(q.get_den()) == 0) throw Error(Errc::Parse, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

// -------------------------------------------------------------- PrimeField

namespace {

std::int64_t reduce_mod(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return r < 0 ? r + p : r;
}

std::uint32_t merge_modulus(std::uint32_t a, std::uint32_t b) {
  if (a != 0 && b != 0 && a != b) {
    throw Error(Errc::Precondition, "mixing elements of F_" + std::to_string(a) + " and F_" +
                                        std::to_string(b));
  }
  return a != 0 ? a : b;
}

}  // namespace

PrimeField::PrimeField(long v, std::uint32_t p) : v_(reduce_mod(v, p)), p_(p) {}

PrimeField& PrimeField::operator+=(const PrimeField& o) {
  p_ = merge_modulus(p_, o.p_);
  v_ = p_ ? reduce_mod(reduce_mod(v_, p_) + reduce_mod(o.v_, p_), p_) : v_ + o.v_;
  return *this;
}

PrimeField& PrimeField::operator-=(const PrimeField& o) {
  p_ = merge_modulus(p_, o.p_);
  v_ = p_ ? reduce_mod(reduce_mod(v_, p_) - reduce_mod(o.v_, p_), p_) : v_ - o.v_;
  return *this;
}

PrimeField& PrimeField::operator*=(const PrimeField& o) {
  p_ = merge_modulus(p_, o.p_);
  v_ = p_ ? reduce_mod(reduce_mod(v_, p_) * reduce_mod(o.v_, p_), p_) : v_ * o.v_;
  return *this;
}

PrimeField PrimeField::operator-() const {
  PrimeField r;
  r.p_ = p_;
  r.v_ = p_ ? reduce_mod(-v_, p_) : -v_;
  return r;
}

PrimeField PrimeField::inverse() const {
  if (p_ == 0) {
    if (v_ == 1 || v_ == -1) return *this;
    throw Error(Errc::Precondition, "inverse of an unbound integer constant");
  }
  if (v_ == 0) throw Error(Errc::Singular, "inverse of zero in F_" + std::to_string(p_));
  std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
  while (b != 0) {
    std::int64_t q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
  }
  return PrimeField(x0, p_);
}

bool operator==(const PrimeField& a, const PrimeField& b) {
  std::uint32_t p = merge_modulus(a.p_, b.p_);
  if (p == 0) return a.v_ == b.v_;
  return reduce_mod(a.v_, p) == reduce_mod(b.v_, p);
}

// -------------------------------------------------------------- Cyclotomic

std::vector<long> cyclotomic_polynomial(unsigned m) {
  if (m == 0) throw Error(Errc::Precondition, "cyclotomic index must be positive");
  // x^m - 1 divided by Phi_d for every proper divisor d.
  std::vector<long> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    std::vector<long> div = cyclotomic_polynomial(d);
    std::size_t dn = num.size() - 1, dd = div.size() - 1;
    std::vector<long> quot(dn - dd + 1, 0);
    for (std::size_t i = dn + 1; i-- > dd;) {
      long c = num[i];  // divisor is monic
      quot[i - dd] = c;
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * div[j];
    }
    num = std::move(quot);
  }
  return num;
}

const CyclotomicField& cyclotomic_field(unsigned m) {
  static std::mutex mutex;
  static std::map<unsigned, std::unique_ptr<CyclotomicField>> registry;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = registry[m];
  if (slot) return *slot;

  auto f = std::make_unique<CyclotomicField>();
  f->m = m;
  f->phi_poly = cyclotomic_polynomial(m);
  f->phi = static_cast<unsigned>(f->phi_poly.size() - 1);
  const unsigned phi = f->phi;

  // x^e mod Phi_m by shifting and folding the top coefficient.
  std::vector<long> cur(phi, 0);
  cur[0] = 1;
  std::size_t table = std::max<std::size_t>(2 * phi - 1, m);
  std::vector<std::vector<long>> powers;
  for (std::size_t e = 0; e < table; ++e) {
    powers.push_back(cur);
    long top = cur[phi - 1];
    for (unsigned i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (unsigned i = 0; i < phi; ++i) cur[i] -= top * f->phi_poly[i];
  }
  f->reduce.assign(powers.begin(), powers.begin() + (2 * phi - 1));
  for (unsigned j = 0; j < m; ++j) {
    std::vector<mpq_class> z(phi);
    for (unsigned i = 0; i < phi; ++i) z[i] = powers[j][i];
    f->zeta_pow.push_back(std::move(z));
  }
  slot = std::move(f);
  return *slot;
}

Cyclotomic::Cyclotomic(const CyclotomicField& field, std::vector<mpq_class> coeffs)
    : field_(&field), c_(std::move(coeffs)) {
  if (c_.size() != field.phi) {
    throw Error(Errc::Precondition, "cyclotomic coefficient vector has length " +
                                        std::to_string(c_.size()) + ", expected " +
                                        std::to_string(field.phi));
  }
  for (auto& c : c_) c.canonicalize();
}

Cyclotomic::Cyclotomic(const CyclotomicField& field, const mpq_class& constant)
    : field_(&field), c_(field.phi) {
  c_[0] = constant;
}

Cyclotomic Cyclotomic::zeta(const CyclotomicField& field, long j) {
  long m = static_cast<long>(field.m);
  long r = ((j % m) + m) % m;
  return Cyclotomic(field, field.zeta_pow[static_cast<std::size_t>(r)]);
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : c_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

bool Cyclotomic::is_one() const {
  if (c_[0] != 1) return false;
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (sgn(c_[i]) != 0) return false;
  }
  return true;
}

Cyclotomic Cyclotomic::bound_to(const CyclotomicField& field) const {
  if (field_ == &field) return *this;
  if (field_ != nullptr) {
    throw Error(Errc::Precondition, "mixing Q(zeta_" + std::to_string(field_->m) + ") and Q(zeta_" +
                                        std::to_string(field.m) + ")");
  }
  return Cyclotomic(field, c_[0]);
}

void Cyclotomic::adopt(const Cyclotomic& o) {
  if (o.field_ == nullptr || field_ == o.field_) return;
  *this = bound_to(*o.field_);
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  adopt(o);
  if (o.field_ == nullptr) {
    c_[0] += o.c_[0];
  } else {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  }
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  adopt(o);
  if (o.field_ == nullptr) {
    c_[0] -= o.c_[0];
  } else {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  }
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (o.field_ == nullptr) {
    const mpq_class s = o.c_[0];
    for (auto& c : c_) c *= s;
    return *this;
  }
  if (field_ == nullptr) {
    const mpq_class s = c_[0];
    field_ = o.field_;
    c_ = o.c_;
    for (auto& c : c_) c *= s;
    return *this;
  }
  adopt(o);
  const auto& f = *field_;
  const unsigned phi = f.phi;
  std::vector<mpq_class> prod(2 * phi - 1);
  for (unsigned i = 0; i < phi; ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (unsigned j = 0; j < phi; ++j) {
      if (sgn(o.c_[j]) == 0) continue;
      prod[i + j] += c_[i] * o.c_[j];
    }
  }
  for (unsigned e = phi; e < 2 * phi - 1; ++e) {
    if (sgn(prod[e]) == 0) continue;
    const auto& red = f.reduce[e];
    for (unsigned i = 0; i < phi; ++i) {
      if (red[i] != 0) prod[i] += prod[e] * red[i];
    }
  }
  prod.resize(phi);
  c_ = std::move(prod);
  return *this;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw Error(Errc::Singular, "inverse of zero in a cyclotomic field");
  if (field_ == nullptr) {
    Cyclotomic r;
    r.c_[0] = 1 / c_[0];
    return r;
  }
  // Solve (multiplication-by-this) * y = e_0 over Q.
  const auto& f = *field_;
  const unsigned n = f.phi;
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + 1));
  for (unsigned col = 0; col < n; ++col) {
    Cyclotomic prod = *this * Cyclotomic::zeta(f, col);
    for (unsigned row = 0; row < n; ++row) a[row][col] = prod.c_[row];
  }
  a[0][n] = 1;
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = col;
    while (piv < n && sgn(a[piv][col]) == 0) ++piv;
    if (piv == n) throw Error(Errc::Internal, "cyclotomic multiplication matrix is singular");
    std::swap(a[piv], a[col]);
    const mpq_class inv = 1 / a[col][col];
    for (unsigned j = col; j <= n; ++j) a[col][j] *= inv;
    for (unsigned row = 0; row < n; ++row) {
      if (row == col || sgn(a[row][col]) == 0) continue;
      const mpq_class factor = a[row][col];
      for (unsigned j = col; j <= n; ++j) a[row][j] -= factor * a[col][j];
    }
  }
  std::vector<mpq_class> y(n);
  for (unsigned i = 0; i < n; ++i) y[i] = a[i][n];
  return Cyclotomic(f, std::move(y));
}

std::string Cyclotomic::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ", ";
    out += format_rational(c_[i]);
  }
  return out + "]";
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.field_ == b.field_) return a.c_ == b.c_;
  if (a.field_ == nullptr) return a.bound_to(*b.field_).c_ == b.c_;
  if (b.field_ == nullptr) return a.c_ == b.bound_to(*a.field_).c_;
  throw Error(Errc::Precondition, "comparing elements of different cyclotomic fields");
}

}  // namespace kcomm
