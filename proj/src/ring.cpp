#include "kcomm/ring.hpp"

#include <charconv>
#include <numeric>

namespace kcomm {

namespace {

unsigned parse_unsigned(const std::string& text, const std::string& what) {
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(Errc::Parse, "bad " + what + " '" + text + "'");
  }
  return value;
}

std::string trim(const std::string& s) {
  auto first = s.find_first_not_of(" \t\n");
  if (first == std::string::npos) return {};
  auto last = s.find_last_not_of(" \t\n");
  return s.substr(first, last - first + 1);
}

std::uint32_t smallest_primitive_root(std::uint32_t p) {
  std::vector<std::uint32_t> factors;
  std::uint32_t n = p - 1;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) factors.push_back(n);
  for (std::uint32_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : factors) {
      if (scalar_pow(PrimeField(g, p), (p - 1) / q).is_one()) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;  // p = 2
}

template <class F>
void check_root(const F& omega, unsigned k, const F& one) {
  F sum = F(0);
  F pw = one;
  for (unsigned i = 0; i < k; ++i) {
    sum += pw;
    pw *= omega;
  }
  if (pw != one || omega == one || sum != F(0)) {
    throw Error(Errc::Internal, "constructed omega violates the root-of-unity invariants");
  }
}

mpq_class random_rational(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> num(-bound, bound), den(1, bound);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

RingSpec RingSpec::parse(const std::string& raw) {
  std::string text = trim(raw);
  RingSpec spec;
  if (text == "Q") return spec;
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  if (colon == std::string::npos) throw Error(Errc::Parse, "unknown ring '" + raw + "'");
  std::string tail = text.substr(colon + 1);
  if (head == "Fp") {
    spec.kind = RingKind::PrimeField;
    spec.param = parse_unsigned(tail, "prime");
    if (!is_prime(spec.param)) {
      throw Error(Errc::Precondition, "Fp modulus " + tail + " is not prime");
    }
  } else if (head == "cyclo") {
    spec.kind = RingKind::Cyclotomic;
    spec.param = parse_unsigned(tail, "cyclotomic index");
    if (spec.param == 0) throw Error(Errc::Precondition, "cyclotomic index must be positive");
  } else {
    throw Error(Errc::Parse, "unknown ring '" + raw + "'");
  }
  return spec;
}

std::string RingSpec::str() const {
  switch (kind) {
    case RingKind::Rationals: return "Q";
    case RingKind::PrimeField: return "Fp:" + std::to_string(param);
    case RingKind::Cyclotomic: return "cyclo:" + std::to_string(param);
  }
  return "?";
}

template <class F>
const F& RingCtx<F>::omega() const {
  if (!has_root_) throw Error(Errc::NoRootOfUnity, "context was built without omega");
  return omega_;
}

template <class F>
const F& RingCtx<F>::omega_inv() const {
  if (!has_root_) throw Error(Errc::NoRootOfUnity, "context was built without omega");
  return omega_inv_;
}

template <class F>
const F& RingCtx<F>::k_inv() const {
  if (!has_root_) throw Error(Errc::KNotInvertible, "context was built without 1/k");
  return k_inv_;
}

// ------------------------------------------------------------------ Q

template <>
Rational RingCtx<Rational>::from_int(long v) const { return Rational(v); }
template <>
Rational RingCtx<Rational>::bind(const Rational& x) const { return x; }
template <>
Rational RingCtx<Rational>::parse(const std::string& text) const {
  return Rational(parse_rational(text));
}
template <>
std::string RingCtx<Rational>::format(const Rational& x) const { return format_rational(x.value()); }
template <>
Rational RingCtx<Rational>::random(std::mt19937_64& rng, int bound) const {
  return Rational(random_rational(rng, bound));
}

template <>
RingCtx<Rational> make_ring<Rational>(const RingSpec& spec, unsigned k, bool require_root) {
  if (spec.kind != RingKind::Rationals) throw Error(Errc::Precondition, "ring is not Q");
  if (k < 2) throw Error(Errc::Precondition, "k must be at least 2");
  RingCtx<Rational> ctx;
  ctx.spec_ = spec;
  ctx.k_ = k;
  if (k != 2) {
    if (require_root) {
      throw Error(Errc::NoRootOfUnity, "Q has no primitive k-th root of unity for k=" +
                                           std::to_string(k));
    }
    return ctx;
  }
  ctx.omega_ = Rational(-1);
  ctx.omega_inv_ = Rational(-1);
  ctx.k_inv_ = Rational(1, 2);
  check_root(ctx.omega_, k, Rational(1));
  ctx.has_root_ = true;
  return ctx;
}

// ------------------------------------------------------------------ F_p

template <>
PrimeField RingCtx<PrimeField>::from_int(long v) const { return PrimeField(v, spec_.param); }
template <>
PrimeField RingCtx<PrimeField>::bind(const PrimeField& x) const {
  if (x.modulus() == spec_.param) return x;
  if (x.modulus() != 0) throw Error(Errc::Precondition, "element belongs to a different F_p");
  return PrimeField(x.residue(), spec_.param);
}
template <>
PrimeField RingCtx<PrimeField>::parse(const std::string& text) const {
  mpq_class q = parse_rational(text);
  mpz_class p(spec_.param);
  mpz_class num = q.get_num() % p, den = q.get_den() % p;
  if (den == 0) throw Error(Errc::Parse, "denominator divisible by p in '" + text + "'");
  return PrimeField(num.get_si(), spec_.param) / PrimeField(den.get_si(), spec_.param);
}
template <>
std::string RingCtx<PrimeField>::format(const PrimeField& x) const {
  return std::to_string(bind(x).residue());
}
template <>
PrimeField RingCtx<PrimeField>::random(std::mt19937_64& rng, int) const {
  std::uniform_int_distribution<long> dist(0, static_cast<long>(spec_.param) - 1);
  return PrimeField(dist(rng), spec_.param);
}

template <>
RingCtx<PrimeField> make_ring<PrimeField>(const RingSpec& spec, unsigned k, bool require_root) {
  if (spec.kind != RingKind::PrimeField) throw Error(Errc::Precondition, "ring is not F_p");
  if (k < 2) throw Error(Errc::Precondition, "k must be at least 2");
  const std::uint32_t p = spec.param;
  if (!is_prime(p)) throw Error(Errc::Precondition, "F_p modulus is not prime");
  RingCtx<PrimeField> ctx;
  ctx.spec_ = spec;
  ctx.k_ = k;
  if (k % p == 0) {
    if (!require_root) return ctx;
    throw Error(Errc::KNotInvertible, "p=" + std::to_string(p) + " divides k=" + std::to_string(k));
  }
  if ((p - 1) % k != 0) {
    if (!require_root) return ctx;
    throw Error(Errc::NoRootOfUnity, "k=" + std::to_string(k) + " does not divide p-1=" +
                                         std::to_string(p - 1));
  }
  PrimeField g(smallest_primitive_root(p), p);
  ctx.omega_ = scalar_pow(g, (p - 1) / k);
  ctx.omega_inv_ = ctx.omega_.inverse();
  ctx.k_inv_ = PrimeField(k, p).inverse();
  check_root(ctx.omega_, k, PrimeField(1, p));
  ctx.has_root_ = true;
  return ctx;
}

// ------------------------------------------------------------------ Q(zeta_m)

template <>
Cyclotomic RingCtx<Cyclotomic>::from_int(long v) const { return Cyclotomic(*field_, mpq_class(v)); }
template <>
Cyclotomic RingCtx<Cyclotomic>::bind(const Cyclotomic& x) const { return x.bound_to(*field_); }
template <>
Cyclotomic RingCtx<Cyclotomic>::parse(const std::string& raw) const {
  std::string text = trim(raw);
  if (text.empty() || text.front() != '[') return Cyclotomic(*field_, parse_rational(text));
  if (text.back() != ']') throw Error(Errc::Parse, "unterminated coefficient list '" + raw + "'");
  std::vector<mpq_class> coeffs;
  std::string body = text.substr(1, text.size() - 2);
  std::size_t start = 0;
  while (start <= body.size()) {
    auto comma = body.find(',', start);
    if (comma == std::string::npos) comma = body.size();
    std::string item = trim(body.substr(start, comma - start));
    if (item.empty() && coeffs.empty() && comma == body.size()) break;
    coeffs.push_back(parse_rational(item));
    start = comma + 1;
  }
  if (coeffs.size() != field_->phi) {
    throw Error(Errc::Parse, "expected " + std::to_string(field_->phi) + " coefficients in '" +
                                 raw + "'");
  }
  return Cyclotomic(*field_, std::move(coeffs));
}
template <>
std::string RingCtx<Cyclotomic>::format(const Cyclotomic& x) const { return bind(x).str(); }
template <>
Cyclotomic RingCtx<Cyclotomic>::random(std::mt19937_64& rng, int bound) const {
  std::vector<mpq_class> coeffs(field_->phi);
  for (auto& c : coeffs) c = random_rational(rng, bound);
  return Cyclotomic(*field_, std::move(coeffs));
}

template <>
RingCtx<Cyclotomic> make_ring<Cyclotomic>(const RingSpec& spec, unsigned k, bool require_root) {
  if (spec.kind != RingKind::Cyclotomic) throw Error(Errc::Precondition, "ring is not cyclotomic");
  if (k < 2) throw Error(Errc::Precondition, "k must be at least 2");
  RingCtx<Cyclotomic> ctx;
  ctx.spec_ = spec;
  ctx.k_ = k;
  ctx.field_ = &cyclotomic_field(spec.param);
  if (spec.param % k != 0) {
    if (!require_root) return ctx;
    throw Error(Errc::NoRootOfUnity, "k=" + std::to_string(k) + " does not divide m=" +
                                         std::to_string(spec.param));
  }
  const long step = static_cast<long>(spec.param / k);
  ctx.omega_ = Cyclotomic::zeta(*ctx.field_, step);
  ctx.omega_inv_ = Cyclotomic::zeta(*ctx.field_, -step);
  ctx.k_inv_ = Cyclotomic(*ctx.field_, mpq_class(1, k));
  check_root(ctx.omega_, k, ctx.one());
  ctx.has_root_ = true;
  return ctx;
}

template <class F>
F RingCtx<F>::random_unit(std::mt19937_64& rng, int bound) const {
  for (;;) {
    F x = random(rng, bound);
    if (!x.is_zero()) return x;
  }
}

template class RingCtx<Rational>;
template class RingCtx<PrimeField>;
template class RingCtx<Cyclotomic>;

// ------------------------------------------------------------------ roots

template <class F>
F kth_root(const F& a, const RingCtx<F>& ctx, unsigned branch) {
  if (branch >= ctx.k()) throw Error(Errc::Precondition, "branch must be below k");
  if constexpr (!std::is_same_v<F, Cyclotomic>) {
    if (ctx.bind(a) == ctx.one()) return scalar_pow(ctx.omega(), branch);
    throw Error(Errc::RootNotInRing, "k-th roots are only extracted in cyclotomic rings");
  } else {
    const CyclotomicField& field = *ctx.bind(a).field();
    const long m = field.m;
    // Roots of unity in Q(zeta_m) form a cyclic group generated by zeta_m
    // (m even) or -zeta_m (m odd).
    const long order = (m % 2 == 0) ? m : 2 * m;
    const Cyclotomic gen =
        (m % 2 == 0) ? Cyclotomic::zeta(field, 1) : -Cyclotomic::zeta(field, 1);
    Cyclotomic pw = ctx.one();
    long e = -1;
    std::vector<Cyclotomic> powers;
    for (long i = 0; i < order; ++i) {
      powers.push_back(pw);
      if (e < 0 && pw == ctx.bind(a)) e = i;
      pw *= gen;
    }
    if (e < 0) throw Error(Errc::RootNotInRing, "argument is not a root of unity in the ring");
    const long k = ctx.k();
    for (long f = 0; f < order; ++f) {
      if ((k * f - e) % order == 0) {
        return powers[static_cast<std::size_t>(f)] * scalar_pow(ctx.omega(), branch);
      }
    }
    throw Error(Errc::RootNotInRing, "no k-th root in Q(zeta_" + std::to_string(m) +
                                         "); enlarge the cyclotomic index");
  }
}

template Rational kth_root(const Rational&, const RingCtx<Rational>&, unsigned);
template PrimeField kth_root(const PrimeField&, const RingCtx<PrimeField>&, unsigned);
template Cyclotomic kth_root(const Cyclotomic&, const RingCtx<Cyclotomic>&, unsigned);

}  // namespace kcomm
