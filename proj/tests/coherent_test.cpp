#include <doctest.h>

#include "kcomm/coherent.hpp"
#include "test_util.hpp"

using namespace kcomm;
using namespace kcomm::testing;

namespace {

template <class F>
PeriodicSeq<F> seq(const RingCtx<F>& ctx, std::initializer_list<const char*> pre,
                   std::initializer_list<const char*> per) {
  std::vector<F> a, b;
  for (const char* s : pre) a.push_back(ctx.parse(s));
  for (const char* s : per) b.push_back(ctx.parse(s));
  return PeriodicSeq<F>(std::move(a), std::move(b));
}

/// Normalized expansion (I, I, D_2, ..., D_{len-1}) with random periodic terms.
template <class F>
DiagSeq<F> random_normalized(const RingCtx<F>& ctx, std::mt19937_64& rng, std::size_t len) {
  DiagSeq<F> d = DiagSeq<F>::unit_superdiag(ctx);
  for (std::size_t i = 2; i < len; ++i) d.terms.push_back(random_seq(ctx, rng));
  return d;
}

template <class F>
DiagSeq<F> random_diagseq(const RingCtx<F>& ctx, std::mt19937_64& rng, std::size_t len) {
  DiagSeq<F> d;
  for (std::size_t i = 0; i < len; ++i) d.terms.push_back(random_seq(ctx, rng));
  return d;
}

/// Superdiagonal sequence that sometimes contains zeros.
template <class F>
PeriodicSeq<F> random_superdiag(const RingCtx<F>& ctx, std::mt19937_64& rng) {
  PeriodicSeq<F> s = random_seq(ctx, rng, 3, 3, true);
  if (rng() % 3 == 0) s.prefix.insert(s.prefix.begin() + static_cast<long>(rng() % (s.prefix.size() + 1)), ctx.zero());
  return s;
}

}  // namespace

TEST_CASE("shiftS drops leading entries") {
  auto q = q_ring();
  CHECK(shiftS(seq(q, {"1", "2"}, {"3"})) == seq(q, {"2"}, {"3"}));
  CHECK(shiftS(seq(q, {}, {"1", "2"})) == seq(q, {}, {"2", "1"}));
  CHECK(shiftS(seq(q, {"5"}, {"1", "2", "3"}), 3) == seq(q, {}, {"3", "1", "2"}));
}

TEST_CASE("power_seq of I + J is binomial") {
  auto q = q_ring();
  auto p = DiagSeq<Rational>::unit_superdiag(q);
  auto c = [&](const char* s) { return PeriodicSeq<Rational>::constant(q.parse(s)); };
  CHECK(power_seq(p, 2) == DiagSeq<Rational>{{c("1"), c("2"), c("1")}});
  CHECK(power_seq(p, 3) == DiagSeq<Rational>{{c("1"), c("3"), c("3"), c("1")}});
  CHECK(power_seq(p, 1) == p);
}

TEST_CASE("seq_product matches the exchange rule on a small case") {
  auto q = q_ring();
  // (D J)(E J) = D S(E) J^2.
  DiagSeq<Rational> a{{PeriodicSeq<Rational>::constant(Rational(0)), seq(q, {"2"}, {"1"})}};
  DiagSeq<Rational> b{{PeriodicSeq<Rational>::constant(Rational(0)), seq(q, {"3", "5"}, {"7"})}};
  auto r = seq_product(a, b);
  REQUIRE(r.terms.size() == 3);
  CHECK(r.terms[2] == seq(q, {"10"}, {"7"}));
  CHECK(r.terms[0] == PeriodicSeq<Rational>::constant(Rational(0)));
}

TEST_CASE("coherent_solve rejects a nonzero entry over a vanishing J power") {
  auto q = q_ring();
  auto a = mat(q, {{"1", "0", "1"}, {"0", "1", "0"}, {"0", "0", "1"}});
  try {
    coherent_solve(q, a, 2);
    FAIL("expected NotCoherent");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotCoherent);
  }
  CHECK_THROWS_AS(coherent_solve(q, mat(q, {{"2", "0"}, {"0", "2"}}), 1), Error);
}

TEST_CASE("coherent_solve on I + J gives the identity expansion") {
  auto q = q_ring();
  auto j = PeriodicSeq<Rational>::constant(q.one());
  auto d = coherent_solve(q, realize(q, DiagSeq<Rational>::unit_superdiag(q), j, 6), 5);
  for (std::size_t i = 2; i < d.terms.size(); ++i) CHECK(d.terms[i] == PeriodicSeq<Rational>::constant(Rational(0)));
}

TEST_CASE_TEMPLATE("coherent_solve inverts realize", F, Rational, PrimeField, Cyclotomic) {
  std::mt19937_64 rng(11);
  RingCtx<F> ctx = [] {
    if constexpr (std::is_same_v<F, Rational>) return q_ring();
    else if constexpr (std::is_same_v<F, PrimeField>) return fp_ring(13, 3);
    else return cyclo_ring(12, 4);
  }();
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 23;
    auto p = random_normalized(ctx, rng, 2 + rng() % 4);
    auto j = random_seq(ctx, rng, 3, 3, true);
    auto a = realize(ctx, p, j, n);
    auto d = coherent_solve(ctx, a, n - 1);
    CHECK(same(realize(ctx, d, j, n), a));
    for (std::size_t i = 2; i < d.terms.size(); ++i) {
      for (std::size_t s = 0; s + i < n; ++s) CHECK(d.terms[i].at(s) == ctx.bind(p.term(i).at(s)));
    }
  }
}

TEST_CASE("seq_product is associative and realizes the matrix product") {
  auto ctx = fp_ring(31, 5);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = random_diagseq(ctx, rng, 1 + rng() % 3);
    auto b = random_diagseq(ctx, rng, 1 + rng() % 3);
    auto c = random_diagseq(ctx, rng, 1 + rng() % 3);
    CHECK(seq_product(seq_product(a, b), c) == seq_product(a, seq_product(b, c)));
    auto j = random_superdiag(ctx, rng);
    const std::size_t n = 10;
    CHECK(same(realize(ctx, seq_product(a, b), j, n), mul(realize(ctx, a, j, n), realize(ctx, b, j, n))));
  }
}

TEST_CASE_TEMPLATE("power_seq matches the matrix power and stays coherent", F, Rational, PrimeField,
                   Cyclotomic) {
  std::mt19937_64 rng(23);
  RingCtx<F> ctx = [] {
    if constexpr (std::is_same_v<F, Rational>) return q_ring();
    else if constexpr (std::is_same_v<F, PrimeField>) return fp_ring(101, 4);
    else return cyclo_ring(6, 3);
  }();
  const std::size_t n = 12;
  for (int trial = 0; trial < 25; ++trial) {
    auto p = random_normalized(ctx, rng, 2 + rng() % 3);
    auto j = random_superdiag(ctx, rng);
    auto a = realize(ctx, p, j, n);
    for (unsigned l : {2u, 3u, 5u}) {
      auto pl = power_seq(p, l);
      CHECK(pl.terms[1] == PeriodicSeq<F>::constant(ctx.from_int(l)));
      auto al = power(a, l);
      CHECK(same(realize(ctx, pl, j, n), al));
      CHECK_NOTHROW(coherent_solve(ctx, al, n - 1));
    }
  }
}
