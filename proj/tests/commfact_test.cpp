#include <doctest.h>

#include "kcomm/coherent.hpp"
#include "kcomm/commfact.hpp"
#include "test_util.hpp"

using namespace kcomm;
using namespace kcomm::testing;

namespace {

template <class F>
Oracle<F> ones_superdiag(const RingCtx<F>& ctx) {
  return superdiag_oracle(ctx, PeriodicSeq<F>::constant(ctx.one()));
}

template <class F>
Mat<F> random_unit_superdiag(const RingCtx<F>& ctx, Index n, std::mt19937_64& rng) {
  Mat<F> a = random_unitriangular(ctx, n, rng);
  for (Index i = 0; i + 1 < n; ++i) a(i, i + 1) = ctx.one();
  return a;
}

template <class F>
void check_finite(const Certificate<F>& c, const Mat<F>& a, std::size_t length) {
  CHECK(c.word.size() == length);
  CHECK(c.claimed_length == length);
  auto report = verify_certificate(c, dense_oracle(c.ctx, a), 0);
  CHECK(report.passed());
  if (const auto* f = report.failure()) MESSAGE(f->name << ": " << f->detail);
  const Index n = a.rows();
  for (const auto& g : generator_windows(c, static_cast<std::size_t>(n))) CHECK(order_divides(g, c.k()));
  CHECK(same(eval_word(c.ctx, c.word, generator_windows(c, static_cast<std::size_t>(n)), n), a));
}

}  // namespace

TEST_CASE("f_word shape") {
  CHECK(f_word(2) == CommutatorWord{{0, 1, 1, 1}});
  CHECK(f_word(4) == CommutatorWord{{0, 1, 1, 1}, {1, 1, 0, 2}, {0, 2, 1, 2}, {1, 2, 0, 3}, {0, 3, 1, 3}});
  for (unsigned k = 2; k <= 9; ++k) CHECK(f_word(k).size() == 2 * k - 3);
  CHECK_THROWS_AS(f_word(1), Error);
  CHECK(transpose_word(CommutatorWord{{0, 1, 1, 2}, {2, 3, 0, 4}}) == CommutatorWord{{0, 4, 2, 3}, {1, 2, 0, 1}});
}

TEST_CASE("eval_word trivial cases") {
  auto q = q_ring();
  CHECK(is_identity(eval_word(q, CommutatorWord{}, std::vector<Mat<Rational>>{}, 3)));
  std::mt19937_64 rng(1);
  auto x = random_invertible(q, 3, rng);
  CHECK(is_identity(eval_word(q, f_word(2), {x, x}, 3)));
  auto y = random_invertible(q, 3, rng);
  CHECK(same(eval_word(q, f_word(2), {x, y}, 3), commutator(x, y)));
  auto o = eval_word(q, f_word(3), std::vector<Oracle<Rational>>{dense_oracle(q, x), dense_oracle(q, y)});
  CHECK(same(window(o, 3), eval_word(q, f_word(3), {x, y}, 3)));
}

TEST_CASE("bc_pair worked examples") {
  auto q = q_ring();
  auto [b, c] = bc_pair(ones_superdiag(q));
  CHECK(same(window(b, 4), mat(q, {{"1", "0", "0", "0"}, {"0", "-1", "1/2", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "-1"}})));
  CHECK(same(window(c, 4), mat(q, {{"1", "1/2", "0", "0"}, {"0", "-1", "0", "0"}, {"0", "0", "1", "1/2"}, {"0", "0", "0", "-1"}})));

  auto f7 = fp_ring(7, 3);
  auto j = superdiag_oracle(f7, PeriodicSeq<PrimeField>::constant(f7.from_int(3)));
  auto w = window(bc_b(j), 8);
  for (Index p = 0; p + 1 < 8; ++p) CHECK(w(p, p + 1) == (p % 2 ? f7.one() : f7.zero()));
  for (Index p = 0; p < 8; ++p) CHECK(w(p, p) == (p % 2 ? f7.omega() : f7.one()));
}

TEST_CASE_TEMPLATE("bc_pair data: orders, displayed product, coherence, k-th power", F, Rational, PrimeField,
                   Cyclotomic) {
  std::mt19937_64 rng(3);
  std::vector<RingCtx<F>> rings;
  if constexpr (std::is_same_v<F, Rational>) rings = {q_ring()};
  else if constexpr (std::is_same_v<F, PrimeField>) rings = {fp_ring(7, 2), fp_ring(7, 3), fp_ring(7, 6)};
  else rings = {cyclo_ring(3, 3), cyclo_ring(4, 4), cyclo_ring(6, 6), cyclo_ring(4, 2)};
  for (const auto& ctx : rings) {
    for (int trial = 0; trial < 10; ++trial) {
      auto js = random_seq(ctx, rng);
      auto j = superdiag_oracle(ctx, js);
      auto [b, c] = bc_pair(j);
      for (std::size_t n = 1; n <= 9; ++n) {
        CHECK(order_divides(window(b, n), ctx.k()));
        CHECK(order_divides(window(c, n), ctx.k()));
      }
      // Expected BC = I + J / k + k^-2 sum a_{2i,2i+1} a_{2i+1,2i+2} E_{2i,2i+2} (1-based).
      const Index n = 10;
      Mat<F> expect = identity(ctx, n);
      for (Index p = 0; p + 1 < n; ++p) expect(p, p + 1) = ctx.k_inv() * js.at(static_cast<std::size_t>(p));
      for (Index p = 1; p + 2 < n; p += 2) {
        expect(p, p + 2) = ctx.k_inv() * ctx.k_inv() * js.at(static_cast<std::size_t>(p)) *
                           js.at(static_cast<std::size_t>(p + 1));
      }
      auto bc = product<F>({b, c});
      CHECK(same(window(bc, n), expect));
      auto bck = window(power(bc, static_cast<long>(ctx.k())), n);
      CHECK(same(jpart(bck), window(j, n)));
    }
    // With a nowhere-zero J the coherence data of BC is D_2 = sum E_{2i,2i}.
    auto jn = superdiag_oracle(ctx, random_seq(ctx, rng, 3, 3, true));
    auto [b, c] = bc_pair(jn);
    auto d = coherent_solve(product<F>({b, c}), 9, 12);
    REQUIRE(d.terms.size() >= 3);
    for (std::size_t p = 0; p + 2 < 12; ++p) CHECK(d.terms[2].at(p) == (p % 2 ? ctx.one() : ctx.zero()));
    for (std::size_t i = 3; i < d.terms.size(); ++i) {
      for (std::size_t p = 0; p + i < 12; ++p) CHECK(d.terms[i].at(p).is_zero());
    }
  }
}

TEST_CASE_TEMPLATE("telescoping identity (BC)^i = F_i C^(i-1) B^i C", F, PrimeField, Cyclotomic) {
  std::mt19937_64 rng(4);
  std::vector<RingCtx<F>> rings;
  if constexpr (std::is_same_v<F, PrimeField>) rings = {fp_ring(7, 2), fp_ring(7, 3), fp_ring(13, 4), fp_ring(7, 6)};
  else rings = {cyclo_ring(3, 3), cyclo_ring(4, 4), cyclo_ring(6, 6)};
  for (const auto& ctx : rings) {
    for (int trial = 0; trial < 5; ++trial) {
      auto [bo, co] = bc_pair(superdiag_oracle(ctx, random_seq(ctx, rng)));
      const Index n = 9;
      Mat<F> b = window(bo, n), c = window(co, n);
      for (unsigned i = 2; i <= ctx.k(); ++i) {
        Mat<F> lhs = power(mul(b, c), i);
        Mat<F> word = eval_word(ctx, f_word(i), {b, c}, n);
        CHECK(same(lhs, mul(mul(mul(word, power(c, i - 1)), power(b, i)), c)));
        if (i == ctx.k()) CHECK(same(lhs, word));
      }
    }
  }
}

TEST_CASE("conjugator_coherent examples") {
  auto q = q_ring();
  std::mt19937_64 rng(5);
  auto a = random_unitriangular(q, 5, rng);
  CHECK(is_identity(conjugator_coherent(q, a, a)));

  auto c3 = cyclo_ring(3, 3);
  auto ones = ones_superdiag(c3);
  auto [b, c] = bc_pair(ones);
  auto target = window(power(product<Cyclotomic>({b, c}), 3), 8);
  auto start = window(sum<Cyclotomic>({identity_oracle(c3), ones}), 8);
  auto x = conjugator_coherent(c3, start, target);
  CHECK(is_unitriangular(x));
  CHECK(same(conjugate(start, x), target));

  auto other = mat(q, {{"1", "2"}, {"0", "1"}});
  CHECK_THROWS_AS(conjugator_coherent(q, mat(q, {{"1", "1"}, {"0", "1"}}), other), Error);
}

TEST_CASE("conjugator_to_bidiagonal examples") {
  auto q = q_ring();
  auto a = mat(q, {{"1", "1", "5"}, {"0", "1", "1"}, {"0", "0", "1"}});
  auto x = conjugator_to_bidiagonal(q, a);
  CHECK(same(x, mat(q, {{"1", "0", "0"}, {"0", "1", "-5"}, {"0", "0", "1"}})));
  CHECK(same(mul(mul(inverse(x), a), x), mat(q, {{"1", "1", "0"}, {"0", "1", "1"}, {"0", "0", "1"}})));
  auto jb = mat(q, {{"1", "1", "0"}, {"0", "1", "1"}, {"0", "0", "1"}});
  CHECK(is_identity(conjugator_to_bidiagonal(q, jb)));

  auto c4 = cyclo_ring(4, 4);
  Mat<Cyclotomic> d = identity(c4, 4);
  d(0, 0) = c4.omega();
  d(2, 2) = c4.omega_inv();
  for (Index i = 0; i < 3; ++i) d(i, i + 1) = c4.one();
  d(0, 2) = c4.from_int(3);
  d(1, 3) = c4.from_int(-2);
  d(0, 3) = c4.omega();
  auto xd = conjugator_to_bidiagonal(c4, d);
  Mat<Cyclotomic> want = d;
  for (Index i = 0; i < 4; ++i) {
    for (Index j = i + 2; j < 4; ++j) want(i, j) = c4.zero();
  }
  CHECK(same(mul(mul(inverse(xd), d), xd), want));
}

TEST_CASE("factor_superdiag") {
  auto q = q_ring();
  auto c = factor_superdiag(q, identity(q, 4));
  check_finite(c, identity(q, 4), 1);
  auto a = mat(q, {{"1", "1", "0", "0"}, {"0", "1", "1", "0"}, {"0", "0", "1", "1"}, {"0", "0", "0", "1"}});
  check_finite(factor_superdiag(q, a), a, 1);
  CHECK_THROWS_AS(factor_superdiag(q, mat(q, {{"1", "1", "1"}, {"0", "1", "1"}, {"0", "0", "1"}})), Error);

  auto c3 = cyclo_ring(3, 3);
  auto target = unit_superdiag_oracle(c3, PeriodicSeq<Cyclotomic>::constant(c3.one()));
  auto inf = factor_superdiag(target);
  CHECK(inf.word.size() == 3);
  CHECK(verify_certificate(inf, target, 12).passed());
}

TEST_CASE("factor_unit_superdiag") {
  std::mt19937_64 rng(6);
  auto q = q_ring();
  auto jb = mat(q, {{"1", "1", "0"}, {"0", "1", "1"}, {"0", "0", "1"}});
  check_finite(factor_unit_superdiag(q, jb), jb, 1);
  for (int t = 0; t < 5; ++t) {
    auto a = random_unit_superdiag(q, 5, rng);
    check_finite(factor_unit_superdiag(q, a), a, 1);
  }
  auto f13 = fp_ring(13, 4);
  for (int t = 0; t < 5; ++t) {
    auto a = random_unit_superdiag(f13, 6, rng);
    check_finite(factor_unit_superdiag(f13, a), a, 5);
  }
}

TEST_CASE_TEMPLATE("factor_unitriangular on random finite matrices", F, Rational, PrimeField, Cyclotomic) {
  std::mt19937_64 rng(7);
  std::vector<RingCtx<F>> rings;
  if constexpr (std::is_same_v<F, Rational>) rings = {q_ring()};
  else if constexpr (std::is_same_v<F, PrimeField>) rings = {fp_ring(7, 2), fp_ring(7, 3), fp_ring(7, 6)};
  else rings = {cyclo_ring(2, 2), cyclo_ring(3, 3), cyclo_ring(4, 4), cyclo_ring(6, 6)};
  for (const auto& ctx : rings) {
    check_finite(factor_unitriangular(ctx, identity(ctx, 3)), identity(ctx, 3), 4 * ctx.k() - 6);
    for (Index n = 1; n <= 6; ++n) {
      auto a = random_unitriangular(ctx, n, rng);
      check_finite(factor_unitriangular(ctx, a), a, 4 * ctx.k() - 6);
    }
  }
}

TEST_CASE("factor_unitriangular on an infinite periodic input") {
  auto c3 = cyclo_ring(3, 3);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 4; ++t) {
    auto a = random_unitri_oracle(c3, rng, 2);
    auto c = factor_unitriangular(a);
    CHECK(c.word.size() == 6);
    CHECK(!c.size);
    CHECK(verify_certificate(c, a, 16).passed());
    // Truncation stability: every cut of the infinite certificate verifies on its own.
    for (std::size_t n = 1; n <= 10; ++n) CHECK(verify_certificate(finite_certificate(c, n), a, 0).passed());
  }
}

TEST_CASE("verify_certificate detects tampering") {
  auto q = q_ring();
  std::mt19937_64 rng(9);
  auto a = random_unitriangular(q, 4, rng);
  auto c = factor_unitriangular(q, a);
  auto target = dense_oracle(q, a);
  CHECK(verify_certificate(c, target, 0).passed());

  auto bad = c;
  Mat<Rational> g = window(bad.generators[0], 4);
  g(0, 1) += Rational(1);
  bad.generators[0] = dense_oracle(q, g);
  auto r = verify_certificate(bad, target, 0);
  CHECK(!r.passed());
  CHECK(!r.checks[1].passed);

  auto longer = c;
  longer.claimed_length = 4 * 2 - 5;
  auto rl = verify_certificate(longer, target, 0);
  REQUIRE(rl.failure() != nullptr);
  CHECK(rl.failure()->name == "length");

  auto wrong_target = a;
  wrong_target(0, 3) += Rational(1);
  auto rt = verify_certificate(c, dense_oracle(q, wrong_target), 0);
  REQUIRE(rt.failure() != nullptr);
  CHECK(rt.failure()->detail == "product mismatch at (1,4)");
}

TEST_CASE("conjugation and transposition covariance") {
  auto ctx = cyclo_ring(4, 4);
  std::mt19937_64 rng(10);
  for (int t = 0; t < 4; ++t) {
    auto a = random_unitriangular(ctx, 4, rng);
    auto c = factor_unitriangular(ctx, a);
    auto h = random_invertible(ctx, 4, rng);
    auto ch = conjugate_certificate(c, dense_oracle(ctx, h));
    CHECK(verify_certificate(ch, dense_oracle(ctx, conjugate(a, h)), 0).passed());
    auto ct = transpose_certificate(c);
    CHECK(verify_certificate(ct, dense_oracle(ctx, Mat<Cyclotomic>(a.transpose())), 0).passed());
  }
}
