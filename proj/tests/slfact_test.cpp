#include <doctest.h>

#include "kcomm/slfact.hpp"
#include "test_util.hpp"

using namespace kcomm;
using namespace kcomm::testing;

namespace {

/// Random determinant-one matrix: product of random unit lower and upper factors,
/// conjugated by a random invertible matrix.
template <class F>
Mat<F> random_sl(const RingCtx<F>& ctx, Index n, std::mt19937_64& rng) {
  Mat<F> l = random_unitriangular(ctx, n, rng);
  Mat<F> u = random_unitriangular(ctx, n, rng);
  Mat<F> h = random_invertible(ctx, n, rng);
  return conjugate(mul(Mat<F>(l.transpose()), u), h);
}

template <class F>
F trace2(const Mat<F>& m) {
  return m(0, 0) + m(1, 1);
}

template <class F>
void check_cert(const Certificate<F>& c, const Mat<F>& a) {
  auto report = verify_certificate(c, dense_oracle(c.ctx, a), 0);
  CHECK(report.passed());
  if (const auto* f = report.failure()) MESSAGE(f->name << ": " << f->detail);
  for (const auto& g : generator_windows(c, static_cast<std::size_t>(a.rows()))) CHECK(order_divides(g, c.k()));
}

}  // namespace

TEST_CASE("j_block worked example") {
  auto c4 = cyclo_ring(4, 4);
  auto jb = j_block(c4, c4.from_int(2), c4.omega());
  CHECK(same(jb.j1, mat(c4, {{"0", "2"}, {"-1/2", "0"}})));
  CHECK(same(jb.j2, mat(c4, {{"0", "-1"}, {"1", "0"}})));
  CHECK(same(mul(jb.j1, jb.j2), mat(c4, {{"2", "0"}, {"0", "1/2"}})));
  CHECK(is_identity(power(jb.j1, 4)));
  CHECK(same(power(jb.j1, 2), mat(c4, {{"-1", "0"}, {"0", "-1"}})));

  auto c3 = cyclo_ring(3, 3);
  CHECK(c3.omega() + c3.omega_inv() == c3.from_int(-1));
  CHECK_THROWS_AS(j_block(c4, c4.from_int(-1), c4.omega()), Error);
  CHECK_THROWS_AS(j_block(c4, c4.from_int(0), c4.omega()), Error);
  CHECK_THROWS_AS(j_block(c4, c4.from_int(2), c4.one()), Error);
}

TEST_CASE("printed j2 entry breaks the determinant") {
  auto c3 = cyclo_ring(3, 3);
  auto printed = j_block(c3, c3.from_int(2), c3.omega(), true);
  CHECK(determinant(printed.j2) != c3.one());
  CHECK(!same(mul(printed.j1, printed.j2), mat(c3, {{"2", "0"}, {"0", "1/2"}})));
}

TEST_CASE("j_block over Q from a rational trace") {
  auto q = q_ring();
  std::mt19937_64 rng(15);
  // theta + theta^-1 is -1, 0, 1 for k = 3, 4, 6.
  for (auto [k, t] : {std::pair{3u, -1L}, std::pair{4u, 0L}, std::pair{6u, 1L}}) {
    for (int i = 0; i < 50; ++i) {
      Rational a = q.random_unit(rng);
      if (a == q.one() || a == -q.one()) continue;
      auto jb = j_block_trace(q, a, q.from_int(t));
      CHECK(determinant(jb.j1) == q.one());
      CHECK(determinant(jb.j2) == q.one());
      CHECK(is_identity(power(jb.j1, k)));
      CHECK(is_identity(power(jb.j2, k)));
    }
  }
}

TEST_CASE("j_block identities over random parameters") {
  std::mt19937_64 rng(12);
  for (const auto& ctx : {cyclo_ring(3, 3), cyclo_ring(4, 4), cyclo_ring(5, 5), cyclo_ring(6, 6)}) {
    using F = Cyclotomic;
    for (int t = 0; t < 200; ++t) {
      F a = ctx.random_unit(rng);
      if (a == ctx.one() || a == -ctx.one()) continue;
      unsigned e = 1 + static_cast<unsigned>(rng() % (ctx.k() - 1));
      F theta = scalar_pow(ctx.omega(), e);
      if (theta == -ctx.one()) continue;
      auto jb = j_block(ctx, a, theta);
      const F tr = theta + theta.inverse();
      CHECK(trace2(jb.j1) == tr);
      CHECK(trace2(jb.j2) == tr);
      CHECK(determinant(jb.j1) == ctx.one());
      CHECK(determinant(jb.j2) == ctx.one());
      Mat<F> d = identity(ctx, 2);
      d(0, 0) = a;
      d(1, 1) = a.inverse();
      CHECK(same(mul(jb.j1, jb.j2), d));
      CHECK(order_divides(jb.j1, ctx.k()));
      CHECK(order_divides(jb.j2, ctx.k()));
    }
  }
}

TEST_CASE("scalar_split parity displays") {
  auto c8 = cyclo_ring(8, 4);
  auto s = scalar_split(c8, c8.from_int(-1), 2);
  CHECK(same(s.f, mat(c8, {{"-1", "0"}, {"0", "-1"}})));
  CHECK(is_identity(s.g));
  for (unsigned k : {3u, 4u, 6u}) {
    for (std::size_t n = 1; n <= 8; ++n) {
      auto ctx = cyclo_ring(static_cast<unsigned>(std::lcm<std::size_t>(n, k)), k);
      const Cyclotomic alpha = Cyclotomic::zeta(*ctx.one().field(), static_cast<long>(ctx.one().field()->m / n));
      auto sp = scalar_split(ctx, alpha, n);
      CHECK(same(mul(sp.f, sp.g), Mat<Cyclotomic>(identity(ctx, static_cast<Index>(n)) * alpha)));
      // Independent form of the displays: f = diag(a, a^-1, a^3, a^-3, ...), g shifted by one.
      for (std::size_t i = 0; i < n; ++i) {
        long fe = 0, ge = 0;
        if (i + 1 < n || n % 2 == 0) fe = i % 2 == 0 ? static_cast<long>(i + 1) : -static_cast<long>(i);
        if (i > 0 && (i + 1 < n || n % 2 == 1)) ge = i % 2 == 1 ? static_cast<long>(i + 1) : -static_cast<long>(i);
        const Index d = static_cast<Index>(i);
        CHECK(sp.f(d, d) == scalar_pow(alpha, fe));
        CHECK(sp.g(d, d) == scalar_pow(alpha, ge));
      }
    }
  }
}

TEST_CASE("scalar_factor") {
  auto c8 = cyclo_ring(8, 4);
  auto minus = Mat<Cyclotomic>(identity(c8, 2) * c8.from_int(-1));
  auto c = scalar_factor(c8, c8.from_int(-1), 2);
  CHECK(c.word.size() == 10);
  check_cert(c, minus);

  auto c9 = cyclo_ring(9, 3);
  const auto z3 = Cyclotomic::zeta(*c9.one().field(), 3);
  auto c3 = scalar_factor(c9, z3, 3);
  CHECK(c3.word.size() == 6);
  check_cert(c3, Mat<Cyclotomic>(identity(c9, 3) * z3));

  auto c12 = cyclo_ring(12, 3);
  const auto i4 = Cyclotomic::zeta(*c12.one().field(), 3);
  auto c4 = scalar_factor(c12, i4, 4);
  CHECK(c4.word.size() == 6);
  check_cert(c4, Mat<Cyclotomic>(identity(c12, 4) * i4));

  auto ones = scalar_factor(c9, c9.one(), 3);
  CHECK(ones.word.size() == 6);
  check_cert(ones, identity(c9, 3));

  try {
    scalar_factor(cyclo_ring(4, 2), cyclo_ring(4, 2).from_int(-1), 2);
    FAIL("expected KTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::KTooSmall);
  }
  auto small = cyclo_ring(3, 3);
  try {
    scalar_factor(small, small.omega(), 3);
    FAIL("expected RootNotInRing");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RootNotInRing);
  }
}

TEST_CASE("sourour_lu_similarity examples") {
  auto q = q_ring();
  auto a = mat(q, {{"1", "2"}, {"3", "7"}});
  auto r = sourour_lu_similarity(q, a);
  CHECK(is_identity(r.p));
  CHECK(same(r.l, mat(q, {{"1", "0"}, {"3", "1"}})));
  CHECK(same(r.u, mat(q, {{"1", "2"}, {"0", "1"}})));

  auto rot = mat(q, {{"0", "1"}, {"-1", "0"}});
  auto rr = sourour_lu_similarity(q, rot);
  CHECK(same(mul(mul(rr.p, rot), inverse(rr.p)), mul(rr.l, rr.u)));
  CHECK(same(mul(rr.l, rr.u), mat(q, {{"1", "-2"}, {"1", "-1"}})));

  try {
    sourour_lu_similarity(q, mat(q, {{"-1", "0"}, {"0", "-1"}}));
    FAIL("expected ScalarInput");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ScalarInput);
  }
}

TEST_CASE_TEMPLATE("sourour postconditions on random inputs", F, Rational, Cyclotomic) {
  std::mt19937_64 rng(13);
  RingCtx<F> ctx;
  if constexpr (std::is_same_v<F, Rational>) ctx = q_ring();
  else ctx = cyclo_ring(3, 3);
  for (int t = 0; t < 30; ++t) {
    const Index n = 2 + static_cast<Index>(rng() % 4);
    auto a = random_sl(ctx, n, rng);
    if (is_scalar(a)) continue;
    auto r = sourour_lu_similarity(ctx, a);
    CHECK(same(mul(mul(r.p, a), inverse(r.p)), mul(r.l, r.u)));
    CHECK(is_unitriangular(r.u));
    CHECK(is_unitriangular(Mat<F>(r.l.transpose())));
  }
  // Unipotent and other special inputs still admit a similarity.
  auto jordan = mat(ctx, {{"1", "1", "0"}, {"0", "1", "0"}, {"0", "0", "1"}});
  auto rj = sourour_lu_similarity(ctx, jordan);
  CHECK(same(mul(mul(rj.p, jordan), inverse(rj.p)), mul(rj.l, rj.u)));
  auto perm = mat(ctx, {{"0", "0", "1"}, {"1", "0", "0"}, {"0", "1", "0"}});
  auto rp = sourour_lu_similarity(ctx, perm);
  CHECK(same(mul(mul(rp.p, perm), inverse(rp.p)), mul(rp.l, rp.u)));
}

TEST_CASE("factor_sl examples") {
  auto c3 = cyclo_ring(3, 3);
  auto id = factor_sl(c3, identity(c3, 3));
  CHECK(id.word.empty());
  check_cert(id, identity(c3, 3));

  auto a = mat(c3, {{"1", "2"}, {"3", "7"}});
  auto c = factor_sl(c3, a);
  CHECK(c.word.size() <= 6);
  CHECK(!c.exceeds_bound);
  check_cert(c, a);

  auto c8 = cyclo_ring(8, 4);
  auto minus = Mat<Cyclotomic>(identity(c8, 2) * c8.from_int(-1));
  auto cm = factor_sl(c8, minus);
  CHECK(cm.word.size() == 10);
  check_cert(cm, minus);

  CHECK_THROWS_AS(factor_sl(c3, mat(c3, {{"2", "0"}, {"0", "1"}})), Error);
}

TEST_CASE("factor_sl end to end on random matrices") {
  std::mt19937_64 rng(14);
  int fallback = 0;
  for (unsigned k : {3u, 4u}) {
    auto ctx = cyclo_ring(k, k);
    for (int t = 0; t < 15; ++t) {
      const Index n = 2 + static_cast<Index>(rng() % 3);
      auto a = random_sl(ctx, n, rng);
      if (is_scalar(a)) continue;
      auto c = factor_sl(ctx, a);
      check_cert(c, a);
      CHECK(c.word.size() <= 8 * k - 12);
      if (c.exceeds_bound) ++fallback;
      else CHECK(c.word.size() <= 4 * k - 6);
    }
  }
  MESSAGE("fallback certificates: " << fallback);
  // A nonscalar unipotent 2 x 2 matrix reaches a trivial factor.
  auto c3 = cyclo_ring(3, 3);
  auto u = mat(c3, {{"1", "5"}, {"0", "1"}});
  auto cu = factor_sl(c3, u);
  check_cert(cu, u);
  CHECK(cu.word.size() <= 6);
}
