#include "kcomm/slfact.hpp"

#include <random>

namespace kcomm {

template <class F>
JBlocks<F> j_block_trace(const RingCtx<F>& ctx, const F& a_in, const F& t_in, bool printed_j2) {
  const F a = ctx.bind(a_in), t = ctx.bind(t_in);
  const F one = ctx.one();
  if (a.is_zero() || a == one || a == -one) throw Error(Errc::DegenerateBlock, "block eigenvalue must avoid 0, 1, -1");
  const F s = t / (a + one);
  const F as = a * s;
  JBlocks<F> out{Mat<F>(2, 2), Mat<F>(2, 2)};
  out.j1 << as, a - as * as, -a.inverse(), s;
  out.j2 << as, printed_j2 ? a * as * as - one : a * s * s - one, one, s;
  return out;
}

template <class F>
JBlocks<F> j_block(const RingCtx<F>& ctx, const F& a, const F& theta_in, bool printed_j2) {
  const F theta = ctx.bind(theta_in);
  const F one = ctx.one();
  if (theta == one || theta == -one || scalar_pow(theta, ctx.k()) != one) {
    throw Error(Errc::DegenerateBlock, "theta must be a k-th root of unity other than 1 and -1");
  }
  return j_block_trace(ctx, a, theta + theta.inverse(), printed_j2);
}

template <class F>
ScalarSplit<F> scalar_split(const RingCtx<F>& ctx, const F& alpha_in, std::size_t n) {
  const F alpha = ctx.bind(alpha_in);
  if (n == 0) throw Error(Errc::Precondition, "size must be positive");
  if (scalar_pow(alpha, static_cast<long>(n)) != ctx.one()) {
    throw Error(Errc::Precondition, "alpha^n must be 1");
  }
  ScalarSplit<F> out{identity(ctx, static_cast<Index>(n)), identity(ctx, static_cast<Index>(n)), {}, {}};
  auto place = [&](Mat<F>& m, std::vector<int>& blocks, Index& pos, long e) {
    m(pos, pos) = scalar_pow(alpha, e);
    m(pos + 1, pos + 1) = scalar_pow(alpha, -e);
    blocks.push_back(2);
    pos += 2;
  };
  Index fp = 0, gp = 0;
  const long last = static_cast<long>(n);
  // f pairs the odd exponents, g the even ones; lone ones fill the gaps.
  const long f_top = n % 2 == 0 ? last - 1 : last - 2;
  for (long e = 1; e <= f_top; e += 2) place(out.f, out.f_blocks, fp, e);
  if (n % 2 == 1) out.f_blocks.push_back(1);
  out.g_blocks.push_back(1);
  gp = 1;
  const long g_top = n % 2 == 0 ? last - 2 : last - 1;
  for (long e = 2; e <= g_top; e += 2) place(out.g, out.g_blocks, gp, e);
  if (n % 2 == 0) out.g_blocks.push_back(1);
  return out;
}

namespace {

/// Order-k pair (J1, J2) with (J1 J2)^k equal to the diagonal matrix d.
template <class F>
std::pair<Mat<F>, Mat<F>> diagonal_root_pair(const RingCtx<F>& ctx, const Mat<F>& d, const std::vector<int>& blocks) {
  const Index n = d.rows();
  Mat<F> j1 = identity(ctx, n), j2 = identity(ctx, n);
  Index pos = 0;
  for (int size : blocks) {
    if (size == 2) {
      const F a = d(pos, pos);
      std::optional<F> root;
      for (unsigned branch = 0; branch < ctx.k() && !root; ++branch) {
        F b = kth_root(a, ctx, branch);
        if (b != ctx.one() && b != -ctx.one()) root = b;
      }
      if (!root) throw Error(Errc::RootNotInRing, "no k-th root outside {1, -1}");
      auto jb = j_block(ctx, *root, ctx.omega());
      j1.block(pos, pos, 2, 2) = jb.j1;
      j2.block(pos, pos, 2, 2) = jb.j2;
    }
    pos += size;
  }
  return {j1, j2};
}

template <class F>
Certificate<F> dense_certificate(const RingCtx<F>& ctx, const std::vector<Mat<F>>& gens, CommutatorWord word,
                                 Producer producer) {
  std::vector<Oracle<F>> os;
  for (const auto& g : gens) os.push_back(dense_oracle(ctx, g));
  const auto n = gens.empty() ? std::size_t{0} : static_cast<std::size_t>(gens.front().rows());
  return make_certificate(ctx, std::move(os), std::move(word), producer, n);
}

}  // namespace

template <class F>
Certificate<F> scalar_factor(const RingCtx<F>& ctx, const F& alpha, std::size_t n) {
  if (ctx.k() < 3) throw Error(Errc::KTooSmall, "k=2 scalar case out of scope");
  const auto split = scalar_split(ctx, alpha, n);
  const auto [f1, f2] = diagonal_root_pair(ctx, split.f, split.f_blocks);
  const auto [g1, g2] = diagonal_root_pair(ctx, split.g, split.g_blocks);
  CommutatorWord word = f_word(ctx.k(), 0, 1);
  const auto tail = f_word(ctx.k(), 2, 3);
  word.insert(word.end(), tail.begin(), tail.end());
  auto cert = dense_certificate(ctx, {f1, f2, g1, g2}, std::move(word), Producer::SpecialLinear);
  cert.size = n;
  return cert;
}

template <class F>
bool is_regular_unitriangular(const Mat<F>& u) {
  if (!is_unitriangular(u)) return false;
  for (Index i = 0; i + 1 < u.rows(); ++i) {
    if (u(i, i + 1).is_zero()) return false;
  }
  return true;
}

namespace {

/// Unit LU factors when every leading principal minor of a is 1.
template <class F>
std::optional<LUSimilarity<F>> doolittle(const RingCtx<F>& ctx, const Mat<F>& a) {
  const Index n = a.rows();
  Mat<F> l = identity(ctx, n), u = a;
  for (Index c = 0; c < n; ++c) {
    if (!u(c, c).is_one()) return std::nullopt;
    for (Index r = c + 1; r < n; ++r) {
      const F f = u(r, c);
      if (f.is_zero()) continue;
      l(r, c) = f;
      for (Index j = c; j < n; ++j) u(r, j) -= f * u(c, j);
    }
  }
  return LUSimilarity<F>{identity(ctx, n), l, u};
}

template <class F>
class LUSearch {
 public:
  LUSearch(const RingCtx<F>& ctx, std::uint64_t seed) : ctx_(ctx), rng_(seed) {}

  /// randomize = false: plain LU first, then unit vectors and pair sums.
  std::optional<LUSimilarity<F>> run(const Mat<F>& b, bool randomize, int& budget) {
    const Index m = b.rows();
    if (is_identity(b)) return LUSimilarity<F>{identity(ctx_, m), identity(ctx_, m), identity(ctx_, m)};
    if (is_scalar(b)) return std::nullopt;
    if (!randomize) {
      if (auto d = doolittle(ctx_, b)) return d;
    }
    for (const Vec<F>& v : candidates(m, randomize)) {
      if (--budget < 0) return std::nullopt;
      if (auto r = deflate(b, v, randomize, budget)) return r;
    }
    return std::nullopt;
  }

 private:
  std::vector<Vec<F>> candidates(Index m, bool randomize) {
    std::vector<Vec<F>> out;
    auto unit = [&](Index i) {
      Vec<F> v = Vec<F>::Constant(m, ctx_.zero());
      v(i) = ctx_.one();
      return v;
    };
    if (!randomize) {
      for (Index i = 0; i < m; ++i) out.push_back(unit(i));
      for (Index i = 0; i < m; ++i) {
        for (Index j = i + 1; j < m; ++j) out.push_back(unit(i) + unit(j));
      }
    } else {
      std::uniform_int_distribution<long> coeff(-2, 2);
      for (int t = 0; t < 4; ++t) {
        Vec<F> v(m);
        for (Index i = 0; i < m; ++i) v(i) = ctx_.from_int(coeff(rng_));
        out.push_back(v);
      }
    }
    return out;
  }

  std::optional<LUSimilarity<F>> deflate(const Mat<F>& b, const Vec<F>& v, bool randomize, int& budget) {
    const Index m = b.rows();
    const Vec<F> av = mul(b, Mat<F>(v));
    Mat<F> s(m, 2);
    s.col(0) = v;
    s.col(1) = av - v;
    if (rank(s) < 2) return std::nullopt;
    // Complete (v, Av - v) to a basis with unit vectors.
    for (Index i = 0; i < m && s.cols() < m; ++i) {
      Mat<F> t(m, s.cols() + 1);
      t.leftCols(s.cols()) = s;
      t.col(s.cols()) = Vec<F>::Constant(m, ctx_.zero());
      t(i, s.cols()) = ctx_.one();
      if (rank(t) == t.cols()) s = t;
    }
    const Mat<F> s_inv = inverse(s);
    const Mat<F> bt = mul(mul(s_inv, b), s);
    // bt = [[1, r^T], [e1, B22]]; the Schur complement subtracts r^T from the first row of B22.
    const Index k = m - 1;
    const Mat<F> r = bt.block(0, 1, 1, k);
    Mat<F> c = bt.block(1, 1, k, k);
    c.row(0) -= r.row(0);
    auto sub = run(c, randomize, budget);
    if (!sub) return std::nullopt;
    const Mat<F> q_inv = inverse(sub->p);
    Mat<F> p = identity(ctx_, m), l = identity(ctx_, m), u = identity(ctx_, m);
    p.block(1, 1, k, k) = sub->p;
    p = mul(p, s_inv);
    l.block(1, 0, k, 1) = sub->p.col(0);
    l.block(1, 1, k, k) = sub->l;
    u.block(0, 1, 1, k) = mul(r, q_inv);
    u.block(1, 1, k, k) = sub->u;
    return LUSimilarity<F>{p, l, u};
  }

  RingCtx<F> ctx_;
  std::mt19937_64 rng_;
};

template <class F>
bool regular_pair(const LUSimilarity<F>& r) {
  return (is_identity(r.l) || is_regular_unitriangular(Mat<F>(r.l.transpose()))) &&
         (is_identity(r.u) || is_regular_unitriangular(r.u));
}

}  // namespace

template <class F>
LUSimilarity<F> sourour_lu_similarity(const RingCtx<F>& ctx, const Mat<F>& a) {
  if (a.rows() != a.cols()) throw Error(Errc::Precondition, "matrix must be square");
  if (is_scalar(a)) throw Error(Errc::ScalarInput, "scalar matrices have no LU similarity with unit diagonals");
  if (determinant(a) != ctx.one()) throw Error(Errc::Precondition, "determinant must be 1");
  LUSearch<F> search(ctx, 0x5eedULL);
  std::optional<LUSimilarity<F>> first;
  for (int attempt = 0; attempt < 48; ++attempt) {
    int budget = 256;
    auto r = search.run(a, attempt > 0, budget);
    if (!r) continue;
    if (!same(mul(mul(r->p, a), inverse(r->p)), mul(r->l, r->u)) || !is_unitriangular(r->u) ||
        !is_unitriangular(Mat<F>(r->l.transpose()))) {
      throw Error(Errc::Internal, "LU similarity failed its postcondition");
    }
    if (regular_pair(*r)) return *r;
    if (!first) first = r;
  }
  if (!first) throw Error(Errc::Internal, "LU similarity search exhausted its budget");
  return *first;
}

namespace {

/// Certificate for a unit upper triangular u; empty for the identity.
template <class F>
Certificate<F> factor_upper(const RingCtx<F>& ctx, const Mat<F>& u) {
  const Index n = u.rows();
  if (is_identity(u)) return make_certificate<F>(ctx, {}, {}, Producer::SpecialLinear, static_cast<std::size_t>(n));
  if (!is_regular_unitriangular(u)) return factor_unitriangular(ctx, u);
  // Cyclic basis N^(n-1) e_n, ..., N e_n, e_n of N = u - I turns u into I + J.
  const Mat<F> nil = u - identity(ctx, n);
  Mat<F> basis(n, n);
  Mat<F> v = zeros(ctx, n, 1);
  v(n - 1, 0) = ctx.one();
  for (Index c = n - 1; c >= 0; --c) {
    basis.col(c) = v.col(0);
    v = mul(nil, v);
  }
  const Mat<F> jb = mul(mul(inverse(basis), u), basis);
  return conjugate_certificate(factor_unit_superdiag(ctx, jb), dense_oracle(ctx, basis));
}

}  // namespace

template <class F>
Certificate<F> factor_sl(const RingCtx<F>& ctx, const Mat<F>& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw Error(Errc::Precondition, "matrix must be square");
  const auto n = static_cast<std::size_t>(a.rows());
  if (determinant(a) != ctx.one()) throw Error(Errc::Precondition, "determinant must be 1");
  if (is_identity(a)) return make_certificate<F>(ctx, {}, {}, Producer::SpecialLinear, n);
  if (is_scalar(a)) return scalar_factor(ctx, a(0, 0), n);
  const auto lu = sourour_lu_similarity(ctx, a);
  auto lower = transpose_certificate(factor_upper(ctx, Mat<F>(lu.l.transpose())));
  auto upper = factor_upper(ctx, lu.u);
  auto cert = concat(lower, upper, Producer::SpecialLinear);
  cert = conjugate_certificate(cert, dense_oracle(ctx, inverse(lu.p)));
  cert.size = n;
  return cert;
}

#define KCOMM_INSTANTIATE_SL(F)                                                               \
  template JBlocks<F> j_block(const RingCtx<F>&, const F&, const F&, bool);                   \
  template JBlocks<F> j_block_trace(const RingCtx<F>&, const F&, const F&, bool);             \
  template ScalarSplit<F> scalar_split(const RingCtx<F>&, const F&, std::size_t);             \
  template Certificate<F> scalar_factor(const RingCtx<F>&, const F&, std::size_t);            \
  template LUSimilarity<F> sourour_lu_similarity(const RingCtx<F>&, const Mat<F>&);           \
  template bool is_regular_unitriangular(const Mat<F>&);                                      \
  template Certificate<F> factor_sl(const RingCtx<F>&, const Mat<F>&);

KCOMM_INSTANTIATE_SL(Rational)
KCOMM_INSTANTIATE_SL(PrimeField)
KCOMM_INSTANTIATE_SL(Cyclotomic)

}  // namespace kcomm
