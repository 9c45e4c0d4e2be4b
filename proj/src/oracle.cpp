#include "kcomm/oracle.hpp"

namespace kcomm {

// ------------------------------------------------------------------ fields

template <class F>
Oracle<F> NodeFields<F>::child(const std::string& key) const {
  for (const auto& [k, v] : children) {
    if (k == key) return v;
  }
  throw Error(Errc::Parse, "node '" + kind + "' is missing '" + key + "'");
}

template <class F>
long NodeFields<F>::integer(const std::string& key) const {
  for (const auto& [k, v] : integers) {
    if (k == key) return v;
  }
  throw Error(Errc::Parse, "node '" + kind + "' is missing '" + key + "'");
}

template <class F>
const F* NodeFields<F>::scalar(const std::string& key) const {
  for (const auto& [k, v] : scalars) {
    if (k == key) return &v;
  }
  return nullptr;
}

template <class F>
const Mat<F>* NodeFields<F>::matrix(const std::string& key) const {
  for (const auto& [k, v] : matrices) {
    if (k == key) return &v;
  }
  return nullptr;
}

template <class F>
const PeriodicColumns<F>* NodeFields<F>::cols(const std::string& key) const {
  for (const auto& [k, v] : columns) {
    if (k == key) return &v;
  }
  return nullptr;
}

// ------------------------------------------------------------------ base

template <class F>
F OracleNode<F>::entry(std::size_t i, std::size_t j) const {
  if (structural_zero(i, j)) return ctx_.zero();
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find(key(i, j));
    if (it != memo_.end()) return it->second;
  }
  F v = ctx_.bind(compute(i, j));
  store(i, j, v);
  return v;
}

template <class F>
void OracleNode<F>::store(std::size_t i, std::size_t j, const F& v) const {
  std::lock_guard<std::mutex> lock(mutex_);
  memo_.emplace(key(i, j), ctx_.bind(v));
}

template <class F>
Mat<F> window(const Oracle<F>& a, std::size_t n) {
  const RingCtx<F>& ctx = a->ctx();
  Mat<F> out = zeros(ctx, static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!a->structural_zero(i, j)) out(static_cast<Index>(i), static_cast<Index>(j)) = a->entry(i, j);
    }
  }
  return out;
}

namespace {

template <class F>
std::size_t block_corner(const Mat<F>& g) {
  return is_upper_triangular(g) ? 0 : static_cast<std::size_t>(g.rows());
}

template <class F>
class IdentityNode final : public OracleNode<F> {
 public:
  explicit IdentityNode(const RingCtx<F>& ctx) : OracleNode<F>(ctx, 0) {}
  NodeFields<F> fields() const override { return {.kind = "identity"}; }

 protected:
  F compute(std::size_t i, std::size_t j) const override {
    return i == j ? this->ctx().one() : this->ctx().zero();
  }
};

template <class F>
class DenseNode final : public OracleNode<F> {
 public:
  DenseNode(const RingCtx<F>& ctx, Mat<F> g)
      : OracleNode<F>(ctx, block_corner(g)), g_(bound(ctx, g)) {
    if (g_.rows() != g_.cols()) throw Error(Errc::Precondition, "dense block must be square");
  }
  NodeFields<F> fields() const override {
    NodeFields<F> f{.kind = "dense"};
    f.integers = {{"n", static_cast<long>(g_.rows())}};
    f.matrices = {{"rows", g_}};
    return f;
  }

 protected:
  F compute(std::size_t i, std::size_t j) const override {
    const auto n = static_cast<std::size_t>(g_.rows());
    if (i < n && j < n) return g_(static_cast<Index>(i), static_cast<Index>(j));
    return i == j ? this->ctx().one() : this->ctx().zero();
  }

 private:
  Mat<F> g_;
};

template <class F>
class BandedNode final : public OracleNode<F> {
 public:
  BandedNode(const RingCtx<F>& ctx, std::optional<PeriodicSeq<F>> diag,
             std::map<long, PeriodicSeq<F>> bands)
      : OracleNode<F>(ctx, 0), diag_(std::move(diag)), bands_(std::move(bands)) {
    for (const auto& [d, s] : bands_) {
      if (d < 1) throw Error(Errc::Precondition, "band offsets must be positive");
    }
  }
  NodeFields<F> fields() const override {
    NodeFields<F> f{.kind = "tri-oracle"};
    if (diag_) f.seqs.emplace_back("diag", *diag_);
    for (const auto& [d, s] : bands_) f.seqs.emplace_back("band:" + std::to_string(d), s);
    return f;
  }

 protected:
  F compute(std::size_t i, std::size_t j) const override {
    if (i == j) return diag_ ? diag_->at(i) : this->ctx().zero();
    auto it = bands_.find(static_cast<long>(j - i));
    return it == bands_.end() ? this->ctx().zero() : it->second.at(i);
  }

 private:
  std::optional<PeriodicSeq<F>> diag_;
  std::map<long, PeriodicSeq<F>> bands_;
};

template <class F>
class ProductNode final : public OracleNode<F> {
 public:
  ProductNode(Oracle<F> left, Oracle<F> right, std::vector<Oracle<F>> all)
      : OracleNode<F>(left->ctx(), std::max(left->corner(), right->corner())),
        left_(std::move(left)),
        right_(std::move(right)),
        all_(std::move(all)) {}
  NodeFields<F> fields() const override {
    NodeFields<F> f{.kind = "product"};
    f.list = all_;
    return f;
  }

 protected:
  F compute(std::size_t i, std::size_t j) const override {
    const std::size_t lo = i < left_->corner() ? 0 : i;
    const std::size_t hi = std::max(j, right_->corner() == 0 ? 0 : right_->corner() - 1);
    F acc = this->ctx().zero();
    for (std::size_t p = lo; p <= hi; ++p) {
      if (left_->structural_zero(i, p) || right_->structural_zero(p, j)) continue;
      F a = left_->entry(i, p);
      if (a.is_zero()) continue;
      F b = right_->entry(p, j);
      if (!b.is_zero()) acc += a * b;
    }
    return acc;
  }

 private:
  Oracle<F> left_, right_;
  std::vector<Oracle<F>> all_;
};

template <class F>
class SumNode final : public OracleNode<F> {
 public:
  explicit SumNode(std::vector<Oracle<F>> terms)
      : OracleNode<F>(terms.front()->ctx(), max_corner(terms)), terms_(std::move(terms)) {}
  NodeFields<F> fields() const override {
    NodeFields<F> f{.kind = "sum"};
    f.list = terms_;
    return f;
  }

 protected:
  F compute(std::size_t i, std::size_t j) const override {
    F acc = this->ctx().zero();
    for (const auto& t : terms_) {
      if (!t->structural_zero(i, j)) acc += t->entry(i, j);
    }
    return acc;
  }

 private:
  static std::size_t max_corner(const std::vector<Oracle<F>>& terms) {
    std::size_t c = 0;
    for (const auto& t : terms) c = std::max(c, t->corner());
    return c;
  }
  std::vector<Oracle<F>> terms_;
};

template <class F>
class ScaleNode final : public OracleNode<F> {
 public:
  ScaleNode(const F& factor, Oracle<F> a)
      : OracleNode<F>(a->ctx(), a->corner()), factor_(a->ctx().bind(factor)), a_(std::move(a)) {}
  NodeFields<F> fields() const override {
    NodeFields<F> f{.kind = "scale"};
    f.scalars = {{"factor", factor_}};
    f.children = {{"of", a_}};
    return f;
  }

 protected:
  F compute(std::size_t i, std::size_t j) const override { return factor_ * a_->entry(i, j); }

 private:
  F factor_;
  Oracle<F> a_;
};

template <class F>
class InverseNode final : public OracleNode<F> {
 public:
  explicit InverseNode(Oracle<F> a) : OracleNode<F>(a->ctx(), a->corner()), a_(std::move(a)) {
    const std::size_t c = this->corner();
    if (c > 0) corner_inv_ = inverse(window(a_, c));
  }
  NodeFields<F> fields() const override {
    NodeFields<F> f{.kind = "inverse"};
    f.children = {{"of", a_}};
    return f;
  }

 protected:
  F compute(std::size_t i, std::size_t j) const override {
    const std::size_t c = this->corner();
    if (i >= c) return tail_entry(i, j);
    if (j < c) return corner_inv_(static_cast<Index>(i), static_cast<Index>(j));
    // -M1^-1 M2 M3^-1, restricted to row i and column j.
    for (std::size_t q = c; q < j; ++q) this->entry(q, j);
    F acc = this->ctx().zero();
    for (std::size_t p = 0; p < c; ++p) {
      const F& m = corner_inv_(static_cast<Index>(i), static_cast<Index>(p));
      if (m.is_zero()) continue;
      F inner = this->ctx().zero();
      for (std::size_t q = c; q <= j; ++q) {
        F x = a_->entry(p, q);
        if (!x.is_zero()) inner += x * this->entry(q, j);
      }
      acc += m * inner;
    }
    return -acc;
  }

 private:
  F tail_entry(std::size_t i, std::size_t j) const {
    F d = a_->entry(j, j);
    if (d.is_zero()) throw Error(Errc::Singular, "zero diagonal entry at " + std::to_string(j + 1));
    if (i == j) return d.inverse();
    // Ascending warm-up keeps the recursion depth bounded.
    for (std::size_t q = i + 1; q < j; ++q) this->entry(i, q);
    F acc = this->ctx().zero();
    for (std::size_t p = i; p < j; ++p) {
      F x = a_->entry(p, j);
      if (!x.is_zero()) acc += this->entry(i, p) * x;
    }
    return -(acc * d.inverse());
  }

  Oracle<F> a_;
  Mat<F> corner_inv_;
};

template <class F>
class DelegateNode final : public OracleNode<F> {
 public:
  DelegateNode(Oracle<F> inner, NodeFields<F> fields)
      : OracleNode<F>(inner->ctx(), inner->corner()), inner_(std::move(inner)), fields_(std::move(fields)) {}
  NodeFields<F> fields() const override { return fields_; }

 protected:
  F compute(std::size_t i, std::size_t j) const override { return inner_->entry(i, j); }

 private:
  Oracle<F> inner_;
  NodeFields<F> fields_;
};

template <class F>
class JPartNode final : public OracleNode<F> {
 public:
  explicit JPartNode(Oracle<F> a) : OracleNode<F>(a->ctx(), 0), a_(std::move(a)) {}
  NodeFields<F> fields() const override {
    NodeFields<F> f{.kind = "jpart"};
    f.children = {{"of", a_}};
    return f;
  }

 protected:
  F compute(std::size_t i, std::size_t j) const override {
    return j == i + 1 ? a_->entry(i, j) : this->ctx().zero();
  }

 private:
  Oracle<F> a_;
};

template <class F>
class BCNode final : public OracleNode<F> {
 public:
  BCNode(Oracle<F> j, bool is_b, F root, F scale)
      : OracleNode<F>(j->ctx(), 0), j_(std::move(j)), is_b_(is_b), root_(std::move(root)), scale_(std::move(scale)),
        root_inv_(root_.inverse()) {}
  NodeFields<F> fields() const override {
    NodeFields<F> f{.kind = is_b_ ? "bc-b" : "bc-c"};
    f.children = {{"j", j_}};
    f.scalars = {{"root", root_}, {"scale", scale_}};
    return f;
  }

 protected:
  F compute(std::size_t i, std::size_t j) const override {
    const auto& ctx = this->ctx();
    const bool odd = i % 2 == 1;
    if (i == j) {
      if (!odd) return ctx.one();
      return is_b_ ? root_ : root_inv_;
    }
    if (j == i + 1 && odd == is_b_) return scale_ * j_->entry(i, i + 1);
    return ctx.zero();
  }

 private:
  Oracle<F> j_;
  bool is_b_;
  F root_, scale_, root_inv_;
};

template <class F>
class ConjCoherentNode final : public OracleNode<F> {
 public:
  ConjCoherentNode(Oracle<F> from, Oracle<F> to)
      : OracleNode<F>(from->ctx(), 0), from_(std::move(from)), to_(std::move(to)) {}
  NodeFields<F> fields() const override {
    NodeFields<F> f{.kind = "conj-coherent"};
    f.children = {{"from", from_}, {"to", to_}};
    return f;
  }

 protected:
  F compute(std::size_t i, std::size_t j) const override {
    const auto& ctx = this->ctx();
    if (i == j) return ctx.one();
    for (std::size_t q = 1; q < j; ++q) this->entry(0, q);
    // Row r of X M = T X at column j, after cancelling x_rj:
    //   sum_{p=r+1}^{j-1} t_rp x_pj = m_rj - t_rj + sum_{p=r+1}^{j-1} x_rp m_pj.
    const Index n = static_cast<Index>(j);
    Mat<F> sys = zeros(ctx, n, n);
    Vec<F> rhs(n);
    for (std::size_t r = 0; r < j; ++r) {
      F b = from_->entry(r, j) - to_->entry(r, j);
      for (std::size_t p = r + 1; p < j; ++p) {
        sys(static_cast<Index>(r), static_cast<Index>(p)) = to_->entry(r, p);
        F x = this->entry(r, p);
        if (!x.is_zero()) b += x * from_->entry(p, j);
      }
      rhs(static_cast<Index>(r)) = b;
    }
    auto sol = solve(sys, rhs);
    if (!sol) {
      throw Error(Errc::NotConjugate, "no unitriangular conjugator at column " + std::to_string(j + 1));
    }
    for (std::size_t r = 0; r < j; ++r) this->store(r, j, (*sol)(static_cast<Index>(r)));
    return (*sol)(static_cast<Index>(i));
  }

 private:
  Oracle<F> from_, to_;
};

template <class F>
class ConjBidiagNode final : public OracleNode<F> {
 public:
  explicit ConjBidiagNode(Oracle<F> a) : OracleNode<F>(a->ctx(), 0), a_(std::move(a)) {}
  NodeFields<F> fields() const override {
    NodeFields<F> f{.kind = "conj-bidiag"};
    f.children = {{"of", a_}};
    return f;
  }

 protected:
  F compute(std::size_t i, std::size_t j) const override {
    const auto& ctx = this->ctx();
    if (j == 0) return ctx.one();
    for (std::size_t q = 1; q < j; ++q) this->entry(0, q);
    // Row r of A X = X Jb at column j:
    //   (a_rr - a_jj) x_rj + sum_{p=r+1}^{j} a_rp x_pj = x_{r,j-1}.
    const Index n = static_cast<Index>(j) + 1;
    Mat<F> sys = zeros(ctx, n - 1, n);
    Vec<F> rhs(n - 1);
    const F ajj = a_->entry(j, j);
    for (std::size_t r = 0; r < j; ++r) {
      const Index row = static_cast<Index>(r);
      sys(row, row) = a_->entry(r, r) - ajj;
      for (std::size_t p = r + 1; p <= j; ++p) sys(row, static_cast<Index>(p)) += a_->entry(r, p);
      rhs(row) = this->entry(r, j - 1);
    }
    Vec<F> defaults = Vec<F>::Constant(n, ctx.zero());
    defaults(n - 1) = ctx.one();
    auto sol = solve(sys, rhs, defaults);
    if (!sol || (*sol)(n - 1).is_zero()) {
      throw Error(Errc::NotConjugate, "no bidiagonalizing conjugator at column " + std::to_string(j + 1));
    }
    for (std::size_t r = 0; r <= j; ++r) this->store(r, j, (*sol)(static_cast<Index>(r)));
    return (*sol)(static_cast<Index>(i));
  }

 private:
  Oracle<F> a_;
};

template <class F>
class VKNode final : public OracleNode<F> {
 public:
  VKNode(const RingCtx<F>& ctx, Mat<F> m1, PeriodicColumns<F> m2, Oracle<F> m3)
      : OracleNode<F>(ctx, static_cast<std::size_t>(m1.rows())),
        m1_(bound(ctx, m1)),
        m2_(std::move(m2)),
        m3_(std::move(m3)) {
    if (m1_.rows() != m1_.cols()) throw Error(Errc::Precondition, "corner block must be square");
    if (m2_.rows != m1_.rows()) throw Error(Errc::Precondition, "coupling height must equal corner size");
    if (m3_->corner() != 0) throw Error(Errc::Precondition, "tail must be upper triangular");
  }
  NodeFields<F> fields() const override {
    NodeFields<F> f{.kind = "vk"};
    f.integers = {{"n", static_cast<long>(m1_.rows())}};
    f.matrices = {{"m1", m1_}};
    f.columns = {{"m2", m2_}};
    f.children = {{"m3", m3_}};
    return f;
  }

 protected:
  F compute(std::size_t i, std::size_t j) const override {
    const std::size_t n = this->corner();
    if (i < n) {
      if (j < n) return m1_(static_cast<Index>(i), static_cast<Index>(j));
      return m2_.column(j - n)(static_cast<Index>(i));
    }
    return m3_->entry(i - n, j - n);
  }

 private:
  Mat<F> m1_;
  PeriodicColumns<F> m2_;
  Oracle<F> m3_;
};

template <class F>
class TailNode final : public OracleNode<F> {
 public:
  TailNode(Oracle<F> w, std::size_t c) : OracleNode<F>(w->ctx(), 0), w_(std::move(w)), c_(c) {}
  NodeFields<F> fields() const override {
    NodeFields<F> f{.kind = "tail"};
    f.children = {{"of", w_}};
    f.integers = {{"offset", static_cast<long>(c_)}};
    return f;
  }

 protected:
  F compute(std::size_t i, std::size_t j) const override { return w_->entry(i + c_, j + c_); }

 private:
  Oracle<F> w_;
  std::size_t c_;
};

template <class F>
class DecoupleNode final : public OracleNode<F> {
 public:
  DecoupleNode(Oracle<F> w, std::size_t c) : OracleNode<F>(w->ctx(), c), w_(std::move(w)) {
    if (c == 0) return;
    Mat<F> a_minus_i = window(w_, c) - identity(this->ctx(), static_cast<Index>(c));
    try {
      solver_ = inverse(a_minus_i);
    } catch (const Error& e) {
      if (e.code() != Errc::Singular) throw;
      throw Error(Errc::EigenvalueOne, "corner block has eigenvalue 1");
    }
  }
  NodeFields<F> fields() const override {
    NodeFields<F> f{.kind = "decouple"};
    f.children = {{"of", w_}};
    f.integers = {{"split", static_cast<long>(this->corner())}};
    return f;
  }

 protected:
  F compute(std::size_t i, std::size_t j) const override {
    const auto& ctx = this->ctx();
    const std::size_t c = this->corner();
    if (i >= c || j < c) return i == j ? ctx.one() : ctx.zero();
    for (std::size_t q = c; q < j; ++q) this->entry(0, q);
    // Column q = j - c of Y; H stores -Y.
    const Index ci = static_cast<Index>(c);
    Vec<F> rhs(ci);
    for (Index r = 0; r < ci; ++r) rhs(r) = -w_->entry(static_cast<std::size_t>(r), j);
    for (std::size_t q = c; q < j; ++q) {
      F t = w_->entry(q, j);
      if (t.is_zero()) continue;
      for (Index r = 0; r < ci; ++r) rhs(r) -= this->entry(static_cast<std::size_t>(r), q) * t;
    }
    Vec<F> y = Vec<F>::Constant(ci, ctx.zero());
    for (Index r = 0; r < ci; ++r) {
      for (Index s = 0; s < ci; ++s) {
        if (!solver_(r, s).is_zero() && !rhs(s).is_zero()) y(r) += solver_(r, s) * rhs(s);
      }
    }
    for (Index r = 0; r < ci; ++r) this->store(static_cast<std::size_t>(r), j, -y(r));
    return -y(static_cast<Index>(i));
  }

 private:
  Oracle<F> w_;
  Mat<F> solver_;
};

template <class F>
class DirectSumNode final : public OracleNode<F> {
 public:
  DirectSumNode(const RingCtx<F>& ctx, Mat<F> block, Oracle<F> t)
      : OracleNode<F>(ctx, block_corner(block)), block_(bound(ctx, block)), t_(std::move(t)) {
    if (t_->corner() != 0) throw Error(Errc::Precondition, "direct-sum tail must be upper triangular");
  }
  NodeFields<F> fields() const override {
    NodeFields<F> f{.kind = "direct-sum"};
    f.matrices = {{"block", block_}};
    f.children = {{"tail", t_}};
    return f;
  }

 protected:
  F compute(std::size_t i, std::size_t j) const override {
    const auto c = static_cast<std::size_t>(block_.rows());
    if (i < c && j < c) return block_(static_cast<Index>(i), static_cast<Index>(j));
    if (i >= c && j >= c) return t_->entry(i - c, j - c);
    return this->ctx().zero();
  }

 private:
  Mat<F> block_;
  Oracle<F> t_;
};

}  // namespace

// ------------------------------------------------------------------ builders

template <class F>
Oracle<F> identity_oracle(const RingCtx<F>& ctx) {
  return std::make_shared<IdentityNode<F>>(ctx);
}

template <class F>
Oracle<F> dense_oracle(const RingCtx<F>& ctx, const Mat<F>& g) {
  return std::make_shared<DenseNode<F>>(ctx, g);
}

template <class F>
Oracle<F> banded_oracle(const RingCtx<F>& ctx, std::optional<PeriodicSeq<F>> diag,
                        std::map<long, PeriodicSeq<F>> bands) {
  return std::make_shared<BandedNode<F>>(ctx, std::move(diag), std::move(bands));
}

template <class F>
Oracle<F> superdiag_oracle(const RingCtx<F>& ctx, const PeriodicSeq<F>& seq) {
  return banded_oracle<F>(ctx, std::nullopt, {{1, seq}});
}

template <class F>
Oracle<F> unit_superdiag_oracle(const RingCtx<F>& ctx, const PeriodicSeq<F>& seq) {
  return banded_oracle<F>(ctx, PeriodicSeq<F>::constant(ctx.one()), {{1, seq}});
}

template <class F>
Oracle<F> product(std::vector<Oracle<F>> factors) {
  if (factors.empty()) throw Error(Errc::Precondition, "empty product");
  if (factors.size() == 1) return factors.front();
  Oracle<F> left = factors.size() == 2
                       ? factors.front()
                       : product(std::vector<Oracle<F>>(factors.begin(), factors.end() - 1));
  Oracle<F> right = factors.back();
  return std::make_shared<ProductNode<F>>(std::move(left), std::move(right), std::move(factors));
}

template <class F>
Oracle<F> sum(std::vector<Oracle<F>> terms) {
  if (terms.empty()) throw Error(Errc::Precondition, "empty sum");
  return std::make_shared<SumNode<F>>(std::move(terms));
}

template <class F>
Oracle<F> scale(const F& factor, const Oracle<F>& a) {
  return std::make_shared<ScaleNode<F>>(factor, a);
}

template <class F>
Oracle<F> inverse(const Oracle<F>& a) {
  return std::make_shared<InverseNode<F>>(a);
}

template <class F>
Oracle<F> power(const Oracle<F>& a, long e) {
  NodeFields<F> f{.kind = "power"};
  f.children = {{"of", a}};
  f.integers = {{"exp", e}};
  Oracle<F> base = e < 0 ? inverse(a) : a;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  std::vector<Oracle<F>> factors;
  while (n) {
    if (n & 1) factors.push_back(base);
    n >>= 1;
    if (n) base = product<F>({base, base});
  }
  Oracle<F> inner = factors.empty() ? identity_oracle(a->ctx()) : product(std::move(factors));
  return std::make_shared<DelegateNode<F>>(std::move(inner), std::move(f));
}

template <class F>
Oracle<F> conjugate(const Oracle<F>& x, const Oracle<F>& h) {
  NodeFields<F> f{.kind = "conjugate"};
  f.children = {{"of", x}, {"by", h}};
  return std::make_shared<DelegateNode<F>>(product<F>({h, x, inverse(h)}), std::move(f));
}

template <class F>
Oracle<F> commutator(const Oracle<F>& x, const Oracle<F>& y) {
  return product<F>({x, y, inverse(x), inverse(y)});
}

template <class F>
Oracle<F> jpart(const Oracle<F>& a) {
  return std::make_shared<JPartNode<F>>(a);
}

template <class F>
Oracle<F> bc_b(const Oracle<F>& j) {
  return std::make_shared<BCNode<F>>(j, true, j->ctx().omega(), j->ctx().k_inv());
}

template <class F>
Oracle<F> bc_c(const Oracle<F>& j) {
  return std::make_shared<BCNode<F>>(j, false, j->ctx().omega(), j->ctx().k_inv());
}

template <class F>
Oracle<F> conj_coherent(const Oracle<F>& from, const Oracle<F>& to) {
  return std::make_shared<ConjCoherentNode<F>>(from, to);
}

template <class F>
Oracle<F> conj_bidiag(const Oracle<F>& a) {
  return std::make_shared<ConjBidiagNode<F>>(a);
}

template <class F>
Oracle<F> vk_oracle(const RingCtx<F>& ctx, const Mat<F>& m1, const PeriodicColumns<F>& m2,
                    const Oracle<F>& m3) {
  return std::make_shared<VKNode<F>>(ctx, m1, m2, m3);
}

template <class F>
Oracle<F> tail(const Oracle<F>& w, std::size_t c) {
  return std::make_shared<TailNode<F>>(w, c);
}

template <class F>
Oracle<F> decouple(const Oracle<F>& w, std::size_t c) {
  return std::make_shared<DecoupleNode<F>>(w, c);
}

template <class F>
Oracle<F> direct_sum(const Mat<F>& block, const Oracle<F>& t) {
  return std::make_shared<DirectSumNode<F>>(t->ctx(), block, t);
}

template <class F>
Oracle<F> make_node(const RingCtx<F>& ctx, const NodeFields<F>& f) {
  const std::string& k = f.kind;
  auto size_field = [&](const std::string& key) {
    long v = f.integer(key);
    if (v < 0) throw Error(Errc::Parse, "'" + key + "' must be nonnegative");
    return static_cast<std::size_t>(v);
  };
  if (k == "identity") return identity_oracle(ctx);
  if (k == "dense") {
    const Mat<F>* g = f.matrix("rows");
    if (!g) throw Error(Errc::Parse, "dense node is missing 'rows'");
    if (g->rows() != f.integer("n")) throw Error(Errc::Parse, "dense node row count differs from n");
    return dense_oracle(ctx, *g);
  }
  if (k == "tri-oracle") {
    std::optional<PeriodicSeq<F>> diag;
    std::map<long, PeriodicSeq<F>> bands;
    for (const auto& [key, seq] : f.seqs) {
      if (key == "diag") {
        diag = seq;
      } else if (key.rfind("band:", 0) == 0) {
        long d = std::stol(key.substr(5));
        if (d < 1) throw Error(Errc::Parse, "band offsets must be positive");
        if (!bands.emplace(d, seq).second) throw Error(Errc::Parse, "duplicate band offset");
      }
    }
    return banded_oracle(ctx, std::move(diag), std::move(bands));
  }
  if (k == "product" || k == "sum") {
    if (f.list.empty()) throw Error(Errc::Parse, "'" + k + "' needs a nonempty 'of' list");
    return k == "product" ? product(f.list) : sum(f.list);
  }
  if (k == "scale") {
    const F* s = f.scalar("factor");
    if (!s) throw Error(Errc::Parse, "scale node is missing 'factor'");
    return scale(*s, f.child("of"));
  }
  if (k == "inverse") return inverse(f.child("of"));
  if (k == "power") return power(f.child("of"), f.integer("exp"));
  if (k == "conjugate") return conjugate(f.child("of"), f.child("by"));
  if (k == "jpart") return jpart(f.child("of"));
  if (k == "bc-b" || k == "bc-c") {
    const F* root = f.scalar("root");
    const F* sc = f.scalar("scale");
    if (!root || !sc) throw Error(Errc::Parse, "'" + k + "' node needs 'root' and 'scale'");
    if (root->is_zero()) throw Error(Errc::Parse, "'" + k + "' root must be nonzero");
    return std::make_shared<BCNode<F>>(f.child("j"), k == "bc-b", *root, *sc);
  }
  if (k == "conj-coherent") return conj_coherent(f.child("from"), f.child("to"));
  if (k == "conj-bidiag") return conj_bidiag(f.child("of"));
  if (k == "vk") {
    const Mat<F>* m1 = f.matrix("m1");
    const PeriodicColumns<F>* m2 = f.cols("m2");
    if (!m1 || !m2) throw Error(Errc::Parse, "vk node needs 'm1' and 'm2'");
    if (m1->rows() != f.integer("n")) throw Error(Errc::Parse, "vk corner size differs from n");
    return vk_oracle(ctx, *m1, *m2, f.child("m3"));
  }
  if (k == "tail") return tail(f.child("of"), size_field("offset"));
  if (k == "decouple") return decouple(f.child("of"), size_field("split"));
  if (k == "direct-sum") {
    const Mat<F>* b = f.matrix("block");
    if (!b) throw Error(Errc::Parse, "direct-sum node is missing 'block'");
    return direct_sum(*b, f.child("tail"));
  }
  throw Error(Errc::Parse, "unknown matrix kind '" + k + "'");
}

#define KCOMM_INSTANTIATE_ORACLE(F)                                                         \
  template struct NodeFields<F>;                                                            \
  template class OracleNode<F>;                                                             \
  template Mat<F> window(const Oracle<F>&, std::size_t);                                    \
  template Oracle<F> identity_oracle(const RingCtx<F>&);                                    \
  template Oracle<F> dense_oracle(const RingCtx<F>&, const Mat<F>&);                        \
  template Oracle<F> banded_oracle(const RingCtx<F>&, std::optional<PeriodicSeq<F>>,        \
                                   std::map<long, PeriodicSeq<F>>);                         \
  template Oracle<F> superdiag_oracle(const RingCtx<F>&, const PeriodicSeq<F>&);            \
  template Oracle<F> unit_superdiag_oracle(const RingCtx<F>&, const PeriodicSeq<F>&);       \
  template Oracle<F> product(std::vector<Oracle<F>>);                                       \
  template Oracle<F> sum(std::vector<Oracle<F>>);                                           \
  template Oracle<F> scale(const F&, const Oracle<F>&);                                     \
  template Oracle<F> inverse(const Oracle<F>&);                                             \
  template Oracle<F> power(const Oracle<F>&, long);                                         \
  template Oracle<F> conjugate(const Oracle<F>&, const Oracle<F>&);                         \
  template Oracle<F> commutator(const Oracle<F>&, const Oracle<F>&);                        \
  template Oracle<F> jpart(const Oracle<F>&);                                               \
  template Oracle<F> bc_b(const Oracle<F>&);                                                \
  template Oracle<F> bc_c(const Oracle<F>&);                                                \
  template Oracle<F> conj_coherent(const Oracle<F>&, const Oracle<F>&);                     \
  template Oracle<F> conj_bidiag(const Oracle<F>&);                                         \
  template Oracle<F> vk_oracle(const RingCtx<F>&, const Mat<F>&, const PeriodicColumns<F>&, \
                               const Oracle<F>&);                                           \
  template Oracle<F> tail(const Oracle<F>&, std::size_t);                                   \
  template Oracle<F> decouple(const Oracle<F>&, std::size_t);                               \
  template Oracle<F> direct_sum(const Mat<F>&, const Oracle<F>&);                           \
  template Oracle<F> make_node(const RingCtx<F>&, const NodeFields<F>&);

KCOMM_INSTANTIATE_ORACLE(Rational)
KCOMM_INSTANTIATE_ORACLE(PrimeField)
KCOMM_INSTANTIATE_ORACLE(Cyclotomic)

}  // namespace kcomm
