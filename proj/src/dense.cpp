#include "kcomm/dense.hpp"

namespace kcomm {

template <class F>
Mat<F> identity(const RingCtx<F>& ctx, Index n) {
  Mat<F> out = zeros(ctx, n, n);
  for (Index i = 0; i < n; ++i) out(i, i) = ctx.one();
  return out;
}

template <class F>
Mat<F> zeros(const RingCtx<F>& ctx, Index rows, Index cols) {
  return Mat<F>::Constant(rows, cols, ctx.zero());
}

template <class F>
Mat<F> bound(const RingCtx<F>& ctx, const Mat<F>& a) {
  return a.unaryExpr([&](const F& x) { return ctx.bind(x); });
}

template <class F>
bool is_upper_triangular(const Mat<F>& a) {
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = j + 1; i < a.rows(); ++i) {
      if (!a(i, j).is_zero()) return false;
    }
  }
  return true;
}

template <class F>
bool is_lower_triangular(const Mat<F>& a) {
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = i + 1; j < a.cols(); ++j) {
      if (!a(i, j).is_zero()) return false;
    }
  }
  return true;
}

template <class F>
bool is_unitriangular(const Mat<F>& a) {
  if (a.rows() != a.cols() || !is_upper_triangular(a)) return false;
  for (Index i = 0; i < a.rows(); ++i) {
    if (!a(i, i).is_one()) return false;
  }
  return true;
}

template <class F>
bool is_diagonal(const Mat<F>& a) {
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (i != j && !a(i, j).is_zero()) return false;
    }
  }
  return true;
}

template <class F>
bool is_scalar(const Mat<F>& a) {
  if (a.rows() != a.cols() || !is_diagonal(a)) return false;
  for (Index i = 1; i < a.rows(); ++i) {
    if (a(i, i) != a(0, 0)) return false;
  }
  return true;
}

template <class F>
bool is_identity(const Mat<F>& a) {
  return is_scalar(a) && (a.rows() == 0 || a(0, 0).is_one());
}

template <class F>
bool same(const Mat<F>& a, const Mat<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != b(i, j)) return false;
    }
  }
  return true;
}

template <class F>
Mat<F> mul(const Mat<F>& a, const Mat<F>& b) {
  if (a.cols() != b.rows()) throw Error(Errc::Precondition, "nonconformable product");
  Mat<F> c = Mat<F>::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index p = 0; p < a.cols(); ++p) {
      const F& x = a(i, p);
      if (x.is_zero()) continue;
      for (Index j = 0; j < b.cols(); ++j) {
        const F& y = b(p, j);
        if (y.is_zero()) continue;
        c(i, j) += x * y;
      }
    }
  }
  return c;
}

namespace {

template <class F>
Mat<F> upper_inverse(const Mat<F>& a) {
  const Index n = a.rows();
  Mat<F> inv = Mat<F>::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    if (a(i, i).is_zero()) throw Error(Errc::Singular, "zero diagonal entry in triangular matrix");
    inv(i, i) = a(i, i).inverse();
  }
  for (Index i = n; i-- > 0;) {
    for (Index j = i + 1; j < n; ++j) {
      F acc(0);
      for (Index p = i; p < j; ++p) {
        if (!inv(i, p).is_zero() && !a(p, j).is_zero()) acc += inv(i, p) * a(p, j);
      }
      inv(i, j) = -(acc * inv(j, j));
    }
  }
  return inv;
}

}  // namespace

template <class F>
Mat<F> inverse(const Mat<F>& a) {
  if (a.rows() != a.cols()) throw Error(Errc::Precondition, "inverse of a nonsquare matrix");
  if (is_upper_triangular(a)) return upper_inverse(a);
  if (is_lower_triangular(a)) return upper_inverse<F>(a.transpose()).transpose();
  const Index n = a.rows();
  Mat<F> work = a;
  Mat<F> inv = Mat<F>::Identity(n, n);
  for (Index col = 0; col < n; ++col) {
    Index piv = col;
    while (piv < n && work(piv, col).is_zero()) ++piv;
    if (piv == n) throw Error(Errc::Singular, "matrix is not invertible");
    if (piv != col) {
      work.row(piv).swap(work.row(col));
      inv.row(piv).swap(inv.row(col));
    }
    const F s = work(col, col).inverse();
    for (Index j = 0; j < n; ++j) {
      work(col, j) *= s;
      inv(col, j) *= s;
    }
    for (Index r = 0; r < n; ++r) {
      if (r == col || work(r, col).is_zero()) continue;
      const F f = work(r, col);
      for (Index j = 0; j < n; ++j) {
        if (!work(col, j).is_zero()) work(r, j) -= f * work(col, j);
        if (!inv(col, j).is_zero()) inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

template <class F>
Mat<F> power(const Mat<F>& a, long e) {
  Mat<F> base = e < 0 ? inverse(a) : a;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Mat<F> acc = Mat<F>::Identity(a.rows(), a.cols());
  bool first = true;
  while (n) {
    if (n & 1) {
      acc = first ? base : mul(acc, base);
      first = false;
    }
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return acc;
}

template <class F>
Mat<F> commutator(const Mat<F>& x, const Mat<F>& y) {
  return mul(mul(mul(x, y), inverse(x)), inverse(y));
}

template <class F>
Mat<F> conjugate(const Mat<F>& x, const Mat<F>& h) {
  return mul(mul(h, x), inverse(h));
}

template <class F>
bool order_divides(const Mat<F>& x, unsigned k) {
  return is_identity(power(x, static_cast<long>(k)));
}

template <class F>
F determinant(const Mat<F>& a) {
  if (a.rows() != a.cols()) throw Error(Errc::Precondition, "determinant of a nonsquare matrix");
  const Index n = a.rows();
  Mat<F> work = a;
  F det(1);
  for (Index col = 0; col < n; ++col) {
    Index piv = col;
    while (piv < n && work(piv, col).is_zero()) ++piv;
    if (piv == n) return F(0);
    if (piv != col) {
      work.row(piv).swap(work.row(col));
      det = -det;
    }
    det *= work(col, col);
    const F s = work(col, col).inverse();
    for (Index r = col + 1; r < n; ++r) {
      if (work(r, col).is_zero()) continue;
      const F f = work(r, col) * s;
      for (Index j = col; j < n; ++j) {
        if (!work(col, j).is_zero()) work(r, j) -= f * work(col, j);
      }
    }
  }
  return det;
}

template <class F>
Mat<F> jpart(const Mat<F>& a) {
  Mat<F> out = Mat<F>::Zero(a.rows(), a.cols());
  for (Index i = 0; i + 1 < a.rows() && i + 1 < a.cols(); ++i) out(i, i + 1) = a(i, i + 1);
  return out;
}

template <class F>
Mat<F> direct_sum(const Mat<F>& a, const Mat<F>& b) {
  Mat<F> out = Mat<F>::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

template <class F>
Rref<F> rref(Mat<F> a) {
  Rref<F> out;
  Index row = 0;
  for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Index piv = row;
    while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row) a.row(piv).swap(a.row(row));
    const F s = a(row, col).inverse();
    for (Index j = col; j < a.cols(); ++j) {
      if (!a(row, j).is_zero()) a(row, j) *= s;
    }
    for (Index r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      const F f = a(r, col);
      for (Index j = col; j < a.cols(); ++j) {
        if (!a(row, j).is_zero()) a(r, j) -= f * a(row, j);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.r = std::move(a);
  return out;
}

template <class F>
Index rank(const Mat<F>& a) {
  return static_cast<Index>(rref(a).pivots.size());
}

template <class F>
Mat<F> nullspace(const Mat<F>& a) {
  Rref<F> red = rref(a);
  const Index n = a.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : red.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Index> free;
  for (Index j = 0; j < n; ++j) {
    if (!is_pivot[static_cast<std::size_t>(j)]) free.push_back(j);
  }
  Mat<F> basis = Mat<F>::Zero(n, static_cast<Index>(free.size()));
  for (std::size_t c = 0; c < free.size(); ++c) {
    const Index f = free[c];
    basis(f, static_cast<Index>(c)) = F(1);
    for (std::size_t r = 0; r < red.pivots.size(); ++r) {
      basis(red.pivots[r], static_cast<Index>(c)) = -red.r(static_cast<Index>(r), f);
    }
  }
  return basis;
}

template <class F>
std::optional<Vec<F>> solve(const Mat<F>& a, const Vec<F>& b, const Vec<F>& free_values) {
  const Index n = a.cols();
  Mat<F> aug(a.rows(), n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  Rref<F> red = rref(aug);
  if (!red.pivots.empty() && red.pivots.back() == n) return std::nullopt;
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : red.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Vec<F> x = Vec<F>::Zero(n);
  for (Index j = 0; j < n; ++j) {
    if (!is_pivot[static_cast<std::size_t>(j)]) x(j) = free_values(j);
  }
  for (std::size_t r = 0; r < red.pivots.size(); ++r) {
    const Index row = static_cast<Index>(r);
    F v = red.r(row, n);
    for (Index j = 0; j < n; ++j) {
      if (!is_pivot[static_cast<std::size_t>(j)] && !x(j).is_zero() && !red.r(row, j).is_zero()) {
        v -= red.r(row, j) * x(j);
      }
    }
    x(red.pivots[r]) = v;
  }
  return x;
}

template <class F>
std::optional<Vec<F>> solve(const Mat<F>& a, const Vec<F>& b) {
  return solve(a, b, Vec<F>(Vec<F>::Zero(a.cols())));
}

#define KCOMM_INSTANTIATE_DENSE(F)                                                        \
  template Mat<F> identity(const RingCtx<F>&, Index);                                     \
  template Mat<F> zeros(const RingCtx<F>&, Index, Index);                                 \
  template Mat<F> bound(const RingCtx<F>&, const Mat<F>&);                                \
  template bool is_upper_triangular(const Mat<F>&);                                       \
  template bool is_lower_triangular(const Mat<F>&);                                       \
  template bool is_unitriangular(const Mat<F>&);                                          \
  template bool is_diagonal(const Mat<F>&);                                               \
  template bool is_scalar(const Mat<F>&);                                                 \
  template bool is_identity(const Mat<F>&);                                               \
  template bool same(const Mat<F>&, const Mat<F>&);                                       \
  template Mat<F> mul(const Mat<F>&, const Mat<F>&);                                      \
  template Mat<F> inverse(const Mat<F>&);                                                 \
  template Mat<F> power(const Mat<F>&, long);                                             \
  template Mat<F> commutator(const Mat<F>&, const Mat<F>&);                               \
  template Mat<F> conjugate(const Mat<F>&, const Mat<F>&);                                \
  template bool order_divides(const Mat<F>&, unsigned);                                   \
  template F determinant(const Mat<F>&);                                                  \
  template Mat<F> jpart(const Mat<F>&);                                                   \
  template Mat<F> direct_sum(const Mat<F>&, const Mat<F>&);                               \
  template Rref<F> rref(Mat<F>);                                                          \
  template Index rank(const Mat<F>&);                                                     \
  template Mat<F> nullspace(const Mat<F>&);                                               \
  template std::optional<Vec<F>> solve(const Mat<F>&, const Vec<F>&);                     \
  template std::optional<Vec<F>> solve(const Mat<F>&, const Vec<F>&, const Vec<F>&);

KCOMM_INSTANTIATE_DENSE(Rational)
KCOMM_INSTANTIATE_DENSE(PrimeField)
KCOMM_INSTANTIATE_DENSE(Cyclotomic)

}  // namespace kcomm
