#pragma once

// Lazy infinite matrices given by a memoized entry oracle.
//
// Every node has a corner size c. Entry (i, j) (0-based) can be nonzero only
// when i < c or i <= j, so c = 0 is the upper triangular case and c > 0
// describes a finite block row on top of a triangular tail. Products,
// inverses and windows of size N >= c only touch entries inside [0, N).

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "kcomm/dense.hpp"
#include "kcomm/periodic.hpp"

namespace kcomm {

template <class F>
class OracleNode;

template <class F>
using Oracle = std::shared_ptr<const OracleNode<F>>;

/// Declarative description of a node, used for serialization and rebuilding.
template <class F>
struct NodeFields {
  std::string kind;
  std::vector<std::pair<std::string, Oracle<F>>> children;
  std::vector<Oracle<F>> list;
  std::vector<std::pair<std::string, long>> integers;
  std::vector<std::pair<std::string, F>> scalars;
  std::vector<std::pair<std::string, Mat<F>>> matrices;
  std::vector<std::pair<std::string, PeriodicSeq<F>>> seqs;  // "diag" or "band:<offset>"
  std::vector<std::pair<std::string, PeriodicColumns<F>>> columns;

  Oracle<F> child(const std::string& key) const;
  long integer(const std::string& key) const;
  const F* scalar(const std::string& key) const;
  const Mat<F>* matrix(const std::string& key) const;
  const PeriodicColumns<F>* cols(const std::string& key) const;
};

template <class F>
class OracleNode {
 public:
  OracleNode(const RingCtx<F>& ctx, std::size_t corner) : ctx_(ctx), corner_(corner) {}
  OracleNode(const OracleNode&) = delete;
  OracleNode& operator=(const OracleNode&) = delete;
  virtual ~OracleNode() = default;

  /// Entry (i, j), 0-based. Thread-safe; each entry is computed once.
  F entry(std::size_t i, std::size_t j) const;
  std::size_t corner() const { return corner_; }
  const RingCtx<F>& ctx() const { return ctx_; }
  bool structural_zero(std::size_t i, std::size_t j) const { return i > j && i >= corner_; }

  virtual NodeFields<F> fields() const = 0;

 protected:
  virtual F compute(std::size_t i, std::size_t j) const = 0;
  /// Records a value computed as a side effect (column solvers fill whole columns).
  void store(std::size_t i, std::size_t j, const F& v) const;

 private:
  static std::uint64_t key(std::size_t i, std::size_t j) {
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
  }

  RingCtx<F> ctx_;
  std::size_t corner_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::uint64_t, F> memo_;
};

/// Top-left N x N block.
template <class F>
Mat<F> window(const Oracle<F>& a, std::size_t n);

template <class F>
Oracle<F> identity_oracle(const RingCtx<F>& ctx);
/// g (+) I: g occupies the top-left block, identity beyond.
template <class F>
Oracle<F> dense_oracle(const RingCtx<F>& ctx, const Mat<F>& g);
/// Diagonal (absent: zero) plus bands keyed by offset >= 1.
template <class F>
Oracle<F> banded_oracle(const RingCtx<F>& ctx, std::optional<PeriodicSeq<F>> diag,
                        std::map<long, PeriodicSeq<F>> bands);
/// The pure superdiagonal matrix with entries a_{i,i+1} = seq(i).
template <class F>
Oracle<F> superdiag_oracle(const RingCtx<F>& ctx, const PeriodicSeq<F>& seq);
/// I plus the given superdiagonal.
template <class F>
Oracle<F> unit_superdiag_oracle(const RingCtx<F>& ctx, const PeriodicSeq<F>& seq);

template <class F>
Oracle<F> product(std::vector<Oracle<F>> factors);
template <class F>
Oracle<F> sum(std::vector<Oracle<F>> terms);
template <class F>
Oracle<F> scale(const F& factor, const Oracle<F>& a);
template <class F>
Oracle<F> inverse(const Oracle<F>& a);
template <class F>
Oracle<F> power(const Oracle<F>& a, long e);
/// H X H^-1.
template <class F>
Oracle<F> conjugate(const Oracle<F>& x, const Oracle<F>& h);
template <class F>
Oracle<F> commutator(const Oracle<F>& x, const Oracle<F>& y);
template <class F>
Oracle<F> jpart(const Oracle<F>& a);

/// The order-k pair whose product has superdiagonal j / k at every offset.
template <class F>
Oracle<F> bc_b(const Oracle<F>& j);
template <class F>
Oracle<F> bc_c(const Oracle<F>& j);

/// Unitriangular X with X * from = to * X, free parameters zero.
template <class F>
Oracle<F> conj_coherent(const Oracle<F>& from, const Oracle<F>& to);
/// Invertible triangular X with A X = X (diag(A) + superdiagonal of ones).
template <class F>
Oracle<F> conj_bidiag(const Oracle<F>& a);

/// [[m1, m2], [0, m3]] with corner size n.
template <class F>
Oracle<F> vk_oracle(const RingCtx<F>& ctx, const Mat<F>& m1, const PeriodicColumns<F>& m2,
                    const Oracle<F>& m3);
/// Entries (i + c, j + c) of w; the tail must be upper triangular.
template <class F>
Oracle<F> tail(const Oracle<F>& w, std::size_t c);
/// [[I, -Y], [0, I]] with (A - I) y_j = -w_j + sum_{i<j} y_i T_ij, where A is the
/// top-left c x c block of w and T its tail from c.
template <class F>
Oracle<F> decouple(const Oracle<F>& w, std::size_t c);
/// diag(block, t) with t upper triangular.
template <class F>
Oracle<F> direct_sum(const Mat<F>& block, const Oracle<F>& t);

/// Rebuilds a node from its fields. Throws Parse on malformed descriptions.
template <class F>
Oracle<F> make_node(const RingCtx<F>& ctx, const NodeFields<F>& f);

}  // namespace kcomm
