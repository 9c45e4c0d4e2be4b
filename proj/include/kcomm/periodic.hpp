#pragma once

// Eventually periodic sequences: a finite prefix followed by a repeating period.

#include <numeric>
#include <vector>

#include "kcomm/dense.hpp"

namespace kcomm {

template <class F>
struct PeriodicSeq {
  std::vector<F> prefix;
  std::vector<F> period{F(0)};

  PeriodicSeq() = default;
  PeriodicSeq(std::vector<F> pre, std::vector<F> per) : prefix(std::move(pre)), period(std::move(per)) {
    if (period.empty()) throw Error(Errc::Precondition, "periodic sequence needs a nonempty period");
  }
  static PeriodicSeq constant(const F& c) { return PeriodicSeq({}, {c}); }
  /// prefix followed by zeros.
  static PeriodicSeq finite(std::vector<F> values) { return PeriodicSeq(std::move(values), {F(0)}); }

  F at(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    return period[(i - prefix.size()) % period.size()];
  }

  /// Sequence with entry i equal to at(i + s).
  PeriodicSeq shifted(std::size_t s) const {
    if (s <= prefix.size()) {
      return PeriodicSeq(std::vector<F>(prefix.begin() + static_cast<long>(s), prefix.end()), period);
    }
    const std::size_t rot = (s - prefix.size()) % period.size();
    std::vector<F> per(period.begin() + static_cast<long>(rot), period.end());
    per.insert(per.end(), period.begin(), period.begin() + static_cast<long>(rot));
    return PeriodicSeq({}, std::move(per));
  }

  /// Minimal period, then shortest prefix.
  PeriodicSeq canonical() const {
    const std::size_t p = period.size();
    std::size_t d = p;
    for (std::size_t cand = 1; cand < p; ++cand) {
      if (p % cand != 0) continue;
      bool ok = true;
      for (std::size_t t = cand; t < p && ok; ++t) ok = period[t] == period[t - cand];
      if (ok) {
        d = cand;
        break;
      }
    }
    std::vector<F> per(period.begin(), period.begin() + static_cast<long>(d));
    std::vector<F> pre = prefix;
    while (!pre.empty() && pre.back() == per.back()) {
      per.insert(per.begin(), per.back());
      per.pop_back();
      pre.pop_back();
    }
    return PeriodicSeq(std::move(pre), std::move(per));
  }

  template <class Op>
  static PeriodicSeq zip(const PeriodicSeq& a, const PeriodicSeq& b, Op op) {
    const std::size_t len = std::max(a.prefix.size(), b.prefix.size());
    const std::size_t per = std::lcm(a.period.size(), b.period.size());
    std::vector<F> pre, cyc;
    for (std::size_t i = 0; i < len; ++i) pre.push_back(op(a.at(i), b.at(i)));
    for (std::size_t i = 0; i < per; ++i) cyc.push_back(op(a.at(len + i), b.at(len + i)));
    return PeriodicSeq(std::move(pre), std::move(cyc)).canonical();
  }

  /// Entries beyond which the sequence is purely periodic, plus one period.
  std::size_t span() const { return prefix.size() + period.size(); }

  friend bool operator==(const PeriodicSeq& a, const PeriodicSeq& b) {
    const std::size_t len = std::max(a.prefix.size(), b.prefix.size());
    const std::size_t per = std::lcm(a.period.size(), b.period.size());
    for (std::size_t i = 0; i < len + per; ++i) {
      if (a.at(i) != b.at(i)) return false;
    }
    return true;
  }
};

/// Infinite sequence of column vectors of fixed height, prefix + period.
template <class F>
struct PeriodicColumns {
  Index rows = 0;
  std::vector<Vec<F>> prefix_cols;
  std::vector<Vec<F>> period_cols;

  Vec<F> column(std::size_t q) const {
    if (q < prefix_cols.size()) return prefix_cols[q];
    if (period_cols.empty()) return Vec<F>::Zero(rows);
    return period_cols[(q - prefix_cols.size()) % period_cols.size()];
  }
  std::size_t span() const { return prefix_cols.size() + period_cols.size(); }
};

}  // namespace kcomm
